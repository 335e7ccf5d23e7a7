//! The per-point decision pipeline and its report.

use serde::Serialize;

use super::certificate::{linear_certificate, GaloisCertificate};
use super::exact::{exact_split_test, ExactOutcome};
use super::fibers::{galois_filter, FilterOutcome};
use crate::curve::{PlaneCurve, ProjLine, ProjPoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Auto,
    Filter,
    Certificate,
    Exact,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "filter" => Ok(Engine::Filter),
            "certificate" => Ok(Engine::Certificate),
            "exact" => Ok(Engine::Exact),
            _ => Err(Error::invalid(format!("unknown engine `{s}`"))),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Auto => "auto",
            Engine::Filter => "filter",
            Engine::Certificate => "certificate",
            Engine::Exact => "exact",
        })
    }
}

/// Knobs for point tests and scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisConfig {
    pub engine: Engine,
    /// Points are searched over `GF(q^m)`, `m ≤ ext_max`.
    pub ext_max: u32,
    /// Coefficient-field degrees tried by the exact engine.
    pub schedule: Vec<u32>,
    /// Field degrees searched for linear certificates.
    pub certificate_degrees: Vec<u32>,
    pub jobs: usize,
    /// Echoed into reports; point tests draw no randomness.
    pub seed: u64,
    /// Run characteristic-2 scans without the bound assertion.
    pub best_effort: bool,
}

impl Default for GaloisConfig {
    fn default() -> Self {
        GaloisConfig {
            engine: Engine::Auto,
            ext_max: 2,
            schedule: vec![1, 2, 3, 4],
            certificate_degrees: vec![1, 2],
            jobs: 1,
            seed: 0,
            best_effort: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Galois,
    NotGalois,
    /// No splitting over any scheduled field: not absolute.
    NotGaloisAtBound,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Proof {
    Certificate(GaloisCertificate),
    Split {
        m: u32,
        factors: usize,
    },
    Witness {
        line: Option<ProjLine>,
        class: String,
        indices: Vec<usize>,
    },
    NotSplit {
        schedule: Vec<u32>,
    },
    None {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaloisReport {
    pub point: ProjPoint,
    pub verdict: Verdict,
    pub proof: Proof,
    pub trace: Vec<String>,
    /// Some fiber met a singular point, so indices are total multiplicities.
    pub best_effort: bool,
}

impl GaloisReport {
    pub fn certificate(&self) -> Option<&GaloisCertificate> {
        match &self.proof {
            Proof::Certificate(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
enum ProofJson {
    Certificate {
        field: String,
        order: usize,
        matrices: Vec<Vec<Vec<String>>>,
    },
    Split {
        m: u32,
        factors: usize,
    },
    Witness {
        line: Option<String>,
        class: String,
        indices: Vec<usize>,
    },
    NotSplit {
        schedule: Vec<u32>,
    },
    None {
        reason: String,
    },
}

#[derive(Serialize)]
struct ReportJson {
    point: String,
    verdict: Verdict,
    proof: ProofJson,
    trace: Vec<String>,
}

pub(crate) fn field_name(k: &crate::field::GaloisField) -> String {
    format!("GF({}^{})", k.p(), k.degree())
}

impl Serialize for GaloisReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let proof = match &self.proof {
            Proof::Certificate(c) => ProofJson::Certificate {
                field: field_name(&c.field),
                order: c.order(),
                matrices: c.matrices.iter().map(|m| m.to_text(&c.field)).collect(),
            },
            Proof::Split { m, factors } => ProofJson::Split {
                m: *m,
                factors: *factors,
            },
            Proof::Witness { line, class, indices } => ProofJson::Witness {
                line: line.as_ref().map(|l| l.to_text()),
                class: class.clone(),
                indices: indices.clone(),
            },
            Proof::NotSplit { schedule } => ProofJson::NotSplit {
                schedule: schedule.clone(),
            },
            Proof::None { reason } => ProofJson::None { reason: reason.clone() },
        };
        ReportJson {
            point: self.point.to_text(),
            verdict: self.verdict,
            proof,
            trace: self.trace.clone(),
        }
        .serialize(s)
    }
}

/// `[GF(p^a)·GF(p^e) : GF(p^e)]`.
pub(crate) fn relative_degree(a: u32, e: u32) -> u32 {
    let (mut x, mut y) = (a, e);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x
}

fn inconclusive(p: &ProjPoint, reason: String, mut trace: Vec<String>) -> GaloisReport {
    trace.push(format!("inconclusive: {reason}"));
    GaloisReport {
        point: p.clone(),
        verdict: Verdict::Inconclusive,
        proof: Proof::None { reason },
        trace,
        best_effort: false,
    }
}

/// Decide whether the inner point `p` is a Galois point.
///
/// `auto` runs the filter, then the certificate search, then the exact test
/// when the filter passed. A witness together with a certificate, or a
/// certificate together with a failed split test, is a consistency error.
pub fn galois_test(curve: &PlaneCurve, p: &ProjPoint, cfg: &GaloisConfig) -> Result<GaloisReport> {
    if curve.degree() < 4 {
        return Err(Error::Refused("Galois point analysis needs degree at least 4".into()));
    }
    if !curve.contains(p)? {
        return Err(Error::invalid(format!("{p} is not on the curve")));
    }
    if !curve.is_smooth_at(p)? {
        return Err(Error::invalid(format!("{p} is a singular point")));
    }
    let e = curve.field().degree();
    let mut trace = vec![format!(
        "config: engine={} ext_max={} schedule={:?} certificate_degrees={:?}",
        cfg.engine, cfg.ext_max, cfg.schedule, cfg.certificate_degrees
    )];
    let rel = relative_degree(p.definition_degree(), e);
    if rel > cfg.ext_max {
        return Ok(inconclusive(
            p,
            format!(
                "point field has degree {rel} over the curve's field, beyond ext_max {}",
                cfg.ext_max
            ),
            trace,
        ));
    }
    match run(curve, p, cfg, &mut trace) {
        Ok(r) => Ok(r),
        Err(Error::InseparableProjection(msg)) => Ok(inconclusive(p, format!("inseparable projection: {msg}"), trace)),
        Err(err) => Err(err),
    }
}

fn run(curve: &PlaneCurve, p: &ProjPoint, cfg: &GaloisConfig, trace: &mut Vec<String>) -> Result<GaloisReport> {
    let use_filter = matches!(cfg.engine, Engine::Auto | Engine::Filter);
    let use_cert = matches!(cfg.engine, Engine::Auto | Engine::Certificate);
    let mut filter = None;
    let mut best_effort = false;
    if use_filter {
        let out = galois_filter(curve, p)?;
        match &out {
            FilterOutcome::Pass {
                ramified_classes,
                best_effort: be,
            } => {
                best_effort = *be;
                trace.push(format!(
                    "filter: pass, {ramified_classes} ramified line classes{}",
                    if *be { ", best-effort" } else { "" }
                ));
            }
            FilterOutcome::Witness { line, class, indices } => trace.push(format!(
                "filter: witness {} (class {class}) with indices {indices:?}",
                line.as_ref().map_or("unresolved".to_string(), |l| l.to_string())
            )),
        }
        filter = Some(out);
    }
    let mut cert = None;
    if use_cert {
        cert = linear_certificate(curve, p, &cfg.certificate_degrees)?;
        match &cert {
            Some(c) => trace.push(format!(
                "certificate: order {} over {}",
                c.order(),
                field_name(&c.field)
            )),
            None => trace.push("certificate: none found".into()),
        }
    }
    let witnessed = matches!(filter, Some(FilterOutcome::Witness { .. }));
    if witnessed && cert.is_some() {
        return Err(Error::consistency(format!(
            "{p} has both a filter witness and a certificate"
        )));
    }
    let use_exact = cfg.engine == Engine::Exact || (cfg.engine == Engine::Auto && !witnessed);
    let mut exact = None;
    if use_exact {
        let out = exact_split_test(curve, p, &cfg.schedule)?;
        trace.push(match &out {
            ExactOutcome::Split { m, factors } => format!("exact: splits into {factors} factors at m={m}"),
            ExactOutcome::NotSplit { schedule } => format!("exact: no splitting for m in {schedule:?}"),
            ExactOutcome::Inconclusive(r) => format!("exact: inconclusive, {r}"),
        });
        if cert.is_some() && matches!(out, ExactOutcome::NotSplit { .. }) {
            return Err(Error::consistency(format!(
                "{p} has a certificate but its fiber polynomial does not split"
            )));
        }
        exact = Some(out);
    }
    let (verdict, proof) = if let Some(FilterOutcome::Witness { line, class, indices }) = filter {
        (Verdict::NotGalois, Proof::Witness { line, class, indices })
    } else if let Some(c) = cert {
        (Verdict::Galois, Proof::Certificate(c))
    } else {
        match exact {
            Some(ExactOutcome::Split { m, factors }) => (Verdict::Galois, Proof::Split { m, factors }),
            Some(ExactOutcome::NotSplit { schedule }) => (Verdict::NotGaloisAtBound, Proof::NotSplit { schedule }),
            Some(ExactOutcome::Inconclusive(reason)) => (Verdict::Inconclusive, Proof::None { reason }),
            None => (
                Verdict::Inconclusive,
                Proof::None {
                    reason: format!("engine {} found no proof", cfg.engine),
                },
            ),
        }
    };
    Ok(GaloisReport {
        point: p.clone(),
        verdict,
        proof,
        trace: std::mem::take(trace),
        best_effort,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, GaloisField};

    #[test]
    fn hermitian_point_is_galois() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let r = galois_test(&c, &p, &GaloisConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Galois);
        assert_eq!(r.certificate().unwrap().order(), 3);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["proof"]["kind"], "certificate");
        // normalized: first nonzero coordinate is 1, and 1/(1+g) = 2+g
        assert_eq!(v["point"], "0,1,2+g");
        let s = serde_json::to_string(&r).unwrap();
        let at = |k: &str| s.find(&format!("\"{k}\":")).unwrap();
        assert!(at("point") < at("verdict") && at("verdict") < at("proof") && at("proof") < at("trace"));
    }

    #[test]
    fn engines_alone() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let run = |engine| {
            galois_test(
                &c,
                &p,
                &GaloisConfig {
                    engine,
                    ..Default::default()
                },
            )
            .unwrap()
            .verdict
        };
        assert_eq!(run(Engine::Filter), Verdict::Inconclusive);
        assert_eq!(run(Engine::Certificate), Verdict::Galois);
        assert_eq!(run(Engine::Exact), Verdict::Galois);
    }

    #[test]
    fn point_beyond_bounds() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let r = galois_test(
            &c,
            &p,
            &GaloisConfig {
                ext_max: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(relative_degree(4, 2), 2);
        assert_eq!(relative_degree(3, 2), 3);
    }
}
