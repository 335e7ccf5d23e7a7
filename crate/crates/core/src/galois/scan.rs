//! Point census, the bound on the number of Galois points, and sweeps over
//! random curves.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::verdict::{galois_test, GaloisConfig, GaloisReport, Verdict};
use crate::curve::{common_field, smooth_points_upto, PlaneCurve, ProjPoint, TernaryForm};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};

/// Galois points among the smooth points over the searched fields.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaReport {
    pub curve: String,
    pub degree: u32,
    pub p: u32,
    pub points: Vec<ProjPoint>,
    pub complete: bool,
    pub seed: u64,
    pub ext_max: u32,
    /// Every tested point, in canonical order.
    pub reports: Vec<GaloisReport>,
}

impl DeltaReport {
    pub fn delta_found(&self) -> usize {
        self.points.len()
    }

    pub fn bound(&self) -> u64 {
        galois_bound(self.degree)
    }
}

/// `(d-1)³ + 1`.
pub fn galois_bound(d: u32) -> u64 {
    (d as u64 - 1).pow(3) + 1
}

#[derive(Serialize)]
struct DeltaJson<'a> {
    curve: &'a str,
    delta_found: usize,
    bound: u64,
    points: Vec<String>,
    complete: bool,
    seed: u64,
    ext_max: u32,
}

impl Serialize for DeltaReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DeltaJson {
            curve: &self.curve,
            delta_found: self.delta_found(),
            bound: self.bound(),
            points: self.points.iter().map(|p| p.to_text()).collect(),
            complete: self.complete,
            seed: self.seed,
            ext_max: self.ext_max,
        }
        .serialize(s)
    }
}

/// Identifier used in reports: the form and its field.
pub fn curve_id(curve: &PlaneCurve) -> String {
    let k = curve.field();
    format!("{} over GF({}^{})", curve.form().to_text(), k.p(), k.degree())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::consistency(format!("worker pool: {e}")))
}

/// Test every smooth point over `GF(q^m)`, `m ≤ ext_max`.
pub fn delta_scan(curve: &PlaneCurve, cfg: &GaloisConfig) -> Result<DeltaReport> {
    if curve.degree() < 4 {
        return Err(Error::Refused("Galois point analysis needs degree at least 4".into()));
    }
    let pts = smooth_points_upto(curve, cfg.ext_max)?;
    let reports: Vec<GaloisReport> = pool(cfg.jobs)?.install(|| {
        pts.par_iter()
            .map(|p| galois_test(curve, p, cfg))
            .collect::<Result<_>>()
    })?;
    let points = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Galois)
        .map(|r| r.point.clone())
        .collect();
    let complete = reports
        .iter()
        .all(|r| r.verdict != Verdict::Inconclusive && !r.best_effort);
    Ok(DeltaReport {
        curve: curve_id(curve),
        degree: curve.degree(),
        p: curve.field().p(),
        points,
        complete,
        seed: cfg.seed,
        ext_max: cfg.ext_max,
        reports,
    })
}

/// Outcome of checking a census against `(d-1)³ + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub pass: bool,
    pub delta_found: usize,
    pub bound: u64,
    pub equality: bool,
    /// At equality: `d - 1` is a power of `p`.
    pub power_of_p: Option<bool>,
    /// At equality: the form is diagonal (`aX^d + bY^d + cZ^d`), hence
    /// equivalent to the Fermat curve; `None` when that test is not
    /// conclusive (the equivalence is reported, not proven).
    pub fermat: Option<bool>,
}

/// Compare a census with the bound; characteristic 2 is refused.
pub fn bound_check(report: &DeltaReport, curve: Option<&PlaneCurve>) -> Result<BoundCheck> {
    if report.p == 2 {
        return Err(Error::Refused(
            "the bound assumes characteristic other than 2; rerun with --best-effort".into(),
        ));
    }
    let bound = report.bound();
    let delta = report.delta_found();
    let equality = delta as u64 == bound;
    let (power_of_p, fermat) = if equality {
        let mut m = report.degree as u64 - 1;
        while m.is_multiple_of(report.p as u64) {
            m /= report.p as u64;
        }
        let diagonal = curve.map(|c| is_diagonal(c.form())).and_then(|d| d.then_some(true));
        (Some(m == 1), diagonal)
    } else {
        (None, None)
    };
    Ok(BoundCheck {
        pass: delta as u64 <= bound,
        delta_found: delta,
        bound,
        equality,
        power_of_p,
        fermat,
    })
}

fn is_diagonal(f: &TernaryForm) -> bool {
    let d = f.degree();
    f.terms().len() == 3 && f.terms().iter().all(|(e, _)| e.contains(&d))
}

/// The line through two Galois points meets the curve in `d` distinct points,
/// each transversally (over the closure).
pub fn two_galois_line_check(curve: &PlaneCurve, p1: &ProjPoint, p2: &ProjPoint) -> Result<bool> {
    let k = common_field(p1.field(), p2.field())?;
    let k = common_field(&k, curve.field())?;
    let (a, b) = (p1.to_field(&k)?, p2.to_field(&k)?);
    if a == b {
        return Err(Error::invalid("the two points coincide"));
    }
    let meets = curve.line_divisor(&k, a.coords(), b.coords())?;
    let total: usize = meets.iter().map(|m| m.degree).sum();
    Ok(total == curve.degree() as usize && meets.iter().all(|m| m.mult == 1))
}

/// Random irreducible curve of degree `d` over `GF(p)`: uniform coefficients
/// on all monomials, rejecting reducible or degenerate forms.
pub fn random_curve(p: u32, d: u32, rng: &mut ChaCha8Rng) -> Result<PlaneCurve> {
    use rand::Rng;
    let k = GaloisField::get(p, 1)?;
    for _ in 0..10_000 {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                terms.push(([i, j, d - i - j], Fe(rng.gen_range(0..p))));
            }
        }
        let Ok(form) = TernaryForm::new(&k, terms) else {
            continue;
        };
        match PlaneCurve::new(form) {
            Ok(c) => return Ok(c),
            Err(Error::Reducible { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted("no irreducible form drawn".into()))
}

/// Census over seeded random curves with the bound asserted on each.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub p: u32,
    pub d: u32,
    pub count: usize,
    pub seed: u64,
    pub ext_max: u32,
    pub passed: usize,
    pub max_delta_found: usize,
    /// `δ_found → number of curves`.
    pub distribution: BTreeMap<usize, usize>,
    pub incomplete: usize,
    pub curves: Vec<String>,
}

pub fn sweep(p: u32, d: u32, count: usize, cfg: &GaloisConfig) -> Result<SweepReport> {
    if p == 2 {
        return Err(Error::Refused("sweeps assume characteristic other than 2".into()));
    }
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    if d < 4 {
        return Err(Error::invalid("degree must be at least 4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = SweepReport {
        p,
        d,
        count,
        seed: cfg.seed,
        ext_max: cfg.ext_max,
        passed: 0,
        max_delta_found: 0,
        distribution: BTreeMap::new(),
        incomplete: 0,
        curves: Vec::new(),
    };
    for _ in 0..count {
        let curve = random_curve(p, d, &mut rng)?;
        let rep = delta_scan(&curve, cfg)?;
        let check = bound_check(&rep, Some(&curve))?;
        if !check.pass {
            return Err(Error::consistency(format!(
                "{} has {} Galois points, above the bound",
                rep.curve, check.delta_found
            )));
        }
        out.passed += 1;
        out.max_delta_found = out.max_delta_found.max(rep.delta_found());
        *out.distribution.entry(rep.delta_found()).or_default() += 1;
        out.incomplete += !rep.complete as usize;
        out.curves.push(rep.curve);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(delta: usize, p: u32) -> DeltaReport {
        let k = GaloisField::get(p, 1).unwrap();
        let pt = ProjPoint::new(&k, [Fe(0), Fe(0), Fe(1)]).unwrap();
        DeltaReport {
            curve: "synthetic".into(),
            degree: 4,
            p,
            points: vec![pt; delta],
            complete: true,
            seed: 0,
            ext_max: 1,
            reports: Vec::new(),
        }
    }

    #[test]
    fn bound_sentinels() {
        assert!(bound_check(&synthetic(5, 7), None).unwrap().pass);
        assert!(!bound_check(&synthetic(29, 7), None).unwrap().pass);
        assert!(matches!(bound_check(&synthetic(1, 2), None), Err(Error::Refused(_))));
        let eq = bound_check(&synthetic(28, 3), None).unwrap();
        assert!(eq.equality && eq.power_of_p == Some(true));
    }

    #[test]
    fn hermitian_line_through_two_points() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let a = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let pts = smooth_points_upto(&c, 2).unwrap();
        let b = pts.iter().find(|q| **q != a).unwrap();
        assert!(two_galois_line_check(&c, &a, b).unwrap());
        assert!(two_galois_line_check(&c, &a, &a).is_err());
    }

    #[test]
    fn random_curves_are_seeded() {
        let a = random_curve(7, 4, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_curve(7, 4, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.form(), b.form());
        assert_eq!(a.degree(), 4);
    }
}
