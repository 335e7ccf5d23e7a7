//! Input files, point syntax and the full curve report.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::covers::CoverSpec;
use crate::curve::{
    contact_order_generic, dual_degrees, flex_scan, genus, multiple_tangents, singular_points, strange_center,
    PlaneCurve, ProjPoint, SampleConfig,
};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::galois::curve_id;
use crate::text::parse_element;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    p: u32,
    #[serde(default = "one")]
    e: u32,
    form: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverFile {
    p: u32,
    #[serde(default = "one")]
    e: u32,
    map: String,
}

fn one() -> u32 {
    1
}

fn json_error(src: &str, e: serde_json::Error) -> Error {
    let pos = src
        .lines()
        .take(e.line().saturating_sub(1))
        .map(|l| l.chars().count() + 1)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    Error::Parse {
        pos,
        msg: e.to_string(),
    }
}

/// Read `{"p":3,"e":1,"form":"X^4+Y^4+Z^4"}`; the curve must be absolutely
/// irreducible.
pub fn parse_curve_file(src: &str) -> Result<PlaneCurve> {
    let f: CurveFile = serde_json::from_str(src).map_err(|e| json_error(src, e))?;
    PlaneCurve::parse(&f.form, f.p, f.e)
}

/// Read `{"p":3,"e":1,"map":"(s^3 - s)/(1)"}`.
pub fn parse_cover_file(src: &str) -> Result<CoverSpec> {
    let f: CoverFile = serde_json::from_str(src).map_err(|e| json_error(src, e))?;
    CoverSpec::parse(&f.map, &GaloisField::get(f.p, f.e)?)
}

/// Parse `"x,y,z"`. Coordinates are read over `GF(q^m)` for the least
/// `m ≤ ext_max` that puts the point on the curve (`q` the curve's field),
/// and over the curve's field when no such `m` exists.
pub fn parse_point(curve: &PlaneCurve, src: &str, ext_max: u32) -> Result<ProjPoint> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::invalid(format!("point needs three coordinates: {src:?}")));
    }
    let k = curve.field();
    let read = |f: &Arc<GaloisField>| -> Result<ProjPoint> {
        let mut c = [crate::Fe(0); 3];
        for (i, s) in parts.iter().enumerate() {
            c[i] = parse_element(s, f)?;
        }
        ProjPoint::new(f, c)
    };
    for m in 1..=ext_max.max(1) {
        let f = GaloisField::get(k.p(), k.degree() * m)?;
        let pt = read(&f)?;
        if curve.contains(&pt)? {
            return pt.descend(k.degree());
        }
    }
    read(k)
}

/// Flex census summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlexSummary {
    pub count: usize,
    pub excess: u64,
    pub bound: i64,
    pub equality: bool,
}

/// Invariants of one curve, as emitted by `analyze`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveReport {
    pub curve: String,
    pub degree: u32,
    pub singular_points: Vec<String>,
    pub genus: Option<u32>,
    pub strange_center: Option<String>,
    pub contact_order: u32,
    pub separable_degree: Option<u32>,
    pub inseparable_degree: Option<u32>,
    pub dual_degree: Option<u32>,
    /// `2g - 2 + 2d`.
    pub plucker_bound: Option<i64>,
    pub flexes: Option<FlexSummary>,
    /// Lines tangent at two or more smooth points over the searched fields.
    pub multiple_tangents: Option<usize>,
    /// `(d* - 1)(d* - 2)/2`, reported when `s = 1`.
    pub multiple_tangent_bound: Option<u64>,
    /// Singular points present: smooth-locus quantities ignore their branches.
    pub best_effort: bool,
    pub seed: u64,
    pub ext_max: u32,
}

pub fn analyze_curve(curve: &PlaneCurve, seed: u64, ext_max: u32) -> Result<CurveReport> {
    let cfg = SampleConfig::with_seed(seed);
    let d = curve.degree();
    let sing = singular_points(curve, ext_max)?;
    let g = match genus(curve) {
        Ok(g) => Some(g),
        Err(Error::UnsupportedClass(_)) => None,
        Err(e) => return Err(e),
    };
    let center = strange_center(curve, &cfg)?;
    let (m, s, q, d_star) = match center {
        Some(_) => (contact_order_generic(curve, &cfg)?, None, None, None),
        None => {
            let inv = dual_degrees(curve, &cfg)?;
            (
                inv.contact_order,
                Some(inv.separable_degree),
                Some(inv.inseparable_degree),
                Some(inv.dual_degree),
            )
        }
    };
    let flexes = match g {
        Some(g) => {
            let f = flex_scan(curve, ext_max, m, g)?;
            Some(FlexSummary {
                count: f.flexes.len(),
                excess: f.excess,
                bound: f.bound,
                equality: f.excess as i64 == f.bound,
            })
        }
        None => None,
    };
    let (multi, multi_bound) = match (s, d_star) {
        (Some(1), Some(ds)) => {
            let n = multiple_tangents(curve, ext_max)?.len();
            let b = (ds as u64).saturating_sub(1) * (ds as u64).saturating_sub(2) / 2;
            if n as u64 > b {
                return Err(Error::consistency(format!("{n} multiple tangents exceed {b}")));
            }
            (Some(n), Some(b))
        }
        _ => (None, None),
    };
    Ok(CurveReport {
        curve: curve_id(curve),
        degree: d,
        singular_points: sing.iter().map(|p| p.to_text()).collect(),
        genus: g,
        strange_center: center.map(|c| c.to_text()),
        contact_order: m,
        separable_degree: s,
        inseparable_degree: q,
        dual_degree: d_star,
        plucker_bound: g.map(|g| 2 * g as i64 - 2 + 2 * d as i64),
        flexes,
        multiple_tangents: multi,
        multiple_tangent_bound: multi_bound,
        best_effort: !sing.is_empty(),
        seed,
        ext_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_file_errors() {
        assert!(parse_curve_file(r#"{"p":3,"e":1,"form":"X^4+Y^4+Z^4"}"#).is_ok());
        let e = parse_curve_file(r#"{"p":3,"form":"X^4-Y^4"}"#).unwrap_err();
        assert!(matches!(e, Error::Reducible { .. }), "{e}");
        assert!(matches!(
            parse_curve_file(r#"{"p":3,"form":}"#),
            Err(Error::Parse { pos: 14, .. })
        ));
        assert!(matches!(
            parse_curve_file(r#"{"p":3,"form":"X^4+","x":1}"#),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn points_pick_the_least_field() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let p = parse_point(&c, "0,1+g,1", 2).unwrap();
        assert_eq!(p.field().degree(), 2);
        assert!(c.contains(&p).unwrap());
        let off = parse_point(&c, "0,0,1", 2).unwrap();
        assert_eq!(off.field().degree(), 1);
        assert!(parse_point(&c, "0,1", 2).is_err());
    }

    #[test]
    fn cover_file_roundtrip() {
        let c = parse_cover_file(r#"{"p":3,"map":"map: (s^3 - s)/(1)"}"#).unwrap();
        assert_eq!(c.degree(), 3);
    }
}
