//! Fixtures shared by the benchmarks.

use galois_scope::covers::CoverSpec;
use galois_scope::curve::{smooth_points_upto, PlaneCurve, ProjPoint};
use galois_scope::GaloisField;

/// `X^4+Y^4+Z^4` over GF(3): Hermitian over GF(9), 28 Galois points.
pub fn hermitian() -> PlaneCurve {
    PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).expect("fixture parses")
}

/// A smooth quartic over GF(7) with no Galois points.
pub fn generic_quartic() -> PlaneCurve {
    PlaneCurve::parse("X^4+2*Y^4+3*Z^4+X^2*Y*Z+X*Y^3", 7, 1).expect("fixture parses")
}

/// First smooth point over GF(q^m), m ≤ 2.
pub fn first_point(c: &PlaneCurve) -> ProjPoint {
    smooth_points_upto(c, 2)
        .expect("points")
        .into_iter()
        .next()
        .expect("nonempty")
}

pub fn cover(src: &str, p: u32) -> CoverSpec {
    CoverSpec::parse(src, &GaloisField::get(p, 1).expect("field")).expect("fixture parses")
}
