//! Plane curves `F(X, Y, Z) = 0` over finite fields and their local and
//! global invariants.

mod form;
mod invariants;
mod param;
mod point;
mod sample;
mod singular;

use std::sync::Arc;

pub use form::{Exps, TernaryForm, VARS};
pub use invariants::{
    contact_at, contact_order_generic, dual_degrees, flex_scan, multiple_tangents, strange_center, tangency_count,
    tangents_through, CurveInvariants, FlexDatum, FlexReport,
};
pub use param::{BinaryForm, Parametrization};
pub use point::{common_field, coords_degree, cross, dot, is_zero3, normalize, Mat3, ProjLine, ProjPoint, Vec3};
pub use sample::{maximal_degrees, point_in, points_over, points_upto, smooth_points_upto, SampleConfig, Sampler};
pub use singular::{all_singular_points, count_common_smooth, genus, singular_points};

use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};
use crate::poly::bifactor::{factor_bivariate, is_irreducible_over};
use crate::poly::factor::{self, Poly};

/// A plane curve: a homogeneous form of degree `d ≥ 2`, absolutely irreducible
/// when built through [`PlaneCurve::new`].
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    form: TernaryForm,
}

/// The lowest-degree part of the local equation at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCone {
    pub multiplicity: u32,
    /// Lines over the field where the cone splits, with multiplicities.
    pub lines: Vec<(ProjLine, u32)>,
}

/// One component of the intersection of a line `a + u·b` with a curve.
#[derive(Clone, Debug, PartialEq)]
pub struct LineMeet {
    /// Irreducible factor in `u`; `None` is the point `b` itself (`u = ∞`).
    pub factor: Option<Poly>,
    pub degree: usize,
    pub mult: usize,
}

impl PlaneCurve {
    pub fn new(form: TernaryForm) -> Result<Self> {
        if form.degree() < 2 {
            return Err(Error::invalid("a curve needs degree at least 2"));
        }
        if let Some(k) = splitting_degree(&form)? {
            return Err(Error::Reducible {
                p: form.field().p(),
                n: k,
            });
        }
        Ok(PlaneCurve { form })
    }

    /// Skip the irreducibility check (for callers that already know).
    pub fn new_unchecked(form: TernaryForm) -> Self {
        PlaneCurve { form }
    }

    pub fn parse(src: &str, p: u32, e: u32) -> Result<Self> {
        let field = GaloisField::get(p, e)?;
        Self::new(TernaryForm::parse(src, &field)?)
    }

    pub fn form(&self) -> &TernaryForm {
        &self.form
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        self.form.field()
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn form_over(&self, k: &Arc<GaloisField>) -> Result<TernaryForm> {
        self.form.to_field(k)
    }

    /// Curve form and point over a common field.
    fn lift_point(&self, pt: &ProjPoint) -> Result<(TernaryForm, Vec3)> {
        let k = common_field(self.field(), pt.field())?;
        Ok((self.form.to_field(&k)?, *pt.to_field(&k)?.coords()))
    }

    pub fn contains(&self, pt: &ProjPoint) -> Result<bool> {
        let (f, v) = self.lift_point(pt)?;
        Ok(f.eval(&v).0 == 0)
    }

    pub fn is_smooth_at(&self, pt: &ProjPoint) -> Result<bool> {
        let (f, v) = self.lift_point(pt)?;
        Ok(f.eval(&v).0 == 0 && !point::is_zero3(&f.gradient(&v)))
    }

    /// `m(P)`: 0 off the curve, 1 at smooth points.
    pub fn multiplicity_at(&self, pt: &ProjPoint) -> Result<u32> {
        let (f, v) = self.lift_point(pt)?;
        if f.eval(&v).0 != 0 {
            return Ok(0);
        }
        let (_, low) = local_lowest(&f, &v);
        Ok(low.0)
    }

    pub fn tangent_cone(&self, pt: &ProjPoint) -> Result<TangentCone> {
        let (f, v) = self.lift_point(pt)?;
        if f.eval(&v).0 != 0 {
            return Err(Error::invalid("point is not on the curve"));
        }
        let (t, (m, fm)) = local_lowest(&f, &v);
        let field = f.field().clone();
        // f_m(x, y) as a binary form: coefficients of x^i y^{m-i}
        let h = Poly::from_coeffs(fm.clone(), &*field);
        let fac = factor::factor(&h, &field)?;
        let split = fac
            .factors
            .iter()
            .map(|(g, _)| g.degree().unwrap())
            .fold(1u32, |a, b| point::lcm(a, b as u32));
        let big = GaloisField::get(field.p(), field.degree() * split)?;
        let emb = crate::field::embedding(&field, &big)?;
        let hb = h.map(|c| emb.apply(*c), &*big);
        let tb = t.map(|c| emb.apply(c));
        let ti = tb.inverse(&big).ok_or_else(|| Error::consistency("singular frame"))?;
        let mut lines = Vec::new();
        // y^k factor from missing top degree: the line y = 0
        let deficit = m as usize - hb.degree().unwrap_or(0);
        let mut push = |local: Vec3, mult: u32| -> Result<()> {
            let l = ti.apply_row(&big, &local);
            lines.push((ProjLine::new(&big, l)?.descend(field.degree())?, mult));
            Ok(())
        };
        if deficit > 0 {
            push([Fe(0), Fe(1), Fe(0)], deficit as u32)?;
        }
        for (r, e) in factor::roots_with_multiplicity(&hb, &big) {
            // x - r·y = 0
            push([Fe(1), big.neg(&r), Fe(0)], e as u32)?;
        }
        lines.sort();
        Ok(TangentCone { multiplicity: m, lines })
    }

    /// The tangent line at a smooth point: the gradient.
    pub fn tangent_line(&self, pt: &ProjPoint) -> Result<ProjLine> {
        let (f, v) = self.lift_point(pt)?;
        if f.eval(&v).0 != 0 {
            return Err(Error::invalid("point is not on the curve"));
        }
        let g = f.gradient(&v);
        if point::is_zero3(&g) {
            return Err(Error::invalid("point is singular"));
        }
        ProjLine::new(f.field(), g)
    }

    /// `I_P(C, l)`, `None` when `l` is a component.
    pub fn intersection_multiplicity(&self, l: &ProjLine, pt: &ProjPoint) -> Result<Option<usize>> {
        let k = common_field(self.field(), pt.field())?;
        let k = common_field(&k, l.field())?;
        let f = self.form.to_field(&k)?;
        let p = *pt.to_field(&k)?.coords();
        let l = l.to_field(&k)?;
        if dot(&k, &p, l.coords()).0 != 0 {
            return Ok(Some(0));
        }
        let (a, b) = l.two_points();
        let r = if normalize(&k, &a) == normalize(&k, &p) { b } else { a };
        let res = f.restrict(&p, &r);
        Ok(res.order_at(&Fe(0), &*k))
    }

    /// `I_P(C, l)` by eliminating along the line with a resultant: an
    /// independent route used to cross-check the restriction method.
    pub fn intersection_multiplicity_resultant(&self, l: &ProjLine, pt: &ProjPoint) -> Result<Option<usize>> {
        let k = common_field(self.field(), pt.field())?;
        let k = common_field(&k, l.field())?;
        let f = self.form.to_field(&k)?;
        let p = *pt.to_field(&k)?.coords();
        let l = l.to_field(&k)?;
        if dot(&k, &p, l.coords()).0 != 0 {
            return Ok(Some(0));
        }
        // frame with P at (0:0:1) and l = {Y = 0}
        let (a, b) = l.two_points();
        let r = if normalize(&k, &a) == normalize(&k, &p) { b } else { a };
        let off = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]]
            .into_iter()
            .find(|e| dot(&k, e, l.coords()).0 != 0)
            .unwrap();
        let t = Mat3::from_columns(&r, &off, &p);
        let g = f.compose(&t).dehomogenize();
        // Res_y(g, y) = g(x, 0) up to sign; its order at x = 0 is I_P
        let line = crate::poly::BiPoly::from_terms(&[(0, 1, Fe(1))], &*k);
        let res = crate::poly::resultant_y(&g, &line, &*k)?;
        Ok(res.order_at(&Fe(0), &*k))
    }

    /// Intersection of the line `a + u·b` with the curve, factored over the
    /// field of `a, b`.
    pub fn line_divisor(&self, k: &Arc<GaloisField>, a: &Vec3, b: &Vec3) -> Result<Vec<LineMeet>> {
        let f = self.form.to_field(k)?;
        line_divisor(&f, a, b)
    }
}

pub(crate) fn line_divisor(f: &TernaryForm, a: &Vec3, b: &Vec3) -> Result<Vec<LineMeet>> {
    let k = f.field();
    let r = f.restrict(a, b);
    if r.is_zero() {
        return Err(Error::invalid("line is a component of the curve"));
    }
    let mut out = Vec::new();
    let deg = r.degree().unwrap();
    if deg < f.degree() as usize {
        out.push(LineMeet {
            factor: None,
            degree: 1,
            mult: f.degree() as usize - deg,
        });
    }
    if deg > 0 {
        for (g, e) in factor::factor(&r, k)?.factors {
            out.push(LineMeet {
                degree: g.degree().unwrap(),
                factor: Some(g),
                mult: e as usize,
            });
        }
    }
    Ok(out)
}

/// A frame `T` with `T·(0:0:1) = v`, and the lowest homogeneous part of
/// `F(T·(x, y, 1))` as `(m, coefficients of x^i y^{m-i})`.
fn local_lowest(f: &TernaryForm, v: &Vec3) -> (Mat3, (u32, Vec<Fe>)) {
    let k = f.field();
    let basis = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]];
    // complete v to a basis with two unit vectors
    let mut t = Mat3::identity();
    'outer: for i in 0..3 {
        for j in i + 1..3 {
            let m = Mat3::from_columns(&basis[i], &basis[j], v);
            if m.det(k).0 != 0 {
                t = m;
                break 'outer;
            }
        }
    }
    let g = f.compose(&t);
    let m = g.terms().iter().map(|(e, _)| e[0] + e[1]).min().unwrap_or(0);
    let mut coeffs = vec![Fe(0); m as usize + 1];
    for (e, c) in g.terms() {
        if e[0] + e[1] == m {
            coeffs[e[0] as usize] = *c;
        }
    }
    (t, (m, coeffs))
}

/// `None` when absolutely irreducible; otherwise the extension degree over
/// `GF(p)` of a field where the form factors.
pub fn splitting_degree(form: &TernaryForm) -> Result<Option<u32>> {
    let k = form.field();
    let e = k.degree();
    if form.terms().iter().all(|(x, _)| x[2] > 0) {
        return Ok(Some(e));
    }
    let b = form.dehomogenize();
    let fac = factor_bivariate(&b, k)?;
    if !(fac.factors.len() == 1 && fac.factors[0].1 == 1) {
        return Ok(Some(e));
    }
    // an irreducible form that is not absolutely irreducible splits into
    // r conjugate factors with r | d over GF(q^r)
    let d = form.degree() as u64;
    for l in crate::field::prime_factors(d) {
        let l = l as u32;
        if !is_irreducible_over(&b, k, l)? {
            return Ok(Some(e * l));
        }
    }
    Ok(None)
}

pub fn is_absolutely_irreducible(form: &TernaryForm) -> Result<bool> {
    Ok(splitting_degree(form)?.is_none())
}

/// A point of `l` other than `p`.
pub fn second_point(k: &GaloisField, l: &ProjLine, p: &Vec3) -> Vec3 {
    let (a, b) = l.two_points();
    if normalize(k, &a) == normalize(k, p) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(src: &str, p: u32, e: u32) -> PlaneCurve {
        PlaneCurve::parse(src, p, e).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).is_ok());
        assert!(matches!(
            PlaneCurve::parse("X^4-Y^4", 3, 1),
            Err(Error::Reducible { .. })
        ));
        let f3 = GaloisField::get(3, 1).unwrap();
        let form = TernaryForm::parse("X^4+Y^4", &f3).unwrap();
        assert!(!is_absolutely_irreducible(&form).unwrap());
        // oracle: expand (X^2+XY-Y^2)(X^2-XY-Y^2) by hand in characteristic 3
        let prod = TernaryForm::parse("(X^2+X*Y-Y^2)*(X^2-X*Y-Y^2)", &f3).unwrap();
        assert_eq!(prod, form);
    }

    #[test]
    fn multiplicities_and_cones() {
        let c = curve("X*Y*Z^2+X^4+Y^4", 5, 1);
        let f = c.field().clone();
        let o = ProjPoint::new(&f, [Fe(0), Fe(0), Fe(1)]).unwrap();
        assert_eq!(c.multiplicity_at(&o).unwrap(), 2);
        let cone = c.tangent_cone(&o).unwrap();
        assert_eq!(cone.multiplicity, 2);
        let lines: Vec<Vec3> = cone.lines.iter().map(|(l, _)| *l.coords()).collect();
        assert!(lines.contains(&[Fe(1), Fe(0), Fe(0)]) && lines.contains(&[Fe(0), Fe(1), Fe(0)]));
        let off = ProjPoint::new(&f, [Fe(1), Fe(1), Fe(1)]).unwrap();
        assert_eq!(c.multiplicity_at(&off).unwrap(), 0);

        let cusp = curve("Y^2*Z-X^3", 5, 1);
        let cone = cusp.tangent_cone(&o).unwrap();
        assert_eq!(cone.lines, vec![(ProjLine::new(&f, [Fe(0), Fe(1), Fe(0)]).unwrap(), 2)]);
    }

    #[test]
    fn tangents_and_intersections() {
        let c = curve("Y*Z^3-X^4", 3, 1);
        let f = c.field().clone();
        let o = ProjPoint::new(&f, [Fe(0), Fe(0), Fe(1)]).unwrap();
        let t = c.tangent_line(&o).unwrap();
        assert_eq!(*t.coords(), [Fe(0), Fe(1), Fe(0)]);
        assert_eq!(c.intersection_multiplicity(&t, &o).unwrap(), Some(4));
        assert_eq!(c.intersection_multiplicity_resultant(&t, &o).unwrap(), Some(4));
        let transversal = ProjLine::new(&f, [Fe(1), Fe(1), Fe(0)]).unwrap();
        assert_eq!(c.intersection_multiplicity(&transversal, &o).unwrap(), Some(1));
    }

    #[test]
    fn hermitian_point_has_full_contact() {
        let c = curve("X^4+Y^4+Z^4", 3, 1);
        let f9 = GaloisField::get(3, 2).unwrap();
        // β = 1 + g satisfies β^4 = -1 with g^2 = -1
        let beta = Fe(4);
        assert_eq!(f9.pow(&beta, 4), f9.from_int(-1));
        let p = ProjPoint::new(&f9, [Fe(0), beta, Fe(1)]).unwrap();
        assert_eq!(c.multiplicity_at(&p).unwrap(), 1);
        let t = c.tangent_line(&p).unwrap();
        // β^3 Y + Z = 0
        let expect = ProjLine::new(&f9, [Fe(0), f9.pow(&beta, 3), Fe(1)]).unwrap();
        assert_eq!(t, expect);
        assert_eq!(c.intersection_multiplicity(&t, &p).unwrap(), Some(4));
    }
}
