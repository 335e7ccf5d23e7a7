//! Generic contact order, dual-map degrees, strangeness and flexes.

use std::collections::BTreeSet;

use super::form::TernaryForm;
use super::point::{cross, is_zero3, Vec3};
use super::sample::{point_in, smooth_points_upto, SampleConfig, Sampler};
use super::singular::{count_common_smooth, genus};
use super::{line_divisor, second_point, PlaneCurve, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::factor::Poly;

/// Numerical invariants of the curve and its dual map.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants {
    /// `M(C)`: contact order of the tangent at a general point.
    pub contact_order: u32,
    /// Separable degree of the dual map.
    pub separable_degree: u32,
    /// Inseparable degree of the dual map.
    pub inseparable_degree: u32,
    /// Degree of the dual curve.
    pub dual_degree: u32,
    pub genus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexDatum {
    pub point: ProjPoint,
    /// Contact order of the tangent at the point.
    pub contact: u32,
    /// `contact - M(C)`.
    pub excess: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexReport {
    pub contact_order: u32,
    pub genus: u32,
    pub flexes: Vec<FlexDatum>,
    pub excess: u64,
    /// `(M + 1)(2g - 2) + 3d`.
    pub bound: i64,
}

/// Contact order `I_P(C, T_P C)` at a smooth point.
pub fn contact_at(curve: &PlaneCurve, p: &ProjPoint) -> Result<u32> {
    let t = curve.tangent_line(p)?;
    curve
        .intersection_multiplicity(&t, p)?
        .map(|v| v as u32)
        .ok_or_else(|| Error::consistency("tangent line is a component"))
}

/// `M(C)`: the minimum contact order over seeded general points.
pub fn contact_order_generic(curve: &PlaneCurve, cfg: &SampleConfig) -> Result<u32> {
    if cfg.confirmations == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let mut s = Sampler::new(curve, cfg)?;
    let mut best = u32::MAX;
    for _ in 0..cfg.confirmations {
        let p = s.smooth_point()?;
        best = best.min(contact_at(curve, &p)?);
    }
    Ok(best)
}

/// A smooth general point whose contact order equals `m`.
fn non_flex_point(curve: &PlaneCurve, s: &mut Sampler, m: u32, budget: usize) -> Result<ProjPoint> {
    for _ in 0..budget {
        let p = s.smooth_point()?;
        if contact_at(curve, &p)? == m {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted("no non-flex sample point".into()))
}

/// The point all tangents pass through, when it exists.
pub fn strange_center(curve: &PlaneCurve, cfg: &SampleConfig) -> Result<Option<ProjPoint>> {
    let mut s = Sampler::new(curve, cfg)?;
    let k = s.fields()[0].clone();
    let r1 = s.smooth_point_in(&k)?;
    let t1 = curve.tangent_line(&r1)?;
    let mut t2 = None;
    for _ in 0..cfg.budget {
        let r2 = s.smooth_point_in(&k)?;
        let t = curve.tangent_line(&r2)?;
        if t != t1 {
            t2 = Some(t);
            break;
        }
    }
    let Some(t2) = t2 else {
        return Err(Error::SamplingExhausted(
            "every sampled tangent is the same line".into(),
        ));
    };
    // a strange center is unique, hence fixed by Frobenius: rational over the base
    let q = t1.meet(&t2)?.descend(curve.field().degree())?;
    if q.field().degree() != curve.field().degree() {
        return Ok(None);
    }
    for _ in 0..cfg.confirmations {
        let r = s.smooth_point()?;
        let t = curve.tangent_line(&r)?;
        let qk = point_in(&q, t.field()).ok_or_else(|| Error::consistency("center does not embed"))?;
        if !qk.lies_on(&t) {
            return Ok(None);
        }
    }
    Ok(Some(q))
}

/// Whether the gradient map has vanishing differential at a smooth point:
/// the Hessian applied to a tangent direction is proportional to the gradient.
fn gauss_map_inseparable_at(f: &TernaryForm, p: &Vec3) -> Result<bool> {
    let k = f.field();
    let grad = f.gradient(p);
    let line = ProjLine::new(k, grad)?;
    let v = second_point(k, &line, p);
    let mut hv = [Fe(0); 3];
    for (i, h) in hv.iter_mut().enumerate() {
        if let Some(fi) = f.partial(i) {
            let row = fi.gradient(p);
            *h = super::dot(k, &row, &v);
        }
    }
    Ok(is_zero3(&cross(k, &grad, &hv)))
}

/// Number of smooth points `R` with `T_R C = l`, where `l` passes through the
/// smooth point `r`. All data over `f`'s field.
pub fn tangency_count(f: &TernaryForm, l: &ProjLine, r: &Vec3) -> Result<usize> {
    let k = f.field();
    let b = second_point(k, l, r);
    let partials: Vec<Poly> = (0..3).filter_map(|i| f.partial(i)).map(|d| d.restrict(r, &b)).collect();
    let mut n = 0;
    for meet in line_divisor(f, r, &b)? {
        if meet.mult < 2 {
            continue;
        }
        let singular = match &meet.factor {
            Some(phi) => partials.iter().all(|d| d.rem(phi, &**k).is_zero()),
            None => is_zero3(&f.gradient(&b)),
        };
        if !singular {
            n += meet.degree;
        }
    }
    Ok(n)
}

fn polar(f: &TernaryForm, q: &Vec3) -> Result<TernaryForm> {
    let k = f.field();
    let mut terms = Vec::new();
    for i in 0..3 {
        if let Some(d) = f.partial(i) {
            for (e, c) in d.terms() {
                terms.push((*e, k.mul(c, &q[i])));
            }
        }
    }
    TernaryForm::new(k, terms).map_err(|_| Error::consistency("polar form vanishes identically"))
}

/// Number of smooth points of the curve whose tangent passes through `q`.
pub fn tangents_through(curve: &PlaneCurve, q: &ProjPoint) -> Result<usize> {
    let f = curve.form_over(q.field())?;
    count_common_smooth(&f, &polar(&f, q.coords())?)
}

/// `M`, `s`, `q`, `d*` and genus. Fails with [`Error::StrangeCurve`] when
/// all tangents pass through one point.
pub fn dual_degrees(curve: &PlaneCurve, cfg: &SampleConfig) -> Result<CurveInvariants> {
    if let Some(c) = strange_center(curve, cfg)? {
        return Err(Error::StrangeCurve { center: c.to_text() });
    }
    let m = contact_order_generic(curve, cfg)?;
    let mut s = Sampler::new(
        curve,
        &SampleConfig {
            seed: cfg.seed ^ 0x5eed,
            ..cfg.clone()
        },
    )?;
    let mut sep = usize::MAX;
    let mut inseparable = None;
    for _ in 0..3 {
        let r = non_flex_point(curve, &mut s, m, cfg.budget)?;
        let f = curve.form_over(r.field())?;
        let t = curve.tangent_line(&r)?;
        sep = sep.min(tangency_count(&f, &t, r.coords())?);
        let ins = gauss_map_inseparable_at(&f, r.coords())?;
        if inseparable.is_some_and(|x| x != ins) {
            return Err(Error::consistency(
                "dual map separability differs between general points",
            ));
        }
        inseparable = Some(ins);
    }
    let inseparable = inseparable.unwrap();
    let p = curve.field().p();
    let q = if m >= 3 {
        if !inseparable {
            return Err(Error::consistency("contact order at least 3 with a separable dual map"));
        }
        m
    } else if inseparable && p == 2 {
        2
    } else {
        1
    };
    let mut count = 0;
    for i in 0..3 {
        let k = s.fields()[i % s.fields().len()].clone();
        let qpt = s.point_off_curve(&k)?;
        count = count.max(tangents_through(curve, &qpt)?);
    }
    if count % sep != 0 {
        return Err(Error::consistency(format!(
            "{count} tangency points do not split into fibers of size {sep}"
        )));
    }
    let d = curve.degree();
    let sep = sep as u32;
    let d_star = (count / sep as usize) as u32;
    if d < sep * q {
        return Err(Error::consistency("degree below s(γ)·q(γ)"));
    }
    let g = match genus(curve) {
        Ok(g) => Some(g),
        Err(Error::UnsupportedClass(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(g) = g {
        if d_star as i64 > 2 * g as i64 - 2 + 2 * d as i64 {
            return Err(Error::consistency("dual degree exceeds 2g - 2 + 2d"));
        }
    }
    Ok(CurveInvariants {
        contact_order: m,
        separable_degree: sep,
        inseparable_degree: q,
        dual_degree: d_star,
        genus: g,
    })
}

/// Smooth points over `GF(q^m)`, `m ≤ ext_max`, whose contact order exceeds
/// `M`, with the excess checked against `(M + 1)(2g - 2) + 3d`.
pub fn flex_scan(curve: &PlaneCurve, ext_max: u32, contact_order: u32, genus: u32) -> Result<FlexReport> {
    let mut flexes = Vec::new();
    let mut excess = 0u64;
    for p in smooth_points_upto(curve, ext_max)? {
        let nu = contact_at(curve, &p)?;
        if nu < contact_order {
            return Err(Error::consistency(format!(
                "contact order {nu} at {p} below the generic value"
            )));
        }
        if nu > contact_order {
            excess += (nu - contact_order) as u64;
            flexes.push(FlexDatum {
                point: p,
                contact: nu,
                excess: nu - contact_order,
            });
        }
    }
    let bound = (contact_order as i64 + 1) * (2 * genus as i64 - 2) + 3 * curve.degree() as i64;
    if excess as i64 > bound {
        return Err(Error::consistency(format!("flex excess {excess} exceeds {bound}")));
    }
    Ok(FlexReport {
        contact_order,
        genus,
        flexes,
        excess,
        bound,
    })
}

/// Lines tangent at two or more smooth points, among the tangents at smooth
/// points over `GF(q^m)`, `m ≤ ext_max`.
pub fn multiple_tangents(curve: &PlaneCurve, ext_max: u32) -> Result<Vec<ProjLine>> {
    let mut out = BTreeSet::new();
    for p in smooth_points_upto(curve, ext_max)? {
        let t = curve.tangent_line(&p)?;
        let f = curve.form_over(p.field())?;
        if tangency_count(&f, &t, p.coords())? >= 2 {
            out.insert(t.descend(curve.field().degree())?);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(src: &str, p: u32) -> PlaneCurve {
        PlaneCurve::parse(src, p, 1).unwrap()
    }

    #[test]
    fn contact_orders() {
        let cfg = SampleConfig::with_seed(1);
        assert_eq!(contact_order_generic(&curve("X^4+Y^4+Z^4", 3), &cfg).unwrap(), 3);
        assert_eq!(contact_order_generic(&curve("Y*Z^3-X^4", 3), &cfg).unwrap(), 3);
        assert_eq!(contact_order_generic(&curve("X^4+Y^4+Z^4", 7), &cfg).unwrap(), 2);
    }

    #[test]
    fn strange_centers() {
        let cfg = SampleConfig::with_seed(2);
        assert_eq!(strange_center(&curve("X^4+Y^4+Z^4", 3), &cfg).unwrap(), None);
        let cusp = curve("Y^2*Z-X^3", 3);
        let f = cusp.field().clone();
        assert_eq!(
            strange_center(&cusp, &cfg).unwrap(),
            Some(ProjPoint::new(&f, [Fe(1), Fe(0), Fe(0)]).unwrap())
        );
        assert_eq!(strange_center(&curve("X^2+Y^2-Z^2", 7), &cfg).unwrap(), None);
    }

    #[test]
    fn hermitian_dual_degrees() {
        let inv = dual_degrees(&curve("X^4+Y^4+Z^4", 3), &SampleConfig::with_seed(3)).unwrap();
        assert_eq!(
            (
                inv.separable_degree,
                inv.inseparable_degree,
                inv.contact_order,
                inv.dual_degree
            ),
            (1, 3, 3, 4)
        );
        assert_eq!(inv.genus, Some(3));
    }

    #[test]
    fn hermitian_flexes_meet_the_bound() {
        let c = curve("X^4+Y^4+Z^4", 3);
        let r = flex_scan(&c, 2, 3, 3).unwrap();
        assert_eq!(r.flexes.len(), 28);
        assert!(r.flexes.iter().all(|f| f.contact == 4));
        assert_eq!((r.excess, r.bound), (28, 28));
    }

    #[test]
    fn strange_curve_is_refused_by_dual_degrees() {
        let err = dual_degrees(&curve("Y*Z^3-X^4", 3), &SampleConfig::with_seed(4)).unwrap_err();
        assert!(matches!(err, Error::StrangeCurve { .. }));
    }
}
