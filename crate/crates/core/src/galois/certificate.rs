//! Linear certificates: groups of central collineations with centre `P`
//! preserving the curve.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::fibers::{fits, inner_frame};
use super::frame::ProjectionFrame;
use crate::curve::{common_field, Mat3, PlaneCurve, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};
use crate::poly::factor;

/// Central collineations with centre `P` mapping the curve to itself,
/// normalized and sorted, over `field`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisCertificate {
    pub field: Arc<GaloisField>,
    pub matrices: Vec<Mat3>,
}

impl GaloisCertificate {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    /// Number of group elements fixing `q`.
    pub fn stabilizer_order(&self, q: &ProjPoint) -> Result<usize> {
        let k = common_field(&self.field, q.field())?;
        let q = q.to_field(&k)?;
        let e = crate::field::embedding(&self.field, &k)?;
        let mut n = 0;
        for m in &self.matrices {
            let img = ProjPoint::new(&k, m.map(|c| e.apply(c)).apply(&k, q.coords()))?;
            n += (img == q) as usize;
        }
        Ok(n)
    }
}

/// Independent check of a certificate: every matrix fixes each line through
/// `p` and preserves the curve, the set is closed under products, and its
/// size is the degree of the projection.
pub fn verify_certificate(curve: &PlaneCurve, p: &ProjPoint, cert: &GaloisCertificate) -> Result<bool> {
    let k = &cert.field;
    let p = p.to_field(k)?;
    let form = curve.form_over(k)?;
    // three lines of the pencil through p
    let (a, b) = {
        let l = ProjLine::new(k, [Fe(1), Fe(0), Fe(0)]);
        let seed = match l {
            Ok(l) if !p.lies_on(&l) => *l.coords(),
            _ => [Fe(0), Fe(1), Fe(0)],
        };
        let l0 = ProjLine::new(k, seed)?;
        let (u, v) = l0.two_points();
        (p.join(&ProjPoint::new(k, u)?)?, p.join(&ProjPoint::new(k, v)?)?)
    };
    let c = ProjLine::new(k, [0, 1, 2].map(|i| k.add(&a.coords()[i], &b.coords()[i])))?;
    let set: BTreeSet<Mat3> = cert.matrices.iter().map(|m| m.normalized(k)).collect();
    if set.len() != cert.matrices.len() || !set.contains(&Mat3::identity()) {
        return Ok(false);
    }
    for m in &set {
        let Some(inv) = m.inverse(k) else { return Ok(false) };
        for l in [&a, &b, &c] {
            if ProjLine::new(k, inv.apply_row(k, l.coords()))? != *l {
                return Ok(false);
            }
        }
        if !form.compose(m).proportional_to(&form) {
            return Ok(false);
        }
        for n in &set {
            if !set.contains(&m.mul(k, n).normalized(k)) {
                return Ok(false);
            }
        }
    }
    Ok(set.len() == curve.degree() as usize - 1)
}

/// A fiber over `x = x0` with all roots in the frame's field.
fn split_fibers(frame: &ProjectionFrame, want: usize) -> Vec<(Fe, Vec<Fe>)> {
    let k = &frame.field;
    let n = frame.degree();
    let mut out = Vec::new();
    for x0 in k.elements() {
        let h = frame.affine.eval_x(&x0, &**k);
        let roots = factor::roots(&h, k);
        if roots.len() == n {
            out.push((x0, roots));
            if out.len() == want {
                break;
            }
        }
    }
    out
}

fn maps_onto(roots: &[Fe], c: Fe, t: Fe, k: &GaloisField) -> bool {
    let set: BTreeSet<Fe> = roots.iter().copied().collect();
    roots.iter().all(|r| set.contains(&k.add(&k.mul(&c, r), &t)))
}

/// All matrices `[[1,0,0],[b,c,e],[0,0,1]]` over the frame's field with
/// `F'∘A ∝ F'`, in frame coordinates.
fn frame_collineations(frame: &ProjectionFrame) -> Vec<Mat3> {
    let k = &frame.field;
    let fibers = split_fibers(frame, 2);
    let Some((x0, r0)) = fibers.first() else {
        return Vec::new();
    };
    let (y0, y0b) = (r0[0], r0[1]);
    let d0 = k.sub(&y0, &y0b);
    let mut found = BTreeSet::new();
    for &y1 in r0 {
        for &y1b in r0 {
            if y1 == y1b {
                continue;
            }
            let c = k.div(&k.sub(&y1, &y1b), &d0);
            let t0 = k.sub(&y1, &k.mul(&c, &y0));
            if !maps_onto(r0, c, t0, k) {
                continue;
            }
            // (b, e) with b·x0 + e = t0
            let bs: Vec<Fe> = match fibers.get(1) {
                Some((x1, r1)) => r1
                    .iter()
                    .map(|y3| k.sub(y3, &k.mul(&c, &r1[0])))
                    .filter(|t1| maps_onto(r1, c, *t1, k))
                    .map(|t1| k.div(&k.sub(&t1, &t0), &k.sub(x1, x0)))
                    .collect(),
                None => k.elements().collect(),
            };
            for b in bs {
                let e = k.sub(&t0, &k.mul(&b, x0));
                let a = Mat3([[Fe(1), Fe(0), Fe(0)], [b, c, e], [Fe(0), Fe(0), Fe(1)]]);
                if frame.form.compose(&a).proportional_to(&frame.form) {
                    found.insert(a);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Search for a certificate over `GF(q^m)`, `m ∈ degrees`, relative to the
/// curve's field. Returns the first group of order `d - 1`.
pub fn linear_certificate(curve: &PlaneCurve, p: &ProjPoint, degrees: &[u32]) -> Result<Option<GaloisCertificate>> {
    let base = inner_frame(curve, p)?;
    let e = curve.field().degree();
    for &m in degrees {
        let n = e * m;
        if !n.is_multiple_of(base.field.degree()) || !fits(base.field.p(), n) {
            continue;
        }
        let k = GaloisField::get(base.field.p(), n)?;
        let frame = base.lift(&k)?;
        let group = frame_collineations(&frame);
        if group.len() != frame.degree() {
            continue;
        }
        let mut matrices: Vec<Mat3> = group
            .iter()
            .map(|a| frame.t.mul(&k, a).mul(&k, &frame.t_inv).normalized(&k))
            .collect();
        matrices.sort();
        let cert = GaloisCertificate { field: k, matrices };
        if !verify_certificate(curve, p, &cert)? {
            return Err(Error::consistency("certificate failed independent verification"));
        }
        return Ok(Some(cert));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_elations() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let cert = linear_certificate(&c, &p, &[1, 2]).unwrap().expect("certificate");
        assert_eq!(cert.order(), 3);
        // elations: order p, so every non-identity element cubes to the identity
        for m in &cert.matrices {
            let m3 = m.mul(&f9, m).mul(&f9, m).normalized(&f9);
            assert_eq!(m3, Mat3::identity());
        }
        assert_eq!(cert.stabilizer_order(&p).unwrap(), 3);
    }

    #[test]
    fn generic_point_has_none() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 7, 1).unwrap();
        let f = GaloisField::get(7, 2).unwrap();
        let pts = crate::curve::points_over(&c, &f).unwrap();
        assert!(linear_certificate(&c, &pts[0], &[1, 2]).unwrap().is_none());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let mut cert = linear_certificate(&c, &p, &[2]).unwrap().unwrap();
        cert.matrices.pop();
        assert!(!verify_certificate(&c, &p, &cert).unwrap());
    }
}
