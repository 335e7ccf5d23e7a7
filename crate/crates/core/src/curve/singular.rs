//! Singular points, genus, and counts of common zeros via resultants.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::form::TernaryForm;
use super::point::{Mat3, Vec3};
use super::{PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, GaloisField, ResidueField};
use crate::poly::factor::{self, Poly};
use crate::poly::{resultant_y, BiPoly, UniPoly};

/// A coordinate change `T` with `F(T·(0:1:0)) ≠ 0`, so `F(T·v)` has a
/// constant leading coefficient in `Y` and no point at `(0:1:0)`.
pub(crate) fn vertical_frame(f: &TernaryForm) -> Result<Mat3> {
    let k = f.field();
    let units = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]];
    let els: Vec<Fe> = k.elements().collect();
    let affine = els.iter().flat_map(|&a| els.iter().map(move |&c| [a, Fe(1), c]));
    let w = std::iter::once(units[1])
        .chain(affine)
        .chain(els.iter().map(|&c| [Fe(1), Fe(0), c]))
        .chain(std::iter::once(units[2]))
        .find(|w| f.eval(w).0 != 0)
        .ok_or_else(|| Error::UnsupportedClass("curve contains every rational point of the plane".into()))?;
    for (i, j) in [(0, 2), (0, 1), (1, 2)] {
        let t = Mat3::from_columns(&units[i], &w, &units[j]);
        if t.det(k).0 != 0 {
            return Ok(t);
        }
    }
    Err(Error::consistency("no invertible frame"))
}

/// The extension of `base` of relative degree `k`, with the embedding.
fn extend(base: &Arc<GaloisField>, k: usize) -> Result<(Arc<GaloisField>, impl Fn(&Fe) -> Fe)> {
    let big = GaloisField::get(base.p(), base.degree() * k as u32)?;
    let e = embedding(base, &big)?;
    Ok((big, move |x: &Fe| e.apply(*x)))
}

/// Roots over the closure of a polynomial over `k`, each over its own
/// splitting field.
fn all_roots(h: &Poly, k: &Arc<GaloisField>) -> Result<Vec<(Arc<GaloisField>, Fe)>> {
    let mut out = Vec::new();
    if h.is_constant() {
        return Ok(out);
    }
    for (psi, _) in factor::factor(h, k)?.factors {
        let j = psi.degree().unwrap();
        let (big, emb) = extend(k, j)?;
        let pb = psi.map(|c| emb(c), &*big);
        for r in factor::roots(&pb, &big) {
            out.push((big.clone(), r));
        }
    }
    Ok(out)
}

fn restrict_at_infinity(f: &TernaryForm) -> Poly {
    f.restrict(&[Fe(1), Fe(0), Fe(0)], &[Fe(0), Fe(1), Fe(0)])
}

fn gcd_all(polys: &[Poly], k: &GaloisField) -> Poly {
    polys.iter().fold(Poly::zero(), |acc, p| acc.gcd(p, k))
}

/// Every singular point of the curve over the algebraic closure, each over
/// its field of definition, sorted.
pub fn all_singular_points(curve: &PlaneCurve) -> Result<Vec<ProjPoint>> {
    let k = curve.field();
    let t = vertical_frame(curve.form())?;
    let g_form = curve.form().compose(&t);
    let g = g_form.dehomogenize();
    let gx = g.derivative_x(&**k);
    let gy = g.derivative_y(&**k);
    let mut r = Poly::zero();
    for d in [&gy, &gx] {
        if !d.is_zero() {
            r = r.gcd(&resultant_y(&g, d, &**k)?, &**k);
        }
    }
    if r.is_zero() {
        return Err(Error::consistency("curve equation has no nonzero partial derivative"));
    }
    let mut found = BTreeSet::new();
    let mut push = |field: &Arc<GaloisField>, v: Vec3| -> Result<()> {
        let e = embedding(k, field)?;
        let tb = t.map(|c| e.apply(c));
        let p = ProjPoint::new(field, tb.apply(field, &v))?;
        found.insert(p.descend(k.degree())?);
        Ok(())
    };
    if !r.is_constant() {
        for (phi, _) in factor::factor(&r, k)?.factors {
            let (kk, emb) = extend(k, phi.degree().unwrap())?;
            let phib = phi.map(|c| emb(c), &*kk);
            let (gb, gxb, gyb) = (
                g.map(|c| emb(c), &*kk),
                gx.map(|c| emb(c), &*kk),
                gy.map(|c| emb(c), &*kk),
            );
            for alpha in factor::roots(&phib, &kk) {
                let h = gcd_all(
                    &[
                        gb.eval_x(&alpha, &*kk),
                        gxb.eval_x(&alpha, &*kk),
                        gyb.eval_x(&alpha, &*kk),
                    ],
                    &kk,
                );
                for (big, beta) in all_roots(&h, &kk)? {
                    let a = embedding(&kk, &big)?.apply(alpha);
                    push(&big, [a, beta, Fe(1)])?;
                }
            }
        }
    }
    // points (1 : y : 0) of the frame; (0 : 1 : 0) is off the curve
    let mut at_inf = vec![restrict_at_infinity(&g_form)];
    for i in 0..3 {
        if let Some(d) = g_form.partial(i) {
            at_inf.push(restrict_at_infinity(&d));
        }
    }
    let h = gcd_all(&at_inf, k);
    for (big, y) in all_roots(&h, k)? {
        push(&big, [Fe(1), y, Fe(0)])?;
    }
    Ok(found.into_iter().collect())
}

/// Singular points over `GF(q^m)`, `m ≤ ext_max`, where `q` is the size of
/// the curve's field.
pub fn singular_points(curve: &PlaneCurve, ext_max: u32) -> Result<Vec<ProjPoint>> {
    if ext_max == 0 {
        return Err(Error::invalid("ext_max must be at least 1"));
    }
    let e = curve.field().degree();
    Ok(all_singular_points(curve)?
        .into_iter()
        .filter(|p| p.field().degree() / e <= ext_max)
        .collect())
}

/// Geometric genus for smooth curves and curves with only ordinary singular
/// points (pairwise distinct tangent lines in every cone).
pub fn genus(curve: &PlaneCurve) -> Result<u32> {
    let d = curve.degree() as i64;
    let mut g = (d - 1) * (d - 2) / 2;
    for p in all_singular_points(curve)? {
        let cone = curve.tangent_cone(&p)?;
        if cone.lines.iter().any(|(_, m)| *m > 1) {
            return Err(Error::UnsupportedClass(format!("non-ordinary singular point {p}")));
        }
        let m = cone.multiplicity as i64;
        g -= m * (m - 1) / 2;
    }
    if g < 0 {
        return Err(Error::consistency("negative genus: the curve is reducible"));
    }
    Ok(g as u32)
}

/// Number of distinct smooth points of `F = 0` (over the closure) where the
/// form `G` also vanishes. `G` must not share a component with `F`.
pub fn count_common_smooth(f: &TernaryForm, g: &TernaryForm) -> Result<usize> {
    let k = f.field();
    let t = vertical_frame(f)?;
    let (fl, gl) = (f.compose(&t), g.compose(&t));
    let (a, b) = (fl.dehomogenize(), gl.dehomogenize());
    let (ax, ay) = (a.derivative_x(&**k), a.derivative_y(&**k));
    let r = resultant_y(&a, &b, &**k)?;
    if r.is_zero() {
        return Err(Error::consistency("forms share a component"));
    }
    let mut total = 0;
    if !r.is_constant() {
        for (phi, _) in factor::factor(&r, k)?.factors {
            let l = ResidueField::new(k.clone(), &phi);
            let at = |p: &BiPoly<Fe>| -> UniPoly<Poly> {
                UniPoly::from_coeffs(p.coeffs().iter().map(|c| c.rem(&phi, &**k)).collect(), &l)
            };
            let h = at(&a).gcd(&at(&b), &l);
            let sing = h.gcd(&at(&ax), &l).gcd(&at(&ay), &l);
            let n = h.distinct_root_count(&l) - sing.distinct_root_count(&l);
            total += n * phi.degree().unwrap();
        }
    }
    let h = restrict_at_infinity(&fl).gcd(&restrict_at_infinity(&gl), &**k);
    let mut parts = vec![h.clone()];
    for i in 0..3 {
        if let Some(d) = fl.partial(i) {
            parts.push(restrict_at_infinity(&d));
        }
    }
    let sing = gcd_all(&parts, k);
    total += h.distinct_root_count(&**k) - sing.distinct_root_count(&**k);
    Ok(total)
}
