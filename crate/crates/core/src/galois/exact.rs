//! Exact splitting test for the fiber polynomial over its own stem field.
//!
//! With `α` a root of `f` and `s` a shift, the norm
//! `N(Y) = ∏_{i,j} (Y - s·α_i - α_j)` is the characteristic polynomial of
//! `s·(A⊗I) + I⊗A` for the companion matrix `A`. When `N` is squarefree its
//! irreducible factors over `K(x)` match the factors of `f` over `K(x)(α)`,
//! each of `Y`-degree `n` times the factor's degree.

use super::fibers::{fits, inner_frame};
use crate::curve::{PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField};
use crate::poly::bifactor::{factor_bivariate, BPoly};
use crate::poly::charpoly;
use crate::poly::factor::Poly;

#[derive(Clone, Debug, PartialEq)]
pub enum ExactOutcome {
    /// `f` splits into linear factors over `GF(q^m)(C)`.
    Split {
        m: u32,
        factors: usize,
    },
    /// No splitting for any scheduled `m`.
    NotSplit {
        schedule: Vec<u32>,
    },
    Inconclusive(String),
}

/// Degrees of the factors of `f` over its stem field, as `Y`-degrees of the
/// norm factors divided by `n`; `None` if no shift makes the norm squarefree.
fn stem_factor_degrees(f: &BPoly, k: &std::sync::Arc<GaloisField>) -> Result<Option<Vec<usize>>> {
    let n = f.deg_y().unwrap();
    let lc = f.lc_y().unwrap().coeff(0, &**k);
    let f = f.scale(&k.inv(&lc), &**k);
    let comp = companion(&f, k);
    for s in shifts(k) {
        let m = tensor_sum(&comp, &s, k);
        let norm = charpoly(&m, &**k);
        if !squarefree(&norm, k) {
            continue;
        }
        let fac = factor_bivariate(&norm, k)?;
        let mut degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg_y().unwrap() / n).collect();
        degs.sort_unstable();
        return Ok(Some(degs));
    }
    Ok(None)
}

type Mat = Vec<Vec<Poly>>;

fn companion(f: &BPoly, k: &GaloisField) -> Mat {
    let n = f.deg_y().unwrap();
    let mut a = vec![vec![Poly::zero(); n]; n];
    for i in 1..n {
        a[i][i - 1] = Poly::one(k);
    }
    for i in 0..n {
        a[i][n - 1] = f.coeff(i).neg(k);
    }
    a
}

/// `s·(A⊗I) + I⊗A`.
fn tensor_sum(a: &Mat, s: &Poly, k: &GaloisField) -> Mat {
    let n = a.len();
    let mut m = vec![vec![Poly::zero(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                // (A⊗I)[(i,r),(j,r)] = A[i][j]; (I⊗A)[(i,r),(i,j)] = A[r][j]
                let cell = &mut m[i * n + r][j * n + r];
                *cell = cell.add(&a[i][j].mul(s, k), k);
                let cell = &mut m[i * n + r][i * n + j];
                *cell = cell.add(&a[r][j], k);
            }
        }
    }
    m
}

/// Constants other than `0, ±1`, then `x + c`.
fn shifts(k: &GaloisField) -> impl Iterator<Item = Poly> + '_ {
    let consts = k
        .elements()
        .filter(move |c| c.0 != 0 && *c != k.one() && *c != k.neg(&k.one()))
        .map(move |c| Poly::constant(c, k));
    let linear = k.elements().map(move |c| Poly::from_coeffs(vec![c, Fe(1)], k));
    consts.chain(linear)
}

/// Squarefree in `Y` over `K(x)`: certified by one squarefree specialization.
fn squarefree(g: &BPoly, k: &std::sync::Arc<GaloisField>) -> bool {
    let deg = g.deg_y().unwrap();
    let mut fields = vec![k.clone()];
    if let Ok(big) = GaloisField::get(k.p(), k.degree() * 2) {
        if fits(k.p(), k.degree() * 2) {
            fields.push(big);
        }
    }
    for big in fields {
        let Ok(e) = embedding(k, &big) else { continue };
        let gb = g.map(|c| e.apply(*c), &*big);
        for x0 in big.elements() {
            let h = gb.eval_x(&x0, &*big);
            if h.degree() != Some(deg) {
                continue;
            }
            if h.gcd(&h.derivative(&*big), &*big).is_constant() {
                return true;
            }
        }
    }
    false
}

/// Does the fiber polynomial of the projection from `p` split over
/// `GF(q^m)(C)` for some `m` in the schedule (relative to the curve's field)?
pub fn exact_split_test(curve: &PlaneCurve, p: &ProjPoint, schedule: &[u32]) -> Result<ExactOutcome> {
    let frame = inner_frame(curve, p)?;
    let k0 = frame.field.clone();
    if frame.affine.derivative_y(&*k0).is_zero() {
        return Err(Error::InseparableProjection(format!(
            "projection from {p} is inseparable"
        )));
    }
    let e = curve.field().degree();
    let mut tried = Vec::new();
    for &m in schedule {
        let n = e * m;
        if !n.is_multiple_of(k0.degree()) {
            continue;
        }
        if !fits(k0.p(), n) {
            return Ok(ExactOutcome::Inconclusive(format!(
                "GF({}^{n}) exceeds the field table limit",
                k0.p()
            )));
        }
        let k = GaloisField::get(k0.p(), n)?;
        let emb = embedding(&k0, &k)?;
        let f: BPoly = frame.affine.map(|c| emb.apply(*c), &*k);
        let Some(degs) = stem_factor_degrees(&f, &k)? else {
            return Ok(ExactOutcome::Inconclusive("no shift gives a squarefree norm".into()));
        };
        if degs.iter().sum::<usize>() != frame.degree() {
            return Err(Error::consistency("stem-field factor degrees do not add up"));
        }
        tried.push(m);
        if degs.iter().all(|&d| d == 1) {
            return Ok(ExactOutcome::Split { m, factors: degs.len() });
        }
    }
    if tried.is_empty() {
        return Ok(ExactOutcome::Inconclusive(
            "no scheduled field contains the point".into(),
        ));
    }
    Ok(ExactOutcome::NotSplit { schedule: tried })
}

#[cfg(test)]
fn norm_degree(f: &BPoly, s: &Poly, k: &GaloisField) -> Option<usize> {
    let m = tensor_sum(&companion(f, k), s, k);
    charpoly(&m, k).deg_y()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_always_splits_over_its_stem_field() {
        let k = GaloisField::get(5, 1).unwrap();
        // Y^2 - x: separable, irreducible over K(x)
        let f = BPoly::from_terms(&[(0, 2, Fe(1)), (1, 0, Fe(4))], &*k);
        assert_eq!(norm_degree(&f, &Poly::constant(Fe(2), &*k), &k), Some(4));
        assert_eq!(stem_factor_degrees(&f, &k).unwrap(), Some(vec![1, 1]));
    }

    #[test]
    fn generic_cubic_does_not_split() {
        let k = GaloisField::get(7, 1).unwrap();
        // Y^3 - x: Kummer, needs cube roots of unity (present in GF(7))
        let f = BPoly::from_terms(&[(0, 3, Fe(1)), (1, 0, Fe(6))], &*k);
        assert_eq!(stem_factor_degrees(&f, &k).unwrap(), Some(vec![1, 1, 1]));
        // Y^3 - Y - x over GF(7): Galois group S3
        let g = BPoly::from_terms(&[(0, 3, Fe(1)), (0, 1, Fe(6)), (1, 0, Fe(6))], &*k);
        assert_eq!(stem_factor_degrees(&g, &k).unwrap(), Some(vec![1, 2]));
    }

    #[test]
    fn hermitian_point_splits() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
        let f9 = GaloisField::get(3, 2).unwrap();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        assert_eq!(
            exact_split_test(&c, &p, &[1, 2, 3, 4]).unwrap(),
            ExactOutcome::Split { m: 2, factors: 3 }
        );
    }
}
