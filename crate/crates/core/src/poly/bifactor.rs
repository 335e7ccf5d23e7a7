//! Factorization in `GF(q)[x, Y]`.
//!
//! Squarefree parts are made monic in `Y`, specialized at a point `x = a`
//! (taken from an extension field when the base field is too small),
//! factored there, lifted `x`-adically and recombined by trial division.
//! Factors found over an extension are glued back along Frobenius orbits.

use std::sync::Arc;

use super::factor::{self, poly_cmp, Poly};
use super::{BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::field::{embedding, Embedding, Fe, Field, GaloisField, MAX_FIELD_SIZE};

pub type BPoly = BiPoly<Fe>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiFactorization {
    pub unit: Fe,
    /// Normalized irreducible factors with multiplicities, canonically sorted.
    pub factors: Vec<(BPoly, u32)>,
}

impl BiFactorization {
    pub fn expand(&self, f: &GaloisField) -> BPoly {
        self.factors
            .iter()
            .fold(BPoly::from_x(Poly::constant(self.unit, f)), |acc, (g, e)| {
                acc.mul(&g.pow(*e, f), f)
            })
    }
}

/// Order by `Y`-degree, then `x`-degree, then coefficients.
pub fn bipoly_cmp(a: &BPoly, b: &BPoly) -> std::cmp::Ordering {
    a.deg_y()
        .cmp(&b.deg_y())
        .then_with(|| a.deg_x().cmp(&b.deg_x()))
        .then_with(|| {
            let ka: Vec<_> = a.coeffs().iter().rev().collect();
            let kb: Vec<_> = b.coeffs().iter().rev().collect();
            for (x, y) in ka.iter().zip(kb.iter()) {
                let o = poly_cmp(x, y);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}

pub fn factor_bivariate(g: &BPoly, f: &Arc<GaloisField>) -> Result<BiFactorization> {
    if g.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let mut irr = irreducible_factors(g, f)?;
    irr.sort_by(bipoly_cmp);
    irr.dedup();
    let mut rest = g.clone();
    let mut factors = Vec::with_capacity(irr.len());
    for h in irr {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&h, &**f) {
            rest = q;
            e += 1;
        }
        if e == 0 {
            return Err(Error::consistency("bivariate factor does not divide input"));
        }
        factors.push((h, e));
    }
    if rest.deg_y() != Some(0) || rest.deg_x() != Some(0) {
        return Err(Error::consistency("bivariate factorization incomplete"));
    }
    Ok(BiFactorization {
        unit: rest.term(0, 0, &**f),
        factors,
    })
}

/// True when `g` is irreducible over `GF(q^k)` for the base `GF(q)`.
pub fn is_irreducible_over(g: &BPoly, f: &Arc<GaloisField>, k: u32) -> Result<bool> {
    let (big, emb) = extension(f, k)?;
    let gg = g.map(|a| emb.apply(*a), &*big);
    let fac = factor_bivariate(&gg, &big)?;
    Ok(fac.factors.len() == 1
        && fac.factors[0].1 == 1
        && fac.factors[0].0.deg_x().unwrap_or(0) + fac.factors[0].0.deg_y().unwrap_or(0) > 0)
}

fn extension(f: &Arc<GaloisField>, k: u32) -> Result<(Arc<GaloisField>, Arc<Embedding>)> {
    let big = GaloisField::get(f.p(), f.degree() * k)?;
    let emb = embedding(f, &big)?;
    Ok((big, emb))
}

/// Distinct normalized irreducible factors (unsorted, may repeat).
fn irreducible_factors(g: &BPoly, f: &Arc<GaloisField>) -> Result<Vec<BPoly>> {
    let ff = &**f;
    let mut out = Vec::new();
    let c = g.content(ff);
    if !c.is_constant() {
        for (h, _) in factor::factor(&c, ff)?.factors {
            out.push(BPoly::from_x(h));
        }
    }
    let pp = g.primitive_part(ff);
    if pp.deg_y().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let dy = pp.derivative_y(ff);
    if dy.is_zero() {
        if pp.derivative_x(ff).is_zero() {
            // pp = h^p
            out.extend(irreducible_factors(&pth_root(&pp, ff), f)?);
        } else {
            for h in irreducible_factors(&pp.swap(ff), f)? {
                out.push(h.swap(ff).normalize(ff));
            }
        }
        return Ok(out);
    }
    let gd = pp.gcd(&dy, ff);
    if gd.deg_y().unwrap_or(0) == 0 {
        out.extend(factor_separable(&pp, f)?);
    } else {
        let w = pp
            .div_exact(&gd, ff)
            .ok_or_else(|| Error::consistency("gcd does not divide"))?;
        out.extend(factor_separable(&w, f)?);
        out.extend(irreducible_factors(&gd, f)?);
    }
    Ok(out)
}

fn pth_root(g: &BPoly, f: &GaloisField) -> BPoly {
    let p = f.p() as usize;
    BPoly::from_coeffs(
        g.coeffs()
            .iter()
            .step_by(p)
            .map(|c| Poly::from_coeffs(c.coeffs().iter().step_by(p).map(|a| f.pth_root(a)).collect(), f))
            .collect(),
    )
}

/// Factors of a primitive polynomial that is squarefree and separable in `Y`.
fn factor_separable(w: &BPoly, f: &Arc<GaloisField>) -> Result<Vec<BPoly>> {
    let ff = &**f;
    let n = w.deg_y().unwrap_or(0);
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![w.normalize(ff)]);
    }
    let lc = w.lc_y().unwrap().clone();
    // W(x, Y) = lc^{n-1} w(x, Y / lc), monic in Y
    let mut pw = vec![Poly::one(ff); n + 1];
    for j in 1..=n {
        pw[j] = pw[j - 1].mul(&lc, ff);
    }
    let monic = BPoly::from_coeffs(
        (0..=n)
            .map(|j| {
                if j == n {
                    Poly::one(ff)
                } else {
                    w.coeff(j).mul(&pw[n - 1 - j], ff)
                }
            })
            .collect(),
    );
    let mut out = Vec::new();
    for h in factor_monic(&monic, f)? {
        let d = h.deg_y().unwrap();
        let back = BPoly::from_coeffs((0..=d).map(|j| h.coeff(j).mul(&pw[j], ff)).collect());
        out.push(back.primitive_part(ff).normalize(ff));
    }
    Ok(out)
}

/// Monic irreducible factors over the base field of a monic, squarefree,
/// `Y`-separable polynomial.
fn factor_monic(w: &BPoly, f: &Arc<GaloisField>) -> Result<Vec<BPoly>> {
    let (big, emb, a) = evaluation_point(w, f)?;
    let bf = &*big;
    let wb = w.map(|c| emb.apply(*c), bf);
    let shifted = wb.shift_x(&a, bf);
    let over_big = factor_over(&shifted, &big)?;
    let neg_a = bf.neg(&a);
    let mut facs: Vec<BPoly> = over_big.into_iter().map(|h| h.shift_x(&neg_a, bf)).collect();
    if big.degree() == f.degree() {
        return Ok(facs);
    }
    // glue Frobenius orbits back to the base field
    let q = f.size() as u128;
    let mut out = Vec::new();
    while let Some(h) = facs.pop() {
        let mut prod = h.clone();
        let mut cur = h.map(|c| bf.pow(c, q), bf);
        while cur != h {
            let pos = facs
                .iter()
                .position(|x| *x == cur)
                .ok_or_else(|| Error::consistency("Frobenius orbit left the factor set"))?;
            facs.swap_remove(pos);
            prod = prod.mul(&cur, bf);
            cur = cur.map(|c| bf.pow(c, q), bf);
        }
        let mut coeffs = Vec::new();
        for c in prod.coeffs() {
            let mut v = Vec::new();
            for x in c.coeffs() {
                v.push(
                    emb.preimage(*x)
                        .ok_or_else(|| Error::consistency("orbit product not defined over base field"))?,
                );
            }
            coeffs.push(Poly::from_coeffs(v, &**f));
        }
        out.push(BPoly::from_coeffs(coeffs));
    }
    Ok(out)
}

/// Smallest extension `GF(q^k)` and point `a` in it with `w(a, Y)` squarefree.
fn evaluation_point(w: &BPoly, f: &Arc<GaloisField>) -> Result<(Arc<GaloisField>, Arc<Embedding>, Fe)> {
    let mut k = 1;
    loop {
        let size = (f.size() as u64).checked_pow(k);
        if size.is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(Error::UnsupportedClass(
                "no squarefree specialization inside the supported field sizes".into(),
            ));
        }
        let (big, emb) = extension(f, k)?;
        let bf = &*big;
        let wb = w.map(|c| emb.apply(*c), bf);
        for a in big.elements() {
            // points of proper subfields were already tried
            if k > 1 && bf.element_degree(a) < bf.degree() {
                continue;
            }
            let s = wb.eval_x(&a, bf);
            if s.gcd(&s.derivative(bf), bf).is_constant() {
                return Ok((big.clone(), emb, a));
            }
        }
        k += 1;
    }
}

/// Monic factors of a monic squarefree `w` over `big`, given that `w(0, Y)`
/// is squarefree.
fn factor_over(w: &BPoly, big: &Arc<GaloisField>) -> Result<Vec<BPoly>> {
    let bf = &**big;
    let n = w.deg_y().unwrap();
    let w0 = w.eval_x(&bf.zero(), bf);
    let locals: Vec<Poly> = factor::factor(&w0, bf)?.factors.into_iter().map(|(h, _)| h).collect();
    if locals.len() == 1 {
        return Ok(vec![w.clone()]);
    }
    let prec = w.deg_x().unwrap_or(0) + 1;
    let lifted = hensel_lift(w, &locals, prec, bf);
    let mut rest = w.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(&remaining, s) {
            let cand = subset.iter().fold(BPoly::from_x(Poly::one(bf)), |acc, &i| {
                acc.mul(&lifted[i], bf).truncate_x(prec, bf)
            });
            if cand.deg_y().unwrap_or(0) == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand, bf) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                remaining.retain(|i| !subset.contains(i));
            }
            None => s += 1,
        }
    }
    if rest.deg_y().unwrap_or(0) > 0 {
        out.push(rest);
    }
    debug_assert_eq!(out.iter().map(|h| h.deg_y().unwrap()).sum::<usize>(), n);
    Ok(out)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 && idx[0] == items.len() - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lift `w ≡ Π locals (mod x)` to monic factors modulo `x^prec`.
fn hensel_lift(w: &BPoly, locals: &[Poly], prec: usize, f: &GaloisField) -> Vec<BPoly> {
    // series[k] = coefficient of x^k, a polynomial in Y
    let mut target: Vec<Poly> = (0..prec)
        .map(|k| Poly::from_coeffs((0..=w.deg_y().unwrap()).map(|j| w.coeff(j).coeff(k, f)).collect(), f))
        .collect();
    let mut out = Vec::new();
    for i in 0..locals.len() - 1 {
        let g0 = locals[i].clone();
        let h0 = locals[i + 1..].iter().fold(Poly::one(f), |acc, p| acc.mul(p, f));
        let (gs, hs) = lift_pair(&target, &g0, &h0, prec, f);
        out.push(series_to_bipoly(&gs, f));
        target = hs;
    }
    out.push(series_to_bipoly(&target, f));
    out
}

fn lift_pair(t: &[Poly], g0: &Poly, h0: &Poly, prec: usize, f: &GaloisField) -> (Vec<Poly>, Vec<Poly>) {
    let (one, s, tt) = g0.ext_gcd(h0, f);
    debug_assert!(one.is_one(f));
    let _ = s;
    let mut g = vec![g0.clone()];
    let mut h = vec![h0.clone()];
    for k in 1..prec {
        let mut c = t.get(k).cloned().unwrap_or_else(Poly::zero);
        for i in 1..k {
            c = c.sub(&g[i].mul(&h[k - i], f), f);
        }
        let gk = tt.mul(&c, f).rem(g0, f);
        let hk = c.sub(&gk.mul(h0, f), f).div_exact(g0, f).expect("Hensel step is exact");
        g.push(gk);
        h.push(hk);
    }
    (g, h)
}

fn series_to_bipoly(s: &[Poly], f: &GaloisField) -> BPoly {
    let dy = s.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    BPoly::from_coeffs(
        (0..=dy)
            .map(|j| Poly::from_coeffs(s.iter().map(|p| p.coeff(j, f)).collect(), f))
            .collect(),
    )
}

/// Convenience: is `g` irreducible over the field it is written in.
pub fn is_irreducible(g: &BPoly, f: &Arc<GaloisField>) -> Result<bool> {
    let fac = factor_bivariate(g, f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

#[allow(dead_code)]
fn as_uni_y(g: &BPoly, f: &GaloisField) -> Option<UniPoly<Fe>> {
    if g.deg_x().unwrap_or(0) > 0 {
        return None;
    }
    Some(g.eval_x(&f.zero(), f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bp(terms: &[(usize, usize, u32)], f: &GaloisField) -> BPoly {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Fe(c))).collect();
        BPoly::from_terms(&t, f)
    }

    #[test]
    fn fermat_quartic_affine_is_irreducible() {
        let f = GaloisField::get(5, 1).unwrap();
        // x^4 + Y^4 + 1
        let g = bp(&[(4, 0, 1), (0, 4, 1), (0, 0, 1)], &f);
        assert!(is_irreducible(&g, &f).unwrap());
    }

    #[test]
    fn product_of_conics_splits() {
        let f = GaloisField::get(3, 1).unwrap();
        let a = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, 2)], &f);
        let b = bp(&[(1, 1, 1), (0, 0, 1)], &f);
        let g = a.mul(&b, &f).mul(&b, &f);
        let fac = factor_bivariate(&g, &f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&f), g);
    }

    #[test]
    fn splits_only_over_extension() {
        // Y^2 - g is irreducible over GF(3) for non-squares g but x^2 + Y^2
        // = (Y - i x)(Y + i x) splits over GF(9).
        let f = GaloisField::get(3, 1).unwrap();
        let g = bp(&[(2, 0, 1), (0, 2, 1)], &f);
        assert!(is_irreducible(&g, &f).unwrap());
        assert!(!is_irreducible_over(&g, &f, 2).unwrap());
    }

    #[test]
    fn inseparable_and_swapped_inputs() {
        let f = GaloisField::get(2, 1).unwrap();
        // Y^2 + x = x + Y^2 : derivative in Y vanishes
        let g = bp(&[(0, 2, 1), (1, 0, 1)], &f);
        assert!(is_irreducible(&g, &f).unwrap());
        // (Y + x)^2 = Y^2 + x^2: both partials vanish
        let h = bp(&[(0, 2, 1), (2, 0, 1)], &f);
        let fac = factor_bivariate(&h, &f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
    }

    #[test]
    fn random_products_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(p, n) in &[(2u32, 1u32), (3, 1), (5, 1), (2, 2)] {
            let f = GaloisField::get(p, n).unwrap();
            for _ in 0..12 {
                let mut g = BPoly::from_x(Poly::one(&*f));
                for _ in 0..rng.gen_range(1..=3) {
                    let dx = rng.gen_range(0..=2);
                    let dy = rng.gen_range(1..=2);
                    let mut terms = vec![(0, dy, Fe(1))];
                    for i in 0..=dx {
                        for j in 0..dy {
                            terms.push((i, j, f.random(&mut rng)));
                        }
                    }
                    g = g.mul(&BPoly::from_terms(&terms, &*f), &*f);
                }
                let fac = factor_bivariate(&g, &f).unwrap();
                assert_eq!(fac.expand(&f), g);
                for (h, _) in &fac.factors {
                    // each factor is irreducible: refactoring returns it alone
                    let again = factor_bivariate(h, &f).unwrap();
                    assert_eq!(again.factors, vec![(h.clone(), 1)]);
                }
            }
        }
    }
}
