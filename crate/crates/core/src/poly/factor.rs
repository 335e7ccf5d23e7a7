//! Factorization of univariate polynomials over a tabulated GF(q):
//! squarefree decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting driven by a fixed-seed ChaCha
//! stream. Output is sorted canonically, so the random choices never leak
//! into results.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};

pub type Poly = UniPoly<Fe>;

const SPLIT_SEED: u64 = 0x5eed_0f_c0ffee;

/// `unit · Π factor^mult` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &GaloisField) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit, f), |acc, (g, e)| {
            acc.mul(&g.pow(*e as u64, f), f)
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Canonical order: by degree, then coefficients from the top down.
pub fn poly_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.deg_i()
        .cmp(&b.deg_i())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

pub fn factor(g: &Poly, f: &GaloisField) -> Result<Factorization> {
    let lc = *g
        .lc()
        .ok_or_else(|| Error::invalid("cannot factor the zero polynomial"))?;
    let mut factors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for (sq, mult) in squarefree_decomposition(&g.monic(f), f) {
        for (part, d) in distinct_degree(&sq, f) {
            for irr in equal_degree(&part, d, f, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| poly_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit: lc, factors })
}

/// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with
/// squarefree, pairwise coprime `s_i` and `g = Π s_i^i`.
pub fn squarefree_decomposition(g: &Poly, f: &GaloisField) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if g.is_constant() {
        return out;
    }
    let p = f.p();
    let d = g.derivative(f);
    if d.is_zero() {
        let root: Vec<Fe> = g.coeffs().iter().step_by(p as usize).map(|a| f.pth_root(a)).collect();
        for (s, e) in squarefree_decomposition(&Poly::from_coeffs(root, f), f) {
            out.push((s, e * p));
        }
        return out;
    }
    let mut c = g.gcd(&d, f);
    let mut w = g.div_exact(&c, f).unwrap();
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f).unwrap();
        if !fac.is_constant() {
            out.push((fac.monic(f), i));
        }
        c = c.div_exact(&y, f).unwrap();
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let root: Vec<Fe> = c.coeffs().iter().step_by(p as usize).map(|a| f.pth_root(a)).collect();
        for (s, e) in squarefree_decomposition(&Poly::from_coeffs(root, f).monic(f), f) {
            out.push((s, e * p));
        }
    }
    // merge equal multiplicities produced by the two branches
    out.sort_by_key(|x| x.1);
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (s, e) in out {
        match merged.last_mut() {
            Some(last) if last.1 == e => last.0 = last.0.mul(&s, f),
            _ => merged.push((s, e)),
        }
    }
    merged
}

/// Split a monic squarefree polynomial into products of irreducibles of equal
/// degree: `(product, degree)`.
pub fn distinct_degree(g: &Poly, f: &GaloisField) -> Vec<(Poly, usize)> {
    let q = f.size() as u128;
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = Poly::x(f);
    let mut h = x.rem(&rest, f);
    let mut d = 0usize;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.monic(f), deg));
            break;
        }
        h = h.pow_mod(q, &rest, f);
        let gd = h.sub(&x, f).gcd(&rest, f);
        if !gd.is_one(f) {
            rest = rest.div_exact(&gd, f).unwrap();
            h = h.rem(&rest, f);
            out.push((gd, d));
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
pub fn equal_degree(g: &Poly, d: usize, f: &GaloisField, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![g.monic(f)];
    }
    loop {
        let a = random_poly(n, f, rng);
        if a.is_constant() {
            continue;
        }
        let b = split_probe(&a, d, g, f);
        let h = b.gcd(g, f);
        if !h.is_constant() && h.degree() != g.degree() {
            let other = g.div_exact(&h, f).unwrap();
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

fn random_poly(n: usize, f: &GaloisField, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs((0..n).map(|_| f.random(rng)).collect(), f)
}

/// For odd q: `a^{(q^d-1)/2} - 1`; for q even: the trace `Σ a^{2^i}`.
fn split_probe(a: &Poly, d: usize, g: &Poly, f: &GaloisField) -> Poly {
    let q = f.size() as u128;
    if f.p() == 2 {
        let k = f.degree() as usize * d;
        let mut t = a.rem(g, f);
        let mut acc = t.clone();
        for _ in 1..k {
            t = t.mul_mod(&t, g, f);
            acc = acc.add(&t, f);
        }
        return acc;
    }
    // a^{(q^d-1)/2} = (a · a^q · … · a^{q^{d-1}})^{(q-1)/2}
    let mut t = a.rem(g, f);
    let mut norm = t.clone();
    for _ in 1..d {
        t = t.pow_mod(q, g, f);
        norm = norm.mul_mod(&t, g, f);
    }
    norm.pow_mod((q - 1) / 2, g, f).sub(&Poly::one(f), f)
}

/// Distinct roots of `g` in the field, sorted.
pub fn roots(g: &Poly, f: &GaloisField) -> Vec<Fe> {
    if g.is_zero() {
        return f.elements().collect();
    }
    if g.is_constant() {
        return vec![];
    }
    let m = g.monic(f);
    let x = Poly::x(f);
    let split = x.pow_mod(f.size() as u128, &m, f).sub(&x, f).gcd(&m, f);
    if split.is_constant() {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<Fe> = equal_degree(&split, 1, f, &mut rng)
        .into_iter()
        .map(|l| f.neg(&l.coeffs()[0]))
        .collect();
    out.sort();
    out
}

/// Roots with multiplicity.
pub fn roots_with_multiplicity(g: &Poly, f: &GaloisField) -> Vec<(Fe, usize)> {
    roots(g, f)
        .into_iter()
        .map(|r| (r, g.order_at(&r, f).unwrap_or(0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn p(c: &[u32], f: &GaloisField) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Fe(x)).collect(), f)
    }

    #[test]
    fn x4_minus_1_over_gf3() {
        let f = GaloisField::get(3, 1).unwrap();
        let g = p(&[2, 0, 0, 0, 1], &f);
        let fac = factor(&g, &f).unwrap();
        // oracle: x^2+1 has no root among {0,1,2}
        assert!((0..3).all(|a| (a * a + 1) % 3 != 0));
        assert_eq!(
            fac.factors,
            vec![(p(&[1, 1], &f), 1), (p(&[2, 1], &f), 1), (p(&[1, 0, 1], &f), 1)]
        );
        assert_eq!(fac.expand(&f), g);
    }

    #[test]
    fn square_of_x() {
        let f = GaloisField::get(5, 1).unwrap();
        let fac = factor(&p(&[0, 0, 1], &f), &f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[0, 1], &f), 2)]);
    }

    #[test]
    fn x8_minus_1_splits_over_gf9() {
        let f = GaloisField::get(3, 2).unwrap();
        let mut c = vec![0u32; 9];
        c[0] = 2;
        c[8] = 1;
        let fac = factor(&p(&c, &f), &f).unwrap();
        assert_eq!(fac.factors.len(), 8);
        assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        assert_eq!(roots(&p(&c, &f), &f).len(), 8);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f = GaloisField::get(3, 1).unwrap();
        assert!(factor(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn inseparable_powers() {
        let f = GaloisField::get(3, 2).unwrap();
        // (x^2 + g)^3 (x + 1)^4
        let a = p(&[3, 0, 1], &f).pow(3, &f).mul(&p(&[1, 1], &f).pow(4, &f), &f);
        let fac = factor(&a, &f).unwrap();
        assert_eq!(fac.expand(&f), a);
        let mults: Vec<u32> = fac.factors.iter().map(|x| x.1).collect();
        assert!(mults.contains(&4));
    }

    #[test]
    fn random_products_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(pr, n) in &[(2u32, 3u32), (3, 1), (5, 1), (7, 2), (3, 2)] {
            let f = GaloisField::get(pr, n).unwrap();
            for _ in 0..40 {
                let deg = rng.gen_range(1..=12);
                let mut c: Vec<Fe> = (0..deg).map(|_| f.random(&mut rng)).collect();
                c.push(Fe(rng.gen_range(1..f.size())));
                let g = Poly::from_coeffs(c, &*f);
                let fac = factor(&g, &f).unwrap();
                assert_eq!(fac.expand(&f), g);
                for (h, _) in &fac.factors {
                    assert_eq!(h.lc(), Some(&Fe(1)));
                    // irreducible: no factor of smaller degree via DDF
                    let dd = distinct_degree(h, &f);
                    assert_eq!(dd.len(), 1);
                    assert_eq!(dd[0].1, h.degree().unwrap());
                }
            }
        }
    }
}
