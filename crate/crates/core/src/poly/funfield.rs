//! Polynomials in `Y` over the rational function field `GF(q)(x)`.

use std::sync::Arc;

use super::bifactor::{factor_bivariate, BPoly};
use super::factor::Poly;
use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};

/// `num / den` with coprime parts and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly, f: &GaloisField) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        if num.is_zero() {
            return Ok(Self::zero(f));
        }
        let g = num.gcd(&den, f);
        let (n, d) = (num.div_exact(&g, f).unwrap(), den.div_exact(&g, f).unwrap());
        let l = f.inv(d.lc().unwrap());
        Ok(RatFunc {
            num: n.scale(&l, f),
            den: d.scale(&l, f),
        })
    }

    pub fn from_poly(p: Poly, f: &GaloisField) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(f),
        }
    }

    pub fn zero(f: &GaloisField) -> Self {
        Self::from_poly(Poly::zero(), f)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self, f: &GaloisField) -> Self {
        Self::new(self.num.mul(&o.num, f), self.den.mul(&o.den, f), f).unwrap()
    }

    pub fn add(&self, o: &Self, f: &GaloisField) -> Self {
        let n = self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f);
        Self::new(n, self.den.mul(&o.den, f), f).unwrap()
    }

    pub fn inv(&self, f: &GaloisField) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone(), f)
    }
}

/// `Σ c_j Y^j` with `c_j ∈ GF(q)(x)`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunFieldPoly {
    coeffs: Vec<RatFunc>,
}

impl FunFieldPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FunFieldPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// A polynomial in `K[x][Y]` with the same roots: denominators cleared.
    pub fn clear_denominators(&self, f: &GaloisField) -> BPoly {
        let l = self.coeffs.iter().fold(Poly::one(f), |acc, c| {
            let g = acc.gcd(c.den(), f);
            acc.mul(&c.den().div_exact(&g, f).unwrap(), f)
        });
        BPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| c.num().mul(&l.div_exact(c.den(), f).unwrap(), f))
                .collect(),
        )
    }

    pub fn from_bipoly(b: &BPoly, f: &GaloisField) -> Self {
        Self::new(b.coeffs().iter().map(|c| RatFunc::from_poly(c.clone(), f)).collect())
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, f: &GaloisField) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let li = l.inv(f).unwrap();
                Self::new(self.coeffs.iter().map(|c| c.mul(&li, f)).collect())
            }
        }
    }

    pub fn mul(&self, o: &Self, f: &GaloisField) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut c = vec![RatFunc::zero(f); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b, f), f);
            }
        }
        Self::new(c)
    }
}

/// Monic irreducible factors over `GF(q)(x)` with multiplicities.
pub fn function_field_factor(poly: &FunFieldPoly, f: &Arc<GaloisField>) -> Result<Vec<(FunFieldPoly, u32)>> {
    if poly.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let b = poly.clear_denominators(f);
    let fac = factor_bivariate(&b, f)?;
    Ok(fac
        .factors
        .into_iter()
        .filter(|(h, _)| h.deg_y().unwrap_or(0) > 0)
        .map(|(h, e)| (FunFieldPoly::from_bipoly(&h, f).monic(f), e))
        .collect())
}

/// Roots in `GF(q)(x)` of bounded height, by brute force over candidates
/// `n/d` with `deg n, deg d ≤ bound`. Used to re-verify irreducibility of
/// small factors independently of the factoring engine.
pub fn roots_of_bounded_height(poly: &FunFieldPoly, bound: usize, f: &GaloisField) -> Vec<RatFunc> {
    let q = f.size() as usize;
    let polys_upto = |deg: usize| -> Vec<Poly> {
        let count = q.pow(deg as u32 + 1);
        (0..count)
            .map(|mut k| {
                let mut c = Vec::new();
                for _ in 0..=deg {
                    c.push(Fe((k % q) as u32));
                    k /= q;
                }
                Poly::from_coeffs(c, f)
            })
            .collect()
    };
    let b = poly.clear_denominators(f);
    let nums = polys_upto(bound);
    let dens: Vec<Poly> = polys_upto(bound)
        .into_iter()
        .filter(|d| d.lc().is_some_and(|l| f.is_one(l)))
        .collect();
    let mut out = Vec::new();
    for d in &dens {
        for n in &nums {
            if !n.gcd(d, f).is_one(f) && !n.is_zero() {
                continue;
            }
            if n.is_zero() && !d.is_one(f) {
                continue;
            }
            // Σ b_j n^j d^{m-j} = 0
            let m = b.deg_y().unwrap_or(0);
            let mut acc = Poly::zero();
            for j in 0..=m {
                acc = acc.add(
                    &b.coeff(j).mul(&n.pow(j as u64, f), f).mul(&d.pow((m - j) as u64, f), f),
                    f,
                );
            }
            if acc.is_zero() {
                out.push(RatFunc::new(n.clone(), d.clone(), f).unwrap());
            }
        }
    }
    out
}
