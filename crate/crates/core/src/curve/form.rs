use std::collections::BTreeMap;
use std::sync::Arc;

use super::point::{Mat3, Vec3};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField};
use crate::poly::{BiPoly, UniPoly};
use crate::text::{self, Terms};

pub type Exps = [u32; 3];

/// Homogeneous polynomial in `X, Y, Z` over a finite field.
#[derive(Clone)]
pub struct TernaryForm {
    field: Arc<GaloisField>,
    degree: u32,
    /// Nonzero terms in ascending exponent order.
    terms: Vec<(Exps, Fe)>,
}

impl std::fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} over {:?}", self.to_text(), self.field)
    }
}

impl PartialEq for TernaryForm {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.degree == o.degree && self.terms == o.terms
    }
}

pub const VARS: [char; 3] = ['X', 'Y', 'Z'];

impl TernaryForm {
    /// Build from terms; rejects the zero form and mixed degrees.
    pub fn new(field: &Arc<GaloisField>, terms: impl IntoIterator<Item = (Exps, Fe)>) -> Result<Self> {
        let mut map: BTreeMap<Exps, Fe> = BTreeMap::new();
        for (e, c) in terms {
            let v = field.add(map.get(&e).unwrap_or(&Fe(0)), &c);
            map.insert(e, v);
        }
        map.retain(|_, c| c.0 != 0);
        let mut degs = map.keys().map(|e| e.iter().sum::<u32>());
        let degree = degs
            .next()
            .ok_or_else(|| Error::invalid("the zero form defines no curve"))?;
        if degs.any(|d| d != degree) {
            return Err(Error::invalid("form is not homogeneous"));
        }
        Ok(TernaryForm {
            field: field.clone(),
            degree,
            terms: map.into_iter().collect(),
        })
    }

    pub fn parse(src: &str, field: &Arc<GaloisField>) -> Result<Self> {
        let t = text::parse_poly(src, &VARS, field)?;
        Self::new(field, t.into_iter().map(|(e, c)| ([e[0], e[1], e[2]], c)))
    }

    pub fn to_text(&self) -> String {
        let t: Terms = self.terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect();
        text::format_poly(&t, &VARS, &self.field)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Exps, Fe)] {
        &self.terms
    }

    pub fn coeff(&self, e: Exps) -> Fe {
        self.terms
            .binary_search_by(|t| t.0.cmp(&e))
            .map(|i| self.terms[i].1)
            .unwrap_or(Fe(0))
    }

    pub fn eval(&self, v: &Vec3) -> Fe {
        let f = &*self.field;
        let d = self.degree as usize;
        let mut pw = [[Fe(1); 16], [Fe(1); 16], [Fe(1); 16]];
        let big;
        let pws: [&[Fe]; 3] = if d < 16 {
            for i in 0..3 {
                for k in 1..=d {
                    pw[i][k] = f.mul(&pw[i][k - 1], &v[i]);
                }
            }
            [&pw[0][..], &pw[1][..], &pw[2][..]]
        } else {
            big = (0..3)
                .map(|i| {
                    let mut row = vec![Fe(1); d + 1];
                    for k in 1..=d {
                        row[k] = f.mul(&row[k - 1], &v[i]);
                    }
                    row
                })
                .collect::<Vec<_>>();
            [&big[0][..], &big[1][..], &big[2][..]]
        };
        let mut acc = Fe(0);
        for (e, c) in &self.terms {
            let m = f.mul(
                &f.mul(&pws[0][e[0] as usize], &pws[1][e[1] as usize]),
                &pws[2][e[2] as usize],
            );
            acc = f.add(&acc, &f.mul(c, &m));
        }
        acc
    }

    /// `∂F/∂X_i`. May be the zero polynomial, returned as `None`.
    pub fn partial(&self, i: usize) -> Option<TernaryForm> {
        let f = &*self.field;
        let terms: Vec<(Exps, Fe)> = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= 1;
                (e2, f.mul(c, &f.from_int(e[i] as i64)))
            })
            .filter(|(_, c)| c.0 != 0)
            .collect();
        if terms.is_empty() {
            return None;
        }
        Some(TernaryForm {
            field: self.field.clone(),
            degree: self.degree - 1,
            terms,
        })
    }

    /// Gradient at a point (zero forms evaluate to zero).
    pub fn gradient(&self, v: &Vec3) -> Vec3 {
        let mut g = [Fe(0); 3];
        for (i, gi) in g.iter_mut().enumerate() {
            if let Some(p) = self.partial(i) {
                *gi = p.eval(v);
            }
        }
        g
    }

    pub fn to_field(&self, big: &Arc<GaloisField>) -> Result<TernaryForm> {
        if big.degree() == self.field.degree() {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, big)?;
        Ok(TernaryForm {
            field: big.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(x, c)| (*x, e.apply(*c))).collect(),
        })
    }

    /// `self = λ·o` for some nonzero `λ` (same field).
    pub fn proportional_to(&self, o: &TernaryForm) -> bool {
        if self.terms.len() != o.terms.len() || self.terms.is_empty() {
            return false;
        }
        let f = &*self.field;
        let lam = f.div(&self.terms[0].1, &o.terms[0].1);
        self.terms
            .iter()
            .zip(&o.terms)
            .all(|((a, x), (b, y))| a == b && *x == f.mul(&lam, y))
    }

    /// `F(M·v)`: substitute `X_i -> Σ_j M[i][j] X_j`.
    pub fn compose(&self, m: &Mat3) -> TernaryForm {
        let f = &*self.field;
        let d = self.degree as usize;
        let lin: Vec<BTreeMap<Exps, Fe>> = (0..3)
            .map(|i| {
                let mut t = BTreeMap::new();
                for j in 0..3 {
                    if m.0[i][j].0 != 0 {
                        let mut e = [0; 3];
                        e[j] = 1;
                        t.insert(e, m.0[i][j]);
                    }
                }
                t
            })
            .collect();
        let mut powers: Vec<Vec<BTreeMap<Exps, Fe>>> = Vec::new();
        for l in &lin {
            let mut row = vec![BTreeMap::from([([0u32; 3], Fe(1))])];
            for k in 1..=d {
                let next = mul_terms(&row[k - 1], l, f);
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc: BTreeMap<Exps, Fe> = BTreeMap::new();
        for (e, c) in &self.terms {
            let prod = mul_terms(
                &mul_terms(&powers[0][e[0] as usize], &powers[1][e[1] as usize], f),
                &powers[2][e[2] as usize],
                f,
            );
            for (k, v) in prod {
                let s = f.add(acc.get(&k).unwrap_or(&Fe(0)), &f.mul(c, &v));
                acc.insert(k, s);
            }
        }
        acc.retain(|_, c| c.0 != 0);
        TernaryForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: acc.into_iter().collect(),
        }
    }

    /// `F(P + u·R)` as a polynomial in `u`.
    pub fn restrict(&self, p: &Vec3, r: &Vec3) -> UniPoly<Fe> {
        let f = &*self.field;
        let d = self.degree as usize;
        let mut powers: Vec<Vec<UniPoly<Fe>>> = Vec::new();
        for i in 0..3 {
            let lin = UniPoly::from_coeffs(vec![p[i], r[i]], f);
            let mut row = vec![UniPoly::one(f)];
            for k in 1..=d {
                row.push(row[k - 1].mul(&lin, f));
            }
            powers.push(row);
        }
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let m = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize], f)
                .mul(&powers[2][e[2] as usize], f);
            acc = acc.add(&m.scale(c, f), f);
        }
        acc
    }

    /// `F(x, Y, 1)` with `x` the inner variable.
    pub fn dehomogenize(&self) -> BiPoly<Fe> {
        let f = &*self.field;
        let t: Vec<(usize, usize, Fe)> = self
            .terms
            .iter()
            .map(|(e, c)| (e[0] as usize, e[1] as usize, *c))
            .collect();
        BiPoly::from_terms(&t, f)
    }

    /// Homogenize a polynomial `f(x, Y)` of total degree at most `d`.
    pub fn homogenize(b: &BiPoly<Fe>, d: u32, field: &Arc<GaloisField>) -> Result<TernaryForm> {
        let mut terms = Vec::new();
        for (j, c) in b.coeffs().iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                if a.0 != 0 {
                    let tot = (i + j) as u32;
                    if tot > d {
                        return Err(Error::invalid("degree exceeds homogenization degree"));
                    }
                    terms.push(([i as u32, j as u32, d - tot], *a));
                }
            }
        }
        TernaryForm::new(field, terms)
    }

    /// Whether every exponent is divisible by `p` (the form is a `p`-th power).
    pub fn is_pth_power(&self) -> bool {
        let p = self.field.p();
        self.terms.iter().all(|(e, _)| e.iter().all(|x| x % p == 0))
    }
}

fn mul_terms(a: &BTreeMap<Exps, Fe>, b: &BTreeMap<Exps, Fe>, f: &GaloisField) -> BTreeMap<Exps, Fe> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let v = f.add(out.get(&e).unwrap_or(&Fe(0)), &f.mul(ca, cb));
            out.insert(e, v);
        }
    }
    out.retain(|_, c: &mut Fe| c.0 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_eval_and_partials() {
        let f = GaloisField::get(3, 1).unwrap();
        let form = TernaryForm::parse("X^4+Y^4+Z^4", &f).unwrap();
        assert_eq!(form.degree(), 4);
        assert_eq!(form.eval(&[Fe(1), Fe(1), Fe(1)]), Fe(0));
        let fx = form.partial(0).unwrap();
        assert_eq!(fx.to_text(), "X^3");
        assert!(TernaryForm::parse("X^2+Y", &f).is_err());
        assert!(TernaryForm::parse("X^3-X^3", &f).is_err());
    }

    #[test]
    fn compose_agrees_with_pointwise_evaluation() {
        let f = GaloisField::get(5, 1).unwrap();
        let form = TernaryForm::parse("X^3 + 2*X*Y*Z + Y^2*Z + 3*Z^3", &f).unwrap();
        let m = Mat3([[Fe(1), Fe(2), Fe(0)], [Fe(0), Fe(3), Fe(1)], [Fe(4), Fe(0), Fe(1)]]);
        let g = form.compose(&m);
        for a in 0..5 {
            for b in 0..5 {
                let v = [Fe(a), Fe(b), Fe(1)];
                assert_eq!(g.eval(&v), form.eval(&m.apply(&f, &v)));
            }
        }
    }

    #[test]
    fn restriction_to_line() {
        let f = GaloisField::get(3, 1).unwrap();
        let form = TernaryForm::parse("Y*Z^3 - X^4", &f).unwrap();
        // (u : 0 : 1) -> -u^4
        let r = form.restrict(&[Fe(0), Fe(0), Fe(1)], &[Fe(1), Fe(0), Fe(0)]);
        assert_eq!(r.order_at(&Fe(0), &*f), Some(4));
        let b = form.dehomogenize();
        assert_eq!(TernaryForm::homogenize(&b, 4, &f).unwrap(), form);
    }
}
