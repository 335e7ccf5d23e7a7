use crate::field::Field;

/// Dense univariate polynomial, low degree first, never with a zero leading
/// coefficient. The zero polynomial is the empty vector; its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly<E> {
    c: Vec<E>,
}

impl<E: Clone + PartialEq> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(mut c: Vec<E>, f: &F) -> Self {
        while c.last().is_some_and(|x| f.is_zero(x)) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn constant<F: Field<Elem = E>>(a: E, f: &F) -> Self {
        Self::from_coeffs(vec![a], f)
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        UniPoly { c: vec![f.one()] }
    }

    /// The variable itself.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        UniPoly {
            c: vec![f.zero(), f.one()],
        }
    }

    pub fn monomial<F: Field<Elem = E>>(a: E, k: usize, f: &F) -> Self {
        if f.is_zero(&a) {
            return Self::zero();
        }
        let mut c = vec![f.zero(); k + 1];
        c[k] = a;
        UniPoly { c }
    }

    /// `x - a`
    pub fn linear_root<F: Field<Elem = E>>(a: &E, f: &F) -> Self {
        UniPoly {
            c: vec![f.neg(a), f.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, f: &F) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.c.len() == 1 && f.is_one(&self.c[0])
    }

    /// Lowest index with nonzero coefficient (`None` for zero).
    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> Option<usize> {
        self.c.iter().position(|x| !f.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        Self::from_coeffs(c, f)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UniPoly {
            c: self.c.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        self.add(&o.neg(f), f)
    }

    pub fn scale<F: Field<Elem = E>>(&self, a: &E, f: &F) -> Self {
        if f.is_zero(a) {
            return Self::zero();
        }
        UniPoly {
            c: self.c.iter().map(|x| f.mul(x, a)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(c, f)
    }

    pub fn pow<F: Field<Elem = E>>(&self, mut k: u64, f: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift_up<F: Field<Elem = E>>(&self, k: usize, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    /// Keep only terms of degree `< k`.
    pub fn truncate<F: Field<Elem = E>>(&self, k: usize, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().take(k).cloned().collect(), f)
    }

    pub fn div_rem<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = f.inv(d.lc().unwrap());
        let mut r = self.c.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if f.is_zero(&r[k]) {
                continue;
            }
            let t = f.mul(&r[k], &inv);
            for (j, dj) in d.c.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&t, dj));
            }
            q[k - dd] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q, f), Self::from_coeffs(r, f))
    }

    pub fn rem<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Self {
        self.div_rem(d, f).1
    }

    /// Quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Option<Self> {
        let (q, r) = self.div_rem(d, f);
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&f.inv(lc), f),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(&lc);
                (r0.scale(&inv, f), s0.scale(&inv, f), t0.scale(&inv, f))
            }
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_int(i as i64)))
            .collect();
        Self::from_coeffs(c, f)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, f: &F) -> E {
        self.c.iter().rev().fold(f.zero(), |acc, a| f.add(&f.mul(&acc, x), a))
    }

    /// `self(g(x))`
    pub fn compose<F: Field<Elem = E>>(&self, g: &Self, f: &F) -> Self {
        self.c.iter().rev().fold(Self::zero(), |acc, a| {
            acc.mul(g, f).add(&Self::constant(a.clone(), f), f)
        })
    }

    /// Taylor shift `self(x + a)`.
    pub fn shift<F: Field<Elem = E>>(&self, a: &E, f: &F) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&c[j + 1], a);
                c[j] = f.add(&c[j], &t);
            }
        }
        Self::from_coeffs(c, f)
    }

    pub fn map<F: Field<Elem = E>>(&self, g: impl Fn(&E) -> E, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(g).collect(), f)
    }

    pub fn mul_mod<F: Field<Elem = E>>(&self, o: &Self, m: &Self, f: &F) -> Self {
        self.mul(o, f).rem(m, f)
    }

    pub fn pow_mod<F: Field<Elem = E>>(&self, mut k: u128, m: &Self, f: &F) -> Self {
        let mut base = self.rem(m, f);
        let mut acc = Self::one(f).rem(m, f);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&base, m, f);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_mod(&base, m, f);
            }
        }
        acc
    }

    /// Order of vanishing at `x = a`; `None` means infinite (zero polynomial).
    pub fn order_at<F: Field<Elem = E>>(&self, a: &E, f: &F) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let s = self.shift(a, f);
        s.c.iter().position(|x| !f.is_zero(x))
    }

    /// Reverse the coefficient list with respect to formal degree `d`
    /// (`x^d · self(1/x)`).
    pub fn reverse<F: Field<Elem = E>>(&self, d: usize, f: &F) -> Self {
        let mut c = vec![f.zero(); d + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[d - i] = a.clone();
        }
        Self::from_coeffs(c, f)
    }

    /// Distinct roots over the algebraic closure: the degree of the radical.
    pub fn distinct_root_count<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.radical(f).degree().unwrap_or(0)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.is_constant() {
            return Self::one(f);
        }
        let m = self.monic(f);
        let d = m.derivative(f);
        if d.is_zero() {
            // m(x) = h(x^p)
            let p = f.characteristic() as usize;
            let h: Vec<E> = m.c.iter().step_by(p).map(|a| f.pth_root(a)).collect();
            return Self::from_coeffs(h, f).radical(f);
        }
        let g = m.gcd(&d, f);
        let w = m.div_exact(&g, f).unwrap();
        if g.is_constant() {
            return w;
        }
        let rg = g.radical(f);
        let common = w.gcd(&rg, f);
        w.mul(&rg.div_exact(&common, f).unwrap(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, GaloisField};

    fn p(c: &[u32], f: &GaloisField) -> UniPoly<Fe> {
        UniPoly::from_coeffs(c.iter().map(|&x| Fe(x)).collect(), f)
    }

    #[test]
    fn local_order_examples() {
        let f = GaloisField::get(5, 1).unwrap();
        // t^2 (t - 1) = t^3 - t^2
        let g = p(&[0, 0, 4, 1], &f);
        assert_eq!(g.order_at(&Fe(0), &*f), Some(2));
        assert_eq!(g.order_at(&Fe(1), &*f), Some(1));
        assert_eq!(g.order_at(&Fe(2), &*f), Some(0));
        assert_eq!(UniPoly::<Fe>::zero().order_at(&Fe(0), &*f), None);
    }

    #[test]
    fn div_rem_and_gcd() {
        let f = GaloisField::get(7, 1).unwrap();
        let a = p(&[1, 2, 3], &f);
        let b = p(&[5, 1], &f);
        let prod = a.mul(&b, &*f);
        assert_eq!(prod.div_exact(&b, &*f), Some(a.clone()));
        let g = prod.gcd(&a.mul(&p(&[1, 1], &f), &*f), &*f);
        assert_eq!(g, a.monic(&*f));
        let (g2, s, t) = a.ext_gcd(&b, &*f);
        assert_eq!(s.mul(&a, &*f).add(&t.mul(&b, &*f), &*f), g2);
    }

    #[test]
    fn taylor_shift_matches_compose() {
        let f = GaloisField::get(3, 2).unwrap();
        let a = p(&[1, 4, 0, 7, 2], &f);
        let s = Fe(5);
        let lin = p(&[5, 1], &f);
        assert_eq!(a.shift(&s, &*f), a.compose(&lin, &*f));
    }

    #[test]
    fn radical_in_char_p() {
        let f = GaloisField::get(3, 1).unwrap();
        // (x^3 - 1)^2 (x+1) = (x-1)^6 (x+1): radical (x-1)(x+1)
        let a = p(&[2, 0, 0, 1], &f).pow(2, &*f).mul(&p(&[1, 1], &f), &*f);
        assert_eq!(a.distinct_root_count(&*f), 2);
        assert_eq!(p(&[0, 0, 1], &f).distinct_root_count(&*f), 1);
    }
}
