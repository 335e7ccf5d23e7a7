use super::UniPoly;
use crate::field::Field;

/// Polynomial in `Y` with coefficients in `K[x]`; index `j` holds the
/// coefficient of `Y^j`. Trimmed like [`UniPoly`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly<E> {
    c: Vec<UniPoly<E>>,
}

impl<E: Clone + PartialEq> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    pub fn from_coeffs(mut c: Vec<UniPoly<E>>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly { c }
    }

    /// Build from `(x_exp, y_exp, coeff)` triples; repeated monomials add up.
    pub fn from_terms<F: Field<Elem = E>>(terms: &[(usize, usize, E)], f: &F) -> Self {
        let ydeg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut c = vec![UniPoly::zero(); ydeg + 1];
        for (i, j, a) in terms {
            c[*j] = c[*j].add(&UniPoly::monomial(a.clone(), *i, f), f);
        }
        Self::from_coeffs(c)
    }

    /// A polynomial in `x` alone.
    pub fn from_x(p: UniPoly<E>) -> Self {
        Self::from_coeffs(vec![p])
    }

    /// A polynomial in `Y` alone with constant coefficients.
    pub fn from_y<F: Field<Elem = E>>(p: &UniPoly<E>, f: &F) -> Self {
        Self::from_coeffs(p.coeffs().iter().map(|a| UniPoly::constant(a.clone(), f)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.c.iter().filter_map(|p| p.degree()).max()
    }

    pub fn coeffs(&self) -> &[UniPoly<E>] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> UniPoly<E> {
        self.c.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn lc_y(&self) -> Option<&UniPoly<E>> {
        self.c.last()
    }

    pub fn term<F: Field<Elem = E>>(&self, i: usize, j: usize, f: &F) -> E {
        self.c.get(j).map(|p| p.coeff(i, f)).unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j).add(&o.coeff(j), f)).collect())
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        BiPoly {
            c: self.c.iter().map(|p| p.neg(f)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        self.add(&o.neg(f), f)
    }

    pub fn mul<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![UniPoly::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b, f), f);
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow<F: Field<Elem = E>>(&self, k: u32, f: &F) -> Self {
        let mut acc = Self::from_x(UniPoly::one(f));
        for _ in 0..k {
            acc = acc.mul(self, f);
        }
        acc
    }

    pub fn scale_x<F: Field<Elem = E>>(&self, p: &UniPoly<E>, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|a| a.mul(p, f)).collect())
    }

    pub fn scale<F: Field<Elem = E>>(&self, a: &E, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|p| p.scale(a, f)).collect())
    }

    pub fn map<F: Field<Elem = E>>(&self, g: impl Fn(&E) -> E + Copy, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|p| p.map(g, f)).collect())
    }

    /// Substitute `x = a`, leaving a polynomial in `Y`.
    pub fn eval_x<F: Field<Elem = E>>(&self, a: &E, f: &F) -> UniPoly<E> {
        UniPoly::from_coeffs(self.c.iter().map(|p| p.eval(a, f)).collect(), f)
    }

    /// Substitute `Y = b`, leaving a polynomial in `x`.
    pub fn eval_y<F: Field<Elem = E>>(&self, b: &E, f: &F) -> UniPoly<E> {
        self.c
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, p| acc.scale(b, f).add(p, f))
    }

    pub fn eval<F: Field<Elem = E>>(&self, a: &E, b: &E, f: &F) -> E {
        self.eval_x(a, f).eval(b, f)
    }

    /// Substitute `Y = q(x)`.
    pub fn eval_y_poly<F: Field<Elem = E>>(&self, q: &UniPoly<E>, f: &F) -> UniPoly<E> {
        self.c
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, p| acc.mul(q, f).add(p, f))
    }

    pub fn derivative_y<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&f.from_int(j as i64), f))
                .collect(),
        )
    }

    pub fn derivative_x<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|p| p.derivative(f)).collect())
    }

    /// Exchange the roles of `x` and `Y`.
    pub fn swap<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let dx = self.deg_x().map_or(0, |d| d + 1);
        let mut c = vec![vec![f.zero(); self.c.len()]; dx];
        for (j, p) in self.c.iter().enumerate() {
            for (i, a) in p.coeffs().iter().enumerate() {
                c[i][j] = a.clone();
            }
        }
        Self::from_coeffs(c.into_iter().map(|v| UniPoly::from_coeffs(v, f)).collect())
    }

    /// Taylor shift `x -> x + a` in every coefficient.
    pub fn shift_x<F: Field<Elem = E>>(&self, a: &E, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|p| p.shift(a, f)).collect())
    }

    /// Drop all terms with `x`-degree `>= k`.
    pub fn truncate_x<F: Field<Elem = E>>(&self, k: usize, f: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|p| p.truncate(k, f)).collect())
    }

    /// Monic gcd of the `Y`-coefficients.
    pub fn content<F: Field<Elem = E>>(&self, f: &F) -> UniPoly<E> {
        self.c.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p, f))
    }

    pub fn div_x<F: Field<Elem = E>>(&self, p: &UniPoly<E>, f: &F) -> Option<Self> {
        let c: Option<Vec<_>> = self.c.iter().map(|a| a.div_exact(p, f)).collect();
        c.map(Self::from_coeffs)
    }

    pub fn primitive_part<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content(f);
        self.div_x(&c, f).unwrap()
    }

    /// Leading coefficient of the leading `Y`-coefficient.
    pub fn lead<F: Field<Elem = E>>(&self, _f: &F) -> Option<E> {
        self.c.last().and_then(|p| p.lc().cloned())
    }

    /// Scale so that [`lead`](Self::lead) is one.
    pub fn normalize<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead(f) {
            None => Self::zero(),
            Some(l) => self.scale(&f.inv(&l), f),
        }
    }

    /// Exact quotient in `K[x][Y]`, `None` if `d` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Option<Self> {
        let dd = d.deg_y()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dl = d.c[dd].clone();
        let mut r = self.clone();
        let mut q = vec![UniPoly::zero(); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.deg_y() {
            if rd < dd {
                return None;
            }
            let t = r.c[rd].div_exact(&dl, f)?;
            let shift = rd - dd;
            let mut sub = vec![UniPoly::zero(); shift];
            sub.extend(d.c.iter().map(|a| a.mul(&t, f)));
            r = r.sub(&Self::from_coeffs(sub), f);
            q[shift] = t;
            if r.deg_y() == Some(rd) {
                return None;
            }
        }
        Some(Self::from_coeffs(q))
    }

    /// Pseudo-remainder: `lc(d)^k · self mod d` for suitable `k`.
    pub fn pseudo_rem<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Self {
        let dd = d.deg_y().expect("pseudo-division by zero");
        let dl = &d.c[dd];
        let mut r = self.clone();
        while let Some(rd) = r.deg_y() {
            if rd < dd {
                break;
            }
            let rl = r.c[rd].clone();
            let mut sub = vec![UniPoly::zero(); rd - dd];
            sub.extend(d.c.iter().map(|a| a.mul(&rl, f)));
            r = r.scale_x(dl, f).sub(&Self::from_coeffs(sub), f);
        }
        r
    }

    /// Gcd in `K[x][Y]`, normalized; primitive pseudo-remainder sequence.
    pub fn gcd<F: Field<Elem = E>>(&self, o: &Self, f: &F) -> Self {
        if self.is_zero() {
            return o.normalize(f);
        }
        if o.is_zero() {
            return self.normalize(f);
        }
        let c = self.content(f).gcd(&o.content(f), f);
        let (mut a, mut b) = (self.primitive_part(f), o.primitive_part(f));
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_y() == Some(0) {
                a = Self::from_x(UniPoly::one(f));
                break;
            }
            let r = a.pseudo_rem(&b, f);
            a = b;
            b = r.primitive_part(f);
        }
        a.primitive_part(f).scale_x(&c, f).normalize(f)
    }
}
