//! Finite fields.
//!
//! [`GaloisField`] is the workhorse: a table-driven GF(p^n) whose elements are
//! plain `u32` indices. [`ResidueField`] builds `K[t]/(φ)` on top of any field
//! and is used where an extension is too large to tabulate but only needs a
//! handful of gcd computations.

mod embed;
mod gf;
mod residue;

pub use embed::{embed_element, embedding, Embedding};
pub use gf::{Fe, FieldElement, GaloisField, MAX_FIELD_SIZE};
pub use residue::ResidueField;

use std::fmt::Debug;
use std::hash::Hash;

/// Arithmetic context for a field. Elements are values; the context carries
/// whatever tables or moduli are needed to combine them.
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u32;
    /// `n` such that the field has `p^n` elements.
    fn prime_degree(&self) -> u32;
    /// Image of the integer `k` under the canonical map Z -> F.
    fn from_int(&self, k: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::Elem, mut k: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u128)
    }

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let mut b = a.clone();
        for _ in 1..self.prime_degree() {
            b = self.frobenius(&b);
        }
        b
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl<T: Field> Field for std::sync::Arc<T> {
    type Elem = T::Elem;

    #[inline]
    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    #[inline]
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
    #[inline]
    fn is_zero(&self, a: &Self::Elem) -> bool {
        (**self).is_zero(a)
    }
    #[inline]
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(a, b)
    }
    #[inline]
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (**self).neg(a)
    }
    #[inline]
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    #[inline]
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (**self).inv(a)
    }
    fn characteristic(&self) -> u32 {
        (**self).characteristic()
    }
    fn prime_degree(&self) -> u32 {
        (**self).prime_degree()
    }
    fn from_int(&self, k: i64) -> Self::Elem {
        (**self).from_int(k)
    }
    fn pow(&self, a: &Self::Elem, k: u128) -> Self::Elem {
        (**self).pow(a, k)
    }
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        (**self).frobenius(a)
    }
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        (**self).pth_root(a)
    }
}
