use super::Field;
use crate::poly::UniPoly;

/// `K[t]/(φ)` for an irreducible `φ` over `K`. Elements are reduced
/// polynomials in `t`.
#[derive(Clone, Debug)]
pub struct ResidueField<F: Field> {
    base: F,
    modulus: UniPoly<F::Elem>,
    degree: usize,
}

impl<F: Field + Clone> ResidueField<F> {
    /// `modulus` must be irreducible over `base`; this is not re-checked.
    pub fn new(base: F, modulus: &UniPoly<F::Elem>) -> Self {
        let m = modulus.monic(&base);
        let degree = m.degree().expect("modulus must be nonzero");
        assert!(degree >= 1, "modulus must be nonconstant");
        ResidueField {
            base,
            modulus: m,
            degree,
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// Image of a base-field element.
    pub fn lift(&self, a: &F::Elem) -> UniPoly<F::Elem> {
        UniPoly::constant(a.clone(), &self.base)
    }

    /// The class of `t`, a root of the modulus.
    pub fn root(&self) -> UniPoly<F::Elem> {
        UniPoly::x(&self.base).rem(&self.modulus, &self.base)
    }

    pub fn extension_degree(&self) -> usize {
        self.degree
    }
}

impl<F: Field + Clone> Field for ResidueField<F> {
    type Elem = UniPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        UniPoly::zero()
    }

    fn one(&self) -> Self::Elem {
        UniPoly::one(&self.base)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.base)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul_mod(b, &self.modulus, &self.base)
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let (g, s, _) = a.ext_gcd(&self.modulus, &self.base);
        debug_assert!(g.is_one(&self.base), "modulus not irreducible");
        s.rem(&self.modulus, &self.base)
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    fn prime_degree(&self) -> u32 {
        self.base.prime_degree() * self.degree as u32
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        UniPoly::constant(self.base.from_int(k), &self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, GaloisField};
    use std::sync::Arc;

    #[test]
    fn residue_matches_table_field() {
        // GF(3)[t]/(t^2+1) should behave like GF(9)
        let f3 = GaloisField::get(3, 1).unwrap();
        let m = UniPoly::from_coeffs(vec![Fe(1), Fe(0), Fe(1)], &*f3);
        let r = ResidueField::new(f3.clone(), &m);
        let t = r.root();
        let t2 = r.mul(&t, &t);
        assert_eq!(t2, r.from_int(-1));
        let x = r.add(&t, &r.one());
        assert_eq!(r.mul(&x, &r.inv(&x)), r.one());
        // Frobenius has order 2 on GF(9)
        assert_eq!(r.frobenius(&r.frobenius(&x)), x);
        assert_ne!(r.frobenius(&x), x);
        assert_eq!(r.frobenius(&r.pth_root(&x)), x);
        let _ = Arc::clone(&f3);
    }
}
