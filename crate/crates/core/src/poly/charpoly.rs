use super::{BiPoly, UniPoly};
use crate::field::Field;

type Mat<E> = Vec<Vec<UniPoly<E>>>;

/// `det(Y·I - A)` for a square matrix over `K[x]`, computed division-free
/// (Berkowitz). The result is monic in `Y`.
pub fn charpoly<F: Field>(a: &Mat<F::Elem>, f: &F) -> BiPoly<F::Elem> {
    let n = a.len();
    // v holds coefficients from the highest power of Y down
    let mut v = vec![UniPoly::one(f)];
    for k in 1..=n {
        let diag = &a[k - 1][k - 1];
        // column [1, -a_kk, -R C, -R A C, ...] of the Toeplitz factor
        let mut col = Vec::with_capacity(k + 1);
        col.push(UniPoly::one(f));
        col.push(diag.neg(f));
        let mut w: Vec<UniPoly<F::Elem>> = (0..k - 1).map(|i| a[i][k - 1].clone()).collect();
        for _ in 0..k.saturating_sub(1) {
            let rw = (0..k - 1).fold(UniPoly::zero(), |acc, j| acc.add(&a[k - 1][j].mul(&w[j], f), f));
            col.push(rw.neg(f));
            w = (0..k - 1)
                .map(|i| (0..k - 1).fold(UniPoly::zero(), |acc, j| acc.add(&a[i][j].mul(&w[j], f), f)))
                .collect();
        }
        let mut next = vec![UniPoly::zero(); k + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && !vj.is_zero() {
                    *slot = slot.add(&col[i - j].mul(vj, f), f);
                }
            }
        }
        v = next;
    }
    v.reverse();
    BiPoly::from_coeffs(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, GaloisField};

    #[test]
    fn two_by_two_matches_trace_and_det() {
        let f = GaloisField::get(7, 1).unwrap();
        let f = &*f;
        let e = |c: &[u32]| UniPoly::from_coeffs(c.iter().map(|&x| Fe(x)).collect(), f);
        let (a, b, c, d) = (e(&[1, 2]), e(&[0, 1]), e(&[3]), e(&[5, 0, 1]));
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        let cp = charpoly(&m, f);
        assert_eq!(cp.coeff(2), UniPoly::one(f));
        assert_eq!(cp.coeff(1), a.add(&d, f).neg(f));
        assert_eq!(cp.coeff(0), a.mul(&d, f).sub(&b.mul(&c, f), f));
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // companion of Y^3 + 2Y + x over GF(5)[x]
        let f = GaloisField::get(5, 1).unwrap();
        let f = &*f;
        let k = |v: u32| UniPoly::constant(Fe(v), f);
        let z = UniPoly::zero;
        let xx = UniPoly::from_coeffs(vec![Fe(0), Fe(4)], f);
        let m = vec![vec![z(), z(), xx], vec![k(1), z(), k(3)], vec![z(), k(1), z()]];
        let cp = charpoly(&m, f);
        let expect = BiPoly::from_terms(&[(0, 3, Fe(1)), (0, 1, Fe(2)), (1, 0, Fe(1))], f);
        assert_eq!(cp, expect);
    }
}
