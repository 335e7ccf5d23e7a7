use super::{BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::field::Field;

/// Determinant of a square matrix over `K[x]` by fraction-free (Bareiss)
/// elimination.
pub fn det_poly<F: Field>(mut m: Vec<Vec<UniPoly<F::Elem>>>, f: &F) -> UniPoly<F::Elem> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(f);
    }
    let mut negate = false;
    let mut prev = UniPoly::one(f);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k], f).sub(&m[i][k].mul(&m[k][j], f), f);
                m[i][j] = num.div_exact(&prev, f).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg(f)
    } else {
        d
    }
}

/// Sylvester matrix of `f` and `g` in `Y`, `f`-rows first, coefficients in
/// descending powers of `Y`.
pub fn sylvester_matrix<F: Field>(a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> Vec<Vec<UniPoly<F::Elem>>> {
    let m = a.deg_y().unwrap_or(0);
    let n = b.deg_y().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for k in 0..=m {
            row[i + k] = a.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        for k in 0..=n {
            row[i + k] = b.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

/// `Res_Y(a, b)` as the Sylvester determinant.
pub fn resultant_y<F: Field>(a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>, f: &F) -> Result<UniPoly<F::Elem>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::invalid("resultant of two zero polynomials"));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(UniPoly::zero());
    }
    let m = a.deg_y().unwrap();
    let n = b.deg_y().unwrap();
    if m == 0 {
        return Ok(a.coeff(0).pow(n as u64, f));
    }
    if n == 0 {
        return Ok(b.coeff(0).pow(m as u64, f));
    }
    Ok(det_poly(sylvester_matrix::<F>(a, b), f))
}

/// Resultant of two univariate polynomials over the field.
pub fn resultant_uni<F: Field>(a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>, f: &F) -> Result<F::Elem> {
    let r = resultant_y(&BiPoly::from_y(a, f), &BiPoly::from_y(b, f), f)?;
    Ok(r.coeff(0, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, GaloisField};

    #[test]
    fn documented_examples() {
        let f = GaloisField::get(7, 1).unwrap();
        let f = &*f;
        // Res_y(y - x, y - x) = 0
        let a = BiPoly::from_terms(&[(0, 1, Fe(1)), (1, 0, Fe(6))], f);
        assert!(resultant_y(&a, &a, f).unwrap().is_zero());
        // Res_y(y^2 - x, y): 3x3 Sylvester [[1,0,-x],[1,0,0],[0,1,0]] has det -x
        let b = BiPoly::from_terms(&[(0, 2, Fe(1)), (1, 0, Fe(6))], f);
        let y = BiPoly::from_terms(&[(0, 1, Fe(1))], f);
        let r = resultant_y(&b, &y, f).unwrap();
        assert_eq!(r, UniPoly::from_coeffs(vec![Fe(0), Fe(6)], f));
        // Res_y(1, g) = 1
        let one = BiPoly::from_terms(&[(0, 0, Fe(1))], f);
        assert_eq!(resultant_y(&one, &b, f).unwrap(), UniPoly::one(f));
        assert!(resultant_y(&BiPoly::zero(), &BiPoly::zero(), f).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_3x3() {
        let f = GaloisField::get(5, 1).unwrap();
        let f = &*f;
        let e = |c: &[u32]| UniPoly::from_coeffs(c.iter().map(|&x| Fe(x)).collect(), f);
        let m = vec![
            vec![e(&[0]), e(&[1, 1]), e(&[2])],
            vec![e(&[3, 0, 1]), e(&[4]), e(&[0, 2])],
            vec![e(&[1]), e(&[0, 0, 1]), e(&[1, 1])],
        ];
        let cof = |a: &UniPoly<Fe>, b: &UniPoly<Fe>, c: &UniPoly<Fe>, d: &UniPoly<Fe>| a.mul(d, f).sub(&b.mul(c, f), f);
        let expect = m[0][0]
            .mul(&cof(&m[1][1], &m[1][2], &m[2][1], &m[2][2]), f)
            .sub(&m[0][1].mul(&cof(&m[1][0], &m[1][2], &m[2][0], &m[2][2]), f), f)
            .add(&m[0][2].mul(&cof(&m[1][0], &m[1][1], &m[2][0], &m[2][1]), f), f);
        assert_eq!(det_poly(m, f), expect);
    }
}
