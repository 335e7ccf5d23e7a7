use std::sync::Arc;

use super::point::common_field;
use super::ProjLine;
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField};
use crate::poly::factor::Poly;
use crate::text;

/// Binary form of degree `d` in `s, t`; `coeffs[k]` multiplies `s^(d-k) t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    field: Arc<GaloisField>,
    degree: u32,
    coeffs: Vec<Fe>,
}

impl BinaryForm {
    pub fn new(field: &Arc<GaloisField>, degree: u32, coeffs: Vec<Fe>) -> Result<Self> {
        if coeffs.len() != degree as usize + 1 {
            return Err(Error::invalid("binary form needs degree + 1 coefficients"));
        }
        Ok(BinaryForm {
            field: field.clone(),
            degree,
            coeffs,
        })
    }

    /// Parse a homogeneous polynomial in `s, t` of the given degree.
    pub fn parse(src: &str, degree: u32, field: &Arc<GaloisField>) -> Result<Self> {
        let terms = text::parse_poly(src, &['s', 't'], field)?;
        let mut coeffs = vec![Fe(0); degree as usize + 1];
        for (e, c) in terms {
            if e[0] + e[1] != degree {
                return Err(Error::invalid(format!(
                    "term s^{} t^{} is not of degree {degree}",
                    e[0], e[1]
                )));
            }
            coeffs[e[1] as usize] = c;
        }
        Ok(BinaryForm {
            field: field.clone(),
            degree,
            coeffs,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.0 == 0)
    }

    /// `B(s, 1)` as a polynomial in `s`.
    pub fn at_t_one(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().rev().copied().collect(), &*self.field)
    }

    /// `B(1, t)` as a polynomial in `t`.
    pub fn at_s_one(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone(), &*self.field)
    }

    pub fn to_field(&self, big: &Arc<GaloisField>) -> Result<Self> {
        let e = embedding(&self.field, big)?;
        Ok(BinaryForm {
            field: big.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| e.apply(*c)).collect(),
        })
    }

    /// Order of vanishing at `(a : b)`.
    pub fn order_at(&self, pt: &[Fe; 2]) -> Option<usize> {
        let f = &*self.field;
        if pt[1].0 != 0 {
            self.at_t_one().order_at(&f.div(&pt[0], &pt[1]), f)
        } else {
            self.at_s_one().order_at(&Fe(0), f)
        }
    }
}

/// A rational plane curve `(s : t) ↦ (φ₀ : φ₁ : φ₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    phi: [BinaryForm; 3],
}

impl Parametrization {
    /// Requires a common degree and field, no common factor, and an image
    /// spanning the plane.
    pub fn new(phi: [BinaryForm; 3]) -> Result<Self> {
        let d = phi[0].degree;
        if phi.iter().any(|b| b.degree != d || *b.field != *phi[0].field) {
            return Err(Error::invalid("components must share degree and field"));
        }
        let f = &*phi[0].field;
        // common factor: gcd of dehomogenized forms, plus a shared zero at (1:0)
        let g = phi.iter().fold(Poly::zero(), |acc, b| acc.gcd(&b.at_t_one(), f));
        if !g.is_constant() || phi.iter().all(|b| b.coeffs[0].0 == 0) {
            return Err(Error::invalid("components have a common factor"));
        }
        if rank(&phi, f) < 3 {
            return Err(Error::invalid("image lies in a line"));
        }
        Ok(Parametrization { phi })
    }

    pub fn parse(srcs: [&str; 3], degree: u32, field: &Arc<GaloisField>) -> Result<Self> {
        let phi = [
            BinaryForm::parse(srcs[0], degree, field)?,
            BinaryForm::parse(srcs[1], degree, field)?,
            BinaryForm::parse(srcs[2], degree, field)?,
        ];
        Self::new(phi)
    }

    pub fn components(&self) -> &[BinaryForm; 3] {
        &self.phi
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.phi[0].field
    }

    pub fn degree(&self) -> u32 {
        self.phi[0].degree
    }

    /// The pulled-back form `h(φ₀, φ₁, φ₂)`.
    pub fn pullback(&self, h: &ProjLine) -> Result<BinaryForm> {
        let k = common_field(self.field(), h.field())?;
        let h = h.to_field(&k)?;
        let phi: Vec<BinaryForm> = self.phi.iter().map(|b| b.to_field(&k)).collect::<Result<_>>()?;
        let mut coeffs = vec![Fe(0); self.degree() as usize + 1];
        for (i, b) in phi.iter().enumerate() {
            for (j, c) in b.coeffs.iter().enumerate() {
                coeffs[j] = k.add(&coeffs[j], &k.mul(&h.coords()[i], c));
            }
        }
        BinaryForm::new(&k, self.degree(), coeffs)
    }

    /// `ord_{t0} r*h`: the branch's intersection multiplicity with `h`.
    pub fn pullback_order(&self, h: &ProjLine, t0: &[Fe; 2], t0_field: &Arc<GaloisField>) -> Result<usize> {
        let pb = self.pullback(h)?;
        if pb.is_zero() {
            return Err(Error::LineContainsImage);
        }
        let k = common_field(pb.field(), t0_field)?;
        let pb = pb.to_field(&k)?;
        let e = embedding(t0_field, &k)?;
        let t = [e.apply(t0[0]), e.apply(t0[1])];
        if t[0].0 == 0 && t[1].0 == 0 {
            return Err(Error::invalid("(0 : 0) is not a point of the line"));
        }
        Ok(pb.order_at(&t).expect("nonzero form"))
    }

    /// Genus of the image: always 0.
    pub fn genus(&self) -> u32 {
        0
    }
}

fn rank(phi: &[BinaryForm; 3], f: &GaloisField) -> usize {
    let mut rows: Vec<Vec<Fe>> = phi.iter().map(|b| b.coeffs.clone()).collect();
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c].0 != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]);
        for i in 0..rows.len() {
            if i != r && rows[i][c].0 != 0 {
                let m = f.mul(&rows[i][c], &inv);
                for j in 0..cols {
                    let v = f.mul(&m, &rows[r][j]);
                    rows[i][j] = f.sub(&rows[i][j], &v);
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_orders() {
        let f = GaloisField::get(3, 1).unwrap();
        let r = Parametrization::parse(["s^4", "s*t^3", "t^4"], 4, &f).unwrap();
        let z = ProjLine::new(&f, [Fe(0), Fe(0), Fe(1)]).unwrap();
        let y = ProjLine::new(&f, [Fe(0), Fe(1), Fe(0)]).unwrap();
        assert_eq!(r.pullback_order(&z, &[Fe(1), Fe(0)], &f).unwrap(), 4);
        assert_eq!(r.pullback_order(&y, &[Fe(0), Fe(1)], &f).unwrap(), 1);
        // r(1:1) = (1:1:1) is not on Z = 0
        assert_eq!(r.pullback_order(&z, &[Fe(1), Fe(1)], &f).unwrap(), 0);
        assert_eq!(r.genus(), 0);
    }

    #[test]
    fn degenerate_inputs() {
        let f = GaloisField::get(5, 1).unwrap();
        assert!(Parametrization::parse(["s^2", "s*t", "s^2+s*t"], 2, &f).is_err());
        assert!(Parametrization::parse(["s^2", "s*t", "s*t"], 2, &f).is_err());
        let r = Parametrization::parse(["s^2", "s*t", "t^2"], 2, &f).unwrap();
        // the conic X Z = Y^2 is not in any line, but a tangent meets it twice
        let l = ProjLine::new(&f, [Fe(1), Fe(0), Fe(0)]).unwrap();
        assert_eq!(r.pullback_order(&l, &[Fe(0), Fe(1)], &f).unwrap(), 2);
    }
}
