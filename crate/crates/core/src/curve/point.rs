use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField};

pub type Vec3 = [Fe; 3];

pub fn dot(f: &GaloisField, a: &Vec3, b: &Vec3) -> Fe {
    let mut acc = Fe(0);
    for i in 0..3 {
        acc = f.add(&acc, &f.mul(&a[i], &b[i]));
    }
    acc
}

pub fn cross(f: &GaloisField, a: &Vec3, b: &Vec3) -> Vec3 {
    let m = |x: Fe, y: Fe| f.mul(&x, &y);
    [
        f.sub(&m(a[1], b[2]), &m(a[2], b[1])),
        f.sub(&m(a[2], b[0]), &m(a[0], b[2])),
        f.sub(&m(a[0], b[1]), &m(a[1], b[0])),
    ]
}

/// Scale so the first nonzero entry is one; `None` for the zero vector.
pub fn normalize(f: &GaloisField, v: &Vec3) -> Option<Vec3> {
    let lead = v.iter().find(|x| x.0 != 0)?;
    let li = f.inv(lead);
    Some([f.mul(&v[0], &li), f.mul(&v[1], &li), f.mul(&v[2], &li)])
}

pub fn is_zero3(v: &Vec3) -> bool {
    v.iter().all(|x| x.0 == 0)
}

/// Degree over `GF(p)` of the smallest subfield of `f` containing all entries.
pub fn coords_degree(f: &GaloisField, v: &[Fe]) -> u32 {
    v.iter().fold(1, |acc, &x| lcm(acc, f.element_degree(x)))
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

macro_rules! projective_triple {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A ", $what, " of P² with normalized homogeneous coordinates over a finite field.")]
        #[derive(Clone)]
        pub struct $name {
            field: Arc<GaloisField>,
            c: Vec3,
        }

        impl $name {
            pub fn new(field: &Arc<GaloisField>, c: Vec3) -> Result<Self> {
                let c = normalize(field, &c)
                    .ok_or_else(|| Error::invalid(concat!("a ", $what, " needs a nonzero coordinate")))?;
                Ok($name {
                    field: field.clone(),
                    c,
                })
            }

            pub fn field(&self) -> &Arc<GaloisField> {
                &self.field
            }

            pub fn coords(&self) -> &Vec3 {
                &self.c
            }

            /// Same object over a larger field.
            pub fn to_field(&self, big: &Arc<GaloisField>) -> Result<Self> {
                if big.degree() == self.field.degree() {
                    return Ok(self.clone());
                }
                let e = embedding(&self.field, big)?;
                Ok($name {
                    field: big.clone(),
                    c: self.c.map(|x| e.apply(x)),
                })
            }

            /// Extension degree over `GF(p)` of the field of definition.
            pub fn definition_degree(&self) -> u32 {
                coords_degree(&self.field, &self.c)
            }

            /// Rewrite over the smallest field `GF(p^k)` with `base_degree | k`
            /// containing the coordinates.
            pub fn descend(&self, base_degree: u32) -> Result<Self> {
                let k = lcm(self.definition_degree(), base_degree);
                if k == self.field.degree() {
                    return Ok(self.clone());
                }
                let small = GaloisField::get(self.field.p(), k)?;
                let e = embedding(&small, &self.field)?;
                let mut c = [Fe(0); 3];
                for i in 0..3 {
                    c[i] = e
                        .preimage(self.c[i])
                        .ok_or_else(|| Error::consistency("coordinate outside its field of definition"))?;
                }
                Ok($name { field: small, c })
            }

            /// Canonical text form `x,y,z`.
            pub fn to_text(&self) -> String {
                self.c
                    .iter()
                    .map(|&x| self.field.fmt_elem(x))
                    .collect::<Vec<_>>()
                    .join(",")
            }
        }

        impl PartialEq for $name {
            fn eq(&self, o: &Self) -> bool {
                self.field.p() == o.field.p() && self.field.degree() == o.field.degree() && self.c == o.c
            }
        }
        impl Eq for $name {}

        impl Hash for $name {
            fn hash<H: Hasher>(&self, h: &mut H) {
                self.field.p().hash(h);
                self.field.degree().hash(h);
                self.c.hash(h);
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }

        /// Field degree first, then lexicographic on coordinates.
        impl Ord for $name {
            fn cmp(&self, o: &Self) -> Ordering {
                self.field
                    .degree()
                    .cmp(&o.field.degree())
                    .then_with(|| self.c.cmp(&o.c))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}) over {:?}", self.to_text().replace(',', ":"), self.field)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({})", self.to_text().replace(',', ":"))
            }
        }
    };
}

projective_triple!(ProjPoint, "point");
projective_triple!(ProjLine, "line");

impl ProjPoint {
    pub fn lies_on(&self, l: &ProjLine) -> bool {
        dot(&self.field, &self.c, l.coords()).0 == 0
    }

    /// The line through two distinct points over a common field.
    pub fn join(&self, o: &ProjPoint) -> Result<ProjLine> {
        ProjLine::new(&self.field, cross(&self.field, &self.c, &o.c)).map_err(|_| Error::invalid("points coincide"))
    }
}

impl ProjLine {
    pub fn meet(&self, o: &ProjLine) -> Result<ProjPoint> {
        ProjPoint::new(&self.field, cross(&self.field, &self.c, &o.c)).map_err(|_| Error::invalid("lines coincide"))
    }

    /// Two distinct points spanning the line; the first is `avoid`-free when
    /// possible.
    pub fn two_points(&self) -> (Vec3, Vec3) {
        let f = &self.field;
        let basis = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]];
        let mut pts: Vec<Vec3> = Vec::new();
        for e in &basis {
            let v = cross(f, &self.c, e);
            if is_zero3(&v) {
                continue;
            }
            let v = normalize(f, &v).unwrap();
            if pts.iter().all(|w| *w != v) {
                pts.push(v);
            }
            if pts.len() == 2 {
                break;
            }
        }
        (pts[0], pts[1])
    }
}

/// Bring two points to a common field (the smaller one is embedded).
pub fn common_field(a: &Arc<GaloisField>, b: &Arc<GaloisField>) -> Result<Arc<GaloisField>> {
    if a.p() != b.p() {
        return Err(Error::invalid("fields of different characteristic"));
    }
    GaloisField::get(a.p(), lcm(a.degree(), b.degree()))
}

/// 3×3 matrices over a field, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mat3(pub [[Fe; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3([[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]])
    }

    pub fn from_columns(a: &Vec3, b: &Vec3, c: &Vec3) -> Self {
        Mat3([[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]])
    }

    pub fn apply(&self, f: &GaloisField, v: &Vec3) -> Vec3 {
        [dot(f, &self.0[0], v), dot(f, &self.0[1], v), dot(f, &self.0[2], v)]
    }

    /// Row vector times matrix: how line coordinates transform.
    pub fn apply_row(&self, f: &GaloisField, l: &Vec3) -> Vec3 {
        let t = self.transpose();
        t.apply(f, l)
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn mul(&self, f: &GaloisField, o: &Mat3) -> Mat3 {
        let t = o.transpose();
        let mut r = [[Fe(0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = dot(f, &self.0[i], &t.0[j]);
            }
        }
        Mat3(r)
    }

    pub fn det(&self, f: &GaloisField) -> Fe {
        let m = &self.0;
        let c = cross(f, &m[1], &m[2]);
        dot(f, &m[0], &c)
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<Mat3> {
        let d = self.det(f);
        if d.0 == 0 {
            return None;
        }
        let m = &self.0;
        // adjugate columns are cross products of rows
        let c0 = cross(f, &m[1], &m[2]);
        let c1 = cross(f, &m[2], &m[0]);
        let c2 = cross(f, &m[0], &m[1]);
        let di = f.inv(&d);
        let mut r = Mat3::from_columns(&c0, &c1, &c2);
        for row in r.0.iter_mut() {
            for x in row.iter_mut() {
                *x = f.mul(x, &di);
            }
        }
        Some(r)
    }

    /// Scale so the first nonzero entry (row-major) is one.
    pub fn normalized(&self, f: &GaloisField) -> Mat3 {
        let flat: Vec<Fe> = self.0.iter().flatten().copied().collect();
        let lead = flat.iter().find(|x| x.0 != 0).copied().unwrap_or(Fe(1));
        let li = f.inv(&lead);
        Mat3(self.0.map(|row| row.map(|x| f.mul(&x, &li))))
    }

    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Mat3 {
        Mat3(self.0.map(|row| row.map(&g)))
    }

    pub fn to_text(&self, f: &GaloisField) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|row| row.iter().map(|&x| f.fmt_elem(x)).collect())
            .collect()
    }
}
