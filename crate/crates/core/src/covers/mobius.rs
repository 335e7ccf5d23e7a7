use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::curve::{common_field, coords_degree};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField};
use crate::poly::factor::{self, Poly};
use crate::text;

/// A point of `P¹`: `Some(s)` for `(s : 1)`, `None` for `∞ = (1 : 0)`.
#[derive(Clone, Debug)]
pub struct P1Point {
    field: Arc<GaloisField>,
    value: Option<Fe>,
}

impl P1Point {
    pub fn finite(field: &Arc<GaloisField>, s: Fe) -> Self {
        P1Point {
            field: field.clone(),
            value: Some(s),
        }
    }

    pub fn infinity(field: &Arc<GaloisField>) -> Self {
        P1Point {
            field: field.clone(),
            value: None,
        }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn value(&self) -> Option<Fe> {
        self.value
    }

    pub fn is_infinity(&self) -> bool {
        self.value.is_none()
    }

    fn coords(&self) -> [Fe; 2] {
        match self.value {
            Some(s) => [s, Fe(1)],
            None => [Fe(1), Fe(0)],
        }
    }

    fn from_coords(field: &Arc<GaloisField>, v: [Fe; 2]) -> Result<Self> {
        match (v[0].0, v[1].0) {
            (0, 0) => Err(Error::invalid("(0 : 0) is not a point")),
            (_, 0) => Ok(Self::infinity(field)),
            _ => Ok(Self::finite(field, field.div(&v[0], &v[1]))),
        }
    }

    pub fn to_field(&self, big: &Arc<GaloisField>) -> Result<Self> {
        if big.degree() == self.field.degree() {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, big)?;
        Ok(P1Point {
            field: big.clone(),
            value: self.value.map(|s| e.apply(s)),
        })
    }

    pub fn to_text(&self) -> String {
        match self.value {
            Some(s) => self.field.fmt_elem(s),
            None => "inf".into(),
        }
    }
}

impl PartialEq for P1Point {
    fn eq(&self, o: &Self) -> bool {
        self.field.p() == o.field.p() && self.field.degree() == o.field.degree() && self.value == o.value
    }
}

impl Eq for P1Point {}

impl PartialOrd for P1Point {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Field degree, then finite values ascending, then `∞`.
impl Ord for P1Point {
    fn cmp(&self, o: &Self) -> Ordering {
        self.field
            .degree()
            .cmp(&o.field.degree())
            .then(self.value.is_none().cmp(&o.value.is_none()))
            .then(self.value.cmp(&o.value))
    }
}

/// `s ↦ (a s + b)/(c s + e)` with matrix `[[a, b], [c, e]]`, normalized so
/// the first nonzero entry is one.
#[derive(Clone, Debug)]
pub struct Mobius {
    field: Arc<GaloisField>,
    m: [[Fe; 2]; 2],
}

impl PartialEq for Mobius {
    fn eq(&self, o: &Self) -> bool {
        self.field.degree() == o.field.degree() && self.m == o.m
    }
}

impl Eq for Mobius {}

impl PartialOrd for Mobius {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Mobius {
    fn cmp(&self, o: &Self) -> Ordering {
        self.field.degree().cmp(&o.field.degree()).then(self.m.cmp(&o.m))
    }
}

impl Mobius {
    pub fn new(field: &Arc<GaloisField>, m: [[Fe; 2]; 2]) -> Result<Self> {
        let k = &**field;
        let det = k.sub(&k.mul(&m[0][0], &m[1][1]), &k.mul(&m[0][1], &m[1][0]));
        if det.0 == 0 {
            return Err(Error::invalid("singular Möbius matrix"));
        }
        let lead = m.iter().flatten().find(|x| x.0 != 0).copied().unwrap();
        let li = k.inv(&lead);
        Ok(Mobius {
            field: field.clone(),
            m: m.map(|r| r.map(|x| k.mul(&x, &li))),
        })
    }

    pub fn identity(field: &Arc<GaloisField>) -> Self {
        Mobius {
            field: field.clone(),
            m: [[Fe(1), Fe(0)], [Fe(0), Fe(1)]],
        }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn matrix(&self) -> [[Fe; 2]; 2] {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == [[Fe(1), Fe(0)], [Fe(0), Fe(1)]]
    }

    /// The transformation sending `0, 1, ∞` to three distinct points.
    pub fn from_images(k: &Arc<GaloisField>, img: [&P1Point; 3]) -> Result<Self> {
        let [a, b, c] = img.map(|p| p.to_field(k).map(|p| p.coords()));
        let (a, b, c) = (a?, b?, c?);
        // solve λ·a + μ·c = b
        let det = k.sub(&k.mul(&a[0], &c[1]), &k.mul(&c[0], &a[1]));
        if det.0 == 0 {
            return Err(Error::invalid("image points are not distinct"));
        }
        let lam = k.div(&k.sub(&k.mul(&b[0], &c[1]), &k.mul(&c[0], &b[1])), &det);
        let mu = k.div(&k.sub(&k.mul(&a[0], &b[1]), &k.mul(&b[0], &a[1])), &det);
        Self::new(
            k,
            [
                [k.mul(&mu, &c[0]), k.mul(&lam, &a[0])],
                [k.mul(&mu, &c[1]), k.mul(&lam, &a[1])],
            ],
        )
    }

    pub fn apply(&self, pt: &P1Point) -> Result<P1Point> {
        let k = common_field(&self.field, pt.field())?;
        let m = self.to_field(&k)?.m;
        let v = pt.to_field(&k)?.coords();
        let w = [0, 1].map(|i| k.add(&k.mul(&m[i][0], &v[0]), &k.mul(&m[i][1], &v[1])));
        P1Point::from_coords(&k, w)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Mobius) -> Result<Mobius> {
        let k = common_field(&self.field, &o.field)?;
        let (a, b) = (self.to_field(&k)?.m, o.to_field(&k)?.m);
        let mut r = [[Fe(0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = k.add(&k.mul(&a[i][0], &b[0][j]), &k.mul(&a[i][1], &b[1][j]));
            }
        }
        Mobius::new(&k, r)
    }

    pub fn inverse(&self) -> Mobius {
        let k = &*self.field;
        let m = self.m;
        Mobius::new(&self.field, [[m[1][1], k.neg(&m[0][1])], [k.neg(&m[1][0]), m[0][0]]]).expect("invertible")
    }

    pub fn to_field(&self, big: &Arc<GaloisField>) -> Result<Self> {
        if big.degree() == self.field.degree() {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, big)?;
        Ok(Mobius {
            field: big.clone(),
            m: self.m.map(|r| r.map(|x| e.apply(x))),
        })
    }

    /// Rewrite over the smallest field containing the entries and `GF(p^base)`.
    pub fn descend(&self, base: u32) -> Result<Self> {
        let flat: Vec<Fe> = self.m.iter().flatten().copied().collect();
        let d = coords_degree(&self.field, &flat);
        let (mut x, mut y) = (d, base);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        let n = d / x * base;
        if n == self.field.degree() {
            return Ok(self.clone());
        }
        let small = GaloisField::get(self.field.p(), n)?;
        let e = embedding(&small, &self.field)?;
        let mut m = [[Fe(0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = e
                    .preimage(self.m[i][j])
                    .ok_or_else(|| Error::consistency("entry outside its field"))?;
            }
        }
        Ok(Mobius { field: small, m })
    }

    /// `θ∘σ = θ` for `θ = N/D` of degree `deg`, as an identity of binary forms.
    pub fn preserves(&self, n: &Poly, d: &Poly, deg: usize) -> bool {
        let k = &*self.field;
        let [[a, b], [c, e]] = self.m;
        let top = Poly::from_coeffs(vec![b, a], k);
        let bot = Poly::from_coeffs(vec![e, c], k);
        let subst = |p: &Poly| {
            (0..=deg).fold(Poly::zero(), |acc, i| {
                let term = top
                    .pow(i as u64, k)
                    .mul(&bot.pow((deg - i) as u64, k), k)
                    .scale(&p.coeff(i, k), k);
                acc.add(&term, k)
            })
        };
        subst(n).mul(d, k).sub(&subst(d).mul(n, k), k).is_zero()
    }

    /// Fixed points over at most a quadratic extension. The identity is
    /// rejected.
    pub fn fixed_points(&self) -> Result<Vec<P1Point>> {
        if self.is_identity() {
            return Err(Error::invalid("every point is fixed by the identity"));
        }
        let k = &self.field;
        let [[a, b], [c, e]] = self.m;
        let mut out = Vec::new();
        if c.0 == 0 {
            out.push(P1Point::infinity(k));
        }
        // c s² + (e - a) s - b
        let q = Poly::from_coeffs(vec![k.neg(&b), k.sub(&e, &a), c], &**k);
        if !q.is_constant() {
            let mut roots: Vec<P1Point> = factor::roots(&q, k)
                .into_iter()
                .map(|r| P1Point::finite(k, r))
                .collect();
            if roots.is_empty() {
                let big = GaloisField::get(k.p(), k.degree() * 2)?;
                let emb = embedding(k, &big)?;
                roots = factor::roots(&q.map(|x| emb.apply(*x), &*big), &big)
                    .into_iter()
                    .map(|r| P1Point::finite(&big, r))
                    .collect();
            }
            out.extend(roots);
        }
        out.sort();
        Ok(out)
    }

    /// `a` for a translation `s ↦ s + a`.
    pub fn translation_part(&self) -> Option<Fe> {
        let [[a, b], [c, e]] = self.m;
        (a.0 == 1 && c.0 == 0 && e.0 == 1).then_some(b)
    }

    /// Readable form: `α*s+β` for affine maps, `(α*s+β)/(s+γ)` otherwise.
    pub fn to_text(&self) -> String {
        let k = &*self.field;
        let [[a, b], [c, e]] = self.m;
        let lin = |x: Fe, y: Fe| {
            let mut t = text::Terms::new();
            if x.0 != 0 {
                t.insert(vec![1], x);
            }
            if y.0 != 0 {
                t.insert(vec![0], y);
            }
            text::format_poly(&t, &['s'], k)
        };
        if c.0 == 0 {
            let ei = k.inv(&e);
            lin(k.mul(&a, &ei), k.mul(&b, &ei))
        } else {
            let ci = k.inv(&c);
            format!(
                "({})/({})",
                lin(k.mul(&a, &ci), k.mul(&b, &ci)),
                lin(Fe(1), k.mul(&e, &ci))
            )
        }
    }
}

/// The maps are translations `s ↦ s + a` whose parts form an additive group.
pub fn translation_subgroup_check(group: &[Mobius]) -> bool {
    let Some(k) = group.iter().map(|m| m.field.clone()).max_by_key(|f| f.degree()) else {
        return false;
    };
    let mut parts = BTreeSet::new();
    for m in group {
        let Ok(m) = m.to_field(&k) else { return false };
        let Some(a) = m.translation_part() else { return false };
        parts.insert(a);
    }
    parts.contains(&Fe(0))
        && parts
            .iter()
            .all(|x| parts.contains(&k.neg(x)) && parts.iter().all(|y| parts.contains(&k.add(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, n: u32) -> Arc<GaloisField> {
        GaloisField::get(p, n).unwrap()
    }

    #[test]
    fn fixed_point_examples() {
        let k = f(7, 1);
        let t = Mobius::new(&k, [[Fe(1), Fe(1)], [Fe(0), Fe(1)]]).unwrap();
        assert_eq!(t.fixed_points().unwrap(), vec![P1Point::infinity(&k)]);
        let s = Mobius::new(&k, [[Fe(2), Fe(0)], [Fe(0), Fe(1)]]).unwrap();
        assert_eq!(
            s.fixed_points().unwrap(),
            vec![P1Point::finite(&k, Fe(0)), P1Point::infinity(&k)]
        );
        // s ↦ -1/s has order 2; fixed points satisfy s² = -1, irrational over GF(7)
        let inv = Mobius::new(&k, [[Fe(0), Fe(6)], [Fe(1), Fe(0)]]).unwrap();
        let fp = inv.fixed_points().unwrap();
        assert_eq!(fp.len(), 2);
        assert!(fp.iter().all(|p| p.field().degree() == 2));
        assert!(inv.compose(&inv).unwrap().is_identity());
        assert!(Mobius::identity(&k).fixed_points().is_err());
    }

    #[test]
    fn three_point_construction() {
        let k = f(5, 1);
        let pts = [
            P1Point::finite(&k, Fe(2)),
            P1Point::infinity(&k),
            P1Point::finite(&k, Fe(3)),
        ];
        let m = Mobius::from_images(&k, [&pts[0], &pts[1], &pts[2]]).unwrap();
        assert_eq!(m.apply(&P1Point::finite(&k, Fe(0))).unwrap(), pts[0]);
        assert_eq!(m.apply(&P1Point::finite(&k, Fe(1))).unwrap(), pts[1]);
        assert_eq!(m.apply(&P1Point::infinity(&k)).unwrap(), pts[2]);
        assert!(m.compose(&m.inverse()).unwrap().is_identity());
    }

    #[test]
    fn subgroup_examples() {
        let k = f(3, 1);
        let tr = |a: u32| Mobius::new(&k, [[Fe(1), Fe(a)], [Fe(0), Fe(1)]]).unwrap();
        assert!(translation_subgroup_check(&[tr(0), tr(1), tr(2)]));
        assert!(!translation_subgroup_check(&[tr(0), tr(1)]));
        let scale = Mobius::new(&k, [[Fe(2), Fe(0)], [Fe(0), Fe(1)]]).unwrap();
        assert!(!translation_subgroup_check(&[tr(0), scale]));
    }
}
