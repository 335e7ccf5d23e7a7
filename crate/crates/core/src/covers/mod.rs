//! Rational self-maps of the projective line: ramification, Möbius
//! automorphisms, and the structure of wildly ramified Galois covers.

mod mobius;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

pub use mobius::{translation_subgroup_check, Mobius, P1Point};

use crate::curve::maximal_degrees;
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField, MAX_FIELD_SIZE};
use crate::galois::multiplicity_profile;
use crate::poly::factor::{self, Poly};
use crate::text;

/// `θ(s) = N(s)/D(s)` with coprime `N, D` and degree `max(deg N, deg D) ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverSpec {
    field: Arc<GaloisField>,
    num: Poly,
    den: Poly,
    degree: usize,
}

fn parse_s(src: &str, field: &GaloisField) -> Result<Poly> {
    let t = text::parse_poly(src, &['s'], field)?;
    let deg = t.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut c = vec![Fe(0); deg + 1];
    for (e, v) in t {
        c[e[0] as usize] = v;
    }
    Ok(Poly::from_coeffs(c, field))
}

impl CoverSpec {
    pub fn new(field: &Arc<GaloisField>, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("denominator is zero"));
        }
        if !num.gcd(&den, &**field).is_constant() {
            return Err(Error::invalid("numerator and denominator share a factor"));
        }
        let degree = num.degree().unwrap_or(0).max(den.degree().unwrap());
        if degree < 2 {
            return Err(Error::invalid("cover degree must be at least 2"));
        }
        Ok(CoverSpec {
            field: field.clone(),
            num,
            den,
            degree,
        })
    }

    /// `N` or `(N)/(D)` in the variable `s`, optionally prefixed by `map:`.
    pub fn parse(src: &str, field: &Arc<GaloisField>) -> Result<Self> {
        let src = src.trim();
        let src = src.strip_prefix("map:").unwrap_or(src).trim();
        let (n, d) = match split_quotient(src) {
            Some((n, d)) => (parse_s(n, field)?, parse_s(d, field)?),
            None => (parse_s(src, field)?, Poly::one(&**field)),
        };
        Self::new(field, n, d)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn to_text(&self) -> String {
        let f = |p: &Poly| {
            let t = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.0 != 0)
                .map(|(i, c)| (vec![i as u32], *c))
                .collect();
            text::format_poly(&t, &['s'], &self.field)
        };
        format!("({})/({})", f(&self.num), f(&self.den))
    }

    /// `N'D - ND'`; its distinct roots are the finite ramification points.
    pub fn wronskian(&self) -> Poly {
        let k = &*self.field;
        self.num
            .derivative(k)
            .mul(&self.den, k)
            .sub(&self.num.mul(&self.den.derivative(k), k), k)
    }

    pub fn is_separable(&self) -> bool {
        !self.wronskian().is_zero()
    }

    fn require_separable(&self) -> Result<()> {
        if self.is_separable() {
            Ok(())
        } else {
            Err(Error::InseparableCover(format!(
                "{} has zero derivative",
                self.to_text()
            )))
        }
    }

    /// Numerator and denominator in the chart `s = 1/u`.
    fn at_infinity(&self) -> (Poly, Poly) {
        let k = &*self.field;
        (self.num.reverse(self.degree, k), self.den.reverse(self.degree, k))
    }

    fn over(&self, big: &Arc<GaloisField>) -> Result<(Poly, Poly)> {
        let e = embedding(&self.field, big)?;
        Ok((
            self.num.map(|c| e.apply(*c), &**big),
            self.den.map(|c| e.apply(*c), &**big),
        ))
    }

    /// Image of a point.
    pub fn eval(&self, pt: &P1Point) -> Result<P1Point> {
        let k = crate::curve::common_field(&self.field, pt.field())?;
        let pt = pt.to_field(&k)?;
        let (n, d) = match pt.value() {
            Some(s) => {
                let (n, d) = self.over(&k)?;
                (n.eval(&s, &*k), d.eval(&s, &*k))
            }
            None => {
                let (n, d) = self.at_infinity();
                let e = embedding(&self.field, &k)?;
                (e.apply(n.coeff(0, &*self.field)), e.apply(d.coeff(0, &*self.field)))
            }
        };
        Ok(if d.0 == 0 {
            P1Point::infinity(&k)
        } else {
            P1Point::finite(&k, k.div(&n, &d))
        })
    }

    /// Local degree of `θ` at a point (chart-adjusted at `∞` on both sides).
    pub fn index_at(&self, pt: &P1Point) -> Result<usize> {
        let k = crate::curve::common_field(&self.field, pt.field())?;
        let pt = pt.to_field(&k)?;
        let e = embedding(&self.field, &k)?;
        let (n, d, s0) = match pt.value() {
            Some(s) => {
                let (n, d) = self.over(&k)?;
                (n, d, s)
            }
            None => {
                let (n, d) = self.at_infinity();
                (n.map(|c| e.apply(*c), &*k), d.map(|c| e.apply(*c), &*k), Fe(0))
            }
        };
        let dv = d.eval(&s0, &*k);
        let local = if dv.0 == 0 {
            d
        } else {
            n.sub(&d.scale(&k.div(&n.eval(&s0, &*k), &dv), &*k), &*k)
        };
        local
            .order_at(&s0, &*k)
            .ok_or_else(|| Error::consistency("map is constant"))
    }

    /// Indices of all points over `w` (over the closure), descending.
    pub fn fiber_indices(&self, w: &P1Point) -> Result<Vec<usize>> {
        let k = crate::curve::common_field(&self.field, w.field())?;
        let (n, d) = self.over(&k)?;
        let h = match w.value() {
            Some(w) => n.sub(&d.scale(&w, &*k), &*k),
            None => d,
        };
        let mut ix = multiplicity_profile(&h, &*k);
        let inf = P1Point::infinity(&k);
        if self.eval(&inf)? == w.to_field(&k)? {
            ix.push(self.index_at(&inf)?);
        }
        ix.sort_unstable_by(|a, b| b.cmp(a));
        if ix.iter().sum::<usize>() != self.degree {
            return Err(Error::consistency("fiber indices do not sum to the degree"));
        }
        Ok(ix)
    }

    /// Number of distinct ramification points over the closure.
    pub fn ramification_point_count(&self) -> Result<usize> {
        self.require_separable()?;
        let inf = self.index_at(&P1Point::infinity(&self.field))? > 1;
        Ok(self.wronskian().distinct_root_count(&*self.field) + inf as usize)
    }
}

/// `(N)/(D)` with balanced outer parentheses.
fn split_quotient(src: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((src[..i].trim(), src[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

/// A ramification point and its index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ramification {
    pub point: P1Point,
    pub index: usize,
}

fn fits(p: u32, n: u32) -> bool {
    (p as u64).checked_pow(n).is_some_and(|s| s <= MAX_FIELD_SIZE)
}

/// Ramification points over `GF(q^m)`, `m ≤ ext_max`, sorted.
pub fn cover_ramification(theta: &CoverSpec, ext_max: u32) -> Result<Vec<Ramification>> {
    theta.require_separable()?;
    let k = theta.field();
    let mut out = BTreeSet::new();
    let inf = P1Point::infinity(k);
    let e_inf = theta.index_at(&inf)?;
    if e_inf > 1 {
        out.insert(Ramification {
            point: inf,
            index: e_inf,
        });
    }
    let w = theta.wronskian();
    if !w.is_constant() {
        for (phi, _) in factor::factor(&w, k)?.factors {
            let j = phi.degree().unwrap() as u32;
            let n = k.degree() * j;
            if j > ext_max || !fits(k.p(), n) {
                continue;
            }
            let big = GaloisField::get(k.p(), n)?;
            let emb = embedding(k, &big)?;
            for r in factor::roots(&phi.map(|c| emb.apply(*c), &*big), &big) {
                let point = P1Point::finite(&big, r);
                let index = theta.index_at(&point)?;
                out.insert(Ramification { point, index });
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Points of `P¹(k)` in the fiber over `θ(x)`.
fn rational_fiber(theta: &CoverSpec, x: &P1Point, k: &Arc<GaloisField>) -> Result<Vec<P1Point>> {
    let w = theta.eval(x)?;
    let (n, d) = theta.over(k)?;
    let h = match w.value() {
        Some(w) => n.sub(&d.scale(&w, &**k), &**k),
        None => d,
    };
    let mut pts: Vec<P1Point> = factor::roots(&h, k)
        .into_iter()
        .map(|r| P1Point::finite(k, r))
        .collect();
    let inf = P1Point::infinity(k);
    if theta.eval(&inf)? == w {
        pts.push(inf);
    }
    Ok(pts)
}

/// All Möbius `σ` over `k` with `θ∘σ = θ`: images of `0, 1, ∞` are drawn
/// from their fibers and each candidate is checked as a polynomial identity.
fn automorphisms_over(theta: &CoverSpec, k: &Arc<GaloisField>) -> Result<Vec<Mobius>> {
    let src = [
        P1Point::finite(k, Fe(0)),
        P1Point::finite(k, k.one()),
        P1Point::infinity(k),
    ];
    let fibers: Vec<Vec<P1Point>> = src.iter().map(|x| rational_fiber(theta, x, k)).collect::<Result<_>>()?;
    let (n, d) = theta.over(k)?;
    let mut out = BTreeSet::new();
    for a in &fibers[0] {
        for b in &fibers[1] {
            for c in &fibers[2] {
                if a == b || b == c || a == c {
                    continue;
                }
                let m = Mobius::from_images(k, [a, b, c])?;
                if m.preserves(&n, &d, theta.degree) {
                    out.insert(m);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Automorphisms of the cover over `GF(q^m)`, `m ≤ ext_max`, each written
/// over its smallest field containing the cover's field, sorted.
pub fn cover_automorphisms(theta: &CoverSpec, ext_max: u32) -> Result<Vec<Mobius>> {
    theta.require_separable()?;
    let k = theta.field();
    let mut all = BTreeSet::new();
    for m in maximal_degrees(ext_max) {
        let n = k.degree() * m;
        if !fits(k.p(), n) {
            continue;
        }
        let big = GaloisField::get(k.p(), n)?;
        for a in automorphisms_over(theta, &big)? {
            all.insert(a.descend(k.degree())?);
        }
    }
    Ok(all.into_iter().collect())
}

/// Galois iff the automorphism group has order `deg θ`.
pub fn cover_is_galois(theta: &CoverSpec, ext_max: u32) -> Result<(bool, Vec<Mobius>)> {
    let g = cover_automorphisms(theta, ext_max)?;
    Ok((g.len() == theta.degree(), g))
}

/// Every exponent `i ≥ 1` with a nonzero coefficient has `i - 1` a power of
/// `p` (`p⁰ = 1` included; `i = 1` is rejected since `0` is no power).
pub fn additive_exponent_check(f: &Poly, p: u32) -> bool {
    let is_power = |mut m: usize| {
        if m == 0 {
            return false;
        }
        while m.is_multiple_of(p as usize) {
            m /= p as usize;
        }
        m == 1
    };
    f.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| c.0 != 0)
        .all(|(i, _)| is_power(i - 1))
}

fn is_power_of(d: usize, p: u32) -> bool {
    let mut m = d;
    while m > 1 && m.is_multiple_of(p as usize) {
        m /= p as usize;
    }
    m == 1 && d > 1
}

/// For a Galois cover and a point `pt`: if `pt` is the only ramification
/// point and `e = d`, then `d` is a power of `p`; and if `e = d` with `d` a
/// power of `p`, then `pt` is the only ramification point.
pub fn wild_full_ramification_check(theta: &CoverSpec, pt: &P1Point, ext_max: u32) -> Result<bool> {
    let (galois, _) = cover_is_galois(theta, ext_max)?;
    if !galois {
        return Err(Error::invalid("the cover is not Galois"));
    }
    let d = theta.degree();
    let e = theta.index_at(pt)?;
    let total = theta.ramification_point_count()?;
    let unique = e > 1 && total == 1;
    let power = is_power_of(d, theta.field().p());
    let unique_forces_power = !(unique && e == d) || power;
    let power_forces_unique = !(e == d && power) || unique;
    Ok(unique_forces_power && power_forces_unique)
}

/// Report for a cover: ramification, automorphisms and the Galois verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverReport {
    pub ramification: Vec<Ramification>,
    pub automorphisms: Vec<Mobius>,
    pub galois: bool,
}

#[derive(Serialize)]
struct RamJson {
    point: String,
    index: usize,
}

#[derive(Serialize)]
struct CoverJson {
    ramification: Vec<RamJson>,
    automorphisms: Vec<String>,
    galois: bool,
}

impl Serialize for CoverReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoverJson {
            ramification: self
                .ramification
                .iter()
                .map(|r| RamJson {
                    point: r.point.to_text(),
                    index: r.index,
                })
                .collect(),
            automorphisms: self.automorphisms.iter().map(|m| m.to_text()).collect(),
            galois: self.galois,
        }
        .serialize(s)
    }
}

pub fn analyze_cover(theta: &CoverSpec, ext_max: u32) -> Result<CoverReport> {
    let ramification = cover_ramification(theta, ext_max)?;
    let (galois, automorphisms) = cover_is_galois(theta, ext_max)?;
    Ok(CoverReport {
        ramification,
        automorphisms,
        galois,
    })
}

/// Structural properties of a cover, checked on the instance. `None` marks
/// a property whose hypothesis does not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverChecks {
    /// Every non-identity automorphism fixes a point of `P¹`.
    pub fixed_points: bool,
    /// Galois: indices agree within each ramified fiber and divide `d`.
    pub uniform_fibers: Option<bool>,
    /// Galois: a ramification point whose fiber has two or more points has a
    /// ramification partner over a different value.
    pub second_branch_value: Option<bool>,
    /// Galois: total ramification ties `d` being a power of `p` to uniqueness
    /// of the ramification point.
    pub wild_total_ramification: Option<bool>,
    /// Galois with `∞` totally ramified and `d` a power of `p`: the group is
    /// a group of translations.
    pub translation_subgroup: Option<bool>,
    /// Tame, with every ramification point found: `Σ (e - 1) = 2d - 2`.
    pub riemann_hurwitz: Option<bool>,
}

impl CoverChecks {
    /// No checked property failed.
    pub fn all_hold(&self) -> bool {
        self.fixed_points
            && [
                self.uniform_fibers,
                self.second_branch_value,
                self.wild_total_ramification,
                self.translation_subgroup,
                self.riemann_hurwitz,
            ]
            .iter()
            .all(|x| x.unwrap_or(true))
    }
}

fn same_point(a: &P1Point, b: &P1Point) -> Result<bool> {
    let k = crate::curve::common_field(a.field(), b.field())?;
    Ok(a.to_field(&k)? == b.to_field(&k)?)
}

pub fn cover_checks(theta: &CoverSpec, report: &CoverReport, ext_max: u32) -> Result<CoverChecks> {
    let d = theta.degree();
    let p = theta.field().p();
    let mut fixed_points = true;
    for m in report.automorphisms.iter().filter(|m| !m.is_identity()) {
        fixed_points &= !m.fixed_points()?.is_empty();
    }
    let ram = &report.ramification;
    let found = ram.len() == theta.ramification_point_count()?;
    let riemann_hurwitz = (found && ram.iter().all(|r| r.index % p as usize != 0))
        .then(|| ram.iter().map(|r| r.index - 1).sum::<usize>() == 2 * d - 2);
    if !report.galois {
        return Ok(CoverChecks {
            fixed_points,
            uniform_fibers: None,
            second_branch_value: None,
            wild_total_ramification: None,
            translation_subgroup: None,
            riemann_hurwitz,
        });
    }
    let mut uniform = true;
    let mut second = true;
    let mut wild = true;
    let values: Vec<P1Point> = ram.iter().map(|r| theta.eval(&r.point)).collect::<Result<_>>()?;
    for (r, w) in ram.iter().zip(&values) {
        let ix = theta.fiber_indices(w)?;
        uniform &= ix.iter().all(|&e| e == r.index && d.is_multiple_of(e));
        if r.index < d {
            second &= values
                .iter()
                .map(|v| same_point(v, w))
                .collect::<Result<Vec<_>>>()?
                .contains(&false);
        }
        wild &= wild_full_ramification_check(theta, &r.point, ext_max)?;
    }
    let inf_total = theta.index_at(&P1Point::infinity(theta.field()))? == d;
    let translation_subgroup =
        (inf_total && is_power_of(d, p)).then(|| translation_subgroup_check(&report.automorphisms));
    Ok(CoverChecks {
        fixed_points,
        uniform_fibers: Some(uniform),
        second_branch_value: Some(second),
        wild_total_ramification: Some(wild),
        translation_subgroup,
        riemann_hurwitz,
    })
}
