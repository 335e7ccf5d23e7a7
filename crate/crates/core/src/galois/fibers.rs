//! Fibers of a point projection: ramification indices and the uniformity
//! filter.

use super::frame::ProjectionFrame;
use crate::curve::{is_zero3, PlaneCurve, ProjLine, ProjPoint, Vec3};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, Field, GaloisField, ResidueField, MAX_FIELD_SIZE};
use crate::poly::factor::{self, Poly};
use crate::poly::{resultant_y, BiPoly, UniPoly};
use crate::text;

/// One point (or a class of conjugate points) in a fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberEntry {
    /// Resolved point, when its field is within table limits.
    pub point: Option<ProjPoint>,
    /// Number of conjugate points the entry stands for.
    pub conjugates: usize,
    pub index: usize,
    /// The point is singular on the curve and `index` is the total
    /// intersection multiplicity with the line.
    pub singular: bool,
}

/// The fiber of the projection over one line through the centre.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationDatum {
    pub line: ProjLine,
    pub fiber: Vec<FiberEntry>,
}

impl RamificationDatum {
    /// One index per geometric point, descending.
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .fiber
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.index, e.conjugates))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_ramified(&self) -> bool {
        self.fiber.iter().any(|e| e.index > 1)
    }

    pub fn best_effort(&self) -> bool {
        self.fiber.iter().any(|e| e.singular)
    }

    /// All indices equal and dividing `degree`.
    pub fn is_uniform(&self, degree: usize) -> bool {
        uniform(&self.indices(), degree)
    }
}

fn uniform(ix: &[usize], degree: usize) -> bool {
    ix.windows(2).all(|w| w[0] == w[1]) && ix.iter().all(|&e| degree.is_multiple_of(e))
}

/// Ramified lines through the centre over the searched fields.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationProfile {
    /// Sorted by line; the tangent is always present.
    pub data: Vec<RamificationDatum>,
    /// Lines over the curve's field through the centre with every index 1
    /// (zero when the centre is not defined over that field).
    pub unramified_rational_lines: usize,
}

/// Result of the uniformity filter.
#[derive(Clone, Debug, PartialEq)]
pub enum FilterOutcome {
    /// Every fiber over the closure is uniform with indices dividing `d - 1`.
    Pass { ramified_classes: usize, best_effort: bool },
    /// A fiber breaks uniformity or divisibility.
    Witness {
        /// Smallest violating line in canonical order, when its field is
        /// small enough to write down.
        line: Option<ProjLine>,
        /// Minimal polynomial of the line parameter over the centre's field;
        /// `inf` for the tangent.
        class: String,
        indices: Vec<usize>,
    },
}

/// Multiplicities of the distinct roots of `h` over the closure, descending.
pub fn multiplicity_profile<F: Field>(h: &UniPoly<F::Elem>, f: &F) -> Vec<usize> {
    // counts[k]: distinct roots of multiplicity > k
    let mut counts = Vec::new();
    let mut cur = h.monic(f);
    while !cur.is_constant() {
        let r = cur.radical(f);
        counts.push(r.degree().unwrap());
        cur = cur.div_exact(&r, f).expect("radical divides");
    }
    let mut out = Vec::new();
    for k in (0..counts.len()).rev() {
        let exact = counts[k] - counts.get(k + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(k + 1, exact));
    }
    out
}

pub(crate) fn fits(p: u32, n: u32) -> bool {
    (p as u64).checked_pow(n).is_some_and(|s| s <= MAX_FIELD_SIZE)
}

/// Fiber computation in a fixed frame; points are reported over fields
/// containing `GF(p^base)`.
struct Fibers<'a> {
    frame: &'a ProjectionFrame,
    base: u32,
}

impl Fibers<'_> {
    fn line(&self, c: Option<Fe>) -> Result<ProjLine> {
        self.frame.line(c)?.descend(self.base)
    }

    /// Fiber over `X = cZ`, or over the tangent `Z = 0` for `None`.
    fn at(&self, c: Option<Fe>) -> Result<RamificationDatum> {
        let frame = self.frame;
        let k = &frame.field;
        let form = &frame.form;
        let mut fiber = Vec::new();
        // fiber points are base + u·dir for the roots u of h
        let (base, dir, h) = match c {
            Some(c) => ([c, Fe(0), Fe(1)], [Fe(0), Fe(1), Fe(0)], frame.affine.eval_x(&c, &**k)),
            None => {
                let base = [Fe(0), Fe(1), Fe(0)];
                let dir = [Fe(1), Fe(0), Fe(0)];
                let h = form.restrict(&base, &dir);
                let ip = h
                    .order_at(&Fe(0), &**k)
                    .ok_or_else(|| Error::consistency("tangent is a component"))?;
                if frame.inner {
                    let pt = frame.point.descend(self.base)?;
                    fiber.push(FiberEntry {
                        point: Some(pt),
                        conjugates: 1,
                        index: ip - 1,
                        singular: false,
                    });
                }
                let deficit = form.degree() as usize - h.degree().unwrap();
                if deficit > 0 {
                    let singular = is_zero3(&form.gradient(&dir));
                    let pt = frame.to_original(k, &dir)?.descend(self.base)?;
                    fiber.push(FiberEntry {
                        point: Some(pt),
                        conjugates: 1,
                        index: deficit,
                        singular,
                    });
                }
                let rest = h.div_exact(&Poly::monomial(Fe(1), ip, &**k), &**k).unwrap();
                (base, dir, rest)
            }
        };
        if !h.is_constant() {
            let partials: Vec<Poly> = (0..3)
                .filter_map(|i| form.partial(i))
                .map(|p| p.restrict(&base, &dir))
                .collect();
            for (phi, e) in factor::factor(&h, k)?.factors {
                let singular = partials.iter().all(|p| p.rem(&phi, &**k).is_zero());
                self.push(&phi, e as usize, singular, &base, &dir, &mut fiber)?;
            }
        }
        fiber.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(RamificationDatum {
            line: self.line(c)?,
            fiber,
        })
    }

    fn push(
        &self,
        phi: &Poly,
        e: usize,
        singular: bool,
        base: &Vec3,
        dir: &Vec3,
        out: &mut Vec<FiberEntry>,
    ) -> Result<()> {
        let k = &self.frame.field;
        let j = phi.degree().unwrap();
        let n = k.degree() * j as u32;
        if !fits(k.p(), n) {
            out.push(FiberEntry {
                point: None,
                conjugates: j,
                index: e,
                singular,
            });
            return Ok(());
        }
        let big = GaloisField::get(k.p(), n)?;
        let emb = embedding(k, &big)?;
        let (b, d) = (base.map(|x| emb.apply(x)), dir.map(|x| emb.apply(x)));
        for u in factor::roots(&phi.map(|c| emb.apply(*c), &*big), &big) {
            let v = [0, 1, 2].map(|i| big.add(&b[i], &big.mul(&u, &d[i])));
            let pt = self.frame.to_original(&big, &v)?.descend(self.base)?;
            out.push(FiberEntry {
                point: Some(pt),
                conjugates: 1,
                index: e,
                singular,
            });
        }
        Ok(())
    }
}

/// The fiber of the projection from `p` over a line through `p`.
pub fn fiber_over_line(curve: &PlaneCurve, p: &ProjPoint, l: &ProjLine) -> Result<RamificationDatum> {
    let k = crate::curve::common_field(p.field(), l.field())?;
    let frame = ProjectionFrame::new(curve, p, Some(&k))?;
    let c = frame.parameter(l)?;
    Fibers {
        frame: &frame,
        base: curve.field().degree(),
    }
    .at(c)
}

/// Discriminant of the fiber polynomial in the line parameter.
fn discriminant(frame: &ProjectionFrame) -> Result<Poly> {
    let k = &*frame.field;
    let fy = frame.affine.derivative_y(k);
    if fy.is_zero() {
        return Err(Error::InseparableProjection(format!(
            "projection from {} is inseparable",
            frame.point
        )));
    }
    let d = resultant_y(&frame.affine, &fy, k)?;
    if d.is_zero() {
        return Err(Error::consistency("fiber polynomial is not squarefree"));
    }
    Ok(d)
}

pub(crate) fn inner_frame(curve: &PlaneCurve, p: &ProjPoint) -> Result<ProjectionFrame> {
    let frame = ProjectionFrame::new(curve, p, None)?;
    if !frame.inner {
        return Err(Error::invalid(format!("{p} is not a point of the curve")));
    }
    Ok(frame)
}

/// Ramified lines through `p` defined over `GF(q^m)`, `m ≤ ext_max` relative
/// to the curve's field `GF(q)`, plus the tangent at `p`.
pub fn ramification_profile(curve: &PlaneCurve, p: &ProjPoint, ext_max: u32) -> Result<RamificationProfile> {
    let frame = inner_frame(curve, p)?;
    let k = frame.field.clone();
    let e = curve.field().degree();
    let disc = discriminant(&frame)?;
    let tangent = Fibers { frame: &frame, base: e }.at(None)?;
    let rational = k.degree() == e;
    let mut ramified_rational = tangent.is_ramified() as usize;
    let mut data = vec![tangent];
    if !disc.is_constant() {
        for (psi, _) in factor::factor(&disc, &k)?.factors {
            let n = k.degree() * psi.degree().unwrap() as u32;
            if n / e > ext_max || !fits(k.p(), n) {
                continue;
            }
            let big = GaloisField::get(k.p(), n)?;
            let emb = embedding(&k, &big)?;
            let lifted = frame.lift(&big)?;
            let fib = Fibers {
                frame: &lifted,
                base: e,
            };
            for c in factor::roots(&psi.map(|x| emb.apply(*x), &*big), &big) {
                let datum = fib.at(Some(c))?;
                if datum.is_ramified() {
                    ramified_rational += (n == e) as usize;
                    data.push(datum);
                }
            }
        }
    }
    data.sort_by(|a, b| a.line.cmp(&b.line));
    let unramified_rational_lines = if rational {
        curve.field().size() as usize + 1 - ramified_rational
    } else {
        0
    };
    Ok(RamificationProfile {
        data,
        unramified_rational_lines,
    })
}

/// Exact uniformity test over the algebraic closure: every fiber of the
/// projection from `p` has equal indices dividing `d - 1`.
pub fn galois_filter(curve: &PlaneCurve, p: &ProjPoint) -> Result<FilterOutcome> {
    let frame = inner_frame(curve, p)?;
    let k = frame.field.clone();
    let n = frame.degree();
    let disc = discriminant(&frame)?;
    let fx = frame.affine.derivative_x(&*k);
    let fy = frame.affine.derivative_y(&*k);
    let fib = Fibers {
        frame: &frame,
        base: curve.field().degree(),
    };
    let tangent = fib.at(None)?;
    let mut best_effort = tangent.best_effort();
    let mut violations: Vec<(Option<Poly>, Vec<usize>)> = Vec::new();
    if !tangent.is_uniform(n) {
        violations.push((None, tangent.indices()));
    }
    let mut ramified = tangent.is_ramified() as usize;
    if !disc.is_constant() {
        for (psi, _) in factor::factor(&disc, &k)?.factors {
            let l = ResidueField::new(k.clone(), &psi);
            let at = |b: &BiPoly<Fe>| -> UniPoly<Poly> {
                UniPoly::from_coeffs(b.coeffs().iter().map(|c| c.rem(&psi, &*k)).collect(), &l)
            };
            let h = at(&frame.affine);
            let ix = multiplicity_profile(&h, &l);
            if ix.iter().all(|&i| i == 1) {
                continue;
            }
            ramified += 1;
            best_effort |= !h.gcd(&at(&fx), &l).gcd(&at(&fy), &l).is_constant();
            if !uniform(&ix, n) {
                violations.push((Some(psi), ix));
            }
        }
    }
    if violations.is_empty() {
        return Ok(FilterOutcome::Pass {
            ramified_classes: ramified,
            best_effort,
        });
    }
    let mut best: Option<(ProjLine, usize)> = None;
    for (i, (psi, _)) in violations.iter().enumerate() {
        for l in violation_lines(&frame, psi.as_ref(), fib.base)? {
            if best.as_ref().is_none_or(|b| l < b.0) {
                best = Some((l, i));
            }
        }
    }
    let (line, i) = match best {
        Some((l, i)) => (Some(l), i),
        None => (None, 0),
    };
    let (psi, indices) = violations.swap_remove(i);
    Ok(FilterOutcome::Witness {
        line,
        class: class_text(psi.as_ref(), &k),
        indices,
    })
}

/// Lines of a discriminant class, when their field fits.
fn violation_lines(frame: &ProjectionFrame, psi: Option<&Poly>, base: u32) -> Result<Vec<ProjLine>> {
    let Some(psi) = psi else {
        return Ok(vec![frame.line(None)?.descend(base)?]);
    };
    let k = &frame.field;
    let n = k.degree() * psi.degree().unwrap() as u32;
    if !fits(k.p(), n) {
        return Ok(Vec::new());
    }
    let big = GaloisField::get(k.p(), n)?;
    let emb = embedding(k, &big)?;
    let lifted = frame.lift(&big)?;
    factor::roots(&psi.map(|x| emb.apply(*x), &*big), &big)
        .into_iter()
        .map(|c| lifted.line(Some(c))?.descend(base))
        .collect()
}

fn class_text(psi: Option<&Poly>, k: &GaloisField) -> String {
    let Some(p) = psi else { return "inf".into() };
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.0 != 0)
        .map(|(i, c)| (vec![i as u32], *c))
        .collect();
    text::format_poly(&terms, &['c'], k)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn hermitian() -> (PlaneCurve, Arc<GaloisField>) {
        (
            PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap(),
            GaloisField::get(3, 2).unwrap(),
        )
    }

    #[test]
    fn profile_of_repeated_roots() {
        let f = GaloisField::get(5, 1).unwrap();
        let lin = |a: u32| Poly::from_coeffs(vec![Fe(a), Fe(1)], &*f);
        // (y+4)^2 (y+3)^3 y
        let h = lin(4).pow(2, &*f).mul(&lin(3).pow(3, &*f), &*f).mul(&Poly::x(&*f), &*f);
        assert_eq!(multiplicity_profile(&h, &*f), vec![3, 2, 1]);
        // y^5 - 1 = (y - 1)^5 in characteristic 5
        let h = Poly::monomial(Fe(1), 5, &*f).sub(&Poly::one(&*f), &*f);
        assert_eq!(multiplicity_profile(&h, &*f), vec![5]);
    }

    #[test]
    fn hermitian_point_passes() {
        let (c, f9) = hermitian();
        // (0 : β : 1) with β⁴ = -1
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        assert!(c.contains(&p).unwrap());
        let prof = ramification_profile(&c, &p, 2).unwrap();
        let t = c.tangent_line(&p).unwrap();
        let d = prof.data.iter().find(|d| d.line == t).unwrap();
        assert_eq!(d.indices(), vec![3]);
        // oracle: I_P(T_P) - 1 from the independent multiplicity routine
        assert_eq!(c.intersection_multiplicity(&t, &p).unwrap(), Some(4));
        assert!(matches!(
            galois_filter(&c, &p).unwrap(),
            FilterOutcome::Pass { best_effort: false, .. }
        ));
    }

    #[test]
    fn fermat_char_seven_fails() {
        let c = PlaneCurve::parse("X^4+Y^4+Z^4", 7, 1).unwrap();
        let f = GaloisField::get(7, 2).unwrap();
        let pts = crate::curve::points_over(&c, &f).unwrap();
        let p = pts.iter().find(|p| c.is_smooth_at(p).unwrap()).unwrap();
        match galois_filter(&c, p).unwrap() {
            FilterOutcome::Witness { indices, .. } => assert!(!uniform(&indices, 3)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn fiber_indices_sum_to_degree() {
        let (c, f9) = hermitian();
        let p = ProjPoint::new(&f9, [Fe(0), Fe(4), Fe(1)]).unwrap();
        let prof = ramification_profile(&c, &p, 2).unwrap();
        for d in &prof.data {
            assert_eq!(d.indices().iter().sum::<usize>(), 3, "{:?}", d.line);
        }
        let l = prof.data[0].line.clone();
        assert_eq!(fiber_over_line(&c, &p, &l).unwrap(), prof.data[0]);
    }
}
