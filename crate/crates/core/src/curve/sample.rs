use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::is_zero3;
use super::{PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{embedding, Fe, GaloisField, MAX_FIELD_SIZE};
use crate::poly::factor;

/// Knobs for "general point" sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Extension degrees (relative to the curve's field) to sample from, in
    /// rotation. Several coprime degrees keep samples off special loci
    /// defined over any single small field.
    pub degrees: Vec<u32>,
    /// Confirmation samples for strangeness and contact order.
    pub confirmations: usize,
    /// Maximum draws per requested point.
    pub budget: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            degrees: vec![3, 4, 5],
            confirmations: 20,
            budget: 400,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig {
            seed,
            ..Self::default()
        }
    }
}

/// Seeded source of smooth points over extension fields.
pub struct Sampler<'a> {
    curve: &'a PlaneCurve,
    rng: ChaCha8Rng,
    fields: Vec<Arc<GaloisField>>,
    next: usize,
    budget: usize,
}

impl<'a> Sampler<'a> {
    pub fn new(curve: &'a PlaneCurve, cfg: &SampleConfig) -> Result<Self> {
        let base = curve.field();
        let mut fields = Vec::new();
        let mut degrees = cfg.degrees.clone();
        degrees.extend([2, 1]);
        for m in degrees {
            let n = base.degree() * m;
            let fits = (base.p() as u64).checked_pow(n).is_some_and(|s| s <= MAX_FIELD_SIZE);
            if fits && !fields.iter().any(|f: &Arc<GaloisField>| f.degree() == n) {
                fields.push(GaloisField::get(base.p(), n)?);
            }
            if fields.len() >= cfg.degrees.len() {
                break;
            }
        }
        Ok(Sampler {
            curve,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            fields,
            next: 0,
            budget: cfg.budget,
        })
    }

    pub fn fields(&self) -> &[Arc<GaloisField>] {
        &self.fields
    }

    /// Next smooth point, rotating through the sample fields.
    pub fn smooth_point(&mut self) -> Result<ProjPoint> {
        let k = self.fields[self.next % self.fields.len()].clone();
        self.next += 1;
        self.smooth_point_in(&k)
    }

    /// A smooth point over `k` (affine chart `Z = 1`).
    pub fn smooth_point_in(&mut self, k: &Arc<GaloisField>) -> Result<ProjPoint> {
        let f = self.curve.form_over(k)?;
        let b = f.dehomogenize();
        for _ in 0..self.budget {
            let x0 = k.random(&mut self.rng);
            let fy = b.eval_x(&x0, &**k);
            if fy.is_zero() || fy.is_constant() {
                continue;
            }
            let roots = factor::roots(&fy, k);
            if roots.is_empty() {
                continue;
            }
            let y0 = roots[self.rng.gen_range(0..roots.len())];
            let v = [x0, y0, Fe(1)];
            if !is_zero3(&f.gradient(&v)) {
                return ProjPoint::new(k, v);
            }
        }
        Err(Error::SamplingExhausted(format!("no smooth point found over {:?}", k)))
    }

    /// A point of `P²(k)` off the curve.
    pub fn point_off_curve(&mut self, k: &Arc<GaloisField>) -> Result<ProjPoint> {
        let f = self.curve.form_over(k)?;
        for _ in 0..self.budget {
            let v = [k.random(&mut self.rng), k.random(&mut self.rng), Fe(1)];
            if f.eval(&v).0 != 0 {
                return ProjPoint::new(k, v);
            }
        }
        Err(Error::SamplingExhausted("every sampled point lies on the curve".into()))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// All points of the curve over `k`, sorted.
pub fn points_over(curve: &PlaneCurve, k: &Arc<GaloisField>) -> Result<Vec<ProjPoint>> {
    let f = curve.form_over(k)?;
    let b = f.dehomogenize();
    let mut out = Vec::new();
    for x0 in k.elements() {
        let fy = b.eval_x(&x0, &**k);
        if fy.is_zero() {
            return Err(Error::consistency("curve contains a vertical line"));
        }
        for y0 in factor::roots(&fy, k) {
            out.push(ProjPoint::new(k, [x0, y0, Fe(1)])?);
        }
    }
    // line Z = 0: (x : 1 : 0) and (1 : 0 : 0)
    let at_inf = crate::poly::UniPoly::from_coeffs(
        (0..=f.degree()).map(|i| f.coeff([i, f.degree() - i, 0])).collect(),
        &**k,
    );
    if at_inf.is_zero() {
        return Err(Error::consistency("curve contains the line at infinity"));
    }
    for x0 in factor::roots(&at_inf, k) {
        out.push(ProjPoint::new(k, [x0, Fe(1), Fe(0)])?);
    }
    if f.coeff([f.degree(), 0, 0]).0 == 0 {
        out.push(ProjPoint::new(k, [Fe(1), Fe(0), Fe(0)])?);
    }
    out.sort();
    Ok(out)
}

/// Relative extension degrees `m ≤ ext_max` not dividing a larger one.
pub fn maximal_degrees(ext_max: u32) -> Vec<u32> {
    (1..=ext_max)
        .filter(|&m| !(m + 1..=ext_max).any(|n| n % m == 0))
        .collect()
}

/// Points over `GF(q^m)` for all `m ≤ ext_max`, each written over its field
/// of definition (containing the curve's field), deduplicated and sorted.
pub fn points_upto(curve: &PlaneCurve, ext_max: u32) -> Result<Vec<ProjPoint>> {
    let base = curve.field();
    let mut set = BTreeSet::new();
    for m in maximal_degrees(ext_max) {
        let k = GaloisField::get(base.p(), base.degree() * m)?;
        for pt in points_over(curve, &k)? {
            set.insert(pt.descend(base.degree())?);
        }
    }
    Ok(set.into_iter().collect())
}

/// Smooth points among [`points_upto`].
pub fn smooth_points_upto(curve: &PlaneCurve, ext_max: u32) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    for p in points_upto(curve, ext_max)? {
        if curve.is_smooth_at(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Embed a point into `k` if its field is a subfield of `k`.
pub fn point_in(pt: &ProjPoint, k: &Arc<GaloisField>) -> Option<ProjPoint> {
    if !k.degree().is_multiple_of(pt.field().degree()) {
        return None;
    }
    let e = embedding(pt.field(), k).ok()?;
    ProjPoint::new(k, pt.coords().map(|x| e.apply(x))).ok()
}
