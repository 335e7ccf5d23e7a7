use std::sync::Arc;

use crate::curve::{common_field, dot, is_zero3, Mat3, PlaneCurve, ProjLine, ProjPoint, TernaryForm, Vec3};
use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};
use crate::poly::{BiPoly, FunFieldPoly};

/// Coordinates in which the projection centre is `(0:1:0)`.
///
/// Columns of `t` are `(R₁, P, R₂)`. For an inner point `R₁` lies on the
/// tangent, so the tangent becomes `Z = 0` and `F(T·(x, Y, 1))` has degree
/// `d - 1` in `Y` with a constant leading coefficient. Lines through the
/// centre are `X = cZ` together with `Z = 0`.
#[derive(Clone, Debug)]
pub struct ProjectionFrame {
    pub field: Arc<GaloisField>,
    pub point: ProjPoint,
    pub t: Mat3,
    pub t_inv: Mat3,
    /// `F ∘ T`.
    pub form: TernaryForm,
    /// `F(T·(x, Y, 1))`.
    pub affine: BiPoly<Fe>,
    pub inner: bool,
}

const UNITS: [Vec3; 3] = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]];

impl ProjectionFrame {
    /// Frame over the smallest common field of the curve, the point and `k`.
    pub fn new(curve: &PlaneCurve, p: &ProjPoint, k: Option<&Arc<GaloisField>>) -> Result<Self> {
        let mut field = common_field(curve.field(), p.field())?;
        if let Some(k) = k {
            field = common_field(&field, k)?;
        }
        let f = curve.form_over(&field)?;
        let point = p.to_field(&field)?;
        let v = *point.coords();
        let inner = f.eval(&v).0 == 0;
        let (r1, r2) = if inner {
            let g = f.gradient(&v);
            if is_zero3(&g) {
                return Err(Error::invalid(format!("{p} is a singular point")));
            }
            let tangent = ProjLine::new(&field, g)?;
            let r1 = crate::curve::second_point(&field, &tangent, &v);
            let r2 = *UNITS.iter().find(|e| dot(&field, e, &g).0 != 0).unwrap();
            (r1, r2)
        } else {
            let mut pick = UNITS.iter().copied().filter(|e| {
                Mat3::from_columns(e, &v, &UNITS[0]).det(&field).0 != 0
                    || Mat3::from_columns(e, &v, &UNITS[2]).det(&field).0 != 0
            });
            let r1 = pick.next().unwrap();
            let r2 = *UNITS
                .iter()
                .find(|e| Mat3::from_columns(&r1, &v, e).det(&field).0 != 0)
                .unwrap();
            (r1, r2)
        };
        let t = Mat3::from_columns(&r1, &v, &r2);
        let t_inv = t
            .inverse(&field)
            .ok_or_else(|| Error::consistency("degenerate projection frame"))?;
        let form = f.compose(&t);
        let affine = form.dehomogenize();
        let expect = curve.degree() as usize - inner as usize;
        if affine.deg_y() != Some(expect) || affine.lc_y().is_none_or(|c| !c.is_constant()) {
            return Err(Error::consistency("fiber polynomial has the wrong shape"));
        }
        Ok(ProjectionFrame {
            field,
            point,
            t,
            t_inv,
            form,
            affine,
            inner,
        })
    }

    /// The same frame read over an extension field.
    pub fn lift(&self, big: &Arc<GaloisField>) -> Result<Self> {
        if big.degree() == self.field.degree() {
            return Ok(self.clone());
        }
        let e = crate::field::embedding(&self.field, big)?;
        let emb = |c: Fe| e.apply(c);
        Ok(ProjectionFrame {
            field: big.clone(),
            point: self.point.to_field(big)?,
            t: self.t.map(emb),
            t_inv: self.t_inv.map(emb),
            form: self.form.to_field(big)?,
            affine: self.affine.map(|c| emb(*c), &**big),
            inner: self.inner,
        })
    }

    /// Degree of the projection: `d - 1` for inner points, `d` otherwise.
    pub fn degree(&self) -> usize {
        self.affine.deg_y().unwrap()
    }

    /// `X - cZ` for finite `c`, `Z` for `None`, in original coordinates.
    pub fn line(&self, c: Option<Fe>) -> Result<ProjLine> {
        let k = &self.field;
        let local = match c {
            Some(c) => [Fe(1), Fe(0), k.neg(&c)],
            None => [Fe(0), Fe(0), Fe(1)],
        };
        ProjLine::new(k, self.t_inv.apply_row(k, &local))
    }

    /// Parameter `c` of a line through the centre (`None` for the tangent).
    pub fn parameter(&self, l: &ProjLine) -> Result<Option<Fe>> {
        let k = &self.field;
        let l = l.to_field(k)?;
        let local = self.t.apply_row(k, l.coords());
        if local[1].0 != 0 {
            return Err(Error::invalid("line does not pass through the projection centre"));
        }
        if local[0].0 == 0 {
            return Ok(None);
        }
        Ok(Some(k.neg(&k.div(&local[2], &local[0]))))
    }

    /// A frame point back in original coordinates.
    pub fn to_original(&self, big: &Arc<GaloisField>, v: &Vec3) -> Result<ProjPoint> {
        let e = crate::field::embedding(&self.field, big)?;
        let t = self.t.map(|c| e.apply(c));
        ProjPoint::new(big, t.apply(big, v))
    }
}

/// `f(x, Y)` over `GF(q)(x)` after moving `P` to `(0:1:0)`, with the frame.
pub fn fiber_polynomial(curve: &PlaneCurve, p: &ProjPoint) -> Result<(FunFieldPoly, ProjectionFrame)> {
    if curve.degree() < 4 {
        return Err(Error::Refused("projection analysis needs degree at least 4".into()));
    }
    let frame = ProjectionFrame::new(curve, p, None)?;
    Ok((FunFieldPoly::from_bipoly(&frame.affine, &frame.field), frame))
}
