//! Chern–Rund acceleration of planar curves and the normal, Finsler and
//! Rund curvatures for the Funk metric.

use std::f64::consts::TAU;

use nalgebra::Vector2;
use serde::Serialize;

use crate::domain::BoundaryCurve;
use crate::error::{FunkError, Result};
use crate::metric::{metric_tensor, theta, MetricTensor, PointedVector};

/// Grid used to bracket the roots of the normal equation.
pub const NORMAL_GRID: usize = 720;

/// A point of a curve with its first two derivatives in an arbitrary
/// parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePointData {
    pub c: Vector2<f64>,
    pub c_prime: Vector2<f64>,
    pub c_second: Vector2<f64>,
}

impl CurvePointData {
    pub fn new(c: Vector2<f64>, c_prime: Vector2<f64>, c_second: Vector2<f64>) -> Self {
        Self {
            c,
            c_prime,
            c_second,
        }
    }

    /// Same point after the substitution `t ↦ a t`.
    pub fn reparametrized(&self, a: f64) -> Self {
        Self::new(self.c, self.c_prime * a, self.c_second * (a * a))
    }

    fn velocity(&self) -> PointedVector {
        PointedVector::new(self.c, self.c_prime)
    }
}

/// `∇_ċ ċ` in arc-length parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Acceleration {
    pub nabla: Vector2<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalSide {
    Inner,
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitNormal {
    pub n: Vector2<f64>,
    pub side: NormalSide,
}

/// The four curvature values reported for a sphere point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureSet {
    pub kn_inner: f64,
    pub kn_outer: f64,
    pub k_finsler: f64,
    pub k_rund: f64,
}

/// `c″ + Θ(c, c′) c′`.
pub fn covariant_accel_t(curve: &BoundaryCurve, cp: &CurvePointData) -> Result<Vector2<f64>> {
    let th = theta(curve, &cp.velocity())?;
    Ok(cp.c_second + cp.c_prime * th)
}

fn accel_with(
    cp: &CurvePointData,
    th: f64,
    g: &MetricTensor,
) -> Acceleration {
    let nab = cp.c_second + cp.c_prime * th;
    let k = th - g.form(&nab, &cp.c_prime) / (th * th);
    Acceleration {
        nabla: (cp.c_second + cp.c_prime * k) / (th * th),
    }
}

/// Arc-length acceleration
/// `[c″ + c′(Θ − g_{c′}(∇_{c′}c′, c′)/Θ²)] / Θ²`.
pub fn covariant_accel_arclength(curve: &BoundaryCurve, cp: &CurvePointData) -> Result<Acceleration> {
    let pv = cp.velocity();
    let g = metric_tensor(curve, &pv)?;
    let th = theta(curve, &pv)?;
    Ok(accel_with(cp, th, &g))
}

/// The two Funk-unit vectors `n` at `x` with `g_n(T, n) = 0`, labelled by
/// whether they lie on the same side of the line through `T` as `inward`.
pub fn unit_normals(
    curve: &BoundaryCurve,
    x: &Vector2<f64>,
    tangent: &Vector2<f64>,
    inward: &Vector2<f64>,
) -> Result<(UnitNormal, UnitNormal)> {
    if tangent.norm() == 0.0 {
        return Err(FunkError::ZeroDirection);
    }
    let dir = |a: f64| Vector2::new(a.cos(), a.sin());
    let h = |a: f64| -> Result<f64> {
        let n = dir(a);
        Ok(metric_tensor(curve, &PointedVector::new(*x, n))?.form(tangent, &n))
    };
    let step = TAU / NORMAL_GRID as f64;
    let mut roots = Vec::with_capacity(2);
    let mut a0 = 0.0;
    let mut h0 = h(a0)?;
    for i in 1..=NORMAL_GRID {
        let a1 = step * i as f64;
        let h1 = h(a1)?;
        if h0 == 0.0 {
            roots.push(a0);
        } else if h0 * h1 < 0.0 {
            roots.push(bisect(&h, a0, a1, h0)?);
        }
        a0 = a1;
        h0 = h1;
    }
    let mut normals: Vec<UnitNormal> = Vec::with_capacity(2);
    for a in roots {
        let n = dir(a);
        let th = theta(curve, &PointedVector::new(*x, n))?;
        let n = n / th;
        // the two normals lie on opposite sides of the line through T
        let side = if cross(tangent, &n) * cross(tangent, inward) > 0.0 {
            NormalSide::Inner
        } else {
            NormalSide::Outer
        };
        normals.push(UnitNormal { n, side });
    }
    let inner = normals.iter().find(|n| n.side == NormalSide::Inner);
    let outer = normals.iter().find(|n| n.side == NormalSide::Outer);
    match (inner, outer, normals.len()) {
        (Some(i), Some(o), 2) => Ok((*i, *o)),
        _ => Err(FunkError::NormalSolveFailed),
    }
}

fn cross(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

fn bisect(h: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut h_lo: f64) -> Result<f64> {
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let hm = h(mid)?;
        if hm == 0.0 {
            return Ok(mid);
        }
        if (hm < 0.0) == (h_lo < 0.0) {
            lo = mid;
            h_lo = hm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `k_n = g_n(c″, n) / Θ(c, c′)²`.
pub fn normal_curvature(curve: &BoundaryCurve, cp: &CurvePointData, n: &UnitNormal) -> Result<f64> {
    let th = theta(curve, &cp.velocity())?;
    let g = metric_tensor(curve, &PointedVector::new(cp.c, n.n))?;
    Ok(g.form(&cp.c_second, &n.n) / (th * th))
}

/// `k_F = sqrt(g_ċ(∇ċ, ∇ċ))`.
pub fn finsler_curvature(curve: &BoundaryCurve, cp: &CurvePointData) -> Result<f64> {
    let pv = cp.velocity();
    let g = metric_tensor(curve, &pv)?;
    let th = theta(curve, &pv)?;
    let acc = accel_with(cp, th, &g);
    Ok(g.form(&acc.nabla, &acc.nabla).max(0.0).sqrt())
}

fn is_zero_acceleration(acc: &Acceleration, cp: &CurvePointData, th: f64) -> bool {
    // Θ(c, c′)/|c′| is the inverse distance to the boundary along c′
    let scale = th / cp.c_prime.norm();
    acc.nabla.norm() < 1e-12 * scale
}

/// `k_R = Θ(c, ∇ċ)`, zero along geodesics.
pub fn rund_curvature(curve: &BoundaryCurve, cp: &CurvePointData) -> Result<f64> {
    let pv = cp.velocity();
    let th = theta(curve, &pv)?;
    let acc = accel_with(cp, th, &metric_tensor(curve, &pv)?);
    if is_zero_acceleration(&acc, cp, th) {
        return Ok(0.0);
    }
    theta(curve, &PointedVector::new(cp.c, acc.nabla))
}

/// `sqrt(g_{∇ċ}(∇ċ, ∇ċ))`, the quadratic-form definition of `k_R`.
pub fn rund_curvature_quadratic(curve: &BoundaryCurve, cp: &CurvePointData) -> Result<f64> {
    let pv = cp.velocity();
    let th = theta(curve, &pv)?;
    let acc = accel_with(cp, th, &metric_tensor(curve, &pv)?);
    if is_zero_acceleration(&acc, cp, th) {
        return Ok(0.0);
    }
    let g = metric_tensor(curve, &PointedVector::new(cp.c, acc.nabla))?;
    Ok(g.form(&acc.nabla, &acc.nabla).max(0.0).sqrt())
}

/// All four curvatures at a curve point; `inward` picks the inner normal.
pub fn curvature_set(
    curve: &BoundaryCurve,
    cp: &CurvePointData,
    inward: &Vector2<f64>,
) -> Result<CurvatureSet> {
    let pv = cp.velocity();
    let g = metric_tensor(curve, &pv)?;
    let th = theta(curve, &pv)?;
    let acc = accel_with(cp, th, &g);
    let k_finsler = g.form(&acc.nabla, &acc.nabla).max(0.0).sqrt();
    let k_rund = if is_zero_acceleration(&acc, cp, th) {
        0.0
    } else {
        theta(curve, &PointedVector::new(cp.c, acc.nabla))?
    };
    let (inner, outer) = unit_normals(curve, &cp.c, &cp.c_prime, inward)?;
    let kn = |n: &UnitNormal| -> Result<f64> {
        let gn = metric_tensor(curve, &PointedVector::new(cp.c, n.n))?;
        Ok(gn.form(&cp.c_second, &n.n) / (th * th))
    };
    Ok(CurvatureSet {
        kn_inner: kn(&inner)?,
        kn_outer: kn(&outer)?,
        k_finsler,
        k_rund,
    })
}
