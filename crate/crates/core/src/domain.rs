//! Strictly convex planar domains described by a radial function.
//!
//! A [`Shape`] is a closed curve given in its own natural frame by a polar
//! function `ρ(θ)` about its natural centre. A [`BoundaryCurve`] places a shape
//! in working coordinates through an affine frame and fixes a distinguished
//! interior base point `o`; the radial function `ω(φ)` of the boundary as seen
//! from `o` and all its derivatives are derived from `ρ` by jet algebra.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::affine::Affine2;
use crate::dd::{Dd, DdVec};
use crate::error::{FunkError, Result};
use crate::jet::{Jet, Jet2};

/// Number of samples used for validation and domain statistics.
pub const SAMPLES: usize = 4096;
/// Smallest admissible boundary curvature.
pub const KAPPA_MIN: f64 = 1e-3;
/// Points closer than this (in the natural frame) to the boundary are rejected.
pub const INTERIOR_MARGIN: f64 = 1e-12;
/// Highest Fourier harmonic accepted for radial shapes.
pub const MAX_HARMONIC: usize = 8;

/// Boundary representation in its natural frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    /// Circle of the given radius about the origin.
    Disk { radius: f64 },
    /// Axis-aligned ellipse with semi-axes `a` (along x) and `b` (along y).
    Ellipse { a: f64, b: f64 },
    /// `ρ(θ) = cos[0] + Σ_k cos[k] cos kθ + sin[k] sin kθ`.
    FourierRadial { cos: Vec<f64>, sin: Vec<f64> },
}

impl Shape {
    pub fn unit_disk() -> Self {
        Shape::Disk { radius: 1.0 }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(FunkError::InvalidShape(m.to_string()));
        match self {
            Shape::Disk { radius } if !(radius.is_finite() && *radius > 0.0) => {
                bad("disk radius must be positive")
            }
            Shape::Ellipse { a, b } if !(a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0) => {
                bad("ellipse semi-axes must be positive")
            }
            Shape::FourierRadial { cos, sin } => {
                if cos.is_empty() {
                    return bad("fourier shape needs a constant term");
                }
                if cos.len() > MAX_HARMONIC + 1 || sin.len() > MAX_HARMONIC + 1 {
                    return bad("fourier harmonics above 8 are not supported");
                }
                if cos.iter().chain(sin).any(|v| !v.is_finite()) {
                    return bad("fourier coefficients must be finite");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Jet of the natural radial function `ρ` composed with `theta`.
    pub fn rho_jet<const N: usize>(&self, theta: Jet<N>) -> Jet<N> {
        match self {
            Shape::Disk { radius } => Jet::constant(*radius),
            Shape::Ellipse { a, b } => {
                let (s, c) = theta.sin_cos();
                let q = c * c * (b * b) + s * s * (a * a);
                q.sqrt().recip() * (a * b)
            }
            Shape::FourierRadial { cos, sin } => {
                let mut acc = Jet::constant(cos[0]);
                let n = cos.len().max(sin.len());
                for k in 1..n {
                    let (sk, ck) = theta.scale(k as f64).sin_cos();
                    if let Some(&a) = cos.get(k) {
                        acc = acc + ck * a;
                    }
                    if let Some(&b) = sin.get(k) {
                        acc = acc + sk * b;
                    }
                }
                acc
            }
        }
    }

    /// `(ρ, ρ')` at `theta`.
    pub fn rho_d(&self, theta: f64) -> (f64, f64) {
        match self {
            Shape::Disk { radius } => (*radius, 0.0),
            Shape::Ellipse { a, b } => {
                let (s, c) = theta.sin_cos();
                let q = b * b * c * c + a * a * s * s;
                let rho = a * b / q.sqrt();
                let dq = 2.0 * (a * a - b * b) * s * c;
                (rho, -0.5 * rho * dq / q)
            }
            Shape::FourierRadial { cos, sin } => {
                let mut r = cos[0];
                let mut dr = 0.0;
                let n = cos.len().max(sin.len());
                for k in 1..n {
                    let kf = k as f64;
                    let (sk, ck) = (kf * theta).sin_cos();
                    let a = cos.get(k).copied().unwrap_or(0.0);
                    let b = sin.get(k).copied().unwrap_or(0.0);
                    r += a * ck + b * sk;
                    dr += kf * (b * ck - a * sk);
                }
                (r, dr)
            }
        }
    }

    /// Derivatives `ρ(θ), ρ'(θ), ..., ρ^(order)(θ)` about the natural centre.
    pub fn radial_jet(&self, theta: f64, order: usize) -> Vec<f64> {
        let d = self.rho_jet::<5>(Jet::variable(theta)).derivatives();
        d[..=order.min(4)].to_vec()
    }

    /// Boundary point jet in the natural frame.
    pub fn point_jet<const N: usize>(&self, theta: Jet<N>) -> Jet2<N> {
        let rho = self.rho_jet(theta);
        let (s, c) = theta.sin_cos();
        Jet2::new(rho * c, rho * s)
    }

    /// Signed level function: negative inside, zero on the boundary.
    fn level(&self, w: &Vector2<f64>) -> f64 {
        match self {
            Shape::Disk { radius } => w.norm() - radius,
            _ => w.norm() - self.rho_d(w.y.atan2(w.x)).0,
        }
    }

    /// The level function in double-double arithmetic.
    fn level_dd(&self, w: &DdVec) -> Dd {
        let n = w.norm();
        match self {
            Shape::Disk { radius } => n + (-radius),
            Shape::Ellipse { a, b } => {
                // ρ(θ)/|w| = ab / sqrt(b²x² + a²y²)
                let q = (w.x * *b).sqr() + (w.y * *a).sqr();
                n - n * Dd::prod(*a, *b) / q.sqrt()
            }
            Shape::FourierRadial { cos, sin } => {
                let (s1, c1) = Dd::atan2(w.y, w.x).sin_cos();
                let mut r = Dd::from_f64(cos[0]);
                let (mut s_prev, mut c_prev) = (Dd::ZERO, Dd::from_f64(1.0));
                let (mut sk, mut ck) = (s1, c1);
                let two_c1 = c1 * 2.0;
                for k in 1..cos.len().max(sin.len()) {
                    let a = cos.get(k).copied().unwrap_or(0.0);
                    let b = sin.get(k).copied().unwrap_or(0.0);
                    r = r + ck * a + sk * b;
                    let (s_next, c_next) = (two_c1 * sk - s_prev, two_c1 * ck - c_prev);
                    (s_prev, c_prev, sk, ck) = (sk, ck, s_next, c_next);
                }
                n - r
            }
        }
    }

    /// Derivative of the level function along direction `v` at `w`.
    fn level_slope(&self, w: &Vector2<f64>, v: &Vector2<f64>) -> f64 {
        let n = w.norm();
        if n == 0.0 {
            return 0.0;
        }
        let radial = w.dot(v) / n;
        match self {
            Shape::Disk { .. } => radial,
            _ => {
                let (_, drho) = self.rho_d(w.y.atan2(w.x));
                radial - drho * (w.x * v.y - w.y * v.x) / (n * n)
            }
        }
    }

    /// Curvature of the natural curve at parameter `theta`.
    pub fn curvature(&self, theta: f64) -> f64 {
        let d = self.rho_jet::<3>(Jet::variable(theta)).derivatives();
        polar_curvature(d[0], d[1], d[2])
    }
}

/// Curvature of a polar curve from `(ω, ω', ω'')`.
pub fn polar_curvature(w: f64, w1: f64, w2: f64) -> f64 {
    (w * w + 2.0 * w1 * w1 - w * w2) / (w * w + w1 * w1).powf(1.5)
}

/// A boundary hit of a ray `x + t y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayHit {
    pub t: f64,
    /// Part of the hit parameter below the resolution of `t`.
    pub t_lo: f64,
    pub point: Vector2<f64>,
    /// Polar angle of the hit as seen from the base point.
    pub phi: f64,
    /// Natural parameter of the hit on the shape.
    pub theta: f64,
}

/// Global constants of a domain relative to its base point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DomainStats {
    pub omega_min: f64,
    pub omega_max: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub dissymmetry: f64,
}

#[derive(Clone, Debug)]
pub struct BoundaryCurve {
    shape: Shape,
    frame: Affine2,
    frame_inv: Affine2,
    base_point: Vector2<f64>,
    rho_max: f64,
    stats: DomainStats,
}

impl BoundaryCurve {
    /// Places `shape` at the origin with base point `o = base_point_offset`.
    pub fn new(shape: Shape, base_point_offset: Vector2<f64>) -> Result<Self> {
        shape.check()?;
        validate_convex(&shape)?;
        Self::assemble(shape, Affine2::identity(), base_point_offset)
    }

    pub fn unit_disk() -> Self {
        Self::new(Shape::unit_disk(), Vector2::zeros()).expect("unit disk is valid")
    }

    /// Image of this domain under an invertible affine map.
    pub fn affine_image(&self, map: &Affine2) -> Result<Self> {
        let frame = map.compose(&self.frame);
        Self::assemble(self.shape.clone(), frame, map.apply(&self.base_point))
    }

    /// Same domain with a different base point (working coordinates).
    pub fn with_base_point(&self, o: Vector2<f64>) -> Result<Self> {
        Self::assemble(self.shape.clone(), self.frame, o)
    }

    fn assemble(shape: Shape, frame: Affine2, base_point: Vector2<f64>) -> Result<Self> {
        let frame_inv = frame
            .inverse()
            .ok_or_else(|| FunkError::InvalidShape("singular frame".into()))?;
        let rho_max = (0..SAMPLES)
            .map(|i| shape.rho_d(TAU * i as f64 / SAMPLES as f64).0)
            .fold(f64::MIN, f64::max)
            * 1.01;
        let mut curve = Self {
            shape,
            frame,
            frame_inv,
            base_point,
            rho_max,
            stats: DomainStats {
                omega_min: 0.0,
                omega_max: 0.0,
                k_min: 0.0,
                k_max: 0.0,
                dissymmetry: 1.0,
            },
        };
        let w = curve.frame_inv.apply(&base_point);
        if curve.shape.level(&w) > -INTERIOR_MARGIN {
            return Err(FunkError::NotInterior(base_point.x, base_point.y));
        }
        curve.stats = curve.compute_stats()?;
        Ok(curve)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn frame(&self) -> &Affine2 {
        &self.frame
    }

    pub fn base_point(&self) -> Vector2<f64> {
        self.base_point
    }

    pub fn stats(&self) -> &DomainStats {
        &self.stats
    }

    /// Whether `x` is strictly inside (beyond the interior margin).
    pub fn contains(&self, x: &Vector2<f64>) -> bool {
        self.shape.level(&self.frame_inv.apply(x)) < -INTERIOR_MARGIN
    }

    /// Boundary point jet in working coordinates, parametrized by the
    /// natural angle.
    pub fn point_jet<const N: usize>(&self, theta: Jet<N>) -> Jet2<N> {
        self.shape
            .point_jet(theta)
            .map(&self.frame.m, &self.frame.b)
    }

    pub fn point_at_theta(&self, theta: f64) -> Vector2<f64> {
        let rho = self.shape.rho_d(theta).0;
        self.frame
            .apply(&Vector2::new(rho * theta.cos(), rho * theta.sin()))
    }

    /// Whether the natural parametrization runs counter-clockwise in
    /// working coordinates.
    pub fn is_ccw(&self) -> bool {
        self.frame.determinant() > 0.0
    }

    /// Intersection of the ray `x + t y`, `t > 0`, with the boundary.
    pub fn ray_intersect(&self, x: &Vector2<f64>, y: &Vector2<f64>) -> Result<RayHit> {
        let ny = y.norm();
        if !(ny > 0.0) || !ny.is_finite() {
            return Err(FunkError::ZeroDirection);
        }
        let w0 = self.frame_inv.apply(x);
        let v = self.frame_inv.apply_vector(y);
        let g0 = self.shape.level(&w0);
        if !(g0 < -INTERIOR_MARGIN) {
            return Err(FunkError::NotInterior(x.x, x.y));
        }
        let g = |t: f64| self.shape.level(&(w0 + v * t));
        let vn = v.norm();
        let mut hi = (w0.norm() + self.rho_max) / vn;
        let mut g_hi = g(hi);
        let mut guard = 0;
        while g_hi <= 0.0 {
            hi *= 2.0;
            g_hi = g(hi);
            guard += 1;
            if guard > 60 {
                return Err(FunkError::NoConvergence {
                    what: "ray bracket",
                    iterations: guard,
                });
            }
        }
        let t = safeguarded_newton(
            &g,
            |t| self.shape.level_slope(&(w0 + v * t), &v),
            0.0,
            hi,
            g0,
        )?;
        // one Newton step on the exactly evaluated level function recovers
        // the digits lost when the hit is much closer than the coordinates
        let t = {
            let w0d = self.frame_inv.apply_dd(x);
            let (vx, vy) = self.frame_inv.apply_vector_dd(y);
            let td = Dd::from_f64(t);
            let w = DdVec::new(w0d.x + vx * td, w0d.y + vy * td);
            let slope = self.shape.level_slope(&(w0 + v * t), &v);
            if slope > 0.0 {
                Dd::sum(t, -self.shape.level_dd(&w).to_f64() / slope)
            } else {
                td
            }
        };
        let (t, t_lo) = (t.hi, t.lo);
        let point = x + y * t;
        let w = w0 + v * t;
        let rel = point - self.base_point;
        Ok(RayHit {
            t,
            t_lo,
            point,
            phi: rel.y.atan2(rel.x),
            theta: w.y.atan2(w.x),
        })
    }

    /// Radial function `ω(φ)` about the base point.
    pub fn omega(&self, phi: f64) -> f64 {
        let u = Vector2::new(phi.cos(), phi.sin());
        self.ray_intersect(&self.base_point, &u)
            .map(|h| h.t)
            .expect("base point is interior")
    }

    /// Jets of `ω` at `phi` together with the natural-angle jet `θ(φ)`.
    pub fn omega_jet<const N: usize>(&self, phi: f64) -> (Jet<N>, Jet<N>) {
        let u0 = Vector2::new(phi.cos(), phi.sin());
        let hit = self
            .ray_intersect(&self.base_point, &u0)
            .expect("base point is interior");
        let (s, c) = Jet::<N>::variable(phi).sin_cos();
        let u = Jet2::new(c, s);
        let o = self.base_point;
        let rel = |th: Jet<N>| {
            let p = self.point_jet(th);
            Jet2::new(p.x.add_scalar(-o.x), p.y.add_scalar(-o.y))
        };
        let d_theta = self.point_jet(Jet::<N>::variable(hit.theta)).derivative(1);
        let g_theta = d_theta.x * u0.y - d_theta.y * u0.x;
        let mut theta = Jet::<N>::constant(hit.theta);
        for _ in 0..N + 1 {
            let g = rel(theta).cross(&u);
            theta = theta - g.scale(1.0 / g_theta);
        }
        (rel(theta).dot(&u), theta)
    }

    /// `ω(φ), ω'(φ), ..., ω^(order)(φ)` for `order ≤ 4`.
    pub fn radial_jet(&self, phi: f64, order: usize) -> Vec<f64> {
        let d = self.omega_jet::<5>(phi).0.derivatives();
        d[..=order.min(4)].to_vec()
    }

    /// Euclidean curvature of the boundary at polar angle `phi`.
    pub fn boundary_curvature(&self, phi: f64) -> f64 {
        let d = self.omega_jet::<3>(phi).0.derivatives();
        polar_curvature(d[0], d[1], d[2])
    }

    /// Cosine of the angle between the outer normal and the radial
    /// direction from the base point.
    pub fn radial_normal_cosine(&self, phi: f64) -> f64 {
        let d = self.omega_jet::<2>(phi).0.derivatives();
        d[0] / (d[0] * d[0] + d[1] * d[1]).sqrt()
    }

    /// Boundary point at polar angle `phi` about the base point.
    pub fn boundary_point(&self, phi: f64) -> Vector2<f64> {
        self.base_point + Vector2::new(phi.cos(), phi.sin()) * self.omega(phi)
    }

    /// Coefficient of dissymmetry `max ω(φ)/ω(φ+π)`.
    pub fn dissymmetry(&self) -> f64 {
        self.stats.dissymmetry
    }

    /// Unit tangent (in the direction of increasing natural parameter),
    /// inner unit normal and curvature at natural parameter `theta`.
    pub fn local_frame_at_theta(&self, theta: f64) -> (Vector2<f64>, Vector2<f64>, f64) {
        let p = self.point_jet(Jet::<3>::variable(theta));
        let d1 = p.derivative(1);
        let d2 = p.derivative(2);
        let sign = if self.is_ccw() { 1.0 } else { -1.0 };
        let speed = d1.norm();
        let tangent = d1 / speed * sign;
        let normal = Vector2::new(-tangent.y, tangent.x);
        let kappa = sign * (d1.x * d2.y - d1.y * d2.x) / speed.powi(3);
        (tangent, normal, kappa)
    }

    fn compute_stats(&self) -> Result<DomainStats> {
        let n = SAMPLES;
        let h = TAU / n as f64;
        let mut omega = Vec::with_capacity(n);
        let mut k_min = f64::MAX;
        let mut k_max = f64::MIN;
        for i in 0..n {
            let phi = -PI + h * i as f64;
            let d = self.omega_jet::<3>(phi).0.derivatives();
            omega.push(d[0]);
            let k = polar_curvature(d[0], d[1], d[2]);
            k_min = k_min.min(k);
            k_max = k_max.max(k);
        }
        if !(k_min > 0.0) {
            return Err(FunkError::NonConvex {
                phi: 0.0,
                kappa: k_min,
            });
        }
        let phi_at = |i: usize| -PI + h * i as f64;
        let (imin, _) = argext(&omega, |a, b| a < b);
        let (imax, _) = argext(&omega, |a, b| a > b);
        let omega_min = golden_min(|p| self.omega(p), phi_at(imin) - h, phi_at(imin) + h);
        let omega_max = -golden_min(|p| -self.omega(p), phi_at(imax) - h, phi_at(imax) + h);
        let ratios: Vec<f64> = (0..n).map(|i| omega[i] / omega[(i + n / 2) % n]).collect();
        let (iratio, _) = argext(&ratios, |a, b| a > b);
        let ratio = |p: f64| self.omega(p) / self.omega(p + PI);
        let dissymmetry = -golden_min(|p| -ratio(p), phi_at(iratio) - h, phi_at(iratio) + h);
        Ok(DomainStats {
            omega_min: omega_min.min(omega[imin]),
            omega_max: omega_max.max(omega[imax]),
            k_min,
            k_max,
            dissymmetry: dissymmetry.max(ratios[iratio]),
        })
    }
}

fn argext(v: &[f64], better: impl Fn(f64, f64) -> bool) -> (usize, f64) {
    let mut best = (0, v[0]);
    for (i, &x) in v.iter().enumerate() {
        if better(x, best.1) {
            best = (i, x);
        }
    }
    best
}

/// Golden-section minimum value of `f` on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    fc.min(fd)
}

/// Root of `g` on `[lo, hi]` with `g(lo) < 0 < g(hi)`; Newton steps that
/// leave the bracket or stall fall back to bisection.
pub(crate) fn safeguarded_newton(
    g: &impl Fn(f64) -> f64,
    dg: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    g_lo: f64,
) -> Result<f64> {
    debug_assert!(g_lo < 0.0);
    let mut t = 0.5 * (lo + hi);
    let mut step_old = hi - lo;
    let mut step = step_old;
    let mut gt = g(t);
    for _ in 0..200 {
        if gt == 0.0 {
            return Ok(t);
        }
        if gt < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let d = dg(t);
        let newton_ok = d != 0.0 && {
            let cand = t - gt / d;
            cand > lo && cand < hi && (2.0 * gt).abs() < (step_old * d).abs()
        };
        step_old = step;
        if newton_ok {
            step = gt / d;
            t -= step;
        } else {
            step = 0.5 * (hi - lo);
            t = lo + step;
        }
        if step.abs() <= 4.0 * f64::EPSILON * t.abs().max(f64::MIN_POSITIVE)
            || hi - lo <= 4.0 * f64::EPSILON * t.abs()
        {
            return Ok(t);
        }
        gt = g(t);
    }
    Err(FunkError::NoConvergence {
        what: "ray intersection",
        iterations: 200,
    })
}

fn validate_convex(shape: &Shape) -> Result<()> {
    for i in 0..SAMPLES {
        let theta = TAU * i as f64 / SAMPLES as f64;
        let d = shape.rho_jet::<3>(Jet::variable(theta)).derivatives();
        if !(d[0] > 0.0) {
            return Err(FunkError::InvalidShape(format!(
                "radial function is not positive at angle {theta:.6}"
            )));
        }
        let kappa = polar_curvature(d[0], d[1], d[2]);
        if !(kappa >= KAPPA_MIN) {
            return Err(FunkError::NonConvex { phi: theta, kappa });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fourier(cos: &[f64], sin: &[f64]) -> Shape {
        Shape::FourierRadial {
            cos: cos.to_vec(),
            sin: sin.to_vec(),
        }
    }

    #[test]
    fn radial_jets_of_basic_shapes() {
        let d = Shape::unit_disk().radial_jet(0.3, 2);
        assert_eq!(d, vec![1.0, 0.0, 0.0]);
        let e = Shape::Ellipse { a: 2.0, b: 1.0 }.radial_jet(0.0, 0);
        assert_relative_eq!(e[0], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn fourier_jets_match_central_differences() {
        let s = fourier(&[1.0, 0.0, 0.0, 0.1], &[]);
        let d = s.radial_jet(0.0, 4);
        assert_relative_eq!(d[0], 1.1, epsilon = 1e-15);
        assert!(d[1].abs() < 1e-15);
        assert_relative_eq!(d[2], -0.9, epsilon = 1e-14);
        // finite-difference oracle at a generic angle
        let theta = 0.37;
        let h = 1e-3;
        let r = |t: f64| s.rho_d(t).0;
        let d = s.radial_jet(theta, 2);
        let fd1 = (r(theta - 2.0 * h) - 8.0 * r(theta - h) + 8.0 * r(theta + h) - r(theta + 2.0 * h))
            / (12.0 * h);
        let fd2 = (-r(theta - 2.0 * h) + 16.0 * r(theta - h) - 30.0 * r(theta) + 16.0 * r(theta + h)
            - r(theta + 2.0 * h))
            / (12.0 * h * h);
        assert_relative_eq!(d[1], fd1, epsilon = 1e-10);
        assert_relative_eq!(d[2], fd2, epsilon = 1e-7);
    }

    #[test]
    fn flat_spot_is_rejected() {
        let err = BoundaryCurve::new(fourier(&[1.0, 0.0, 0.0, 0.1], &[]), Vector2::zeros());
        assert!(matches!(err, Err(FunkError::NonConvex { .. })));
        let err = BoundaryCurve::new(fourier(&[1.0, 0.0, 0.0, 0.2], &[]), Vector2::zeros());
        assert!(matches!(err, Err(FunkError::NonConvex { .. })));
    }

    #[test]
    fn base_point_must_be_interior() {
        let err = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(1.0, 0.0));
        assert!(matches!(err, Err(FunkError::NotInterior(..))));
    }

    #[test]
    fn ray_hits_on_the_disk() {
        let d = BoundaryCurve::unit_disk();
        let h = d.ray_intersect(&Vector2::zeros(), &Vector2::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(h.t, 1.0, epsilon = 1e-15);
        let h = d
            .ray_intersect(&Vector2::new(0.5, 0.0), &Vector2::new(1.0, 0.0))
            .unwrap();
        assert_relative_eq!(h.t, 0.5, epsilon = 1e-15);
        assert!(matches!(
            d.ray_intersect(&Vector2::new(1.2, 0.0), &Vector2::new(1.0, 0.0)),
            Err(FunkError::NotInterior(..))
        ));
        assert!(matches!(
            d.ray_intersect(&Vector2::zeros(), &Vector2::zeros()),
            Err(FunkError::ZeroDirection)
        ));
    }

    #[test]
    fn fourier_radial_ray() {
        let c = BoundaryCurve::new(fourier(&[1.0, 0.0, 0.0, 0.05], &[]), Vector2::zeros()).unwrap();
        let h = c.ray_intersect(&Vector2::zeros(), &Vector2::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(h.t, 1.05, epsilon = 1e-14);
    }

    #[test]
    fn curvature_examples() {
        assert_relative_eq!(BoundaryCurve::unit_disk().boundary_curvature(0.4), 1.0, epsilon = 1e-13);
        // end of the major axis of x²/4 + y² = 1: a/b² = 2
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::zeros()).unwrap();
        assert_relative_eq!(e.boundary_curvature(0.0), 2.0, epsilon = 1e-12);
        // end of the minor axis: b/a² = 1/4
        assert_relative_eq!(e.boundary_curvature(PI / 2.0), 0.25, epsilon = 1e-12);
        let small = BoundaryCurve::new(fourier(&[0.5], &[]), Vector2::zeros()).unwrap();
        assert_relative_eq!(small.boundary_curvature(1.0), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn off_center_disk_radial_function() {
        let d = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(d.omega(0.0), 0.5, epsilon = 1e-14);
        assert_relative_eq!(d.omega(PI), 1.5, epsilon = 1e-14);
        assert_relative_eq!(d.dissymmetry(), 3.0, epsilon = 1e-9);
        // curvature is intrinsic: still 1 seen from an off-centre point
        assert_relative_eq!(d.boundary_curvature(1.1), 1.0, epsilon = 1e-10);
        // closed form of ω about (a, 0): -a cos φ + sqrt(1 - a² sin² φ)
        let phi = 0.8f64;
        let w = -0.5 * phi.cos() + (1.0 - 0.25 * phi.sin().powi(2)).sqrt();
        let jet = d.radial_jet(phi, 1);
        assert_relative_eq!(jet[0], w, epsilon = 1e-14);
        let dw = 0.5 * phi.sin()
            - 0.25 * phi.sin() * phi.cos() / (1.0 - 0.25 * phi.sin().powi(2)).sqrt();
        assert_relative_eq!(jet[1], dw, epsilon = 1e-12);
    }

    #[test]
    fn symmetric_domains_have_unit_dissymmetry() {
        assert_relative_eq!(BoundaryCurve::unit_disk().dissymmetry(), 1.0, epsilon = 1e-12);
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::zeros()).unwrap();
        assert_relative_eq!(e.dissymmetry(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn radial_normal_cosine_examples() {
        let d = BoundaryCurve::unit_disk();
        assert_relative_eq!(d.radial_normal_cosine(2.0), 1.0, epsilon = 1e-14);
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::zeros()).unwrap();
        let c = e.radial_normal_cosine(PI / 4.0);
        // independent oracle: normal from the implicit equation x²/4 + y² = 1
        let p = e.boundary_point(PI / 4.0);
        let n = Vector2::new(p.x / 4.0, p.y).normalize();
        assert_relative_eq!(c, n.dot(&p.normalize()), epsilon = 1e-12);
        assert!(c > 0.0 && c < 1.0);
    }

    #[test]
    fn stats_are_ordered() {
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::new(0.3, -0.2)).unwrap();
        let s = e.stats();
        assert!(0.0 < s.omega_min && s.omega_min <= s.omega_max);
        assert!(0.0 < s.k_min && s.k_min <= s.k_max);
        // sampled on the 4096-point grid, so only grid-accurate
        assert_relative_eq!(s.k_min, 0.25, epsilon = 1e-5);
        assert_relative_eq!(s.k_max, 2.0, epsilon = 1e-5);
        assert!(s.dissymmetry > 1.0);
    }
}
