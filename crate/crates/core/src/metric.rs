//! The Funk metric `Θ(x, y) = 1/t` where `x + t y` is the boundary hit,
//! its base-point derivatives, the asymmetric distance, the Hilbert
//! symmetrization and the fundamental tensor.

use nalgebra::{Matrix2, SymmetricEigen, Vector2};
use serde::Serialize;

use crate::domain::BoundaryCurve;
use crate::error::{FunkError, Result};

/// A base point together with a nonzero tangent vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointedVector {
    pub x: Vector2<f64>,
    pub y: Vector2<f64>,
}

impl PointedVector {
    pub fn new(x: Vector2<f64>, y: Vector2<f64>) -> Self {
        Self { x, y }
    }

    pub fn from_coords(x1: f64, x2: f64, y1: f64, y2: f64) -> Self {
        Self::new(Vector2::new(x1, x2), Vector2::new(y1, y2))
    }
}

/// `Θ` with its gradient and Hessian in the base point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricJet {
    pub theta: f64,
    pub dtheta_dx: Vector2<f64>,
    pub d2theta_dx2: Matrix2<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricTensor {
    pub g: Matrix2<f64>,
}

impl MetricTensor {
    pub fn form(&self, u: &Vector2<f64>, v: &Vector2<f64>) -> f64 {
        let g = &self.g;
        g[(0, 0)] * (u.x * v.x) + g[(0, 1)] * (u.x * v.y + u.y * v.x) + g[(1, 1)] * (u.y * v.y)
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        let e = SymmetricEigen::new(self.g).eigenvalues;
        [e[0].min(e[1]), e[0].max(e[1])]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues()[0] > 0.0
    }
}

/// Which derivative path produced a [`MetricJet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativePath {
    Implicit,
    FiniteDifference,
}

/// Threshold on the normal component of the direction at the hit point.
pub const TANGENCY_EPS: f64 = 1e-10;

pub fn theta(curve: &BoundaryCurve, pv: &PointedVector) -> Result<f64> {
    Ok(1.0 / curve.ray_intersect(&pv.x, &pv.y)?.t)
}

/// Closed form of the Funk metric of the unit disk:
/// `(sqrt(|y|² − (|x|²|y|² − ⟨x,y⟩²)) + ⟨x,y⟩) / (1 − |x|²)`.
pub fn theta_randers_disk(x: &Vector2<f64>, y: &Vector2<f64>) -> Result<f64> {
    let xx = x.norm_squared();
    if !(xx < 1.0) {
        return Err(FunkError::OutsideDisk);
    }
    let yy = y.norm_squared();
    if yy == 0.0 {
        return Err(FunkError::ZeroDirection);
    }
    let xy = x.dot(y);
    // |x|²|y|² − ⟨x,y⟩² = (x × y)², which avoids cancellation
    let cross = x.x * y.y - x.y * y.x;
    let root = (yy - cross * cross).sqrt();
    // rationalize when ⟨x,y⟩ < 0 so that both branches are stable
    if xy >= 0.0 {
        Ok((root + xy) / (1.0 - xx))
    } else {
        Ok(yy / (root - xy))
    }
}

/// Funk distance `ln(|p − r| / |q − r|)` with `r` the boundary hit of the
/// ray from `p` through `q`.
pub fn funk_distance(curve: &BoundaryCurve, p: &Vector2<f64>, q: &Vector2<f64>) -> Result<f64> {
    let v = q - p;
    if v.norm() < 1e-13 {
        if !curve.contains(p) {
            return Err(FunkError::NotInterior(p.x, p.y));
        }
        return Ok(0.0);
    }
    if !curve.contains(q) {
        return Err(FunkError::NotInterior(q.x, q.y));
    }
    // r = q + s v; the ratio ‖p − r‖/‖q − r‖ is (1 + s)/s. Solving from q
    // keeps s accurate when q is close to the boundary.
    let s = curve.ray_intersect(q, &v)?.t;
    Ok(s.recip().ln_1p())
}

pub fn hilbert_metric(curve: &BoundaryCurve, pv: &PointedVector) -> Result<f64> {
    let back = PointedVector::new(pv.x, -pv.y);
    Ok(0.5 * (theta(curve, pv)? + theta(curve, &back)?))
}

/// Derivatives of the hit parameter `t` in the base point, from the
/// boundary graph at the hit point.
fn t_derivatives(curve: &BoundaryCurve, pv: &PointedVector) -> Result<(f64, Vector2<f64>, Matrix2<f64>)> {
    let hit = curve.ray_intersect(&pv.x, &pv.y)?;
    let (tangent, normal, kappa) = curve.local_frame_at_theta(hit.theta);
    let rot = Matrix2::new(tangent.x, tangent.y, normal.x, normal.y);
    let y = rot * pv.y;
    if y.y.abs() < TANGENCY_EPS * pv.y.norm() {
        return Err(FunkError::NearTangency { denom: y.y.abs() });
    }
    let grad = Vector2::new(0.0, -1.0 / y.y);
    let y2 = y.y;
    let h = Matrix2::new(
        kappa / y2,
        -kappa * y.x / (y2 * y2),
        -kappa * y.x / (y2 * y2),
        kappa * y.x * y.x / (y2 * y2 * y2),
    );
    Ok((hit.t, rot.transpose() * grad, rot.transpose() * h * rot))
}

/// `Θ`, `Θ_x` and `Θ_xx` through implicit differentiation of the boundary
/// equation at the hit point.
pub fn theta_x_jets(curve: &BoundaryCurve, pv: &PointedVector) -> Result<MetricJet> {
    let (t, tx, txx) = t_derivatives(curve, pv)?;
    let th = 1.0 / t;
    Ok(MetricJet {
        theta: th,
        dtheta_dx: -tx * th * th,
        d2theta_dx2: tx * tx.transpose() * (2.0 * th * th * th) - txx * (th * th),
    })
}

/// Central finite differences of `Θ` in the base point.
pub fn theta_x_jets_fd(curve: &BoundaryCurve, pv: &PointedVector) -> Result<MetricJet> {
    let t0 = curve.ray_intersect(&pv.x, &pv.y)?.t;
    // keep the stencil inside: the gap to the boundary bounds the step
    let scale = (t0 * pv.y.norm()).min(1.0);
    let h1 = 1e-8f64.cbrt() * scale * 0.1;
    let h2 = 1e-8f64.powf(0.25) * scale * 0.1;
    let f = |dx: Vector2<f64>| theta(curve, &PointedVector::new(pv.x + dx, pv.y));
    let e = [Vector2::new(1.0, 0.0), Vector2::new(0.0, 1.0)];
    let th = 1.0 / t0;
    let mut grad = Vector2::zeros();
    for k in 0..2 {
        grad[k] = (f(e[k] * h1)? - f(-e[k] * h1)?) / (2.0 * h1);
    }
    let mut hess = Matrix2::zeros();
    for k in 0..2 {
        hess[(k, k)] = (f(e[k] * h2)? - 2.0 * th + f(-e[k] * h2)?) / (h2 * h2);
    }
    let mixed = (f((e[0] + e[1]) * h2)? - f((e[0] - e[1]) * h2)? - f((e[1] - e[0]) * h2)?
        + f(-(e[0] + e[1]) * h2)?)
        / (4.0 * h2 * h2);
    hess[(0, 1)] = mixed;
    hess[(1, 0)] = mixed;
    Ok(MetricJet {
        theta: th,
        dtheta_dx: grad,
        d2theta_dx2: hess,
    })
}

/// `Θ_y` by central differences in the direction.
pub fn theta_y_fd(curve: &BoundaryCurve, pv: &PointedVector) -> Result<Vector2<f64>> {
    let h = 1e-6 * pv.y.norm();
    let f = |dy: Vector2<f64>| theta(curve, &PointedVector::new(pv.x, pv.y + dy));
    let mut out = Vector2::zeros();
    for k in 0..2 {
        let mut e = Vector2::zeros();
        e[k] = h;
        out[k] = (f(e)? - f(-e)?) / (2.0 * h);
    }
    Ok(out)
}

/// `Θ_x − Θ Θ_y`, which vanishes for Funk metrics.
pub fn okada_residual(curve: &BoundaryCurve, pv: &PointedVector) -> Result<Vector2<f64>> {
    let jet = theta_x_jets(curve, pv)?;
    let ty = theta_y_fd(curve, pv)?;
    Ok(jet.dtheta_dx - ty * jet.theta)
}

/// Fundamental tensor from the base-point jets of `Θ`:
/// `g = (Θ_xx Θ − 2 Θ_x Θ_xᵀ)/Θ² + Θ_x Θ_xᵀ/Θ²`.
pub fn tensor_from_jet(jet: &MetricJet) -> MetricTensor {
    let th = jet.theta;
    let outer = jet.dtheta_dx * jet.dtheta_dx.transpose();
    let g = (jet.d2theta_dx2 * th - outer * 2.0) / (th * th) + outer / (th * th);
    MetricTensor {
        g: (g + g.transpose()) * 0.5,
    }
}

pub fn metric_tensor(curve: &BoundaryCurve, pv: &PointedVector) -> Result<MetricTensor> {
    Ok(tensor_from_jet(&theta_x_jets(curve, pv)?))
}

/// `g_y(u, v)`.
pub fn fundamental_form(
    curve: &BoundaryCurve,
    pv: &PointedVector,
    u: &Vector2<f64>,
    v: &Vector2<f64>,
) -> Result<f64> {
    Ok(metric_tensor(curve, pv)?.form(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Shape;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(a: f64, b: f64) -> Vector2<f64> {
        Vector2::new(a, b)
    }

    fn random_pv(rng: &mut ChaCha8Rng, r: f64) -> PointedVector {
        let rad = r * rng.gen::<f64>().sqrt();
        let a = rng.gen_range(0.0..std::f64::consts::TAU);
        let b = rng.gen_range(0.0..std::f64::consts::TAU);
        PointedVector::new(v(rad * a.cos(), rad * a.sin()), v(b.cos(), b.sin()) * rng.gen_range(0.2..3.0))
    }

    #[test]
    fn disk_values() {
        let d = BoundaryCurve::unit_disk();
        assert_relative_eq!(theta(&d, &PointedVector::from_coords(0.0, 0.0, 0.3, -0.4)).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(theta(&d, &PointedVector::from_coords(0.5, 0.0, 1.0, 0.0)).unwrap(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(theta_randers_disk(&v(0.5, 0.0), &v(1.0, 0.0)).unwrap(), 2.0, epsilon = 1e-15);
        assert_relative_eq!(
            theta_randers_disk(&v(0.5, 0.0), &v(0.0, 1.0)).unwrap(),
            2.0 / 3f64.sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(theta_randers_disk(&v(1.0, 0.0), &v(0.0, 1.0)), Err(FunkError::OutsideDisk));
    }

    #[test]
    fn randers_oracle_on_random_samples() {
        let d = BoundaryCurve::unit_disk();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let pv = random_pv(&mut rng, 0.999);
            let a = theta(&d, &pv).unwrap();
            let b = theta_randers_disk(&pv.x, &pv.y).unwrap();
            assert!((a - b).abs() / b < 1e-10, "{pv:?} {a} {b}");
        }
    }

    #[test]
    fn homogeneity_in_direction() {
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, v(0.2, 0.1)).unwrap();
        let pv = PointedVector::from_coords(0.4, -0.3, 0.7, 0.2);
        let t = theta(&e, &pv).unwrap();
        for l in [0.5, 2.0, 10.0] {
            let s = theta(&e, &PointedVector::new(pv.x, pv.y * l)).unwrap();
            assert_relative_eq!(s, l * t, max_relative = 1e-12);
        }
    }

    #[test]
    fn distance_examples() {
        let d = BoundaryCurve::unit_disk();
        assert_relative_eq!(funk_distance(&d, &v(0.0, 0.0), &v(0.5, 0.0)).unwrap(), 2f64.ln(), epsilon = 1e-14);
        assert_relative_eq!(funk_distance(&d, &v(0.5, 0.0), &v(0.0, 0.0)).unwrap(), 1.5f64.ln(), epsilon = 1e-14);
        assert_eq!(funk_distance(&d, &v(0.2, 0.1), &v(0.2, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn hilbert_examples() {
        let d = BoundaryCurve::unit_disk();
        assert_relative_eq!(hilbert_metric(&d, &PointedVector::from_coords(0.0, 0.0, 0.6, 0.8)).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            hilbert_metric(&d, &PointedVector::from_coords(0.5, 0.0, 1.0, 0.0)).unwrap(),
            4.0 / 3.0,
            epsilon = 1e-14
        );
        let pv = PointedVector::from_coords(0.1, 0.3, -0.2, 0.5);
        let back = PointedVector::new(pv.x, -pv.y);
        assert_eq!(hilbert_metric(&d, &pv).unwrap(), hilbert_metric(&d, &back).unwrap());
    }

    #[test]
    fn implicit_and_finite_difference_jets_agree() {
        let d = BoundaryCurve::unit_disk();
        let f = BoundaryCurve::new(
            Shape::FourierRadial { cos: vec![1.0, 0.0, 0.0, 0.05], sin: vec![0.0, 0.0, 0.03] },
            v(0.1, -0.05),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for curve in [&d, &f] {
            for _ in 0..200 {
                let pv = random_pv(&mut rng, 0.7);
                let a = theta_x_jets(curve, &pv).unwrap();
                let b = theta_x_jets_fd(curve, &pv).unwrap();
                let gs = a.dtheta_dx.norm().max(a.theta);
                assert!((a.dtheta_dx - b.dtheta_dx).norm() / gs < 1e-6, "{pv:?}");
                let hs = a.d2theta_dx2.norm().max(a.theta);
                assert!((a.d2theta_dx2 - b.d2theta_dx2).norm() / hs < 1e-4, "{pv:?}");
            }
        }
    }

    #[test]
    fn derivatives_in_a_normalized_frame() {
        // normalized unit disk: x̂₁ = √2 x₁, x̂₂ = 1 − x₂; boundary point 0, H = 2
        let d = BoundaryCurve::unit_disk();
        let n = crate::normalization::normalize(&d, -std::f64::consts::FRAC_PI_2).unwrap();
        let hat = n.normalized_domain(&d).unwrap();
        for x2 in [0.3, 0.05, 1e-3] {
            let down = theta_x_jets(&hat, &PointedVector::from_coords(0.0, x2, 0.0, -1.0)).unwrap();
            // Θ(0, x₂, 0, −1) = 1/x₂ decreases as x₂ grows
            assert_relative_eq!(down.dtheta_dx[1], -1.0 / (x2 * x2), max_relative = 1e-9);
            assert_relative_eq!(down.d2theta_dx2[(1, 1)], 2.0 / (x2 * x2 * x2), max_relative = 1e-9);
            let up = theta_x_jets(&hat, &PointedVector::from_coords(0.0, x2, 0.0, 1.0)).unwrap();
            let h = n.chord_length;
            assert_relative_eq!(up.dtheta_dx[1], 1.0 / ((h - x2) * (h - x2)), max_relative = 1e-9);
            let g = metric_tensor(&hat, &PointedVector::from_coords(0.0, x2, 0.0, -1.0)).unwrap();
            assert_relative_eq!(g.g[(1, 1)], 1.0 / (x2 * x2), max_relative = 1e-9);
            assert!(g.g[(0, 1)].abs() < 1e-9 * g.g[(1, 1)]);
            let g = metric_tensor(&hat, &PointedVector::from_coords(0.0, x2, 0.0, 1.0)).unwrap();
            assert_relative_eq!(g.g[(1, 1)], 1.0 / ((h - x2) * (h - x2)), max_relative = 1e-9);
        }
    }

    #[test]
    fn okada_identity_at_the_disk_center() {
        let d = BoundaryCurve::unit_disk();
        let pv = PointedVector::from_coords(0.0, 0.0, 1.0, 0.0);
        // Θ = |y| at x = 0, Θ_y = (1, 0), and Θ_x = (1, 0) from the closed form
        let jet = theta_x_jets(&d, &pv).unwrap();
        assert_relative_eq!(jet.dtheta_dx, v(1.0, 0.0), epsilon = 1e-12);
        let r = okada_residual(&d, &pv).unwrap();
        assert!(r.norm() < 1e-8);
    }

    #[test]
    fn tensor_is_positive_and_homogeneous() {
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, v(0.0, 0.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let pv = random_pv(&mut rng, 0.9);
            let g = metric_tensor(&e, &pv).unwrap();
            assert!(g.is_positive_definite());
            let th = theta(&e, &pv).unwrap();
            assert_relative_eq!(g.form(&pv.y, &pv.y), th * th, max_relative = 1e-8);
            let (a, b) = (v(0.3, -1.2), v(2.0, 0.7));
            assert_relative_eq!(g.form(&(a * 2.0), &b), 2.0 * g.form(&a, &b), max_relative = 1e-12);
            assert_eq!(g.form(&a, &b), g.form(&b, &a));
        }
    }

    #[test]
    fn near_tangency_is_reported() {
        let d = BoundaryCurve::unit_disk();
        // a chord hugging the boundary near (0, 1): direction nearly tangent at the hit
        let pv = PointedVector::from_coords(0.0, 1.0 - 1e-13, 1.0, 0.0);
        match theta_x_jets(&d, &pv) {
            Err(FunkError::NearTangency { .. }) | Err(FunkError::NotInterior(..)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
