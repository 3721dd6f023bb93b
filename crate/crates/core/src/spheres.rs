//! Forward and backward Funk spheres about the base point.
//!
//! The forward sphere of radius `r` has radial function
//! `ρ⁺(φ) = (1 − e^{−r}) ω(φ)` and the backward sphere
//! `ρ⁻(φ) = (e^r − 1) ω(φ + π)`. The backward point in direction `φ` is
//! interior iff `r < ln(1 + ω(φ)/ω(φ + π))`; the supremum over `φ` is
//! `ln(1 + C_U)`, beyond which no point of the backward sphere is left,
//! and the whole backward sphere is interior iff `r < ln(1 + 1/C_U)`.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvePointData;
use crate::dd::{Dd, DdVec};
use crate::domain::BoundaryCurve;
use crate::error::{FunkError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereSpec {
    pub radius: f64,
    pub orientation: Orientation,
}

impl SphereSpec {
    pub fn forward(radius: f64) -> Self {
        Self {
            radius,
            orientation: Orientation::Forward,
        }
    }

    pub fn backward(radius: f64) -> Self {
        Self {
            radius,
            orientation: Orientation::Backward,
        }
    }
}

/// A sphere point with derivatives in the polar angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpherePoint {
    pub phi: f64,
    pub rho: f64,
    pub c: Vector2<f64>,
    pub c_prime: Vector2<f64>,
    pub c_second: Vector2<f64>,
}

impl SpherePoint {
    pub fn curve_point(&self) -> CurvePointData {
        CurvePointData::new(self.c, self.c_prime, self.c_second)
    }
}

/// A sphere about the base point of `domain`.
#[derive(Clone, Copy, Debug)]
pub struct SphereCurve<'a> {
    pub domain: &'a BoundaryCurve,
    pub spec: SphereSpec,
}

impl<'a> SphereCurve<'a> {
    pub fn new(domain: &'a BoundaryCurve, spec: SphereSpec) -> Result<Self> {
        check_radius(domain, &spec)?;
        Ok(Self { domain, spec })
    }

    pub fn point(&self, phi: f64) -> SpherePoint {
        let r = self.spec.radius;
        let (shift, k) = match self.spec.orientation {
            Orientation::Forward => (0.0, -(-r).exp_m1()),
            Orientation::Backward => (PI, r.exp_m1()),
        };
        let w = self.domain.radial_jet(phi + shift, 2);
        let (rho, d1, d2) = (k * w[0], k * w[1], k * w[2]);
        let u = Vector2::new(phi.cos(), phi.sin());
        let up = Vector2::new(-u.y, u.x);
        let o = self.domain.base_point();
        let c = match self.spec.orientation {
            // o + u ω (1 − e^{−r}) with a single rounding, so that the gap to
            // the boundary stays accurate for large r
            Orientation::Forward => {
                let hit = self
                    .domain
                    .ray_intersect(&o, &u)
                    .expect("base point is interior");
                let omega = Dd::new(hit.t, hit.t_lo);
                let rho = omega - omega * (-r).exp();
                DdVec::new(rho * u.x + o.x, rho * u.y + o.y).to_vec()
            }
            Orientation::Backward => o + u * rho,
        };
        SpherePoint {
            phi,
            rho,
            c,
            c_prime: u * d1 + up * rho,
            c_second: u * (d2 - rho) + up * (2.0 * d1),
        }
    }
}

fn check_radius(domain: &BoundaryCurve, spec: &SphereSpec) -> Result<()> {
    let r = spec.radius;
    if !(r > 0.0) || !r.is_finite() {
        return Err(FunkError::NonPositiveRadius(r));
    }
    if spec.orientation == Orientation::Backward {
        let bound = max_backward_radius(domain);
        if !(r < bound - 1e-9) {
            return Err(FunkError::RadiusTooLarge { radius: r, bound });
        }
    }
    Ok(())
}

pub fn forward_radial(domain: &BoundaryCurve, r: f64, phi: f64) -> f64 {
    -(-r).exp_m1() * domain.omega(phi)
}

/// Backward radial function; fails when the point in direction `phi` is
/// not interior, reporting the direction-wise bound.
pub fn backward_radial(domain: &BoundaryCurve, r: f64, phi: f64) -> Result<f64> {
    check_radius(domain, &SphereSpec::backward(r))?;
    let (ahead, behind) = (domain.omega(phi), domain.omega(phi + PI));
    let bound = (ahead / behind).ln_1p();
    if !(r < bound) {
        return Err(FunkError::RadiusTooLarge { radius: r, bound });
    }
    Ok(r.exp_m1() * behind)
}

/// `ln(1 + C_U)`: the backward sphere has interior points iff `r` is below.
pub fn max_backward_radius(domain: &BoundaryCurve) -> f64 {
    domain.dissymmetry().ln_1p()
}

/// `ln(1 + 1/C_U)`: the backward sphere is interior iff `r` is below.
pub fn backward_containment_radius(domain: &BoundaryCurve) -> f64 {
    domain.dissymmetry().recip().ln_1p()
}

pub fn sphere_jets(domain: &BoundaryCurve, spec: SphereSpec, phi: f64) -> Result<SpherePoint> {
    Ok(SphereCurve::new(domain, spec)?.point(phi))
}

/// Counts the interior points of the backward sphere of radius `r` on a
/// `samples`-point grid. Any radius is accepted here.
pub fn backward_sphere_interior_count(domain: &BoundaryCurve, r: f64, samples: usize) -> usize {
    let o = domain.base_point();
    (0..samples)
        .filter(|&i| {
            let phi = TAU * i as f64 / samples as f64;
            let rho = r.exp_m1() * domain.omega(phi + PI);
            domain.contains(&(o + Vector2::new(phi.cos(), phi.sin()) * rho))
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Shape;
    use crate::metric::funk_distance;
    use approx::assert_relative_eq;

    fn fourier() -> BoundaryCurve {
        BoundaryCurve::new(
            Shape::FourierRadial {
                cos: vec![1.0, 0.0, 0.0, 0.05],
                sin: vec![0.0, 0.0, 0.03],
            },
            Vector2::new(0.1, 0.05),
        )
        .unwrap()
    }

    #[test]
    fn disk_radii() {
        let d = BoundaryCurve::unit_disk();
        assert_relative_eq!(forward_radial(&d, 2.0, 0.3), 1.0 - (-2.0f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(backward_radial(&d, 0.5, 0.3).unwrap(), 0.5f64.exp() - 1.0, epsilon = 1e-15);
        assert_relative_eq!(max_backward_radius(&d), 2f64.ln(), epsilon = 1e-12);
        assert!(matches!(backward_radial(&d, 0.7, 0.0), Err(FunkError::RadiusTooLarge { .. })));
        // off-centre: the short side towards φ = 0 limits the radius to ln(4/3)
        let off = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap();
        assert!(backward_radial(&off, 1.0, PI).is_ok());
        match backward_radial(&off, 1.0, 0.0) {
            Err(FunkError::RadiusTooLarge { bound, .. }) => assert_relative_eq!(bound, (4.0f64 / 3.0).ln(), epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let off = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(max_backward_radius(&off), 4f64.ln(), epsilon = 1e-9);
        let e = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::zeros()).unwrap();
        assert_relative_eq!(max_backward_radius(&e), 2f64.ln(), epsilon = 1e-12);
        assert!(matches!(sphere_jets(&d, SphereSpec::forward(0.0), 0.0), Err(FunkError::NonPositiveRadius(_))));
    }

    #[test]
    fn gap_identity() {
        let f = fourier();
        for phi in [0.0, 1.0, 4.0] {
            let w = f.omega(phi);
            let r = 3.0;
            assert_relative_eq!(w - forward_radial(&f, r, phi), (-r).exp() * w, epsilon = 1e-15);
        }
    }

    #[test]
    fn distance_round_trips() {
        let f = fourier();
        let o = f.base_point();
        for r in [0.5, 3.0, 9.0, 14.0] {
            for i in 0..16 {
                let phi = TAU * i as f64 / 16.0;
                let p = SphereCurve::new(&f, SphereSpec::forward(r)).unwrap().point(phi);
                let d = funk_distance(&f, &o, &p.c).unwrap();
                assert!((d - r).abs() < 1e-10, "r={r} phi={phi} d={d}");
            }
        }
        let rb = 0.5 * backward_containment_radius(&f);
        for i in 0..16 {
            let phi = TAU * i as f64 / 16.0;
            let p = sphere_jets(&f, SphereSpec::backward(rb), phi).unwrap();
            assert_relative_eq!(funk_distance(&f, &p.c, &o).unwrap(), rb, epsilon = 1e-10);
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        let f = fourier();
        let s = SphereCurve::new(&f, SphereSpec::forward(1.5)).unwrap();
        let h = 1e-3;
        for phi in [0.2, 2.0] {
            let c = |a: f64| s.point(a).c;
            let p = s.point(phi);
            let d1 = (c(phi - 2.0 * h) - c(phi - h) * 8.0 + c(phi + h) * 8.0 - c(phi + 2.0 * h)) / (12.0 * h);
            let d2 = (-c(phi - 2.0 * h) + c(phi - h) * 16.0 - c(phi) * 30.0 + c(phi + h) * 16.0 - c(phi + 2.0 * h))
                / (12.0 * h * h);
            assert!((d1 - p.c_prime).norm() < 1e-7);
            assert!((d2 - p.c_second).norm() < 1e-6);
        }
    }

    #[test]
    fn normalized_study_point() {
        let f = fourier();
        let n = crate::normalization::normalize(&f, 0.7).unwrap();
        let hat = n.normalized_domain(&f).unwrap();
        let r = 6.0;
        let p = sphere_jets(&hat, SphereSpec::forward(r), -PI / 2.0).unwrap();
        let k = 1.0 - (-r).exp();
        assert_relative_eq!(p.c, Vector2::new(0.0, (-r).exp()), epsilon = 1e-13);
        assert_relative_eq!(p.c_prime, Vector2::new(k, 0.0), epsilon = 1e-11);
        // ω̂'' = 1/2 gives c'' = (0, (1 − e^{−r})/2)
        assert_relative_eq!(p.c_second, Vector2::new(0.0, 0.5 * k), epsilon = 1e-10);
    }

    #[test]
    fn nesting_and_approach() {
        let f = fourier();
        for i in 0..32 {
            let phi = TAU * i as f64 / 32.0;
            assert!(forward_radial(&f, 1.0, phi) < forward_radial(&f, 2.0, phi));
        }
        let gap = (0..256)
            .map(|i| {
                let phi = TAU * i as f64 / 256.0;
                f.omega(phi) - forward_radial(&f, 10.0, phi)
            })
            .fold(0.0, f64::max);
        assert!(gap <= (-10.0f64).exp() * f.stats().omega_max * (1.0 + 1e-9));
    }

    #[test]
    fn backward_containment_bounds() {
        let n = 4096;
        for curve in [
            BoundaryCurve::unit_disk(),
            BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap(),
            fourier(),
        ] {
            let full = backward_containment_radius(&curve);
            assert_eq!(backward_sphere_interior_count(&curve, full - 1e-6, n), n);
            assert!(backward_sphere_interior_count(&curve, full + 1e-3, n) < n);
            let sup = max_backward_radius(&curve);
            assert!(backward_sphere_interior_count(&curve, sup - 1e-6, n) > 0);
            assert_eq!(backward_sphere_interior_count(&curve, sup + 1e-3, n), 0);
        }
        let off = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(backward_containment_radius(&off), (4.0f64 / 3.0).ln(), epsilon = 1e-9);
    }
}
