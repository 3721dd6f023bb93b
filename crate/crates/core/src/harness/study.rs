//! Numeric counterparts of the series quantities, evaluated on the
//! normalized domain at the sphere point `(0, e^{−r})`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector2;

use crate::curvature::{covariant_accel_arclength, curvature_set};
use crate::domain::BoundaryCurve;
use crate::error::Result;
use crate::metric::{metric_tensor, theta, theta_x_jets, PointedVector};
use crate::normalization::{normalize, AffineNormalization};
use crate::series::expansions::{Expansions, GraphJets, Quantity};
use crate::spheres::{SphereCurve, SphereSpec};

/// A boundary point seen from the base point, in normalized coordinates.
#[derive(Clone, Debug)]
pub struct StudyPoint {
    pub phi: f64,
    pub normalization: AffineNormalization,
    pub domain: BoundaryCurve,
}

/// Every quantity at one radius.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericValues {
    pub r: f64,
    values: Vec<(Quantity, f64)>,
}

impl NumericValues {
    pub fn get(&self, q: Quantity) -> f64 {
        self.values.iter().find(|v| v.0 == q).map_or(f64::NAN, |v| v.1)
    }
}

impl StudyPoint {
    pub fn new(curve: &BoundaryCurve, phi: f64) -> Result<Self> {
        let normalization = normalize(curve, phi)?;
        let domain = normalization.normalized_domain(curve)?;
        Ok(Self {
            phi,
            normalization,
            domain,
        })
    }

    /// Jets `f̂″(0), …, f̂^(12)(0)` of the normalized boundary graph.
    pub fn jets(&self) -> GraphJets<f64> {
        GraphJets::truncated(self.normalization.jets_hat[2..].to_vec())
    }

    pub fn f3(&self) -> f64 {
        self.normalization.f3()
    }

    pub fn f4(&self) -> f64 {
        self.normalization.f4()
    }

    /// Height of the supporting line opposite the boundary point.
    pub fn support_height(&self) -> f64 {
        self.normalization.support_width
    }

    pub fn expansions(&self, order: i32) -> Result<Expansions> {
        Expansions::new(&self.jets(), self.support_height(), order)
    }

    /// The numeric values of the listed quantities at radius `r`.
    pub fn evaluate(&self, r: f64, quantities: &[Quantity]) -> Result<NumericValues> {
        let d = &self.domain;
        // the boundary point sits straight below the base point (0, 1)
        let sphere = SphereCurve::new(d, SphereSpec::forward(r))?;
        let cp = sphere.point(-FRAC_PI_2).curve_point();
        let c = cp.c;
        let e1 = Vector2::new(1.0, 0.0);
        let along = PointedVector::new(c, e1);
        let needs = |list: &[Quantity]| list.iter().any(|q| quantities.contains(q));

        let mut values = Vec::with_capacity(quantities.len());
        if needs(&[Quantity::TPlus]) {
            values.push((Quantity::TPlus, d.ray_intersect(&c, &e1)?.t));
        }
        if needs(&[Quantity::TMinus]) {
            values.push((Quantity::TMinus, -d.ray_intersect(&c, &-e1)?.t));
        }
        if needs(&[Quantity::ThetaTangent]) {
            values.push((Quantity::ThetaTangent, theta(d, &along)?));
        }
        if needs(&[Quantity::TX2, Quantity::TX2X2, Quantity::ThetaX1, Quantity::ThetaX2]) {
            let j = theta_x_jets(d, &along)?;
            let (th, th2, th22) = (j.theta, j.dtheta_dx.y, j.d2theta_dx2[(1, 1)]);
            values.push((Quantity::ThetaX1, j.dtheta_dx.x));
            values.push((Quantity::ThetaX2, th2));
            values.push((Quantity::TX2, -th2 / (th * th)));
            values.push((Quantity::TX2X2, -th22 / (th * th) + 2.0 * th2 * th2 / (th * th * th)));
        }
        if needs(&[Quantity::G11, Quantity::G12, Quantity::G22]) {
            let g = metric_tensor(d, &along)?.g;
            values.push((Quantity::G11, g[(0, 0)]));
            values.push((Quantity::G12, g[(0, 1)]));
            values.push((Quantity::G22, g[(1, 1)]));
        }
        if needs(&[Quantity::Accel1, Quantity::Accel2, Quantity::T1, Quantity::T2]) {
            let nabla = covariant_accel_arclength(d, &cp)?.nabla;
            values.push((Quantity::Accel1, nabla.x));
            values.push((Quantity::Accel2, nabla.y));
            values.push((Quantity::T1, d.ray_intersect(&c, &nabla)?.t));
            values.push((Quantity::T2, d.ray_intersect(&c, &-nabla)?.t));
        }
        if needs(&[Quantity::KnInner, Quantity::KnOuter, Quantity::Kf, Quantity::Kf2, Quantity::Kr]) {
            let inward = Vector2::new(0.0, 1.0);
            let k = curvature_set(d, &cp, &inward)?;
            values.push((Quantity::KnInner, k.kn_inner));
            values.push((Quantity::KnOuter, k.kn_outer));
            values.push((Quantity::Kf, k.k_finsler));
            values.push((Quantity::Kf2, k.k_finsler * k.k_finsler));
            values.push((Quantity::Kr, k.k_rund));
        }
        values.retain(|v| quantities.contains(&v.0));
        Ok(NumericValues { r, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Shape;

    #[test]
    fn disk_study_point_matches_series() {
        let d = BoundaryCurve::unit_disk();
        let sp = StudyPoint::new(&d, 0.3).unwrap();
        assert!(sp.f3().abs() < 1e-12);
        let e = sp.expansions(8).unwrap();
        let r = 5.0;
        let s = (-r / 2.0f64).exp();
        let v = sp.evaluate(r, &Quantity::ALL).unwrap();
        for q in Quantity::ALL {
            let series = e.get(q);
            let num = v.get(q);
            let rel = (num - series.eval(s)).abs() / num.abs().max(1.0);
            // nine retained orders at s ≈ 0.08
            assert!(rel < 1e-7, "{q:?}: numeric {num} series {}", series.eval(s));
        }
    }

    #[test]
    fn fourier_study_point_matches_series() {
        let shape = Shape::FourierRadial {
            cos: vec![1.0, 0.0, 0.0, 0.05],
            sin: vec![0.0, 0.0, 0.03],
        };
        let d = BoundaryCurve::new(shape, Vector2::zeros()).unwrap();
        let sp = StudyPoint::new(&d, 1.1).unwrap();
        let e = sp.expansions(8).unwrap();
        let r = 8.0;
        let s = (-r / 2.0f64).exp();
        let v = sp.evaluate(r, &Quantity::ALL).unwrap();
        for q in Quantity::ALL {
            let num = v.get(q);
            let rel = (num - e.get(q).eval(s)).abs() / num.abs().max(1.0);
            assert!(rel < 1e-8, "{q:?}: numeric {num} series {}", e.get(q).eval(s));
        }
    }
}
