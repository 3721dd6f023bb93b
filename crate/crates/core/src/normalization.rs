//! Local graph frames at boundary points and the two-step affine
//! normalization that brings a boundary point to the origin with a
//! horizontal tangent, the base point to `(0, 1)` and `f''(0) = 1/2`.

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::{Matrix2, Vector2};
use serde::Serialize;

use crate::affine::Affine2;
use crate::domain::{golden_min, BoundaryCurve, SAMPLES};
use crate::error::{FunkError, Result};
use crate::jet::Jet;

/// Number of stored graph derivatives: `f(0), f'(0), ..., f^(12)(0)`.
pub const JET_LEN: usize = 13;

type GJet = Jet<JET_LEN>;

/// The boundary near `p` as a graph `x₂ = f(x₁)` over its tangent line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphFrame {
    pub phi: f64,
    pub boundary_point: Vector2<f64>,
    /// Rows are the unit tangent and the inner unit normal at `p`.
    pub rotation: Matrix2<f64>,
    /// `f(0), f'(0), ..., f^(12)(0)`.
    pub jets: [f64; JET_LEN],
}

impl GraphFrame {
    /// Graph coordinates of a point given in working coordinates.
    pub fn to_local(&self, x: &Vector2<f64>) -> Vector2<f64> {
        self.rotation * (x - self.boundary_point)
    }

    pub fn f2(&self) -> f64 {
        self.jets[2]
    }

    pub fn f3(&self) -> f64 {
        self.jets[3]
    }

    pub fn f4(&self) -> f64 {
        self.jets[4]
    }
}

/// Data of the shear that moves the base point onto the normal line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearedFrame {
    pub alpha: f64,
    pub omega_u: f64,
    pub kbar0: f64,
    pub shear: Matrix2<f64>,
    /// Jets of the sheared graph `f̄`.
    pub jets: [f64; JET_LEN],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineNormalization {
    pub phi: f64,
    pub alpha: f64,
    pub omega_u: f64,
    pub kbar0: f64,
    /// Horizontal stretch `x̂₁ = λ x̄₁`.
    pub lambda: f64,
    /// Full map `x ↦ P x` from working to normalized coordinates.
    pub map: Affine2,
    /// Length of the chord through `p` and `o` in normalized coordinates.
    pub chord_length: f64,
    /// Height of the normalized domain above its tangent line at `p`.
    pub support_width: f64,
    /// Jets `f̂(0), ..., f̂^(12)(0)` of the normalized graph.
    pub jets_hat: [f64; JET_LEN],
}

impl AffineNormalization {
    pub fn matrix(&self) -> Matrix2<f64> {
        self.map.m
    }

    pub fn f3(&self) -> f64 {
        self.jets_hat[3]
    }

    pub fn f4(&self) -> f64 {
        self.jets_hat[4]
    }

    /// The normalized domain `P(U)` with base point `P(o)`.
    pub fn normalized_domain(&self, curve: &BoundaryCurve) -> Result<BoundaryCurve> {
        curve.affine_image(&self.map)
    }
}

fn jet_array(j: &GJet) -> [f64; JET_LEN] {
    j.derivatives()
}

fn from_derivatives(d: &[f64; JET_LEN]) -> GJet {
    let mut c = [0.0; JET_LEN];
    for (k, v) in d.iter().enumerate() {
        c[k] = v / crate::jet::factorial(k);
    }
    Jet { c }
}

/// Graph of the parametrized curve `(x1(ε), x2(ε))` with `x1(0) = 0`.
fn graph_of(x1: GJet, x2: GJet) -> GJet {
    x1.revert().compose_into(&x2)
}

/// Local graph frame of the boundary at polar angle `phi` about the base
/// point.
pub fn graph_frame_at(curve: &BoundaryCurve, phi: f64) -> Result<GraphFrame> {
    let o = curve.base_point();
    let u = Vector2::new(phi.cos(), phi.sin());
    let hit = curve.ray_intersect(&o, &u)?;
    let (tangent, normal, _) = curve.local_frame_at_theta(hit.theta);
    let p = curve.point_jet(GJet::variable(hit.theta));
    let p0 = p.value();
    let dx = p.x.add_scalar(-p0.x);
    let dy = p.y.add_scalar(-p0.y);
    let x1 = dx * tangent.x + dy * tangent.y;
    let x2 = dx * normal.x + dy * normal.y;
    let mut jets = jet_array(&graph_of(x1, x2));
    jets[0] = 0.0;
    jets[1] = 0.0;
    Ok(GraphFrame {
        phi,
        boundary_point: p0,
        rotation: Matrix2::new(tangent.x, tangent.y, normal.x, normal.y),
        jets,
    })
}

/// Shears the frame so that the base point `o` lands on the positive
/// `x₂` axis: `x̄₁ = x₁ − tan α x₂`, `x̄₂ = x₂ / cos α`.
pub fn shear_to_chord(frame: &GraphFrame, o: &Vector2<f64>) -> Result<ShearedFrame> {
    let ol = frame.to_local(o);
    if !(ol.y > 0.0) {
        return Err(FunkError::NotInterior(o.x, o.y));
    }
    let alpha = ol.x.atan2(ol.y);
    if alpha.abs() >= FRAC_PI_2 - 1e-6 {
        return Err(FunkError::DegenerateChord { alpha });
    }
    let (ta, ca) = (alpha.tan(), alpha.cos());
    let f = from_derivatives(&frame.jets);
    let eps = GJet::variable(0.0);
    let xb1 = eps - f * ta;
    let xb2 = f * (1.0 / ca);
    let mut jets = jet_array(&graph_of(xb1, xb2));
    jets[0] = 0.0;
    jets[1] = 0.0;
    Ok(ShearedFrame {
        alpha,
        omega_u: ol.norm(),
        kbar0: jets[2],
        shear: Matrix2::new(1.0, -ta, 0.0, 1.0 / ca),
        jets,
    })
}

/// Diagonal scaling `x̂₁ = λ x̄₁`, `x̂₂ = x̄₂ / ω_u` with `λ = sqrt(2 k̄ / ω_u)`,
/// which puts the base point at `(0, 1)` and makes `f̂''(0) = 1/2`.
pub fn scale_normalize(
    curve: &BoundaryCurve,
    frame: &GraphFrame,
    sheared: &ShearedFrame,
) -> Result<AffineNormalization> {
    let (w, k) = (sheared.omega_u, sheared.kbar0);
    if !(w > 0.0 && k > 0.0) {
        return Err(FunkError::NonConvex {
            phi: frame.phi,
            kappa: k,
        });
    }
    let lambda = (2.0 * k / w).sqrt();
    let scale = Matrix2::new(lambda, 0.0, 0.0, 1.0 / w);
    let m = scale * sheared.shear * frame.rotation;
    let map = Affine2::new(m, -(m * frame.boundary_point));
    let mut jets_hat = [0.0; JET_LEN];
    for (kk, v) in jets_hat.iter_mut().enumerate().skip(2) {
        *v = sheared.jets[kk] / (lambda.powi(kk as i32) * w);
    }
    let hat = curve.affine_image(&map)?;
    let up = Vector2::new(0.0, 1.0);
    let chord_length = 1.0 + hat.ray_intersect(&hat.base_point(), &up)?.t;
    let support_width = support_height(&hat);
    Ok(AffineNormalization {
        phi: frame.phi,
        alpha: sheared.alpha,
        omega_u: w,
        kbar0: k,
        lambda,
        map,
        chord_length,
        support_width,
        jets_hat,
    })
}

/// Full normalization at polar angle `phi`.
pub fn normalize(curve: &BoundaryCurve, phi: f64) -> Result<AffineNormalization> {
    let frame = graph_frame_at(curve, phi)?;
    let sheared = shear_to_chord(&frame, &curve.base_point())?;
    scale_normalize(curve, &frame, &sheared)
}

/// `max x₂` over the boundary.
fn support_height(curve: &BoundaryCurve) -> f64 {
    let h = TAU / SAMPLES as f64;
    let height = |th: f64| curve.point_at_theta(th).y;
    let (best, _) = (0..SAMPLES)
        .map(|i| (i, height(h * i as f64)))
        .fold((0, f64::MIN), |acc, v| if v.1 > acc.1 { v } else { acc });
    let th = h * best as f64;
    -golden_min(|t| -height(t), th - h, th + h)
}
