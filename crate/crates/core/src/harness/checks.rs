//! The invariant suite run by `verify`.

use std::f64::consts::{SQRT_2, TAU};

use nalgebra::{Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::coefficients::misprinted_estimates;
use super::study::StudyPoint;
use super::sweep::{run_sweep, SweepConfig};
use crate::affine::Affine2;
use crate::curvature::{curvature_set, CurvePointData};
use crate::domain::{BoundaryCurve, Shape};
use crate::error::{FunkError, Result};
use crate::metric::{funk_distance, metric_tensor, okada_residual, theta, theta_randers_disk, PointedVector};
use crate::series::expansions::{exact_reports, ExactExpansions, Quantity, DEFAULT_ORDER};
use crate::spec::DomainSpec;
use crate::spheres::{
    backward_containment_radius, backward_sphere_interior_count, max_backward_radius, sphere_jets, SphereCurve,
    SphereSpec,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Empty for checks that do not depend on a domain.
    pub domain: String,
    pub passed: bool,
    /// Worst value of the checked quantity.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub workers: usize,
    pub okada_samples: usize,
    pub randers_samples: usize,
    pub tensor_samples: usize,
    pub affine_samples: usize,
    pub boundary_points: usize,
    pub round_trip_angles: usize,
    pub round_trip_radii: Vec<f64>,
    pub containment_samples: usize,
    pub geodesic_configs: usize,
    /// Boundary angles `2πi/n` used for sweeps and series checks.
    pub sweep_angles: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            workers: 1,
            okada_samples: 1000,
            randers_samples: 10_000,
            tensor_samples: 1000,
            affine_samples: 1000,
            boundary_points: 512,
            round_trip_angles: 256,
            round_trip_radii: vec![0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 13.0, 14.0],
            containment_samples: 4096,
            geodesic_configs: 100,
            sweep_angles: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub domains: Vec<String>,
    pub warnings: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str, domain: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name && c.domain == domain)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,domain,passed,worst,tolerance,detail\n");
        for c in &self.checks {
            out += &format!(
                "{},{},{},{:e},{:e},\"{}\"\n",
                c.name,
                c.domain,
                c.passed,
                c.worst,
                c.tolerance,
                c.detail.replace('"', "'")
            );
        }
        out
    }
}

/// Tracks the worst value seen and where it occurred.
struct Worst {
    value: f64,
    at: String,
    errors: usize,
    first_error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
            errors: 0,
            first_error: None,
        }
    }

    fn see(&mut self, v: f64, at: impl FnOnce() -> String) {
        if !(v <= self.value) {
            self.value = v;
            self.at = at();
        }
    }

    fn error(&mut self, e: &FunkError, at: impl FnOnce() -> String) {
        self.errors += 1;
        if self.first_error.is_none() {
            self.first_error = Some(format!("{} ({e})", at()));
        }
    }

    /// Passes when no evaluation failed and the worst value is below `tol`.
    fn finish(self, name: &str, domain: &str, tol: f64, what: &str) -> CheckResult {
        let mut detail = format!("worst {what} {:.3e} at {}", self.value, self.at);
        if let Some(e) = &self.first_error {
            detail += &format!("; {} evaluation failures, first at {e}", self.errors);
        }
        CheckResult {
            name: name.into(),
            domain: domain.into(),
            passed: self.errors == 0 && self.value < tol,
            worst: self.value,
            tolerance: tol,
            detail,
        }
    }
}

/// Uniform interior point at most `frac` of the way to the boundary, seen
/// from the base point.
fn random_point(d: &BoundaryCurve, rng: &mut ChaCha8Rng, frac: f64) -> Vector2<f64> {
    let a = rng.gen_range(0.0..TAU);
    let u = frac * rng.gen::<f64>().sqrt();
    d.base_point() + Vector2::new(a.cos(), a.sin()) * (u * d.omega(a))
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vector2<f64> {
    let b = rng.gen_range(0.0..TAU);
    Vector2::new(b.cos(), b.sin()) * rng.gen_range(0.2..3.0)
}

fn random_pv(d: &BoundaryCurve, rng: &mut ChaCha8Rng, frac: f64) -> PointedVector {
    PointedVector::new(random_point(d, rng, frac), random_direction(rng))
}

fn fmt_pv(pv: &PointedVector) -> String {
    format!("x=({:.4},{:.4}) y=({:.4},{:.4})", pv.x.x, pv.x.y, pv.y.x, pv.y.y)
}

fn is_unit_disk(d: &BoundaryCurve) -> bool {
    *d.shape() == Shape::Disk { radius: 1.0 } && *d.frame() == Affine2::identity()
}

/// Rotationally symmetric about the base point.
fn is_centred_disk(d: &BoundaryCurve) -> bool {
    matches!(d.shape(), Shape::Disk { .. }) && *d.frame() == Affine2::identity() && d.base_point() == Vector2::zeros()
}

pub fn okada(d: &BoundaryCurve, name: &str, samples: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    let tol = if matches!(d.shape(), Shape::Disk { .. } | Shape::Ellipse { .. }) {
        1e-6
    } else {
        1e-5
    };
    let mut w = Worst::new();
    for _ in 0..samples {
        let pv = random_pv(d, rng, 0.9);
        match okada_residual(d, &pv) {
            Ok(r) => w.see(r.norm(), || fmt_pv(&pv)),
            Err(e) => w.error(&e, || fmt_pv(&pv)),
        }
    }
    w.finish("okada_residual", name, tol, "|Θ_x − Θ Θ_y|")
}

pub fn randers_oracle(samples: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    let d = BoundaryCurve::unit_disk();
    let mut w = Worst::new();
    for _ in 0..samples {
        let pv = random_pv(&d, rng, 0.999);
        match (theta(&d, &pv), theta_randers_disk(&pv.x, &pv.y)) {
            (Ok(a), Ok(b)) => w.see((a - b).abs() / b, || fmt_pv(&pv)),
            (Err(e), _) | (_, Err(e)) => w.error(&e, || fmt_pv(&pv)),
        }
    }
    w.finish("randers_oracle", "", 1e-10, "relative difference")
}

pub fn tensor(d: &BoundaryCurve, name: &str, samples: usize, rng: &mut ChaCha8Rng) -> [CheckResult; 2] {
    let mut homog = Worst::new();
    // −λ_min/λ_max is negative exactly when g is positive definite
    let mut definite = Worst::new();
    definite.value = f64::NEG_INFINITY;
    for _ in 0..samples {
        let pv = random_pv(d, rng, 0.9);
        match metric_tensor(d, &pv).and_then(|g| Ok((g, theta(d, &pv)?))) {
            Ok((g, th)) => {
                homog.see((g.form(&pv.y, &pv.y) - th * th).abs() / (th * th), || fmt_pv(&pv));
                let [lo, hi] = g.eigenvalues();
                definite.see(-lo / hi, || fmt_pv(&pv));
            }
            Err(e) => {
                homog.error(&e, || fmt_pv(&pv));
                definite.error(&e, || fmt_pv(&pv));
            }
        }
    }
    [
        homog.finish("tensor_homogeneity", name, 1e-8, "|g_y(y,y) − Θ²|/Θ²"),
        definite.finish("tensor_positive_definite", name, 0.0, "−λ_min/λ_max"),
    ]
}

pub fn affine_invariance(d: &BoundaryCurve, name: &str, samples: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut w = Worst::new();
    // ten point pairs per random well-conditioned map
    for chunk in 0..samples.div_ceil(10) {
        let map = loop {
            let m: Matrix2<f64> = Matrix2::from_fn(|_, _| rng.gen_range(-2.0..2.0));
            let det = m.determinant();
            if det.abs() > 0.3 && m.norm() / det.abs().sqrt() < 4.0 {
                break Affine2::new(m, Vector2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
            }
        };
        let image = match d.affine_image(&map) {
            Ok(img) => img,
            Err(e) => {
                w.error(&e, || format!("map {chunk}"));
                continue;
            }
        };
        for _ in 0..10.min(samples - 10 * chunk) {
            let (p, q) = (random_point(d, rng, 0.95), random_point(d, rng, 0.95));
            let at = || format!("p=({:.4},{:.4}) q=({:.4},{:.4})", p.x, p.y, q.x, q.y);
            match (funk_distance(d, &p, &q), funk_distance(&image, &map.apply(&p), &map.apply(&q))) {
                (Ok(a), Ok(b)) => w.see((a - b).abs(), at),
                (Err(e), _) | (_, Err(e)) => w.error(&e, at),
            }
        }
    }
    w.finish("affine_invariance", name, 1e-10, "|d_U(p,q) − d_AU(Ap,Aq)|")
}

pub fn lemma_inequality(d: &BoundaryCurve, name: &str, points: usize) -> CheckResult {
    let stats = d.stats();
    let bound = stats.omega_min * stats.k_min;
    let mut w = Worst::new();
    w.value = f64::NEG_INFINITY;
    for i in 0..points {
        let phi = TAU * i as f64 / points as f64;
        w.see(bound - d.radial_normal_cosine(phi), || format!("phi={phi:.4}"));
    }
    let mut c = w.finish("lemma_inequality", name, 1e-9, "ω₀k − cos∠");
    c.detail += &format!(" (ω₀k = {bound:.6})");
    c
}

pub fn sphere_round_trips(d: &BoundaryCurve, name: &str, angles: usize, radii: &[f64]) -> CheckResult {
    let o = d.base_point();
    let mut w = Worst::new();
    let mut failing: Vec<f64> = Vec::new();
    for &r in radii {
        let mut worst_r: f64 = 0.0;
        let sphere = match SphereCurve::new(d, SphereSpec::forward(r)) {
            Ok(s) => s,
            Err(e) => {
                w.error(&e, || format!("forward r={r}"));
                continue;
            }
        };
        for i in 0..angles {
            let phi = TAU * i as f64 / angles as f64;
            let c = sphere.point(phi).c;
            match funk_distance(d, &o, &c) {
                Ok(dist) => {
                    worst_r = worst_r.max((dist - r).abs());
                    w.see((dist - r).abs(), || format!("forward r={r} phi={phi:.4}"));
                }
                Err(e) => w.error(&e, || format!("forward r={r} phi={phi:.4}")),
            }
        }
        if !(worst_r < 1e-10) {
            failing.push(r);
        }
    }
    let rb_max = backward_containment_radius(d);
    for frac in [0.25, 0.5, 0.9] {
        let r = frac * rb_max;
        for i in 0..angles {
            let phi = TAU * i as f64 / angles as f64;
            let at = || format!("backward r={r:.4} phi={phi:.4}");
            match sphere_jets(d, SphereSpec::backward(r), phi).and_then(|p| funk_distance(d, &p.c, &o)) {
                Ok(dist) => w.see((dist - r).abs(), at),
                Err(e) => w.error(&e, at),
            }
        }
    }
    let mut c = w.finish("sphere_round_trip", name, 1e-10, "|d − r|");
    if !failing.is_empty() {
        c.detail += &format!("; forward radii above tolerance: {failing:?}");
    }
    c
}

pub fn backward_containment(d: &BoundaryCurve, name: &str, samples: usize) -> CheckResult {
    let inside = backward_containment_radius(d);
    let outside = max_backward_radius(d);
    let below = backward_sphere_interior_count(d, inside * (1.0 - 1e-6), samples);
    let above = backward_sphere_interior_count(d, outside * (1.0 + 1e-6), samples);
    let mid = backward_sphere_interior_count(d, 0.5 * (inside + outside), samples);
    // strictly between the bounds only part of the sphere is interior
    let partial = outside - inside < 1e-9 || (mid > 0 && mid < samples);
    let passed = below == samples && above == 0 && partial;
    CheckResult {
        name: "backward_containment".into(),
        domain: name.into(),
        passed,
        worst: (samples - below + above) as f64,
        tolerance: 1.0,
        detail: format!(
            "ln(1+1/C_U) = {inside:.9}: {below}/{samples} interior just below; ln(1+C_U) = {outside:.9}: {above}/{samples} interior just above; {mid}/{samples} interior halfway"
        ),
    }
}

pub fn geodesic_nullity(d: &BoundaryCurve, name: &str, configs: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut w = Worst::new();
    for _ in 0..configs {
        let x = random_point(d, rng, 0.9);
        let v = random_direction(rng);
        // any parametrization of a straight segment
        let cp = CurvePointData::new(x, v, v * rng.gen_range(-2.0..2.0));
        let inward = Vector2::new(-v.y, v.x);
        let at = || format!("x=({:.4},{:.4}) v=({:.4},{:.4})", x.x, x.y, v.x, v.y);
        match curvature_set(d, &cp, &inward) {
            Ok(k) => {
                let m = k.kn_inner.abs().max(k.kn_outer.abs()).max(k.k_finsler).max(k.k_rund.abs());
                w.see(m, at);
            }
            Err(e) => w.error(&e, at),
        }
    }
    w.finish("geodesic_nullity", name, 1e-9, "curvature")
}

fn angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| TAU * i as f64 / n as f64)
}

pub fn series_residuals(d: &BoundaryCurve, name: &str, n: usize) -> CheckResult {
    let mut w = Worst::new();
    for phi in angles(n) {
        match StudyPoint::new(d, phi).and_then(|sp| sp.expansions(DEFAULT_ORDER)) {
            Ok(e) => w.see(e.funk.ray_residual.max(e.rund.residual), || format!("phi={phi:.4}")),
            Err(e) => w.error(&e, || format!("phi={phi:.4}")),
        }
    }
    w.finish("series_residual", name, 1e-10, "relative residual")
}

pub fn misprinted_coefficients(d: &BoundaryCurve, name: &str, n: usize) -> CheckResult {
    let mut w = Worst::new();
    for phi in angles(n) {
        match StudyPoint::new(d, phi).and_then(|sp| misprinted_estimates(&sp)) {
            Ok(list) => {
                for e in list {
                    w.see(e.deviation(), || format!("phi={phi:.4} {}@s^{}", e.quantity.name(), e.power));
                }
            }
            Err(e) => w.error(&e, || format!("phi={phi:.4}")),
        }
    }
    w.finish("flagged_coefficients_numeric", name, 1e-6, "|numeric − engine|/max(1,|engine|)")
}

/// Expected limits of the four sweep curvatures.
pub fn expected_limit(q: Quantity) -> Option<f64> {
    match q {
        Quantity::KnInner => Some(0.0),
        Quantity::KnOuter => Some(-2.0),
        Quantity::Kf => Some(1.0),
        Quantity::Kr => Some(SQRT_2 - 1.0),
        _ => None,
    }
}

/// Limits, decay orders and, for rotationally symmetric domains, the
/// angle independence of the limits.
pub fn sweeps(d: &BoundaryCurve, name: &str, n: usize) -> Vec<CheckResult> {
    let mut limits = Worst::new();
    let mut orders = Worst::new();
    let mut spread: Vec<Vec<f64>> = vec![Vec::new(); 4];
    for phi in angles(n) {
        let cfg = SweepConfig {
            phi,
            ..SweepConfig::default()
        };
        let res = match run_sweep(d, &cfg) {
            Ok(r) => r,
            Err(e) => {
                limits.error(&e, || format!("phi={phi:.4}"));
                orders.error(&e, || format!("phi={phi:.4}"));
                continue;
            }
        };
        if let Some((r, e)) = res.failures().next() {
            let e = FunkError::InvalidShape(format!("row r={r}: {e}"));
            limits.error(&e, || format!("phi={phi:.4}"));
        }
        for (i, s) in res.summaries.iter().enumerate() {
            let want = expected_limit(s.quantity).unwrap_or(f64::NAN);
            limits.see((s.limit - want).abs(), || format!("phi={phi:.4} {}", s.quantity.name()));
            let dev = match (s.predicted_order, s.fitted_order) {
                (Some(p), Some(f)) => (f - p as f64).abs() / p as f64,
                _ => f64::INFINITY,
            };
            orders.see(dev, || {
                format!(
                    "phi={phi:.4} {} (predicted {:?}, fitted {:.3})",
                    s.quantity.name(),
                    s.predicted_order,
                    s.fitted_order.unwrap_or(f64::NAN)
                )
            });
            spread[i].push(s.limit);
        }
    }
    let mut out = vec![
        limits.finish("sweep_limits", name, 1e-3, "|limit − expected|"),
        orders.finish("sweep_decay_orders", name, super::sweep::ORDER_TOLERANCE + 1e-12, "relative order deviation"),
    ];
    if is_centred_disk(d) {
        let worst = spread
            .iter()
            .map(|v| {
                let (lo, hi) = v.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
                hi - lo
            })
            .fold(0.0, f64::max);
        out.push(CheckResult {
            name: "limits_angle_independent".into(),
            domain: name.into(),
            passed: worst < 1e-9,
            worst,
            tolerance: 1e-9,
            detail: format!("largest spread of a limit over {n} angles {worst:.3e}"),
        });
    }
    out
}

/// Exact-mode coefficients against the printed ones that are not flagged,
/// for `f‴(0) ∈ {0, ½, 1, −¾}`.
pub fn published_coefficients() -> CheckResult {
    let mut w = Worst::new();
    for f3 in [0.0, 0.5, 1.0, -0.75] {
        for (f4, h) in [(0.0, 2.0), (0.25, 1.5)] {
            match ExactExpansions::from_floats(f3, f4, h, DEFAULT_ORDER) {
                Ok(exp) => {
                    for r in exact_reports(&exp, f3, f4, h) {
                        w.see(r.max_abs_coeff_diff, || format!("f3={f3} f4={f4} H={h} {}", r.quantity.name()));
                    }
                }
                Err(e) => w.error(&e, || format!("f3={f3} f4={f4} H={h}")),
            }
        }
    }
    w.finish("published_coefficients", "", 1e-9, "|engine − printed|")
}

fn domain_checks(d: &BoundaryCurve, name: &str, index: usize, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let rng = |k: u64| ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9).wrapping_add(1000 * index as u64 + k));
    let mut out = vec![okada(d, name, cfg.okada_samples, &mut rng(1))];
    out.extend(tensor(d, name, cfg.tensor_samples, &mut rng(2)));
    out.push(affine_invariance(d, name, cfg.affine_samples, &mut rng(3)));
    out.push(lemma_inequality(d, name, cfg.boundary_points));
    out.push(sphere_round_trips(d, name, cfg.round_trip_angles, &cfg.round_trip_radii));
    out.push(backward_containment(d, name, cfg.containment_samples));
    out.push(geodesic_nullity(d, name, cfg.geodesic_configs, &mut rng(4)));
    out.push(series_residuals(d, name, cfg.sweep_angles));
    out.push(misprinted_coefficients(d, name, cfg.sweep_angles));
    out.extend(sweeps(d, name, cfg.sweep_angles));
    out
}

/// Runs the full suite on every spec. Specs that fail to build are
/// reported as failed checks; an empty list passes with a warning.
pub fn verify_all(specs: &[DomainSpec], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| FunkError::InvalidShape(format!("worker pool: {e}")))?;
    let mut warnings = Vec::new();
    if specs.is_empty() {
        warnings.push("no domain specs given; nothing to verify".to_string());
    }
    let per_domain: Vec<Vec<CheckResult>> = pool.install(|| {
        specs
            .par_iter()
            .enumerate()
            .map(|(i, s)| match s.build() {
                Ok(d) => domain_checks(&d, &s.name, i, cfg),
                Err(e) => vec![CheckResult {
                    name: "construction".into(),
                    domain: s.name.clone(),
                    passed: false,
                    worst: f64::NAN,
                    tolerance: f64::NAN,
                    detail: e.to_string(),
                }],
            })
            .collect()
    });
    let mut checks = Vec::new();
    if !specs.is_empty() {
        checks.push(published_coefficients());
        if specs.iter().any(|s| s.build().is_ok_and(|d| is_unit_disk(&d))) {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            checks.push(randers_oracle(cfg.randers_samples, &mut rng));
        }
    }
    checks.extend(per_domain.into_iter().flatten());
    Ok(VerifyReport {
        seed: cfg.seed,
        domains: specs.iter().map(|s| s.name.clone()).collect(),
        warnings,
        checks,
    })
}
