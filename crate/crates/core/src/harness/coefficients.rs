//! Numeric estimates of single series coefficients.
//!
//! With `a_k` known for `k < K`, `(Q(r) − Σ_{k<K} a_k s^k) / s^K` tends to
//! `a_K` as `s = e^{−r/2} → 0`; extrapolating it to `s = 0` estimates `a_K`
//! from the numeric pipeline alone.

use serde::Serialize;

use super::fit::extrapolate_to_zero;
use super::study::StudyPoint;
use crate::error::Result;
use crate::series::expansions::{published, Quantity, DEFAULT_ORDER, MISPRINTED};
use crate::series::HalfPowerSeries;

/// Radii whose values enter an estimate.
pub const ESTIMATE_RADII: [f64; 5] = [8.0, 9.0, 10.0, 11.0, 12.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientEstimate {
    pub quantity: Quantity,
    pub power: i32,
    pub engine: f64,
    pub numeric: f64,
    pub published: Option<f64>,
}

impl CoefficientEstimate {
    /// `|numeric − engine| / max(1, |engine|)`.
    pub fn deviation(&self) -> f64 {
        (self.numeric - self.engine).abs() / self.engine.abs().max(1.0)
    }
}

/// Estimate of the coefficient of `s^power` from `(r, Q(r))` samples, using
/// the lower coefficients of `series`.
pub fn estimate_coefficient(series: &HalfPowerSeries<f64>, samples: &[(f64, f64)], power: i32) -> f64 {
    let (xs, ys): (Vec<f64>, Vec<f64>) = samples
        .iter()
        .map(|&(r, q)| {
            let s = (-r / 2.0).exp();
            let known: f64 = (series.lo()..power).filter_map(|k| series.coeff(k).map(|c| c * s.powi(k))).sum();
            (s, (q - known) / s.powi(power))
        })
        .unzip();
    extrapolate_to_zero(&xs, &ys)
}

/// Numeric estimates of every coefficient whose printed value the engine
/// does not reproduce.
pub fn misprinted_estimates(study: &StudyPoint) -> Result<Vec<CoefficientEstimate>> {
    let exp = study.expansions(DEFAULT_ORDER)?;
    let quantities: Vec<Quantity> = MISPRINTED.iter().map(|m| m.0).collect();
    let values = ESTIMATE_RADII
        .iter()
        .map(|&r| study.evaluate(r, &quantities))
        .collect::<Result<Vec<_>>>()?;
    let (f3, f4, h) = (study.f3(), study.f4(), study.support_height());
    Ok(MISPRINTED
        .iter()
        .map(|&(q, power)| {
            let series = exp.get(q);
            let samples: Vec<(f64, f64)> = ESTIMATE_RADII.iter().zip(&values).map(|(&r, v)| (r, v.get(q))).collect();
            let published = published(q, f3, f4, h)
                .terms
                .iter()
                .find(|t| t.0 == power)
                .and_then(|t| t.1);
            CoefficientEstimate {
                quantity: q,
                power,
                engine: series.coeff(power).unwrap_or(f64::NAN),
                numeric: estimate_coefficient(series, &samples, power),
                published,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BoundaryCurve, Shape};
    use nalgebra::Vector2;

    #[test]
    fn recovers_a_known_coefficient() {
        let series = HalfPowerSeries::new(-1, vec![0.5, 0.25, -1.5, 2.0], 6);
        let samples: Vec<(f64, f64)> = ESTIMATE_RADII.iter().map(|&r| (r, series.eval((-r / 2.0f64).exp()))).collect();
        assert!((estimate_coefficient(&series, &samples, 1) + 1.5).abs() < 1e-9);
    }

    #[test]
    fn engine_beats_the_printed_values_on_an_offset_disk() {
        let d = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.5, 0.0)).unwrap();
        let sp = StudyPoint::new(&d, 2.0).unwrap();
        assert!(sp.f3().abs() > 0.1);
        for e in misprinted_estimates(&sp).unwrap() {
            assert!(e.deviation() < 1e-6, "{e:?}");
        }
        // the printed outer normal curvature has the wrong sign at s¹
        let kn = misprinted_estimates(&sp)
            .unwrap()
            .into_iter()
            .find(|e| (e.quantity, e.power) == (Quantity::KnOuter, 1))
            .unwrap();
        assert!((kn.published.unwrap() + kn.numeric).abs() < 1e-6);
    }
}
