//! Curvature sweeps over the sphere radius at one boundary point.

use rayon::prelude::*;
use serde::Serialize;

use super::fit::{decay_order, extrapolate_to_zero};
use super::study::StudyPoint;
use crate::domain::BoundaryCurve;
use crate::error::{FunkError, Result};
use crate::series::expansions::{Quantity, DEFAULT_ORDER};
use crate::series::{HalfPowerSeries, SeriesView};

/// Largest relative deviation of the fitted decay order that is accepted.
pub const ORDER_TOLERANCE: f64 = 0.15;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    /// Polar angle of the boundary point about the base point.
    pub phi: f64,
    pub r_values: Vec<f64>,
    pub quantities: Vec<Quantity>,
    /// Half-powers kept beyond the leading term in the series prediction;
    /// `None` picks, per quantity, the truncation whose first omitted term
    /// dominates the rest of the series over the fit range.
    pub retained: Option<i32>,
    /// Radii whose gaps enter the decay fit.
    pub fit_range: (f64, f64),
    /// Number of largest radii used for the limit.
    pub extrapolation_points: usize,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            phi: 0.0,
            r_values: (2..=14).map(f64::from).collect(),
            quantities: vec![Quantity::KnInner, Quantity::KnOuter, Quantity::Kf, Quantity::Kr],
            retained: None,
            fit_range: (4.0, 12.0),
            extrapolation_points: 3,
            workers: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(FunkError::InvalidShape(format!("sweep configuration: {m}")));
        if self.r_values.is_empty() {
            return bad("no radii");
        }
        if self.r_values.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return bad("radii must be positive");
        }
        if self.r_values.windows(2).any(|w| w[1] <= w[0]) {
            return bad("radii must be strictly increasing");
        }
        if self.quantities.is_empty() {
            return bad("no quantities");
        }
        if self.retained.is_some_and(|m| !(0..DEFAULT_ORDER).contains(&m)) {
            return bad("retained order must lie in 0..8");
        }
        if !(self.fit_range.0 < self.fit_range.1) {
            return bad("empty fit range");
        }
        if self.extrapolation_points == 0 || self.extrapolation_points > self.r_values.len() {
            return bad("extrapolation needs between one and all radii");
        }
        if self.workers == 0 {
            return bad("at least one worker is needed");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub value: f64,
    pub series: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: f64,
    /// In the order of `SweepConfig::quantities`.
    pub samples: Vec<Sample>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantitySummary {
    pub quantity: Quantity,
    /// Richardson limit in `e^{−r/2}`.
    pub limit: f64,
    /// The series used for the predictions.
    pub series: SeriesView,
    /// Half-powers kept beyond the leading term.
    pub retained: i32,
    /// First omitted half-power with a nonvanishing coefficient.
    pub predicted_order: Option<i32>,
    pub fitted_order: Option<f64>,
    pub order_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub phi: f64,
    pub f3: f64,
    pub f4: f64,
    pub support_height: f64,
    pub quantities: Vec<Quantity>,
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<QuantitySummary>,
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = (f64, &str)> {
        self.rows.iter().filter_map(|r| r.error.as_deref().map(|e| (r.r, e)))
    }

    pub fn summary(&self, q: Quantity) -> Option<&QuantitySummary> {
        self.summaries.iter().find(|s| s.quantity == q)
    }

    /// One line per radius: `r` then value, series and gap per quantity.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r");
        for q in &self.quantities {
            let n = q.name();
            out += &format!(",{n},{n}_series,{n}_gap");
        }
        out.push('\n');
        for row in &self.rows {
            out += &format!("{:?}", row.r);
            for s in &row.samples {
                out += &format!(",{:?},{:?},{:?}", s.value, s.series, s.gap);
            }
            out.push('\n');
        }
        out
    }
}

/// First power past `last` whose coefficient is not negligible next to the
/// coefficients before it.
fn first_nonvanishing_after(series: &HalfPowerSeries<f64>, last: i32) -> Option<i32> {
    let mut scale = (series.lo()..=last)
        .filter_map(|k| series.coeff(k))
        .fold(0.0f64, |m, c| m.max(c.abs()));
    for k in last + 1..=series.trunc() {
        let c = series.coeff(k)?.abs();
        if c > 1e-8 * scale.max(1.0) {
            return Some(k);
        }
        scale = scale.max(c);
    }
    None
}

/// Predicted gaps smaller than this at the end of the fit range, relative to
/// the leading coefficient, would drown in rounding.
const GAP_MARGIN: f64 = 1e-10;

/// The retained order whose first omitted term best dominates the remaining
/// known terms for `r` in `range`, judged from the coefficients alone.
pub fn choose_retained(series: &HalfPowerSeries<f64>, range: (f64, f64)) -> i32 {
    let lo = series.valuation();
    let lead = series.leading().map_or(1.0, |c| c.abs()).max(1.0);
    let radii: Vec<f64> = (0..=16).map(|i| range.0 + (range.1 - range.0) * i as f64 / 16.0).collect();
    let mut best = (f64::INFINITY, 1);
    for m in 0..DEFAULT_ORDER - 1 {
        let Some(k) = first_nonvanishing_after(series, lo + m) else {
            continue;
        };
        let a = series.coeff(k).unwrap_or(0.0);
        let s_end = (-range.1 / 2.0).exp();
        if (a * s_end.powi(k)).abs() < GAP_MARGIN * lead {
            continue;
        }
        let ratio = radii
            .iter()
            .map(|r| {
                let s = (-r / 2.0).exp();
                let tail: f64 = (k + 1..=series.trunc())
                    .map(|j| series.coeff(j).unwrap_or(0.0) * s.powi(j - k))
                    .sum();
                (tail / a).abs()
            })
            .fold(0.0, f64::max);
        if ratio < best.0 {
            best = (ratio, m);
        }
    }
    best.1
}

pub fn run_sweep(curve: &BoundaryCurve, config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let study = StudyPoint::new(curve, config.phi)?;
    let expansions = study.expansions(DEFAULT_ORDER)?;
    let full: Vec<&HalfPowerSeries<f64>> = config.quantities.iter().map(|&q| expansions.get(q)).collect();
    let kept: Vec<HalfPowerSeries<f64>> = full
        .iter()
        .map(|s| {
            let m = config.retained.unwrap_or_else(|| choose_retained(s, config.fit_range));
            s.truncate(s.valuation() + m)
        })
        .collect();

    let row = |r: f64| -> SweepRow {
        let s = (-r / 2.0).exp();
        match study.evaluate(r, &config.quantities) {
            Ok(v) => SweepRow {
                r,
                samples: config
                    .quantities
                    .iter()
                    .zip(&kept)
                    .map(|(&q, k)| {
                        let value = v.get(q);
                        let series = k.eval(s);
                        Sample {
                            value,
                            series,
                            gap: value - series,
                        }
                    })
                    .collect(),
                error: None,
            },
            Err(e) => SweepRow {
                r,
                samples: vec![
                    Sample {
                        value: f64::NAN,
                        series: f64::NAN,
                        gap: f64::NAN
                    };
                    config.quantities.len()
                ],
                error: Some(e.to_string()),
            },
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| FunkError::InvalidShape(format!("worker pool: {e}")))?;
    let mut rows: Vec<SweepRow> = pool.install(|| config.r_values.par_iter().map(|&r| row(r)).collect());
    rows.sort_by(|a, b| a.r.total_cmp(&b.r));

    let summaries = config
        .quantities
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let tail: Vec<&SweepRow> = rows.iter().rev().take(config.extrapolation_points).collect();
            let xs: Vec<f64> = tail.iter().map(|row| (-row.r / 2.0).exp()).collect();
            let ys: Vec<f64> = tail.iter().map(|row| row.samples[i].value).collect();
            let (fr, fg): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter(|row| row.r >= config.fit_range.0 && row.r <= config.fit_range.1)
                .map(|row| (row.r, row.samples[i].gap))
                .unzip();
            let predicted_order = first_nonvanishing_after(full[i], kept[i].trunc());
            let fitted_order = decay_order(&fr, &fg);
            let order_ok = match (predicted_order, fitted_order) {
                (Some(p), Some(f)) => (f - p as f64).abs() <= ORDER_TOLERANCE * (p as f64).abs(),
                _ => false,
            };
            QuantitySummary {
                quantity: q,
                limit: extrapolate_to_zero(&xs, &ys),
                series: kept[i].view(),
                retained: kept[i].trunc() - full[i].valuation(),
                predicted_order,
                fitted_order,
                order_ok,
            }
        })
        .collect();

    Ok(SweepResult {
        phi: config.phi,
        f3: study.f3(),
        f4: study.f4(),
        support_height: study.support_height(),
        quantities: config.quantities.clone(),
        rows,
        summaries,
    })
}
