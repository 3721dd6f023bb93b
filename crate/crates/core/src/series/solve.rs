//! Branches of polynomial equations `Σ_k A_k(s) U^k = 0` whose coefficients
//! are half-power series, found by Newton iteration on whole series.

use super::{Coeff, HalfPowerSeries};
use crate::error::{FunkError, Result};

fn horner<C: Coeff>(coeffs: &[HalfPowerSeries<C>], u: &HalfPowerSeries<C>) -> HalfPowerSeries<C> {
    let mut acc = coeffs.last().cloned().unwrap_or_else(|| HalfPowerSeries::zero(u.trunc()));
    for c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * u) + c;
    }
    acc
}

fn derivative<C: Coeff>(coeffs: &[HalfPowerSeries<C>]) -> Vec<HalfPowerSeries<C>> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&C::from_i64(k as i64)))
        .collect()
}

fn constant_term<C: Coeff>(a: &HalfPowerSeries<C>) -> C {
    a.coeff(0).unwrap_or_else(C::zero)
}

/// `Σ_k coeffs[k] u^k`.
pub fn evaluate_polynomial<C: Coeff>(coeffs: &[HalfPowerSeries<C>], u: &HalfPowerSeries<C>) -> HalfPowerSeries<C> {
    horner(coeffs, u)
}

/// The branch `U(s)` of `Σ_k coeffs[k] U^k = 0` with `U(0) = root0`, known
/// through `s^target` or as far as the coefficients allow.
///
/// Every coefficient must have nonnegative valuation, and `root0` must be a
/// simple root of the equation at `s = 0`.
pub fn solve_branch<C: Coeff>(coeffs: &[HalfPowerSeries<C>], root0: C, target: i32) -> Result<HalfPowerSeries<C>> {
    if coeffs.iter().any(|c| !c.is_zero() && c.lo() < 0) {
        return Err(FunkError::SingularBranch("negative valuation in a coefficient"));
    }
    let cap = coeffs.iter().map(|c| c.trunc()).fold(target, i32::min);
    if cap < 0 {
        return Err(FunkError::SingularBranch("coefficients are unknown at order zero"));
    }
    let d = derivative(coeffs);
    let at = |cs: &[HalfPowerSeries<C>]| {
        cs.iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * root0.clone() + constant_term(c))
    };
    let p0 = at(coeffs).to_f64();
    let d0 = at(&d).to_f64();
    let scale = coeffs.iter().map(|c| constant_term(c).to_f64().abs()).fold(0.0, f64::max);
    if p0.abs() > 1e-12 * scale.max(1.0) {
        return Err(FunkError::SingularBranch("initial value is not a root"));
    }
    if d0.abs() <= 1e-12 * scale.max(1.0) {
        return Err(FunkError::SingularBranch("initial value is a multiple root"));
    }
    let mut u = HalfPowerSeries::new(0, vec![root0], 0);
    while u.trunc() < cap {
        // Newton doubles the number of known orders
        let known = (2 * u.trunc() + 1).min(cap);
        let ue = u.assume_known_through(cap);
        let step = horner(coeffs, &ue).div(&horner(&d, &ue))?;
        u = (&ue - &step).truncate(known);
    }
    Ok(u)
}

/// Largest coefficient of `Σ_k coeffs[k] u^k` through the order of `u`,
/// relative to the largest coefficient of the individual terms.
pub fn residual<C: Coeff>(coeffs: &[HalfPowerSeries<C>], u: &HalfPowerSeries<C>) -> f64 {
    let top = u.trunc();
    let size = |p: &HalfPowerSeries<C>| {
        (p.lo().min(0)..=p.trunc().min(top))
            .filter_map(|k| p.coeff(k))
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    };
    let mut scale: f64 = 1.0;
    let mut uk = HalfPowerSeries::constant(C::one());
    for c in coeffs {
        scale = scale.max(size(&(c * &uk)));
        uk = &uk * u;
    }
    size(&horner(coeffs, u)) / scale
}
