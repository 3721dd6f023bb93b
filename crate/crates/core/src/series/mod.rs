//! Truncated half-power series `Σ a_k x₂^{k/2}`, written in `s = √x₂` as
//! `Σ a_k s^k`, and the expansions of Funk quantities near the boundary.
//!
//! A series is known exactly through `s^trunc`; everything beyond is
//! unknown. Arithmetic tracks that order conservatively.

mod coeff;
pub mod expansions;
pub mod solve;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

pub use coeff::{Coeff, Surd};

use crate::error::{FunkError, Result};

/// Truncation order of a series with no unknown terms.
pub const EXACT: i32 = i32::MAX / 4;
/// Exact inputs to `reciprocal` and `sqrt` are expanded this many
/// half-powers beyond the leading term.
pub const HORIZON: i32 = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct HalfPowerSeries<C> {
    lo: i32,
    coeffs: Vec<C>,
    trunc: i32,
}

impl<C: Coeff> HalfPowerSeries<C> {
    /// `Σ coeffs[i] s^(lo + i)`, known through `s^trunc`.
    pub fn new(lo: i32, coeffs: Vec<C>, trunc: i32) -> Self {
        let mut out = Self { lo, coeffs, trunc };
        out.canonicalize();
        out
    }

    pub fn exact(lo: i32, coeffs: Vec<C>) -> Self {
        Self::new(lo, coeffs, EXACT)
    }

    pub fn zero(trunc: i32) -> Self {
        Self::new(0, Vec::new(), trunc)
    }

    pub fn constant(c: C) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn monomial(k: i32, c: C) -> Self {
        Self::exact(k, vec![c])
    }

    /// The polynomial `Σ coeffs[i] s^i`.
    pub fn polynomial(coeffs: Vec<C>) -> Self {
        Self::exact(0, coeffs)
    }

    fn canonicalize(&mut self) {
        // roundoff is judged against nearby terms, since coefficients of
        // distant orders can differ by many magnitudes
        const WINDOW: usize = 4;
        let keep = (self.trunc as i64 - self.lo as i64 + 1).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        let local = |cs: &[C]| cs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        while let Some(last) = self.coeffs.last() {
            let n = self.coeffs.len();
            if !last.negligible(local(&self.coeffs[n.saturating_sub(WINDOW + 1)..n])) {
                break;
            }
            self.coeffs.pop();
        }
        let mut lead = 0;
        while lead < self.coeffs.len() {
            let end = (lead + WINDOW + 1).min(self.coeffs.len());
            if !self.coeffs[lead].negligible(local(&self.coeffs[lead..end])) {
                break;
            }
            lead += 1;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    /// Exponent of the first nonzero term.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn trunc(&self) -> i32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first term that is not known to vanish.
    pub fn valuation(&self) -> i32 {
        if self.coeffs.is_empty() {
            self.trunc.saturating_add(1)
        } else {
            self.lo
        }
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient of `s^k`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: i32) -> Option<C> {
        if k > self.trunc {
            return None;
        }
        let i = k as i64 - self.lo as i64;
        Some(if i >= 0 && (i as usize) < self.coeffs.len() {
            self.coeffs[i as usize].clone()
        } else {
            C::zero()
        })
    }

    /// Nonzero terms `(k, a_k)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i32, c))
    }

    /// Forgets everything beyond `s^n`.
    pub fn truncate(&self, n: i32) -> Self {
        Self::new(self.lo, self.coeffs.clone(), self.trunc.min(n))
    }

    /// Declares the stored terms exact through `s^n`, treating absent terms
    /// up to `n` as zero.
    pub(crate) fn assume_known_through(&self, n: i32) -> Self {
        Self::new(self.lo, self.coeffs.clone(), n)
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        let trunc = if self.is_exact() { EXACT } else { self.trunc + k };
        Self::new(self.lo + k, self.coeffs.clone(), trunc)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            self.lo,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            self.trunc,
        )
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HalfPowerSeries<D> {
        HalfPowerSeries::new(self.lo, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    pub fn to_f64(&self) -> HalfPowerSeries<f64> {
        self.map(|c| c.to_f64())
    }

    /// The known part at `s`.
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (_, c)| acc * s + c.to_f64())
            * s.powi(self.lo)
    }

    fn binary(&self, o: &Self, trunc: i32, op: impl Fn(C, C) -> C) -> Self {
        let lo = self.lo.min(o.lo);
        let end = (self.lo + self.coeffs.len() as i32).max(o.lo + o.coeffs.len() as i32);
        let coeffs = (lo..end)
            .map(|k| {
                let a = self.get(k);
                let b = o.get(k);
                op(a, b)
            })
            .collect();
        Self::new(lo, coeffs, trunc)
    }

    fn get(&self, k: i32) -> C {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.coeffs.len() {
            self.coeffs[i as usize].clone()
        } else {
            C::zero()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.binary(o, self.trunc.min(o.trunc), |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.binary(o, self.trunc.min(o.trunc), |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|a| -a.clone()).collect(), self.trunc)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let trunc = match (self.is_exact(), o.is_exact()) {
            (true, true) => EXACT,
            (true, false) => o.trunc + self.valuation(),
            (false, true) => self.trunc + o.valuation(),
            (false, false) => (self.trunc + o.valuation()).min(o.trunc + self.valuation()),
        };
        if self.is_zero() || o.is_zero() {
            return Self::zero(trunc);
        }
        let lo = self.lo + o.lo;
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let n = n.min((trunc as i64 - lo as i64 + 1).max(0) as usize);
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::new(lo, out, trunc)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut out = Self::constant(C::one());
        for _ in 0..n {
            out = Self::mul(&out, self);
        }
        out
    }

    /// Number of coefficients after the leading one that a reciprocal or
    /// root can determine, and the resulting truncation order.
    fn expansion_len(&self, trunc_out: i32) -> usize {
        if self.is_exact() {
            HORIZON as usize + 1
        } else {
            (trunc_out - (-self.lo)).max(-1).saturating_add(1) as usize
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.leading().ok_or(FunkError::ZeroLeadingTerm)?.clone();
        if a0.is_zero() {
            return Err(FunkError::ZeroLeadingTerm);
        }
        let v = self.lo;
        let trunc = if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(-v, C::one() / a0));
            }
            -v + HORIZON
        } else {
            self.trunc - 2 * v
        };
        let n = self.expansion_len(trunc);
        let mut b: Vec<C> = Vec::with_capacity(n);
        let inv0 = C::one() / a0;
        for m in 0..n {
            if m == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut acc = C::zero();
            for k in 1..=m.min(self.coeffs.len() - 1) {
                acc = acc + self.coeffs[k].clone() * b[m - k].clone();
            }
            b.push(-(acc * inv0.clone()));
        }
        Ok(Self::new(-v, b, trunc))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.leading().ok_or(FunkError::ZeroLeadingTerm)?.clone();
        if self.lo % 2 != 0 {
            return Err(FunkError::NoSquareRoot);
        }
        let r0 = a0.sqrt().ok_or(FunkError::NoSquareRoot)?;
        if r0.is_zero() {
            return Err(FunkError::ZeroLeadingTerm);
        }
        let v = self.lo;
        let trunc = if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(v / 2, r0));
            }
            v / 2 + HORIZON
        } else {
            self.trunc - v / 2
        };
        let n = if self.is_exact() {
            HORIZON as usize + 1
        } else {
            (trunc - v / 2 + 1).max(0) as usize
        };
        let two_r0 = r0.clone() + r0.clone();
        let mut b: Vec<C> = Vec::with_capacity(n);
        for m in 0..n {
            if m == 0 {
                b.push(r0.clone());
                continue;
            }
            let mut acc = self.get(v + m as i32);
            for k in 1..m {
                acc = acc - b[k].clone() * b[m - k].clone();
            }
            b.push(acc / two_r0.clone());
        }
        Ok(Self::new(v / 2, b, trunc))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.reciprocal()?))
    }

    /// Largest coefficient difference over the orders both series know.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let hi = self.trunc.min(o.trunc);
        let hi = if hi >= EXACT {
            (self.lo + self.coeffs.len() as i32).max(o.lo + o.coeffs.len() as i32)
        } else {
            hi
        };
        let lo = self.lo.min(o.lo);
        (lo..=hi)
            .map(|k| (self.get(k).to_f64() - o.get(k).to_f64()).abs())
            .fold(0.0, f64::max)
    }

    /// Plain view for output.
    pub fn view(&self) -> SeriesView {
        SeriesView {
            lo: self.lo,
            trunc: (!self.is_exact()).then_some(self.trunc),
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
            exact: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Serializable form of a series: `Σ coeffs[i] s^(lo + i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesView {
    pub lo: i32,
    /// `None` for exact series.
    pub trunc: Option<i32>,
    pub coeffs: Vec<f64>,
    pub exact: Vec<String>,
}

impl<C: Coeff> fmt::Display for HalfPowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·s^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(s^{})", self.trunc + 1)?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for &HalfPowerSeries<C> {
            type Output = HalfPowerSeries<C>;
            fn $m(self, o: &HalfPowerSeries<C>) -> HalfPowerSeries<C> {
                HalfPowerSeries::$m(self, o)
            }
        }
        impl<C: Coeff> $tr for HalfPowerSeries<C> {
            type Output = HalfPowerSeries<C>;
            fn $m(self, o: HalfPowerSeries<C>) -> HalfPowerSeries<C> {
                HalfPowerSeries::$m(&self, &o)
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl<C: Coeff> Neg for &HalfPowerSeries<C> {
    type Output = HalfPowerSeries<C>;
    fn neg(self) -> HalfPowerSeries<C> {
        HalfPowerSeries::neg(self)
    }
}

impl<C: Coeff> Neg for HalfPowerSeries<C> {
    type Output = HalfPowerSeries<C>;
    fn neg(self) -> HalfPowerSeries<C> {
        HalfPowerSeries::neg(&self)
    }
}
