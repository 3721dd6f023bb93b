//! Double-double arithmetic, used to polish boundary hits whose gap to the
//! query point is far below one unit of the coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::Vector2;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const FRAC_PI_2: Dd = Dd {
    hi: std::f64::consts::FRAC_PI_2,
    lo: 6.123_233_995_736_766e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn scale(self, k: f64) -> Self {
        let (p, e) = two_prod(self.hi, k);
        Self::new(p, self.lo.mul_add(k, e))
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let x = self.hi.sqrt();
        // one Newton step from the double root
        let r = self - Self::prod(x, x);
        Self::new(x, r.hi / (2.0 * x))
    }

    /// `(sin x, cos x)` for moderate `|x|`.
    pub fn sin_cos(self) -> (Self, Self) {
        let n = (self.hi / FRAC_PI_2.hi).round();
        let y = self - FRAC_PI_2.scale(n);
        let y2 = y.sqr();
        let mut s = y;
        let mut c = Self::from_f64(1.0);
        let mut ts = y;
        let mut tc = Self::from_f64(1.0);
        for k in 1..20 {
            let kf = k as f64;
            ts = -(ts * y2) / ((2.0 * kf) * (2.0 * kf + 1.0));
            tc = -(tc * y2) / ((2.0 * kf - 1.0) * (2.0 * kf));
            s = s + ts;
            c = c + tc;
            if ts.hi.abs() < 1e-34 && tc.hi.abs() < 1e-34 {
                break;
            }
        }
        match (n as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// `atan2(y, x)` refined from the double value.
    pub fn atan2(y: Self, x: Self) -> Self {
        let a = y.hi.atan2(x.hi);
        let (s, c) = Self::from_f64(a).sin_cos();
        // tan of the residual angle; it is far below 1e-15
        let num = y * c - x * s;
        let den = x * c + y * s;
        Self::from_f64(a) + num.to_f64() / den.to_f64()
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::new(s, e + f)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, o: f64) -> Dd {
        let (s, e) = two_sum(self.hi, o);
        Dd::new(s, e + self.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::new(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, k: f64) -> Dd {
        self.scale(k)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o.scale(q1);
        let q2 = r.hi / o.hi;
        let r = r - o.scale(q2);
        let q3 = r.hi / o.hi;
        Dd::new(q1, q2) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, k: f64) -> Dd {
        let q1 = self.hi / k;
        let (p, e) = two_prod(q1, k);
        let r = (self.hi - p - e + self.lo) / k;
        Dd::new(q1, r)
    }
}

/// A point with double-double coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdVec {
    pub x: Dd,
    pub y: Dd,
}

impl DdVec {
    pub fn new(x: Dd, y: Dd) -> Self {
        Self { x, y }
    }

    pub fn to_vec(self) -> Vector2<f64> {
        Vector2::new(self.x.to_f64(), self.y.to_f64())
    }

    pub fn norm(self) -> Dd {
        (self.x.sqr() + self.y.sqr()).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_quotients_are_exact_to_dd() {
        let a = Dd::from_f64(1.0) / 3.0;
        let back = a * 3.0 - Dd::from_f64(1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let q = Dd::from_f64(2.0).sqrt();
        assert!((q * q - Dd::from_f64(2.0)).to_f64().abs() < 1e-31);
        let r = Dd::from_f64(7.0) / Dd::from_f64(3.0).sqrt();
        assert!((r * Dd::from_f64(3.0).sqrt() - Dd::from_f64(7.0)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn trig_matches_reference_digits() {
        // sin(1) and cos(1) to 32 digits
        let (s, c) = Dd::from_f64(1.0).sin_cos();
        assert!((s - Dd::new(0.8414709848078965, 1.776845092935536e-18)).to_f64().abs() < 1e-31);
        assert!((c - Dd::new(0.5403023058681398, -4.760954612604417e-17)).to_f64().abs() < 1e-31);
        for x in [-25.0, -3.0, 0.1, 2.0, 7.7, 24.9] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            assert!((s.sqr() + c.sqr() - Dd::from_f64(1.0)).to_f64().abs() < 1e-30);
            assert!((s.to_f64() - x.sin()).abs() < 1e-15);
            let back = Dd::atan2(s, c);
            let wrapped = x - std::f64::consts::TAU * (x / std::f64::consts::TAU).round();
            assert!((back.to_f64() - wrapped).abs() < 1e-14);
        }
    }
}
