//! Coefficient fields for half-power series: doubles, rationals and the
//! quadratic field Q(√2), where the Rund branch lives.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;
    /// Every finite double is a rational number; exact fields take it as is.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Whether the value counts as zero next to coefficients of size `scale`.
    fn negligible(&self, scale: f64) -> bool;
    /// Square root inside the field, if it exists.
    fn sqrt(&self) -> Option<Self>;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }
}

impl Coeff for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-14 * scale
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(
        big_sqrt_exact(q.numer())?,
        big_sqrt_exact(q.denom())?,
    ))
}

fn rational_to_f64(q: &BigRational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite coefficient")
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
}

impl Surd {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// `a² − 2b²`.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }
}

impl Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√2", self.b)
        } else {
            write!(f, "{} + {}√2", self.a, self.b)
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.a, -self.b)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let two = BigRational::from_integer(2.into());
        Surd::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let n = o.norm();
        let p = self * o.conj();
        Surd::new(p.a / &n, p.b / n)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Coeff for Surd {
    fn from_i64(n: i64) -> Self {
        Self::rational(<BigRational as Coeff>::from_i64(n))
    }

    fn from_f64(x: f64) -> Self {
        Self::rational(<BigRational as Coeff>::from_f64(x))
    }

    fn to_f64(&self) -> f64 {
        let s2 = std::f64::consts::SQRT_2;
        if self.a.is_positive() == self.b.is_positive() || self.a.is_zero() || self.b.is_zero() {
            rational_to_f64(&self.a) + rational_to_f64(&self.b) * s2
        } else {
            // opposite signs: divide the exact norm by the conjugate instead
            rational_to_f64(&self.norm()) / (rational_to_f64(&self.a) - rational_to_f64(&self.b) * s2)
        }
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    /// Defined for `q²` and `2q²` with rational `q`.
    fn sqrt(&self) -> Option<Self> {
        if !self.b.is_zero() {
            return None;
        }
        if let Some(q) = rational_sqrt(&self.a) {
            return Some(Self::rational(q));
        }
        let half = &self.a / BigRational::from_integer(2.into());
        rational_sqrt(&half).map(|q| Self::new(BigRational::zero(), q))
    }
}
