//! Truncated Taylor jets in one variable.
//!
//! A `Jet<N>` stores the normalized Taylor coefficients `c[k] = f^(k)(a) / k!`
//! of a function around some base point, for `k < N`. Arithmetic on jets is
//! exact up to the truncation order, which makes them the workhorse for the
//! boundary geometry: radial-function derivatives, graph jets over a tangent
//! line and implicit differentiation all reduce to jet algebra.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    /// The identity jet `a + ε` around base value `a`.
    pub fn variable(a: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = a;
        if N > 1 {
            c[1] = 1.0;
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: [0.0; N] }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.c[k] * factorial(k)
    }

    /// All derivatives `f, f', ..., f^(N-1)`.
    pub fn derivatives(&self) -> [f64; N] {
        let mut out = [0.0; N];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.derivative(k);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Self { c }
    }

    pub fn add_scalar(&self, s: f64) -> Self {
        let mut c = self.c;
        c[0] += s;
        Self { c }
    }

    pub fn recip(&self) -> Self {
        let b0 = self.c[0];
        let mut q = [0.0; N];
        q[0] = 1.0 / b0;
        for k in 1..N {
            let mut acc = 0.0;
            for j in 0..k {
                acc += q[j] * self.c[k - j];
            }
            q[k] = -acc / b0;
        }
        Self { c: q }
    }

    pub fn sqrt(&self) -> Self {
        let mut r = [0.0; N];
        r[0] = self.c[0].sqrt();
        for k in 1..N {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / (2.0 * r[0]);
        }
        Self { c: r }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let (s0, c0) = self.c[0].sin_cos();
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = s0;
        c[0] = c0;
        for k in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                ds += w * c[k - j];
                dc -= w * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    /// `outer(self)` where `outer` is a jet around `self.value()`.
    pub fn compose_into(&self, outer: &Self) -> Self {
        let mut shift = *self;
        shift.c[0] = 0.0;
        let mut acc = Jet::constant(outer.c[N - 1]);
        for k in (0..N - 1).rev() {
            acc = (acc * shift).add_scalar(outer.c[k]);
        }
        acc
    }

    /// Compositional inverse of a jet with zero constant term and nonzero
    /// linear term: returns `g` with `self(g(s)) = s`.
    pub fn revert(&self) -> Self {
        let a1 = self.c[1];
        let id = Jet::variable(0.0);
        let mut g = id.scale(1.0 / a1);
        for _ in 0..N {
            let composed = g.compose_into(self);
            g = g + (id - composed).scale(1.0 / a1);
        }
        g
    }

    /// Evaluate the truncated Taylor polynomial at offset `h` from the base.
    pub fn eval(&self, h: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &v| acc * h + v)
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a += b;
        }
        Self { c }
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a -= b;
        }
        Self { c }
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Self { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(self, s: f64) -> Self {
        self.add_scalar(s)
    }
}

/// A planar point whose coordinates are jets.
#[derive(Clone, Copy, Debug)]
pub struct Jet2<const N: usize> {
    pub x: Jet<N>,
    pub y: Jet<N>,
}

impl<const N: usize> Jet2<N> {
    pub fn new(x: Jet<N>, y: Jet<N>) -> Self {
        Self { x, y }
    }

    pub fn dot(&self, o: &Self) -> Jet<N> {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(&self, o: &Self) -> Jet<N> {
        self.x * o.y - self.y * o.x
    }

    pub fn value(&self) -> nalgebra::Vector2<f64> {
        nalgebra::Vector2::new(self.x.value(), self.y.value())
    }

    /// k-th derivative of the curve at the base point.
    pub fn derivative(&self, k: usize) -> nalgebra::Vector2<f64> {
        nalgebra::Vector2::new(self.x.derivative(k), self.y.derivative(k))
    }

    pub fn map(&self, m: &nalgebra::Matrix2<f64>, b: &nalgebra::Vector2<f64>) -> Self {
        Self {
            x: (self.x * m[(0, 0)] + self.y * m[(0, 1)]).add_scalar(b.x),
            y: (self.x * m[(1, 0)] + self.y * m[(1, 1)]).add_scalar(b.y),
        }
    }
}
