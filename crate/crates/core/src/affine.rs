use nalgebra::{Matrix2, Vector2};
use serde::Serialize;

use crate::dd::{Dd, DdVec};

/// Planar affine map `x ↦ m x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Affine2 {
    pub m: Matrix2<f64>,
    pub b: Vector2<f64>,
}

impl Affine2 {
    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
            b: Vector2::zeros(),
        }
    }

    pub fn new(m: Matrix2<f64>, b: Vector2<f64>) -> Self {
        Self { m, b }
    }

    pub fn linear(m: Matrix2<f64>) -> Self {
        Self::new(m, Vector2::zeros())
    }

    pub fn translation(b: Vector2<f64>) -> Self {
        Self::new(Matrix2::identity(), b)
    }

    #[inline]
    pub fn apply(&self, x: &Vector2<f64>) -> Vector2<f64> {
        self.m * x + self.b
    }

    #[inline]
    /// `apply` with the result in double-double precision.
    pub(crate) fn apply_dd(&self, x: &Vector2<f64>) -> DdVec {
        let (vx, vy) = self.apply_vector_dd(x);
        DdVec::new(vx + self.b.x, vy + self.b.y)
    }

    pub(crate) fn apply_vector_dd(&self, v: &Vector2<f64>) -> (Dd, Dd) {
        let m = &self.m;
        (
            Dd::prod(m[(0, 0)], v.x) + Dd::prod(m[(0, 1)], v.y),
            Dd::prod(m[(1, 0)], v.x) + Dd::prod(m[(1, 1)], v.y),
        )
    }

    pub fn apply_vector(&self, v: &Vector2<f64>) -> Vector2<f64> {
        self.m * v
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Affine2) -> Affine2 {
        Affine2::new(self.m * inner.m, self.m * inner.b + self.b)
    }

    pub fn inverse(&self) -> Option<Affine2> {
        let minv = self.m.try_inverse()?;
        Some(Affine2::new(minv, -(minv * self.b)))
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }
}
