//! Funk geometry on strictly convex planar domains.

// `!(a < b)` is used on purpose so that NaN takes the failing branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod affine;
pub mod curvature;
mod dd;
pub mod domain;
pub mod error;
pub mod harness;
pub mod jet;
pub mod metric;
pub mod normalization;
pub mod series;
pub mod spec;
pub mod spheres;

pub use affine::Affine2;
pub use curvature::{Acceleration, CurvatureSet, CurvePointData, NormalSide, UnitNormal};
pub use domain::{BoundaryCurve, DomainStats, RayHit, Shape};
pub use error::{FunkError, Result, SpecError};
pub use metric::{MetricJet, MetricTensor, PointedVector};
pub use normalization::{AffineNormalization, GraphFrame};
pub use spec::{shipped_specs, DomainSpec};
pub use spheres::{Orientation, SphereCurve, SpherePoint, SphereSpec};
