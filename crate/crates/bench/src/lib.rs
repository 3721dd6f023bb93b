//! Shared fixtures for the benchmarks in `benches/`.

use funk_core::{shipped_specs, BoundaryCurve};

/// The shipped domains, built.
pub fn domains() -> Vec<(String, BoundaryCurve)> {
    shipped_specs()
        .into_iter()
        .map(|s| {
            let d = s.build().expect("shipped specs build");
            (s.name, d)
        })
        .collect()
}
