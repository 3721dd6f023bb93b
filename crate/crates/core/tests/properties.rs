use std::f64::consts::TAU;

use funk_core::metric::{funk_distance, hilbert_metric, theta};
use funk_core::spheres::{SphereCurve, SphereSpec};
use funk_core::{BoundaryCurve, DomainSpec, PointedVector, Shape};
use nalgebra::Vector2;
use proptest::prelude::*;

fn ellipse(a: f64, b: f64) -> BoundaryCurve {
    BoundaryCurve::new(Shape::Ellipse { a, b }, Vector2::zeros()).unwrap()
}

fn interior(d: &BoundaryCurve, angle: f64, frac: f64) -> Vector2<f64> {
    d.base_point() + Vector2::new(angle.cos(), angle.sin()) * (frac * d.omega(angle))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theta_is_positively_homogeneous(
        a in 0.5f64..3.0, b in 0.5f64..3.0, ang in 0.0..TAU, frac in 0.0f64..0.95,
        dir in 0.0..TAU, l in 0.01f64..100.0,
    ) {
        let d = ellipse(a, b);
        let x = interior(&d, ang, frac);
        let y = Vector2::new(dir.cos(), dir.sin());
        let t1 = theta(&d, &PointedVector::new(x, y)).unwrap();
        let tl = theta(&d, &PointedVector::new(x, y * l)).unwrap();
        prop_assert!((tl - l * t1).abs() <= 1e-12 * tl.abs().max(1.0));
    }

    #[test]
    fn funk_distance_satisfies_the_triangle_inequality(
        a in 0.5f64..3.0, b in 0.5f64..3.0,
        p in (0.0..TAU, 0.0f64..0.95), q in (0.0..TAU, 0.0f64..0.95), r in (0.0..TAU, 0.0f64..0.95),
    ) {
        let d = ellipse(a, b);
        let (p, q, r) = (interior(&d, p.0, p.1), interior(&d, q.0, q.1), interior(&d, r.0, r.1));
        let pq = funk_distance(&d, &p, &q).unwrap();
        let qr = funk_distance(&d, &q, &r).unwrap();
        let pr = funk_distance(&d, &p, &r).unwrap();
        prop_assert!(pq >= 0.0 && qr >= 0.0 && pr >= 0.0);
        prop_assert!(pr <= pq + qr + 1e-12);
    }

    #[test]
    fn hilbert_metric_is_reversible(ang in 0.0..TAU, frac in 0.0f64..0.95, dir in 0.0..TAU) {
        let d = BoundaryCurve::new(Shape::unit_disk(), Vector2::new(0.3, -0.2)).unwrap();
        let x = interior(&d, ang, frac);
        let y = Vector2::new(dir.cos(), dir.sin());
        let f = hilbert_metric(&d, &PointedVector::new(x, y)).unwrap();
        let b = hilbert_metric(&d, &PointedVector::new(x, -y)).unwrap();
        prop_assert!((f - b).abs() <= 1e-15 * f);
    }

    #[test]
    fn forward_spheres_are_nested(r in 0.1f64..8.0, dr in 0.01f64..2.0, phi in 0.0..TAU) {
        let d = BoundaryCurve::new(Shape::Ellipse { a: 2.0, b: 1.0 }, Vector2::new(0.5, 0.2)).unwrap();
        let o = d.base_point();
        let inner = SphereCurve::new(&d, SphereSpec::forward(r)).unwrap().point(phi).c;
        let outer = SphereCurve::new(&d, SphereSpec::forward(r + dr)).unwrap().point(phi).c;
        prop_assert!((inner - o).norm() < (outer - o).norm());
        prop_assert!(d.contains(&outer));
    }

    #[test]
    fn spec_documents_round_trip(
        kind in 0usize..3, a in 0.5f64..3.0, b in 0.5f64..3.0,
        c3 in -0.05f64..0.05, s2 in -0.05f64..0.05, o in (-0.2f64..0.2, -0.2f64..0.2),
    ) {
        let shape = match kind {
            0 => Shape::Disk { radius: a },
            1 => Shape::Ellipse { a, b },
            _ => Shape::FourierRadial { cos: vec![1.0, 0.0, 0.0, c3], sin: vec![0.0, 0.0, s2] },
        };
        let spec = DomainSpec { name: "p".into(), shape, base_point: Vector2::new(o.0, o.1) };
        let back = DomainSpec::parse(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert!(back.build().is_ok());
    }
}
