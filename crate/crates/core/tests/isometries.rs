use std::f64::consts::PI;

use proptest::prelude::*;
use tessella_core::geometry::{Isometry, ModelSpace, Point};

fn h2() -> ModelSpace {
    ModelSpace::hyperbolic(2)
}

/// Point at distance `r` from the origin in direction `phi`, via the exp map.
fn h2_point(r: f64, phi: f64) -> Point<f64> {
    Point::new(vec![r.cosh(), r.sinh() * phi.cos(), r.sinh() * phi.sin()])
}

fn h2_isometry(theta: f64, t: f64, psi: f64) -> Isometry<f64> {
    Isometry::hyperbolic_rotation(2, theta).compose(&Isometry::boost(2, 1, t)).compose(&Isometry::hyperbolic_rotation(2, psi))
}

fn e2_isometry(theta: f64, dx: f64, dy: f64) -> Isometry<f64> {
    Isometry::translation_2d([dx, dy]).compose(&Isometry::rotation_2d(theta))
}

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

proptest! {
    #[test]
    fn hyperbolic_isometries_preserve_distance(
        theta in angle(), t in -2.0..2.0f64, psi in angle(),
        r1 in 0.0..3.0f64, p1 in angle(), r2 in 0.0..3.0f64, p2 in angle(),
    ) {
        let s = h2();
        let g = h2_isometry(theta, t, psi);
        let (x, y) = (h2_point(r1, p1), h2_point(r2, p2));
        let d = s.dist(&x, &y);
        prop_assert!((s.dist(&g.apply(&x), &g.apply(&y)) - d).abs() < 1e-8 * (1.0 + d));
        prop_assert!(s.check_point(&g.apply(&x), 1e-8).is_ok());
        prop_assert!(g.isometry_defect() < 1e-9);
    }

    #[test]
    fn hyperbolic_inverse_and_composition(
        a in (angle(), -2.0..2.0f64, angle()), b in (angle(), -2.0..2.0f64, angle()),
        r in 0.0..3.0f64, phi in angle(),
    ) {
        let g = h2_isometry(a.0, a.1, a.2);
        let h = h2_isometry(b.0, b.1, b.2);
        prop_assert!(g.compose(&g.inverse()).is_identity(1e-8));
        prop_assert!(g.inverse().compose(&g).is_identity(1e-8));
        let x = h2_point(r, phi);
        let s = h2();
        // (g ∘ h)(x) = g(h(x))
        prop_assert!(s.dist(&g.compose(&h).apply(&x), &g.apply(&h.apply(&x))) < 1e-7);
        prop_assert!(g.compose(&h).inverse().deviation(&h.inverse().compose(&g.inverse())) < 1e-7);
    }

    #[test]
    fn boosts_translate_by_their_parameter(t in -3.0..3.0f64) {
        let s = h2();
        let o = s.origin::<f64>();
        prop_assert!((s.dist(&o, &Isometry::boost(2, 1, t).apply(&o)) - t.abs()).abs() < 1e-9);
    }

    #[test]
    fn hyperbolic_triangles_have_angle_defect(r1 in 0.1..2.0f64, p1 in angle(), r2 in 0.1..2.0f64, p2 in angle(), r3 in 0.1..2.0f64, p3 in angle()) {
        let s = h2();
        let v = [h2_point(r1, p1), h2_point(r2, p2), h2_point(r3, p3)];
        let side = |i: usize, j: usize| s.dist(&v[i], &v[j]);
        let (a, b, c) = (side(1, 2), side(0, 2), side(0, 1));
        prop_assume!(a > 1e-2 && b > 1e-2 && c > 1e-2);
        // Hyperbolic law of cosines for the angle opposite each side.
        let ang = |opp: f64, x: f64, y: f64| ((x.cosh() * y.cosh() - opp.cosh()) / (x.sinh() * y.sinh())).clamp(-1.0, 1.0).acos();
        let sum = ang(a, b, c) + ang(b, a, c) + ang(c, a, b);
        prop_assert!(sum < PI + 1e-9);
        // Same angles from the tangent directions.
        let dir = |i: usize, j: usize| s.direction(&v[i], &v[j]).unwrap();
        let at0 = {
            let (u, w) = (dir(0, 1), dir(0, 2));
            s.form(&u.vec, &w.vec).clamp(-1.0, 1.0).acos()
        };
        prop_assert!((at0 - ang(a, b, c)).abs() < 1e-6, "{} vs {}", at0, ang(a, b, c));
    }

    #[test]
    fn euclidean_isometries(a in (angle(), -5.0..5.0f64, -5.0..5.0f64), b in (angle(), -5.0..5.0f64, -5.0..5.0f64), x in (-5.0..5.0f64, -5.0..5.0f64), y in (-5.0..5.0f64, -5.0..5.0f64)) {
        let s = ModelSpace::euclidean(2);
        let g = e2_isometry(a.0, a.1, a.2);
        let h = e2_isometry(b.0, b.1, b.2);
        let (x, y) = (Point::new(vec![x.0, x.1]), Point::new(vec![y.0, y.1]));
        prop_assert!((s.dist(&g.apply(&x), &g.apply(&y)) - s.dist(&x, &y)).abs() < 1e-9);
        prop_assert!(g.compose(&g.inverse()).is_identity(1e-9));
        prop_assert!(s.dist(&g.compose(&h).apply(&x), &g.apply(&h.apply(&x))) < 1e-9);
    }

    #[test]
    fn rotation_powers(j in 1usize..12, m in 2usize..13) {
        // Rotation by 2πj/m has order m / gcd(j, m).
        let gcd = (1..=j.min(m)).rev().find(|d| j % d == 0 && m % d == 0).unwrap();
        let order = m / gcd;
        let g = Isometry::hyperbolic_rotation(2, 2.0 * PI * j as f64 / m as f64);
        prop_assert!(g.power(order).is_identity(1e-9));
        for k in 1..order {
            prop_assert!(!g.power(k).is_identity(1e-6));
        }
    }
}

#[test]
fn distance_is_a_metric_on_sample_points() {
    let s = h2();
    let pts: Vec<Point<f64>> = (0..12).map(|i| h2_point(0.3 * i as f64, 1.7 * i as f64)).collect();
    for x in &pts {
        assert!(s.dist(x, x) < 1e-7);
        for y in &pts {
            assert!((s.dist(x, y) - s.dist(y, x)).abs() < 1e-12);
            for z in &pts {
                assert!(s.dist(x, z) <= s.dist(x, y) + s.dist(y, z) + 1e-9);
            }
        }
    }
}
