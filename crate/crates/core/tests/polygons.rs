use std::f64::consts::PI;

use proptest::prelude::*;
use tessella_core::document::InputDocument;
use tessella_core::fixtures::{self, polygon_document, regular_polygon, side_pairing};
use tessella_core::geometry::{Isometry, ModelSpace, Point};
use tessella_core::verify::{self, Status};

/// Interior angle at `v[i]` from side lengths alone (law of cosines).
fn vertex_angle(s: &ModelSpace, v: &[Point<f64>], i: usize) -> f64 {
    let n = v.len();
    let (p, q, r) = (&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]);
    let (a, b, d) = (s.dist(q, p), s.dist(q, r), s.dist(p, r));
    let c = if s.is_hyperbolic() {
        (a.cosh() * b.cosh() - d.cosh()) / (a.sinh() * b.sinh())
    } else {
        (a * a + b * b - d * d) / (2.0 * a * b)
    };
    c.clamp(-1.0, 1.0).acos()
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn regular_hyperbolic_polygons_have_the_requested_angle(n in 3usize..11, t in 0.05..0.95f64) {
        let beta = t * (n as f64 - 2.0) * PI / n as f64;
        let s = ModelSpace::hyperbolic(2);
        let v = regular_polygon(s, n, beta);
        for i in 0..n {
            prop_assert!(s.check_point(&v[i], 1e-9).is_ok());
            prop_assert!((vertex_angle(&s, &v, i) - beta).abs() < 1e-7);
        }
    }

    #[test]
    fn side_pairings_carry_sides_onto_partners(n in 3usize..11, t in 0.05..0.95f64, i in 0usize..10, j in 0usize..10) {
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let s = ModelSpace::hyperbolic(2);
        let v = regular_polygon(s, n, t * (n as f64 - 2.0) * PI / n as f64);
        let g = side_pairing(s, &v, i, j);
        prop_assert!(s.dist(&g.apply(&v[i]), &v[(j + 1) % n]) < 1e-8);
        prop_assert!(s.dist(&g.apply(&v[(i + 1) % n]), &v[j]) < 1e-8);
        prop_assert!(g.isometry_defect() < 1e-8);
    }

    #[test]
    fn opposite_side_gluings_pass_condition1(half in 2usize..6, t in 0.05..0.95f64) {
        let n = 2 * half;
        let s = ModelSpace::hyperbolic(2);
        let v = regular_polygon(s, n, t * (n as f64 - 2.0) * PI / n as f64);
        let names = ["a", "b", "c", "d", "e"];
        let pairs: Vec<(usize, usize, &str)> = (0..half).map(|i| (i, i + half, names[i])).collect();
        let doc = polygon_document(s, &v, &pairs, ids(n));
        let pr = doc.load(doc.config()).unwrap();
        let out = verify::verify_all(&pr.polyhedron, &pr.pairing, &pr.config);
        prop_assert_eq!(out.report.structural.status, Status::Pass);
        prop_assert_eq!(out.report.pairing.status, Status::Pass);
        prop_assert_eq!(out.report.condition1.status, Status::Pass);
    }

    #[test]
    fn far_placed_rotations_keep_their_order(half in 2usize..6, m in 3usize..13, u in 0.0..1.0f64, t in 0.0..2.0f64, phi in -PI..PI) {
        let n = 2 * half;
        // Angles 2πj/m below (n - 2)π/n.
        let j_max = (1..m).take_while(|&j| 2 * j * n < (n - 2) * m).count();
        prop_assume!(j_max > 0);
        let j = 1 + (u * j_max as f64) as usize;
        let s = ModelSpace::hyperbolic(2);
        let g = Isometry::hyperbolic_rotation(2, phi).compose(&Isometry::boost(2, 1, t));
        let beta = 2.0 * PI * j as f64 / m as f64;
        let v: Vec<Point<f64>> = regular_polygon(s, n, beta).iter().map(|x| s.normalize_point(&g.apply(x))).collect();
        // Adjacent sides glued about their shared vertex: a rotation by β there.
        let names = ["a", "b", "c", "d", "e"];
        let pairs: Vec<(usize, usize, &str)> = (0..half).map(|i| (2 * i, 2 * i + 1, names[i])).collect();
        let doc = polygon_document(s, &v, &pairs, ids(n));
        let pr = doc.load(doc.config()).unwrap();
        let out = verify::verify_all(&pr.polyhedron, &pr.pairing, &pr.config);
        let order = m / gcd(j, m);
        let fixed: Vec<_> = out.cycles.iter().filter(|c| c.len() == 1).collect();
        prop_assert_eq!(fixed.len(), half);
        for c in fixed {
            prop_assert!(c.certified_by.is_some());
            prop_assert_eq!(c.multiplicity, order);
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn regular_euclidean_polygons() {
    let s = ModelSpace::euclidean(2);
    for n in 3..10 {
        let beta = (n as f64 - 2.0) * PI / n as f64;
        let v = regular_polygon(s, n, beta);
        for i in 0..n {
            assert!((vertex_angle(&s, &v, i) - beta).abs() < 1e-9);
            assert!((s.dist(&s.origin(), &v[i]) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn octagon_circumradius() {
    // cosh R = cot(π/n) cot(β/2) for the regular n-gon with angle β.
    let s = ModelSpace::hyperbolic(2);
    let v = regular_polygon(s, 8, PI / 4.0);
    let cot = |x: f64| 1.0 / x.tan();
    for p in &v {
        assert!((s.dist(&s.origin(), p).cosh() - cot(PI / 8.0) * cot(PI / 8.0)).abs() < 1e-9);
    }
}

#[test]
fn documents_round_trip() {
    for (name, doc) in fixtures::documents() {
        let text = doc.to_json();
        let back = InputDocument::from_json(&text).unwrap();
        assert_eq!(back, doc, "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
}

#[test]
fn malformed_documents_are_rejected() {
    for (name, text) in fixtures::malformed() {
        assert!(InputDocument::from_json(&text).is_err(), "{name}");
    }
    let unknown = fixtures::square_torus().to_json().replacen("\"geometry\"", "\"colour\": 1,\n  \"geometry\"", 1);
    assert!(InputDocument::from_json(&unknown).is_err());
}

#[test]
fn fixture_verdicts() {
    for (name, doc) in fixtures::documents() {
        let exp = doc.expected.clone().unwrap();
        let pr = doc.load(doc.config()).unwrap();
        let out = verify::verify_all(&pr.polyhedron, &pr.pairing, &pr.config);
        let want = match exp["exit"].as_i64().unwrap() {
            0 => Status::Pass,
            1 => Status::Fail,
            _ => Status::Inconclusive,
        };
        assert_eq!(out.report.verdict, want, "{name}");
        if let Some(b) = exp.get("blame") {
            assert_eq!(out.report.blame.as_deref(), b.as_str(), "{name}");
        }
    }
}
