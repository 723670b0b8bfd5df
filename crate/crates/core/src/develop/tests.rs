use std::f64::consts::PI;

use super::*;
use crate::document::{InputDocument, Problem};
use crate::fixtures;
use crate::geometry::Point;
use crate::verify::{self, Verified};

fn setup(doc: &InputDocument) -> (Problem, Verified<f64>) {
    let pr = doc.load(doc.config()).unwrap();
    let v = verify::verify_all(&pr.polyhedron, &pr.pairing, &pr.config);
    (pr, v)
}

/// `|{(a, b) in Z^2 : |a| + |b| <= l}|`, by brute force.
fn lattice_ball(l: i64) -> usize {
    let mut n = 0;
    for a in -l..=l {
        for b in -l..=l {
            if a.abs() + b.abs() <= l {
                n += 1;
            }
        }
    }
    n
}

fn letters(pres: &Presentation, r: &Relation) -> Vec<(String, bool)> {
    r.letters.iter().map(|l| (pres.generators[l.generator].clone(), l.inverse)).collect()
}

fn parse(word: &str) -> Vec<(String, bool)> {
    word.split_whitespace().map(|t| (t.trim_end_matches("^-1").to_string(), t.ends_with("^-1"))).collect()
}

fn inverse(w: &[(String, bool)]) -> Vec<(String, bool)> {
    w.iter().rev().map(|(g, i)| (g.clone(), !i)).collect()
}

fn cyclically_equal(a: &[(String, bool)], b: &[(String, bool)]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter()))
}

#[test]
fn square_torus_counts_match_lattice_balls() {
    let (pr, _) = setup(&fixtures::square_torus());
    for l in 0..=3 {
        let dev = enumerate_translates(&pr.polyhedron, &pr.pairing, l);
        assert_eq!(dev.translates.len(), lattice_ball(l as i64), "depth {l}");
        assert!(dev.ambiguities.is_empty());
    }
}

#[test]
fn translates_are_consistent_with_their_words() {
    let (pr, _) = setup(&fixtures::octagon_genus2());
    let dev = enumerate_translates(&pr.polyhedron, &pr.pairing, 2);
    assert_eq!(dev.translates[0].word, Vec::<usize>::new());
    for t in &dev.translates {
        let g = word_isometry(&pr.polyhedron, &pr.pairing, &t.word);
        assert!(g.deviation(&t.iso) < 1e-9);
    }
    // Prefix closure.
    let words: Vec<&Vec<usize>> = dev.translates.iter().map(|t| &t.word).collect();
    for w in &words {
        if let Some((_, prefix)) = w.split_last() {
            assert!(words.iter().any(|v| v.as_slice() == prefix));
        }
    }
}

#[test]
fn quadrant_stabilizes_at_four() {
    let (pr, _) = setup(&fixtures::quadrant());
    for l in 3..=6 {
        assert_eq!(enumerate_translates(&pr.polyhedron, &pr.pairing, l).translates.len(), 4);
    }
}

#[test]
fn face_point_has_two_neighbours() {
    let (pr, v) = setup(&fixtures::square_torus());
    let x = Point::new(vec![0.5, 0.0]);
    let fns = formal_neighbours(&pr.polyhedron, &pr.pairing, &v.cycles, &x).unwrap();
    assert_eq!(fns.len(), 2);
    for e in &fns.entries {
        assert!(pr.polyhedron.space.dist(&e.iso.apply(&e.point), &x) < 1e-12);
    }
    assert!(pr.polyhedron.space.dist(&fns.entries[1].point, &Point::new(vec![0.5, 1.0])) < 1e-12);
}

#[test]
fn vertex_neighbours_follow_the_cycle() {
    for doc in [fixtures::square_torus(), fixtures::octagon_genus2(), fixtures::quadrant()] {
        let (pr, v) = setup(&doc);
        let p = &pr.polyhedron;
        for e in 0..p.edges.len() {
            let x = p.edge_midpoint(e);
            let fns = formal_neighbours(p, &pr.pairing, &v.cycles, &x).unwrap();
            let c = v.cycles.iter().find(|c| c.edges().contains(&e)).unwrap();
            assert_eq!(fns.len(), c.geometric_len());
            for (i, a) in fns.entries.iter().enumerate() {
                assert!(p.space.dist(&a.iso.apply(&a.point), &x) < 1e-9);
                assert!(word_isometry(p, &pr.pairing, &a.word).deviation(&a.iso) < 1e-9);
                for b in &fns.entries[i + 1..] {
                    assert!(a.iso.deviation(&b.iso) > 1e-6);
                }
            }
        }
    }
}

#[test]
fn interior_point_has_no_neighbours() {
    let (pr, v) = setup(&fixtures::square_torus());
    let err = formal_neighbours(&pr.polyhedron, &pr.pairing, &v.cycles, &Point::new(vec![0.5, 0.5])).unwrap_err();
    assert!(matches!(err, DevelopError::NotBoundary(_)));
}

#[test]
fn local_balls_tile_on_the_square_torus() {
    let (pr, v) = setup(&fixtures::square_torus());
    for x in [[0.0, 0.0], [0.5, 0.0]] {
        let r = local_ball_check(&pr.polyhedron, &pr.pairing, &v.cycles, &Point::new(x.to_vec()), 0.1, 16).unwrap();
        assert_eq!(r.status, Status::Pass, "{x:?}");
        assert_eq!(r.max_multiplicity, 1);
    }
}

#[test]
fn wide_octagon_vertex_is_covered_four_times() {
    let (pr, v) = setup(&fixtures::octagon_angle_pi3());
    let p = &pr.polyhedron;
    let x = p.edge_midpoint(0);
    let r = local_ball_check(p, &pr.pairing, &v.cycles, &x, v.d_eff / 4.0, 16).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.neighbours, 24);
    // 24 corners of angle π/3 wrap 8π / 2π = 4 times around the vertex.
    assert_eq!(r.max_multiplicity, (24.0 * (PI / 3.0) / (2.0 * PI)).round() as usize);
}

#[test]
fn square_torus_checks_pass() {
    let (pr, v) = setup(&fixtures::square_torus());
    let p = &pr.polyhedron;
    let dev = enumerate_translates(p, &pr.pairing, 2);
    assert_eq!(overlap_check(&dev, p, &pr.pairing, 16, v.d_eff).status, Status::Pass);
    let c = covering_check(&dev, p, &Point::new(vec![0.5, 0.5]), 1.0, 16);
    assert_eq!(c.status, Status::Pass);
    assert!((default_radius(p, &Point::new(vec![0.5, 0.5]), 2, 1.0) - 1.0).abs() < 1e-12);
}

#[test]
fn single_tile_cannot_cover_a_large_ball() {
    let (pr, _) = setup(&fixtures::square_torus());
    let dev = enumerate_translates(&pr.polyhedron, &pr.pairing, 0);
    let c = covering_check(&dev, &pr.polyhedron, &Point::new(vec![0.5, 0.5]), 2.0, 16);
    assert_eq!(c.status, Status::Fail);
    assert!(!c.boundary_witnesses.is_empty());
}

#[test]
fn strip_band_is_covered() {
    let (pr, _) = setup(&fixtures::free_group_strip());
    let p = &pr.polyhedron;
    for l in 1..=3 {
        let dev = enumerate_translates(p, &pr.pairing, l);
        assert_eq!(dev.translates.len(), 2 * l + 1);
        let r = l as f64 * fixtures::STRIP_TRANSLATION / 4.0;
        assert_eq!(covering_check(&dev, p, &p.space.origin(), r, 16).status, Status::Pass);
    }
}

#[test]
fn presentations_of_fixtures() {
    let (pr, v) = setup(&fixtures::square_torus());
    let pres = presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
    assert_eq!(pres.generators.len(), 2);
    assert_eq!(pres.relations.len(), 1);
    let w = letters(&pres, &pres.relations[0]);
    let target = parse("a b a^-1 b^-1");
    assert!(cyclically_equal(&w, &target) || cyclically_equal(&w, &inverse(&target)), "{}", pres.text());

    let (pr, v) = setup(&fixtures::octagon_genus2());
    let pres = presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
    assert_eq!(pres.generators, ["a", "b", "c", "d"]);
    assert_eq!(pres.relations.len(), 1);
    let w = letters(&pres, &pres.relations[0]);
    let target = parse("a b a^-1 b^-1 c d c^-1 d^-1");
    assert!(cyclically_equal(&w, &target) || cyclically_equal(&w, &inverse(&target)), "{}", pres.text());

    let (pr, v) = setup(&fixtures::free_group_strip());
    let pres = presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
    assert_eq!(pres.generators.len(), 1);
    assert!(pres.relations.is_empty());
    assert_eq!(pres.text(), "generators: a\nrelations:\n");

    let (pr, v) = setup(&fixtures::quadrant());
    let pres = presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
    assert_eq!(pres.relations[0].text, "r^4");
}

#[test]
fn cycle_relations_hold_numerically() {
    for doc in [fixtures::square_torus(), fixtures::hexagonal_torus(), fixtures::octagon_genus2(), fixtures::quadrant()] {
        let (pr, v) = setup(&doc);
        let pres = presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
        for r in &pres.relations {
            let mut g = crate::geometry::Isometry::identity(pr.polyhedron.space);
            for l in &r.letters {
                let s = (0..pr.pairing.letters.len()).find(|&s| pr.pairing.letters[s] == *l).unwrap();
                g = g.compose(&pr.pairing.iso[s]);
            }
            assert!(g.is_identity(1e-8), "{}", r.text);
        }
    }
}

#[test]
fn svg_is_deterministic_and_checks_charts() {
    let (pr, _) = setup(&fixtures::octagon_genus2());
    let p = &pr.polyhedron;
    let dev = enumerate_translates(p, &pr.pairing, 1);
    let a = export_svg(&dev, p, Chart::PoincareDisk).unwrap();
    let b = export_svg(&dev, p, Chart::PoincareDisk).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("<?xml"));
    assert_eq!(a.matches("<polyline").count(), 9 * 8);
    assert!(export_svg(&dev, p, Chart::KleinDisk).is_ok());
    assert!(export_svg(&dev, p, Chart::EuclideanPlane).is_err());
    let (pr, _) = setup(&fixtures::prism_e3());
    let dev = enumerate_translates(&pr.polyhedron, &pr.pairing, 0);
    assert!(matches!(export_svg(&dev, &pr.polyhedron, Chart::EuclideanPlane), Err(DevelopError::Unsupported(_))));
    assert_eq!("klein-disk".parse::<Chart>().unwrap(), Chart::KleinDisk);
}
