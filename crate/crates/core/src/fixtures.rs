//! Reference inputs: the shipped example documents, and helpers to build
//! regular polygons with side-pairings.

use std::f64::consts::PI;

use serde_json::json;

use crate::document::{
    EdgeDecl, GeometrySpec, HalfspaceSpec, HalfspacesSpec, InputDocument, OptionsSpec, PairingSpec, PolygonSpec, PolyhedronSpec,
};
use crate::geometry::{Frame, Isometry, Kind, ModelSpace, Point};

/// Vertices of the regular polygon with `n` sides and interior angle `beta`,
/// centered at the origin, `v_0` on the positive first axis, counterclockwise.
/// Hyperbolic circumradius from `cosh R = cot(π/n) cot(β/2)`; in the Euclidean
/// plane `beta` is forced to `(n - 2)π/n` and the circumradius is 1.
pub fn regular_polygon(space: ModelSpace, n: usize, beta: f64) -> Vec<Point<f64>> {
    let nf = n as f64;
    (0..n)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / nf;
            match space.kind {
                Kind::Euclidean => Point::new(vec![phi.cos(), phi.sin()]),
                Kind::Hyperbolic => {
                    let r = (1.0 / ((PI / nf).tan() * (beta / 2.0).tan())).acosh();
                    Point::new(vec![r.cosh(), r.sinh() * phi.cos(), r.sinh() * phi.sin()])
                }
            }
        })
        .collect()
}

/// Orientation-preserving isometry carrying side `i` (from `v_i` to `v_(i+1)`)
/// onto side `j` with `v_i -> v_(j+1)` and `v_(i+1) -> v_j`, which sends the
/// interior of a counterclockwise polygon to the exterior across side `j`.
pub fn side_pairing(space: ModelSpace, vs: &[Point<f64>], i: usize, j: usize) -> Isometry<f64> {
    let n = vs.len();
    let (a, b) = (&vs[i], &vs[(i + 1) % n]);
    let (c, d) = (&vs[(j + 1) % n], &vs[j]);
    let src = Frame::oriented_2d(&space, a.clone(), space.direction(a, b).expect("distinct vertices").vec).unwrap();
    let dst = Frame::oriented_2d(&space, c.clone(), space.direction(c, d).expect("distinct vertices").vec).unwrap();
    Isometry::from_frames(space, &src, &dst)
}

fn unsign_zero(x: f64) -> f64 {
    x + 0.0
}

/// Pairing row for face `face` with isometry `g`.
pub fn pairing_spec(face: &str, partner: &str, generator: Option<&str>, g: &Isometry<f64>) -> PairingSpec {
    let space = g.space();
    PairingSpec {
        face: face.into(),
        partner: partner.into(),
        generator: generator.map(Into::into),
        matrix: g.linear().rows().into_iter().map(|r| r.into_iter().map(unsign_zero).collect()).collect(),
        translation: (space.kind == Kind::Euclidean).then(|| g.translation().iter().copied().map(unsign_zero).collect()),
    }
}

/// Polygon document pairing side `i` with side `j` for each `(i, j, generator)`.
pub fn polygon_document(space: ModelSpace, vs: &[Point<f64>], pairs: &[(usize, usize, &str)], face_ids: Vec<String>) -> InputDocument {
    let mut pairing = Vec::new();
    for &(i, j, name) in pairs {
        let g = side_pairing(space, vs, i, j);
        pairing.push(pairing_spec(&face_ids[i], &face_ids[j], Some(name), &g));
        pairing.push(pairing_spec(&face_ids[j], &face_ids[i], None, &g.inverse()));
    }
    pairing.sort_by_key(|p| face_ids.iter().position(|f| *f == p.face));
    InputDocument {
        comment: None,
        geometry: GeometrySpec { model: space.kind, dim: space.dim },
        polyhedron: PolyhedronSpec {
            polygon: Some(PolygonSpec {
                vertices: vs.iter().map(|v| v.coords.clone()).collect(),
                face_ids: Some(face_ids),
                edge_ids: None,
            }),
            halfspaces: None,
            interior_witness: None,
        },
        pairing,
        options: OptionsSpec::default(),
        expected: None,
    }
}

fn ids(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn square_torus() -> InputDocument {
    let e2 = ModelSpace::euclidean(2);
    let vs: Vec<Point<f64>> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]].iter().map(|c| Point::new(c.to_vec())).collect();
    let mut doc = polygon_document(e2, &vs, &[(3, 1, "a"), (0, 2, "b")], ids(&["bottom", "right", "top", "left"]));
    if let Some(pg) = doc.polyhedron.polygon.as_mut() {
        pg.edge_ids = Some(ids(&["c00", "c10", "c11", "c01"]));
    }
    doc.comment = Some("Unit square; opposite sides glued by translations (torus).".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [{"n": 4, "k": 1}],
        "alpha": PI / 2.0,
        "translates": {"1": 5, "2": 13, "3": 25},
        "presentation": {"generators": 2, "relation_lengths": [4]}
    }));
    doc
}

pub fn hexagonal_torus() -> InputDocument {
    let e2 = ModelSpace::euclidean(2);
    let vs = regular_polygon(e2, 6, 2.0 * PI / 3.0);
    let mut doc = polygon_document(e2, &vs, &[(0, 3, "a"), (1, 4, "b"), (2, 5, "c")], ids(&["s0", "s1", "s2", "s3", "s4", "s5"]));
    doc.comment = Some("Regular hexagon; opposite sides glued by translations.".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [{"n": 3, "k": 1}, {"n": 3, "k": 1}],
        "alpha": 2.0 * PI / 3.0,
        "presentation": {"generators": 3, "relation_lengths": [3, 3]}
    }));
    doc
}

fn octagon(beta: f64) -> InputDocument {
    let h2 = ModelSpace::hyperbolic(2);
    let vs = regular_polygon(h2, 8, beta);
    // a b a^-1 b^-1 c d c^-1 d^-1 around the boundary.
    polygon_document(
        h2,
        &vs,
        &[(2, 0, "a"), (1, 3, "b"), (6, 4, "c"), (5, 7, "d")],
        ids(&["s0", "s1", "s2", "s3", "s4", "s5", "s6", "s7"]),
    )
}

pub fn octagon_genus2() -> InputDocument {
    let mut doc = octagon(PI / 4.0);
    doc.comment = Some("Regular hyperbolic octagon with angles π/4, glued as a b a^-1 b^-1 c d c^-1 d^-1 (genus 2).".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [{"n": 8, "k": 1}],
        "alpha": PI / 4.0,
        "presentation": {"generators": 4, "relation_lengths": [8]}
    }));
    doc
}

pub fn octagon_angle_pi3() -> InputDocument {
    let mut doc = octagon(PI / 3.0);
    doc.comment = Some("Regular hyperbolic octagon with angles π/3 under the genus-2 gluing; angle sum 8π/3.".into());
    doc.expected = Some(json!({
        "exit": 1,
        "blame": "condition2",
        "cycles": [{"n": 8, "k": 3}],
        "alpha": PI / 3.0,
        "combinatorial_total_angle": 8.0 * PI / 3.0
    }));
    doc
}

/// The square torus with the left side glued to the right one by the
/// reflection `(x, y) -> (1 - x, y)`, which keeps the interior on the same side.
pub fn square_reflection() -> InputDocument {
    let mut doc = square_torus();
    let e2 = ModelSpace::euclidean(2);
    let m = crate::linalg::Mat::from_rows(&[vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let r = Isometry::new(e2, m, vec![1.0, 0.0], 1e-12).unwrap();
    for p in doc.pairing.iter_mut() {
        if p.face == "left" || p.face == "right" {
            *p = pairing_spec(&p.face.clone(), &p.partner.clone(), p.generator.as_deref(), &r);
        }
    }
    doc.comment = Some("Unit square with the left/right gluing done by a reflection.".into());
    doc.expected = Some(json!({"exit": 1, "blame": "condition1"}));
    doc
}

fn halfspace_document(space: ModelSpace, faces: Vec<HalfspaceSpec>, edges: Option<Vec<EdgeDecl>>, witness: Vec<f64>, pairing: Vec<PairingSpec>) -> InputDocument {
    InputDocument {
        comment: None,
        geometry: GeometrySpec { model: space.kind, dim: space.dim },
        polyhedron: PolyhedronSpec {
            polygon: None,
            halfspaces: Some(HalfspacesSpec { faces, edges }),
            interior_witness: Some(witness),
        },
        pairing,
        options: OptionsSpec::default(),
        expected: None,
    }
}

fn halfspace(id: &str, normal: Vec<f64>, offset: f64) -> HalfspaceSpec {
    HalfspaceSpec { id: id.into(), normal, offset }
}

pub fn quadrant() -> InputDocument {
    let e2 = ModelSpace::euclidean(2);
    let rho = Isometry::rotation_2d(PI / 2.0);
    let faces = vec![halfspace("ray_x", vec![0.0, 1.0], 0.0), halfspace("ray_y", vec![1.0, 0.0], 0.0)];
    let edges = Some(vec![EdgeDecl { id: "origin".into(), faces: ["ray_x".into(), "ray_y".into()] }]);
    let pairing = vec![pairing_spec("ray_x", "ray_y", Some("r"), &rho), pairing_spec("ray_y", "ray_x", None, &rho.inverse())];
    let mut doc = halfspace_document(e2, faces, edges, vec![1.0, 1.0], pairing);
    doc.comment = Some("Quadrant x >= 0, y >= 0; the positive x-axis glued to the positive y-axis by a quarter turn.".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [{"n": 1, "k": 4}],
        "alpha": PI / 2.0,
        "translates": {"3": 4, "4": 4, "5": 4},
        "presentation": {"generators": 1, "relation_lengths": [4]}
    }));
    doc
}

pub fn prism_e3() -> InputDocument {
    let e3 = ModelSpace::euclidean(3);
    let faces = vec![
        halfspace("x0", vec![1.0, 0.0, 0.0], 0.0),
        halfspace("x1", vec![-1.0, 0.0, 0.0], -1.0),
        halfspace("y0", vec![0.0, 1.0, 0.0], 0.0),
        halfspace("y1", vec![0.0, -1.0, 0.0], -1.0),
    ];
    let edge = |id: &str, a: &str, b: &str| EdgeDecl { id: id.into(), faces: [a.into(), b.into()] };
    let edges = Some(vec![edge("l00", "x0", "y0"), edge("l01", "x0", "y1"), edge("l10", "x1", "y0"), edge("l11", "x1", "y1")]);
    let tx = Isometry::euclidean_translation(e3, vec![1.0, 0.0, 0.0]);
    let ty = Isometry::euclidean_translation(e3, vec![0.0, 1.0, 0.0]);
    let pairing = vec![
        pairing_spec("x0", "x1", Some("a"), &tx),
        pairing_spec("x1", "x0", None, &tx.inverse()),
        pairing_spec("y0", "y1", Some("b"), &ty),
        pairing_spec("y1", "y0", None, &ty.inverse()),
    ];
    let mut doc = halfspace_document(e3, faces, edges, vec![0.5, 0.5, 0.0], pairing);
    doc.comment = Some("Infinite square prism in E^3; opposite strips glued by unit translations.".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [{"n": 4, "k": 1}],
        "alpha": PI / 2.0,
        "presentation": {"generators": 2, "relation_lengths": [4]}
    }));
    doc
}

/// Translation length of the strip's generator.
pub const STRIP_TRANSLATION: f64 = 1.0;

pub fn free_group_strip() -> InputDocument {
    let h2 = ModelSpace::hyperbolic(2);
    let a: f64 = STRIP_TRANSLATION / 2.0;
    // Geodesics at distance a on either side of the origin, perpendicular to the x1-axis.
    let faces = vec![halfspace("left", vec![-a.sinh(), a.cosh(), 0.0], 0.0), halfspace("right", vec![-a.sinh(), -a.cosh(), 0.0], 0.0)];
    let t = Isometry::boost(2, 1, STRIP_TRANSLATION);
    let pairing = vec![pairing_spec("left", "right", Some("a"), &t), pairing_spec("right", "left", None, &t.inverse())];
    let mut doc = halfspace_document(h2, faces, None, vec![1.0, 0.0, 0.0], pairing);
    doc.comment = Some("Band between two ultraparallel geodesics in H^2, glued by a translation along their common perpendicular.".into());
    doc.expected = Some(json!({
        "exit": 0,
        "cycles": [],
        "presentation": {"generators": 1, "relation_lengths": []}
    }));
    doc
}

/// Every well-formed shipped example, by file stem.
pub fn documents() -> Vec<(&'static str, InputDocument)> {
    vec![
        ("square_torus", square_torus()),
        ("hexagonal_torus", hexagonal_torus()),
        ("octagon_genus2", octagon_genus2()),
        ("octagon_angle_pi3", octagon_angle_pi3()),
        ("quadrant", quadrant()),
        ("prism_e3", prism_e3()),
        ("free_group_strip", free_group_strip()),
        ("square_reflection", square_reflection()),
    ]
}

/// Malformed examples (file stem, text), rejected as input errors.
pub fn malformed() -> Vec<(&'static str, String)> {
    vec![
        ("malformed_syntax", "{\"geometry\": {\"model\": \"euclidean\", \"dim\": 2},\n \"polyhedron\": {\"polygon\": {\"vertices\": [[0, 0], [1, 0]\n".to_string()),
        (
            "malformed_schema",
            "{\n  \"geometry\": {\"model\": \"spherical\", \"dim\": 2},\n  \"polyhedron\": {\"polygon\": {\"vertices\": [[0, 0], [1, 0], [0, 1]]}},\n  \"pairing\": []\n}\n"
                .to_string(),
        ),
    ]
}
