//! Construction of polyhedra from polygon vertex lists (dimension 2) and
//! half-space lists (dimensions 2 and 3).

use crate::config::Tolerances;
use crate::geometry::{Hyperplane, ModelSpace, Point};
use crate::linalg;
use crate::sampling;
use crate::scalar::Real;

use super::halfspace;
use super::{BuildError, Edge, EdgeLocus, Face, FaceExtent, GeodesicPiece, Location, Polyhedron, Shape};

/// Declared edge of a half-space construction: its id and the two faces it joins.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub faces: [String; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction<T> {
    /// Closed polygon `v0 v1 ... v(n-1)`; side `i` runs from `v_i` to `v_(i+1)`
    /// and edge `i` is the vertex `v_i`, shared by sides `i - 1` and `i`.
    Polygon {
        vertices: Vec<Point<T>>,
        face_ids: Option<Vec<String>>,
        edge_ids: Option<Vec<String>>,
    },
    /// Intersection of the closed half-spaces `{eval >= 0}`.
    Halfspaces {
        faces: Vec<(String, Hyperplane<T>)>,
        edges: Option<Vec<EdgeSpec>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildInput<T> {
    pub construction: Construction<T>,
    pub witness: Option<Point<T>>,
}

impl<T: Real> Polyhedron<T> {
    pub fn build(space: ModelSpace, input: BuildInput<T>, tol: Tolerances<T>, window: T) -> Result<Self, BuildError> {
        let mut p = match input.construction {
            Construction::Polygon { vertices, face_ids, edge_ids } => {
                polygon(space, vertices, face_ids, edge_ids, tol, window)?
            }
            Construction::Halfspaces { faces, edges } => {
                halfspace::build(space, faces, edges, input.witness.clone(), tol, window)?
            }
        };
        match input.witness {
            Some(w) => {
                space.check_point(&w, tol.iso)?;
                let w = space.normalize_point(&w);
                if p.locate(&w) != Location::Interior {
                    return Err(BuildError::EmptyInterior);
                }
                p.witness = w;
            }
            None => {
                if let Shape::Polygon { .. } = p.shape {
                    p.witness = polygon_witness(&p)?;
                }
            }
        }
        p.check_incidence()?;
        Ok(p)
    }

    fn check_incidence(&self) -> Result<(), BuildError> {
        for (ix, e) in self.edges.iter().enumerate() {
            let (a, b) = e.faces;
            if a == b {
                return Err(BuildError::EdgeIncidence(format!("edge {} joins face {} to itself", e.id, self.faces[a].id)));
            }
            let count = self.faces.iter().filter(|f| f.edges.contains(&ix)).count();
            if count != 2 || !self.faces[a].edges.contains(&ix) || !self.faces[b].edges.contains(&ix) {
                return Err(BuildError::EdgeIncidence(format!("edge {} is listed by {count} faces", e.id)));
            }
        }
        let mut ids: Vec<&str> = self.faces.iter().map(|f| f.id.as_str()).chain(self.edges.iter().map(|e| e.id.as_str())).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(BuildError::Invalid(format!("duplicate id {}", w[0])));
        }
        Ok(())
    }
}

fn polygon<T: Real>(
    space: ModelSpace,
    vertices: Vec<Point<T>>,
    face_ids: Option<Vec<String>>,
    edge_ids: Option<Vec<String>>,
    tol: Tolerances<T>,
    window: T,
) -> Result<Polyhedron<T>, BuildError> {
    if space.dim != 2 {
        return Err(BuildError::Invalid("polygon constructions need dimension 2".into()));
    }
    let n = vertices.len();
    if n < 2 {
        return Err(BuildError::Invalid("a polygon needs at least 2 vertices".into()));
    }
    let face_ids = ids_or_default(face_ids, n, "s", "face_ids")?;
    let edge_ids = ids_or_default(edge_ids, n, "v", "edge_ids")?;
    let mut vs = Vec::with_capacity(n);
    for v in &vertices {
        space.check_point(v, tol.iso)?;
        vs.push(space.normalize_point(v));
    }
    for i in 0..n {
        if space.dist(&vs[i], &vs[(i + 1) % n]) <= tol.mem {
            return Err(BuildError::Invalid(format!("vertices {} and {} coincide", edge_ids[i], edge_ids[(i + 1) % n])));
        }
    }
    let chart: Vec<Vec<T>> = vs.iter().map(|v| space.klein(v)).collect();
    check_simple(&chart, &face_ids)?;
    let area = signed_area(&chart);
    if area.abs() <= tol.mem {
        return Err(BuildError::EmptyInterior);
    }
    let sign: i8 = if area > T::zero() { 1 } else { -1 };

    let mut faces = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        let t = space.direction(a, b).ok_or(BuildError::Invalid(format!("side {} is degenerate", face_ids[i])))?;
        let back = space.direction(b, a).ok_or(BuildError::Invalid(format!("side {} is degenerate", face_ids[i])))?;
        let nrm = space
            .left_normal(a, &t.vec)
            .ok_or(BuildError::Invalid(format!("side {} is degenerate", face_ids[i])))?;
        let len = space.dist(a, b);
        faces.push(Face {
            id: face_ids[i].clone(),
            carrier: Hyperplane::through(&space, a, &nrm),
            interior_sign: sign,
            bounds: vec![Hyperplane::through(&space, a, &t.vec), Hyperplane::through(&space, b, &back.vec)],
            edges: vec![i, (i + 1) % n],
            extent: FaceExtent::Segment(GeodesicPiece { origin: a.clone(), dir: t.vec, lo: T::zero(), hi: len }),
        });
    }
    for f in &mut faces {
        f.edges.sort_unstable();
        f.edges.dedup();
    }
    let edges = (0..n)
        .map(|i| Edge { id: edge_ids[i].clone(), faces: ((i + n - 1) % n, i), locus: EdgeLocus::Point(vs[i].clone()) })
        .collect();
    Ok(Polyhedron {
        space,
        faces,
        edges,
        witness: vs[0].clone(),
        shape: Shape::Polygon { chart },
        window,
        tol,
    })
}

fn ids_or_default(ids: Option<Vec<String>>, n: usize, prefix: &str, what: &str) -> Result<Vec<String>, BuildError> {
    match ids {
        Some(ids) if ids.len() != n => Err(BuildError::Invalid(format!("{what} has {} entries, expected {n}", ids.len()))),
        Some(ids) => Ok(ids),
        None => Ok((0..n).map(|i| format!("{prefix}{i}")).collect()),
    }
}

pub(crate) fn signed_area<T: Real>(chart: &[Vec<T>]) -> T {
    let n = chart.len();
    let twice: T = (0..n)
        .map(|i| {
            let (a, b) = (&chart[i], &chart[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    twice / T::lit(2.0)
}

fn orient<T: Real>(a: &[T], b: &[T], c: &[T]) -> T {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Rejects proper crossings between non-adjacent sides, and adjacent sides
/// that fold back onto each other.
fn check_simple<T: Real>(chart: &[Vec<T>], ids: &[String]) -> Result<(), BuildError> {
    let n = chart.len();
    let side = |i: usize| (&chart[i], &chart[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = side(i);
        let (_, c) = side((i + 1) % n);
        let scale = linalg::norm(&linalg::sub(b, a)) * linalg::norm(&linalg::sub(c, b));
        let cr = orient(a, b, c);
        let dt = linalg::dot(&linalg::sub(b, a), &linalg::sub(c, b));
        if cr.abs() <= T::epsilon() * T::lit(16.0) * scale && dt < T::zero() {
            return Err(BuildError::SelfIntersecting(ids[i].clone(), ids[(i + 1) % n].clone()));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = side(j);
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            if o1 * o2 < T::zero() && o3 * o4 < T::zero() {
                return Err(BuildError::SelfIntersecting(ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Ok(())
}

/// Ray casting in the chart (even-odd rule).
pub(crate) fn chart_contains<T: Real>(chart: &[Vec<T>], x: &[T]) -> bool {
    let n = chart.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (&chart[i], &chart[j]);
        if (a[1] > x[1]) != (b[1] > x[1]) {
            let cross = (b[0] - a[0]) * (x[1] - a[1]) / (b[1] - a[1]) + a[0];
            if x[0] < cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn clearance<T: Real>(p: &Polyhedron<T>, x: &Point<T>) -> T {
    (0..p.faces.len()).map(|f| p.face_distance(f, x)).fold(T::infinity(), T::min)
}

/// The chart centroid when it sits comfortably inside, otherwise the best
/// clearance among Halton candidates in the chart bounding box.
fn polygon_witness<T: Real>(p: &Polyhedron<T>) -> Result<Point<T>, BuildError> {
    let Shape::Polygon { chart } = &p.shape else { unreachable!() };
    let space = p.space;
    let n = T::from_usize_lossy(chart.len());
    let mean: Vec<T> = (0..2).map(|k| chart.iter().map(|v| v[k]).sum::<T>() / n).collect();
    let lo: Vec<T> = (0..2).map(|k| chart.iter().map(|v| v[k]).fold(T::infinity(), T::min)).collect();
    let hi: Vec<T> = (0..2).map(|k| chart.iter().map(|v| v[k]).fold(T::neg_infinity(), T::max)).collect();
    let candidate = |k: &[T]| -> Option<(Point<T>, T)> {
        if !chart_contains(chart, k) {
            return None;
        }
        let x = space.from_klein(k)?;
        Some((x.clone(), clearance(p, &x)))
    };
    let mut best: Option<(Point<T>, T)> = None;
    for i in 0..512 {
        let h = sampling::halton::<T>(i, 2);
        let k = vec![lo[0] + h[0] * (hi[0] - lo[0]), lo[1] + h[1] * (hi[1] - lo[1])];
        if let Some((x, c)) = candidate(&k) {
            if best.as_ref().is_none_or(|b| c > b.1) {
                best = Some((x, c));
            }
        }
    }
    let (bx, bc) = best.ok_or(BuildError::EmptyInterior)?;
    if bc <= p.tol.mem {
        return Err(BuildError::EmptyInterior);
    }
    match candidate(&mean) {
        Some((x, c)) if c >= bc / T::lit(2.0) => Ok(x),
        _ => Ok(bx),
    }
}
