//! Convex polyhedra given as intersections of half-spaces.

use crate::config::Tolerances;
use crate::geometry::{along_geodesic, nonnegative_interval, Hyperplane, Kind, ModelSpace, Point};
use crate::linalg;
use crate::sampling;
use crate::scalar::Real;

use super::build::EdgeSpec;
use super::{BuildError, Edge, EdgeLocus, Face, FaceExtent, GeodesicPiece, Polyhedron, Shape};

pub(crate) fn build<T: Real>(
    space: ModelSpace,
    planes: Vec<(String, Hyperplane<T>)>,
    declared: Option<Vec<EdgeSpec>>,
    witness: Option<Point<T>>,
    tol: Tolerances<T>,
    window: T,
) -> Result<Polyhedron<T>, BuildError> {
    if planes.is_empty() {
        return Err(BuildError::Invalid("no half-spaces given".into()));
    }
    for (id, h) in &planes {
        if h.normal.len() != space.ambient() {
            return Err(BuildError::Invalid(format!("face {id}: normal has length {}", h.normal.len())));
        }
    }
    let hs: Vec<Hyperplane<T>> = planes.iter().map(|(_, h)| h.clone()).collect();
    let witness = match witness {
        Some(w) => {
            space.check_point(&w, tol.iso)?;
            space.normalize_point(&w)
        }
        None => search_witness(&space, &hs).ok_or(BuildError::EmptyInterior)?,
    };
    if hs.iter().any(|h| h.signed_distance(&space, &witness) <= tol.mem) {
        return Err(BuildError::EmptyInterior);
    }

    let mut faces = Vec::with_capacity(planes.len());
    for (i, (id, h)) in planes.iter().enumerate() {
        let bounds: Vec<Hyperplane<T>> = hs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
        let origin = h.foot(&space, &witness);
        let n = h.normal_at(&space, &origin).vec;
        let extent = if space.dim == 2 {
            let d = space.orthogonal_tangent(&origin, &[&n]).ok_or(BuildError::EmptyFace(id.clone()))?;
            let (lo, hi) = feasible(&space, &bounds, &origin, &d).ok_or(BuildError::EmptyFace(id.clone()))?;
            if hi - lo <= tol.mem {
                return Err(BuildError::EmptyFace(id.clone()));
            }
            FaceExtent::Segment(GeodesicPiece { origin, dir: d, lo, hi })
        } else {
            let (e1, e2) = plane_basis(&space, &origin, &n).ok_or(BuildError::EmptyFace(id.clone()))?;
            FaceExtent::Planar { origin, e1, e2 }
        };
        faces.push(Face { id: id.clone(), carrier: h.clone(), interior_sign: 1, bounds, edges: Vec::new(), extent });
    }

    let mut found: Vec<(usize, usize, EdgeLocus<T>)> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if let Some(locus) = pair_locus(&space, &hs, i, j, &witness, &tol, &planes)? {
                found.push((i, j, locus));
            }
        }
    }

    let mut edges = Vec::with_capacity(found.len());
    match &declared {
        Some(specs) => {
            let mut used = vec![false; found.len()];
            for spec in specs {
                let ix = |name: &str| {
                    planes
                        .iter()
                        .position(|(id, _)| id == name)
                        .ok_or_else(|| BuildError::Invalid(format!("edge {} names unknown face {name}", spec.id)))
                };
                let (a, b) = (ix(&spec.faces[0])?, ix(&spec.faces[1])?);
                let k = found
                    .iter()
                    .position(|(i, j, _)| (*i, *j) == (a.min(b), a.max(b)))
                    .ok_or_else(|| BuildError::IncidenceMismatch(format!("faces {} and {} do not meet along an edge", spec.faces[0], spec.faces[1])))?;
                if used[k] {
                    return Err(BuildError::IncidenceMismatch(format!("edge {} is declared twice", spec.id)));
                }
                used[k] = true;
                edges.push(Edge { id: spec.id.clone(), faces: (a, b), locus: found[k].2.clone() });
            }
            if let Some(k) = used.iter().position(|u| !u) {
                let (i, j, _) = &found[k];
                return Err(BuildError::IncidenceMismatch(format!(
                    "faces {} and {} meet along an undeclared edge",
                    planes[*i].0, planes[*j].0
                )));
            }
        }
        None => {
            for (i, j, locus) in found {
                edges.push(Edge { id: format!("{}|{}", planes[i].0, planes[j].0), faces: (i, j), locus });
            }
        }
    }
    for (k, e) in edges.iter().enumerate() {
        faces[e.faces.0].edges.push(k);
        faces[e.faces.1].edges.push(k);
    }

    let p = Polyhedron { space, faces, edges, witness, shape: Shape::Convex, window, tol };
    if space.dim == 3 {
        for f in 0..p.faces.len() {
            if p.planar_params(f, 1).is_empty() {
                return Err(BuildError::EmptyFace(p.faces[f].id.clone()));
            }
        }
    }
    Ok(p)
}

/// Parameter interval of `t -> exp_p(t d)` satisfying every bound.
fn feasible<T: Real>(space: &ModelSpace, bounds: &[Hyperplane<T>], p: &Point<T>, d: &[T]) -> Option<(T, T)> {
    let mut lo = T::neg_infinity();
    let mut hi = T::infinity();
    for b in bounds {
        let (x, y) = along_geodesic(space, b, p, d);
        let (l, h) = nonnegative_interval(space, x, y)?;
        lo = lo.max(l);
        hi = hi.min(h);
    }
    (lo <= hi).then_some((lo, hi))
}

/// Orthonormal tangent basis at `o` of the hyperplane with unit normal `n`.
fn plane_basis<T: Real>(space: &ModelSpace, o: &Point<T>, n: &[T]) -> Option<(Vec<T>, Vec<T>)> {
    let mut best: Option<Vec<T>> = None;
    for k in 0..space.ambient() {
        let mut b = vec![T::zero(); space.ambient()];
        b[k] = T::one();
        let v = space.project_tangent(o, &b);
        let v = linalg::axpy(&v, -space.form(&v, n), n);
        if best.as_ref().is_none_or(|w| space.tnorm(&v) > space.tnorm(w)) {
            best = Some(v);
        }
    }
    let e1 = space.unit(&best?)?;
    let e2 = space.orthogonal_tangent(o, &[n, &e1])?;
    Some((e1, e2))
}

/// The intersection of carriers `i` and `j` if it is an edge of the polyhedron.
fn pair_locus<T: Real>(
    space: &ModelSpace,
    hs: &[Hyperplane<T>],
    i: usize,
    j: usize,
    witness: &Point<T>,
    tol: &Tolerances<T>,
    planes: &[(String, Hyperplane<T>)],
) -> Result<Option<EdgeLocus<T>>, BuildError> {
    let (ui, uj) = (&hs[i].normal, &hs[j].normal);
    let name = || format!("{}|{}", planes[i].0, planes[j].0);
    let others = || (0..hs.len()).filter(move |&k| k != i && k != j);
    // Gram matrix of the two normals; singular when the carriers are parallel.
    let g = [space.form(ui, ui), space.form(ui, uj), space.form(uj, uj)];
    let det = g[0] * g[2] - g[1] * g[1];
    if det <= T::lit(1e-12) {
        return Ok(None);
    }
    let (ri, rj) = match space.kind {
        Kind::Euclidean => (hs[i].eval(space, &witness.coords), hs[j].eval(space, &witness.coords)),
        Kind::Hyperbolic => (space.form(&witness.coords, ui), space.form(&witness.coords, uj)),
    };
    let a = (g[2] * ri - g[1] * rj) / det;
    let b = (g[0] * rj - g[1] * ri) / det;
    let x = linalg::axpy(&linalg::axpy(&witness.coords, -a, ui), -b, uj);
    if space.is_hyperbolic() && space.form(&x, &x) >= -T::lit(1e-12) {
        return Ok(None);
    }
    let x = space.normalize_point(&Point::new(x));

    if space.dim == 2 {
        let mut on = Vec::new();
        for k in others() {
            let s = hs[k].signed_distance(space, &x);
            if s < -tol.mem {
                return Ok(None);
            }
            if s <= tol.mem {
                on.push(k);
            }
        }
        if let Some(&k) = on.first() {
            return Err(BuildError::EdgeIncidence(format!("faces {}, {} and {} meet at one point", planes[i].0, planes[j].0, planes[k].0)));
        }
        return Ok(Some(EdgeLocus::Point(x)));
    }

    let d = space.orthogonal_tangent(&x, &[ui, uj]).ok_or_else(|| BuildError::EdgeIncidence(name()))?;
    let mut lo = T::neg_infinity();
    let mut hi = T::infinity();
    for k in others() {
        let (p, q) = along_geodesic(space, &hs[k], &x, &d);
        if p.abs() <= tol.mem && q.abs() <= tol.mem {
            return Err(BuildError::EdgeIncidence(format!("faces {}, {} and {} share a line", planes[i].0, planes[j].0, planes[k].0)));
        }
        match nonnegative_interval(space, p, q) {
            Some((l, h)) => {
                lo = lo.max(l);
                hi = hi.min(h);
            }
            None => return Ok(None),
        }
    }
    if lo > hi {
        return Ok(None);
    }
    if lo.is_finite() || hi.is_finite() {
        return Err(BuildError::Cornered(name()));
    }
    Ok(Some(EdgeLocus::Line(GeodesicPiece { origin: x, dir: d, lo, hi })))
}

/// Maximizes clearance (capped at 1) over Halton candidates, preferring
/// candidates near the origin among equally good ones.
fn search_witness<T: Real>(space: &ModelSpace, hs: &[Hyperplane<T>]) -> Option<Point<T>> {
    let o = space.origin::<T>();
    let mut best: Option<(Point<T>, T)> = None;
    for i in 0..4096 {
        let h = sampling::halton::<T>(i, space.dim);
        let k: Vec<T> = match space.kind {
            Kind::Euclidean => h.iter().map(|&u| (u - T::lit(0.5)) * T::lit(8.0)).collect(),
            Kind::Hyperbolic => h.iter().map(|&u| (u - T::lit(0.5)) * T::lit(1.9)).collect(),
        };
        let Some(x) = space.from_klein(&k) else { continue };
        let c = hs.iter().map(|h| h.signed_distance(space, &x)).fold(T::infinity(), T::min);
        if c <= T::zero() {
            continue;
        }
        let score = c.min(T::one()) - T::lit(1e-3) * space.dist(&o, &x);
        if best.as_ref().is_none_or(|b| score > b.1) {
            best = Some((x, score));
        }
    }
    best.map(|b| b.0)
}
