//! Cornerless polyhedra: faces, edges, incidence, membership and the
//! separation estimate between non-incident boundary pieces.
//!
//! Faces are pieces of totally geodesic hyperplanes (`carrier`) cut out by a
//! list of `bounds` (the face is `{carrier = 0, every bound >= 0}`). Edges are
//! points in dimension 2 and complete geodesic lines in dimension 3.

mod build;
mod halfspace;
mod locate;
mod separation;

use thiserror::Error;

use crate::config::Tolerances;
use crate::geometry::{GeometryError, Hyperplane, ModelSpace, Point, Tangent};
use crate::linalg;
use crate::sampling;
use crate::scalar::Real;

pub use build::{BuildInput, Construction, EdgeSpec};
pub use locate::Location;
pub use separation::{Locus, SeparationCategory, SeparationReport, SeparationWitness};

pub type FaceIx = usize;
pub type EdgeIx = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("boundary is self-intersecting: sides {0} and {1} cross")]
    SelfIntersecting(String, String),
    #[error("edge incidence error: {0}")]
    EdgeIncidence(String),
    #[error("interior is empty or the interior witness is not interior")]
    EmptyInterior,
    #[error("polyhedron has a corner (codimension-3 point) on edge {0}")]
    Cornered(String),
    #[error("face {0} is empty")]
    EmptyFace(String),
    #[error("declared incidence does not match the geometry: {0}")]
    IncidenceMismatch(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbeError {
    #[error("probe from face {face} cannot certify an interior-pointing direction")]
    NotInward { face: String },
    #[error("interior normal probe on face {face} lands outside the polyhedron")]
    OrientationInconsistent { face: String },
    #[error("degenerate edge direction at edge {0}")]
    DegenerateEdge(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A piece of the unit-speed geodesic `t -> exp_origin(t dir)` over
/// `lo <= t <= hi`. Infinite ends mean the piece is unbounded that way.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPiece<T> {
    pub origin: Point<T>,
    pub dir: Vec<T>,
    pub lo: T,
    pub hi: T,
}

impl<T: Real> GeodesicPiece<T> {
    pub fn point(&self, space: &ModelSpace, t: T) -> Point<T> {
        space.geodesic_point(&self.origin, &self.dir, t)
    }

    pub fn velocity(&self, space: &ModelSpace, t: T) -> Vec<T> {
        space.geodesic_velocity(&self.origin, &self.dir, t)
    }

    /// Parameter of the nearest point to `x` on the full geodesic.
    pub fn foot_param(&self, space: &ModelSpace, x: &Point<T>) -> T {
        if space.is_hyperbolic() {
            let a = -space.form(&x.coords, &self.origin.coords);
            let b = -space.form(&x.coords, &self.dir);
            let r = (-b / a).max(-T::one() + T::epsilon()).min(T::one() - T::epsilon());
            r.atanh()
        } else {
            linalg::dot(&self.dir, &linalg::sub(&x.coords, &self.origin.coords))
        }
    }

    pub fn distance(&self, space: &ModelSpace, x: &Point<T>) -> T {
        let t = self.foot_param(space, x).max(self.lo).min(self.hi);
        space.dist(x, &self.point(space, t))
    }

    /// Finite parameter range used for sampling: infinite ends are replaced by
    /// a window of total length `window` centered on the parameter nearest the
    /// origin (which is chosen near the interior witness).
    pub fn windowed(&self, window: T) -> (T, T) {
        let half = window / T::lit(2.0);
        let c = T::zero().max(self.lo).min(self.hi);
        let lo = if self.lo.is_finite() { self.lo } else { c - half };
        let hi = if self.hi.is_finite() { self.hi } else { c + half };
        (lo, hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeLocus<T> {
    Point(Point<T>),
    Line(GeodesicPiece<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FaceExtent<T> {
    /// Dimension 2: the face is a geodesic segment, ray or line.
    Segment(GeodesicPiece<T>),
    /// Dimension 3: tangent coordinates `(a, b) -> exp_origin(a e1 + b e2)` on
    /// the carrier plane.
    Planar { origin: Point<T>, e1: Vec<T>, e2: Vec<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face<T> {
    pub id: String,
    pub carrier: Hyperplane<T>,
    /// `+1` when the polyhedron lies on the positive side of `carrier` near the face.
    pub interior_sign: i8,
    pub bounds: Vec<Hyperplane<T>>,
    pub edges: Vec<EdgeIx>,
    pub extent: FaceExtent<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<T> {
    pub id: String,
    pub faces: (FaceIx, FaceIx),
    pub locus: EdgeLocus<T>,
}

impl<T> Edge<T> {
    pub fn other_face(&self, f: FaceIx) -> Option<FaceIx> {
        if self.faces.0 == f {
            Some(self.faces.1)
        } else if self.faces.1 == f {
            Some(self.faces.0)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape<T> {
    /// Simple polygon; Klein-chart vertex coordinates kept for ray casting.
    Polygon { chart: Vec<Vec<T>> },
    /// Intersection of half-spaces.
    Convex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron<T> {
    pub space: ModelSpace,
    pub faces: Vec<Face<T>>,
    pub edges: Vec<Edge<T>>,
    pub witness: Point<T>,
    pub shape: Shape<T>,
    pub window: T,
    pub tol: Tolerances<T>,
}

/// Interior angle at a point of an edge, from one incident face to the other.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleParts<T> {
    pub t_from: Tangent<T>,
    pub t_to: Tangent<T>,
    /// Interior normal of the `from` face.
    pub normal: Tangent<T>,
    pub alpha: T,
}

impl<T: Real> Polyhedron<T> {
    pub fn face_index(&self, id: &str) -> Option<FaceIx> {
        self.faces.iter().position(|f| f.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<EdgeIx> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Edges shared by two faces.
    pub fn shared_edges(&self, a: FaceIx, b: FaceIx) -> Vec<EdgeIx> {
        self.faces[a].edges.iter().copied().filter(|e| self.faces[b].edges.contains(e)).collect()
    }

    /// `interior_sign * carrier(x)`, positive on the interior side.
    pub fn face_side(&self, f: FaceIx, x: &Point<T>) -> T {
        let face = &self.faces[f];
        let d = face.carrier.signed_distance(&self.space, x);
        if face.interior_sign > 0 {
            d
        } else {
            -d
        }
    }

    /// Smallest signed distance to the bounds of face `f` (non-negative on the face).
    pub fn bound_margin(&self, f: FaceIx, x: &Point<T>) -> T {
        self.faces[f]
            .bounds
            .iter()
            .map(|b| b.signed_distance(&self.space, x))
            .fold(T::infinity(), T::min)
    }

    /// Unit normal of the face carrier at `x`, oriented toward the interior.
    /// No probing; see [`Polyhedron::interior_normal`].
    pub fn inward_normal(&self, f: FaceIx, x: &Point<T>) -> Tangent<T> {
        let n = self.faces[f].carrier.normal_at(&self.space, x);
        if self.faces[f].interior_sign > 0 {
            n
        } else {
            n.neg()
        }
    }

    /// Interior unit normal at a point `x` of face `f`, certified by a short
    /// geodesic probe landing in the interior.
    pub fn interior_normal(&self, f: FaceIx, x: &Point<T>) -> Result<Tangent<T>, ProbeError> {
        let n = self.inward_normal(f, x);
        let h = self.probe_step();
        let q = self.space.geodesic_point(x, &n.vec, h);
        match self.locate(&q) {
            Location::Interior => Ok(n),
            _ => Err(ProbeError::OrientationInconsistent { face: self.faces[f].id.clone() }),
        }
    }

    pub(crate) fn probe_step(&self) -> T {
        T::lit(1e-3)
    }

    pub fn face_point(&self, f: FaceIx, params: &[T]) -> Point<T> {
        match &self.faces[f].extent {
            FaceExtent::Segment(seg) => seg.point(&self.space, params[0]),
            FaceExtent::Planar { origin, e1, e2 } => {
                let v = linalg::add(&linalg::scale(e1, params[0]), &linalg::scale(e2, params[1]));
                let r = self.space.tnorm(&v);
                if r == T::zero() {
                    origin.clone()
                } else {
                    self.space.geodesic_point(origin, &linalg::scale(&v, T::one() / r), r)
                }
            }
        }
    }

    /// `k` points on face `f`, quasi-uniform over its (windowed) extent.
    pub fn sample_face(&self, f: FaceIx, k: usize) -> Vec<Point<T>> {
        match &self.faces[f].extent {
            FaceExtent::Segment(seg) => {
                let (lo, hi) = seg.windowed(self.window);
                sampling::midpoints::<T>(k)
                    .into_iter()
                    .map(|u| seg.point(&self.space, lo + u * (hi - lo)))
                    .collect()
            }
            FaceExtent::Planar { .. } => self
                .planar_params(f, k)
                .into_iter()
                .map(|p| self.face_point(f, &p))
                .collect(),
        }
    }

    /// First `k` Halton parameters of the planar window that land on face `f`.
    pub(crate) fn planar_params(&self, f: FaceIx, k: usize) -> Vec<Vec<T>> {
        let mut out = Vec::with_capacity(k);
        let w = self.window;
        let mut i = 0;
        while out.len() < k && i < 256 * k.max(1) {
            let h = sampling::halton::<T>(i, 2);
            i += 1;
            let p = vec![(h[0] - T::lit(0.5)) * w, (h[1] - T::lit(0.5)) * w];
            if self.bound_margin(f, &self.face_point(f, &p)) >= T::zero() {
                out.push(p);
            }
        }
        out
    }

    /// `k` points on edge `e` (a point edge is repeated `k` times).
    pub fn sample_edge(&self, e: EdgeIx, k: usize) -> Vec<Point<T>> {
        match &self.edges[e].locus {
            EdgeLocus::Point(p) => vec![p.clone(); k],
            EdgeLocus::Line(seg) => {
                let (lo, hi) = seg.windowed(self.window);
                sampling::midpoints::<T>(k)
                    .into_iter()
                    .map(|u| seg.point(&self.space, lo + u * (hi - lo)))
                    .collect()
            }
        }
    }

    /// Representative point of edge `e`: the point itself, or the middle of the
    /// sampling window of a line.
    pub fn edge_midpoint(&self, e: EdgeIx) -> Point<T> {
        match &self.edges[e].locus {
            EdgeLocus::Point(p) => p.clone(),
            EdgeLocus::Line(seg) => {
                let (lo, hi) = seg.windowed(self.window);
                seg.point(&self.space, (lo + hi) / T::lit(2.0))
            }
        }
    }

    pub fn edge_distance(&self, e: EdgeIx, x: &Point<T>) -> T {
        match &self.edges[e].locus {
            EdgeLocus::Point(p) => self.space.dist(p, x),
            EdgeLocus::Line(seg) => seg.distance(&self.space, x),
        }
    }

    pub fn face_distance(&self, f: FaceIx, x: &Point<T>) -> T {
        let face = &self.faces[f];
        match &face.extent {
            FaceExtent::Segment(seg) => seg.distance(&self.space, x),
            FaceExtent::Planar { .. } => {
                let foot = face.carrier.foot(&self.space, x);
                if self.bound_margin(f, &foot) >= T::zero() {
                    return face.carrier.signed_distance(&self.space, x).abs();
                }
                if !face.edges.is_empty() {
                    return face.edges.iter().map(|&e| self.edge_distance(e, x)).fold(T::infinity(), T::min);
                }
                self.planar_params(f, 64)
                    .iter()
                    .map(|p| self.space.dist(x, &self.face_point(f, p)))
                    .fold(T::infinity(), T::min)
            }
        }
    }

    /// Unit tangent at `y` (a point of edge `e`) that lies in face `f`, is
    /// orthogonal to the edge and points into the face.
    pub fn into_face_direction(&self, f: FaceIx, e: EdgeIx, y: &Point<T>, h: T) -> Result<Tangent<T>, ProbeError> {
        let s = &self.space;
        let n = self.faces[f].carrier.normal_at(s, y).vec;
        let t = match &self.edges[e].locus {
            EdgeLocus::Point(_) => s.orthogonal_tangent(y, &[&n]),
            EdgeLocus::Line(seg) => {
                let d = seg.velocity(s, seg.foot_param(s, y));
                let d = s.project_tangent(y, &d);
                let d = s.unit(&d).ok_or_else(|| ProbeError::DegenerateEdge(self.edges[e].id.clone()))?;
                s.orthogonal_tangent(y, &[&n, &d])
            }
        }
        .ok_or_else(|| ProbeError::DegenerateEdge(self.edges[e].id.clone()))?;
        let plus = self.bound_margin(f, &s.geodesic_point(y, &t, h));
        let minus = self.bound_margin(f, &s.geodesic_point(y, &t, -h));
        let (best, other, v) = if plus >= minus { (plus, minus, t) } else { (minus, plus, linalg::scale(&t, -T::one())) };
        let tol = self.tol.mem;
        if best < -tol || other >= -tol {
            return Err(ProbeError::NotInward { face: self.faces[f].id.clone() });
        }
        Ok(Tangent::new(y.clone(), v))
    }

    /// Oriented interior angle at `y` on edge `e`, from face `from` to face
    /// `to`, measured in the normal plane of the edge with the orientation
    /// given by `(t_from, n_from)`.
    pub fn angle_at(&self, e: EdgeIx, from: FaceIx, to: FaceIx, y: &Point<T>, h: T) -> Result<AngleParts<T>, ProbeError> {
        let t_from = self.into_face_direction(from, e, y, h)?;
        let t_to = self.into_face_direction(to, e, y, h)?;
        let normal = self.inward_normal(from, y);
        let alpha = self.space.oriented_angle(&t_from, &t_to, (&t_from, &normal), self.tol.mem)?;
        Ok(AngleParts { t_from, t_to, normal, alpha })
    }
}
