//! Sampled estimate of the separation constant: the smallest distance
//! between distinct edges, between faces without a common edge, and between
//! a face and an edge not contained in it.

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::Point;
use crate::sampling;
use crate::scalar::Real;

use super::{EdgeLocus, FaceExtent, Polyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Edge(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationCategory {
    EdgeEdge,
    FaceFace,
    FaceEdge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationWitness<T> {
    pub category: SeparationCategory,
    pub a: String,
    pub b: String,
    /// Point of `a` realizing the estimate.
    pub point: Point<T>,
    pub distance: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationReport<T> {
    /// `None` when there is no pair to separate (no constraint).
    pub estimate: Option<T>,
    pub witness: Option<SeparationWitness<T>>,
    pub violation: bool,
    pub pairs: usize,
}

const GOLDEN_ITERS: usize = 60;

impl<T: Real> Polyhedron<T> {
    pub fn locus_id(&self, l: Locus) -> &str {
        match l {
            Locus::Edge(e) => &self.edges[e].id,
            Locus::Face(f) => &self.faces[f].id,
        }
    }

    fn locus_distance(&self, l: Locus, x: &Point<T>) -> T {
        match l {
            Locus::Edge(e) => self.edge_distance(e, x),
            Locus::Face(f) => self.face_distance(f, x),
        }
    }

    /// Every pair the separation constant ranges over. In each pair the first
    /// locus is sampled and the distance to the second is evaluated exactly.
    pub fn separation_pairs(&self) -> Vec<(SeparationCategory, Locus, Locus)> {
        let mut out = Vec::new();
        let (ne, nf) = (self.edges.len(), self.faces.len());
        for a in 0..ne {
            for b in a + 1..ne {
                out.push((SeparationCategory::EdgeEdge, Locus::Edge(a), Locus::Edge(b)));
            }
        }
        for a in 0..nf {
            for b in a + 1..nf {
                if self.shared_edges(a, b).is_empty() {
                    out.push((SeparationCategory::FaceFace, Locus::Face(a), Locus::Face(b)));
                }
            }
        }
        for f in 0..nf {
            for e in 0..ne {
                if !self.faces[f].edges.contains(&e) {
                    out.push((SeparationCategory::FaceEdge, Locus::Edge(e), Locus::Face(f)));
                }
            }
        }
        out
    }

    /// Smallest distance from sampled points of `a` to `b`. The samples are
    /// nested in `samples`, and every sample that improves the running best is
    /// refined locally, so the result never increases with `samples`.
    pub fn pair_distance(&self, a: Locus, b: Locus, samples: usize) -> (T, Point<T>) {
        let dist = |x: &Point<T>| self.locus_distance(b, x);
        let line = |piece: &super::GeodesicPiece<T>| {
            let (lo, hi) = piece.windowed(self.window);
            let at = |t: T| dist(&piece.point(&self.space, t));
            let mut best = (T::infinity(), lo);
            let mut running = T::infinity();
            for i in 0..samples.max(2) {
                let t = lo + sampling::closed_unit::<T>(i) * (hi - lo);
                let d = at(t);
                if d < running {
                    running = d;
                    let h = (hi - lo) / T::from_usize_lossy(i + 1);
                    let (tr, dr) = sampling::golden_section((t - h).max(lo), (t + h).min(hi), GOLDEN_ITERS, at);
                    let (tb, db) = if dr < d { (tr, dr) } else { (t, d) };
                    if db < best.0 {
                        best = (db, tb);
                    }
                }
            }
            (best.0, piece.point(&self.space, best.1))
        };
        match a {
            Locus::Edge(e) => match &self.edges[e].locus {
                EdgeLocus::Point(p) => (dist(p), p.clone()),
                EdgeLocus::Line(piece) => line(piece),
            },
            Locus::Face(f) => match &self.faces[f].extent {
                FaceExtent::Segment(piece) => line(piece),
                FaceExtent::Planar { .. } => self.planar_pair_distance(f, &dist, samples),
            },
        }
    }

    fn planar_pair_distance(&self, f: usize, dist: &dyn Fn(&Point<T>) -> T, samples: usize) -> (T, Point<T>) {
        let at = |p: &[T]| {
            let x = self.face_point(f, p);
            if self.bound_margin(f, &x) < T::zero() {
                T::infinity()
            } else {
                dist(&x)
            }
        };
        let mut best = (T::infinity(), Vec::new());
        let mut running = T::infinity();
        for (i, p) in self.planar_params(f, samples.max(1)).into_iter().enumerate() {
            let d = at(&p);
            if d >= running {
                continue;
            }
            running = d;
            let h = self.window / T::from_usize_lossy(i + 1).sqrt();
            let mut q = p.clone();
            let mut dq = d;
            for _ in 0..2 {
                for k in 0..2 {
                    let c = q[k];
                    let (x, dx) = sampling::golden_section(c - h, c + h, GOLDEN_ITERS, |s| {
                        let mut r = q.clone();
                        r[k] = s;
                        at(&r)
                    });
                    if dx < dq {
                        q[k] = x;
                        dq = dx;
                    }
                }
            }
            if dq < best.0 {
                best = (dq, q);
            }
        }
        if best.1.is_empty() {
            return (T::infinity(), self.witness.clone());
        }
        (best.0, self.face_point(f, &best.1))
    }

    pub fn estimate_separation(&self, samples: usize) -> SeparationReport<T> {
        let pairs = self.separation_pairs();
        let results: Vec<(T, Point<T>)> = pairs.par_iter().map(|&(_, a, b)| self.pair_distance(a, b, samples)).collect();
        let mut best: Option<(usize, T)> = None;
        for (i, (d, _)) in results.iter().enumerate() {
            if best.is_none_or(|(_, b)| *d < b) {
                best = Some((i, *d));
            }
        }
        let witness = best.filter(|(_, d)| d.is_finite()).map(|(i, d)| {
            let (category, a, b) = pairs[i];
            SeparationWitness {
                category,
                a: self.locus_id(a).to_string(),
                b: self.locus_id(b).to_string(),
                point: results[i].1.clone(),
                distance: d,
            }
        });
        let estimate = witness.as_ref().map(|w| w.distance);
        SeparationReport {
            estimate,
            violation: estimate.is_some_and(|d| d < self.tol.mem),
            witness,
            pairs: pairs.len(),
        }
    }
}
