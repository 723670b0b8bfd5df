//! Development of the tiling: formal neighbours, translates `gP` over words
//! in the face-pairing isometries, sampled overlap and covering checks, the
//! group presentation, and SVG rendering in dimension 2.
//!
//! All checks certify finite truncations only ("corroborated to depth L").

mod checks;
mod neighbours;
mod presentation;
mod report;
mod svg;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Isometry, ModelSpace, Point};
use crate::linalg;
use crate::pairing::FacePairing;
use crate::polyhedron::{EdgeLocus, FaceIx, Location, Polyhedron, Shape};
use crate::sampling;
use crate::scalar::Real;
use crate::verify::Status;

pub use checks::{covering_check, default_radius, local_ball_check, overlap_check, CoveringReport, LocalBallReport, OverlapReport, OverlapWitness};
pub use neighbours::{formal_neighbours, FormalNeighbour, FormalNeighbourSet};
pub use presentation::{presentation, Presentation, Relation};
pub use report::{develop, DevelopOptions, DevelopReport, EdgeNeighbourhood};
pub use svg::{export_svg, Chart};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DevelopError {
    #[error("point is not on the boundary of the polyhedron ({0})")]
    NotBoundary(String),
    #[error("no geometric cycle passes through edge {0}")]
    NoCycle(String),
    #[error("{0}")]
    Unsupported(String),
}

/// A translate `gP`; `word` lists faces `s` with `g = I_(w_1) ... I_(w_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Translate<T> {
    pub word: Vec<FaceIx>,
    pub iso: Isometry<T>,
}

/// Two words whose isometries agree to within the ambiguity band but not the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ambiguity<T> {
    pub kept: String,
    pub candidate: String,
    pub deviation: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Development<T> {
    pub depth: usize,
    pub translates: Vec<Translate<T>>,
    pub ambiguities: Vec<Ambiguity<T>>,
}

impl<T: Real> Development<T> {
    /// Pass, or inconclusive when deduplication hit the ambiguity band.
    pub fn status(&self) -> Status {
        if self.ambiguities.is_empty() {
            Status::Pass
        } else {
            Status::Inconclusive
        }
    }

    pub fn words(&self, fp: &FacePairing<T>) -> Vec<String> {
        self.translates.iter().map(|t| word_name(fp, &t.word)).collect()
    }
}

/// `a b^-1 ...`, or `1` for the empty word.
pub fn word_name<T: Real>(fp: &FacePairing<T>, word: &[FaceIx]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|&s| fp.letter_name(s)).collect::<Vec<_>>().join(" ")
}

/// Isometry of a word, composed left to right.
pub fn word_isometry<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, word: &[FaceIx]) -> Isometry<T> {
    let mut g = Isometry::identity(p.space);
    for (i, &s) in word.iter().enumerate() {
        g = g.compose(&fp.iso[s]);
        if (i + 1) % 32 == 0 {
            g = g.renormalized();
        }
    }
    g
}

fn quantize<T: Real>(g: &Isometry<T>, q: T) -> Vec<i64> {
    g.linear().entries().iter().chain(g.translation()).map(|&v| (v / q).round().as_f64() as i64).collect()
}

/// Breadth-first enumeration of distinct `g = I_(w_1) ... I_(w_m)` with
/// `m <= depth`. Children of `g` are `g I_s` for faces `s` in order, so the
/// result is deterministic. Elements are keyed by their matrix quantized at
/// `10 τ_iso`; equality is confirmed at `τ_iso`, and a candidate within
/// `20 τ_iso` of a kept element but not within `τ_iso` is recorded as an
/// ambiguity and dropped.
pub fn enumerate_translates<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, depth: usize) -> Development<T> {
    let tau = p.tol.iso;
    let q = T::lit(10.0) * tau;
    let band = T::lit(20.0) * tau;
    let mut translates = vec![Translate { word: Vec::new(), iso: Isometry::identity(p.space) }];
    let mut table: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    table.insert(quantize(&translates[0].iso, q), vec![0]);
    let mut ambiguities = Vec::new();
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &parent in &frontier {
            for s in 0..p.faces.len() {
                let mut iso = translates[parent].iso.compose(&fp.iso[s]);
                let mut word = translates[parent].word.clone();
                word.push(s);
                if word.len() % 32 == 0 {
                    iso = iso.renormalized();
                }
                let key = quantize(&iso, q);
                let hit = table.get(&key).is_some_and(|b| b.iter().any(|&i| translates[i].iso.deviation(&iso) <= tau));
                if hit {
                    continue;
                }
                // Equal elements can straddle a quantization boundary: confirm against everything.
                let nearest = translates
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (i, t.iso.deviation(&iso)))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
                match nearest {
                    Some((_, d)) if d <= tau => continue,
                    Some((i, d)) if d <= band => {
                        ambiguities.push(Ambiguity { kept: word_name(fp, &translates[i].word), candidate: word_name(fp, &word), deviation: d });
                        continue;
                    }
                    _ => {}
                }
                table.entry(key).or_default().push(translates.len());
                next.push(translates.len());
                translates.push(Translate { word, iso });
            }
        }
        frontier = next;
    }
    Development { depth, translates, ambiguities }
}

/// Orthonormal basis of the tangent space at `x`.
pub(crate) fn tangent_basis<T: Real>(space: &ModelSpace, x: &Point<T>) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    for i in 0..space.ambient() {
        if basis.len() == space.dim {
            break;
        }
        let mut e = vec![T::zero(); space.ambient()];
        e[i] = T::one();
        let mut v = space.project_tangent(x, &e);
        for b in &basis {
            let c = space.form(&v, b);
            v = linalg::axpy(&v, -c, b);
        }
        if space.tnorm(&v) > T::lit(1e-6) {
            basis.push(space.unit(&v).unwrap());
        }
    }
    basis
}

/// `count` quasi-random points of the closed ball `B(x, r)`.
pub(crate) fn ball_samples<T: Real>(space: &ModelSpace, x: &Point<T>, r: T, count: usize) -> Vec<Point<T>> {
    let basis = tangent_basis(space, x);
    let d = space.dim;
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count && i < 64 * count + 64 {
        i += 1;
        let u: Vec<T> = sampling::halton::<T>(i, d).into_iter().map(|c| T::lit(2.0) * c - T::one()).collect();
        let len = linalg::norm(&u);
        if len > T::one() {
            continue;
        }
        if len == T::zero() {
            out.push(x.clone());
            continue;
        }
        let mut v = vec![T::zero(); space.ambient()];
        for (c, b) in u.iter().zip(&basis) {
            v = linalg::axpy(&v, *c / len, b);
        }
        out.push(space.geodesic_point(x, &v, r * len));
    }
    out
}

/// Radius around the interior witness containing `P` (bounded case) or the
/// sampling window (unbounded case).
pub(crate) fn sampling_radius<T: Real>(p: &Polyhedron<T>) -> Option<T> {
    match &p.shape {
        Shape::Polygon { .. } => Some(
            p.edges
                .iter()
                .filter_map(|e| match &e.locus {
                    EdgeLocus::Point(v) => Some(p.space.dist(&p.witness, v)),
                    EdgeLocus::Line(_) => None,
                })
                .fold(T::zero(), T::max),
        ),
        Shape::Convex => None,
    }
}

/// Interior sample points of `P`: a quasi-random fill around the interior
/// witness plus points at distance `offset` inside each face.
pub(crate) fn interior_samples<T: Real>(p: &Polyhedron<T>, count: usize, per_face: usize, offset: T) -> Vec<Point<T>> {
    let r = sampling_radius(p).unwrap_or(p.window);
    let mut out: Vec<Point<T>> = ball_samples(&p.space, &p.witness, r, 4 * count)
        .into_iter()
        .filter(|y| p.locate(y) == Location::Interior)
        .take(count)
        .collect();
    for f in 0..p.faces.len() {
        for z in p.sample_face(f, per_face) {
            let Ok(n) = p.interior_normal(f, &z) else { continue };
            let y = p.space.geodesic_point(&z, &n.vec, offset);
            if p.locate(&y) == Location::Interior {
                out.push(y);
            }
        }
    }
    out
}
