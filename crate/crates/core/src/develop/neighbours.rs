use serde::Serialize;

use crate::geometry::{Isometry, Point};
use crate::pairing::{EdgeCycle, FacePairing};
use crate::polyhedron::{FaceIx, Location, Polyhedron};
use crate::scalar::Real;

use super::{word_name, DevelopError};

#[derive(Debug, Clone, PartialEq)]
pub struct FormalNeighbour<T> {
    pub word: Vec<FaceIx>,
    pub iso: Isometry<T>,
    /// The point of `P` that `iso` carries to the base point.
    pub point: Point<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormalNeighbourSet<T> {
    pub base_point: Point<T>,
    pub entries: Vec<FormalNeighbour<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct EntrySummary<T> {
    word: String,
    point: Point<T>,
}

impl<T: Real> FormalNeighbourSet<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self, fp: &FacePairing<T>) -> serde_json::Value
    where
        T: Serialize,
    {
        let entries: Vec<EntrySummary<T>> =
            self.entries.iter().map(|e| EntrySummary { word: word_name(fp, &e.word), point: e.point.clone() }).collect();
        serde_json::json!({ "base_point": self.base_point, "entries": entries })
    }
}

/// Cancels adjacent `s s̄` pairs, since `I_s I_(s̄) = 1`.
fn reduce(fp_partner: &[FaceIx], word: Vec<FaceIx>) -> Vec<FaceIx> {
    let mut out: Vec<FaceIx> = Vec::with_capacity(word.len());
    for s in word {
        if out.last().is_some_and(|&l| fp_partner[l] == s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Faces `[s_i, ..., s_1]` with `I_i = I_(s_i) ... I_(s_1)`.
fn partial_word<T>(c: &EdgeCycle<T>, i: usize) -> Vec<FaceIx> {
    let n = c.terms.len();
    (1..=i).rev().map(|m| c.terms[(m - 1) % n].to).collect()
}

/// The formal neighbours of `P` at a boundary point `x`: `(1, x)` and
/// `(I_(s̄), I_s x)` inside a face `s`; `(I_j^-1, I_j x)` over the geometric
/// cycle through an edge, rebased so that the edge containing `x` is term 0.
pub fn formal_neighbours<T: Real>(
    p: &Polyhedron<T>,
    fp: &FacePairing<T>,
    cycles: &[EdgeCycle<T>],
    x: &Point<T>,
) -> Result<FormalNeighbourSet<T>, DevelopError> {
    let entries = match p.locate(x) {
        Location::Face(s) => {
            let sb = fp.partner[s];
            vec![
                FormalNeighbour { word: Vec::new(), iso: Isometry::identity(p.space), point: x.clone() },
                FormalNeighbour { word: vec![sb], iso: fp.iso[sb].clone(), point: fp.iso[s].apply(x) },
            ]
        }
        Location::Edge(e) => {
            let (c, j0) = cycles
                .iter()
                .filter(|c| c.is_geometric())
                .find_map(|c| c.terms.iter().position(|t| t.edge == e).map(|j| (c, j)))
                .ok_or_else(|| DevelopError::NoCycle(p.edges[e].id.clone()))?;
            let to_base = c.partial(j0).inverse();
            let w0 = partial_word(c, j0);
            (0..c.geometric_len())
                .map(|j| {
                    // I_j I_(j0)^-1 carries x to term j; its inverse is the neighbour.
                    let fwd = c.partial(j).compose(&to_base);
                    let mut word: Vec<FaceIx> = w0.clone();
                    word.extend(partial_word(c, j).iter().rev().map(|&s| fp.partner[s]));
                    FormalNeighbour { word: reduce(&fp.partner, word), iso: fwd.inverse(), point: fwd.apply(x) }
                })
                .collect()
        }
        other => return Err(DevelopError::NotBoundary(format!("{other:?}"))),
    };
    Ok(FormalNeighbourSet { base_point: x.clone(), entries })
}
