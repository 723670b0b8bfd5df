//! Cycles of edges. Term `j` of the cycle through `e` is
//! `s̄_j ⋄ I_j e ⋄ s_(j+1)` with `I_j = I_(s_j) ... I_(s_1)`; applying
//! `I_(s_(j+1))` to it yields term `j + 1`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::config::{Config, CycleMode};
use crate::geometry::Isometry;
use crate::polyhedron::{EdgeIx, FaceIx, Polyhedron};
use crate::scalar::{wrap_distance, Real};
use crate::verify;

use super::{edge_probe_points, scaled_tol, FacePairing};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("edge {edge} has no image under the pairing of face {face}")]
    Incidence { face: String, edge: String },
    #[error("image edge {edge} does not belong to face {face}")]
    NotOnFace { face: String, edge: String },
    #[error("cycle through edge {edge} did not close within {steps} steps")]
    NoTermination { edge: String, steps: usize },
    #[error("no multiplicity k <= {k_max} makes the cycle through edge {edge} geometric")]
    NotGeometric { edge: String, k_max: usize },
    #[error("edge {edge} lies on two different cycles")]
    FamilyOverlap { edge: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

/// `from ⋄ edge ⋄ to`, i.e. `s̄_j ⋄ I_j e ⋄ s_(j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Term {
    pub from: FaceIx,
    pub edge: EdgeIx,
    pub to: FaceIx,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCycle<T> {
    pub base_edge: EdgeIx,
    pub orientation: Orientation,
    /// The `n` terms of the combinatorial cycle.
    pub terms: Vec<Term>,
    /// `I_0 = 1, I_1, ..., I_(n-1)`.
    pub partials: Vec<Isometry<T>>,
    /// `I = I_(s_n) ... I_(s_1)`.
    pub cycle_iso: Isometry<T>,
    /// The geometric cycle is the `k`-fold repetition of the combinatorial one.
    pub multiplicity: usize,
    /// Mode that certified the multiplicity; `None` while not (or not yet) geometric.
    pub certified_by: Option<CycleMode>,
    /// Set when the other mode certifies a different multiplicity.
    pub modes_disagree: bool,
}

impl<T: Real> EdgeCycle<T> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn geometric_len(&self) -> usize {
        self.terms.len() * self.multiplicity
    }

    pub fn is_geometric(&self) -> bool {
        self.certified_by.is_some()
    }

    /// Term `j` of the geometric cycle (terms repeat with period `n`).
    pub fn term(&self, j: usize) -> Term {
        self.terms[j % self.terms.len()]
    }

    /// `I_j` for `j < n k`: `I_(qn + r) = I_r I^q`.
    pub fn partial(&self, j: usize) -> Isometry<T> {
        let n = self.terms.len();
        let (q, r) = (j / n, j % n);
        if q == 0 {
            self.partials[r].clone()
        } else {
            self.partials[r].compose(&self.cycle_iso.power(q))
        }
    }

    /// Deviation of `I^k` from the identity.
    pub fn residual(&self) -> T {
        let base = projected(&self.cycle_iso);
        let mut pow = Isometry::identity(base.space());
        for _ in 0..self.multiplicity {
            pow = base.compose(&pow).renormalized();
        }
        pow.identity_deviation()
    }

    /// Smallest pairwise deviation between the partial isometries of the
    /// geometric cycle (infinite for a single term).
    pub fn min_partial_separation(&self) -> T {
        let ps: Vec<Isometry<T>> = (0..self.geometric_len()).map(|j| self.partial(j)).collect();
        let mut m = T::infinity();
        for a in 0..ps.len() {
            for b in a + 1..ps.len() {
                m = m.min(ps[a].deviation(&ps[b]));
            }
        }
        m
    }

    /// Distinct edges visited, in order of first appearance.
    pub fn edges(&self) -> Vec<EdgeIx> {
        let mut out = Vec::new();
        for t in &self.terms {
            if !out.contains(&t.edge) {
                out.push(t.edge);
            }
        }
        out
    }

    /// Arrow notation `s̄_0 ⋄ e ⋄ s_1 -> s̄_1 ⋄ e' ⋄ s_2 -> ...`.
    pub fn notation(&self, p: &Polyhedron<T>) -> String {
        self.terms
            .iter()
            .map(|t| format!("{} ⋄ {} ⋄ {}", p.faces[t.from].id, p.edges[t.edge].id, p.faces[t.to].id))
            .collect::<Vec<_>>()
            .join(" → ")
    }
}

/// Traces the combinatorial cycle through `e` using the edge images computed
/// by [`super::validate_pairing`].
pub fn trace_cycle<T: Real>(
    p: &Polyhedron<T>,
    fp: &FacePairing<T>,
    edge_images: &BTreeMap<(FaceIx, EdgeIx), EdgeIx>,
    e: EdgeIx,
    orientation: Orientation,
    n_max: usize,
) -> Result<EdgeCycle<T>, CycleError> {
    let (a, b) = p.edges[e].faces;
    let start = match orientation {
        Orientation::Forward => Term { from: a, edge: e, to: b },
        Orientation::Backward => Term { from: b, edge: e, to: a },
    };
    let mut terms = vec![start];
    let mut partials = vec![Isometry::identity(p.space)];
    let mut cur = start;
    let mut iso = Isometry::identity(p.space);
    for step in 1..=n_max {
        let s = cur.to;
        let image = *edge_images.get(&(s, cur.edge)).ok_or_else(|| CycleError::Incidence {
            face: p.faces[s].id.clone(),
            edge: p.edges[cur.edge].id.clone(),
        })?;
        let sb = fp.partner[s];
        let next = p.edges[image].other_face(sb).ok_or_else(|| CycleError::NotOnFace {
            face: p.faces[sb].id.clone(),
            edge: p.edges[image].id.clone(),
        })?;
        iso = fp.iso[s].compose(&iso);
        if step % 32 == 0 {
            iso = iso.renormalized();
        }
        cur = Term { from: sb, edge: image, to: next };
        if cur == start {
            return Ok(EdgeCycle {
                base_edge: e,
                orientation,
                terms,
                partials,
                cycle_iso: iso,
                multiplicity: 1,
                certified_by: None,
                modes_disagree: false,
            });
        }
        terms.push(cur);
        partials.push(iso.clone());
    }
    Err(CycleError::NoTermination { edge: p.edges[e].id.clone(), steps: n_max })
}

/// `τ_iso` scaled by the magnitude of the cycle isometry. Rounding in products
/// of hyperbolic matrices grows with their entries, which are large for cycles
/// around edges far from the model origin.
pub fn identity_tolerance<T: Real>(c: &EdgeCycle<T>, tol: T) -> T {
    tol * c.cycle_iso.magnitude()
}

/// The cycle isometry pulled back onto the isometry group. Long products of
/// pairing matrices drift off it, and powers amplify the drift.
fn projected<T: Real>(g: &Isometry<T>) -> Isometry<T> {
    g.renormalized().renormalized()
}

fn strict_multiplicity<T: Real>(c: &EdgeCycle<T>, tol: T, k_max: usize) -> Option<usize> {
    let tol = identity_tolerance(c, tol);
    let base = projected(&c.cycle_iso);
    let mut pow = Isometry::identity(base.space());
    for k in 1..=k_max {
        pow = base.compose(&pow).renormalized();
        if pow.is_identity(tol) {
            return Some(k);
        }
    }
    None
}

fn remark31_multiplicity<T: Real>(p: &Polyhedron<T>, c: &EdgeCycle<T>, angle_sum: Option<T>, samples: usize, k_max: usize) -> Option<usize> {
    let total = angle_sum?;
    let pts = edge_probe_points(p, c.base_edge, samples);
    let base = projected(&c.cycle_iso);
    let mut pow = Isometry::identity(p.space);
    for k in 1..=k_max {
        pow = base.compose(&pow).renormalized();
        let fixes = pts.iter().all(|x| p.space.dist(&pow.apply(x), x) <= scaled_tol(p.tol.mem, x));
        if fixes && wrap_distance(T::from_usize_lossy(k) * total) < p.tol.ang {
            return Some(k);
        }
    }
    None
}

/// Certifies the smallest multiplicity `k` making the cycle geometric.
/// `angle_sum` is the total interior angle of the combinatorial cycle, needed
/// by the `remark31` mode. When both modes certify but disagree, the strict
/// multiplicity wins and `modes_disagree` is set.
pub fn make_geometric<T: Real>(
    p: &Polyhedron<T>,
    cycle: &EdgeCycle<T>,
    mode: CycleMode,
    k_max: usize,
    angle_sum: Option<T>,
    samples: usize,
) -> Result<EdgeCycle<T>, CycleError> {
    let strict = strict_multiplicity(cycle, p.tol.iso, k_max);
    let mut out = cycle.clone();
    let (k, by) = match mode {
        CycleMode::Strict => (strict, CycleMode::Strict),
        CycleMode::Remark31 => {
            let r = remark31_multiplicity(p, cycle, angle_sum, samples, k_max);
            match (strict, r) {
                (Some(s), Some(r)) if s != r => {
                    out.modes_disagree = true;
                    (Some(s), CycleMode::Strict)
                }
                (_, Some(r)) => (Some(r), CycleMode::Remark31),
                (s, None) => (s, CycleMode::Strict),
            }
        }
    };
    let k = k.ok_or_else(|| CycleError::NotGeometric { edge: p.edges[cycle.base_edge].id.clone(), k_max })?;
    out.multiplicity = k;
    out.certified_by = Some(by);
    Ok(out)
}

/// One forward cycle per class of edges, started from the smallest uncovered
/// edge. Cycles that admit no geometric multiple are returned uncertified.
pub fn cycle_family<T: Real>(
    p: &Polyhedron<T>,
    fp: &FacePairing<T>,
    edge_images: &BTreeMap<(FaceIx, EdgeIx), EdgeIx>,
    cfg: &Config<T>,
) -> Result<Vec<EdgeCycle<T>>, CycleError> {
    let n_max = cfg.n_max_factor * p.edges.len().max(1);
    let mut owner: Vec<Option<usize>> = vec![None; p.edges.len()];
    let mut out = Vec::new();
    for e in 0..p.edges.len() {
        if owner[e].is_some() {
            continue;
        }
        let c = trace_cycle(p, fp, edge_images, e, Orientation::Forward, n_max)?;
        for x in c.edges() {
            if owner[x].is_some() {
                return Err(CycleError::FamilyOverlap { edge: p.edges[x].id.clone() });
            }
            owner[x] = Some(out.len());
        }
        let sum = verify::combinatorial_angle_sum(p, fp, &c, &p.edge_midpoint(c.base_edge)).ok();
        out.push(make_geometric(p, &c, cfg.mode, cfg.k_max, sum, cfg.samples).unwrap_or(c));
    }
    Ok(out)
}
