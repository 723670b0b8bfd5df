//! Interior angles along cycles, and conditions (1) and (2).

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GeometryError, Point, Tangent};
use crate::pairing::{EdgeCycle, FacePairing};
use crate::polyhedron::{Polyhedron, ProbeError};
use crate::scalar::{wrap_distance, Real};

use super::Status;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AngleError {
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("interior angle {alpha} at term {j} on edge {edge} is degenerate")]
    Degenerate { j: usize, edge: String, alpha: f64 },
}

impl AngleError {
    /// Probe failures mean the sampling could not certify a direction; the
    /// other errors are genuine defects of the input.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, AngleError::Probe(ProbeError::NotInward { .. }))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleTerm<T> {
    pub j: usize,
    /// `I_j x`.
    pub point: Point<T>,
    pub from: usize,
    pub to: usize,
    pub t_from: Tangent<T>,
    pub t_to: Tangent<T>,
    pub normal: Tangent<T>,
    pub alpha: T,
}

/// Angle term `j` of the geometric cycle, at the image `I_j x` of a point `x`
/// of the base edge. `h` is the probe step used to certify interior-pointing
/// face directions.
pub fn interior_angle<T: Real>(
    p: &Polyhedron<T>,
    cycle: &EdgeCycle<T>,
    j: usize,
    x: &Point<T>,
    h: T,
) -> Result<AngleTerm<T>, AngleError> {
    let term = cycle.term(j);
    let y = p.space.normalize_point(&cycle.partial(j).apply(x));
    let a = p.angle_at(term.edge, term.from, term.to, &y, h)?;
    let tau = T::two_pi();
    if a.alpha <= p.tol.ang || a.alpha >= tau - p.tol.ang {
        return Err(AngleError::Degenerate { j, edge: p.edges[term.edge].id.clone(), alpha: a.alpha.as_f64() });
    }
    Ok(AngleTerm { j, point: y, from: term.from, to: term.to, t_from: a.t_from, t_to: a.t_to, normal: a.normal, alpha: a.alpha })
}

pub(crate) fn default_probe<T: Real>(p: &Polyhedron<T>, d_eff: T) -> T {
    (d_eff / T::lit(10.0)).min(p.probe_step())
}

/// `α_0, ..., α_(nk-1)` at `x`.
pub fn cycle_angles<T: Real>(p: &Polyhedron<T>, cycle: &EdgeCycle<T>, x: &Point<T>, h: T) -> Result<Vec<T>, AngleError> {
    (0..cycle.geometric_len()).map(|j| interior_angle(p, cycle, j, x, h).map(|a| a.alpha)).collect()
}

/// Total interior angle of the geometric cycle at `x`.
pub fn total_angle<T: Real>(p: &Polyhedron<T>, cycle: &EdgeCycle<T>, x: &Point<T>, h: T) -> Result<T, AngleError> {
    Ok(cycle_angles(p, cycle, x, h)?.into_iter().sum())
}

/// Sum of the `n` angles of the combinatorial cycle at `x`.
pub fn combinatorial_angle_sum<T: Real>(
    p: &Polyhedron<T>,
    _fp: &FacePairing<T>,
    cycle: &EdgeCycle<T>,
    x: &Point<T>,
) -> Result<T, AngleError> {
    let h = p.probe_step();
    (0..cycle.len()).map(|j| interior_angle(p, cycle, j, x, h).map(|a| a.alpha)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition1Report<T> {
    pub status: Status,
    /// Largest `|dI_s(n_s) + n_s̄|` over sampled face points.
    pub max_deviation: T,
    /// Per face id, the largest deviation on that face.
    pub faces: Vec<(String, T)>,
    pub witness: Option<(String, Point<T>)>,
    pub note: Option<String>,
}

/// Condition (1): `dI_s(n_s) = -n_s̄` at every sampled point of every face.
pub fn check_condition1<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, samples: usize) -> Condition1Report<T> {
    let s = &p.space;
    let mut faces = Vec::with_capacity(p.faces.len());
    let mut max_deviation = T::zero();
    let mut witness = None;
    let mut note = None;
    for f in 0..p.faces.len() {
        let sb = fp.partner[f];
        let mut worst = T::zero();
        for x in p.sample_face(f, samples) {
            let n = match p.interior_normal(f, &x) {
                Ok(n) => n,
                Err(e) => {
                    note.get_or_insert_with(|| e.to_string());
                    p.inward_normal(f, &x)
                }
            };
            let image = fp.iso[f].differential(&n);
            let target = p.inward_normal(sb, &image.base);
            let diff: Vec<T> = image.vec.iter().zip(&target.vec).map(|(&a, &b)| a + b).collect();
            let d = s.tnorm(&diff);
            if d > worst {
                worst = d;
            }
            if d > max_deviation {
                max_deviation = d;
                witness = Some((p.faces[f].id.clone(), x));
            }
        }
        faces.push((p.faces[f].id.clone(), worst));
    }
    let status = if note.is_some() {
        Status::Fail
    } else if max_deviation < p.tol.ang {
        Status::Pass
    } else {
        Status::Fail
    };
    if status == Status::Pass {
        witness = None;
    }
    Condition1Report { status, max_deviation, faces, witness, note }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleAngles<T> {
    pub base_edge: String,
    pub n: usize,
    pub k: usize,
    /// `α_j` of the geometric cycle at the designated point.
    pub alphas: Vec<T>,
    /// Sum of the `n` combinatorial angles at the designated point.
    pub combinatorial_total_angle: T,
    /// Total interior angle of the geometric cycle at the designated point.
    pub total_angle: T,
    /// `|total_angle - 2π|`.
    pub margin: T,
    pub combinatorial_margin: T,
    /// Largest `|total(x) - total(x0)|` over sampled edge points.
    pub constancy_deviation: T,
    /// Largest distance of `total(x)` from a multiple of 2π over sampled points.
    pub mod_2pi_deviation: T,
    pub status: Status,
    pub error: Option<String>,
}

/// Condition (2) for one geometric cycle: designated point is the middle of the
/// base edge's sampling window; all sampled edge points corroborate.
pub fn check_cycle_angles<T: Real>(p: &Polyhedron<T>, cycle: &EdgeCycle<T>, samples: usize, h: T) -> CycleAngles<T> {
    let tau = T::two_pi();
    let x0 = p.edge_midpoint(cycle.base_edge);
    let mut out = CycleAngles {
        base_edge: p.edges[cycle.base_edge].id.clone(),
        n: cycle.len(),
        k: cycle.multiplicity,
        alphas: Vec::new(),
        combinatorial_total_angle: T::nan(),
        total_angle: T::nan(),
        margin: T::nan(),
        combinatorial_margin: T::nan(),
        constancy_deviation: T::zero(),
        mod_2pi_deviation: T::zero(),
        status: Status::Fail,
        error: None,
    };
    let alphas = match cycle_angles(p, cycle, &x0, h) {
        Ok(a) => a,
        Err(e) => {
            out.status = if e.is_inconclusive() { Status::Inconclusive } else { Status::Fail };
            out.error = Some(e.to_string());
            return out;
        }
    };
    let total: T = alphas.iter().copied().sum();
    let comb: T = alphas[..cycle.len()].iter().copied().sum();
    out.alphas = alphas;
    out.total_angle = total;
    out.combinatorial_total_angle = comb;
    out.margin = (total - tau).abs();
    out.combinatorial_margin = (comb - tau).abs();
    out.mod_2pi_deviation = wrap_distance(total);
    for x in p.sample_edge(cycle.base_edge, samples) {
        match total_angle(p, cycle, &x, h) {
            Ok(t) => {
                out.constancy_deviation = out.constancy_deviation.max((t - total).abs());
                out.mod_2pi_deviation = out.mod_2pi_deviation.max(wrap_distance(t));
            }
            Err(e) => {
                out.error.get_or_insert(e.to_string());
            }
        }
    }
    out.status = if out.margin < p.tol.ang { Status::Pass } else { Status::Fail };
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorReport<T> {
    pub base_edge: String,
    pub status: Status,
    pub min_alpha: T,
    pub sum_deviation: T,
    /// Smallest pairwise deviation between partial isometries.
    pub min_partial_separation: T,
}

/// Sectors `T_j` of angle `α_j` tile the normal plane: every `α_j > τ_ang`, the
/// angles sum to 2π, and the partial isometries are pairwise distinct.
pub fn check_sectors<T: Real>(p: &Polyhedron<T>, cycle: &EdgeCycle<T>, angles: &CycleAngles<T>) -> SectorReport<T> {
    let min_alpha = angles.alphas.iter().copied().fold(T::infinity(), T::min);
    let sum_deviation = (angles.total_angle - T::two_pi()).abs();
    let min_partial_separation = cycle.min_partial_separation();
    let ok = min_alpha > p.tol.ang && sum_deviation < p.tol.ang && min_partial_separation > p.tol.iso;
    SectorReport {
        base_edge: angles.base_edge.clone(),
        status: if ok { Status::Pass } else { Status::Fail },
        min_alpha,
        sum_deviation,
        min_partial_separation,
    }
}
