//! Condition (3): near a face `s`, an intersecting face `s'` only comes close
//! to `s` around their common edges. Sampled falsification search.

use serde::Serialize;

use crate::geometry::Point;
use crate::pairing::edge_probe_points;
use crate::polyhedron::{FaceIx, Polyhedron};
use crate::sampling;
use crate::scalar::Real;

use super::Status;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FacePairNeighbourhood<T> {
    pub s: String,
    pub s_prime: String,
    /// Largest tested `ε` for which containment held; `None` when none did.
    pub epsilon: Option<T>,
    /// A point of `s'` within the smallest tested `ε` of `s` but farther than
    /// `θ` from every common edge.
    pub witness: Option<Point<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition3Report<T> {
    pub status: Status,
    pub theta: T,
    pub pairs: Vec<FacePairNeighbourhood<T>>,
    pub note: String,
}

/// `ε` grid: halving from `top` down to `bottom`.
fn epsilon_grid<T: Real>(top: T, bottom: T) -> Vec<T> {
    let mut out = Vec::new();
    let mut e = top;
    while e >= bottom && out.len() < 64 {
        out.push(e);
        e = e / T::lit(2.0);
    }
    if out.is_empty() {
        out.push(top);
    }
    out
}

/// Sample points of `s'`: uniform background plus points walking into `s'`
/// from each common edge at distances on the `ε` grid and fractions of `θ`.
fn samples_near<T: Real>(p: &Polyhedron<T>, sp: FaceIx, shared: &[usize], theta: T, grid: &[T], samples: usize, h: T) -> Vec<Point<T>> {
    let mut pts = p.sample_face(sp, samples);
    let mut radii: Vec<T> = grid.to_vec();
    radii.extend(sampling::midpoints::<T>(8).into_iter().map(|u| u * T::lit(4.0) * theta));
    for &e in shared {
        for z in edge_probe_points(p, e, samples) {
            let Ok(t) = p.into_face_direction(sp, e, &z, h) else { continue };
            for &r in &radii {
                let y = p.space.geodesic_point(&z, &t.vec, r);
                if p.bound_margin(sp, &y) >= T::zero() {
                    pts.push(y);
                }
            }
        }
    }
    pts
}

/// Checks every ordered pair of distinct faces sharing an edge, with
/// `ε` ranging over a halving grid from `top` down to `tol.mem`.
pub fn check_condition3<T: Real>(p: &Polyhedron<T>, theta: T, top: T, samples: usize, h: T) -> Condition3Report<T> {
    let grid = epsilon_grid(top, p.tol.mem);
    let mut pairs = Vec::new();
    let mut status = Status::Pass;
    for s in 0..p.faces.len() {
        for sp in 0..p.faces.len() {
            if s == sp {
                continue;
            }
            let shared = p.shared_edges(s, sp);
            if shared.is_empty() {
                continue;
            }
            let pts = samples_near(p, sp, &shared, theta, &grid, samples, h);
            let scored: Vec<(T, T)> = pts
                .iter()
                .map(|y| {
                    let to_s = p.face_distance(s, y);
                    let to_edges = shared.iter().map(|&e| p.edge_distance(e, y)).fold(T::infinity(), T::min);
                    (to_s, to_edges)
                })
                .collect();
            let bad = |eps: T| scored.iter().position(|&(ds, de)| ds < eps && de >= theta);
            // Containment is monotone in ε; bisect for the first (largest) passing grid value.
            let (mut lo, mut hi) = (0usize, grid.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                if bad(grid[mid]).is_none() {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let epsilon = grid.get(lo).copied();
            let witness = match epsilon {
                Some(_) => None,
                None => {
                    status = Status::Fail;
                    bad(grid[grid.len() - 1]).map(|i| pts[i].clone())
                }
            };
            pairs.push(FacePairNeighbourhood {
                s: p.faces[s].id.clone(),
                s_prime: p.faces[sp].id.clone(),
                epsilon,
                witness,
            });
        }
    }
    Condition3Report {
        status,
        theta,
        pairs,
        note: "sampled search; for totally geodesic faces in constant curvature the condition holds whenever the separation constant is positive".into(),
    }
}
