use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{Isometry, Point};
use crate::pairing::{EdgeCycle, FacePairing};
use crate::polyhedron::{Location, Polyhedron};
use crate::scalar::Real;
use crate::verify::Status;

use super::{ball_samples, formal_neighbours, interior_samples, sampling_radius, word_name, Development, DevelopError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapWitness<T> {
    pub g: String,
    pub h: String,
    /// A point interior to both `gP` and `hP`.
    pub point: Point<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapReport<T> {
    pub status: Status,
    pub translates: usize,
    pub samples_per_tile: usize,
    pub witness: Option<OverlapWitness<T>>,
}

/// Samples interior points of each `gP` and checks that none is interior to
/// another `hP`. Interior samples include points at `d_eff / 10` inside the
/// faces. Pairs whose tiles are provably too far apart are skipped.
pub fn overlap_check<T: Real>(dev: &Development<T>, p: &Polyhedron<T>, fp: &FacePairing<T>, samples: usize, d_eff: T) -> OverlapReport<T> {
    let pts = interior_samples(p, 8 * samples, samples, d_eff / T::lit(10.0));
    let reach = sampling_radius(p);
    let ts = &dev.translates;
    let inverses: Vec<Isometry<T>> = ts.iter().map(|t| t.iso.inverse()).collect();
    let pairs: Vec<(usize, usize)> = (0..ts.len()).flat_map(|i| (0..ts.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let hit = pairs.par_iter().find_map_first(|&(i, j)| {
        let m = inverses[j].compose(&ts[i].iso);
        if let Some(r) = reach {
            if p.space.dist(&m.apply(&p.witness), &p.witness) > T::lit(2.0) * r + p.tol.mem {
                return None;
            }
        }
        pts.iter().find(|x| p.locate(&m.apply(x)) == Location::Interior).map(|x| (i, j, ts[i].iso.apply(x)))
    });
    let witness = hit.map(|(i, j, point)| OverlapWitness { g: word_name(fp, &ts[i].word), h: word_name(fp, &ts[j].word), point });
    OverlapReport {
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        translates: ts.len(),
        samples_per_tile: pts.len(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport<T> {
    pub status: Status,
    pub center: Point<T>,
    pub radius: T,
    pub samples: usize,
    pub uncovered: usize,
    /// Uncovered samples in the outer fifth of the ball (depth may be too small).
    pub boundary_witnesses: Vec<Point<T>>,
    /// Uncovered samples well inside the ball.
    pub inside_witnesses: Vec<Point<T>>,
}

/// `inradius(center) + (L - 1) d_eff / 2`, where the inradius is the distance
/// from `center` to the nearest face.
pub fn default_radius<T: Real>(p: &Polyhedron<T>, center: &Point<T>, depth: usize, d_eff: T) -> T {
    let inradius = (0..p.faces.len()).map(|f| p.face_distance(f, center)).fold(T::infinity(), T::min);
    let inradius = if inradius.is_finite() { inradius } else { p.window };
    (inradius + (T::from_usize_lossy(depth) - T::one()) * d_eff / T::lit(2.0)).max(T::zero())
}

fn covered_by<T: Real>(p: &Polyhedron<T>, inverses: &[Isometry<T>], isos: &[Isometry<T>], reach: Option<T>, y: &Point<T>) -> bool {
    inverses.iter().zip(isos).any(|(inv, g)| {
        if let Some(r) = reach {
            if p.space.dist(&g.apply(&p.witness), y) > r + p.tol.mem {
                return false;
            }
        }
        p.locate(&inv.apply(y)) != Location::Exterior
    })
}

/// Checks that sampled points of `B(center, r)` lie in some translate.
pub fn covering_check<T: Real>(dev: &Development<T>, p: &Polyhedron<T>, center: &Point<T>, r: T, samples: usize) -> CoveringReport<T> {
    let count = 16 * samples;
    let pts = ball_samples(&p.space, center, r, count);
    let reach = sampling_radius(p);
    let isos: Vec<Isometry<T>> = dev.translates.iter().map(|t| t.iso.clone()).collect();
    let inverses: Vec<Isometry<T>> = isos.iter().map(Isometry::inverse).collect();
    let flags: Vec<bool> = pts.par_iter().map(|y| covered_by(p, &inverses, &isos, reach, y)).collect();
    let mut boundary_witnesses = Vec::new();
    let mut inside_witnesses = Vec::new();
    let mut uncovered = 0;
    for (y, ok) in pts.iter().zip(&flags) {
        if *ok {
            continue;
        }
        uncovered += 1;
        let list = if p.space.dist(center, y) > T::lit(0.8) * r { &mut boundary_witnesses } else { &mut inside_witnesses };
        if list.len() < 5 {
            list.push(y.clone());
        }
    }
    CoveringReport {
        status: if uncovered == 0 { Status::Pass } else { Status::Fail },
        center: center.clone(),
        radius: r,
        samples: pts.len(),
        uncovered,
        boundary_witnesses,
        inside_witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalBallReport<T> {
    pub status: Status,
    pub point: Point<T>,
    pub delta: T,
    pub neighbours: usize,
    pub samples: usize,
    pub uncovered: usize,
    /// Samples interior to two or more neighbour tiles.
    pub multiply_covered: usize,
    pub max_multiplicity: usize,
    pub witness: Option<Point<T>>,
}

/// Checks that the formal-neighbour tiles `gP` at `x` cover `B(x, δ)` with
/// sample-disjoint interiors.
pub fn local_ball_check<T: Real>(
    p: &Polyhedron<T>,
    fp: &FacePairing<T>,
    cycles: &[EdgeCycle<T>],
    x: &Point<T>,
    delta: T,
    samples: usize,
) -> Result<LocalBallReport<T>, DevelopError> {
    let fns = formal_neighbours(p, fp, cycles, x)?;
    let inverses: Vec<Isometry<T>> = fns.entries.iter().map(|e| e.iso.inverse()).collect();
    let pts = ball_samples(&p.space, x, delta, 8 * samples);
    let counts: Vec<(usize, bool)> = pts
        .par_iter()
        .map(|y| {
            let locs: Vec<Location> = inverses.iter().map(|inv| p.locate(&inv.apply(y))).collect();
            let interior = locs.iter().filter(|l| **l == Location::Interior).count();
            let touched = locs.iter().any(|l| *l != Location::Exterior);
            (interior, touched)
        })
        .collect();
    let uncovered = counts.iter().filter(|c| !c.1).count();
    let multiply_covered = counts.iter().filter(|c| c.0 >= 2).count();
    let max_multiplicity = counts.iter().map(|c| c.0).max().unwrap_or(0);
    let witness = counts.iter().position(|c| !c.1 || c.0 >= 2).map(|i| pts[i].clone());
    Ok(LocalBallReport {
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        point: x.clone(),
        delta,
        neighbours: fns.len(),
        samples: pts.len(),
        uncovered,
        multiply_covered,
        max_multiplicity,
        witness,
    })
}
