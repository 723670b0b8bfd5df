use serde::Serialize;

use crate::geometry::Point;
use crate::pairing::{EdgeCycle, FacePairing};
use crate::polyhedron::Polyhedron;
use crate::scalar::Real;
use crate::verify::Status;

use super::{
    covering_check, default_radius, enumerate_translates, local_ball_check, overlap_check, Ambiguity, CoveringReport, Development,
    LocalBallReport, OverlapReport,
};

#[derive(Debug, Clone, PartialEq)]
pub struct DevelopOptions<T> {
    pub depth: usize,
    /// Covering ball center; the interior witness by default.
    pub center: Option<Point<T>>,
    pub radius: Option<T>,
    pub samples: usize,
}

/// Local check around the base edge of one geometric cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeNeighbourhood<T> {
    pub edge: String,
    pub status: Status,
    pub report: Option<LocalBallReport<T>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevelopReport<T> {
    pub status: Status,
    pub depth: usize,
    pub translates: usize,
    pub words: Vec<String>,
    pub ambiguities: Vec<Ambiguity<T>>,
    pub overlap: OverlapReport<T>,
    pub covering: CoveringReport<T>,
    /// Formal-neighbour tiles around each cycle's base edge; these reach past
    /// the depth bound, so interior overlaps there show up at any depth.
    pub edge_neighbourhoods: Vec<EdgeNeighbourhood<T>>,
    /// Set when two distinct translates share interior points, found either
    /// among the developed translates or among the formal neighbours of an edge.
    pub overlap_violation: bool,
    pub note: String,
}

/// Develops to the requested depth and runs every corroboration check.
/// `d_eff` sets the near-face sample offset and the local radius `d_eff / 4`.
pub fn develop<T: Real>(
    p: &Polyhedron<T>,
    fp: &FacePairing<T>,
    cycles: &[EdgeCycle<T>],
    d_eff: T,
    opts: &DevelopOptions<T>,
) -> (Development<T>, DevelopReport<T>) {
    let dev = enumerate_translates(p, fp, opts.depth);
    let overlap = overlap_check(&dev, p, fp, opts.samples, d_eff);
    let center = opts.center.clone().unwrap_or_else(|| p.witness.clone());
    let radius = opts.radius.unwrap_or_else(|| default_radius(p, &center, opts.depth, d_eff));
    let covering = covering_check(&dev, p, &center, radius, opts.samples);
    let edge_neighbourhoods: Vec<EdgeNeighbourhood<T>> = cycles
        .iter()
        .map(|c| {
            let edge = p.edges[c.base_edge].id.clone();
            if !c.is_geometric() {
                return EdgeNeighbourhood { edge, status: Status::Skipped, report: None, error: Some("cycle is not geometric".into()) };
            }
            let x = p.edge_midpoint(c.base_edge);
            match local_ball_check(p, fp, cycles, &x, d_eff / T::lit(4.0), opts.samples) {
                Ok(r) => EdgeNeighbourhood { edge, status: r.status, report: Some(r), error: None },
                Err(e) => EdgeNeighbourhood { edge, status: Status::Inconclusive, report: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let overlap_violation = overlap.status == Status::Fail
        || edge_neighbourhoods.iter().any(|n| n.report.as_ref().is_some_and(|r| r.multiply_covered > 0));
    let status = edge_neighbourhoods
        .iter()
        .fold(dev.status().combine(overlap.status).combine(covering.status), |a, n| a.combine(n.status));
    let report = DevelopReport {
        status,
        depth: opts.depth,
        translates: dev.translates.len(),
        words: dev.words(fp),
        ambiguities: dev.ambiguities.clone(),
        overlap,
        covering,
        edge_neighbourhoods,
        overlap_violation,
        note: format!("sampled checks on a finite development; corroborated to depth {} only", opts.depth),
    };
    (dev, report)
}
