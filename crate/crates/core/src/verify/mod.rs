//! The hypotheses of the polyhedron theorem, checked numerically:
//! (1) pairings send interior into exterior, (2) every geometric cycle has
//! total interior angle 2π, (3) faces meet only near common edges. Plus the
//! sector tiling and the constancy of total angles along edges.

mod angles;
mod condition3;

use serde::Serialize;

use crate::config::{Config, CycleMode, Tolerances};
use crate::pairing::{self, EdgeCycle, FacePairing, PairingReport};
use crate::polyhedron::{BuildError, Polyhedron, SeparationReport};
use crate::scalar::Real;

pub use angles::{
    check_condition1, check_cycle_angles, check_sectors, combinatorial_angle_sum, cycle_angles, interior_angle, total_angle,
    AngleError, AngleTerm, Condition1Report, CycleAngles, SectorReport,
};
pub use condition3::{check_condition3, Condition3Report, FacePairNeighbourhood};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl Status {
    /// Fail dominates inconclusive, which dominates pass; skipped is neutral.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Pass, _) | (_, Pass) => Pass,
            _ => Skipped,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralReport<T> {
    pub status: Status,
    pub faces: usize,
    pub edges: usize,
    pub error: Option<String>,
    pub separation: Option<SeparationReport<T>>,
    /// Separation actually used downstream: the estimate, capped by the sampling window.
    pub effective_separation: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleSummary<T> {
    pub base_edge: String,
    pub terms: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub certified_by: Option<CycleMode>,
    pub modes_disagree: bool,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclesReport<T> {
    pub status: Status,
    pub cycles: Vec<CycleSummary<T>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition2Report<T> {
    pub status: Status,
    pub cycles: Vec<CycleAngles<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorsReport<T> {
    pub status: Status,
    pub cycles: Vec<SectorReport<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component<R> {
    pub status: Status,
    pub report: Option<R>,
}

impl<R> Component<R> {
    fn skipped() -> Self {
        Component { status: Status::Skipped, report: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub verdict: Status,
    /// First failing (else inconclusive) component, in checking order.
    pub blame: Option<String>,
    pub failing: Vec<String>,
    pub structural: StructuralReport<T>,
    pub pairing: Component<PairingReport<T>>,
    pub cycles: Component<CyclesReport<T>>,
    pub condition1: Component<Condition1Report<T>>,
    pub condition2: Component<Condition2Report<T>>,
    pub condition3: Component<Condition3Report<T>>,
    pub sectors: Component<SectorsReport<T>>,
    /// Largest constancy deviation of total angles over all cycles.
    pub angle_constancy: Option<T>,
    pub tolerances: Tolerances<T>,
    pub samples: usize,
    pub mode: CycleMode,
}

/// Everything downstream modules need from a successful verification run.
#[derive(Debug, Clone)]
pub struct Verified<T> {
    pub report: VerificationReport<T>,
    pub cycles: Vec<EdgeCycle<T>>,
    /// Separation used for probe steps, neighbourhood radii and θ.
    pub d_eff: T,
}

impl<T: Real> VerificationReport<T> {
    /// Report for an input whose polyhedron could not be built.
    pub fn structural_failure(err: &BuildError, cfg: &Config<T>) -> Self {
        let mut r = Self::empty(cfg);
        r.structural.status = Status::Fail;
        r.structural.error = Some(err.to_string());
        r.finish();
        r
    }

    fn empty(cfg: &Config<T>) -> Self {
        VerificationReport {
            verdict: Status::Skipped,
            blame: None,
            failing: Vec::new(),
            structural: StructuralReport {
                status: Status::Skipped,
                faces: 0,
                edges: 0,
                error: None,
                separation: None,
                effective_separation: None,
            },
            pairing: Component::skipped(),
            cycles: Component::skipped(),
            condition1: Component::skipped(),
            condition2: Component::skipped(),
            condition3: Component::skipped(),
            sectors: Component::skipped(),
            angle_constancy: None,
            tolerances: cfg.tol,
            samples: cfg.samples,
            mode: cfg.mode,
        }
    }

    pub fn components(&self) -> [(&'static str, Status); 7] {
        [
            ("structural", self.structural.status),
            ("pairing", self.pairing.status),
            ("cycles", self.cycles.status),
            ("condition1", self.condition1.status),
            ("condition2", self.condition2.status),
            ("condition3", self.condition3.status),
            ("sectors", self.sectors.status),
        ]
    }

    fn finish(&mut self) {
        let comps = self.components();
        self.verdict = comps.iter().fold(Status::Skipped, |a, &(_, s)| a.combine(s));
        self.failing = comps.iter().filter(|(_, s)| *s == Status::Fail).map(|(n, _)| n.to_string()).collect();
        self.blame = self
            .failing
            .first()
            .cloned()
            .or_else(|| comps.iter().find(|(_, s)| *s == Status::Inconclusive).map(|(n, _)| n.to_string()));
    }
}

/// Runs every check on a built polyhedron and its pairing.
pub fn verify_all<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, cfg: &Config<T>) -> Verified<T> {
    let mut r = VerificationReport::empty(cfg);
    let samples = cfg.samples;

    let sep = p.estimate_separation(samples);
    let d_eff = sep.estimate.map_or(cfg.window, |d| d.min(cfg.window));
    r.structural = StructuralReport {
        status: if sep.violation { Status::Fail } else { Status::Pass },
        faces: p.faces.len(),
        edges: p.edges.len(),
        error: sep.violation.then(|| "separation estimate below membership tolerance".to_string()),
        effective_separation: (!sep.violation).then_some(d_eff),
        separation: Some(sep),
    };
    let h = angles::default_probe(p, d_eff);
    let theta = d_eff / T::lit(4.0);
    let c3 = check_condition3(p, theta, d_eff / T::lit(2.0), samples, h);
    r.condition3 = Component { status: c3.status, report: Some(c3) };
    if r.structural.status == Status::Fail {
        r.finish();
        return Verified { report: r, cycles: Vec::new(), d_eff };
    }

    let pr = pairing::validate_pairing(p, fp, samples);
    r.pairing = Component { status: if pr.ok { Status::Pass } else { Status::Fail }, report: None };
    if !pr.ok {
        r.pairing.report = Some(pr);
        r.finish();
        return Verified { report: r, cycles: Vec::new(), d_eff };
    }

    let c1 = check_condition1(p, fp, samples);
    r.condition1 = Component { status: c1.status, report: Some(c1) };

    let cycles = match pairing::cycle_family(p, fp, &pr.edge_images, cfg) {
        Ok(c) => c,
        Err(e) => {
            r.cycles = Component {
                status: Status::Fail,
                report: Some(CyclesReport { status: Status::Fail, cycles: Vec::new(), error: Some(e.to_string()) }),
            };
            r.pairing.report = Some(pr);
            r.finish();
            return Verified { report: r, cycles: Vec::new(), d_eff };
        }
    };
    r.pairing.report = Some(pr);
    let summaries: Vec<CycleSummary<T>> = cycles
        .iter()
        .map(|c| CycleSummary {
            base_edge: p.edges[c.base_edge].id.clone(),
            terms: c.terms.iter().map(|t| p.edges[t.edge].id.clone()).collect(),
            n: c.len(),
            k: c.multiplicity,
            certified_by: c.certified_by,
            modes_disagree: c.modes_disagree,
            residual: c.residual(),
        })
        .collect();
    let all_geometric = cycles.iter().all(|c| c.is_geometric());
    let cs = if all_geometric { Status::Pass } else { Status::Fail };
    let err = (!all_geometric).then(|| {
        let bad: Vec<&str> = summaries.iter().filter(|s| s.certified_by.is_none()).map(|s| s.base_edge.as_str()).collect();
        format!("no geometric multiple within k <= {} for cycles through {}", cfg.k_max, bad.join(", "))
    });
    r.cycles = Component { status: cs, report: Some(CyclesReport { status: cs, cycles: summaries, error: err }) };

    if all_geometric {
        let angles: Vec<CycleAngles<T>> = cycles.iter().map(|c| check_cycle_angles(p, c, samples, h)).collect();
        let st = angles.iter().fold(Status::Pass, |a, c| a.combine(c.status));
        r.angle_constancy = Some(angles.iter().map(|a| a.constancy_deviation).fold(T::zero(), T::max));
        if r.condition1.status == Status::Pass && st == Status::Pass {
            let sectors: Vec<SectorReport<T>> = cycles.iter().zip(&angles).map(|(c, a)| check_sectors(p, c, a)).collect();
            let ss = sectors.iter().fold(Status::Pass, |a, c| a.combine(c.status));
            r.sectors = Component { status: ss, report: Some(SectorsReport { status: ss, cycles: sectors }) };
        }
        r.condition2 = Component { status: st, report: Some(Condition2Report { status: st, cycles: angles }) };
    }
    r.finish();
    Verified { report: r, cycles, d_eff }
}
