//! `tessella`: verify face-pairings, list edge cycles, develop translates and
//! print group presentations.
//!
//! Exit codes: 0 pass, 1 a hypothesis or check fails, 2 inconclusive,
//! 3 unreadable or invalid input.

mod args;
mod report;

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::json;
use tessella_core::develop::{self, Chart, DevelopOptions};
use tessella_core::document::{InputDocument, LoadError, Problem};
use tessella_core::verify::{self, Status, VerificationReport, Verified};
use tessella_core::{Config, Point};

use args::{Cli, Command, Common, DevelopArgs};
use report::{exit_code, provenance, render_verification, to_json_line};

const INPUT_ERROR: u8 = 3;

/// An input or usage problem: printed to stderr, exit code 3.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

#[allow(clippy::large_enum_variant)]
enum Loaded {
    Ready(Problem),
    /// Well-formed input whose polyhedron violates the structural axioms.
    Broken(VerificationReport<f64>),
}

struct Session {
    bytes: Vec<u8>,
    config: Config<f64>,
    loaded: Loaded,
}

fn configure(c: &Common, doc: &InputDocument) -> Result<Config<f64>> {
    let mut cfg = doc.config();
    if let Some(v) = c.tol_iso {
        cfg.tol.iso = v;
    }
    if let Some(v) = c.tol_mem {
        cfg.tol.mem = v;
    }
    if let Some(v) = c.tol_ang {
        cfg.tol.ang = v;
    }
    if let Some(v) = c.samples {
        cfg.samples = v;
    }
    if let Some(m) = c.mode {
        cfg.mode = m;
    }
    let tols = [cfg.tol.iso, cfg.tol.mem, cfg.tol.ang, cfg.window];
    if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        bail!("tolerances and window must be positive");
    }
    if cfg.samples < 2 || cfg.k_max == 0 {
        bail!("samples must be at least 2 and k_max positive");
    }
    Ok(cfg)
}

fn open(c: &Common) -> Result<Session, InputError> {
    let bytes = fs::read(&c.file).with_context(|| format!("cannot read {}", c.file.display()))?;
    let text = std::str::from_utf8(&bytes).context("input is not UTF-8")?;
    let doc = InputDocument::from_json(text)?;
    let config = configure(c, &doc)?;
    let loaded = match doc.load(config.clone()) {
        Ok(p) => Loaded::Ready(p),
        Err(LoadError::Structure(e)) => Loaded::Broken(VerificationReport::structural_failure(&e, &config)),
        Err(e) => return Err(e.into()),
    };
    Ok(Session { bytes, config, loaded })
}

fn emit(s: &str) {
    print!("{s}");
}

fn verify_session(s: &Session) -> Option<(&Problem, Verified<f64>)> {
    match &s.loaded {
        Loaded::Ready(p) => Some((p, verify::verify_all(&p.polyhedron, &p.pairing, &p.config))),
        Loaded::Broken(_) => None,
    }
}

fn cmd_verify(c: &Common) -> Result<u8, InputError> {
    let s = open(c)?;
    let report = match verify_session(&s) {
        Some((_, v)) => v.report,
        None => match &s.loaded {
            Loaded::Broken(r) => r.clone(),
            Loaded::Ready(_) => unreachable!(),
        },
    };
    if c.json {
        let mut doc = provenance("verify", &s.bytes, &s.config);
        doc["report"] = serde_json::to_value(&report)?;
        emit(&to_json_line(&doc));
    } else {
        emit(&render_verification(&report));
    }
    Ok(exit_code(report.verdict))
}

/// Status of the parts `cycles` depends on.
fn cycles_status(r: &VerificationReport<f64>) -> Status {
    r.structural.status.combine(r.pairing.status).combine(r.cycles.status)
}

fn cmd_cycles(c: &Common) -> Result<u8, InputError> {
    let s = open(c)?;
    let Some((pr, v)) = verify_session(&s) else {
        let Loaded::Broken(r) = &s.loaded else { unreachable!() };
        eprint!("{}", render_verification(r));
        return Ok(exit_code(r.verdict));
    };
    let p = &pr.polyhedron;
    let status = cycles_status(&v.report);
    if c.json {
        let cycles: Vec<_> = v
            .cycles
            .iter()
            .map(|cy| {
                json!({
                    "base_edge": p.edges[cy.base_edge].id,
                    "notation": cy.notation(p),
                    "n": cy.len(),
                    "k": cy.multiplicity,
                    "geometric": cy.is_geometric(),
                    "certified_by": cy.certified_by,
                    "modes_disagree": cy.modes_disagree,
                    "residual": cy.residual(),
                })
            })
            .collect();
        let mut doc = provenance("cycles", &s.bytes, &s.config);
        doc["status"] = json!(status);
        doc["cycles"] = json!(cycles);
        emit(&to_json_line(&doc));
    } else {
        let mut out = String::new();
        for cy in &v.cycles {
            let kind = if cy.is_geometric() { "geometric" } else { "not geometric" };
            out.push_str(&format!(
                "{}\n  n={} k={} residual={:.3e} ({kind})\n",
                cy.notation(p),
                cy.len(),
                cy.multiplicity,
                cy.residual()
            ));
        }
        if v.cycles.is_empty() {
            out.push_str("no edges, no cycles\n");
        }
        if status != Status::Pass {
            out.push_str(&render_verification(&v.report));
        }
        emit(&out);
    }
    Ok(exit_code(status))
}

fn cmd_presentation(c: &Common) -> Result<u8, InputError> {
    let s = open(c)?;
    let Some((pr, v)) = verify_session(&s) else {
        let Loaded::Broken(r) = &s.loaded else { unreachable!() };
        eprint!("{}", render_verification(r));
        return Ok(exit_code(r.verdict));
    };
    if v.report.verdict != Status::Pass {
        eprint!("{}", render_verification(&v.report));
        eprintln!("verification did not pass; no presentation");
        return Ok(exit_code(v.report.verdict));
    }
    let pres = develop::presentation(&pr.polyhedron, &pr.pairing, &v.cycles);
    if c.json {
        let mut doc = provenance("presentation", &s.bytes, &s.config);
        doc["presentation"] = serde_json::to_value(&pres)?;
        emit(&to_json_line(&doc));
    } else {
        emit(&pres.text());
    }
    Ok(0)
}

fn cmd_develop(a: &DevelopArgs) -> Result<u8, InputError> {
    let c = &a.common;
    let s = open(c)?;
    let Some((pr, v)) = verify_session(&s) else {
        let Loaded::Broken(r) = &s.loaded else { unreachable!() };
        eprint!("{}", render_verification(r));
        return Ok(exit_code(r.verdict));
    };
    let p = &pr.polyhedron;
    let verdict = v.report.verdict;
    if verdict != Status::Pass && !a.force {
        eprint!("{}", render_verification(&v.report));
        eprintln!("verification did not pass; rerun with --unsafe to develop anyway");
        return Ok(exit_code(verdict));
    }
    let center = match &a.center {
        Some(cs) => {
            let x = Point::new(cs.clone());
            if cs.len() != p.space.ambient() || p.space.check_point(&x, 1e-9).is_err() {
                return Err(anyhow!("--center is not a point of the model space").into());
            }
            Some(x)
        }
        None => None,
    };
    if a.radius.is_some_and(|r| !(r.is_finite() && r >= 0.0)) {
        return Err(anyhow!("--radius must be a non-negative number").into());
    }
    let chart = match &a.chart {
        Some(name) => name.parse::<Chart>().map_err(|e| anyhow!(e))?,
        None => Chart::default_for(p.space.kind),
    };
    let opts = DevelopOptions { depth: a.depth, center, radius: a.radius, samples: s.config.samples };
    let (dev, rep) = develop::develop(p, &pr.pairing, &v.cycles, v.d_eff, &opts);
    if let Some(path) = &a.svg {
        let svg = develop::export_svg(&dev, p, chart)?;
        fs::write(path, svg).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if c.json {
        let mut doc = provenance("develop", &s.bytes, &s.config);
        doc["verification"] = json!({ "verdict": verdict, "blame": v.report.blame });
        doc["develop"] = serde_json::to_value(&rep)?;
        emit(&to_json_line(&doc));
    } else {
        let mut out = String::new();
        if verdict != Status::Pass {
            out.push_str(&format!(
                "warning: verification verdict {} (blame: {}); developing anyway\n",
                verdict.as_str(),
                v.report.blame.as_deref().unwrap_or("-")
            ));
        }
        out.push_str(&format!("translates: {} (depth {})\n", rep.translates, rep.depth));
        for amb in &rep.ambiguities {
            out.push_str(&format!("  ambiguous: {} vs {} (deviation {:.3e})\n", amb.kept, amb.candidate, amb.deviation));
        }
        out.push_str(&format!("overlap: {}", rep.overlap.status.as_str()));
        if let Some(w) = &rep.overlap.witness {
            out.push_str(&format!(" ({} and {} share {:?})", w.g, w.h, w.point.coords));
        }
        out.push('\n');
        let cv = &rep.covering;
        out.push_str(&format!("covering: {} (radius {:.6}, {} samples", cv.status.as_str(), cv.radius, cv.samples));
        if cv.uncovered > 0 {
            out.push_str(&format!(
                ", {} uncovered: {} near the ball boundary, {} well inside",
                cv.uncovered,
                cv.boundary_witnesses.len(),
                cv.inside_witnesses.len()
            ));
        }
        out.push_str(")\n");
        for n in &rep.edge_neighbourhoods {
            out.push_str(&format!("edge {}: {}", n.edge, n.status.as_str()));
            if let Some(r) = &n.report {
                out.push_str(&format!(
                    " ({} neighbours, {} of {} samples multiply covered (max {}), {} uncovered)",
                    r.neighbours, r.multiply_covered, r.samples, r.max_multiplicity, r.uncovered
                ));
            }
            if let Some(e) = &n.error {
                out.push_str(&format!(" ({e})"));
            }
            out.push('\n');
        }
        out.push_str(&format!("overlap violation: {}\n", if rep.overlap_violation { "yes" } else { "no" }));
        out.push_str(&rep.note);
        out.push('\n');
        emit(&out);
    }
    Ok(exit_code(rep.status.combine(verdict)))
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TESSELLA_THREADS") {
        let n: usize = v.parse().map_err(|_| anyhow!("TESSELLA_THREADS must be a positive integer"))?;
        if n == 0 {
            bail!("TESSELLA_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(INPUT_ERROR);
    }
    let result = match &cli.command {
        Command::Verify(c) => cmd_verify(c),
        Command::Cycles(c) => cmd_cycles(c),
        Command::Develop(a) => cmd_develop(a),
        Command::Presentation(c) => cmd_presentation(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
