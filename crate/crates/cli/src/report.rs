use std::fmt::Write as _;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tessella_core::verify::{Status, VerificationReport};
use tessella_core::Config;

/// Fixed header shared by every machine report: tool, input digest and the
/// effective configuration. Sampling uses unseeded Halton sequences, so the
/// recorded seed is always 0.
pub fn provenance(command: &str, input: &[u8], cfg: &Config<f64>) -> Value {
    let digest = Sha256::digest(input);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    json!({
        "tool": { "name": "tessella", "version": env!("CARGO_PKG_VERSION") },
        "command": command,
        "input_sha256": hex,
        "tolerances": cfg.tol,
        "samples": cfg.samples,
        "mode": cfg.mode,
        "k_max": cfg.k_max,
        "window": cfg.window,
        "sampling": { "sequence": "halton", "seed": 0 },
    })
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass | Status::Skipped => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}

pub fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn row(out: &mut String, name: &str, status: Status, detail: &str) {
    let _ = writeln!(out, "  {name:<12} {:<13} {detail}", status.as_str());
}

fn short(x: f64) -> String {
    format!("{x:.3e}")
}

/// Tabular text form of a verification report.
pub fn render_verification(r: &VerificationReport<f64>) -> String {
    let mut out = String::new();
    let s = &r.structural;
    let sep = match (&s.separation, s.effective_separation) {
        (Some(sp), Some(d)) => match &sp.witness {
            Some(w) => {
                let cat = serde_json::to_value(w.category).unwrap();
                format!("separation {:.6} ({} {} / {}), effective {:.6}", w.distance, cat.as_str().unwrap_or(""), w.a, w.b, d)
            }
            None => format!("separation unconstrained, effective {d:.6}"),
        },
        _ => String::new(),
    };
    let detail = match &s.error {
        Some(e) => e.clone(),
        None => format!("{} faces, {} edges; {sep}", s.faces, s.edges),
    };
    row(&mut out, "structural", s.status, &detail);

    let detail = match &r.pairing.report {
        Some(p) if p.ok => format!("inverse defect {}, face offset {}", short(p.inverse_defect), short(p.face_offset)),
        Some(p) => p.issues.iter().map(|i| serde_json::to_string(i).unwrap()).collect::<Vec<_>>().join("; "),
        None => String::new(),
    };
    row(&mut out, "pairing", r.pairing.status, &detail);

    let detail = match &r.cycles.report {
        Some(c) => {
            let mut d: Vec<String> = c.cycles.iter().map(|c| format!("{}: n={} k={}", c.base_edge, c.n, c.k)).collect();
            if let Some(e) = &c.error {
                d.push(e.clone());
            }
            d.join(", ")
        }
        None => String::new(),
    };
    row(&mut out, "cycles", r.cycles.status, &detail);

    let detail = match &r.condition1.report {
        Some(c) => {
            let mut d = format!("max deviation {}", short(c.max_deviation));
            if let Some((f, x)) = &c.witness {
                let _ = write!(d, "; witness on face {f} at {:?}", x.coords);
            }
            d
        }
        None => String::new(),
    };
    row(&mut out, "condition1", r.condition1.status, &detail);

    let detail = match &r.condition2.report {
        Some(c) => c
            .cycles
            .iter()
            .map(|a| {
                let mut d = format!("{}: total {:.9} (combinatorial {:.9}, k={})", a.base_edge, a.total_angle, a.combinatorial_total_angle, a.k);
                if let Some(e) = &a.error {
                    let _ = write!(d, " {e}");
                }
                d
            })
            .collect::<Vec<_>>()
            .join(", "),
        None => String::new(),
    };
    row(&mut out, "condition2", r.condition2.status, &detail);

    let detail = match &r.condition3.report {
        Some(c) => {
            let bad: Vec<String> = c.pairs.iter().filter(|p| p.epsilon.is_none()).map(|p| format!("{} near {}", p.s_prime, p.s)).collect();
            if bad.is_empty() {
                format!("theta {:.6}, {} face pairs", c.theta, c.pairs.len())
            } else {
                format!("theta {:.6}; no containing epsilon for {}", c.theta, bad.join(", "))
            }
        }
        None => String::new(),
    };
    row(&mut out, "condition3", r.condition3.status, &detail);

    let detail = match &r.sectors.report {
        Some(s) => format!("{} cycle(s)", s.cycles.len()),
        None => String::new(),
    };
    row(&mut out, "sectors", r.sectors.status, &detail);

    let _ = write!(out, "verdict: {}", r.verdict.as_str());
    if let Some(b) = &r.blame {
        let _ = write!(out, " (blame: {b})");
    }
    out.push('\n');
    out
}
