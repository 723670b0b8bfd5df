use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::geometry::{Isometry, Kind, Point};
use crate::polyhedron::{FaceExtent, Polyhedron};
use crate::scalar::Real;

use super::{Development, DevelopError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    EuclideanPlane,
    KleinDisk,
    PoincareDisk,
}

impl Chart {
    pub fn default_for(kind: Kind) -> Chart {
        match kind {
            Kind::Euclidean => Chart::EuclideanPlane,
            Kind::Hyperbolic => Chart::PoincareDisk,
        }
    }

    fn is_disk(self) -> bool {
        self != Chart::EuclideanPlane
    }
}

impl FromStr for Chart {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean-plane" => Ok(Chart::EuclideanPlane),
            "klein-disk" => Ok(Chart::KleinDisk),
            "poincare-disk" => Ok(Chart::PoincareDisk),
            _ => Err(format!("unknown chart {s:?} (expected euclidean-plane, klein-disk or poincare-disk)")),
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::EuclideanPlane => "euclidean-plane",
            Chart::KleinDisk => "klein-disk",
            Chart::PoincareDisk => "poincare-disk",
        })
    }
}

const MAX_TURN_DEG: f64 = 1.0;

fn turn(a: [f64; 2], m: [f64; 2], b: [f64; 2]) -> f64 {
    let u = [m[0] - a[0], m[1] - a[1]];
    let v = [b[0] - m[0], b[1] - m[1]];
    let cross = u[0] * v[1] - u[1] * v[0];
    let dot = u[0] * v[0] + u[1] * v[1];
    cross.atan2(dot).abs().to_degrees()
}

/// Chart image of `t -> f(t)` on `[t0, t1]`, bisected until consecutive
/// chords turn by at most one degree.
fn trace(f: &dyn Fn(f64) -> [f64; 2], t0: f64, t1: f64, out: &mut Vec<[f64; 2]>) {
    fn rec(f: &dyn Fn(f64) -> [f64; 2], t0: f64, a: [f64; 2], t1: f64, b: [f64; 2], depth: u32, out: &mut Vec<[f64; 2]>) {
        let tm = 0.5 * (t0 + t1);
        let m = f(tm);
        if depth >= 14 || turn(a, m, b) <= MAX_TURN_DEG {
            out.push(b);
            return;
        }
        rec(f, t0, a, tm, m, depth + 1, out);
        rec(f, tm, m, t1, b, depth + 1, out);
    }
    let a = f(t0);
    out.push(a);
    rec(f, t0, a, t1, f(t1), 0, out);
}

fn num(x: f64) -> String {
    format!("{:.6}", x + 0.0)
}

/// SVG 1.1 drawing of every translate's boundary in a 2-dimensional chart,
/// the identity tile highlighted. Unbounded faces are cut at the sampling window.
pub fn export_svg<T: Real>(dev: &Development<T>, p: &Polyhedron<T>, chart: Chart) -> Result<String, DevelopError> {
    if p.space.dim != 2 {
        return Err(DevelopError::Unsupported("SVG export needs dimension 2".into()));
    }
    if chart.is_disk() != p.space.is_hyperbolic() {
        return Err(DevelopError::Unsupported(format!("chart {chart} does not fit the {:?} plane", p.space.kind)));
    }
    let space = p.space;
    let to_chart = |x: &Point<T>| -> [f64; 2] {
        let c = match chart {
            Chart::EuclideanPlane => x.coords.clone(),
            Chart::KleinDisk => space.klein(x),
            Chart::PoincareDisk => space.poincare(x),
        };
        [c[0].as_f64(), c[1].as_f64()]
    };
    let draw_tile = |g: &Isometry<T>| -> Vec<Vec<[f64; 2]>> {
        p.faces
            .iter()
            .filter_map(|face| match &face.extent {
                FaceExtent::Segment(piece) => {
                    let (lo, hi) = piece.windowed(p.window);
                    let f = |t: f64| to_chart(&g.apply(&piece.point(&space, T::lit(t))));
                    let mut pts = Vec::new();
                    trace(&f, lo.as_f64(), hi.as_f64(), &mut pts);
                    Some(pts)
                }
                FaceExtent::Planar { .. } => None,
            })
            .collect()
    };
    let tiles: Vec<Vec<Vec<[f64; 2]>>> = dev.translates.iter().map(|t| draw_tile(&t.iso)).collect();

    let (min, max) = if chart.is_disk() {
        ([-1.0, -1.0], [1.0, 1.0])
    } else {
        let all = tiles.iter().flatten().flatten();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for q in all {
            for i in 0..2 {
                lo[i] = lo[i].min(q[i]);
                hi[i] = hi[i].max(q[i]);
            }
        }
        (lo, hi)
    };
    let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
    let pad = 0.05 * span;
    let (x0, y0, w) = (min[0] - pad, -max[1] - pad, span + 2.0 * pad);
    let stroke = w / 400.0;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"{} {} {} {}\">",
        num(x0),
        num(y0),
        num(w),
        num(w)
    );
    let _ = writeln!(s, "<title>{} translates, depth {}, {chart}</title>", dev.translates.len(), dev.depth);
    if chart.is_disk() {
        let _ = writeln!(s, "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999999\" stroke-width=\"{}\"/>", num(stroke));
    }
    let polyline = |s: &mut String, pts: &[[f64; 2]], color: &str, width: f64| {
        let coords: Vec<String> = pts.iter().map(|q| format!("{},{}", num(q[0]), num(-q[1]))).collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\" points=\"{}\"/>",
            num(width),
            coords.join(" ")
        );
    };
    let _ = writeln!(s, "<g id=\"translates\">");
    for tile in tiles.iter().skip(1) {
        for pts in tile {
            polyline(&mut s, pts, "#34495e", stroke);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g id=\"identity\">");
    for pts in &tiles[0] {
        polyline(&mut s, pts, "#c0392b", 3.0 * stroke);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}
