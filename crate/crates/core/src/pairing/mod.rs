//! Face-pairings: the involution `s -> s̄` with isometries `I_s`, their
//! validation, and cycles of edges.

mod cycles;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Isometry, Point};
use crate::polyhedron::{EdgeIx, EdgeLocus, FaceIx, Polyhedron};
use crate::scalar::Real;

pub use cycles::{cycle_family, make_geometric, trace_cycle, CycleError, EdgeCycle, Orientation, Term};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairingError {
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("face {0} has more than one pairing entry")]
    Duplicate(String),
    #[error("face {0} has no pairing entry")]
    Missing(String),
    #[error("isometry for face {0} lives in a different model space")]
    Space(String),
}

/// One row of pairing input.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingEntry<T> {
    pub face: String,
    pub partner: String,
    pub generator: Option<String>,
    pub iso: Isometry<T>,
}

/// `I_s` written in the generators: generator index and whether it appears inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacePairing<T> {
    pub partner: Vec<FaceIx>,
    pub iso: Vec<Isometry<T>>,
    pub letters: Vec<Letter>,
    pub generators: Vec<String>,
}

/// Default generator names `a, b, c, ...`, continuing `a1, b1, ...`.
fn default_name(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    }
}

impl<T: Real> FacePairing<T> {
    /// Resolves ids and assigns one generator per unordered pair `{s, s̄}`
    /// (named after the entry of the first face of the pair, or `a, b, ...`).
    /// The involution itself is checked by [`validate_pairing`].
    pub fn new(p: &Polyhedron<T>, entries: Vec<PairingEntry<T>>) -> Result<Self, PairingError> {
        let n = p.faces.len();
        let mut slot: Vec<Option<PairingEntry<T>>> = vec![None; n];
        for e in entries {
            let f = p.face_index(&e.face).ok_or_else(|| PairingError::UnknownFace(e.face.clone()))?;
            p.face_index(&e.partner).ok_or_else(|| PairingError::UnknownFace(e.partner.clone()))?;
            if e.iso.space() != p.space {
                return Err(PairingError::Space(e.face));
            }
            if slot[f].is_some() {
                return Err(PairingError::Duplicate(e.face));
            }
            slot[f] = Some(e);
        }
        let entries: Vec<PairingEntry<T>> = slot
            .into_iter()
            .enumerate()
            .map(|(f, e)| e.ok_or_else(|| PairingError::Missing(p.faces[f].id.clone())))
            .collect::<Result<_, _>>()?;
        let partner: Vec<FaceIx> = entries.iter().map(|e| p.face_index(&e.partner).unwrap()).collect();
        let mut letters: Vec<Option<Letter>> = vec![None; n];
        let mut generators: Vec<String> = Vec::new();
        for f in 0..n {
            if letters[f].is_some() {
                continue;
            }
            let g = generators.len();
            let q = partner[f];
            let paired = q != f && partner[q] == f && letters[q].is_none();
            // The face whose entry names the generator carries it uninverted.
            let (main, other) = if paired && entries[f].generator.is_none() && entries[q].generator.is_some() { (q, f) } else { (f, q) };
            generators.push(entries[main].generator.clone().unwrap_or_else(|| default_name(g)));
            letters[main] = Some(Letter { generator: g, inverse: false });
            if paired {
                letters[other] = Some(Letter { generator: g, inverse: true });
            }
        }
        Ok(FacePairing {
            partner,
            iso: entries.into_iter().map(|e| e.iso).collect(),
            letters: letters.into_iter().map(Option::unwrap).collect(),
            generators,
        })
    }

    /// Name of `I_s` in the generators, e.g. `a` or `a^-1`.
    pub fn letter_name(&self, f: FaceIx) -> String {
        let l = self.letters[f];
        let g = &self.generators[l.generator];
        if l.inverse {
            format!("{g}^-1")
        } else {
            g.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairingIssue<T> {
    NotInvolutive { face: String, partner: String },
    InverseDefect { face: String, deviation: T },
    OffFace { face: String, image_face: String, point: Point<T>, offset: T },
    UnmatchedEdge { face: String, edge: String },
    IncidenceMismatch { face: String, edge: String, matched: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport<T> {
    pub ok: bool,
    /// Largest deviation of `I_s̄ I_s` from the identity.
    pub inverse_defect: T,
    /// Largest offset of a sampled image point from the partner face.
    pub face_offset: T,
    pub issues: Vec<PairingIssue<T>>,
    /// `(s, e) -> I_s e` for every edge `e` of every face `s`.
    #[serde(skip)]
    pub edge_images: BTreeMap<(FaceIx, EdgeIx), EdgeIx>,
}

/// Membership tolerance scaled with the coordinate magnitude, since hyperboloid
/// coordinates grow exponentially with distance from the origin.
pub(crate) fn scaled_tol<T: Real>(tol: T, x: &Point<T>) -> T {
    tol * x.coords.iter().fold(T::one(), |m, &c| m.max(c.abs()))
}

/// Points sampled on an edge for matching: the point itself, or up to 8 points of a line.
pub(crate) fn edge_probe_points<T: Real>(p: &Polyhedron<T>, e: EdgeIx, samples: usize) -> Vec<Point<T>> {
    match &p.edges[e].locus {
        EdgeLocus::Point(x) => vec![x.clone()],
        EdgeLocus::Line(_) => p.sample_edge(e, samples.clamp(2, 8)),
    }
}

pub fn validate_pairing<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, samples: usize) -> PairingReport<T> {
    let tol = p.tol;
    let mut issues = Vec::new();
    let mut inverse_defect = T::zero();
    let mut face_offset = T::zero();
    let mut edge_images = BTreeMap::new();
    let id = |f: FaceIx| p.faces[f].id.clone();
    for s in 0..p.faces.len() {
        let sb = fp.partner[s];
        if fp.partner[sb] != s {
            issues.push(PairingIssue::NotInvolutive { face: id(s), partner: id(sb) });
            continue;
        }
        let dev = fp.iso[sb].compose(&fp.iso[s]).identity_deviation() / (fp.iso[sb].magnitude() * fp.iso[s].magnitude());
        inverse_defect = inverse_defect.max(dev);
        if dev >= tol.iso {
            issues.push(PairingIssue::InverseDefect { face: id(s), deviation: dev });
        }
        let mut worst: Option<(Point<T>, T)> = None;
        for x in p.sample_face(s, samples) {
            let y = fp.iso[s].apply(&x);
            let off = p.faces[sb].carrier.signed_distance(&p.space, &y).abs().max(-p.bound_margin(sb, &y));
            face_offset = face_offset.max(off);
            if off > scaled_tol(tol.mem, &y) && worst.as_ref().is_none_or(|w| off > w.1) {
                worst = Some((y, off));
            }
        }
        if let Some((point, offset)) = worst {
            issues.push(PairingIssue::OffFace { face: id(s), image_face: id(sb), point, offset });
        }
        for &e in &p.faces[s].edges {
            let images: Vec<Point<T>> = edge_probe_points(p, e, samples).iter().map(|x| fp.iso[s].apply(x)).collect();
            let matches = |c: EdgeIx| images.iter().all(|y| p.edge_distance(c, y) <= scaled_tol(tol.mem, y));
            match p.faces[sb].edges.iter().copied().find(|&c| matches(c)) {
                Some(c) => {
                    edge_images.insert((s, e), c);
                }
                None => match (0..p.edges.len()).find(|&c| matches(c)) {
                    Some(c) => issues.push(PairingIssue::IncidenceMismatch {
                        face: id(s),
                        edge: p.edges[e].id.clone(),
                        matched: p.edges[c].id.clone(),
                    }),
                    None => issues.push(PairingIssue::UnmatchedEdge { face: id(s), edge: p.edges[e].id.clone() }),
                },
            }
        }
    }
    PairingReport { ok: issues.is_empty(), inverse_defect, face_offset, issues, edge_images }
}
