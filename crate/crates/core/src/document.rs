//! JSON input documents: geometry, polyhedron, pairing and options.
//!
//! Numbers are plain JSON numbers; matrices are row-major arrays of rows.
//! Serialization writes the shortest decimal that round-trips each `f64`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{Config, CycleMode, Tolerances};
use crate::geometry::{GeometryError, Hyperplane, Isometry, Kind, ModelSpace, Point};
use crate::linalg::Mat;
use crate::pairing::{FacePairing, PairingEntry, PairingError};
use crate::polyhedron::{BuildError, BuildInput, Construction, EdgeSpec, Polyhedron};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub geometry: GeometrySpec,
    pub polyhedron: PolyhedronSpec,
    pub pairing: Vec<PairingSpec>,
    #[serde(default, skip_serializing_if = "OptionsSpec::is_empty")]
    pub options: OptionsSpec,
    /// Expected outcomes, asserted by the test suite; ignored by the tool.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub model: Kind,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<HalfspacesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_witness: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonSpec {
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_ids: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_ids: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspacesSpec {
    pub faces: Vec<HalfspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDecl>>,
}

/// `{x : normal · x >= offset}` (Euclidean) or `{x : <x, normal> >= 0}` (hyperbolic).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceSpec {
    pub id: String,
    pub normal: Vec<f64>,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub id: String,
    pub faces: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSpec {
    pub face: String,
    pub partner: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_iso: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_mem: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_ang: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CycleMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
}

impl OptionsSpec {
    pub fn is_empty(&self) -> bool {
        *self == OptionsSpec::default()
    }

    pub fn apply(&self, cfg: &mut Config<f64>) {
        let Config { tol, samples, mode, k_max, window, .. } = cfg;
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut tol.iso, self.tol_iso);
        set(&mut tol.mem, self.tol_mem);
        set(&mut tol.ang, self.tol_ang);
        set(window, self.window);
        *samples = self.samples.unwrap_or(*samples);
        *mode = self.mode.unwrap_or(*mode);
        *k_max = self.k_max.unwrap_or(*k_max);
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed input: {0}")]
    Json(serde_json::Error),
    #[error("invalid input: {0}")]
    Schema(String),
    /// The input is well-formed but its polyhedron violates the structural axioms.
    #[error("{0}")]
    Structure(BuildError),
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        LoadError::Json(e)
    }
}

impl From<PairingError> for LoadError {
    fn from(e: PairingError) -> Self {
        LoadError::Schema(e.to_string())
    }
}

impl From<GeometryError> for LoadError {
    fn from(e: GeometryError) -> Self {
        LoadError::Schema(e.to_string())
    }
}

/// A loaded input: the polyhedron, its pairing and the effective configuration.
#[derive(Debug, Clone)]
pub struct Problem {
    pub polyhedron: Polyhedron<f64>,
    pub pairing: FacePairing<f64>,
    pub config: Config<f64>,
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| x.is_number()) => {
            out.push('[');
            out.push_str(&items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: two-space indentation, arrays of numbers on one line,
    /// numbers in their shortest round-trip form.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("document serializes");
        let mut s = String::new();
        write_value(&mut s, &v, 0);
        s.push('\n');
        s
    }

    pub fn space(&self) -> Result<ModelSpace, LoadError> {
        Ok(ModelSpace::new(self.geometry.model, self.geometry.dim)?)
    }

    /// Configuration from defaults and the document's options.
    pub fn config(&self) -> Config<f64> {
        let mut cfg = Config::default();
        self.options.apply(&mut cfg);
        cfg
    }

    fn point(space: &ModelSpace, c: &[f64], what: &str) -> Result<Point<f64>, LoadError> {
        if c.len() != space.ambient() {
            return Err(LoadError::Schema(format!("{what} has {} coordinates, expected {}", c.len(), space.ambient())));
        }
        Ok(Point::new(c.to_vec()))
    }

    pub fn build_input(&self, tol: &Tolerances<f64>) -> Result<BuildInput<f64>, LoadError> {
        let space = self.space()?;
        let ph = &self.polyhedron;
        let construction = match (&ph.polygon, &ph.halfspaces) {
            (Some(pg), None) => Construction::Polygon {
                vertices: pg
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| Self::point(&space, v, &format!("vertex {i}")))
                    .collect::<Result<_, _>>()?,
                face_ids: pg.face_ids.clone(),
                edge_ids: pg.edge_ids.clone(),
            },
            (None, Some(hs)) => Construction::Halfspaces {
                faces: hs
                    .faces
                    .iter()
                    .map(|f| {
                        if f.normal.len() != space.ambient() {
                            return Err(LoadError::Schema(format!("face {}: normal has {} entries", f.id, f.normal.len())));
                        }
                        Ok((f.id.clone(), Hyperplane::new(&space, f.normal.clone(), f.offset, tol.iso)?))
                    })
                    .collect::<Result<_, _>>()?,
                edges: hs
                    .edges
                    .as_ref()
                    .map(|es| es.iter().map(|e| EdgeSpec { id: e.id.clone(), faces: e.faces.clone() }).collect()),
            },
            _ => return Err(LoadError::Schema("polyhedron needs exactly one of polygon or halfspaces".into())),
        };
        let witness = ph.interior_witness.as_ref().map(|w| Self::point(&space, w, "interior_witness")).transpose()?;
        Ok(BuildInput { construction, witness })
    }

    pub fn pairing_entries(&self, tol: &Tolerances<f64>) -> Result<Vec<PairingEntry<f64>>, LoadError> {
        let space = self.space()?;
        self.pairing
            .iter()
            .map(|p| {
                let m = Mat::from_rows(&p.matrix)
                    .filter(|m| m.dim() == space.ambient())
                    .ok_or_else(|| LoadError::Schema(format!("pairing of face {}: matrix has the wrong shape", p.face)))?;
                let translation = match (space.kind, &p.translation) {
                    (Kind::Euclidean, Some(t)) if t.len() == space.dim => t.clone(),
                    (Kind::Euclidean, None) => vec![0.0; space.dim],
                    (Kind::Hyperbolic, None) => Vec::new(),
                    _ => return Err(LoadError::Schema(format!("pairing of face {}: bad translation", p.face))),
                };
                let iso = Isometry::new(space, m, translation, tol.iso)
                    .map_err(|e| LoadError::Schema(format!("pairing of face {}: {e}", p.face)))?;
                Ok(PairingEntry { face: p.face.clone(), partner: p.partner.clone(), generator: p.generator.clone(), iso })
            })
            .collect()
    }

    /// Builds everything, with `cfg` overriding the document's options.
    pub fn load(&self, cfg: Config<f64>) -> Result<Problem, LoadError> {
        let space = self.space()?;
        let input = self.build_input(&cfg.tol)?;
        let polyhedron = Polyhedron::build(space, input, cfg.tol, cfg.window).map_err(|e| match e {
            BuildError::Invalid(m) => LoadError::Schema(m),
            BuildError::Geometry(g) => LoadError::Schema(g.to_string()),
            other => LoadError::Structure(other),
        })?;
        let entries = self.pairing_entries(&cfg.tol)?;
        let pairing = FacePairing::new(&polyhedron, entries)?;
        Ok(Problem { polyhedron, pairing, config: cfg })
    }
}
