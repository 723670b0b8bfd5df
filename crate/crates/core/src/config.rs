//! Tolerances and run configuration.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    /// Matrix identities (isometry equality, identity tests).
    pub iso: T,
    /// Membership on hypersurfaces and on the hyperboloid.
    pub mem: T,
    /// Angle comparisons, in radians.
    pub ang: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances { iso: T::lit(1e-8), mem: T::lit(1e-9), ang: T::lit(1e-6) }
    }
}

/// How geometric cycles are certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CycleMode {
    /// The k-fold cycle isometry must be the identity.
    #[default]
    Strict,
    /// The k-fold cycle isometry must fix the edge pointwise and the k-fold
    /// total angle must vanish modulo 2π.
    Remark31,
}

impl std::str::FromStr for CycleMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(CycleMode::Strict),
            "remark31" => Ok(CycleMode::Remark31),
            other => Err(format!("unknown cycle mode '{other}' (expected strict or remark31)")),
        }
    }
}

impl std::fmt::Display for CycleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CycleMode::Strict => "strict",
            CycleMode::Remark31 => "remark31",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config<T> {
    pub tol: Tolerances<T>,
    /// Base sample count per locus.
    pub samples: usize,
    pub mode: CycleMode,
    /// Largest multiplicity tried when certifying a geometric cycle.
    pub k_max: usize,
    /// Cycle tracing aborts after `n_max_factor * #edges` steps.
    pub n_max_factor: usize,
    /// Arclength window used to sample unbounded loci.
    pub window: T,
}

impl<T: Real> Default for Config<T> {
    fn default() -> Self {
        Config {
            tol: Tolerances::default(),
            samples: 16,
            mode: CycleMode::Strict,
            k_max: 64,
            n_max_factor: 10,
            window: T::lit(6.0),
        }
    }
}
