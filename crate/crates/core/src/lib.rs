//! Verification of face-pairings of cornerless polyhedra in E^2, E^3, H^2 and
//! H^3, and empirical development of the tessellation they induce.
//!
//! The engine is generic over the scalar type (see [`Real`]); the aliases at
//! the crate root fix it to `f64`, which is what the command-line tool uses.

pub mod config;
pub mod develop;
pub mod document;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod pairing;
pub mod polyhedron;
pub mod sampling;
pub mod scalar;
pub mod verify;

pub use config::{Config, CycleMode, Tolerances};
pub use geometry::{Frame, Hyperplane, Isometry, Kind, ModelSpace, Point, Tangent};
pub use scalar::Real;

pub type Point64 = geometry::Point<f64>;
pub type Isometry64 = geometry::Isometry<f64>;
pub type Hyperplane64 = geometry::Hyperplane<f64>;
pub type Polyhedron64 = polyhedron::Polyhedron<f64>;
pub type FacePairing64 = pairing::FacePairing<f64>;
pub type Config64 = config::Config<f64>;
pub type VerificationReport64 = verify::VerificationReport<f64>;
