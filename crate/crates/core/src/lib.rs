//! Heckman-Opdam hypergeometric functions for reduced root systems, the
//! class-one Whittaker functions of the quantum Toda lattice, and the
//! scaling limit that carries the first into the second.
//!
//! Everything numerical is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix `f64`, which is what the command-line tool uses.

pub mod assemble;
pub mod cli;
pub mod error;
pub mod factors;
pub mod rootsystem;
pub mod scalar;
pub mod series;
pub mod specfun;

pub use assemble::{hypergeom_f, whittaker_w, Workspace};
pub use error::{Error, Result};
pub use rootsystem::{Family, RootSystem, WeylElement, WeylGroup};

pub use num_complex::Complex64;

pub type Covector64 = rootsystem::Covector<f64>;
pub type ChamberPoint64 = rootsystem::ChamberPoint<f64>;
pub type Multiplicity64 = series::MultiplicityFunction<f64>;
pub type Character64 = series::Character<f64>;
pub type Workspace64 = assemble::Workspace<f64>;
pub type SweepResult64 = assemble::SweepResult<f64>;
