//! Irreality of observables, discord-like correlations and the nonlocality
//! measure built from them, for finite-dimensional quantum states.
//!
//! The irreality of an observable `O` on a state `rho` is the entropy gained
//! by an unread projective measurement of `O`. Nonlocality `N(O1, O2 | rho)`
//! is the change in `O1`'s irreality caused by an unread measurement of `O2`
//! on a remote subsystem.

pub mod error;
pub mod linalg;
pub mod measures;
pub mod observables;
pub mod optimize;
pub mod parse;
pub mod report;
pub mod states;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{DensityMatrix, Layout};
pub use measures::Measurement;
pub use observables::{ProjectiveBasis, QubitBasisParam};
