//! Semi-device-independent randomness certification for qubit
//! prepare-and-measure protocols.
//!
//! The crate is organised bottom-up:
//!
//! * [`bloch`]: Bloch-vector states, two-outcome projective measurements and
//!   the behavior `p(b|x,y) = ½(1 + s·t)` they induce.
//! * [`witness`]: linear dimension witnesses, their classical bound (exact
//!   enumeration) and qubit bound (see-saw, plus a brute-force grid oracle).
//! * [`entropy`]: min-entropy, the `p_lb` guessing bound, the cosine-sum
//!   minimum over an octant and the R₄,₃ witness-to-entropy curve.
//! * [`protocol`]: concrete strategies, Monte Carlo round simulation and
//!   finite-statistics certification.
//! * [`extract`]: Toeplitz hashing of the raw generation bits.
//! * [`verify`]: numerical self-checks bundled for the `verify` command.
//! * [`cli`]: the command-line front end.

pub mod bloch;
pub mod cli;
pub mod entropy;
mod error;
pub mod extract;
pub mod fmt;
pub mod protocol;
pub mod rng;
pub mod verify;
pub mod witness;

pub use bloch::{BehaviorTable, BlochVector, Outcome, Strategy};
pub use entropy::CurvePoint;
pub use error::{Error, Result};
pub use protocol::{CertificationResult, ProtocolSpec, RoundLog};
pub use witness::{BoundResult, DeterministicStrategy, WitnessSpec};
