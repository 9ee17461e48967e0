//! Braiding operators as quantum gates.
//!
//! Dense complex matrices and Kronecker products ([`tensor`]), braid words
//! ([`braid`]), Yang-Baxter gates and their classifiers ([`gates`]), braid
//! group representations ([`rep`]), link invariants ([`invariants`]) and
//! small state-vector procedures ([`quantum`]).

pub mod braid;
pub mod error;
pub mod exact;
pub mod gates;
pub mod golden;
pub mod invariants;
pub mod par;
pub mod quantum;
pub mod rep;
pub mod tensor;

pub use braid::{parse_braid, BraidWord, ClosureInfo};
pub use error::{Error, Result};
pub use par::Execution;
pub use tensor::{Complex, ComplexMatrix, Tolerance};
