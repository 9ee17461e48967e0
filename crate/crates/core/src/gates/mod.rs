//! Gate catalog, Yang-Baxter verifiers, entanglement and CNOT-count
//! classifiers, and the explicit CNOT decompositions.

pub mod catalog;
pub mod cnot;
pub mod decompositions;
pub mod entangle;
pub mod ybe;

pub use cnot::{cnot_count_class, CnotClass, CnotCount};
pub use decompositions::{verify_mrn, verify_qdq, verify_sigma, DecompositionReport};
pub use entangle::{is_entangling, state_is_entangled, EntanglingVerdict};
pub use ybe::{check_ybe_algebraic, check_ybe_braided};
