//! Link invariants of braid closures.

pub mod bracket;
pub mod linking;
pub mod tau;
pub mod tl_oracle;

pub use bracket::{bracket3, tl_rep3, BracketParams};
pub use linking::{linking_state_sum, LinkingSum, LinkingWeights};
pub use tau::{skein_check, tau, tau_equivalent, SkeinReport, TauValue};
pub use tl_oracle::bracket_oracle;
