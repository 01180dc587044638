//! Exact reduction of genus-3 one-point intersection numbers for the
//! 3-spin (Boussinesq) hierarchy down to genus-0 correlators.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact rationals and polynomials in the formal symbol `k`.
//! * [`state`]: η-insertion multisets, U-number states, canonical genus-0
//!   correlator keys and linear combinations over them.
//! * [`engine`]: the genus-descent recursion, genus-0 normalization,
//!   memoized reduction and the assembly of the genus-3 correlator.
//! * [`verify`]: regression against the published constants, an
//!   independent concrete-arithmetic oracle, and structural property checks.

pub mod algebra;
pub mod engine;
pub mod error;
pub mod state;
pub mod verify;

pub use algebra::{KPoly, Rational};
pub use engine::{Engine, Mutation, Rules};
pub use error::{Error, Result};
pub use state::{CorrelatorKey, EtaFactor, EtaMultiset, Label, LinComb, UState};
