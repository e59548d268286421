//! Jones polynomials of closed 3-braids.
//!
//! Three evaluators share one braid-word front end:
//!
//! * [`tl3::jones_exact`] works in the Temperley-Lieb algebra TL3 over
//!   Z[A, A⁻¹] and returns the exact Laurent polynomial in `A` (`t = A⁻⁴`),
//!   cross-checked by the brute-force [`tl3::bracket_state_sum`].
//! * [`rep2::classical_3sb`] evaluates `V(e^{iφ})` for `|φ| ≤ 2π/3` as the
//!   trace of a product of 2x2 unitaries plus a writhe-only correction.
//! * [`hadamard::quantum_3sb`] estimates that trace with simulated
//!   Hadamard-test shots and reports the sampled value with its tallies.
//!
//! [`cli`] wires them to the `jones3` binary.

pub mod braid;
pub mod cli;
pub mod hadamard;
pub mod laurent;
pub mod rep2;
pub mod tl3;

pub use braid::{BraidLetter, BraidParseError, BraidWord, Generator};
pub use hadamard::{quantum_3sb, shots_for, BoundMode, HadamardError, ShotPlan, TraceEstimate};
pub use laurent::{LaurentError, LaurentPoly};
pub use rep2::{classical_3sb, compile_gate, make_params, Gate2, RepError, RepParams};
pub use tl3::{bracket_state_sum, jones_exact, jones_rep, markov_trace, tl_mul, TL3Element};
