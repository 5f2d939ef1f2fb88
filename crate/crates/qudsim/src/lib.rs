//! Qudit state-vector simulation of symmetric multiparty superdense
//! coding.
//!
//! N senders and one receiver share a maximally entangled resource state
//! of d-dimensional particles. Each sender encodes a message by applying
//! a single generalized Pauli (clock-and-shift) unitary to its own
//! particle and forwarding it; the receiver identifies the joint message
//! in one shot by discriminating among mutually orthogonal signal states.
//!
//! The twist that makes the scheme symmetric is an integer one: a
//! [`FactorPlan`] splits the dimension into per-sender radices
//! `δ = p₁ ⋯ p_N ≤ d` and restricts sender k's phase choices to the set
//! `S_k = { μ·q_k : μ < p_k }` with `q_k = p_{k+1} ⋯ p_N`. Joint phases
//! then form a mixed-radix number system, so the receiver can split the
//! decoded sum back into every sender's individual choice. Sender k
//! transmits log₂(p_k·d) bits; together they transmit log₂(δ·d^N).
//!
//! # Layout
//!
//! - [`radix`] — factor plans, sender sets, mixed-radix compose/decompose
//! - [`state`] — dense complex state vectors with local operator application
//! - [`ops`] — encoding unitaries and direct signal-state construction
//! - [`protocol`] — codebooks, encode/decode rounds, capacity accounting
//!
//! # Example
//!
//! ```
//! use qudsim::{CodebookMode, Dimension, FactorPlan, SenderAction};
//!
//! // two senders share a 4-dimensional resource with the receiver
//! let d = Dimension::new(4)?;
//! let plan = FactorPlan::new(d, &[2, 2])?;
//! assert_eq!(plan.sender_set(1)?.members(), &[0, 2]);
//!
//! let actions = [
//!     SenderAction { sender: 1, phase: 2, shift: 1 },
//!     SenderAction { sender: 2, phase: 1, shift: 3 },
//! ];
//! let transcript = qudsim::protocol::run_roundtrip(&plan, CodebookMode::Full, &actions)?;
//! assert!(transcript.is_faithful());
//! assert_eq!(transcript.decoded.phase, 3); // 2 + 1
//! # Ok::<(), qudsim::Error>(())
//! ```

pub mod error;
pub mod ops;
pub mod protocol;
pub mod radix;
pub mod state;

pub use error::{Error, Result};
pub use ops::{dense_coding_unitary, reduced_target_state, target_state, LocalOperator};
pub use protocol::{
    build_codebook, capacity, encode, initial_state, run_roundtrip, sweep_all, CapacityReport,
    Codebook, CodebookMode, JointMessage, SenderAction, SweepSummary, Transcript,
};
pub use radix::{
    add_mod, enumerate_factor_plans, enumerate_factor_plans_up_to, DigitVector, Dimension,
    FactorPlan, SenderSet,
};
pub use state::StateVector;
