//! Error types shared across the crate.

use thiserror::Error;

/// Convenience result type used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building plans, states, or running
/// protocol rounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Qudit dimension below 2.
    #[error("qudit dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    /// A factor plan needs at least one factor.
    #[error("a factor plan needs at least one factor")]
    EmptyFactorList,

    /// Factors must be positive integers.
    #[error("factor p_{index} must be a positive integer, got {value}")]
    InvalidFactor { index: usize, value: usize },

    /// The factor product may not exceed the qudit dimension, otherwise
    /// joint phase sums would collide after modular wraparound.
    #[error("factor product {delta} exceeds dimension {d}")]
    DeltaExceedsDimension { delta: usize, d: usize },

    /// 1-based sender index outside `1..=N`.
    #[error("sender index {k} out of range 1..={n_senders}")]
    SenderOutOfRange { k: usize, n_senders: usize },

    /// A mixed-radix digit exceeds its per-position bound.
    #[error("digit {value} at position {k} exceeds its radix bound {radix}")]
    DigitOutOfRange { k: usize, value: usize, radix: usize },

    /// Digit vector length does not match the plan's sender count.
    #[error("digit vector has {got} entries, plan has {expected} senders")]
    DigitCountMismatch { expected: usize, got: usize },

    /// Joint index at or above the plan's delta is unrepresentable.
    #[error("joint index {n} not representable, plan delta is {delta}")]
    JointIndexOutOfRange { n: usize, delta: usize },

    /// A residue must lie in `0..d`.
    #[error("residue {value} out of range for dimension {d}")]
    ResidueOutOfRange { value: usize, d: usize },

    /// A per-particle index list has the wrong length.
    #[error("expected {expected} particle indices, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A state needs at least one particle.
    #[error("a state needs at least one particle")]
    EmptyState,

    /// Two states disagree on the qudit dimension.
    #[error("states have mismatched dimensions: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },

    /// Two states disagree on the particle count.
    #[error("states have mismatched particle counts: {a} vs {b}")]
    ParticleCountMismatch { a: usize, b: usize },

    /// Particle slot outside the state.
    #[error("particle {particle} out of range for a {particles}-particle state")]
    ParticleOutOfRange { particle: usize, particles: usize },

    /// Operator dimension does not match the state dimension.
    #[error("operator dimension {op} does not match state dimension {state}")]
    OperatorDimensionMismatch { op: usize, state: usize },

    /// Raw amplitude data of the wrong length.
    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeCountMismatch { expected: usize, got: usize },

    /// Stored amplitudes must be finite.
    #[error("amplitudes must be finite")]
    NonFiniteAmplitude,

    /// The reduced particle layout requires every unit factor to trail
    /// the nontrivial ones.
    #[error("reduced layout requires unit factors to trail the plan")]
    TrivialFactorsNotTrailing,

    /// A sender picked a phase index outside its lawful set, which would
    /// break unique decodability.
    #[error("sender {sender} chose phase {phase} outside its lawful set")]
    UnlawfulPhase { sender: usize, phase: usize },

    /// Actions must list every sender exactly once, in order.
    #[error("expected the action at slot {slot} to belong to sender {slot}, got sender {got}")]
    ActionOrderMismatch { slot: usize, got: usize },

    /// Wrong number of sender actions.
    #[error("expected {expected} actions, got {got}")]
    ActionCountMismatch { expected: usize, got: usize },

    /// No codeword matched the state with near-unit overlap; the state
    /// lies outside the code.
    #[error("state matches no codeword unambiguously ({over_half} overlaps above 1/2)")]
    DecodeAmbiguous { over_half: usize },

    /// Codebook construction produced a non-orthonormal family. Signals
    /// an implementation defect, not a usage error.
    #[error("codebook failed orthogonality verification, max residual {max_residual:e}")]
    CodebookNotOrthogonal { max_residual: f64 },
}
