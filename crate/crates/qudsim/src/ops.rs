//! One-qudit encoding unitaries and direct construction of the signal
//! states they produce.
//!
//! The encoding operators form the generalized Pauli (clock-and-shift)
//! family
//!
//! ```text
//! U(n, i) = Σ_j e^(2πi·jn/d) ∣j ⊕ i⟩⟨j∣
//! ```
//!
//! where ⊕ is addition modulo d: `n` powers the clock (a phase gradient
//! along the computational basis) and `i` powers the shift (a cyclic
//! relabeling). Applied by the senders to their halves of the shared
//! resource state, they reach the mutually orthogonal signal family that
//! the receiver discriminates.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::radix::{Dimension, FactorPlan};
use crate::state::{encode_index, StateVector};

/// A d×d complex matrix acting on a single qudit; entry `(r, c)` is
/// ⟨r∣U∣c⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    d: Dimension,
    entries: Vec<Complex64>,
}

impl LocalOperator {
    /// The d×d identity.
    pub fn identity(d: Dimension) -> Self {
        let dd = d.get();
        let mut entries = vec![Complex64::ZERO; dd * dd];
        for j in 0..dd {
            entries[j * dd + j] = Complex64::ONE;
        }
        Self { d, entries }
    }

    /// Builds an operator from row-major entries (length d²). Entries must
    /// be finite; unitarity is not implied — check with [`is_unitary`].
    ///
    /// [`is_unitary`]: LocalOperator::is_unitary
    pub fn from_entries(d: Dimension, entries: Vec<Complex64>) -> Result<Self> {
        let dd = d.get();
        if entries.len() != dd * dd {
            return Err(Error::AmplitudeCountMismatch {
                expected: dd * dd,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        Ok(Self { d, entries })
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.d.get() + col]
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// max |(U†U − I)_{rc}|; zero for an exactly unitary matrix.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.d.get();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                // (U†U)_{rc} = Σ_k conj(U_{kr})·U_{kc}
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.entry(k, r).conj() * self.entry(k, c);
                }
                let target = if r == c { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    /// True iff max |(U†U − I)_{rc}| ≤ tol.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }
}

/// Phase factor e^(2πi·jn/d), with the exponent reduced modulo d first to
/// keep the angle in [0, 2π).
fn unit_phase(d: usize, j: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * ((j * n) % d) as f64 / d as f64)
}

/// The encoding unitary U(n, i) = Σ_j e^(2πi·jn/d) ∣j ⊕ i⟩⟨j∣.
///
/// `phase` is the clock power n and `shift` the cyclic offset i, both in
/// `0..d`. U(0, 0) is the identity.
pub fn dense_coding_unitary(d: Dimension, phase: usize, shift: usize) -> Result<LocalOperator> {
    let dd = d.get();
    for value in [phase, shift] {
        if value >= dd {
            return Err(Error::ResidueOutOfRange { value, d: dd });
        }
    }
    let mut entries = vec![Complex64::ZERO; dd * dd];
    for j in 0..dd {
        let row = (j + shift) % dd;
        entries[row * dd + j] = unit_phase(dd, j, phase);
    }
    Ok(LocalOperator { d, entries })
}

/// The signal state reached from the resource state when the joint phase
/// is `phase` and sender `k` shifted by `shifts[k−1]`:
///
/// ```text
/// (1/√d) Σ_j e^(2πi·j·phase/d) ∣j⟩ ⊗ ∣j ⊕ shifts[0]⟩ ⊗ … ⊗ ∣j ⊕ shifts[N−1]⟩
/// ```
///
/// An (N+1)-particle state with particle 0 the receiver's. Phases follow
/// the construction exactly, so comparisons against encoded states need no
/// global-phase allowance.
pub fn target_state(
    d: Dimension,
    n_senders: usize,
    phase: usize,
    shifts: &[usize],
) -> Result<StateVector> {
    let dd = d.get();
    if phase >= dd {
        return Err(Error::ResidueOutOfRange { value: phase, d: dd });
    }
    if shifts.len() != n_senders {
        return Err(Error::LengthMismatch {
            expected: n_senders,
            got: shifts.len(),
        });
    }
    for &i in shifts {
        if i >= dd {
            return Err(Error::ResidueOutOfRange { value: i, d: dd });
        }
    }
    let particles = n_senders + 1;
    let mut amps = vec![Complex64::ZERO; dd.pow(particles as u32)];
    let scale = 1.0 / (dd as f64).sqrt();
    let mut digits = vec![0usize; particles];
    for j in 0..dd {
        digits[0] = j;
        for (slot, &i) in digits[1..].iter_mut().zip(shifts) {
            *slot = (j + i) % dd;
        }
        amps[encode_index(dd, &digits)] = unit_phase(dd, j, phase) * scale;
    }
    StateVector::from_amplitudes(d, particles, amps)
}

/// The signal state of the reduced layout, where only the N′ nontrivial
/// senders share entanglement with the receiver and the trailing trivial
/// senders hold product-state particles:
///
/// ```text
/// (1/√d) Σ_j e^(2πi·j·phase/d) ∣j⟩∣j ⊕ i₁⟩…∣j ⊕ i_{N′}⟩ ⊗ ∣i_{N′+1}⟩…∣i_N⟩
/// ```
///
/// Requires the plan's unit factors to trail its nontrivial ones; `phase`
/// must lie below the plan's delta.
pub fn reduced_target_state(
    plan: &FactorPlan,
    phase: usize,
    shifts: &[usize],
) -> Result<StateVector> {
    if !plan.trivial_factors_trailing() {
        return Err(Error::TrivialFactorsNotTrailing);
    }
    if phase >= plan.delta() {
        return Err(Error::JointIndexOutOfRange {
            n: phase,
            delta: plan.delta(),
        });
    }
    let d = plan.dimension();
    let dd = d.get();
    let n_senders = plan.num_senders();
    if shifts.len() != n_senders {
        return Err(Error::LengthMismatch {
            expected: n_senders,
            got: shifts.len(),
        });
    }
    for &i in shifts {
        if i >= dd {
            return Err(Error::ResidueOutOfRange { value: i, d: dd });
        }
    }
    let n_entangled = plan.num_nontrivial();
    let particles = n_senders + 1;
    let mut amps = vec![Complex64::ZERO; dd.pow(particles as u32)];
    let scale = 1.0 / (dd as f64).sqrt();
    let mut digits = vec![0usize; particles];
    for (slot, &i) in digits[1 + n_entangled..].iter_mut().zip(&shifts[n_entangled..]) {
        *slot = i;
    }
    for j in 0..dd {
        digits[0] = j;
        for (slot, &i) in digits[1..=n_entangled].iter_mut().zip(&shifts[..n_entangled]) {
            *slot = (j + i) % dd;
        }
        amps[encode_index(dd, &digits)] = unit_phase(dd, j, phase) * scale;
    }
    StateVector::from_amplitudes(d, particles, amps)
}
