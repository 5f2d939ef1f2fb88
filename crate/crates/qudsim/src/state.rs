//! Dense complex state vectors over `M` qudits of dimension `d`.
//!
//! Amplitudes are indexed big-endian: particle 0 is the most significant
//! digit, so the basis ket ∣j₀ j₁ … j_{M−1}⟩ lives at
//! `j₀·d^{M−1} + j₁·d^{M−2} + … + j_{M−1}`. Particle 0 is conventionally
//! the receiver's.
//!
//! States are immutable after construction; every operation returns a
//! fresh value, so concurrent reads are always safe.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::LocalOperator;
use crate::radix::Dimension;

/// A normalized pure state of `particles` qudits, stored as a dense
/// amplitude array of length `d^particles`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d: Dimension,
    particles: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis ket ∣indices\[0\] … indices\[M−1\]⟩.
    pub fn basis(d: Dimension, particles: usize, indices: &[usize]) -> Result<Self> {
        if particles == 0 {
            return Err(Error::EmptyState);
        }
        if indices.len() != particles {
            return Err(Error::LengthMismatch {
                expected: particles,
                got: indices.len(),
            });
        }
        for &j in indices {
            if j >= d.get() {
                return Err(Error::ResidueOutOfRange {
                    value: j,
                    d: d.get(),
                });
            }
        }
        let mut amps = vec![Complex64::ZERO; d.get().pow(particles as u32)];
        amps[encode_index(d.get(), indices)] = Complex64::ONE;
        Ok(Self { d, particles, amps })
    }

    /// The equal superposition (1/√d) Σ_j ∣j j … j⟩ over `particles`
    /// copies — the protocol's entangled resource state.
    pub fn ghz(d: Dimension, particles: usize) -> Result<Self> {
        if particles == 0 {
            return Err(Error::EmptyState);
        }
        let dd = d.get();
        let mut amps = vec![Complex64::ZERO; dd.pow(particles as u32)];
        // ∣j…j⟩ sits at j * (d^{M-1} + d^{M-2} + … + 1)
        let repunit: usize = (0..particles).map(|m| dd.pow(m as u32)).sum();
        let coeff = Complex64::new(1.0 / (dd as f64).sqrt(), 0.0);
        for j in 0..dd {
            amps[j * repunit] = coeff;
        }
        Ok(Self { d, particles, amps })
    }

    /// Builds a state from raw amplitudes. The caller owns normalization;
    /// length and finiteness are checked here.
    pub fn from_amplitudes(d: Dimension, particles: usize, amps: Vec<Complex64>) -> Result<Self> {
        if particles == 0 {
            return Err(Error::EmptyState);
        }
        let expected = d.get().pow(particles as u32);
        if amps.len() != expected {
            return Err(Error::AmplitudeCountMismatch {
                expected,
                got: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        Ok(Self { d, particles, amps })
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    #[inline]
    pub fn particles(&self) -> usize {
        self.particles
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    #[inline]
    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self∣other⟩ = Σ_x conj(self_x)·other_x.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.check_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product; `self`'s particles become the most significant.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                a: self.d.get(),
                b: other.d.get(),
            });
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            d: self.d,
            particles: self.particles + other.particles,
            amps,
        })
    }

    /// Applies `op` to one particle slot, i.e. the state is transformed by
    /// I ⊗ … ⊗ op ⊗ … ⊗ I. Unitary `op`s preserve the norm.
    pub fn apply_local(&self, particle: usize, op: &LocalOperator) -> Result<Self> {
        if particle >= self.particles {
            return Err(Error::ParticleOutOfRange {
                particle,
                particles: self.particles,
            });
        }
        let d = self.d.get();
        if op.dimension() != self.d {
            return Err(Error::OperatorDimensionMismatch {
                op: op.dimension().get(),
                state: d,
            });
        }
        let stride = d.pow((self.particles - 1 - particle) as u32);
        let block = stride * d;
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        let mut column = vec![Complex64::ZERO; d];
        for base in (0..self.amps.len()).step_by(block) {
            for offset in 0..stride {
                for (j, slot) in column.iter_mut().enumerate() {
                    *slot = self.amps[base + offset + j * stride];
                }
                for r in 0..d {
                    let mut acc = Complex64::ZERO;
                    for (c, &amp) in column.iter().enumerate() {
                        acc += op.entry(r, c) * amp;
                    }
                    amps[base + offset + r * stride] = acc;
                }
            }
        }
        Ok(Self {
            d: self.d,
            particles: self.particles,
            amps,
        })
    }

    /// Largest elementwise amplitude difference |self_x − other_x|.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Debug rendering: one `(index string, re, im)` triple per amplitude,
    /// with the index written as a base-`d` digit string (digits above 9
    /// use lowercase letters).
    pub fn labeled_amplitudes(&self) -> Vec<(String, f64, f64)> {
        self.amps
            .iter()
            .enumerate()
            .map(|(index, amp)| (self.index_label(index), amp.re, amp.im))
            .collect()
    }

    fn index_label(&self, index: usize) -> String {
        let d = self.d.get();
        let mut rest = index;
        let mut digits = vec!['0'; self.particles];
        for slot in digits.iter_mut().rev() {
            *slot = std::char::from_digit((rest % d) as u32, 36).expect("digit below 36");
            rest /= d;
        }
        digits.into_iter().collect()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                a: self.d.get(),
                b: other.d.get(),
            });
        }
        if self.particles != other.particles {
            return Err(Error::ParticleCountMismatch {
                a: self.particles,
                b: other.particles,
            });
        }
        Ok(())
    }
}

/// Big-endian basis index of a digit string.
pub(crate) fn encode_index(d: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &j| acc * d + j)
}
