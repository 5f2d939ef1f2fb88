//! End-to-end superdense coding rounds: codebook construction, encoding
//! via sender actions, deterministic decoding by discrimination against
//! the codebook, per-sender message recovery, and capacity accounting.
//!
//! One round: the N senders and the receiver share the resource state
//! (particle 0 is the receiver's, sender k owns particle k). Each sender
//! applies an encoding unitary U(n_k, i_k) with the phase n_k drawn from
//! its lawful set S_k, then forwards its particle. The receiver projects
//! the joint state onto the codebook; because the joint phase n = Σ n_k is
//! a mixed-radix representation, the per-sender phases fall out of n
//! uniquely, and the shifts are read off the decoded key directly.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ops::{dense_coding_unitary, reduced_target_state, target_state};
use crate::radix::FactorPlan;
use crate::state::StateVector;

/// Absolute tolerance for state-level comparisons, e.g. codebook
/// orthogonality residuals.
pub const STATE_TOL: f64 = 1e-9;

/// Minimum squared overlap for a codeword to count as the decoded match.
/// Exact-arithmetic overlaps are 0 or 1, so this only absorbs float noise.
pub const DECODE_MIN_SQ_OVERLAP: f64 = 1.0 - 1e-6;

/// A second codeword overlapping above this guard makes the round
/// ambiguous.
pub const DECODE_AMBIGUITY_GUARD: f64 = 0.5;

/// Which particle layout a round uses.
///
/// `Full` entangles all N+1 particles. `Reduced` entangles only the
/// receiver with the nontrivial senders and hands every trivial sender a
/// product-state particle; both layouts carry the same messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodebookMode {
    Full,
    Reduced,
}

impl fmt::Display for CodebookMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodebookMode::Full => write!(f, "full"),
            CodebookMode::Reduced => write!(f, "reduced"),
        }
    }
}

/// One sender's move: sender `k` (1-based) applies U(phase, shift) to its
/// particle. Lawful rounds draw `phase` from the sender's set S_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SenderAction {
    pub sender: usize,
    pub phase: usize,
    pub shift: usize,
}

/// A decoded codeword key: the joint phase index and the per-sender
/// shifts, in sender order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JointMessage {
    pub phase: usize,
    pub shifts: Vec<usize>,
}

/// Per-sender and total channel capacities in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    /// log₂(p_k · d) for each sender.
    pub per_sender_bits: Vec<f64>,
    /// log₂(δ · d^N).
    pub total_bits: f64,
}

/// The family of mutually orthogonal signal states for one plan and
/// layout, keyed by `(phase, shifts)`. The receiver's measurement basis.
#[derive(Debug, Clone)]
pub struct Codebook {
    plan: FactorPlan,
    mode: CodebookMode,
    states: BTreeMap<JointMessage, StateVector>,
}

/// The record of one protocol round.
#[derive(Debug, Clone)]
pub struct Transcript {
    pub plan: FactorPlan,
    pub mode: CodebookMode,
    pub actions: Vec<SenderAction>,
    pub final_state: StateVector,
    pub decoded: JointMessage,
    pub recovered: Vec<SenderAction>,
    pub capacity: CapacityReport,
}

impl Transcript {
    /// True when the recovered actions equal the inputs — the case for
    /// every lawful round.
    pub fn is_faithful(&self) -> bool {
        self.actions == self.recovered
    }
}

/// Outcome counts of an exhaustive sweep over all lawful action tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub rounds: usize,
    pub failures: usize,
}

// Sender order with every trivial factor moved behind the nontrivial
// ones, preserving relative order. Sender sets are unchanged under this
// permutation, so phases keep their meaning.
fn reduced_sender_order(plan: &FactorPlan) -> Vec<usize> {
    let nontrivial = (1..=plan.num_senders()).filter(|&k| plan.factors()[k - 1] > 1);
    let trivial = (1..=plan.num_senders()).filter(|&k| plan.factors()[k - 1] == 1);
    nontrivial.chain(trivial).collect()
}

fn reordered_plan(plan: &FactorPlan) -> FactorPlan {
    let factors: Vec<usize> = reduced_sender_order(plan)
        .into_iter()
        .map(|k| plan.factors()[k - 1])
        .collect();
    FactorPlan::new(plan.dimension(), &factors).expect("permuted factors stay valid")
}

/// The shared resource state for a plan and layout, before any encoding.
pub fn initial_state(plan: &FactorPlan, mode: CodebookMode) -> StateVector {
    let d = plan.dimension();
    let n_senders = plan.num_senders();
    match mode {
        CodebookMode::Full => {
            StateVector::ghz(d, n_senders + 1).expect("at least one particle")
        }
        CodebookMode::Reduced => {
            let n_entangled = plan.num_nontrivial();
            let core = StateVector::ghz(d, n_entangled + 1).expect("at least one particle");
            if n_entangled == n_senders {
                core
            } else {
                let tail_len = n_senders - n_entangled;
                let tail = StateVector::basis(d, tail_len, &vec![0; tail_len])
                    .expect("zero ket within range");
                core.tensor(&tail).expect("same dimension")
            }
        }
    }
}

fn validate_actions(plan: &FactorPlan, actions: &[SenderAction]) -> Result<()> {
    let n_senders = plan.num_senders();
    if actions.len() != n_senders {
        return Err(Error::ActionCountMismatch {
            expected: n_senders,
            got: actions.len(),
        });
    }
    let d = plan.dimension().get();
    for (slot, action) in actions.iter().enumerate() {
        if action.sender != slot + 1 {
            return Err(Error::ActionOrderMismatch {
                slot: slot + 1,
                got: action.sender,
            });
        }
        if action.shift >= d {
            return Err(Error::ResidueOutOfRange {
                value: action.shift,
                d,
            });
        }
        if !plan.sender_set(action.sender)?.contains(action.phase) {
            return Err(Error::UnlawfulPhase {
                sender: action.sender,
                phase: action.phase,
            });
        }
    }
    Ok(())
}

/// Applies every sender's encoding unitary to the resource state. The
/// receiver's particle is left untouched. Rejects phases outside the
/// sender sets — those rounds would not decode uniquely.
pub fn encode(
    plan: &FactorPlan,
    mode: CodebookMode,
    actions: &[SenderAction],
) -> Result<StateVector> {
    validate_actions(plan, actions)?;
    let d = plan.dimension();
    let mut state = initial_state(plan, mode);
    // particle slot per sender: identity in full mode, trivial-to-back in
    // reduced mode
    let order = match mode {
        CodebookMode::Full => (1..=plan.num_senders()).collect::<Vec<_>>(),
        CodebookMode::Reduced => reduced_sender_order(plan),
    };
    for (slot_minus_1, &k) in order.iter().enumerate() {
        let action = actions[k - 1];
        let op = dense_coding_unitary(d, action.phase, action.shift)?;
        state = state.apply_local(slot_minus_1 + 1, &op)?;
    }
    Ok(state)
}

// Cartesian product over per-position choice lists, in lexicographic
// order of the index tuples.
fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for set in choices {
        out = out
            .iter()
            .flat_map(|prefix| {
                set.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

impl Codebook {
    #[inline]
    pub fn plan(&self) -> &FactorPlan {
        &self.plan
    }

    #[inline]
    pub fn mode(&self) -> CodebookMode {
        self.mode
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.states.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, key: &JointMessage) -> Option<&StateVector> {
        self.states.get(key)
    }

    /// Codewords in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&JointMessage, &StateVector)> {
        self.states.iter()
    }

    /// Largest deviation of the Gram matrix from the identity. Pairs are
    /// evaluated concurrently; states are immutable so this is safe.
    pub fn max_gram_residual(&self) -> f64 {
        let states: Vec<&StateVector> = self.states.values().collect();
        (0..states.len())
            .into_par_iter()
            .map(|r| {
                let mut worst = 0.0f64;
                for c in r..states.len() {
                    let g = states[r]
                        .inner_product(states[c])
                        .expect("codewords share one shape");
                    let target = if r == c { 1.0 } else { 0.0 };
                    worst = worst.max((g - target).norm());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Identifies the unique codeword the state equals, as the key whose
    /// squared overlap clears [`DECODE_MIN_SQ_OVERLAP`]. Deterministic:
    /// codewords are scanned in key order. States outside the code — which
    /// lawful rounds never produce — yield [`Error::DecodeAmbiguous`].
    pub fn decode(&self, state: &StateVector) -> Result<JointMessage> {
        let expected_particles = self.plan.num_senders() + 1;
        if state.dimension() != self.plan.dimension() {
            return Err(Error::DimensionMismatch {
                a: self.plan.dimension().get(),
                b: state.dimension().get(),
            });
        }
        if state.particles() != expected_particles {
            return Err(Error::ParticleCountMismatch {
                a: expected_particles,
                b: state.particles(),
            });
        }
        let mut matched: Option<&JointMessage> = None;
        let mut over_half = 0usize;
        for (key, codeword) in &self.states {
            let overlap = codeword
                .inner_product(state)
                .expect("shape checked above")
                .norm_sqr();
            if overlap > DECODE_AMBIGUITY_GUARD {
                over_half += 1;
            }
            if overlap >= DECODE_MIN_SQ_OVERLAP && matched.is_none() {
                matched = Some(key);
            }
        }
        match (matched, over_half) {
            (Some(key), n) if n <= 1 => Ok(key.clone()),
            (_, n) => Err(Error::DecodeAmbiguous { over_half: n }),
        }
    }
}

/// Builds the codebook for a plan and layout: one state per joint phase
/// `n < δ` and shift tuple in `[0,d)^N`. With `verify` set, the Gram
/// matrix is checked against the identity at [`STATE_TOL`]; a failure
/// signals an implementation defect.
pub fn build_codebook(plan: &FactorPlan, mode: CodebookMode, verify: bool) -> Result<Codebook> {
    let d = plan.dimension().get();
    let n_senders = plan.num_senders();
    let order = reduced_sender_order(plan);
    let plan_reduced = reordered_plan(plan);

    let shift_choices = vec![(0..d).collect::<Vec<usize>>(); n_senders];
    let shift_tuples = cartesian(&shift_choices);
    let mut states = BTreeMap::new();
    for phase in 0..plan.delta() {
        for shifts in &shift_tuples {
            let state = match mode {
                CodebookMode::Full => {
                    target_state(plan.dimension(), n_senders, phase, shifts)?
                }
                CodebookMode::Reduced => {
                    let permuted: Vec<usize> =
                        order.iter().map(|&k| shifts[k - 1]).collect();
                    reduced_target_state(&plan_reduced, phase, &permuted)?
                }
            };
            states.insert(
                JointMessage {
                    phase,
                    shifts: shifts.clone(),
                },
                state,
            );
        }
    }
    let codebook = Codebook {
        plan: plan.clone(),
        mode,
        states,
    };
    if verify {
        let max_residual = codebook.max_gram_residual();
        if max_residual > STATE_TOL {
            return Err(Error::CodebookNotOrthogonal { max_residual });
        }
    }
    Ok(codebook)
}

/// Splits a joint phase index into the per-sender contributions
/// `n_k = μ_k·q_k`; they sum to `n` and each lies in its sender set.
pub fn recover_sender_phases(plan: &FactorPlan, n: usize) -> Result<Vec<usize>> {
    let digits = plan.decompose(n)?;
    Ok(digits
        .digits()
        .iter()
        .zip(plan.ladder())
        .map(|(&mu, &q)| mu * q)
        .collect())
}

/// The channel capacities a plan affords: sender k transmits
/// log₂(p_k·d) bits, and all senders together log₂(δ·d^N).
pub fn capacity(plan: &FactorPlan) -> CapacityReport {
    let d = plan.dimension().get();
    let per_sender_bits: Vec<f64> = plan
        .factors()
        .iter()
        .map(|&p| ((p * d) as f64).log2())
        .collect();
    let joint = plan.delta() as u128 * (d as u128).pow(plan.num_senders() as u32);
    CapacityReport {
        per_sender_bits,
        total_bits: (joint as f64).log2(),
    }
}

/// Runs one full round — encode, discriminate, recover — and returns the
/// transcript.
pub fn run_roundtrip(
    plan: &FactorPlan,
    mode: CodebookMode,
    actions: &[SenderAction],
) -> Result<Transcript> {
    let final_state = encode(plan, mode, actions)?;
    let codebook = build_codebook(plan, mode, false)?;
    let decoded = codebook.decode(&final_state)?;
    let phases = recover_sender_phases(plan, decoded.phase)?;
    let recovered = phases
        .into_iter()
        .zip(&decoded.shifts)
        .enumerate()
        .map(|(idx, (phase, &shift))| SenderAction {
            sender: idx + 1,
            phase,
            shift,
        })
        .collect();
    Ok(Transcript {
        plan: plan.clone(),
        mode,
        actions: actions.to_vec(),
        final_state,
        decoded,
        recovered,
        capacity: capacity(plan),
    })
}

/// Every lawful action tuple for a plan, in deterministic order: phases
/// range over each sender set, shifts over all residues.
pub fn lawful_action_tuples(plan: &FactorPlan) -> Result<Vec<Vec<SenderAction>>> {
    let d = plan.dimension().get();
    let mut choices = Vec::new();
    for k in 1..=plan.num_senders() {
        let set = plan.sender_set(k)?;
        let mut per_sender = Vec::with_capacity(set.len() * d);
        for &phase in set.members() {
            for shift in 0..d {
                per_sender.push((phase, shift));
            }
        }
        choices.push(per_sender);
    }
    let mut out = vec![Vec::new()];
    for (k, per_sender) in choices.iter().enumerate() {
        out = out
            .iter()
            .flat_map(|prefix: &Vec<SenderAction>| {
                per_sender.iter().map(move |&(phase, shift)| {
                    let mut next = prefix.clone();
                    next.push(SenderAction {
                        sender: k + 1,
                        phase,
                        shift,
                    });
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Encodes and decodes every lawful action tuple against one shared
/// codebook, counting rounds whose recovery differs from the input.
pub fn sweep_all(plan: &FactorPlan, mode: CodebookMode) -> Result<SweepSummary> {
    let codebook = build_codebook(plan, mode, false)?;
    let mut rounds = 0usize;
    let mut failures = 0usize;
    for actions in lawful_action_tuples(plan)? {
        rounds += 1;
        let state = encode(plan, mode, &actions)?;
        let ok = match codebook.decode(&state) {
            Ok(decoded) => {
                let phases = recover_sender_phases(plan, decoded.phase)?;
                phases
                    .iter()
                    .zip(&decoded.shifts)
                    .zip(&actions)
                    .all(|((&phase, &shift), action)| {
                        phase == action.phase && shift == action.shift
                    })
            }
            Err(_) => false,
        };
        if !ok {
            failures += 1;
        }
    }
    Ok(SweepSummary { rounds, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix::{enumerate_factor_plans_up_to, Dimension};

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn plan(d: usize, factors: &[usize]) -> FactorPlan {
        FactorPlan::new(dim(d), factors).unwrap()
    }

    fn action(sender: usize, phase: usize, shift: usize) -> SenderAction {
        SenderAction { sender, phase, shift }
    }

    #[test]
    fn initial_states() {
        let p = plan(4, &[2, 2]);
        let full = initial_state(&p, CodebookMode::Full);
        assert!(full
            .max_abs_diff(&StateVector::ghz(dim(4), 3).unwrap())
            .unwrap()
            .abs()
            < 1e-12);

        // reduced layout for [4,1]: entangled pair ⊗ ∣0⟩
        let p = plan(4, &[4, 1]);
        let reduced = initial_state(&p, CodebookMode::Reduced);
        let expect = StateVector::ghz(dim(4), 2)
            .unwrap()
            .tensor(&StateVector::basis(dim(4), 1, &[0]).unwrap())
            .unwrap();
        assert!(reduced.max_abs_diff(&expect).unwrap() < 1e-12);

        // no trivial factors: reduced == full
        let p = plan(2, &[2]);
        let reduced = initial_state(&p, CodebookMode::Reduced);
        assert!(reduced
            .max_abs_diff(&StateVector::ghz(dim(2), 2).unwrap())
            .unwrap()
            < 1e-12);
    }

    #[test]
    fn encode_reaches_target_states() {
        // identity actions leave the resource state alone
        let p = plan(4, &[2, 2]);
        let state = encode(&p, CodebookMode::Full, &[action(1, 0, 0), action(2, 0, 0)]).unwrap();
        assert!(state
            .max_abs_diff(&initial_state(&p, CodebookMode::Full))
            .unwrap()
            < 1e-12);

        // phases 2+1 sum to joint phase 3
        let state = encode(&p, CodebookMode::Full, &[action(1, 2, 1), action(2, 1, 3)]).unwrap();
        let expect = target_state(dim(4), 2, 3, &[1, 3]).unwrap();
        assert!(state.max_abs_diff(&expect).unwrap() < 1e-9);

        // Bell case: (∣01⟩ − ∣10⟩)/√2
        let p2 = plan(2, &[2]);
        let state = encode(&p2, CodebookMode::Full, &[action(1, 1, 1)]).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((state.amp(1).re - r).abs() < 1e-12);
        assert!((state.amp(2).re + r).abs() < 1e-12);
    }

    #[test]
    fn encode_rejects_unlawful_rounds() {
        let p = plan(4, &[2, 2]);
        // 1 ∉ S₁ = {0,2}
        assert_eq!(
            encode(&p, CodebookMode::Full, &[action(1, 1, 0), action(2, 0, 0)]),
            Err(Error::UnlawfulPhase { sender: 1, phase: 1 })
        );
        assert_eq!(
            encode(&p, CodebookMode::Full, &[action(1, 0, 0)]),
            Err(Error::ActionCountMismatch { expected: 2, got: 1 })
        );
        assert_eq!(
            encode(&p, CodebookMode::Full, &[action(2, 0, 0), action(1, 0, 0)]),
            Err(Error::ActionOrderMismatch { slot: 1, got: 2 })
        );
        assert_eq!(
            encode(&p, CodebookMode::Full, &[action(1, 0, 4), action(2, 0, 0)]),
            Err(Error::ResidueOutOfRange { value: 4, d: 4 })
        );
    }

    #[test]
    fn codebook_sizes_and_gram() {
        // four Bell states
        let cb = build_codebook(&plan(2, &[2]), CodebookMode::Full, true).unwrap();
        assert_eq!(cb.len(), 4);

        // 27 states, Gram = I₂₇
        let cb = build_codebook(&plan(3, &[3, 1]), CodebookMode::Full, true).unwrap();
        assert_eq!(cb.len(), 27);
        assert!(cb.max_gram_residual() < 1e-9);

        // delta < d: 4 · 25 = 100 states
        let cb = build_codebook(&plan(5, &[2, 2]), CodebookMode::Full, true).unwrap();
        assert_eq!(cb.len(), 100);
    }

    #[test]
    fn decode_discriminates_codewords() {
        let p = plan(3, &[3, 1]);
        let cb = build_codebook(&p, CodebookMode::Full, false).unwrap();
        for (key, state) in cb.iter() {
            assert_eq!(&cb.decode(state).unwrap(), key);
        }

        // decode of encode
        let state = encode(&p, CodebookMode::Full, &[action(1, 1, 2), action(2, 0, 1)]).unwrap();
        let decoded = cb.decode(&state).unwrap();
        assert_eq!(decoded.phase, 1);
        assert_eq!(decoded.shifts, vec![2, 1]);

        // wrong shape is rejected
        let short = StateVector::ghz(dim(3), 2).unwrap();
        assert!(matches!(
            cb.decode(&short),
            Err(Error::ParticleCountMismatch { .. })
        ));
    }

    #[test]
    fn decode_flags_states_outside_the_code() {
        // delta < d: a joint phase ≥ delta sits outside the codebook
        let p = plan(5, &[2, 2]);
        let cb = build_codebook(&p, CodebookMode::Full, false).unwrap();
        let alien = target_state(dim(5), 2, 4, &[0, 0]).unwrap();
        assert_eq!(cb.decode(&alien), Err(Error::DecodeAmbiguous { over_half: 0 }));
    }

    #[test]
    fn recover_sender_phase_examples() {
        let p = plan(4, &[2, 2]);
        assert_eq!(recover_sender_phases(&p, 3).unwrap(), vec![2, 1]);
        assert_eq!(recover_sender_phases(&p, 0).unwrap(), vec![0, 0]);

        let p = plan(4, &[4, 1]);
        assert_eq!(recover_sender_phases(&p, 2).unwrap(), vec![2, 0]);

        assert!(matches!(
            recover_sender_phases(&p, 4),
            Err(Error::JointIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn roundtrip_examples() {
        let p = plan(4, &[2, 2]);
        let actions = vec![action(1, 2, 1), action(2, 1, 3)];
        let t = run_roundtrip(&p, CodebookMode::Full, &actions).unwrap();
        assert_eq!(t.recovered, actions);
        assert!(t.is_faithful());
        assert_eq!(t.decoded.phase, 3);
        assert_eq!(t.decoded.shifts, vec![1, 3]);

        let zeros = vec![action(1, 0, 0), action(2, 0, 0)];
        let t = run_roundtrip(&p, CodebookMode::Full, &zeros).unwrap();
        assert_eq!(t.recovered, zeros);

        let p2 = plan(2, &[2]);
        let t = run_roundtrip(&p2, CodebookMode::Full, &[action(1, 1, 0)]).unwrap();
        assert_eq!(t.recovered, vec![action(1, 1, 0)]);
    }

    #[test]
    fn capacities_match_worked_examples() {
        let report = capacity(&plan(4, &[4, 1]));
        assert!((report.per_sender_bits[0] - 4.0).abs() < 1e-12);
        assert!((report.per_sender_bits[1] - 2.0).abs() < 1e-12);
        assert!((report.total_bits - 6.0).abs() < 1e-12);

        let report = capacity(&plan(4, &[2, 2]));
        assert!((report.per_sender_bits[0] - 3.0).abs() < 1e-12);
        assert!((report.per_sender_bits[1] - 3.0).abs() < 1e-12);
        assert!((report.total_bits - 6.0).abs() < 1e-12);

        let report = capacity(&plan(5, &[5, 1]));
        assert!((report.per_sender_bits[0] - 25f64.log2()).abs() < 1e-12);
        assert!((report.per_sender_bits[1] - 5f64.log2()).abs() < 1e-12);

        let report = capacity(&plan(5, &[2, 2]));
        assert!((report.per_sender_bits[0] - 10f64.log2()).abs() < 1e-12);
        assert!((report.total_bits - 100f64.log2()).abs() < 1e-12);
        assert!(report.total_bits < 125f64.log2());
    }

    #[test]
    fn capacity_is_additive() {
        for d in 2..=8 {
            for n in 1..=3 {
                for p in enumerate_factor_plans_up_to(dim(d), n, true) {
                    let report = capacity(&p);
                    let sum: f64 = report.per_sender_bits.iter().sum();
                    assert!((report.total_bits - sum).abs() < 1e-12, "{p}");
                    if p.delta() == d {
                        let expect = (n as f64 + 1.0) * (d as f64).log2();
                        assert!((report.total_bits - expect).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn full_and_reduced_modes_recover_identically() {
        for p in [plan(4, &[4, 1]), plan(4, &[2, 2]), plan(6, &[3, 1, 2])] {
            let cb_full = build_codebook(&p, CodebookMode::Full, false).unwrap();
            let cb_reduced = build_codebook(&p, CodebookMode::Reduced, false).unwrap();
            for actions in lawful_action_tuples(&p).unwrap().iter().step_by(7) {
                let full = cb_full
                    .decode(&encode(&p, CodebookMode::Full, actions).unwrap())
                    .unwrap();
                let reduced = cb_reduced
                    .decode(&encode(&p, CodebookMode::Reduced, actions).unwrap())
                    .unwrap();
                assert_eq!(full, reduced);
                let phases = recover_sender_phases(&p, full.phase).unwrap();
                let expect: Vec<usize> = actions.iter().map(|a| a.phase).collect();
                assert_eq!(phases, expect);
            }
        }
    }

    #[test]
    fn unlawful_phase_injected_past_validation_is_caught() {
        // Encode manually with phases outside S_k; decode must either
        // refuse or recover phases that differ from the injected ones.
        let p = plan(4, &[2, 2]);
        let cb = build_codebook(&p, CodebookMode::Full, false).unwrap();
        let d = dim(4);
        let lawful: Vec<Vec<usize>> = (1..=2)
            .map(|k| p.sender_set(k).unwrap().members().to_vec())
            .collect();
        for n1 in 0..4 {
            for n2 in 0..4 {
                if lawful[0].contains(&n1) && lawful[1].contains(&n2) {
                    continue;
                }
                let mut state = initial_state(&p, CodebookMode::Full);
                for (slot, phase) in [(1usize, n1), (2usize, n2)] {
                    let op = dense_coding_unitary(d, phase, 0).unwrap();
                    state = state.apply_local(slot, &op).unwrap();
                }
                match cb.decode(&state) {
                    Err(Error::DecodeAmbiguous { .. }) => {}
                    Err(other) => panic!("unexpected error {other:?}"),
                    Ok(decoded) => {
                        let phases = recover_sender_phases(&p, decoded.phase).unwrap();
                        assert_ne!(
                            phases,
                            vec![n1, n2],
                            "injected ({n1},{n2}) must not be reproduced"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sweep_counts() {
        let summary = sweep_all(&plan(2, &[2]), CodebookMode::Full).unwrap();
        assert_eq!(summary, SweepSummary { rounds: 4, failures: 0 });

        let summary = sweep_all(&plan(4, &[4, 1]), CodebookMode::Full).unwrap();
        assert_eq!(summary, SweepSummary { rounds: 64, failures: 0 });
    }
}
