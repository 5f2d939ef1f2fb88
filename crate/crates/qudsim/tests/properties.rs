//! Property-based invariants over random plans, states, and rounds.

use num_complex::Complex64;
use proptest::prelude::*;

use qudsim::protocol::{run_roundtrip, CodebookMode, SenderAction};
use qudsim::radix::{DigitVector, Dimension, FactorPlan};
use qudsim::{dense_coding_unitary, StateVector};

fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

/// A random factor tuple with product at most `d`.
fn arb_plan(max_d: usize, max_senders: usize) -> impl Strategy<Value = FactorPlan> {
    (2..=max_d, 1..=max_senders)
        .prop_flat_map(move |(d, n_senders)| {
            let factors = prop::collection::vec(1..=d, n_senders)
                .prop_filter("product must stay at or below d", move |fs| {
                    fs.iter().product::<usize>() <= d
                });
            (Just(d), factors)
        })
        .prop_map(|(d, factors)| FactorPlan::new(dim(d), &factors).unwrap())
}

/// Random normalized state of `particles` qudits.
fn arb_state(d: usize, particles: usize) -> impl Strategy<Value = StateVector> {
    let len = d.pow(particles as u32);
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_filter_map("norm must not vanish", move |parts| {
            let norm_sqr: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
            if norm_sqr < 1e-6 {
                return None;
            }
            let scale = norm_sqr.sqrt();
            let amps = parts
                .into_iter()
                .map(|(re, im)| Complex64::new(re / scale, im / scale))
                .collect();
            Some(StateVector::from_amplitudes(dim(d), particles, amps).unwrap())
        })
}

proptest! {
    /// Every encoding unitary preserves the squared norm.
    #[test]
    fn unitaries_preserve_norm(
        (d, state, particle, phase, shift) in (2usize..=5, 1usize..=3)
            .prop_flat_map(|(d, particles)| {
                (Just(d), arb_state(d, particles), 0..particles, 0..d, 0..d)
            })
    ) {
        let op = dense_coding_unitary(dim(d), phase, shift).unwrap();
        let mapped = state.apply_local(particle, &op).unwrap();
        prop_assert!((mapped.norm_sqr() - state.norm_sqr()).abs() < 1e-12);
    }

    /// ⟨a⊗b∣c⊗e⟩ = ⟨a∣c⟩·⟨b∣e⟩.
    #[test]
    fn tensor_inner_product_factorizes(
        (a, c, b, e) in (2usize..=4, 1usize..=2, 1usize..=2)
            .prop_flat_map(|(d, m1, m2)| {
                (arb_state(d, m1), arb_state(d, m1), arb_state(d, m2), arb_state(d, m2))
            })
    ) {
        let lhs = a.tensor(&b).unwrap().inner_product(&c.tensor(&e).unwrap()).unwrap();
        let rhs = a.inner_product(&c).unwrap() * b.inner_product(&e).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    /// Local operators on distinct particles commute.
    #[test]
    fn distinct_slots_commute(
        (d, state, r, s, p1, s1, p2, s2) in (2usize..=4, 2usize..=3)
            .prop_flat_map(|(d, particles)| {
                (
                    Just(d),
                    arb_state(d, particles),
                    0..particles,
                    0..particles,
                    0..d, 0..d, 0..d, 0..d,
                )
            })
            .prop_filter("slots must differ", |(_, _, r, s, ..)| r != s)
    ) {
        let op1 = dense_coding_unitary(dim(d), p1, s1).unwrap();
        let op2 = dense_coding_unitary(dim(d), p2, s2).unwrap();
        let fwd = state.apply_local(r, &op1).unwrap().apply_local(s, &op2).unwrap();
        let rev = state.apply_local(s, &op2).unwrap().apply_local(r, &op1).unwrap();
        prop_assert!(fwd.max_abs_diff(&rev).unwrap() < 1e-12);
    }

    /// compose is the left inverse of decompose on every representable
    /// joint index, and decompose the left inverse of compose on every
    /// valid digit vector.
    #[test]
    fn mixed_radix_bijection(
        (plan, n, digits) in arb_plan(12, 4).prop_flat_map(|plan| {
            let delta = plan.delta();
            let digit_ranges: Vec<_> =
                plan.factors().iter().map(|&p| 0..p).collect();
            (Just(plan), 0..delta, digit_ranges)
        })
    ) {
        let round = plan.compose(&plan.decompose(n).unwrap()).unwrap();
        prop_assert_eq!(round, n);

        let vector = DigitVector::new(digits.clone());
        let joint = plan.compose(&vector).unwrap();
        let recovered = plan.decompose(joint).unwrap();
        prop_assert_eq!(recovered.digits(), &digits[..]);
    }

    /// Every lawful round is recovered faithfully, in either layout.
    #[test]
    fn lawful_rounds_recover_faithfully(
        (plan, reduced, actions) in arb_plan(5, 3).prop_flat_map(|plan| {
            let d = plan.dimension().get();
            let per_sender: Vec<_> = (1..=plan.num_senders())
                .map(|k| {
                    let members = plan.sender_set(k).unwrap().members().to_vec();
                    (prop::sample::select(members), 0..d)
                })
                .collect();
            (Just(plan), any::<bool>(), per_sender)
        })
    ) {
        let actions: Vec<SenderAction> = actions
            .into_iter()
            .enumerate()
            .map(|(idx, (phase, shift))| SenderAction { sender: idx + 1, phase, shift })
            .collect();
        let mode = if reduced { CodebookMode::Reduced } else { CodebookMode::Full };
        let transcript = run_roundtrip(&plan, mode, &actions).unwrap();
        prop_assert!(transcript.is_faithful());
        prop_assert_eq!(
            transcript.decoded.phase,
            actions.iter().map(|a| a.phase).sum::<usize>()
        );
    }
}
