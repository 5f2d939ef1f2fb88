//! Integer machinery behind the protocol: factor plans of the qudit
//! dimension, the derived radix ladder, per-sender phase sets, and
//! mixed-radix compose/decompose.
//!
//! A [`FactorPlan`] decomposes the dimension `d` into positive factors
//! `p_1 ⋯ p_N = δ ≤ d` and assigns sender `k` the step `q_k = p_{k+1} ⋯ p_N`
//! (with `q_N = 1`). Sender `k` may then only use phase indices from
//! `S_k = { μ·q_k : 0 ≤ μ < p_k }`, which makes the joint sum
//! `n = n_1 + … + n_N` a mixed-radix representation: every `n` in `[0, δ)`
//! arises from exactly one choice of `(n_1, …, n_N)`, and no sum ever
//! reaches `d`, so recovery never has to undo a modular wraparound.

use std::fmt;

use crate::error::{Error, Result};

/// Qudit dimension, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Addition modulo `d` on residues `0..d`.
pub fn add_mod(d: Dimension, a: usize, b: usize) -> Result<usize> {
    let d = d.get();
    for value in [a, b] {
        if value >= d {
            return Err(Error::ResidueOutOfRange { value, d });
        }
    }
    Ok((a + b) % d)
}

/// A decomposition `δ = p_1 ⋯ p_N ≤ d` together with the derived radix
/// ladder `q_k`. Governs sender sets and channel capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPlan {
    d: Dimension,
    factors: Vec<usize>,
    ladder: Vec<usize>,
    delta: usize,
}

impl FactorPlan {
    /// Builds a plan from ordered factors. Rejects factors below 1 and
    /// products above `d`.
    pub fn new(d: Dimension, factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        for (idx, &p) in factors.iter().enumerate() {
            if p < 1 {
                return Err(Error::InvalidFactor {
                    index: idx + 1,
                    value: p,
                });
            }
        }
        let delta = factors.iter().product::<usize>();
        if delta > d.get() {
            return Err(Error::DeltaExceedsDimension { delta, d: d.get() });
        }
        // q_N = 1, q_k = p_{k+1} * q_{k+1}
        let n = factors.len();
        let mut ladder = vec![1usize; n];
        for k in (0..n - 1).rev() {
            ladder[k] = factors[k + 1] * ladder[k + 1];
        }
        Ok(Self {
            d,
            factors: factors.to_vec(),
            ladder,
            delta,
        })
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// The ordered factors `p_1 … p_N`.
    #[inline]
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// The radix ladder `q_1 … q_N`.
    #[inline]
    pub fn ladder(&self) -> &[usize] {
        &self.ladder
    }

    /// The factor product `δ`.
    #[inline]
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of senders `N`.
    #[inline]
    pub fn num_senders(&self) -> usize {
        self.factors.len()
    }

    /// Number of nontrivial senders, i.e. factors greater than 1.
    pub fn num_nontrivial(&self) -> usize {
        self.factors.iter().filter(|&&p| p > 1).count()
    }

    /// True when every unit factor comes after every nontrivial factor.
    pub fn trivial_factors_trailing(&self) -> bool {
        let n_nontrivial = self.num_nontrivial();
        self.factors[..n_nontrivial].iter().all(|&p| p > 1)
    }

    /// The lawful phase set `S_k = { μ·q_k : 0 ≤ μ < p_k }` for sender `k`
    /// (1-based).
    pub fn sender_set(&self, k: usize) -> Result<SenderSet> {
        if k < 1 || k > self.num_senders() {
            return Err(Error::SenderOutOfRange {
                k,
                n_senders: self.num_senders(),
            });
        }
        let q = self.ladder[k - 1];
        let members = (0..self.factors[k - 1]).map(|mu| mu * q).collect();
        Ok(SenderSet { k, members })
    }

    /// Evaluates `n = Σ μ_k·q_k` for digits valid against this plan. The
    /// result lies in `[0, δ)` and needs no modular reduction.
    pub fn compose(&self, digits: &DigitVector) -> Result<usize> {
        let ds = digits.digits();
        if ds.len() != self.num_senders() {
            return Err(Error::DigitCountMismatch {
                expected: self.num_senders(),
                got: ds.len(),
            });
        }
        let mut n = 0;
        for (k, (&mu, (&p, &q))) in ds
            .iter()
            .zip(self.factors.iter().zip(self.ladder.iter()))
            .enumerate()
        {
            if mu >= p {
                return Err(Error::DigitOutOfRange {
                    k: k + 1,
                    value: mu,
                    radix: p,
                });
            }
            n += mu * q;
        }
        Ok(n)
    }

    /// Recovers the unique digits with `compose(digits) = n` by greedy
    /// most-significant-first division along the ladder.
    pub fn decompose(&self, n: usize) -> Result<DigitVector> {
        if n >= self.delta {
            return Err(Error::JointIndexOutOfRange {
                n,
                delta: self.delta,
            });
        }
        let mut rest = n;
        let digits = self
            .ladder
            .iter()
            .map(|&q| {
                let mu = rest / q;
                rest %= q;
                mu
            })
            .collect();
        Ok(DigitVector::new(digits))
    }
}

impl fmt::Display for FactorPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} factors=[", self.d)?;
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "] delta={}", self.delta)
    }
}

/// Mixed-radix digits `μ_1 … μ_N`, one per sender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector(Vec<usize>);

impl DigitVector {
    pub fn new(digits: Vec<usize>) -> Self {
        Self(digits)
    }

    #[inline]
    pub fn digits(&self) -> &[usize] {
        &self.0
    }
}

/// The sorted lawful phase indices of one sender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenderSet {
    k: usize,
    members: Vec<usize>,
}

impl SenderSet {
    /// 1-based sender index.
    #[inline]
    pub fn sender(&self) -> usize {
        self.k
    }

    /// Members in ascending order.
    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, phase: usize) -> bool {
        self.members.binary_search(&phase).is_ok()
    }
}

/// Enumerates plans with `n_senders` factors whose product is exactly `d`.
///
/// With `canonical` set, returns one plan per multiset of factors (factors
/// sorted non-increasing); otherwise returns every ordered tuple. Rows come
/// out in descending lexicographic order of the factor tuple.
pub fn enumerate_factor_plans(d: Dimension, n_senders: usize, canonical: bool) -> Vec<FactorPlan> {
    let mut tuples = Vec::new();
    gen_exact(d.get(), n_senders, d.get(), canonical, &mut Vec::new(), &mut tuples);
    tuples
        .into_iter()
        .map(|t| FactorPlan::new(d, &t).expect("enumerated tuple is a valid plan"))
        .collect()
}

/// Like [`enumerate_factor_plans`], but also includes plans whose product
/// falls short of `d` (the `δ < d` regime).
pub fn enumerate_factor_plans_up_to(
    d: Dimension,
    n_senders: usize,
    canonical: bool,
) -> Vec<FactorPlan> {
    let mut tuples = Vec::new();
    gen_up_to(d.get(), n_senders, d.get(), canonical, &mut Vec::new(), &mut tuples);
    tuples
        .into_iter()
        .map(|t| FactorPlan::new(d, &t).expect("enumerated tuple is a valid plan"))
        .collect()
}

// Ordered tuples with product exactly `remaining`; iterating candidates
// high-to-low at each slot yields descending lexicographic output.
fn gen_exact(
    remaining: usize,
    slots: usize,
    bound: usize,
    canonical: bool,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if slots == 0 {
        if remaining == 1 {
            out.push(prefix.clone());
        }
        return;
    }
    let top = if canonical { bound.min(remaining) } else { remaining };
    for p in (1..=top).rev() {
        if !remaining.is_multiple_of(p) {
            continue;
        }
        prefix.push(p);
        gen_exact(remaining / p, slots - 1, p, canonical, prefix, out);
        prefix.pop();
    }
}

// Ordered tuples with product at most `budget`.
fn gen_up_to(
    budget: usize,
    slots: usize,
    bound: usize,
    canonical: bool,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if slots == 0 {
        out.push(prefix.clone());
        return;
    }
    let top = if canonical { bound.min(budget) } else { budget };
    for p in (1..=top).rev() {
        prefix.push(p);
        gen_up_to(budget / p, slots - 1, p, canonical, prefix, out);
        prefix.pop();
    }
}
