//! Deciding whether every point of `[0, Σ a_n]` is a subset sum, and the
//! greedy `{0, 1}` expansion that realizes it.
//!
//! The test is the completeness condition `a_n ≤ Σ_{k>n} a_k` for every `n`.
//! When it fails at `n`, no value strictly between `Σ_{k>n} a_k` and `a_n`
//! is a subset sum: any sum using one of `a_1..a_n` is at least `a_n`, and
//! any sum avoiding them is at most the tail.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{OpenInterval, Rational};
use crate::sequence::{SequenceModel, TailModel};

/// Outcome of checking `a_n ≤ bound_n` at every index.
///
/// `gap` holds `(bound_n, a_n)` for the least violating index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionVerdict {
    holds: bool,
    first_violation: Option<usize>,
    gap: Option<OpenInterval>,
}

impl ConditionVerdict {
    pub(crate) fn from_violation(found: Option<Violation>) -> Self {
        match found {
            None => ConditionVerdict {
                holds: true,
                first_violation: None,
                gap: None,
            },
            Some(v) => ConditionVerdict {
                holds: false,
                first_violation: Some(v.index),
                gap: Some(OpenInterval::new(v.bound, v.term).expect("violation means bound < term")),
            },
        }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.first_violation
    }

    pub fn gap(&self) -> Option<&OpenInterval> {
        self.gap.as_ref()
    }
}

pub(crate) struct Violation {
    pub(crate) index: usize,
    pub(crate) term: Rational,
    pub(crate) bound: Rational,
}

/// Least `n` with `a_n > slack + Σ_{k>n} a_k`, decided exactly.
///
/// With `slack ≥ 0` only the prefix and the first tail index need checking:
/// self-complete tails never violate, and for a geometric tail with ratio
/// below 1/2 the excess `a_n − Σ_{k>n} a_k` shrinks with `n`. With negative
/// slack the bound eventually drops below zero, so the scan terminates.
pub(crate) fn first_violation(m: &SequenceModel, slack: &Rational) -> Option<Violation> {
    let mut rest = m.total().clone();
    let mut index = 0usize;
    let check = |a: Rational, rest: &mut Rational, index: &mut usize| {
        *index += 1;
        *rest -= &a;
        let bound = slack + &*rest;
        (a > bound).then_some(Violation {
            index: *index,
            term: a,
            bound,
        })
    };
    for a in m.prefix() {
        if let Some(v) = check(a.clone(), &mut rest, &mut index) {
            return Some(v);
        }
    }
    if matches!(m.tail(), TailModel::Zero) {
        return None;
    }
    let mut tail_terms = m.tail().terms();
    if !slack.is_negative() {
        let a = tail_terms.next().expect("infinite tail");
        return check(a, &mut rest, &mut index);
    }
    tail_terms.find_map(|a| check(a, &mut rest, &mut index))
}

/// Checks `a_n ≤ Σ_{k>n} a_k` for all `n`.
///
/// ```
/// use tracerange::{representability::kakeya_check, Rational, SequenceModel};
///
/// let q = |n, d| Rational::new(n, d).unwrap();
/// assert!(kakeya_check(&SequenceModel::dyadic()).holds());
///
/// let thirds = SequenceModel::geometric(q(2, 3), q(1, 3)).unwrap();
/// let verdict = kakeya_check(&thirds);
/// assert_eq!(verdict.first_violation(), Some(1));
/// assert_eq!(verdict.gap().unwrap().lo(), &q(1, 3));
/// ```
pub fn kakeya_check(m: &SequenceModel) -> ConditionVerdict {
    ConditionVerdict::from_violation(first_violation(m, &Rational::zero()))
}

/// Every violating index `n ≤ depth` (within the support).
pub fn violations(m: &SequenceModel, depth: usize) -> Vec<usize> {
    let mut rest = m.total().clone();
    m.terms()
        .take(depth)
        .enumerate()
        .filter_map(|(i, a)| {
            rest -= &a;
            (a > rest).then_some(i + 1)
        })
        .collect()
}

/// The open interval `(Σ_{k>n} a_k, a_n)` of values with no representation.
pub fn gap_certificate(m: &SequenceModel, n: usize) -> Result<OpenInterval> {
    let a = m.term(n)?;
    let tail = m.tail_sum(n);
    if a <= tail {
        return Err(Error::NotAViolation { index: n });
    }
    OpenInterval::new(tail, a)
}

/// A finite prefix of a greedy `{0, 1}` expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BitExpansion {
    bits: Vec<u8>,
    achieved: Rational,
    residual: Rational,
    residual_bound: Rational,
}

impl BitExpansion {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `Σ ε_n a_n` over the computed bits.
    pub fn achieved(&self) -> &Rational {
        &self.achieved
    }

    /// `r` minus [`achieved`](Self::achieved).
    pub fn residual(&self) -> &Rational {
        &self.residual
    }

    /// `Σ_{k>N} a_k` for the number `N` of computed bits.
    pub fn residual_bound(&self) -> &Rational {
        &self.residual_bound
    }
}

/// Greedy expansion of `r` against `m`, `count` steps deep.
///
/// Step `n` sets `ε_n = 0` when `r − r_{n−1} < a_n` and `ε_n = 1` otherwise,
/// then `r_n = r_{n−1} + ε_n a_n`. Ties take the 1. Finite sequences stop at
/// the end of their support.
///
/// The recurrence runs on any model. When the completeness condition holds
/// and the total is 1, each step also asserts `0 ≤ r − r_n ≤ 1 − Σ_{k≤n} a_k`.
///
/// ```
/// use tracerange::{representability::greedy_expand, Rational, SequenceModel};
///
/// let third = Rational::new(1, 3).unwrap();
/// let e = greedy_expand(&SequenceModel::dyadic(), &third, 4).unwrap();
/// assert_eq!(e.bits(), &[0, 1, 0, 1]);
/// assert_eq!(e.residual().to_string(), "1/48");
/// ```
pub fn greedy_expand(m: &SequenceModel, r: &Rational, count: usize) -> Result<BitExpansion> {
    if r.is_negative() || r > m.total() {
        return Err(Error::OutOfRange {
            value: r.clone(),
            lo: Rational::zero(),
            hi: m.total().clone(),
        });
    }
    let certified = *m.total() == Rational::one() && kakeya_check(m).holds();
    let mut rest = m.total().clone();
    let mut achieved = Rational::zero();
    let mut bits = Vec::with_capacity(count);
    for a in m.terms().take(count) {
        rest -= &a;
        let bit = if r - &achieved < a { 0 } else { 1 };
        if bit == 1 {
            achieved += &a;
        }
        bits.push(bit);
        if certified {
            let residual = r - &achieved;
            assert!(
                !residual.is_negative() && residual <= rest,
                "greedy residual {residual} escaped [0, {rest}] at step {}",
                bits.len()
            );
        }
    }
    Ok(BitExpansion {
        bits,
        residual: r - &achieved,
        achieved,
        residual_bound: rest,
    })
}

/// `|r − Σ ε_n a_n|` over the given bits.
pub fn verify_expansion(m: &SequenceModel, bits: &[u8], r: &Rational) -> Result<Rational> {
    if let Some((i, &b)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
        return Err(Error::InvalidBit { index: i + 1, value: b });
    }
    if let Some(len) = m.support_len() {
        if bits.len() > len {
            return Err(Error::OutOfSupport {
                index: bits.len(),
                len,
            });
        }
    }
    let sum: Rational = m
        .terms()
        .zip(bits)
        .filter(|(_, &b)| b == 1)
        .map(|(a, _)| a)
        .sum();
    Ok((r - sum).abs())
}
