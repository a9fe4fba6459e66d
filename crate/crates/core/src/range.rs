//! Subset-sum ranges as interval unions, an exhaustive oracle, and the
//! convexity verdict for trace ranges.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};
use crate::representability::{kakeya_check, ConditionVerdict};
use crate::sequence::{AlgebraSpec, SequenceModel};

/// Largest number of terms whose subset sums are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DepthLimit(usize);

impl DepthLimit {
    pub const DEFAULT: usize = 24;

    pub fn new(limit: usize) -> Self {
        DepthLimit(limit)
    }

    pub fn get(self) -> usize {
        self.0
    }

    fn check(self, len: usize) -> Result<()> {
        if len > self.0 {
            return Err(Error::TooManyTerms { len, limit: self.0 });
        }
        Ok(())
    }
}

impl Default for DepthLimit {
    fn default() -> Self {
        DepthLimit(Self::DEFAULT)
    }
}

/// All subset sums of `terms`, ascending and without duplicates.
///
/// Built by merging `S` with `S + a` one term at a time, so coinciding sums
/// collapse as they appear.
///
/// ```
/// use tracerange::{range::{subset_sums, DepthLimit}, Rational};
///
/// let quarter = Rational::new(1, 4).unwrap();
/// let sums = subset_sums(&[quarter.clone(), quarter.clone(), quarter], DepthLimit::default()).unwrap();
/// let shown: Vec<String> = sums.iter().map(|s| s.to_string()).collect();
/// assert_eq!(shown, ["0/1", "1/4", "1/2", "3/4"]);
/// ```
pub fn subset_sums(terms: &[Rational], limit: DepthLimit) -> Result<Vec<Rational>> {
    limit.check(terms.len())?;
    let mut sums = vec![Rational::zero()];
    for a in terms {
        let shifted: Vec<Rational> = sums.iter().map(|s| s + a).collect();
        sums = merge_dedup(sums, shifted);
    }
    Ok(sums)
}

fn merge_dedup(left: Vec<Rational>, right: Vec<Rational>) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(left.len() + right.len());
    let mut left = left.into_iter().peekable();
    let mut right = right.into_iter().peekable();
    loop {
        let next = match (left.peek(), right.peek()) {
            (Some(l), Some(r)) if l <= r => left.next(),
            (Some(_), Some(_)) => right.next(),
            (Some(_), None) => left.next(),
            (None, Some(_)) => right.next(),
            (None, None) => break,
        };
        let next = next.expect("peeked");
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

/// A depth-`N` outer approximation of the set of subset sums.
///
/// `union` is `⋃ [s, s + Σ_{k>N} a_k]` over the subset sums `s` of the first
/// `N` terms. It always contains every subset sum, and `exact` records
/// whether the terms after `N` satisfy the completeness condition, in which
/// case every point of every interval is reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeApproximation {
    depth: usize,
    exact: bool,
    #[serde(rename = "intervals")]
    union: IntervalUnion,
}

impl RangeApproximation {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    pub fn union(&self) -> &IntervalUnion {
        &self.union
    }
}

/// Outer approximation of the subset sums of `m` at depth `depth`.
///
/// ```
/// use tracerange::{range::{achievable_outer, DepthLimit}, Rational, SequenceModel};
///
/// let q = |n, d| Rational::new(n, d).unwrap();
/// let cantor = SequenceModel::geometric(q(2, 3), q(1, 3)).unwrap();
/// let approx = achievable_outer(&cantor, 2, DepthLimit::default()).unwrap();
/// assert!(!approx.exact());
/// assert_eq!(approx.union().len(), 4);
/// ```
pub fn achievable_outer(m: &SequenceModel, depth: usize, limit: DepthLimit) -> Result<RangeApproximation> {
    let used = m.support_len().map_or(depth, |len| len.min(depth));
    limit.check(used)?;
    let width = m.tail_sum(depth);
    let sums = subset_sums(&m.leading_terms(used), limit)?;
    let union = IntervalUnion::from_intervals(sums.into_iter().map(|s| {
        let hi = &s + &width;
        Interval::new(s, hi).expect("tail sums are non-negative")
    }));
    Ok(RangeApproximation {
        depth,
        exact: kakeya_check(&m.drop_front(depth)).holds(),
        union,
    })
}

/// Whether `r` is a subset sum of `terms`, by meet-in-the-middle.
///
/// Shares no code with [`subset_sums`] or the greedy expansion so it can
/// serve as an independent check on both.
pub fn brute_force_representable(terms: &[Rational], r: &Rational, limit: DepthLimit) -> Result<bool> {
    Ok(MeetInTheMiddle::new(terms, limit)?.contains(r))
}

/// [`brute_force_representable`] prepared once for many queries.
///
/// Sums are kept as integers over the common denominator of the terms, so a
/// query costs integer subtractions rather than fraction reductions.
#[derive(Clone, Debug)]
pub struct MeetInTheMiddle {
    scale: BigInt,
    left: Vec<BigInt>,
    right: Vec<BigInt>,
}

impl MeetInTheMiddle {
    pub fn new(terms: &[Rational], limit: DepthLimit) -> Result<Self> {
        limit.check(terms.len())?;
        let scale = terms.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let scaled: Vec<BigInt> = terms.iter().map(|a| a.numer() * (&scale / a.denom())).collect();
        let (left, right) = scaled.split_at(scaled.len() / 2);
        let mut right = all_sums(right);
        right.sort_unstable();
        Ok(MeetInTheMiddle {
            scale,
            left: all_sums(left),
            right,
        })
    }

    pub fn contains(&self, r: &Rational) -> bool {
        let scaled = r * &Rational::from_integer(self.scale.clone());
        if !scaled.is_integer() {
            return false;
        }
        let target = scaled.numer();
        self.left.iter().any(|s| self.right.binary_search(&(target - s)).is_ok())
    }
}

fn all_sums(terms: &[BigInt]) -> Vec<BigInt> {
    (0u64..1 << terms.len())
        .map(|mask| {
            terms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a)
                .sum()
        })
        .collect()
}

/// Every subset sum of a short list, each with one bit vector reaching it.
#[derive(Clone, Debug)]
pub struct ExhaustiveOracle {
    len: usize,
    witnesses: HashMap<Rational, u64>,
}

impl ExhaustiveOracle {
    pub fn new(terms: &[Rational], limit: DepthLimit) -> Result<Self> {
        limit.check(terms.len())?;
        let mut witnesses = HashMap::new();
        for mask in 0u64..1 << terms.len() {
            let sum: Rational = terms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a)
                .sum();
            witnesses.entry(sum).or_insert(mask);
        }
        Ok(ExhaustiveOracle {
            len: terms.len(),
            witnesses,
        })
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.witnesses.contains_key(r)
    }

    /// Bits `ε_1..ε_len` with `Σ ε_n a_n = r`, if any exist.
    pub fn witness(&self, r: &Rational) -> Option<Vec<u8>> {
        let mask = *self.witnesses.get(r)?;
        Some((0..self.len).map(|i| (mask >> i & 1) as u8).collect())
    }

    /// The distinct sums, ascending.
    pub fn sums(&self) -> Vec<Rational> {
        let mut sums: Vec<Rational> = self.witnesses.keys().cloned().collect();
        sums.sort_unstable();
        sums
    }
}

/// Whether the trace range of an algebra is convex, with the completeness
/// verdict on its atom traces as certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityVerdict {
    convex: bool,
    certificate: ConditionVerdict,
}

impl ConvexityVerdict {
    pub fn convex(&self) -> bool {
        self.convex
    }

    pub fn certificate(&self) -> &ConditionVerdict {
        &self.certificate
    }
}

/// The trace range is convex exactly when the descending atom traces satisfy
/// the completeness condition.
///
/// ```
/// use tracerange::{range::convexity_verdict, AlgebraSpec, Factor, Rational};
///
/// let third = AlgebraSpec::new(vec![Factor { dim: 3, weight: Rational::one() }], None).unwrap();
/// let verdict = convexity_verdict(&third).unwrap();
/// assert!(!verdict.convex());
/// assert_eq!(verdict.certificate().first_violation(), Some(3));
/// ```
pub fn convexity_verdict(spec: &AlgebraSpec) -> Result<ConvexityVerdict> {
    let certificate = kakeya_check(&spec.atom_traces()?);
    Ok(ConvexityVerdict {
        convex: certificate.holds(),
        certificate,
    })
}
