use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::RadixWord;
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::representability::{first_violation, ConditionVerdict};
use crate::sequence::{SequenceModel, TailModel};

/// Membership in `K`: positive non-increasing sequences with
/// `a_n ≤ 1 − Σ_{k≤n} a_k` for every `n`.
///
/// The bound is anchored at 1 even when the total is smaller. A total above
/// 1 always fails, since the bound eventually turns negative. A failing
/// verdict carries the interval `(1 − Σ_{k≤n} a_k, a_n)` as its gap.
///
/// ```
/// use tracerange::{extreme::k_membership, Rational, SequenceModel};
///
/// let q = |n, d| Rational::new(n, d).unwrap();
/// assert!(k_membership(&SequenceModel::dyadic()).holds());
/// let v = k_membership(&SequenceModel::finite(vec![q(1, 2), q(1, 3)]).unwrap());
/// assert_eq!(v.first_violation(), Some(2));
/// ```
pub fn k_membership(m: &SequenceModel) -> ConditionVerdict {
    let slack = Rational::one() - m.total();
    ConditionVerdict::from_violation(first_violation(m, &slack))
}

pub(crate) fn require_k(m: &SequenceModel) -> Result<()> {
    match k_membership(m).first_violation() {
        None => Ok(()),
        Some(index) => Err(Error::NotInK { index }),
    }
}

/// The point of `K` with radices `w`, scaled by `scale`: block `j` holds
/// `k_j − 1` copies of `scale/(k_1⋯k_j)`.
///
/// ```
/// use tracerange::{extreme::radix_to_sequence, Rational, RadixWord};
///
/// let w = RadixWord::new(vec![3], vec![2]).unwrap();
/// let m = radix_to_sequence(&w, &Rational::one()).unwrap();
/// let shown: Vec<String> = m.leading_terms(4).iter().map(|a| a.to_string()).collect();
/// assert_eq!(shown, ["1/3", "1/3", "1/6", "1/12"]);
/// ```
pub fn radix_to_sequence(w: &RadixWord, scale: &Rational) -> Result<SequenceModel> {
    SequenceModel::new(Vec::new(), TailModel::radix(scale.clone(), w.clone())?)
}

/// Result of testing a point of `K` for extremality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum ExtremalityReport {
    /// The sequence has the block form given by `word`.
    Extreme { word: RadixWord },
    /// The block form breaks at term `witness_index`.
    NonExtreme { witness_index: usize, reason: String },
    /// Peeling ran `depth` stages without reaching a decision.
    #[serde(rename = "undecided")]
    UndecidedAtDepth { depth: usize },
}

/// Decides whether `m` is an extreme point of `K` by peeling leading blocks.
///
/// Each stage reads the leading run of `ℓ` equal terms, requires its value to
/// be exactly `1/(ℓ+1)`, records the radix `ℓ+1`, drops the run and rescales
/// by `ℓ+1`. A scale-1 radix tail with nothing in front ends the search as
/// extreme. A model that runs out of terms, or still has terms after
/// `max_depth` stages, is undecided.
///
/// ```
/// use tracerange::extreme::{sequence_to_radix, ExtremalityReport};
/// use tracerange::{RadixWord, SequenceModel};
///
/// let report = sequence_to_radix(&SequenceModel::dyadic(), 8).unwrap();
/// assert_eq!(report, ExtremalityReport::Extreme { word: RadixWord::constant(2).unwrap() });
/// ```
pub fn sequence_to_radix(m: &SequenceModel, max_depth: usize) -> Result<ExtremalityReport> {
    require_k(m)?;
    let mut current = m.normalized();
    let mut emitted: Vec<u32> = Vec::new();
    let mut offset = 0usize;
    for stage in 0..=max_depth {
        if current.prefix().is_empty() {
            match current.tail() {
                TailModel::MixedRadixScaled { scale, radices } if *scale == Rational::one() => {
                    let word = radices.prepend_all(&emitted)?.canonical();
                    return Ok(ExtremalityReport::Extreme { word });
                }
                TailModel::Zero => return Ok(ExtremalityReport::UndecidedAtDepth { depth: stage }),
                _ => {}
            }
        }
        if stage == max_depth {
            break;
        }
        let (k, run) = match leading_block(&current) {
            Ok(block) => block,
            Err(mismatch) => {
                return Ok(ExtremalityReport::NonExtreme {
                    witness_index: offset + mismatch.index,
                    reason: mismatch.reason(offset + mismatch.index, &emitted),
                })
            }
        };
        emitted.push(k);
        offset += run;
        current = current
            .drop_front(run)
            .scaled(&Rational::from_integer(BigInt::from(k)))
            .normalized();
    }
    Ok(ExtremalityReport::UndecidedAtDepth { depth: max_depth })
}

pub(crate) struct Mismatch {
    /// 1-based position, relative to the current stage, of the failing term.
    pub(crate) index: usize,
    value: Rational,
    expected: Option<Rational>,
}

impl Mismatch {
    fn reason(&self, global: usize, emitted: &[u32]) -> String {
        let scaled = if emitted.is_empty() {
            String::new()
        } else {
            let list: Vec<String> = emitted.iter().map(u32::to_string).collect();
            format!(" after rescaling by radices ({})", list.join(","))
        };
        match &self.expected {
            None => format!("a_{global} = {}{scaled} is not a unit fraction", self.value),
            Some(e) => format!("a_{global} = {}{scaled} should equal {e}", self.value),
        }
    }
}

/// The radix `k` and run length `k − 1` of the leading block, or the first
/// term that breaks the forced pattern.
pub(crate) fn leading_block(m: &SequenceModel) -> std::result::Result<(u32, usize), Mismatch> {
    let term = |n: usize| m.term(n).unwrap_or_else(|_| Rational::zero());
    let first = term(1);
    let k = first
        .unit_denominator()
        .and_then(BigInt::to_u32)
        .filter(|&k| k >= 2)
        .ok_or_else(|| Mismatch {
            index: 1,
            value: first.clone(),
            expected: None,
        })?;
    let run = k as usize - 1;
    let have = m.leading_run();
    if have >= run {
        return Ok((k, run));
    }
    Err(Mismatch {
        index: have + 1,
        value: term(have + 1),
        expected: Some(first),
    })
}
