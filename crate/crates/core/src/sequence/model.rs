use num_bigint::BigInt;

use super::tail::{TailModel, TailTerms};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// A positive, non-increasing, summable sequence `a_1 ≥ a_2 ≥ … > 0`: an
/// explicit prefix followed by a closed-form tail.
///
/// Every term, partial sum and tail sum is computed exactly.
///
/// ```
/// use tracerange::{Rational, SequenceModel, TailModel};
///
/// let half = Rational::new(1, 2).unwrap();
/// let dyadic = SequenceModel::new(vec![], TailModel::geometric(half.clone(), half).unwrap()).unwrap();
/// assert_eq!(dyadic.term(3).unwrap().to_string(), "1/8");
/// assert_eq!(dyadic.tail_sum(2).to_string(), "1/4");
/// assert_eq!(dyadic.total().to_string(), "1/1");
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceModel {
    prefix: Vec<Rational>,
    tail: TailModel,
    total: Rational,
}

impl SequenceModel {
    /// Validates and builds a model.
    ///
    /// Rejects non-positive prefix entries, increases inside the prefix, and
    /// a tail whose first term exceeds the last prefix entry.
    pub fn new(prefix: Vec<Rational>, tail: TailModel) -> Result<Self> {
        tail.validate()?;
        for (i, value) in prefix.iter().enumerate() {
            if !value.is_positive() {
                return Err(Error::NonPositiveTerm {
                    index: i + 1,
                    value: value.clone(),
                });
            }
            if i > 0 && prefix[i - 1] < *value {
                return Err(Error::NotNonIncreasing { index: i + 1 });
            }
        }
        if let (Some(last), Some(first)) = (prefix.last(), tail.first_term()) {
            if *last < first {
                return Err(Error::JunctionViolation {
                    last: last.clone(),
                    tail_first: first,
                });
            }
        }
        Ok(Self::assemble(prefix, tail))
    }

    fn assemble(prefix: Vec<Rational>, tail: TailModel) -> Self {
        let total = prefix.iter().sum::<Rational>() + tail.total();
        SequenceModel {
            prefix,
            tail,
            total,
        }
    }

    /// A finite sequence with the given terms.
    pub fn finite(terms: Vec<Rational>) -> Result<Self> {
        Self::new(terms, TailModel::Zero)
    }

    /// A pure geometric sequence `first·ratio^(n−1)`.
    pub fn geometric(first: Rational, ratio: Rational) -> Result<Self> {
        Self::new(Vec::new(), TailModel::geometric(first, ratio)?)
    }

    /// The dyadic sequence `1/2, 1/4, 1/8, …`.
    pub fn dyadic() -> Self {
        let half = Rational::new(1, 2).expect("nonzero");
        Self::geometric(half.clone(), half).expect("valid")
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    /// `Σ a_n`, exactly.
    pub fn total(&self) -> &Rational {
        &self.total
    }

    /// Number of terms, `None` for infinite sequences.
    pub fn support_len(&self) -> Option<usize> {
        self.tail.is_zero().then_some(self.prefix.len())
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_zero()
    }

    /// `a_n`, 1-based. Indices past the end of a finite sequence are reported
    /// as out of support rather than as zero.
    pub fn term(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n <= self.prefix.len() {
            return Ok(self.prefix[n - 1].clone());
        }
        self.tail
            .term(n - self.prefix.len())
            .ok_or(Error::OutOfSupport {
                index: n,
                len: self.prefix.len(),
            })
    }

    /// `Σ_{k>n} a_k`. Zero past the end of a finite sequence.
    pub fn tail_sum(&self, n: usize) -> Rational {
        let len = self.prefix.len();
        if n <= len {
            self.prefix[n..].iter().sum::<Rational>() + self.tail.total()
        } else {
            self.tail.sum_after(n - len)
        }
    }

    /// `Σ_{k≤n} a_k`.
    pub fn partial_sum(&self, n: usize) -> Rational {
        &self.total - self.tail_sum(n)
    }

    /// Iterates over the terms in order.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            prefix: self.prefix.iter(),
            tail: self.tail.terms(),
        }
    }

    /// The first `n` terms (fewer for a shorter finite sequence).
    pub fn leading_terms(&self, n: usize) -> Vec<Rational> {
        self.terms().take(n).collect()
    }

    /// Number of leading terms equal to `a_1`; 0 for the empty sequence.
    ///
    /// Read off the structure, so long radix blocks cost nothing.
    pub fn leading_run(&self) -> usize {
        let Ok(first) = self.term(1) else {
            return 0;
        };
        let in_prefix = self.prefix.iter().take_while(|a| **a == first).count();
        if in_prefix < self.prefix.len() {
            return in_prefix;
        }
        in_prefix
            + match &self.tail {
                TailModel::Zero => 0,
                TailModel::Geometric { first: f, .. } => usize::from(*f == first),
                TailModel::MixedRadixScaled { scale, radices } => {
                    let k = radices.radix(1).expect("infinite radix word");
                    let value = scale / Rational::from_integer(BigInt::from(k));
                    if value == first {
                        k as usize - 1
                    } else {
                        0
                    }
                }
            }
    }

    /// The finite sequence of the first `n` terms.
    pub fn truncate(&self, n: usize) -> SequenceModel {
        Self::assemble(self.leading_terms(n), TailModel::Zero)
    }

    /// The sequence `a_{n+1}, a_{n+2}, …`.
    pub fn drop_front(&self, n: usize) -> SequenceModel {
        let len = self.prefix.len();
        if n <= len {
            return Self::assemble(self.prefix[n..].to_vec(), self.tail.clone());
        }
        let (explicit, tail) = self.tail.shift(n - len);
        Self::assemble(explicit, tail)
    }

    /// Every term multiplied by `factor`, which must be positive.
    pub fn scaled(&self, factor: &Rational) -> SequenceModel {
        assert!(factor.is_positive(), "scale factor must be positive");
        let prefix = self.prefix.iter().map(|a| a * factor).collect();
        Self::assemble(prefix, self.tail.scaled(factor))
    }

    /// The same sequence with the first `n` terms written out explicitly.
    pub fn unfold(&self, n: usize) -> SequenceModel {
        let len = self.prefix.len();
        if n <= len || self.tail.is_zero() {
            return self.clone();
        }
        let (explicit, tail) = self.tail.shift(n - len);
        let mut prefix = self.prefix.clone();
        prefix.extend(self.tail.terms().take(n - len));
        prefix.extend(explicit);
        Self::assemble(prefix, tail)
    }

    /// A representation of the same sequence in which as much of the prefix
    /// as possible is folded back into the tail. Ratio-1/2 geometric tails are
    /// rewritten as radix tails with period `(2)`.
    pub fn normalized(&self) -> SequenceModel {
        let mut prefix = self.prefix.clone();
        let mut tail = match &self.tail {
            TailModel::Geometric { first, ratio } if *ratio == Rational::new(1, 2).expect("nonzero") => {
                TailModel::MixedRadixScaled {
                    scale: first * Rational::from_integer(2),
                    radices: crate::extreme::RadixWord::constant(2).expect("valid"),
                }
            }
            other => other.clone(),
        };
        while let Some(last) = prefix.last().cloned() {
            match &mut tail {
                TailModel::Zero => break,
                TailModel::Geometric { first, ratio } => {
                    if &last * &*ratio != *first {
                        break;
                    }
                    prefix.pop();
                    *first = last;
                }
                TailModel::MixedRadixScaled { scale, radices } => {
                    if last != *scale {
                        break;
                    }
                    let run = prefix.iter().rev().take_while(|a| **a == last).count();
                    prefix.truncate(prefix.len() - run);
                    let k = u32::try_from(run + 1).expect("run fits in u32");
                    *radices = radices.prepend(k).expect("radix at least 2");
                    *scale = &last * Rational::from_integer(BigInt::from(k));
                }
            }
        }
        if let TailModel::MixedRadixScaled { radices, .. } = &mut tail {
            *radices = radices.canonical();
        }
        Self::assemble(prefix, tail)
    }

    /// Whether both models describe the same sequence of terms.
    pub fn equivalent(&self, other: &SequenceModel) -> bool {
        self.normalized() == other.normalized()
    }
}

pub struct Terms<'a> {
    prefix: std::slice::Iter<'a, Rational>,
    tail: TailTerms<'a>,
}

impl Iterator for Terms<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        match self.prefix.next() {
            Some(a) => Some(a.clone()),
            None => self.tail.next(),
        }
    }
}
