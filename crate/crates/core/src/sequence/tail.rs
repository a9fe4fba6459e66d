use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::extreme::RadixWord;
use crate::numeric::Rational;

/// Upper bound on how many tail terms [`TailModel::split_while_at_least`]
/// will materialize.
pub const MAX_MATERIALIZED_TERMS: usize = 1 << 16;

/// Closed-form description of the infinite part of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailModel {
    /// No further terms: the sequence is finite.
    Zero,
    /// `first, first·ratio, first·ratio², …` with `0 < ratio < 1`.
    Geometric { first: Rational, ratio: Rational },
    /// Blocks of equal terms: block `j` holds `k_j − 1` copies of
    /// `scale/(k_1⋯k_j)`. The total is `scale`, and after block `j` exactly
    /// `scale/(k_1⋯k_j)` of mass remains.
    MixedRadixScaled { scale: Rational, radices: RadixWord },
}

impl TailModel {
    pub fn geometric(first: Rational, ratio: Rational) -> Result<Self> {
        let t = TailModel::Geometric { first, ratio };
        t.validate()?;
        Ok(t)
    }

    pub fn radix(scale: Rational, radices: RadixWord) -> Result<Self> {
        let t = TailModel::MixedRadixScaled { scale, radices };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TailModel::Zero => Ok(()),
            TailModel::Geometric { first, ratio } => {
                if !first.is_positive() {
                    return Err(Error::InvalidGeometricFirst(first.clone()));
                }
                if !ratio.is_positive() || *ratio >= 1 {
                    return Err(Error::InvalidRatio(ratio.clone()));
                }
                Ok(())
            }
            TailModel::MixedRadixScaled { scale, radices } => {
                if !scale.is_positive() {
                    return Err(Error::InvalidScale(scale.clone()));
                }
                if radices.is_finite() {
                    return Err(Error::FiniteWord);
                }
                Ok(())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TailModel::Zero)
    }

    pub fn total(&self) -> Rational {
        match self {
            TailModel::Zero => Rational::zero(),
            TailModel::Geometric { first, ratio } => first / (Rational::one() - ratio),
            TailModel::MixedRadixScaled { scale, .. } => scale.clone(),
        }
    }

    /// Term `j` of the tail (1-based); `None` for `Zero` or `j == 0`.
    pub fn term(&self, j: usize) -> Option<Rational> {
        if j == 0 {
            return None;
        }
        match self {
            TailModel::Zero => None,
            TailModel::Geometric { first, ratio } => Some(first * ratio.pow(exponent(j - 1))),
            TailModel::MixedRadixScaled { scale, radices } => {
                let mut seen = 0usize;
                for block in Blocks::new(scale.clone(), radices) {
                    seen += block.len;
                    if j <= seen {
                        return Some(block.value);
                    }
                }
                unreachable!("infinite radix word")
            }
        }
    }

    pub fn first_term(&self) -> Option<Rational> {
        self.term(1)
    }

    /// Sum of the tail terms after the first `j`.
    pub fn sum_after(&self, j: usize) -> Rational {
        match self {
            TailModel::Zero => Rational::zero(),
            TailModel::Geometric { first, ratio } => {
                first * ratio.pow(exponent(j)) / (Rational::one() - ratio)
            }
            TailModel::MixedRadixScaled { scale, radices } => {
                let mut seen = 0usize;
                for block in Blocks::new(scale.clone(), radices) {
                    if j <= seen + block.len {
                        let inside = Rational::from_integer(BigInt::from(j - seen));
                        return &block.mass_before - inside * &block.value;
                    }
                    seen += block.len;
                }
                unreachable!("infinite radix word")
            }
        }
    }

    /// Whether every tail term satisfies `a_n <= Σ_{k>n} a_k` on its own.
    ///
    /// Geometric tails do exactly when `ratio >= 1/2`; radix tails always do,
    /// with equality at the last term of every block.
    pub fn is_self_complete(&self) -> bool {
        match self {
            TailModel::Zero => true,
            TailModel::Geometric { ratio, .. } => *ratio >= Rational::new(1, 2).expect("nonzero"),
            TailModel::MixedRadixScaled { .. } => true,
        }
    }

    /// Multiplies every term by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> TailModel {
        match self {
            TailModel::Zero => TailModel::Zero,
            TailModel::Geometric { first, ratio } => TailModel::Geometric {
                first: first * factor,
                ratio: ratio.clone(),
            },
            TailModel::MixedRadixScaled { scale, radices } => TailModel::MixedRadixScaled {
                scale: scale * factor,
                radices: radices.clone(),
            },
        }
    }

    /// Removes the first `j` terms. Returns the explicit terms needed to keep
    /// the same sequence (the rest of a partially consumed radix block)
    /// followed by the new tail.
    pub fn shift(&self, j: usize) -> (Vec<Rational>, TailModel) {
        match self {
            TailModel::Zero => (Vec::new(), TailModel::Zero),
            TailModel::Geometric { first, ratio } => (
                Vec::new(),
                TailModel::Geometric {
                    first: first * ratio.pow(exponent(j)),
                    ratio: ratio.clone(),
                },
            ),
            TailModel::MixedRadixScaled { scale, radices } => {
                let mut left = j;
                let mut mass = scale.clone();
                let mut blocks = 0usize;
                for block in Blocks::new(scale.clone(), radices) {
                    if left == 0 {
                        break;
                    }
                    if left < block.len {
                        let explicit = vec![block.value.clone(); block.len - left];
                        let tail = TailModel::MixedRadixScaled {
                            scale: block.value,
                            radices: radices.drop_first(blocks + 1),
                        };
                        return (explicit, tail);
                    }
                    left -= block.len;
                    mass = block.value;
                    blocks += 1;
                }
                (
                    Vec::new(),
                    TailModel::MixedRadixScaled {
                        scale: mass,
                        radices: radices.drop_first(blocks),
                    },
                )
            }
        }
    }

    /// Moves leading terms out of the tail while they are `>= threshold`,
    /// stopping only at block boundaries of radix tails. The remaining tail
    /// starts strictly below `threshold`.
    pub fn split_while_at_least(&self, threshold: &Rational) -> Result<(Vec<Rational>, TailModel)> {
        let mut moved = Vec::new();
        match self {
            TailModel::Zero => Ok((moved, TailModel::Zero)),
            TailModel::Geometric { first, ratio } => {
                let mut next = first.clone();
                while &next >= threshold {
                    if moved.len() >= MAX_MATERIALIZED_TERMS {
                        return Err(too_many());
                    }
                    let after = &next * ratio;
                    moved.push(next);
                    next = after;
                }
                let tail = TailModel::Geometric {
                    first: next,
                    ratio: ratio.clone(),
                };
                Ok((moved, tail))
            }
            TailModel::MixedRadixScaled { scale, radices } => {
                let mut mass = scale.clone();
                let mut blocks = 0usize;
                for block in Blocks::new(scale.clone(), radices) {
                    if &block.value < threshold {
                        break;
                    }
                    if moved.len() + block.len > MAX_MATERIALIZED_TERMS {
                        return Err(too_many());
                    }
                    moved.extend(std::iter::repeat_n(block.value.clone(), block.len));
                    mass = block.value;
                    blocks += 1;
                }
                let tail = TailModel::MixedRadixScaled {
                    scale: mass,
                    radices: radices.drop_first(blocks),
                };
                Ok((moved, tail))
            }
        }
    }

    /// Iterates over the tail terms (infinite unless `Zero`).
    pub fn terms(&self) -> TailTerms<'_> {
        TailTerms(match self {
            TailModel::Zero => TermState::Empty,
            TailModel::Geometric { first, ratio } => TermState::Geometric {
                next: first.clone(),
                ratio,
            },
            TailModel::MixedRadixScaled { scale, radices } => TermState::Radix {
                blocks: Blocks::new(scale.clone(), radices),
                current: None,
            },
        })
    }
}

fn too_many() -> Error {
    Error::UnsupportedSpec(format!(
        "tail needs more than {MAX_MATERIALIZED_TERMS} explicit terms to sort below the finite atoms"
    ))
}

fn exponent(j: usize) -> i32 {
    i32::try_from(j).expect("sequence index fits in i32")
}

/// One block of a mixed-radix tail.
pub(crate) struct Block {
    pub(crate) value: Rational,
    pub(crate) len: usize,
    pub(crate) mass_before: Rational,
}

pub(crate) struct Blocks<'a> {
    mass: Rational,
    radices: Box<dyn Iterator<Item = u32> + 'a>,
}

impl<'a> Blocks<'a> {
    pub(crate) fn new(scale: Rational, word: &'a RadixWord) -> Self {
        Blocks {
            mass: scale,
            radices: Box::new(word.iter()),
        }
    }
}

impl Iterator for Blocks<'_> {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        let k = self.radices.next()?;
        let value = &self.mass / Rational::from_integer(k);
        let block = Block {
            value: value.clone(),
            len: (k - 1) as usize,
            mass_before: std::mem::replace(&mut self.mass, value),
        };
        Some(block)
    }
}

/// Iterator over the terms of a [`TailModel`].
pub struct TailTerms<'a>(TermState<'a>);

enum TermState<'a> {
    Empty,
    Geometric { next: Rational, ratio: &'a Rational },
    Radix { blocks: Blocks<'a>, current: Option<(Rational, usize)> },
}

impl Iterator for TailTerms<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        match &mut self.0 {
            TermState::Empty => None,
            TermState::Geometric { next, ratio } => {
                let after = &*next * *ratio;
                Some(std::mem::replace(next, after))
            }
            TermState::Radix { blocks, current } => loop {
                if let Some((value, left)) = current {
                    if *left > 0 {
                        *left -= 1;
                        return Some(value.clone());
                    }
                }
                let block = blocks.next()?;
                *current = Some((block.value, block.len));
            },
        }
    }
}
