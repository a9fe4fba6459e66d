use num_bigint::BigInt;

use super::{SequenceModel, TailModel};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// A full matrix summand `M_dim` carrying trace weight `weight`.
///
/// Its `dim` minimal projections each have trace `weight / dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub dim: u64,
    pub weight: Rational,
}

/// A finite atomic von Neumann algebra with a faithful normal tracial state,
/// given by its matrix summands and an optional infinite family of abelian
/// atoms (one atom per tail term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    factors: Vec<Factor>,
    abelian_tail: TailModel,
}

impl AlgebraSpec {
    /// Validates dimensions, weights and normalization `Σ weights + tail = 1`.
    pub fn new(factors: Vec<Factor>, abelian_tail: Option<TailModel>) -> Result<Self> {
        let abelian_tail = abelian_tail.unwrap_or(TailModel::Zero);
        abelian_tail.validate()?;
        for (i, f) in factors.iter().enumerate() {
            if f.dim == 0 {
                return Err(Error::ZeroDimension { index: i + 1 });
            }
            if !f.weight.is_positive() {
                return Err(Error::NonPositiveWeight {
                    index: i + 1,
                    weight: f.weight.clone(),
                });
            }
        }
        let total = factors.iter().map(|f| &f.weight).sum::<Rational>() + abelian_tail.total();
        if total != Rational::one() {
            return Err(Error::WeightsNotNormalized { total });
        }
        Ok(AlgebraSpec {
            factors,
            abelian_tail,
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn abelian_tail(&self) -> Option<&TailModel> {
        (!self.abelian_tail.is_zero()).then_some(&self.abelian_tail)
    }

    /// Traces of the minimal projections of the matrix summands, with
    /// multiplicity, in descending order.
    pub fn finite_atoms(&self) -> Vec<Rational> {
        let mut atoms: Vec<Rational> = self
            .factors
            .iter()
            .flat_map(|f| {
                let value = &f.weight / Rational::from_integer(BigInt::from(f.dim));
                std::iter::repeat_n(value, usize::try_from(f.dim).expect("dimension fits in usize"))
            })
            .collect();
        atoms.sort_unstable_by(|a, b| b.cmp(a));
        atoms
    }

    /// The descending sequence of atom traces `t_1 ≥ t_2 ≥ …`.
    ///
    /// Tail terms at or above the smallest finite atom are moved into the
    /// explicit prefix and merged in order, so the remaining tail starts
    /// strictly below every finite atom.
    ///
    /// ```
    /// use tracerange::{AlgebraSpec, Factor, Rational, TailModel};
    ///
    /// let q = |n, d| Rational::new(n, d).unwrap();
    /// let spec = AlgebraSpec::new(
    ///     vec![Factor { dim: 2, weight: q(1, 2) }],
    ///     Some(TailModel::geometric(q(1, 4), q(1, 2)).unwrap()),
    /// ).unwrap();
    /// let traces = spec.atom_traces().unwrap();
    /// assert_eq!(traces.prefix(), &[q(1, 4), q(1, 4), q(1, 4)]);
    /// assert_eq!(traces.tail(), &TailModel::geometric(q(1, 8), q(1, 2)).unwrap());
    /// ```
    pub fn atom_traces(&self) -> Result<SequenceModel> {
        let mut prefix = self.finite_atoms();
        let tail = match prefix.last() {
            None => self.abelian_tail.clone(),
            Some(smallest) => {
                let (moved, rest) = self.abelian_tail.split_while_at_least(smallest)?;
                prefix.extend(moved);
                prefix.sort_by(|a, b| b.cmp(a));
                rest
            }
        };
        SequenceModel::new(prefix, tail)
    }
}

/// Free-function spelling of [`AlgebraSpec::atom_traces`].
pub fn from_algebra(spec: &AlgebraSpec) -> Result<SequenceModel> {
    spec.atom_traces()
}
