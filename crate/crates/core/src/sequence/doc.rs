//! Document forms of sequence models and algebra specs.
//!
//! Decoding is split in two steps so callers can tell malformed documents
//! (a serde error while reading the `*Doc` type) from well-formed documents
//! describing an invalid object (the [`Error`] from the `TryFrom` conversion).
//!
//! ```text
//! {"prefix": ["1/4", "1/4"], "tail": {"kind": "geometric", "first": "1/4", "ratio": "1/2"}}
//! {"factors": [{"dim": 2, "weight": "1/2"}], "abelianTail": {"kind": "radix", "scale": "1/2", "pre": [], "period": [2]}}
//! ```

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraSpec, Factor, SequenceModel, TailModel};
use crate::error::{Error, Result};
use crate::extreme::RadixWord;
use crate::numeric::Rational;

fn one() -> Rational {
    Rational::one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TailDoc {
    Zero,
    Geometric {
        first: Rational,
        ratio: Rational,
    },
    Radix {
        #[serde(default = "one")]
        scale: Rational,
        #[serde(default)]
        pre: Vec<u32>,
        period: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    #[serde(default)]
    pub prefix: Vec<Rational>,
    #[serde(default = "zero_tail")]
    pub tail: TailDoc,
}

fn zero_tail() -> TailDoc {
    TailDoc::Zero
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub dim: u64,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AlgebraDoc {
    #[serde(default)]
    pub factors: Vec<FactorDoc>,
    #[serde(default)]
    pub abelian_tail: Option<TailDoc>,
}

impl TryFrom<TailDoc> for TailModel {
    type Error = Error;
    fn try_from(doc: TailDoc) -> Result<Self> {
        match doc {
            TailDoc::Zero => Ok(TailModel::Zero),
            TailDoc::Geometric { first, ratio } => TailModel::geometric(first, ratio),
            TailDoc::Radix { scale, pre, period } => TailModel::radix(scale, RadixWord::new(pre, period)?),
        }
    }
}

impl From<&TailModel> for TailDoc {
    fn from(t: &TailModel) -> Self {
        match t {
            TailModel::Zero => TailDoc::Zero,
            TailModel::Geometric { first, ratio } => TailDoc::Geometric {
                first: first.clone(),
                ratio: ratio.clone(),
            },
            TailModel::MixedRadixScaled { scale, radices } => TailDoc::Radix {
                scale: scale.clone(),
                pre: radices.pre().to_vec(),
                period: radices.period().to_vec(),
            },
        }
    }
}

impl TryFrom<SequenceDoc> for SequenceModel {
    type Error = Error;
    fn try_from(doc: SequenceDoc) -> Result<Self> {
        SequenceModel::new(doc.prefix, doc.tail.try_into()?)
    }
}

impl From<&SequenceModel> for SequenceDoc {
    fn from(m: &SequenceModel) -> Self {
        SequenceDoc {
            prefix: m.prefix().to_vec(),
            tail: m.tail().into(),
        }
    }
}

impl TryFrom<AlgebraDoc> for AlgebraSpec {
    type Error = Error;
    fn try_from(doc: AlgebraDoc) -> Result<Self> {
        let factors = doc
            .factors
            .into_iter()
            .map(|f| Factor {
                dim: f.dim,
                weight: f.weight,
            })
            .collect();
        let tail = doc.abelian_tail.map(TailModel::try_from).transpose()?;
        AlgebraSpec::new(factors, tail)
    }
}

impl From<&AlgebraSpec> for AlgebraDoc {
    fn from(spec: &AlgebraSpec) -> Self {
        AlgebraDoc {
            factors: spec
                .factors()
                .iter()
                .map(|f| FactorDoc {
                    dim: f.dim,
                    weight: f.weight.clone(),
                })
                .collect(),
            abelian_tail: spec.abelian_tail().map(TailDoc::from),
        }
    }
}

macro_rules! via_doc {
    ($model:ty, $doc:ty) => {
        impl Serialize for $model {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$doc>::from(self).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $model {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let doc = <$doc>::deserialize(d)?;
                <$model>::try_from(doc).map_err(serde::de::Error::custom)
            }
        }
    };
}

via_doc!(TailModel, TailDoc);
via_doc!(SequenceModel, SequenceDoc);
via_doc!(AlgebraSpec, AlgebraDoc);
