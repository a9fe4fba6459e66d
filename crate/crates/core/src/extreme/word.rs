use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An eventually periodic sequence of radices `k_1, k_2, …`, each at least 2.
///
/// The sequence is `pre` followed by `period` repeated forever. An empty
/// `period` makes the word finite; such words describe digit systems but not
/// extreme points.
///
/// Equality compares the radix sequences themselves, so `(2, 3; 3)` equals
/// `(2; 3)` and `(; 2, 2)` equals `(; 2)`. [`canonical`](Self::canonical)
/// returns the shortest representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "WordDoc", into = "WordDoc")]
pub struct RadixWord {
    pre: Vec<u32>,
    period: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct WordDoc {
    #[serde(default)]
    pre: Vec<u32>,
    #[serde(default)]
    period: Vec<u32>,
}

impl TryFrom<WordDoc> for RadixWord {
    type Error = Error;
    fn try_from(doc: WordDoc) -> Result<Self> {
        RadixWord::new(doc.pre, doc.period)
    }
}

impl From<RadixWord> for WordDoc {
    fn from(w: RadixWord) -> Self {
        WordDoc {
            pre: w.pre,
            period: w.period,
        }
    }
}

impl RadixWord {
    pub fn new(pre: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        for (index, &value) in pre.iter().chain(&period).enumerate() {
            if value < 2 {
                return Err(Error::InvalidRadix {
                    index: index + 1,
                    value,
                });
            }
        }
        Ok(RadixWord { pre, period })
    }

    /// The constant word `(; m)`.
    pub fn constant(m: u32) -> Result<Self> {
        Self::new(Vec::new(), vec![m])
    }

    pub fn pre(&self) -> &[u32] {
        &self.pre
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of radices, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.pre.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.pre.is_empty()
    }

    /// The radix `k_n`, 1-based. `None` past the end of a finite word.
    pub fn radix(&self, n: usize) -> Option<u32> {
        let i = n.checked_sub(1)?;
        if i < self.pre.len() {
            return Some(self.pre[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(self.period[(i - self.pre.len()) % self.period.len()])
    }

    /// Iterates over the radices; infinite unless the word is finite.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let cycled = self.period.iter().copied().cycle();
        self.pre.iter().copied().chain(cycled)
    }

    /// The word with `k` put in front.
    pub fn prepend(&self, k: u32) -> Result<Self> {
        let mut pre = Vec::with_capacity(self.pre.len() + 1);
        pre.push(k);
        pre.extend_from_slice(&self.pre);
        RadixWord::new(pre, self.period.clone())
    }

    /// The word `prefix ++ self`.
    pub fn prepend_all(&self, prefix: &[u32]) -> Result<Self> {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&self.pre);
        RadixWord::new(pre, self.period.clone())
    }

    /// The word with its first `j` radices removed.
    pub fn drop_first(&self, j: usize) -> Self {
        if j <= self.pre.len() {
            return RadixWord {
                pre: self.pre[j..].to_vec(),
                period: self.period.clone(),
            };
        }
        if self.period.is_empty() {
            return RadixWord {
                pre: Vec::new(),
                period: Vec::new(),
            };
        }
        let shift = (j - self.pre.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(shift);
        RadixWord {
            pre: Vec::new(),
            period,
        }
    }

    /// Shortest representation: primitive period, then the shortest `pre`.
    pub fn canonical(&self) -> Self {
        let mut period = self.period.clone();
        let n = period.len();
        if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d])) {
            period.truncate(d);
        }
        let mut pre = self.pre.clone();
        if !period.is_empty() {
            while pre.last().is_some_and(|&k| Some(&k) == period.last()) {
                pre.pop();
                period.rotate_right(1);
            }
        }
        RadixWord { pre, period }
    }
}

impl PartialEq for RadixWord {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.pre == b.pre && a.period == b.period
    }
}

impl Eq for RadixWord {}

impl fmt::Display for RadixWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "radix({};{})", join(&self.pre), join(&self.period))
    }
}
