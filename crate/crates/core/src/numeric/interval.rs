//! Closed rational intervals and sorted, coalesced unions of them.
//!
//! An [`IntervalUnion`] keeps its parts sorted by lower end with a strict
//! gap between neighbours: `prev.hi < next.lo`. Parts that touch are merged,
//! so `[0, 1/4] ∪ [1/4, 1/2]` is stored as `[0, 1/2]`.

use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo <= hi`. Points are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(serializer)
    }
}

/// A nonempty open interval `(lo, hi)`, used for gaps of unreachable values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenInterval {
    lo: Rational,
    hi: Rational,
}

impl OpenInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyOpenInterval { lo, hi });
        }
        Ok(OpenInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

impl Serialize for OpenInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(serializer)
    }
}

/// A finite union of closed intervals in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn new() -> Self {
        IntervalUnion::default()
    }

    /// Builds a union from intervals in any order, coalescing as it goes.
    /// Runs in `O(n log n)`, unlike repeated [`insert`](Self::insert).
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut all: Vec<Interval> = intervals.into_iter().collect();
        all.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut parts: Vec<Interval> = Vec::with_capacity(all.len());
        for iv in all {
            match parts.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalUnion { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Adds `iv`, merging every part it overlaps or touches.
    pub fn insert(&mut self, iv: Interval) {
        // First part reaching iv.lo, and first part starting past iv.hi.
        let start = self.parts.partition_point(|p| p.hi < iv.lo);
        let end = self.parts.partition_point(|p| p.lo <= iv.hi);
        if start == end {
            self.parts.insert(start, iv);
            return;
        }
        let lo = iv.lo.min(self.parts[start].lo.clone());
        let hi = iv.hi.max(self.parts[end - 1].hi.clone());
        self.parts.splice(start..end, std::iter::once(Interval { lo, hi }));
    }

    /// Functional form of [`insert`](Self::insert).
    pub fn with(mut self, iv: Interval) -> Self {
        self.insert(iv);
        self
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| &p.hi < x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| {
            let idx = other.parts.partition_point(|q| q.hi < p.lo);
            other.parts.get(idx).is_some_and(|q| q.contains_interval(p))
        })
    }

    /// Smallest closed interval containing the union.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    /// Closure of `within \ self`.
    ///
    /// Each maximal gap is returned as a closed interval; its interior is the
    /// set of points missing from `self`. Isolated points of `self` vanish
    /// under the closure, so the complement of `{[1/2, 1/2]}` in `[0, 1]` is
    /// all of `[0, 1]`.
    pub fn complement_within(&self, within: &Interval) -> Result<IntervalUnion> {
        if let Some(hull) = self.hull() {
            if !within.contains_interval(&hull) {
                return Err(Error::NotContained {
                    lo: within.lo.clone(),
                    hi: within.hi.clone(),
                });
            }
        }
        let mut out = IntervalUnion::new();
        let mut cursor = within.lo.clone();
        for part in &self.parts {
            if cursor < part.lo {
                out.insert(Interval {
                    lo: cursor.clone(),
                    hi: part.lo.clone(),
                });
            }
            cursor = part.hi.clone();
        }
        if self.parts.is_empty() || cursor < within.hi {
            out.insert(Interval {
                lo: cursor,
                hi: within.hi.clone(),
            });
        }
        Ok(out)
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}
