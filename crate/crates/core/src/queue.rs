//! The interval-queue algebra: construction, complementation, conjunction,
//! and the timed until operator.
//!
//! An [`IntervalQueue`] is a finite set of non-empty, pairwise-separated
//! intervals in `[0, inf)`, stored canonically sorted by the earlier-than
//! relation. Canonical storage makes queue equality a plain sequence
//! comparison. `{[0,1), (1,2]}` is a valid queue: separation permits isolated
//! holes, it only forbids touching with a covered boundary point.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::interval::{cmp_lower, cmp_upper, left_of, right_of, Endpoint, Interval};

/// Timed until needs a non-degenerate timing interval.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("until timing interval must be non-degenerate")]
pub struct DegenerateTiming;

/// A Lebesgue measure: a non-negative rational, or infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Finite(BigRational),
    Infinite,
}

impl Measure {
    pub fn zero() -> Measure {
        Measure::Finite(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Measure::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Measure::Finite(v) => Some(v),
            Measure::Infinite => None,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Finite(v) => write!(f, "{}", v),
            Measure::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite set of non-empty pairwise-separated intervals, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalQueue {
    items: Vec<Interval>,
}

impl IntervalQueue {
    pub fn empty() -> IntervalQueue {
        IntervalQueue { items: Vec::new() }
    }

    pub fn singleton(item: Interval) -> IntervalQueue {
        IntervalQueue { items: vec![item] }
    }

    /// The whole domain as a queue, `{[0,inf)}`.
    pub fn everything() -> IntervalQueue {
        IntervalQueue::singleton(Interval::nonneg())
    }

    /// Builds a queue from an arbitrary finite collection of intervals,
    /// merging the ones whose union is connected. The union of the result
    /// equals the union of the inputs, and the result does not depend on
    /// input order.
    pub fn construct(intervals: impl IntoIterator<Item = Interval>) -> IntervalQueue {
        let mut items: Vec<Interval> = intervals.into_iter().collect();
        items.sort_by(cmp_intervals);
        let mut merged: Vec<Interval> = Vec::with_capacity(items.len());
        for next in items {
            match merged.last() {
                Some(last) => match last.union_if_connected(&next) {
                    Some(union) => {
                        *merged.last_mut().expect("non-empty") = union;
                    }
                    None => merged.push(next),
                },
                None => merged.push(next),
            }
        }
        let queue = IntervalQueue { items: merged };
        debug_assert!(queue.is_canonical());
        queue
    }

    /// Wraps items that are already sorted and pairwise separated.
    pub(crate) fn from_canonical_parts(items: Vec<Interval>) -> IntervalQueue {
        let queue = IntervalQueue { items };
        debug_assert!(queue.is_canonical());
        queue
    }

    /// Checks the representation invariant: ascending by the earlier-than
    /// relation with every adjacent pair separated. Adjacent separation
    /// implies pairwise separation for sorted items.
    pub fn is_canonical(&self) -> bool {
        self.items
            .windows(2)
            .all(|w| w[0].precedes(&w[1]) && w[0].separated(&w[1]))
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.items.iter()
    }

    /// Membership of `t` in the union of the queue, by binary search over the
    /// sorted items.
    pub fn contains(&self, t: &BigRational) -> bool {
        if t < &BigRational::zero() {
            return false;
        }
        // First item that does not start at or before t; the candidate is the
        // one just before it.
        let idx = self.items.partition_point(|item| {
            cmp_lower(item.lo(), item.lo_closed(), t, true) != Ordering::Greater
        });
        idx > 0 && self.items[idx - 1].contains(t)
    }

    /// The complementary queue: union of the result is `[0,inf)` minus the
    /// union of `self`. Computed from the leftward and rightward arrow
    /// intervals of the sorted items.
    pub fn complement(&self) -> IntervalQueue {
        if self.items.is_empty() {
            return IntervalQueue::everything();
        }
        let mut out: Vec<Interval> = Vec::with_capacity(self.items.len() + 1);
        out.extend(left_of(self.items.first()));
        for pair in self.items.windows(2) {
            let gap = right_of(Some(&pair[0]))
                .zip(left_of(Some(&pair[1])))
                .and_then(|(r, l)| r.intersect(&l));
            out.extend(gap);
        }
        out.extend(right_of(self.items.last()));
        IntervalQueue::from_canonical_parts(out)
    }

    /// Pairwise intersections with empties dropped; the union of the result
    /// is the intersection of the unions. Separation of the output follows
    /// from separation of the inputs, so no re-merging is needed.
    pub fn conjoin(&self, other: &IntervalQueue) -> IntervalQueue {
        let mut out = Vec::new();
        for a in &self.items {
            for b in &other.items {
                out.extend(a.intersect(b));
            }
        }
        IntervalQueue::from_canonical_parts(out)
    }

    /// The timed until operator on queues: for every pair `(H, J)` of items,
    /// take `((Cl(H) ∩ J) ⊖ timing) ∩ Cl(H)` and construct a queue from the
    /// non-empty results.
    ///
    /// When the timing interval contains 0, the right-hand queue joins the
    /// result wholesale: a witness at the query time itself leaves nothing
    /// for the left argument to cover, so such points are satisfied even
    /// outside the closure of any left-hand item.
    pub fn until(
        &self,
        other: &IntervalQueue,
        timing: &Interval,
    ) -> Result<IntervalQueue, DegenerateTiming> {
        if timing.is_degenerate() {
            return Err(DegenerateTiming);
        }
        let mut parts = Vec::new();
        for h in &self.items {
            let cl_h = h.closure();
            for j in &other.items {
                let reach = cl_h
                    .intersect(j)
                    .map(|hit| hit.minkowski_diff(timing))
                    .and_then(|ext| ext.intersect_nonneg(&cl_h));
                parts.extend(reach);
            }
        }
        if timing.lo_closed() && timing.lo().is_zero() {
            parts.extend(other.items.iter().cloned());
        }
        Ok(IntervalQueue::construct(parts))
    }

    /// Set difference of unions: `(∪self) \ (∪other)`.
    pub fn difference(&self, other: &IntervalQueue) -> IntervalQueue {
        self.conjoin(&other.complement())
    }

    /// Whether the union of `self` is contained in the union of `other`.
    pub fn is_subset_of(&self, other: &IntervalQueue) -> bool {
        self.difference(other).is_empty()
    }

    /// Lebesgue measure of the union: the sum of item lengths, infinite if
    /// any item is unbounded. Singletons contribute zero.
    pub fn measure(&self) -> Measure {
        let mut total = BigRational::zero();
        for item in &self.items {
            match item.length() {
                Endpoint::Finite(len) => total += len,
                Endpoint::PosInf => return Measure::Infinite,
                Endpoint::NegInf => unreachable!(),
            }
        }
        Measure::Finite(total)
    }
}

impl fmt::Display for IntervalQueue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", item)?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a IntervalQueue {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Total order on intervals by start position, then end position; used to
/// sort inputs before the construction sweep.
fn cmp_intervals(a: &Interval, b: &Interval) -> Ordering {
    cmp_lower(a.lo(), a.lo_closed(), b.lo(), b.lo_closed())
        .then_with(|| cmp_upper(a.hi(), a.hi_closed(), b.hi(), b.hi_closed()))
}
