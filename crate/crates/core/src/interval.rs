//! Exact interval arithmetic over the non-negative extended rationals.
//!
//! An [`Interval`] is a non-empty connected subset of `[0, inf)` with rational
//! (or `+inf`) endpoints and explicit open/closed flags. The empty set is never
//! an `Interval` value; operations that can produce it return `Option`.
//! [`ExtInterval`] additionally admits a `-inf` lower endpoint and is only used
//! as the intermediate result of a Minkowski difference, before intersection
//! with a subset of `[0, inf)` brings it back into `Interval`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// One endpoint of an interval: an exact rational or an infinity.
///
/// `NegInf` never appears in an [`Interval`]; it exists for the lower endpoint
/// of [`ExtInterval`] intermediates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn finite(value: impl Into<BigRational>) -> Self {
        Endpoint::Finite(value.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Endpoint::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<BigRational> for Endpoint {
    fn from(value: BigRational) -> Self {
        Endpoint::Finite(value)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::Finite(v) => write!(f, "{}", v),
            Endpoint::PosInf => write!(f, "inf"),
        }
    }
}

/// A non-empty interval contained in `[0, inf)`.
///
/// Invariants, enforced by construction:
/// - `lo` is finite and `>= 0`;
/// - `lo <= hi`, and `lo == hi` only as a closed singleton `[a,a]`;
/// - an infinite upper endpoint is always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    lo_closed: bool,
    hi: Endpoint,
    hi_closed: bool,
}

impl Interval {
    /// General constructor. Returns `None` when the described set is empty.
    ///
    /// # Panics
    ///
    /// Panics if `lo` is negative: negative lower endpoints only arise from
    /// Minkowski differences, which stay in [`ExtInterval`] until clamped.
    pub fn new(lo: BigRational, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Option<Interval> {
        assert!(!lo.is_negative(), "interval lower endpoint must be non-negative");
        let (hi, hi_closed) = match hi {
            Endpoint::PosInf => (Endpoint::PosInf, false),
            Endpoint::NegInf => return None,
            finite => (finite, hi_closed),
        };
        if let Endpoint::Finite(h) = &hi {
            match lo.cmp(h) {
                Ordering::Greater => return None,
                Ordering::Equal if !(lo_closed && hi_closed) => return None,
                _ => {}
            }
        }
        Some(Interval { lo, lo_closed, hi, hi_closed })
    }

    pub fn closed(lo: impl Into<BigRational>, hi: impl Into<BigRational>) -> Option<Interval> {
        Interval::new(lo.into(), true, Endpoint::Finite(hi.into()), true)
    }

    pub fn open(lo: impl Into<BigRational>, hi: impl Into<BigRational>) -> Option<Interval> {
        Interval::new(lo.into(), false, Endpoint::Finite(hi.into()), false)
    }

    pub fn closed_open(lo: impl Into<BigRational>, hi: impl Into<BigRational>) -> Option<Interval> {
        Interval::new(lo.into(), true, Endpoint::Finite(hi.into()), false)
    }

    pub fn open_closed(lo: impl Into<BigRational>, hi: impl Into<BigRational>) -> Option<Interval> {
        Interval::new(lo.into(), false, Endpoint::Finite(hi.into()), true)
    }

    pub fn singleton(value: impl Into<BigRational>) -> Interval {
        let v = value.into();
        Interval::new(v.clone(), true, Endpoint::Finite(v), true).expect("singleton is non-empty")
    }

    pub fn closed_unbounded(lo: impl Into<BigRational>) -> Interval {
        Interval::new(lo.into(), true, Endpoint::PosInf, false).expect("unbounded is non-empty")
    }

    pub fn open_unbounded(lo: impl Into<BigRational>) -> Interval {
        Interval::new(lo.into(), false, Endpoint::PosInf, false).expect("unbounded is non-empty")
    }

    /// The whole domain `[0, inf)`.
    pub fn nonneg() -> Interval {
        Interval::closed_unbounded(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_singleton(&self) -> bool {
        self.hi.as_finite() == Some(&self.lo)
    }

    /// Degenerate means `|I| <= 1`; since the empty set is unrepresentable,
    /// this is exactly the singleton case.
    pub fn is_degenerate(&self) -> bool {
        self.is_singleton()
    }

    pub fn contains(&self, t: &BigRational) -> bool {
        let above = match t.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        if !above {
            return false;
        }
        match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite(h) => match t.cmp(h) {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            },
            Endpoint::NegInf => unreachable!(),
        }
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        cmp_lower(&self.lo, self.lo_closed, &other.lo, other.lo_closed) != Ordering::Less
            && cmp_upper(&self.hi, self.hi_closed, &other.hi, other.hi_closed) != Ordering::Greater
    }

    /// `a ∩ b`, or `None` when the intersection is empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) =
            if cmp_lower(&self.lo, self.lo_closed, &other.lo, other.lo_closed) == Ordering::Less {
                (other.lo.clone(), other.lo_closed)
            } else {
                (self.lo.clone(), self.lo_closed)
            };
        let (hi, hi_closed) =
            if cmp_upper(&self.hi, self.hi_closed, &other.hi, other.hi_closed) == Ordering::Greater {
                (other.hi.clone(), other.hi_closed)
            } else {
                (self.hi.clone(), self.hi_closed)
            };
        Interval::new(lo, lo_closed, hi, hi_closed)
    }

    /// Topological closure: finite endpoints become closed, `inf` stays open.
    pub fn closure(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            lo_closed: true,
            hi: self.hi.clone(),
            hi_closed: self.hi.is_finite(),
        }
    }

    /// Topological interior, relative to the whole real line (so the interior
    /// of `[0,1)` is `(0,1)`, not `[0,1)`). `None` for singletons.
    pub fn interior(&self) -> Option<Interval> {
        Interval::new(self.lo.clone(), false, self.hi.clone(), false)
    }

    /// `a ∪ b` when that union is itself an interval (the two overlap or touch
    /// with the shared point covered); `None` otherwise.
    pub fn union_if_connected(&self, other: &Interval) -> Option<Interval> {
        if self.separated(other) {
            return None;
        }
        let (lo, lo_closed) =
            if cmp_lower(&self.lo, self.lo_closed, &other.lo, other.lo_closed) == Ordering::Greater {
                (other.lo.clone(), other.lo_closed)
            } else {
                (self.lo.clone(), self.lo_closed)
            };
        let (hi, hi_closed) =
            if cmp_upper(&self.hi, self.hi_closed, &other.hi, other.hi_closed) == Ordering::Less {
                (other.hi.clone(), other.hi_closed)
            } else {
                (self.hi.clone(), self.hi_closed)
            };
        Some(Interval::new(lo, lo_closed, hi, hi_closed).expect("hull of non-empty intervals"))
    }

    /// Whether `a ∩ Cl(b) = Cl(a) ∩ b = ∅`. Stronger than disjointness: a
    /// shared boundary point must be excluded from both sides.
    pub fn separated(&self, other: &Interval) -> bool {
        self.intersect(&other.closure()).is_none() && self.closure().intersect(other).is_none()
    }

    /// The earlier-than relation: every point of `self` is strictly below
    /// every point of `other`.
    pub fn precedes(&self, other: &Interval) -> bool {
        match &self.hi {
            Endpoint::PosInf => false,
            Endpoint::Finite(s) => match s.cmp(&other.lo) {
                Ordering::Less => true,
                Ordering::Equal => !(self.hi_closed && other.lo_closed),
                Ordering::Greater => false,
            },
            Endpoint::NegInf => unreachable!(),
        }
    }

    /// Minkowski difference `self ⊖ timing = {b - a | b ∈ self, a ∈ timing}`.
    ///
    /// The lower endpoint `inf(self) - sup(timing)` is attained exactly when
    /// both are, and drops to `-inf` when `timing` is unbounded; hence the
    /// [`ExtInterval`] result.
    pub fn minkowski_diff(&self, timing: &Interval) -> ExtInterval {
        let (lo, lo_closed) = match &timing.hi {
            Endpoint::PosInf => (Endpoint::NegInf, false),
            Endpoint::Finite(sup_t) => (
                Endpoint::Finite(&self.lo - sup_t),
                self.lo_closed && timing.hi_closed,
            ),
            Endpoint::NegInf => unreachable!(),
        };
        let (hi, hi_closed) = match &self.hi {
            Endpoint::PosInf => (Endpoint::PosInf, false),
            Endpoint::Finite(sup_b) => (
                Endpoint::Finite(sup_b - &timing.lo),
                self.hi_closed && timing.lo_closed,
            ),
            Endpoint::NegInf => unreachable!(),
        };
        ExtInterval { lo, lo_closed, hi, hi_closed }
    }

    /// Length `hi - lo` as an endpoint (`inf` for unbounded intervals).
    pub fn length(&self) -> Endpoint {
        match &self.hi {
            Endpoint::PosInf => Endpoint::PosInf,
            Endpoint::Finite(h) => Endpoint::Finite(h - &self.lo),
            Endpoint::NegInf => unreachable!(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// Everything strictly to the right of `a`, within `[0, inf)`; the arrow
/// operator `→a`. By convention `→∅ = [0, inf)`, and the result is `None`
/// (empty) when `a` is unbounded above.
pub fn right_of(a: Option<&Interval>) -> Option<Interval> {
    let a = match a {
        None => return Some(Interval::nonneg()),
        Some(a) => a,
    };
    match &a.hi {
        Endpoint::PosInf => None,
        Endpoint::Finite(s) => {
            Interval::new(s.clone(), !a.hi_closed, Endpoint::PosInf, false)
        }
        Endpoint::NegInf => unreachable!(),
    }
}

/// Everything strictly to the left of `a`, within `[0, inf)`; the arrow
/// operator `←a`. By convention `←∅ = [0, inf)`; the result is `None` when
/// `a` reaches down to an included 0.
pub fn left_of(a: Option<&Interval>) -> Option<Interval> {
    let a = match a {
        None => return Some(Interval::nonneg()),
        Some(a) => a,
    };
    Interval::new(
        BigRational::zero(),
        true,
        Endpoint::Finite(a.lo.clone()),
        !a.lo_closed,
    )
}

/// An interval on the whole real line, the intermediate form of a Minkowski
/// difference. Never empty; eliminated by intersection with a subset of
/// `[0, inf)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtInterval {
    lo: Endpoint,
    lo_closed: bool,
    hi: Endpoint,
    hi_closed: bool,
}

impl ExtInterval {
    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    /// Intersection with a non-negative interval, landing back in [`Interval`].
    pub fn intersect_nonneg(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match &self.lo {
            Endpoint::NegInf => (other.lo.clone(), other.lo_closed),
            Endpoint::Finite(l) => {
                if cmp_lower(l, self.lo_closed, &other.lo, other.lo_closed) == Ordering::Greater {
                    (l.clone(), self.lo_closed)
                } else {
                    (other.lo.clone(), other.lo_closed)
                }
            }
            Endpoint::PosInf => return None,
        };
        let (hi, hi_closed) =
            if cmp_upper(&self.hi, self.hi_closed, &other.hi, other.hi_closed) == Ordering::Greater {
                (other.hi.clone(), other.hi_closed)
            } else {
                (self.hi.clone(), self.hi_closed)
            };
        Interval::new(lo, lo_closed, hi, hi_closed)
    }

    /// Intersection with the whole domain `[0, inf)`.
    pub fn clamp_nonneg(&self) -> Option<Interval> {
        self.intersect_nonneg(&Interval::nonneg())
    }

    pub fn contains(&self, t: &BigRational) -> bool {
        let above = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite(l) => match t.cmp(l) {
                Ordering::Greater => true,
                Ordering::Equal => self.lo_closed,
                Ordering::Less => false,
            },
            Endpoint::PosInf => false,
        };
        if !above {
            return false;
        }
        match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite(h) => match t.cmp(h) {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            },
            Endpoint::NegInf => false,
        }
    }
}

impl fmt::Display for ExtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// Orders lower bounds by start position: a closed bound starts earlier than
/// an open one at the same value.
pub(crate) fn cmp_lower(
    a: &BigRational,
    a_closed: bool,
    b: &BigRational,
    b_closed: bool,
) -> Ordering {
    a.cmp(b).then_with(|| b_closed.cmp(&a_closed))
}

/// Orders upper bounds by end position: a closed bound ends later than an
/// open one at the same value.
pub(crate) fn cmp_upper(a: &Endpoint, a_closed: bool, b: &Endpoint, b_closed: bool) -> Ordering {
    a.cmp(b).then_with(|| a_closed.cmp(&b_closed))
}
