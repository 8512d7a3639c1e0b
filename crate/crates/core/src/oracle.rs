//! Independent brute-force evaluator of the MITL satisfaction relation over
//! exact piecewise-constant traces. It is the ground-truth reference for
//! differential tests of the engine, so it deliberately avoids the queue
//! operators (complement, conjoin, until) and instead decides satisfaction
//! pointwise, region by region.
//!
//! The approach: every truth set that can arise for a subformula changes
//! value only at a known finite set of breakpoints — endpoints of the atom
//! intervals, shifted down by timing-interval endpoints, once per level of
//! until nesting. Those breakpoints form the [`CriticalPartition`]. Between
//! consecutive breakpoints every subformula is constant, so evaluating at
//! each breakpoint and at one interior witness per gap decides satisfaction
//! everywhere, including the unbounded tail beyond the last breakpoint.
//!
//! The until rule is decided literally: a witness `t2` in the timing window
//! makes the right argument true at `t + t2` while the left argument holds on
//! the open interval in between. Candidate witnesses are the partition points
//! inside the shifted window plus one representative per overlapped gap.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::formula::{Formula, SubformulaIndex};
use crate::interval::{Endpoint, Interval};
use crate::queue::IntervalQueue;
use crate::trace::ExactTrace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("atomic proposition {0} is not declared in the trace")]
    UndeclaredAtom(String),
    #[error("query time {0} is negative")]
    NegativeTime(BigRational),
    #[error(
        "horizon {horizon} is too small: the formula looks ahead {lookahead} and the trace is not constant beyond the horizon"
    )]
    HorizonTooSmall { lookahead: Endpoint, horizon: BigRational },
}

/// The sorted breakpoints that bound the regions of constancy for a formula
/// over a trace. Always contains 0; refining with extra points never changes
/// any evaluation result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPartition {
    points: Vec<BigRational>,
}

impl CriticalPartition {
    pub fn build(trace: &ExactTrace, formula: &Formula) -> Result<CriticalPartition, OracleError> {
        let mut points = BTreeSet::new();
        points.insert(BigRational::zero());
        collect_breakpoints(trace, formula, &mut points)?;
        Ok(CriticalPartition { points: points.into_iter().collect() })
    }

    /// Adds extra (non-negative) breakpoints. Harmless by construction: a
    /// finer partition only splits regions of constancy.
    pub fn refine(&mut self, extra: impl IntoIterator<Item = BigRational>) {
        let mut set: BTreeSet<BigRational> = self.points.iter().cloned().collect();
        set.extend(extra.into_iter().filter(|p| !p.is_negative()));
        self.points = set.into_iter().collect();
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }
}

/// Truth-set breakpoints, bottom-up. For an until, every endpoint of the
/// result is an endpoint of an argument truth set shifted down by a timing
/// endpoint, so the child sets are extended by those differences.
fn collect_breakpoints(
    trace: &ExactTrace,
    formula: &Formula,
    out: &mut BTreeSet<BigRational>,
) -> Result<(), OracleError> {
    match formula {
        Formula::True | Formula::False => {}
        Formula::Atom(name) => {
            let queue = trace
                .queue(name)
                .ok_or_else(|| OracleError::UndeclaredAtom(name.clone()))?;
            for item in queue {
                out.insert(item.lo().clone());
                if let Endpoint::Finite(hi) = item.hi() {
                    out.insert(hi.clone());
                }
            }
        }
        Formula::Not(f) => collect_breakpoints(trace, f, out)?,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_breakpoints(trace, a, out)?;
            collect_breakpoints(trace, b, out)?;
        }
        Formula::Until(a, b, timing) => {
            let mut base = BTreeSet::new();
            base.insert(BigRational::zero());
            collect_breakpoints(trace, a, &mut base)?;
            collect_breakpoints(trace, b, &mut base)?;
            shift_down(&base, timing, out);
        }
        Formula::Eventually(timing, f) | Formula::Always(timing, f) => {
            let mut base = BTreeSet::new();
            base.insert(BigRational::zero());
            collect_breakpoints(trace, f, &mut base)?;
            shift_down(&base, timing, out);
        }
    }
    Ok(())
}

fn shift_down(base: &BTreeSet<BigRational>, timing: &Interval, out: &mut BTreeSet<BigRational>) {
    let mut offsets = vec![timing.lo().clone()];
    if let Endpoint::Finite(hi) = timing.hi() {
        offsets.push(hi.clone());
    }
    for p in base {
        out.insert(p.clone());
        for off in &offsets {
            let shifted = p - off;
            if !shifted.is_negative() {
                out.insert(shifted);
            }
        }
    }
}

/// Truth values of every distinct subformula over every region of the
/// partition: regions alternate partition points and the open gaps between
/// them, ending with the unbounded tail after the last point.
#[derive(Clone, Debug)]
pub struct RegionTable {
    partition: CriticalPartition,
    regions: Vec<Interval>,
    reps: Vec<BigRational>,
    index: SubformulaIndex,
    vectors: Vec<Vec<bool>>,
}

impl RegionTable {
    pub fn build(trace: &ExactTrace, formula: &Formula) -> Result<RegionTable, OracleError> {
        let partition = CriticalPartition::build(trace, formula)?;
        RegionTable::with_partition(trace, formula, partition)
    }

    pub fn with_partition(
        trace: &ExactTrace,
        formula: &Formula,
        partition: CriticalPartition,
    ) -> Result<RegionTable, OracleError> {
        let points = &partition.points;
        let n = points.len();
        let mut regions = Vec::with_capacity(2 * n);
        let mut reps = Vec::with_capacity(2 * n);
        for (i, p) in points.iter().enumerate() {
            regions.push(Interval::singleton(p.clone()));
            reps.push(p.clone());
            if i + 1 < n {
                regions.push(
                    Interval::open(p.clone(), points[i + 1].clone())
                        .expect("partition points are distinct"),
                );
                reps.push((p + &points[i + 1]) / BigRational::from_integer(BigInt::from(2)));
            } else {
                regions.push(Interval::open_unbounded(p.clone()));
                reps.push(p + BigRational::one());
            }
        }

        let index = formula.subformulas();
        let mut table = RegionTable {
            partition,
            regions,
            reps,
            index,
            vectors: Vec::new(),
        };
        table.fill_vectors(trace)?;
        Ok(table)
    }

    fn fill_vectors(&mut self, trace: &ExactTrace) -> Result<(), OracleError> {
        let count = self.regions.len();
        let subformulas: Vec<Formula> = self.index.items().to_vec();
        for sub in &subformulas {
            let vector = match sub {
                Formula::True => vec![true; count],
                Formula::False => vec![false; count],
                Formula::Atom(name) => {
                    let queue = trace
                        .queue(name)
                        .ok_or_else(|| OracleError::UndeclaredAtom(name.clone()))?;
                    self.reps.iter().map(|t| queue.contains(t)).collect()
                }
                Formula::Not(f) => self.vector_of(f).iter().map(|v| !v).collect(),
                Formula::And(a, b) => zip_with(self.vector_of(a), self.vector_of(b), |x, y| x && y),
                Formula::Or(a, b) => zip_with(self.vector_of(a), self.vector_of(b), |x, y| x || y),
                Formula::Implies(a, b) => {
                    zip_with(self.vector_of(a), self.vector_of(b), |x, y| !x || y)
                }
                Formula::Until(a, b, timing) => {
                    let lhs = self.vector_of(a).to_vec();
                    let rhs = self.vector_of(b).to_vec();
                    self.until_vector(&lhs, &rhs, timing)
                }
                Formula::Eventually(timing, f) => {
                    let all = vec![true; count];
                    let rhs = self.vector_of(f).to_vec();
                    self.until_vector(&all, &rhs, timing)
                }
                Formula::Always(timing, f) => {
                    let child = self.vector_of(f).to_vec();
                    self.always_vector(&child, timing)
                }
            };
            self.vectors.push(vector);
        }
        Ok(())
    }

    fn vector_of(&self, f: &Formula) -> &[bool] {
        let i = self.index.position(f).expect("children precede parents in post-order");
        &self.vectors[i]
    }

    fn is_point_region(&self, j: usize) -> bool {
        j.is_multiple_of(2)
    }

    /// Shifted candidate window `t ⊕ timing` for a query time `t`.
    fn window(&self, t: &BigRational, timing: &Interval) -> Interval {
        let hi = match timing.hi() {
            Endpoint::Finite(h) => Endpoint::Finite(h + t),
            Endpoint::PosInf => Endpoint::PosInf,
            Endpoint::NegInf => unreachable!(),
        };
        Interval::new(t + timing.lo(), timing.lo_closed(), hi, timing.hi_closed())
            .expect("a shifted non-degenerate interval is non-empty")
    }

    /// Decides `lhs U[timing] rhs` at every region representative.
    ///
    /// For a candidate witness inside a gap region, the open interval back to
    /// `t` clips a non-empty sliver of that same gap, so the left argument
    /// must hold on the gap too; the single exception is the witness `t`
    /// itself (timing containing 0), which makes the requirement vacuous.
    fn until_vector(&self, lhs: &[bool], rhs: &[bool], timing: &Interval) -> Vec<bool> {
        let count = self.regions.len();
        let mut out = vec![false; count];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = &self.reps[k];
            let window = self.window(t, timing);
            let mut between_ok = true;
            for (j, region) in self.regions.iter().enumerate().skip(k) {
                if window.precedes(region) {
                    break;
                }
                if let Some(overlap) = window.intersect(region) {
                    let feasible = if self.is_point_region(j) {
                        rhs[j] && between_ok
                    } else {
                        rhs[j]
                            && between_ok
                            && (lhs[j] || (overlap.lo() == t && overlap.lo_closed()))
                    };
                    if feasible {
                        *slot = true;
                        break;
                    }
                }
                // Region j now lies strictly between t and any later witness;
                // the point region {t} itself is excluded by strictness.
                if !(j == k && self.is_point_region(k)) {
                    between_ok &= lhs[j];
                    if !between_ok {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Decides `G[timing] child` at every region representative: every region
    /// overlapping the shifted window must satisfy the child.
    fn always_vector(&self, child: &[bool], timing: &Interval) -> Vec<bool> {
        let count = self.regions.len();
        let mut out = vec![true; count];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = &self.reps[k];
            let window = self.window(t, timing);
            for (j, region) in self.regions.iter().enumerate().skip(k) {
                if window.precedes(region) {
                    break;
                }
                if window.intersect(region).is_some() && !child[j] {
                    *slot = false;
                    break;
                }
            }
        }
        out
    }

    pub fn partition(&self) -> &CriticalPartition {
        &self.partition
    }

    /// Region index of a non-negative time: its partition point, the open gap
    /// it falls in, or the unbounded tail.
    fn region_of(&self, t: &BigRational) -> usize {
        match self.partition.points.binary_search(t) {
            Ok(i) => 2 * i,
            Err(i) => 2 * i - 1,
        }
    }

    /// Truth of the full formula at `time`.
    ///
    /// # Panics
    ///
    /// Panics if `time` is negative; the [`holds`] wrapper validates.
    pub fn holds_at(&self, time: &BigRational) -> bool {
        assert!(!time.is_negative(), "oracle query time must be non-negative");
        let root = self.vectors.last().expect("formulas have at least one subformula");
        root[self.region_of(time)]
    }

    /// Assembles the truth set of the full formula restricted to
    /// `[0, horizon]`, recovering open/closed endpoints from point-region
    /// versus gap-region membership. The caller certifies the result only up
    /// to `horizon` minus the formula's timing depth.
    pub fn truth_set_within(&self, horizon: &BigRational) -> IntervalQueue {
        let window = Interval::closed(BigRational::zero(), horizon.clone())
            .expect("horizon is non-negative");
        let root = self.vectors.last().expect("formulas have at least one subformula");
        let mut parts: Vec<Interval> = Vec::new();
        for (region, truth) in self.regions.iter().zip(root.iter()) {
            if !truth {
                continue;
            }
            let Some(piece) = region.intersect(&window) else { continue };
            match parts.last_mut() {
                Some(last) => match last.union_if_connected(&piece) {
                    Some(merged) => *last = merged,
                    None => parts.push(piece),
                },
                None => parts.push(piece),
            }
        }
        // True runs are separated by false regions, so the parts are already
        // canonical; no construction pass is needed.
        IntervalQueue::from_canonical_parts(parts)
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b.iter()).map(|(x, y)| f(*x, *y)).collect()
}

/// Whether every atom of the formula stops switching at or before `horizon`,
/// so the queue description determines the signal beyond it.
fn atoms_constant_beyond(
    trace: &ExactTrace,
    formula: &Formula,
    horizon: &BigRational,
) -> Result<bool, OracleError> {
    for name in formula.atoms() {
        let queue = trace
            .queue(&name)
            .ok_or_else(|| OracleError::UndeclaredAtom(name.clone()))?;
        for item in queue {
            if item.lo() > horizon {
                return Ok(false);
            }
            if let Endpoint::Finite(hi) = item.hi() {
                if hi > horizon {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn ensure_lookahead(
    trace: &ExactTrace,
    formula: &Formula,
    time: &BigRational,
    horizon: &BigRational,
) -> Result<(), OracleError> {
    let lookahead = formula.timing_depth();
    if let Endpoint::Finite(depth) = &lookahead {
        if time + depth <= *horizon {
            return Ok(());
        }
    }
    if atoms_constant_beyond(trace, formula, horizon)? {
        return Ok(());
    }
    Err(OracleError::HorizonTooSmall { lookahead, horizon: horizon.clone() })
}

/// Whether the signal described by `trace` satisfies `formula` at `time`.
///
/// The horizon guards trust in the description: the query must either look
/// ahead no further than `horizon`, or the atoms must be constant beyond it.
pub fn holds(
    trace: &ExactTrace,
    formula: &Formula,
    time: &BigRational,
    horizon: &BigRational,
) -> Result<bool, OracleError> {
    if time.is_negative() {
        return Err(OracleError::NegativeTime(time.clone()));
    }
    ensure_lookahead(trace, formula, time, horizon)?;
    Ok(RegionTable::build(trace, formula)?.holds_at(time))
}

/// The truth set of `formula` restricted to `[0, horizon]`, evaluated
/// pointwise over the critical partition. Certified on the window
/// `[0, horizon - timing depth]`.
pub fn truth_set(
    trace: &ExactTrace,
    formula: &Formula,
    horizon: &BigRational,
) -> Result<IntervalQueue, OracleError> {
    ensure_lookahead(trace, formula, &BigRational::zero(), horizon)?;
    Ok(RegionTable::build(trace, formula)?.truth_set_within(horizon))
}
