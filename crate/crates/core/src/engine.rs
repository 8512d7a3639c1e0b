//! The verification engine: inductive construction of under- and
//! over-approximating interval queues for every subformula, three-valued
//! verdicts, and the conservativeness gap.
//!
//! The rules, per connective, with `~`, `⊓`, `⊡` the queue operators:
//!
//! ```text
//! Q±(true)       = {[0,inf)}
//! Q±(g)          = P±(g)
//! Q+(!f)         = ~Q-(f)          Q-(!f)  = ~Q+(f)
//! Q±(f & g)      = Q±(f) ⊓ Q±(g)
//! Q±(f U[I] g)   = Q±(f) ⊡[I] Q±(g)
//! ```
//!
//! Note the swap on negation: the complement of an under-approximation
//! over-approximates the complement. The rules are applied uniformly, with no
//! special-casing of tautologies: structural knowledge is deliberately not
//! exploited, so a validity like `f | !f` can still carry an unknown region
//! inherited from its subformulas.
//!
//! A time `t` in the under-approximation of the full formula proves
//! satisfaction at `t`; a time outside the over-approximation proves
//! violation; anywhere in between the verdict is unknown.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;
use thiserror::Error;

use crate::formula::{Formula, SubformulaIndex};
use crate::interval::Interval;
use crate::queue::{IntervalQueue, Measure};
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atomic proposition {0} is not declared in the trace")]
    UndeclaredAtom(String),
    #[error("query time {0} is negative")]
    NegativeTime(BigRational),
    /// Unreachable through the parser and the formula constructors, which
    /// both reject degenerate timing; guards direct construction.
    #[error("until timing interval {0} is degenerate")]
    DegenerateTiming(Interval),
}

/// A pair of interval queues bracketing a truth set: the union of `under` is
/// contained in it, the union of `over` contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub under: IntervalQueue,
    pub over: IntervalQueue,
}

impl Approximation {
    /// The whole domain, both sides: the approximation of `true`.
    pub fn everything() -> Approximation {
        Approximation {
            under: IntervalQueue::everything(),
            over: IntervalQueue::everything(),
        }
    }

    /// The inconclusive region `∪over \ ∪under`.
    pub fn gap(&self) -> IntervalQueue {
        self.over.difference(&self.under)
    }

    /// The conservativeness measure: the Lebesgue measure of the gap.
    pub fn delta(&self) -> Measure {
        self.gap().measure()
    }

    pub fn is_exact(&self) -> bool {
        self.under == self.over
    }
}

/// A three-valued verdict at a query time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfied,
    Violated,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfied => write!(f, "SATISFIED"),
            Verdict::Violated => write!(f, "VIOLATED"),
            Verdict::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

/// The per-subformula result of an evaluation: approximations aligned with
/// the post-order subformula index of the desugared formula.
#[derive(Clone, Debug)]
pub struct Evaluation {
    index: SubformulaIndex,
    approximations: Vec<Approximation>,
}

impl Evaluation {
    pub fn index(&self) -> &SubformulaIndex {
        &self.index
    }

    pub fn approximation_of(&self, f: &Formula) -> Option<&Approximation> {
        self.index.position(f).map(|i| &self.approximations[i])
    }

    /// The approximation of the full formula.
    pub fn root(&self) -> &Approximation {
        self.approximations.last().expect("index is non-empty")
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Formula, &Approximation)> {
        self.index.iter().zip(self.approximations.iter())
    }
}

/// Computes approximations for every distinct subformula, bottom-up, each
/// distinct subformula evaluated once. Sugared input is desugared first.
pub fn evaluate(formula: &Formula, trace: &Trace) -> Result<Evaluation, EvalError> {
    let desugared = formula.desugar();
    let index = desugared.subformulas();
    let mut approximations: Vec<Approximation> = Vec::with_capacity(index.len());
    let mut slot: HashMap<&Formula, usize> = HashMap::with_capacity(index.len());

    for (i, sub) in index.iter().enumerate() {
        let approx = match sub {
            Formula::True => Approximation::everything(),
            Formula::Atom(name) => trace
                .approximation(name)
                .cloned()
                .ok_or_else(|| EvalError::UndeclaredAtom(name.clone()))?,
            Formula::Not(child) => {
                let child = &approximations[slot[child.as_ref()]];
                Approximation {
                    under: child.over.complement(),
                    over: child.under.complement(),
                }
            }
            Formula::And(lhs, rhs) => {
                let lhs = &approximations[slot[lhs.as_ref()]];
                let rhs = &approximations[slot[rhs.as_ref()]];
                Approximation {
                    under: lhs.under.conjoin(&rhs.under),
                    over: lhs.over.conjoin(&rhs.over),
                }
            }
            Formula::Until(lhs, rhs, timing) => {
                let lhs = &approximations[slot[lhs.as_ref()]];
                let rhs = &approximations[slot[rhs.as_ref()]];
                let until = |a: &IntervalQueue, b: &IntervalQueue| {
                    a.until(b, timing)
                        .map_err(|_| EvalError::DegenerateTiming(timing.clone()))
                };
                Approximation {
                    under: until(&lhs.under, &rhs.under)?,
                    over: until(&lhs.over, &rhs.over)?,
                }
            }
            sugar => unreachable!("desugared formula contains {sugar:?}"),
        };
        approximations.push(approx);
        slot.insert(sub, i);
    }

    Ok(Evaluation { index, approximations })
}

/// The three-valued verdict for `formula` at `time`.
pub fn verdict(formula: &Formula, trace: &Trace, time: &BigRational) -> Result<Verdict, EvalError> {
    if time.is_negative() {
        return Err(EvalError::NegativeTime(time.clone()));
    }
    let evaluation = evaluate(formula, trace)?;
    let root = evaluation.root();
    Ok(if root.under.contains(time) {
        Verdict::Satisfied
    } else if !root.over.contains(time) {
        Verdict::Violated
    } else {
        Verdict::Unknown
    })
}

/// One report row: a subformula in canonical text, its approximation, the
/// gap measure, and (only when that measure is infinite and the trace has a
/// horizon `b`) the gap measure restricted to `[0, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub formula: String,
    pub approximation: Approximation,
    pub delta: Measure,
    pub delta_bounded: Option<BigRational>,
}

/// Per-subformula report over the post-order index, the full formula last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    /// The row of the full formula.
    pub fn root(&self) -> &ReportRow {
        self.rows.last().expect("reports are non-empty")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    json!({
                        "formula": row.formula,
                        "under": row.approximation.under.to_string(),
                        "over": row.approximation.over.to_string(),
                        "delta": row.delta.to_string(),
                        "delta_bounded": row.delta_bounded.as_ref().map(|d| d.to_string()),
                    })
                })
                .collect(),
        )
    }
}

/// Evaluates and assembles the per-subformula report.
pub fn report(formula: &Formula, trace: &Trace) -> Result<Report, EvalError> {
    let evaluation = evaluate(formula, trace)?;
    let window = trace.horizon().map(|b| {
        IntervalQueue::singleton(
            Interval::closed(BigRational::from_integer(0.into()), b.clone())
                .expect("horizons are non-negative"),
        )
    });
    let rows = evaluation
        .rows()
        .map(|(sub, approximation)| {
            let delta = approximation.delta();
            let delta_bounded = match (&delta, &window) {
                (Measure::Infinite, Some(window)) => {
                    match approximation.gap().conjoin(window).measure() {
                        Measure::Finite(v) => Some(v),
                        Measure::Infinite => unreachable!("bounded window has finite measure"),
                    }
                }
                _ => None,
            };
            ReportRow {
                formula: sub.to_string(),
                approximation: approximation.clone(),
                delta,
                delta_bounded,
            }
        })
        .collect();
    Ok(Report { rows })
}
