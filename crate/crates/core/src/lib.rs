//! Offline verification of continuous-time signals against Metric Interval
//! Temporal Logic (MITL) formulas, given under- and over-approximating
//! interval queues for the times at which each atomic proposition holds.
//!
//! The pipeline: [`parse::parse_formula`] turns text into a [`Formula`];
//! [`trace::Trace`] carries per-proposition approximations loaded from JSON;
//! [`engine::evaluate`] combines them bottom-up into a sound approximation
//! pair for every subformula; [`engine::verdict`] answers a query time with
//! `Satisfied`, `Violated`, or `Unknown`; and [`engine::report`] quantifies
//! the conservativeness of each row by the Lebesgue measure of its unknown
//! region.
//!
//! Everything is exact: endpoints are arbitrary-precision rationals, and no
//! floating point appears anywhere in the evaluation path.
//!
//! ```
//! use mitliq::{engine, parse, trace::Trace, Verdict};
//!
//! let formula = parse::parse_formula("F[0,2] g").unwrap();
//! let trace = Trace::parse(r#"{"propositions": {"g": {"exact": "{[5,6]}"}}}"#).unwrap();
//! let at = parse::parse_rational("4").unwrap();
//! assert_eq!(engine::verdict(&formula, &trace, &at).unwrap(), Verdict::Satisfied);
//! ```

// Error values carry exact rationals for reporting; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod engine;
pub mod formula;
pub mod interval;
pub mod oracle;
pub mod parse;
pub mod queue;
pub mod trace;

pub use engine::{Approximation, EvalError, Evaluation, Report, ReportRow, Verdict};
pub use formula::{Formula, SubformulaIndex};
pub use interval::{Endpoint, ExtInterval, Interval};
pub use parse::ParseError;
pub use queue::{IntervalQueue, Measure};
pub use trace::{ExactTrace, Trace, TraceError};

/// Exact rational scalar used for all endpoints and times.
pub type Rational = num_rational::BigRational;
