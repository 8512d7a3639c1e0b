//! MITL abstract syntax and desugaring into the primitive grammar
//! `true | atom | !f | f & f | f U[I] f`.
//!
//! The sugared connectives (`false`, `|`, `->`, `F`, `G`) exist only before
//! [`Formula::desugar`]; the verification engine works on the primitive form.
//! `true` stays primitive so that tautologies are not silently rewritten in
//! terms of some atom.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::interval::{Endpoint, Interval};

/// A timing interval on a temporal operator must contain more than one point.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("timing interval {0} is degenerate")]
pub struct DegenerateTimingInterval(pub Interval);

/// An MITL formula over named atomic propositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>, Interval),
    Eventually(Interval, Box<Formula>),
    Always(Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn until(
        lhs: Formula,
        rhs: Formula,
        timing: Interval,
    ) -> Result<Formula, DegenerateTimingInterval> {
        check_timing(timing).map(|t| Formula::Until(Box::new(lhs), Box::new(rhs), t))
    }

    pub fn eventually(timing: Interval, f: Formula) -> Result<Formula, DegenerateTimingInterval> {
        check_timing(timing).map(|t| Formula::Eventually(t, Box::new(f)))
    }

    pub fn always(timing: Interval, f: Formula) -> Result<Formula, DegenerateTimingInterval> {
        check_timing(timing).map(|t| Formula::Always(t, Box::new(f)))
    }

    /// Rewrites every sugared connective into the primitive grammar:
    /// `false` to `!true`, `F[I] f` to `true U[I] f`, `G[I] f` to
    /// `!(true U[I] !f)`, `a | b` to `!(!a & !b)`, and `a -> b` to `!a | b`
    /// expanded. No simplification is performed beyond the rewriting; double
    /// negations introduced by expansion are kept.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::not(Formula::True),
            Formula::Atom(name) => Formula::Atom(name.clone()),
            Formula::Not(f) => Formula::not(f.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => desugared_or(a.desugar(), b.desugar()),
            Formula::Implies(a, b) => {
                desugared_or(Formula::not(a.desugar()), b.desugar())
            }
            Formula::Until(a, b, timing) => {
                Formula::Until(Box::new(a.desugar()), Box::new(b.desugar()), timing.clone())
            }
            Formula::Eventually(timing, f) => {
                Formula::Until(Box::new(Formula::True), Box::new(f.desugar()), timing.clone())
            }
            Formula::Always(timing, f) => Formula::not(Formula::Until(
                Box::new(Formula::True),
                Box::new(Formula::not(f.desugar())),
                timing.clone(),
            )),
        }
    }

    /// Whether only primitive connectives appear.
    pub fn is_primitive(&self) -> bool {
        match self {
            Formula::True | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_primitive(),
            Formula::And(a, b) | Formula::Until(a, b, _) => a.is_primitive() && b.is_primitive(),
            _ => false,
        }
    }

    /// The set of atomic proposition names appearing in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(f) | Formula::Eventually(_, f) | Formula::Always(_, f) => {
                f.collect_atoms(out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(a, b, _) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Post-order index of the distinct subformulas: children before parents,
    /// structurally identical subtrees listed once, the formula itself last.
    pub fn subformulas(&self) -> SubformulaIndex {
        let mut index = SubformulaIndex { items: Vec::new() };
        let mut seen = HashSet::new();
        self.collect_subformulas(&mut index.items, &mut seen);
        index
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>, seen: &mut HashSet<Formula>) {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => {}
            Formula::Not(f) | Formula::Eventually(_, f) | Formula::Always(_, f) => {
                f.collect_subformulas(out, seen)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(a, b, _) => {
                a.collect_subformulas(out, seen);
                b.collect_subformulas(out, seen);
            }
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    /// Worst-case temporal lookahead: the maximum, over nesting chains, of
    /// summed timing-interval suprema. Infinite when an unbounded timing
    /// interval occurs.
    pub fn timing_depth(&self) -> Endpoint {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => {
                Endpoint::Finite(num_traits::Zero::zero())
            }
            Formula::Not(f) => f.timing_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.timing_depth().max(b.timing_depth())
            }
            Formula::Until(a, b, timing) => {
                add_depth(a.timing_depth().max(b.timing_depth()), timing)
            }
            Formula::Eventually(timing, f) | Formula::Always(timing, f) => {
                add_depth(f.timing_depth(), timing)
            }
        }
    }
}

fn desugared_or(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
}

fn check_timing(timing: Interval) -> Result<Interval, DegenerateTimingInterval> {
    if timing.is_degenerate() {
        Err(DegenerateTimingInterval(timing))
    } else {
        Ok(timing)
    }
}

fn add_depth(depth: Endpoint, timing: &Interval) -> Endpoint {
    match (depth, timing.hi()) {
        (Endpoint::Finite(d), Endpoint::Finite(sup)) => Endpoint::Finite(d + sup),
        _ => Endpoint::PosInf,
    }
}

/// The distinct subformulas of a formula in post-order; drives per-row
/// reporting and bottom-up evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubformulaIndex {
    items: Vec<Formula>,
}

impl SubformulaIndex {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Formula] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.items.iter()
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.items.iter().position(|g| g == f)
    }

    /// The full formula: the last entry of the post-order.
    pub fn root(&self) -> &Formula {
        self.items.last().expect("a formula has at least one subformula")
    }
}

impl<'a> IntoIterator for &'a SubformulaIndex {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

// Binding strength, tightest first: unary (!, F, G), U, &, |, ->.
fn binding(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Until(..) => 4,
        Formula::Not(..) | Formula::Eventually(..) | Formula::Always(..) => 5,
        Formula::True | Formula::False | Formula::Atom(_) => 6,
    }
}

struct Paren<'a>(&'a Formula, u8);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if binding(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn fmt_timing(f: &mut fmt::Formatter<'_>, timing: &Interval) -> fmt::Result {
    // The default timing interval is left implicit.
    if timing == &Interval::open_unbounded(num_rational::BigRational::from_integer(0.into())) {
        Ok(())
    } else {
        write!(f, "{}", timing)
    }
}

impl fmt::Display for Formula {
    /// Canonical printing with minimal parentheses; parsing the output yields
    /// the identical tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(name) => write!(f, "{}", name),
            Formula::Not(x) => write!(f, "!{}", Paren(x, 5)),
            Formula::And(a, b) => write!(f, "{} & {}", Paren(a, 3), Paren(b, 4)),
            Formula::Or(a, b) => write!(f, "{} | {}", Paren(a, 2), Paren(b, 3)),
            Formula::Implies(a, b) => write!(f, "{} -> {}", Paren(a, 2), Paren(b, 1)),
            Formula::Until(a, b, timing) => {
                write!(f, "{} U", Paren(a, 5))?;
                fmt_timing(f, timing)?;
                write!(f, " {}", Paren(b, 5))
            }
            Formula::Eventually(timing, x) => {
                write!(f, "F")?;
                fmt_timing(f, timing)?;
                write!(f, " {}", Paren(x, 5))
            }
            Formula::Always(timing, x) => {
                write!(f, "G")?;
                fmt_timing(f, timing)?;
                write!(f, " {}", Paren(x, 5))
            }
        }
    }
}
