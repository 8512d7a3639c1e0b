//! Seeded random generators shared by the property and acceptance suites.
//!
//! Values live on a small rational grid (denominators up to 8, magnitudes up
//! to 40) so that generated endpoints collide often enough to exercise the
//! touching/holed configurations that drive the interesting queue behavior.

#![allow(dead_code)]

use mitliq::{Formula, Interval, IntervalQueue, Rational, Trace};
use num_bigint::BigInt;
use rand::prelude::*;
use rand::rngs::StdRng;

pub const GRID_MAX: i64 = 40;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational in `[0, max]` with denominator at most 8.
pub fn grid_rational(rng: &mut StdRng, max: i64) -> Rational {
    let denom = rng.random_range(1..=8i64);
    let numer = rng.random_range(0..=max * denom);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A positive rational in `(0, max]` with denominator at most 8.
pub fn positive_grid_rational(rng: &mut StdRng, max: i64) -> Rational {
    let denom = rng.random_range(1..=8i64);
    let numer = rng.random_range(1..=max * denom);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A bounded interval with grid endpoints in `[0, GRID_MAX]`; singletons come
/// up on purpose.
pub fn grid_interval(rng: &mut StdRng) -> Interval {
    let lo = grid_rational(rng, GRID_MAX - 2);
    if rng.random_ratio(1, 10) {
        return Interval::singleton(lo);
    }
    let hi = &lo + positive_grid_rational(rng, 4);
    Interval::new(
        lo,
        rng.random_bool(0.5),
        mitliq::Endpoint::Finite(hi),
        rng.random_bool(0.5),
    )
    .expect("positive span")
}

/// Like [`grid_interval`] but occasionally unbounded.
pub fn grid_interval_maybe_unbounded(rng: &mut StdRng) -> Interval {
    if rng.random_ratio(1, 12) {
        let lo = grid_rational(rng, GRID_MAX);
        if rng.random_bool(0.5) {
            Interval::closed_unbounded(lo)
        } else {
            Interval::open_unbounded(lo)
        }
    } else {
        grid_interval(rng)
    }
}

/// A canonical queue built from up to `max_items` random bounded intervals.
pub fn grid_queue(rng: &mut StdRng, max_items: usize) -> IntervalQueue {
    let n = rng.random_range(0..=max_items);
    IntervalQueue::construct((0..n).map(|_| grid_interval(rng)))
}

/// A non-degenerate bounded timing interval with grid endpoints.
pub fn grid_timing(rng: &mut StdRng) -> Interval {
    let lo = grid_rational(rng, 10);
    let hi = &lo + positive_grid_rational(rng, 6);
    Interval::new(
        lo,
        rng.random_bool(0.5),
        mitliq::Endpoint::Finite(hi),
        rng.random_bool(0.5),
    )
    .expect("positive span")
}

/// A random formula of node depth at most `depth` over the given atoms,
/// sugar included, every timing interval bounded and non-degenerate.
pub fn grid_formula(rng: &mut StdRng, depth: usize, atoms: &[&str]) -> Formula {
    if depth == 0 || rng.random_ratio(1, 6) {
        return match rng.random_range(0..8u8) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(*atoms.choose(rng).expect("at least one atom")),
        };
    }
    match rng.random_range(0..10u8) {
        0 | 1 => Formula::not(grid_formula(rng, depth - 1, atoms)),
        2 | 3 => Formula::and(
            grid_formula(rng, depth - 1, atoms),
            grid_formula(rng, depth - 1, atoms),
        ),
        4 => Formula::or(
            grid_formula(rng, depth - 1, atoms),
            grid_formula(rng, depth - 1, atoms),
        ),
        5 => Formula::implies(
            grid_formula(rng, depth - 1, atoms),
            grid_formula(rng, depth - 1, atoms),
        ),
        6 | 7 => Formula::until(
            grid_formula(rng, depth - 1, atoms),
            grid_formula(rng, depth - 1, atoms),
            grid_timing(rng),
        )
        .expect("non-degenerate timing"),
        8 => Formula::eventually(grid_timing(rng), grid_formula(rng, depth - 1, atoms))
            .expect("non-degenerate timing"),
        _ => Formula::always(grid_timing(rng), grid_formula(rng, depth - 1, atoms))
            .expect("non-degenerate timing"),
    }
}

/// Shrinks a queue into an under-approximation: items are dropped, trimmed
/// inward, or opened at the endpoints.
pub fn shrink_queue(rng: &mut StdRng, queue: &IntervalQueue) -> IntervalQueue {
    let mut items = Vec::new();
    for item in queue {
        if rng.random_ratio(1, 8) {
            continue;
        }
        let lo = item.lo() + small_delta(rng);
        let hi = match item.hi() {
            mitliq::Endpoint::Finite(h) => mitliq::Endpoint::Finite(h - small_delta(rng)),
            unbounded => unbounded.clone(),
        };
        let lo_closed = item.lo_closed() && rng.random_bool(0.7);
        let hi_closed = item.hi_closed() && rng.random_bool(0.7);
        items.extend(Interval::new(lo, lo_closed, hi, hi_closed));
    }
    let shrunk = IntervalQueue::construct(items);
    debug_assert!(shrunk.is_subset_of(queue));
    shrunk
}

/// Grows a queue into an over-approximation: items are widened, closed at the
/// endpoints, and sometimes joined by spurious extras.
pub fn grow_queue(rng: &mut StdRng, queue: &IntervalQueue) -> IntervalQueue {
    let mut items: Vec<Interval> = Vec::new();
    for item in queue {
        let lo = {
            let widened = item.lo() - small_delta(rng);
            if widened < Rational::from_integer(0.into()) {
                Rational::from_integer(0.into())
            } else {
                widened
            }
        };
        let hi = match item.hi() {
            mitliq::Endpoint::Finite(h) => mitliq::Endpoint::Finite(h + small_delta(rng)),
            unbounded => unbounded.clone(),
        };
        let lo_closed = item.lo_closed() || rng.random_bool(0.3);
        let hi_closed = matches!(hi, mitliq::Endpoint::Finite(_)) && (item.hi_closed() || rng.random_bool(0.3));
        items.push(Interval::new(lo, lo_closed, hi, hi_closed).expect("widened stays non-empty"));
    }
    if rng.random_ratio(1, 4) {
        items.push(grid_interval(rng));
    }
    let grown = IntervalQueue::construct(items);
    debug_assert!(queue.is_subset_of(&grown));
    grown
}

fn small_delta(rng: &mut StdRng) -> Rational {
    if rng.random_bool(0.5) {
        Rational::from_integer(0.into())
    } else {
        let denom = rng.random_range(1..=8i64);
        let numer = rng.random_range(0..=2 * denom);
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

/// An exact trace over the given atoms with up to six intervals each.
pub fn grid_exact_trace(rng: &mut StdRng, atoms: &[&str]) -> mitliq::ExactTrace {
    mitliq::ExactTrace::from_queues(
        atoms
            .iter()
            .map(|name| (name.to_string(), grid_queue(rng, 6))),
    )
}

/// Wraps an exact trace in independently shrunk/grown per-atom bounds.
pub fn perturbed_trace(rng: &mut StdRng, exact: &mitliq::ExactTrace) -> Trace {
    Trace::from_bounds(exact.propositions().map(|(name, queue)| {
        (
            name.clone(),
            shrink_queue(rng, queue),
            grow_queue(rng, queue),
        )
    }))
    .expect("shrink/grow preserves containment")
}

/// Clips a queue to `[0, bound]`; both sides of a differential comparison go
/// through this same restriction.
pub fn clip(queue: &IntervalQueue, bound: &Rational) -> IntervalQueue {
    let window = Interval::closed(Rational::from_integer(0.into()), bound.clone())
        .expect("bound is non-negative");
    IntervalQueue::construct(queue.iter().filter_map(|item| item.intersect(&window)))
}
