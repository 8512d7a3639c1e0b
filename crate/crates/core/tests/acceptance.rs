//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success (run with `--nocapture` to see them). Numbers, counts, and time
//! budgets are pinned in the assertions.

mod common;

use std::time::{Duration, Instant};

use mitliq::interval::{left_of, right_of};
use mitliq::{engine, oracle, parse, Endpoint, Interval, IntervalQueue, Measure, Rational, Verdict};
use serde_json::json;

fn q(s: &str) -> IntervalQueue {
    parse::parse_queue(s).unwrap()
}

fn iv(s: &str) -> Interval {
    parse::parse_interval(s).unwrap()
}

fn rat(s: &str) -> Rational {
    parse::parse_rational(s).unwrap()
}

/// Criterion 1: the complementation worked example, bit-exact and fast.
#[test]
fn acceptance_1_complement_worked_example() {
    // Warm-up run so the timed run measures the operation, not lazy init.
    let input = q("{(1,2], (3,4]}");
    let _ = input.complement();

    let started = Instant::now();
    let complemented = input.complement();
    let of_empty = IntervalQueue::empty().complement();
    let elapsed = started.elapsed();

    assert_eq!(complemented, q("{[0,1], (2,3], (4,inf)}"));
    assert_eq!(of_empty, q("{[0,inf)}"));
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("acceptance 1 (complement worked example, < 1 ms): PASS ({elapsed:?})");
}

/// Criterion 2: the six arrow-operator identities at a = 1, b = 2.
#[test]
fn acceptance_2_arrow_operator_table() {
    assert_eq!(right_of(Some(&iv("(1,2)"))), Some(iv("[2,inf)")));
    assert_eq!(left_of(Some(&iv("(1,2)"))), Some(iv("[0,1]")));
    assert_eq!(right_of(Some(&iv("(1,2]"))), Some(iv("(2,inf)")));
    assert_eq!(left_of(Some(&iv("[1,2)"))), Some(iv("[0,1)")));
    assert_eq!(right_of(Some(&iv("(1,inf)"))), None);
    assert_eq!(left_of(Some(&iv("[0,2]"))), None);
    println!("acceptance 2 (arrow-operator table): PASS");
}

/// Criterion 3: on exact traces the whole construction is exact, and equals
/// the independent pointwise oracle on the certified window. 500 randomized
/// cases, zero failures, under a minute.
#[test]
fn acceptance_3_exactness_differential_suite() {
    let started = Instant::now();
    let mut rng = common::rng(0x5eed_0003);
    let atoms = ["g1", "g2", "g3"];
    let cases = 500;
    for case in 0..cases {
        let exact = common::grid_exact_trace(&mut rng, &atoms);
        let depth_budget = 1 + (case % 4);
        let formula = common::grid_formula(&mut rng, depth_budget, &atoms);

        let lookahead = match formula.timing_depth() {
            Endpoint::Finite(d) => d,
            other => panic!("generated timing is bounded, got {other}"),
        };
        let window = rat("50");
        let horizon = &lookahead + &window;

        let evaluation = engine::evaluate(&formula, &exact.to_trace()).expect("atoms declared");
        for (sub, approx) in evaluation.rows() {
            assert!(
                approx.is_exact(),
                "case {case}: inexact row {sub} for exact inputs on {formula}"
            );
        }

        let table = oracle::RegionTable::build(&exact, &formula).expect("atoms declared");
        let by_oracle = table.truth_set_within(&horizon);
        assert_eq!(
            common::clip(&evaluation.root().under, &window),
            common::clip(&by_oracle, &window),
            "case {case}: engine and oracle disagree on {formula}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("acceptance 3 (exactness differential, {cases} cases, < 60 s): PASS ({elapsed:?})");
}

/// Criterion 4: three-valued verdicts over perturbed approximations are
/// sound against the oracle on the underlying exact signal. 500 randomized
/// cases at 20 sample times each, zero failures, under a minute.
#[test]
fn acceptance_4_soundness_suite() {
    let started = Instant::now();
    let mut rng = common::rng(0x5eed_0004);
    let atoms = ["g1", "g2", "g3"];
    let cases = 500;
    for case in 0..cases {
        let exact = common::grid_exact_trace(&mut rng, &atoms);
        let depth_budget = 1 + (case % 4);
        let formula = common::grid_formula(&mut rng, depth_budget, &atoms);
        let perturbed = common::perturbed_trace(&mut rng, &exact);

        let evaluation = engine::evaluate(&formula, &perturbed).expect("atoms declared");
        for (sub, approx) in evaluation.rows() {
            assert!(
                approx.under.is_subset_of(&approx.over),
                "case {case}: approximation invariant broken at {sub}"
            );
        }

        let root = evaluation.root();
        let table = oracle::RegionTable::build(&exact, &formula).expect("atoms declared");
        for _ in 0..20 {
            let time = common::grid_rational(&mut rng, 50);
            let verdict = if root.under.contains(&time) {
                Verdict::Satisfied
            } else if !root.over.contains(&time) {
                Verdict::Violated
            } else {
                Verdict::Unknown
            };
            match verdict {
                Verdict::Satisfied => assert!(
                    table.holds_at(&time),
                    "case {case}: SATISFIED at {time} but the signal violates {formula}"
                ),
                Verdict::Violated => assert!(
                    !table.holds_at(&time),
                    "case {case}: VIOLATED at {time} but the signal satisfies {formula}"
                ),
                Verdict::Unknown => {}
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("acceptance 4 (soundness, {cases} cases x 20 times, < 60 s): PASS ({elapsed:?})");
}

/// Criterion 5: the fixed derived pipeline scenario, compared row by row
/// against a golden file, with the oracle backing the derivation and the
/// validity/contradiction rows inheriting the nested row's gap unchanged.
#[test]
fn acceptance_5_figure_analogue_pipeline() {
    let started = Instant::now();

    let exact = mitliq::ExactTrace::from_queues([
        ("g1".to_string(), q("{[2,5], [8,9]}")),
        ("g2".to_string(), q("{[4,6]}")),
    ]);
    let trace = exact.approximate();

    let inputs = [
        "g1",
        "g2",
        "F[0,1] g2",
        "F[0,2] F[0,1] g2",
        "F[0,2] F[0,1] g2 | !(F[0,2] F[0,1] g2)",
        "F[0,2] F[0,1] g2 & !(F[0,2] F[0,1] g2)",
    ];

    let horizon = rat("30");
    let window = rat("27");
    let mut produced = Vec::new();
    let mut gaps = Vec::new();
    for input in inputs {
        let formula = parse::parse_formula(input).unwrap();
        let report = engine::report(&formula, &trace).unwrap();
        let root = report.root();
        produced.push(json!({
            "input": input,
            "formula": root.formula,
            "under": root.approximation.under.to_string(),
            "over": root.approximation.over.to_string(),
            "delta": root.delta.to_string(),
            "delta_bounded": root.delta_bounded.as_ref().map(|d| d.to_string()),
        }));
        gaps.push(root.approximation.gap());

        // The derivation is oracle-backed: on the exact signal the bounds
        // bracket the true truth set over the certified window.
        let truth = oracle::RegionTable::build(&exact, &formula)
            .unwrap()
            .truth_set_within(&horizon);
        let truth = common::clip(&truth, &window);
        assert!(
            common::clip(&root.approximation.under, &window).is_subset_of(&truth),
            "{input}: under-approximation escapes the truth set"
        );
        assert!(
            truth.is_subset_of(&common::clip(&root.approximation.over, &window)),
            "{input}: over-approximation misses the truth set"
        );
    }

    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/figure_analogue.json")).unwrap();
    assert_eq!(serde_json::Value::Array(produced), golden);

    // Both atoms start with a measure-null gap.
    for input in &inputs[..2] {
        let formula = parse::parse_formula(input).unwrap();
        let report = engine::report(&formula, &trace).unwrap();
        assert_eq!(report.root().delta, Measure::zero(), "{input}");
    }

    // Structural blindness: the nested formula's gap propagates unchanged
    // into the validity and the contradiction built from it.
    let nested_gap = &gaps[3];
    assert_eq!(nested_gap, &q("{[1,1], [6,6]}"));
    assert_eq!(&gaps[4], nested_gap, "validity row gap");
    assert_eq!(&gaps[5], nested_gap, "contradiction row gap");

    // Delta never decreases along the eventually chain in this scenario.
    let chain: Vec<Measure> = [1usize, 2, 3].iter().map(|&i| gaps[i].measure()).collect();
    for pair in chain.windows(2) {
        assert!(pair[0] <= pair[1], "delta decreased along the chain");
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 5 (figure analogue pipeline, golden JSON, < 1 s): PASS ({elapsed:?})");
}

/// Criterion 6: the construction algorithm on 1000 random collections:
/// canonical output, union preservation at 50 sampled points, permutation
/// invariance. Zero failures.
#[test]
fn acceptance_6_construction_properties() {
    let mut rng = common::rng(0x5eed_0006);
    for case in 0..1000 {
        let n = rand::Rng::random_range(&mut rng, 0..=10usize);
        let inputs: Vec<Interval> = (0..n)
            .map(|_| common::grid_interval_maybe_unbounded(&mut rng))
            .collect();
        let built = IntervalQueue::construct(inputs.clone());
        assert!(built.is_canonical(), "case {case}: output not canonical");

        for _ in 0..50 {
            let t = common::grid_rational(&mut rng, common::GRID_MAX + 5);
            let expected = inputs.iter().any(|item| item.contains(&t));
            assert_eq!(built.contains(&t), expected, "case {case}: union changed at {t}");
        }

        let mut permuted = inputs.clone();
        for i in (1..permuted.len()).rev() {
            let j = rand::Rng::random_range(&mut rng, 0..=i);
            permuted.swap(i, j);
        }
        assert_eq!(
            IntervalQueue::construct(permuted),
            built,
            "case {case}: construction depends on input order"
        );
    }
    println!("acceptance 6 (construction properties, 1000 cases): PASS");
}

/// Criterion 7: queue-level algebra laws on 500 random cases: complement is
/// an involution on unions, conjunction is pointwise, and measure adds up
/// across a difference split.
#[test]
fn acceptance_7_queue_algebra_laws() {
    let mut rng = common::rng(0x5eed_0007);
    for case in 0..500 {
        let a = common::grid_queue(&mut rng, 6);
        let b = common::grid_queue(&mut rng, 6);

        // Involution, checked canonically and at sampled points.
        let double = a.complement().complement();
        assert_eq!(double, a, "case {case}: complement is not involutive");
        for _ in 0..20 {
            let t = common::grid_rational(&mut rng, common::GRID_MAX + 5);
            assert_eq!(double.contains(&t), a.contains(&t), "case {case} at {t}");
            assert_eq!(
                a.conjoin(&b).contains(&t),
                a.contains(&t) && b.contains(&t),
                "case {case}: conjunction membership at {t}"
            );
        }

        // measure(a) = measure(a \ b) + measure(a ∩ b) for bounded a.
        let total = a.measure();
        let outside = a.difference(&b).measure();
        let inside = a.conjoin(&b).measure();
        match (total, outside, inside) {
            (Measure::Finite(t), Measure::Finite(o), Measure::Finite(i)) => {
                assert_eq!(t, o + i, "case {case}: measure not additive");
            }
            other => panic!("case {case}: bounded queues have finite measure, got {other:?}"),
        }
    }
    println!("acceptance 7 (queue algebra laws, 500 cases): PASS");
}

/// Criterion 8: interiors of closures stay inside the original interval, on
/// 1000 random intervals including singletons and unbounded ones.
#[test]
fn acceptance_8_interior_of_closure() {
    let mut rng = common::rng(0x5eed_0008);
    for case in 0..1000 {
        let interval = match case % 10 {
            0 => Interval::singleton(common::grid_rational(&mut rng, common::GRID_MAX)),
            _ => common::grid_interval_maybe_unbounded(&mut rng),
        };
        if let Some(inner) = interval.closure().interior() {
            assert!(
                inner.is_subset_of(&interval),
                "case {case}: Int(Cl({interval})) = {inner} escapes"
            );
        }
    }
    println!("acceptance 8 (interior of closure containment, 1000 cases): PASS");
}
