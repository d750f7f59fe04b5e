//! One PASS/FAIL line per acceptance criterion, with the pinned limits
//! below. Run with `cargo test -p sublink-core --test acceptance -- --nocapture`
//! to see the report.

mod common;

use std::time::{Duration, Instant};

use common::{load, rules, traces_dir, transcript, Case, Report, SHIPPED};
use sublink_core::link::NotALinkage;
use sublink_core::proof::Action;
use sublink_core::unify::{Role, UnifyFailure};

/// Limit for each worked derivation.
const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
/// Limit for each property suite.
const SUITE_LIMIT: Duration = Duration::from_secs(60);
/// Minimum number of cases for each random suite.
const MIN_CASES: usize = 1000;

type Outcome = Result<String, String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, found: T, expected: T) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, found {found:?}"))
    }
}

fn suite(r: Report) -> Outcome {
    if r.ok(MIN_CASES) {
        Ok(format!("{} cases", r.cases))
    } else if r.failures.is_empty() {
        Err(format!("only {} cases", r.cases))
    } else {
        Err(format!(
            "{} cases, {} failures, first: {}",
            r.cases,
            r.failures.len(),
            r.failures[0]
        ))
    }
}

fn aristotle_backward() -> Outcome {
    let (res, trace, _) =
        Case::new().backward("forall x. Hum(x) => Mort(x)", &[0, 1], "Mort(Socr)", &[]);
    expect("result", res.as_str(), "Hum(Socr)")?;
    expect("trace", trace, rules(&["L∀i", "L⇒2", "id", "neur"]))?;
    Ok("Hum(Socr)".into())
}

fn aristotle_forward() -> Outcome {
    let (res, trace, _) =
        Case::new().forward("forall x. Hum(x) => Mort(x)", &[0, 0], "Hum(Socr)", &[]);
    expect("result", res.as_str(), "Mort(Socr)")?;
    expect("trace", trace, rules(&["F∀i", "F⇒1", "id", "neul"]))?;
    Ok("Mort(Socr)".into())
}

fn peano() -> Outcome {
    let mut c = Case::peano();
    let (res, _, _) = c.backward(
        "forall x. forall y. x + S(y) = S(x + y)",
        &[0, 0, 0],
        "1 + 1 = 2",
        &[0],
    );
    expect("first rewrite", res.as_str(), "S(1 + 0) = 2")?;
    let (res, _, _) = c.backward("forall x. x = x + 0", &[0, 1], "S(1 + 0) = 2", &[0, 0]);
    // S(1) prints as the numeral 2
    let s1 = c.f("S(1) = 2");
    expect("second rewrite", res, c.printer().formula(&s1))?;
    let trace = load("peano");
    let mut before_last = String::new();
    let state = trace
        .replay_steps(|i, _, _, st| {
            if i + 2 == trace.actions.len() {
                before_last = st.render();
            }
        })
        .map_err(|e| e.to_string())?;
    if !matches!(trace.actions.last(), Some(Action::Click { .. }))
        || !before_last.contains("red 2 = 2")
    {
        return Err("the last action is not a click on 2 = 2".into());
    }
    if !state.is_complete() {
        return Err("goal left open".into());
    }
    Ok("1 + 1 = 2 closed".into())
}

fn displayed_results() -> Outcome {
    let checks: Vec<(&str, String, &str)> = vec![
        (
            "A /\\ B used for A",
            Case::new().backward("A /\\ B", &[0], "A", &[]).0,
            "true",
        ),
        (
            "A |- (B /\\ A) \\/ C",
            Case::new().backward("A", &[], "(B /\\ A) \\/ C", &[0, 1]).0,
            "B \\/ C",
        ),
        (
            "A \\/ B * ~A",
            Case::new().forward("A \\/ B", &[0], "~A", &[0]).0,
            "B",
        ),
        (
            "A => B |- B",
            Case::new().backward("A => B", &[1], "B", &[]).0,
            "A",
        ),
        (
            "curried",
            Case::new()
                .backward("A => B => C", &[1, 1], "D \\/ C", &[1])
                .0,
            "D \\/ A /\\ B",
        ),
        (
            "uncurried",
            Case::new()
                .backward("A /\\ B => C", &[1], "D \\/ C", &[1])
                .0,
            "D \\/ A /\\ B",
        ),
        (
            "B => A => C * A",
            Case::new().forward("B => A => C", &[1, 0], "A", &[]).0,
            "B => C",
        ),
        (
            "B /\\ A => C * D => A",
            Case::new()
                .forward("B /\\ A => C", &[0, 1], "D => A", &[1])
                .0,
            "B /\\ D => C",
        ),
        (
            "commutativity under quantifiers",
            Case::new()
                .backward(
                    "forall x. forall y. x + y = y + x",
                    &[0, 0, 0],
                    "forall a. exists b. A(f(a) + g(b))",
                    &[0, 0, 0],
                )
                .0,
            "forall a. exists b. A(g(b) + f(a))",
        ),
        (
            "partial instantiation, forward",
            Case::new()
                .forward(
                    "forall x. forall y. P(y) => R(x,y)",
                    &[0, 0, 0],
                    "P(a)",
                    &[],
                )
                .0,
            "forall x. R(x,a)",
        ),
        (
            "partial instantiation, backward",
            Case::new()
                .backward(
                    "P(a)",
                    &[],
                    "exists x. exists y. P(y) /\\ R(x,y)",
                    &[0, 0, 0],
                )
                .0,
            "exists x. R(x,a)",
        ),
        (
            "conditional rewrite",
            Case::new()
                .backward(
                    "forall x. ~x = 0 => f(x) = g(x)",
                    &[0, 1, 0],
                    "A(f(t))",
                    &[0],
                )
                .0,
            "~t = 0 /\\ A(g(t))",
        ),
        (
            "conditional rewrite under a quantifier",
            Case::new()
                .backward(
                    "forall x. ~x = 0 => f(x) = g(x)",
                    &[0, 1, 0],
                    "exists y. A(f(y))",
                    &[0, 0],
                )
                .0,
            "exists y. ~y = 0 /\\ A(g(y))",
        ),
    ];
    let n = checks.len();
    for (what, found, expected) in checks {
        expect(what, found.as_str(), expected)?;
    }
    Ok(format!("{n} results"))
}

fn acyclicity() -> Outcome {
    let mut c = Case::new();
    let (res, _, _) = c.backward(
        "exists y. forall x. R(x,y)",
        &[0, 0],
        "forall x'. exists y'. R(x',y')",
        &[0, 0],
    );
    expect("result", res.as_str(), "true")?;
    let refused = c.link(
        ("forall x. exists y. R(x,y)", &[0, 0], Role::Hypothesis),
        ("exists y'. forall x'. R(x',y')", &[0, 0], Role::Conclusion),
    );
    expect(
        "contraposed",
        refused.err(),
        Some(NotALinkage::UnificationFailure {
            failure: UnifyFailure::Cycle,
        }),
    )?;
    Ok("closed, contraposed refused".into())
}

fn focusing() -> Outcome {
    let (res, _, _) = Case::new().backward("A \\/ B", &[0], "B \\/ A", &[1]);
    expect("result", res.as_str(), "B => B \\/ A")?;
    Ok(res)
}

fn edukera() -> Outcome {
    let trace = load("edukera");
    let state = trace.replay().map_err(|e| e.to_string())?;
    if !state.is_complete() {
        return Err(format!("{} goals open", state.goals().len()));
    }
    Ok(format!("{} actions, all goals closed", trace.actions.len()))
}

fn determinism() -> Outcome {
    for name in SHIPPED {
        let trace = load(name);
        let first = transcript(&trace);
        expect(name, transcript(&trace).as_str(), first.as_str())?;
        let stored = std::fs::read_to_string(traces_dir().join(format!("{name}.transcript")))
            .map_err(|e| e.to_string())?;
        expect(name, first.as_str(), stored.as_str())?;
    }
    Ok(format!("{} traces", SHIPPED.len()))
}

fn unify_suite() -> Outcome {
    let (r, cycles) = common::unify_vs_brute_force();
    if cycles == 0 {
        return Err("no cyclic case was generated".into());
    }
    suite(r).map(|s| format!("{s}, {cycles} cycles"))
}

fn semantic_suite() -> Outcome {
    let ground = suite(common::semantic(2, 0))?;
    let quantified = suite(common::semantic(3, 2))?;
    Ok(format!("ground {ground}, quantified {quantified}"))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, &str, Duration, fn() -> Outcome)> = vec![
        ("1", "aristotle backward", GOLDEN_LIMIT, aristotle_backward),
        ("2", "aristotle forward", GOLDEN_LIMIT, aristotle_forward),
        ("3", "peano rewriting", GOLDEN_LIMIT, peano),
        ("4", "displayed results", GOLDEN_LIMIT, displayed_results),
        ("5", "acyclicity", GOLDEN_LIMIT, acyclicity),
        ("6", "focusing", GOLDEN_LIMIT, focusing),
        ("7", "edukera trace", GOLDEN_LIMIT, edukera),
        ("8", "productivity", SUITE_LIMIT, || {
            suite(common::productivity(1))
        }),
        ("9", "polarity preservation", SUITE_LIMIT, || {
            suite(common::polarity(5))
        }),
        ("10", "semantic correctness", SUITE_LIMIT, semantic_suite),
        ("11", "unit elimination", SUITE_LIMIT, || {
            suite(common::units(5, 3))
        }),
        ("12", "unify vs brute force", SUITE_LIMIT, unify_suite),
        ("13", "parser round trip", SUITE_LIMIT, || {
            suite(common::round_trip(4, MIN_CASES))
        }),
        ("R", "replay determinism", GOLDEN_LIMIT, determinism),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}, but took longer than {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS {id:>2} {name}: {detail} ({:.3} s)",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                println!(
                    "FAIL {id:>2} {name}: {why} ({:.3} s)",
                    elapsed.as_secs_f64()
                );
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
