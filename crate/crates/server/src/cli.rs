//! Offline subcommands: checking and running traces, listing drop targets,
//! and the finite-model check on a raw problem.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;
use sublink_core::oracle::{countermodel, DEFAULT_LIMIT};
use sublink_core::parser::parse_problem;
use sublink_core::proof::GoalId;
use sublink_core::{Action, ItemRef, ProofState, ReplayError, Trace};

use crate::api::parse_path;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_trace(path: &Path) -> anyhow::Result<Trace> {
    Trace::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Replays a trace, printing one line per action. Returns whether every
/// action applied and the final goal count matched the recorded one.
pub fn check(trace_path: &Path, out: &mut impl Write) -> anyhow::Result<bool> {
    let trace = load_trace(trace_path)?;
    let result = trace.replay_steps(|i, action, steps, state| {
        let rules: Vec<String> = steps.iter().map(|s| s.rule.to_string()).collect();
        let _ = writeln!(
            out,
            "action {i}: ok {} [{}] goals {}",
            action_name(action),
            rules.join(", "),
            state.goals().len()
        );
    });
    match result {
        Ok(state) => {
            writeln!(out, "final goals {}", state.goals().len())?;
            Ok(true)
        }
        Err(ReplayError::Action { index, error }) => {
            writeln!(
                out,
                "action {index}: refused, reason {}: {error}",
                error.reason()
            )?;
            Ok(false)
        }
        Err(ReplayError::GoalCount { expected, found }) => {
            writeln!(out, "final goals {found}, expected {expected}")?;
            Ok(false)
        }
        Err(e @ ReplayError::Problem(_)) => Err(e.into()),
    }
}

fn action_name(a: &Action) -> &'static str {
    match a {
        Action::Click { .. } => "click",
        Action::Dnd { .. } => "dnd",
        Action::AddHyp { .. } => "add_hyp",
        Action::AddExpr { .. } => "add_expr",
        Action::Undo => "undo",
        Action::Redo => "redo",
    }
}

/// A script is either a full trace, whose problem is ignored, or a bare
/// list of actions.
#[derive(Deserialize)]
#[serde(untagged)]
enum Script {
    Trace(Trace),
    Actions(Vec<Action>),
}

fn load_script(path: &Path) -> anyhow::Result<Vec<Action>> {
    let script: Script = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(match script {
        Script::Trace(t) => t.actions,
        Script::Actions(a) => a,
    })
}

fn replay(problem_path: &Path, script: Option<&Path>) -> anyhow::Result<ProofState> {
    let trace = Trace {
        problem: read(problem_path)?,
        actions: match script {
            Some(p) => load_script(p)?,
            None => Vec::new(),
        },
        expected_goals: None,
    };
    Ok(trace.replay()?)
}

/// Replays a script on a problem and prints the final state.
pub fn run(problem: &Path, script: &Path, out: &mut impl Write) -> anyhow::Result<()> {
    let state = replay(problem, Some(script))?;
    if state.is_complete() {
        writeln!(out, "QED")?;
    } else {
        write!(out, "{}", state.render())?;
    }
    Ok(())
}

/// Lists the drop targets in `dst` for the selection `src`, given as
/// `ITEM` or `ITEM:PATH` with a comma-separated path.
pub fn candidates(
    problem: &Path,
    script: Option<&Path>,
    goal: Option<GoalId>,
    src: &str,
    dst: u64,
    out: &mut impl Write,
) -> anyhow::Result<()> {
    let state = replay(problem, script)?;
    let (item, path) = src.split_once(':').unwrap_or((src, ""));
    let item: u64 = item
        .parse()
        .with_context(|| format!("bad item id `{item}`"))?;
    let path = parse_path(path).map_err(anyhow::Error::msg)?;
    let goal = match goal.or_else(|| state.goals().first().map(|g| g.id)) {
        Some(g) => g,
        None => bail!("no open goal"),
    };
    let list = state.candidates(goal, &ItemRef { item, path }, dst)?;
    for c in &list {
        writeln!(out, "{} {:?} {:?}", c.path, c.kind.direction, c.kind.form)?;
    }
    if list.is_empty() {
        writeln!(out, "no candidates")?;
    }
    Ok(())
}

/// Searches for a classical countermodel of the raw problem. Returns
/// whether the hypotheses entail the goal on every domain up to `max_size`.
pub fn oracle(problem: &Path, max_size: usize, out: &mut impl Write) -> anyhow::Result<bool> {
    let p = parse_problem(&read(problem)?)?;
    match countermodel(&p.hypotheses, &p.goal, max_size, DEFAULT_LIMIT)? {
        None => {
            writeln!(out, "entailed on every domain of size at most {max_size}")?;
            Ok(true)
        }
        Some(m) => {
            writeln!(out, "countermodel of size {}", m.size)?;
            Ok(false)
        }
    }
}
