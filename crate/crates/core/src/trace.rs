//! Recorded proofs: a problem text plus the actions applied to it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::link::TraceStep;
use crate::parser::{parse_problem, ParseError};
use crate::proof::{Action, ActionError, ProofState};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    /// Problem file text.
    pub problem: String,
    pub actions: Vec<Action>,
    /// Number of open goals once every action is applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_goals: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("problem: {0}")]
    Problem(#[from] ParseError),
    #[error("action {index}: {error}")]
    Action { index: usize, error: ActionError },
    #[error("expected {expected} open goals, found {found}")]
    GoalCount { expected: usize, found: usize },
}

impl Trace {
    /// The trace of everything applied so far in `state`.
    pub fn of(problem: &str, state: &ProofState) -> Trace {
        Trace {
            problem: problem.to_string(),
            actions: state.log().to_vec(),
            expected_goals: Some(state.goals().len()),
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Trace> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces serialize")
    }

    /// Replays the trace, stopping at the first failing action.
    pub fn replay(&self) -> Result<ProofState, ReplayError> {
        self.replay_steps(|_, _, _, _| {})
    }

    /// Like [`Trace::replay`], reporting each applied action with its rule
    /// trace and the resulting state.
    pub fn replay_steps(
        &self,
        mut report: impl FnMut(usize, &Action, &[TraceStep], &ProofState),
    ) -> Result<ProofState, ReplayError> {
        let problem = parse_problem(&self.problem)?;
        let mut state = ProofState::new(&problem);
        for (index, action) in self.actions.iter().enumerate() {
            let steps = state
                .apply(action)
                .map_err(|error| ReplayError::Action { index, error })?;
            report(index, action, &steps, &state);
        }
        if let Some(expected) = self.expected_goals {
            let found = state.goals().len();
            if found != expected {
                return Err(ReplayError::GoalCount { expected, found });
            }
        }
        Ok(state)
    }
}
