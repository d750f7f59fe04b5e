//! In-memory proof sessions, optionally snapshotted to disk as traces.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::Serialize;
use sublink_core::link::TraceStep;
use sublink_core::parser::{parse_problem, ParseError};
use sublink_core::proof::StateView;
use sublink_core::{Action, ActionError, ProofState, Trace};
use tokio::sync::{Mutex, RwLock};
use uuid::Uuid;

pub struct Session {
    pub id: Uuid,
    /// Problem file text, kept verbatim for trace export.
    pub problem: String,
    pub state: ProofState,
    pub created: u64,
    pub updated: u64,
}

/// A state as sent to clients.
#[derive(Clone, Debug, Serialize)]
pub struct StatePayload {
    #[serde(flatten)]
    pub view: StateView,
    pub solved: bool,
}

impl Session {
    fn new(problem: &str) -> Result<Session, ParseError> {
        let parsed = parse_problem(problem)?;
        let now = now();
        Ok(Session {
            id: Uuid::new_v4(),
            problem: problem.to_string(),
            state: ProofState::new(&parsed),
            created: now,
            updated: now,
        })
    }

    pub fn payload(&self) -> StatePayload {
        StatePayload {
            view: self.state.view(),
            solved: self.state.is_complete(),
        }
    }

    pub fn trace(&self) -> Trace {
        Trace::of(&self.problem, &self.state)
    }

    pub fn apply(&mut self, action: &Action) -> Result<Vec<TraceStep>, ActionError> {
        let steps = self.state.apply(action)?;
        self.updated = now();
        Ok(steps)
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// All live sessions. Each session has its own lock, so actions on one
/// session are serialized while other sessions proceed.
#[derive(Default)]
pub struct Store {
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>,
    persist: Option<PathBuf>,
}

impl Store {
    pub fn new(persist: Option<PathBuf>) -> Store {
        Store {
            sessions: RwLock::default(),
            persist,
        }
    }

    /// Reloads every snapshot found in the persistence directory.
    pub async fn restore(&self) -> anyhow::Result<usize> {
        let Some(dir) = &self.persist else {
            return Ok(0);
        };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut count = 0;
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            let Some(id) = snapshot_id(&path) else {
                continue;
            };
            let text = fs::read_to_string(&path)?;
            let mut trace =
                Trace::from_json(&text).with_context(|| format!("reading {}", path.display()))?;
            trace.expected_goals = None;
            let state = trace
                .replay()
                .with_context(|| format!("replaying {}", path.display()))?;
            let now = now();
            let session = Session {
                id,
                problem: trace.problem,
                state,
                created: now,
                updated: now,
            };
            self.sessions
                .write()
                .await
                .insert(id, Arc::new(Mutex::new(session)));
            count += 1;
        }
        Ok(count)
    }

    pub async fn create(&self, problem: &str) -> Result<(Uuid, StatePayload), ParseError> {
        let session = Session::new(problem)?;
        let id = session.id;
        let payload = session.payload();
        self.snapshot(&session);
        self.sessions
            .write()
            .await
            .insert(id, Arc::new(Mutex::new(session)));
        Ok((id, payload))
    }

    pub async fn get(&self, id: Uuid) -> Option<Arc<Mutex<Session>>> {
        self.sessions.read().await.get(&id).cloned()
    }

    pub async fn remove(&self, id: Uuid) -> bool {
        let removed = self.sessions.write().await.remove(&id).is_some();
        if removed {
            if let Some(dir) = &self.persist {
                let _ = fs::remove_file(snapshot_path(dir, id));
            }
        }
        removed
    }

    /// Writes the session's trace if persistence is enabled. Failures are
    /// logged and otherwise ignored.
    pub fn snapshot(&self, session: &Session) {
        let Some(dir) = &self.persist else { return };
        let path = snapshot_path(dir, session.id);
        if let Err(e) = fs::write(&path, session.trace().to_json()) {
            tracing::warn!("cannot write {}: {e}", path.display());
        }
    }
}

fn snapshot_path(dir: &Path, id: Uuid) -> PathBuf {
    dir.join(format!("{id}.json"))
}

fn snapshot_id(path: &Path) -> Option<Uuid> {
    if path.extension()? != "json" {
        return None;
    }
    path.file_stem()?.to_str()?.parse().ok()
}
