//! Goals, items and the actions that transform them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::link::{
    classify, execute, Direction, End, EngineError, LinkageKind, NotALinkage, TraceStep,
};
use crate::parser::{Flags, ParseContext, ParseError, Printer, ProblemFile, Signature};
use crate::path::{all_paths, resolve, Node, Path};
use crate::syntax::{fresh_name, Formula, Quantifier, Term};
use crate::unify::Role;

pub type ItemId = u64;
pub type GoalId = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    /// The conclusion.
    Red,
    /// A hypothesis.
    Blue,
    /// A named object.
    Green,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Content {
    Formula(Formula),
    Object {
        name: String,
        definition: Option<Term>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub id: ItemId,
    pub color: Color,
    pub content: Content,
}

impl Item {
    pub fn formula(&self) -> Option<&Formula> {
        match &self.content {
            Content::Formula(f) => Some(f),
            Content::Object { .. } => None,
        }
    }

    pub fn text(&self, printer: Printer) -> String {
        match &self.content {
            Content::Formula(f) => printer.formula(f),
            Content::Object {
                name,
                definition: None,
            } => name.clone(),
            Content::Object {
                name,
                definition: Some(t),
            } => format!("{name} := {}", printer.term(t)),
        }
    }

    fn role(&self) -> Option<Role> {
        match self.color {
            Color::Red => Some(Role::Conclusion),
            Color::Blue => Some(Role::Hypothesis),
            Color::Green => None,
        }
    }
}

/// A sequent: hypotheses and objects plus exactly one conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub id: GoalId,
    pub items: Vec<Item>,
}

impl Goal {
    pub fn item(&self, id: ItemId) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn conclusion(&self) -> &Item {
        self.items
            .iter()
            .find(|i| i.color == Color::Red)
            .expect("every goal has a conclusion")
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Formula> {
        self.items
            .iter()
            .filter(|i| i.color == Color::Blue)
            .filter_map(Item::formula)
    }

    pub fn objects(&self) -> impl Iterator<Item = &str> {
        self.items.iter().filter_map(|i| match &i.content {
            Content::Object { name, .. } => Some(name.as_str()),
            Content::Formula(_) => None,
        })
    }

    /// Every name occurring in the goal, bound or not.
    fn names(&self, base: &Signature) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = base.functions.keys().cloned().collect();
        for item in &self.items {
            match &item.content {
                Content::Formula(f) => {
                    out.extend(f.functions().into_keys());
                    out.extend(f.all_var_names());
                }
                Content::Object { name, definition } => {
                    out.insert(name.clone());
                    if let Some(t) = definition {
                        out.extend(t.functions().into_keys());
                    }
                }
            }
        }
        out
    }

    /// Constants and objects in scope, which binders must avoid.
    fn constants(&self, base: &Signature) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = base
            .functions
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.clone())
            .collect();
        out.extend(self.objects().map(str::to_string));
        for f in self.items.iter().filter_map(Item::formula) {
            out.extend(f.constants());
        }
        out
    }

    fn without(&self, id: ItemId) -> Goal {
        Goal {
            id: self.id,
            items: self.items.iter().filter(|i| i.id != id).cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemRef {
    pub item: ItemId,
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Action {
    Click {
        goal: GoalId,
        item: ItemId,
        path: Path,
    },
    Dnd {
        goal: GoalId,
        src: ItemRef,
        dst: ItemRef,
    },
    AddHyp {
        goal: GoalId,
        formula: String,
    },
    AddExpr {
        goal: GoalId,
        name: String,
        term: String,
    },
    Undo,
    Redo,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("no goal with id {0}")]
    UnknownGoal(GoalId),
    #[error("no item with id {0} in this goal")]
    UnknownItem(ItemId),
    #[error("nothing happens when clicking there")]
    NoClickAction,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error(transparent)]
    NotALinkage(#[from] NotALinkage),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("the name `{0}` is already in use")]
    DuplicateName(String),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("nothing to redo")]
    NothingToRedo,
}

impl ActionError {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            ActionError::UnknownGoal(_) | ActionError::UnknownItem(_) => "invalid_action",
            ActionError::NoClickAction => "no_click_action",
            ActionError::InvalidAction(_) => "invalid_action",
            ActionError::NotALinkage(_) => "not_a_linkage",
            ActionError::Engine(_) => "engine",
            ActionError::Parse(_) => "parse",
            ActionError::UnknownSymbol(_) => "unknown_symbol",
            ActionError::DuplicateName(_) => "duplicate_name",
            ActionError::NothingToUndo => "nothing_to_undo",
            ActionError::NothingToRedo => "nothing_to_redo",
        }
    }

    /// The variant, refined for refused linkages, e.g.
    /// `UnificationFailure(Cycle)` or `PolarityViolation`.
    pub fn reason(&self) -> String {
        match self {
            ActionError::NotALinkage(NotALinkage::UnificationFailure { failure }) => {
                format!("UnificationFailure({failure:?})")
            }
            ActionError::NotALinkage(NotALinkage::BadShape { .. }) => "BadShape".into(),
            ActionError::NotALinkage(NotALinkage::PolarityViolation { .. }) => {
                "PolarityViolation".into()
            }
            ActionError::NotALinkage(NotALinkage::InvalidPath { .. }) => "InvalidPath".into(),
            ActionError::UnknownGoal(_) => "UnknownGoal".into(),
            ActionError::UnknownItem(_) => "UnknownItem".into(),
            ActionError::NoClickAction => "NoClickAction".into(),
            ActionError::InvalidAction(_) => "InvalidAction".into(),
            ActionError::Engine(_) => "EngineStuck".into(),
            ActionError::Parse(_) => "ParseError".into(),
            ActionError::UnknownSymbol(_) => "UnknownSymbol".into(),
            ActionError::DuplicateName(_) => "DuplicateName".into(),
            ActionError::NothingToUndo => "NothingToUndo".into(),
            ActionError::NothingToRedo => "NothingToRedo".into(),
        }
    }
}

/// A drop target for a dragged selection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub path: Path,
    pub kind: LinkageKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Ids {
    item: ItemId,
    goal: GoalId,
}

impl Ids {
    fn item(&mut self) -> ItemId {
        self.item += 1;
        self.item - 1
    }

    fn goal(&mut self) -> GoalId {
        self.goal += 1;
        self.goal - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Snapshot {
    goals: Vec<Goal>,
    signature: Signature,
}

/// Open goals of a proof plus undo and redo history. Identifiers are never
/// reused, including across undo.
#[derive(Clone, Debug)]
pub struct ProofState {
    flags: Flags,
    base: Signature,
    current: Snapshot,
    ids: Ids,
    undo: Vec<(Action, Snapshot)>,
    redo: Vec<(Action, Snapshot)>,
    log: Vec<Action>,
}

impl ProofState {
    /// The initial state of a problem: one goal holding its objects, its
    /// hypotheses and its conclusion, in that order.
    pub fn new(problem: &ProblemFile) -> Self {
        let mut ids = Ids::default();
        let mut items = Vec::new();
        for o in &problem.objects {
            let content = Content::Object {
                name: o.name.clone(),
                definition: o.definition.clone(),
            };
            items.push(Item {
                id: ids.item(),
                color: Color::Green,
                content,
            });
        }
        for h in &problem.hypotheses {
            items.push(Item {
                id: ids.item(),
                color: Color::Blue,
                content: Content::Formula(h.clone()),
            });
        }
        items.push(Item {
            id: ids.item(),
            color: Color::Red,
            content: Content::Formula(problem.goal.clone()),
        });
        let goal = Goal {
            id: ids.goal(),
            items,
        };
        ProofState {
            flags: problem.flags,
            base: problem.signature.clone(),
            current: Snapshot {
                goals: vec![goal],
                signature: problem.signature.clone(),
            },
            ids,
            undo: Vec::new(),
            redo: Vec::new(),
            log: Vec::new(),
        }
    }

    pub fn goals(&self) -> &[Goal] {
        &self.current.goals
    }

    pub fn goal(&self, id: GoalId) -> Result<&Goal, ActionError> {
        self.current
            .goals
            .iter()
            .find(|g| g.id == id)
            .ok_or(ActionError::UnknownGoal(id))
    }

    pub fn is_complete(&self) -> bool {
        self.current.goals.is_empty()
    }

    pub fn printer(&self) -> Printer {
        Printer::new(self.flags)
    }

    /// Every successfully applied action, in order.
    pub fn log(&self) -> &[Action] {
        &self.log
    }

    pub fn can_undo(&self) -> bool {
        !self.undo.is_empty()
    }

    pub fn can_redo(&self) -> bool {
        !self.redo.is_empty()
    }

    /// Applies an action and returns the rule trace of a drag-and-drop. On
    /// error the state is left unchanged.
    pub fn apply(&mut self, action: &Action) -> Result<Vec<TraceStep>, ActionError> {
        let mut trace = Vec::new();
        match action {
            Action::Undo => {
                let (a, prior) = self.undo.pop().ok_or(ActionError::NothingToUndo)?;
                let after = std::mem::replace(&mut self.current, prior);
                self.redo.push((a, after));
            }
            Action::Redo => {
                let (a, after) = self.redo.pop().ok_or(ActionError::NothingToRedo)?;
                let prior = std::mem::replace(&mut self.current, after);
                self.undo.push((a, prior));
            }
            _ => {
                let mut ids = self.ids;
                let mut signature = self.current.signature.clone();
                let goal_id = match action {
                    Action::Click { goal, .. }
                    | Action::Dnd { goal, .. }
                    | Action::AddHyp { goal, .. }
                    | Action::AddExpr { goal, .. } => *goal,
                    Action::Undo | Action::Redo => unreachable!(),
                };
                let pos = self
                    .current
                    .goals
                    .iter()
                    .position(|g| g.id == goal_id)
                    .ok_or(ActionError::UnknownGoal(goal_id))?;
                let goal = &self.current.goals[pos];
                let replacement = match action {
                    Action::Click { item, path, .. } => self.click(goal, *item, path, &mut ids)?,
                    Action::Dnd { src, dst, .. } => {
                        let (goals, steps) = self.dnd(goal, src, dst, &mut ids)?;
                        trace = steps;
                        goals
                    }
                    Action::AddHyp { formula, .. } => {
                        self.add_hyp(goal, formula, &mut signature, &mut ids)?
                    }
                    Action::AddExpr { name, term, .. } => {
                        vec![self.add_expr(goal, name, term, &mut signature, &mut ids)?]
                    }
                    Action::Undo | Action::Redo => unreachable!(),
                };
                let mut goals = self.current.goals.clone();
                goals.splice(pos..=pos, replacement);
                let prior = std::mem::replace(&mut self.current, Snapshot { goals, signature });
                self.undo.push((action.clone(), prior));
                self.redo.clear();
                self.ids = ids;
            }
        }
        self.log.push(action.clone());
        Ok(trace)
    }

    /// Valid drop targets in `dst_item` for the selection `src`.
    pub fn candidates(
        &self,
        goal: GoalId,
        src: &ItemRef,
        dst_item: ItemId,
    ) -> Result<Vec<Candidate>, ActionError> {
        let goal = self.goal(goal)?;
        let s = goal
            .item(src.item)
            .ok_or(ActionError::UnknownItem(src.item))?;
        let d = goal
            .item(dst_item)
            .ok_or(ActionError::UnknownItem(dst_item))?;
        let (Some(sf), Some(sr), Some(df), Some(dr)) =
            (s.formula(), s.role(), d.formula(), d.role())
        else {
            return Ok(Vec::new());
        };
        if s.id == d.id {
            return Ok(Vec::new());
        }
        resolve(sf, &src.path).map_err(|e| ActionError::InvalidAction(e.to_string()))?;
        let constants = goal.constants(&self.base);
        let src_end = End::new(sf.clone(), src.path.clone(), sr);
        Ok(all_paths(df)
            .into_iter()
            .filter_map(|path| {
                let l = classify(
                    &src_end,
                    &End::new(df.clone(), path.clone(), dr),
                    &constants,
                )
                .ok()?;
                Some(Candidate { path, kind: l.kind })
            })
            .collect())
    }

    fn fresh_item(&self, ids: &mut Ids, color: Color, f: Formula, goal: &Goal) -> Item {
        let f = f.normalize_binders(&goal.names(&self.base));
        Item {
            id: ids.item(),
            color,
            content: Content::Formula(f),
        }
    }

    fn click(
        &self,
        goal: &Goal,
        id: ItemId,
        path: &Path,
        ids: &mut Ids,
    ) -> Result<Vec<Goal>, ActionError> {
        let item = goal.item(id).ok_or(ActionError::UnknownItem(id))?;
        let f = item.formula().ok_or(ActionError::NoClickAction)?;
        let rest = goal.without(id);
        let with = |ids: &mut Ids, g: &Goal, new: Vec<(Color, Formula)>| {
            let mut g = g.clone();
            for (color, f) in new {
                let item = self.fresh_item(ids, color, f, &g);
                g.items.push(item);
            }
            g
        };
        let root = path.is_root();
        match (item.color, f, path.first()) {
            (Color::Blue, Formula::And(a, b), _) if root => Ok(vec![with(
                ids,
                &rest,
                vec![(Color::Blue, (**a).clone()), (Color::Blue, (**b).clone())],
            )]),
            (Color::Red, Formula::And(a, b), _) if root => {
                let first = with(ids, &rest, vec![(Color::Red, (**a).clone())]);
                let mut second = with(ids, &rest, vec![(Color::Red, (**b).clone())]);
                second.id = ids.goal();
                Ok(vec![first, second])
            }
            (Color::Blue, Formula::Or(a, b), _) if root => {
                let first = with(ids, &rest, vec![(Color::Blue, (**a).clone())]);
                let mut second = with(ids, &rest, vec![(Color::Blue, (**b).clone())]);
                second.id = ids.goal();
                Ok(vec![first, second])
            }
            (Color::Red, Formula::Or(a, b), Some(side)) if path.len() == 1 => {
                let chosen = if side == 0 { a } else { b };
                Ok(vec![with(
                    ids,
                    &rest,
                    vec![(Color::Red, (**chosen).clone())],
                )])
            }
            (Color::Red, Formula::Imp(a, b), _) if root => Ok(vec![with(
                ids,
                &rest,
                vec![(Color::Blue, (**a).clone()), (Color::Red, (**b).clone())],
            )]),
            (Color::Red, Formula::Forall(x, body), _)
            | (Color::Blue, Formula::Exists(x, body), _)
                if root =>
            {
                let mut names = rest.names(&self.base);
                names.extend(body.binders());
                let name = fresh_name(x, |n| names.contains(n));
                let mut g = rest.clone();
                let object = Content::Object {
                    name: name.clone(),
                    definition: None,
                };
                g.items.push(Item {
                    id: ids.item(),
                    color: Color::Green,
                    content: object,
                });
                Ok(vec![with(
                    ids,
                    &g,
                    vec![(item.color, body.substitute(x, &Term::constant(name)))],
                )])
            }
            (Color::Red, Formula::Eq(s, t), _) if root && s == t => Ok(Vec::new()),
            (Color::Red, Formula::True, _) if root => Ok(Vec::new()),
            _ => Err(ActionError::NoClickAction),
        }
    }

    fn dnd(
        &self,
        goal: &Goal,
        src: &ItemRef,
        dst: &ItemRef,
        ids: &mut Ids,
    ) -> Result<(Vec<Goal>, Vec<TraceStep>), ActionError> {
        let s = goal
            .item(src.item)
            .ok_or(ActionError::UnknownItem(src.item))?;
        let d = goal
            .item(dst.item)
            .ok_or(ActionError::UnknownItem(dst.item))?;
        if s.id == d.id {
            return Err(ActionError::InvalidAction(
                "an item cannot be linked with itself".into(),
            ));
        }
        let (Some(sf), Some(sr), Some(df), Some(dr)) =
            (s.formula(), s.role(), d.formula(), d.role())
        else {
            return Err(ActionError::InvalidAction(
                "objects cannot be linked".into(),
            ));
        };
        let linkage = classify(
            &End::new(sf.clone(), src.path.clone(), sr),
            &End::new(df.clone(), dst.path.clone(), dr),
            &goal.constants(&self.base),
        )?;
        let out = execute(&linkage, self.printer())?;
        let goals = match linkage.kind.direction {
            Direction::Backward if out.result == Formula::True => Vec::new(),
            Direction::Backward => {
                let red = goal.conclusion().id;
                let rest = goal.without(red);
                let item = self.fresh_item(ids, Color::Red, out.result, &rest);
                let mut g = goal.clone();
                let k = g.items.iter().position(|i| i.id == red).unwrap();
                g.items[k] = item;
                vec![g]
            }
            Direction::Forward => {
                let mut g = goal.clone();
                let item = self.fresh_item(ids, Color::Blue, out.result, goal);
                g.items.push(item);
                vec![g]
            }
        };
        Ok((goals, out.trace))
    }

    /// Parses `text` in the scope of `goal`: every function symbol must be
    /// declared by the problem or be an object of the goal.
    fn scoped<T>(
        &self,
        goal: &Goal,
        signature: &mut Signature,
        parse: impl FnOnce(&mut ParseContext) -> Result<T, ParseError>,
        symbols: impl Fn(&T) -> Vec<String>,
    ) -> Result<T, ActionError> {
        let mut ctx = ParseContext {
            signature: signature.clone(),
            flags: self.flags,
        };
        let value = parse(&mut ctx)?;
        let objects: BTreeSet<&str> = goal.objects().collect();
        if let Some(unknown) = symbols(&value)
            .into_iter()
            .find(|n| !self.base.functions.contains_key(n) && !objects.contains(n.as_str()))
        {
            return Err(ActionError::UnknownSymbol(unknown));
        }
        *signature = ctx.signature;
        Ok(value)
    }

    fn add_hyp(
        &self,
        goal: &Goal,
        text: &str,
        signature: &mut Signature,
        ids: &mut Ids,
    ) -> Result<Vec<Goal>, ActionError> {
        let f = self.scoped(
            goal,
            signature,
            |ctx| ctx.formula(text),
            |f| f.functions().into_keys().collect(),
        )?;
        let mut with_hyp = goal.clone();
        with_hyp
            .items
            .push(self.fresh_item(ids, Color::Blue, f.clone(), goal));
        let red = goal.conclusion().id;
        let rest = goal.without(red);
        let mut lemma = goal.clone();
        let k = lemma.items.iter().position(|i| i.id == red).unwrap();
        lemma.items[k] = self.fresh_item(ids, Color::Red, f, &rest);
        lemma.id = ids.goal();
        Ok(vec![with_hyp, lemma])
    }

    fn add_expr(
        &self,
        goal: &Goal,
        name: &str,
        text: &str,
        signature: &mut Signature,
        ids: &mut Ids,
    ) -> Result<Goal, ActionError> {
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && name
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if !valid {
            return Err(ActionError::InvalidAction(format!(
                "`{name}` is not a valid name"
            )));
        }
        if goal.names(&self.base).contains(name) || signature.predicates.contains_key(name) {
            return Err(ActionError::DuplicateName(name.to_string()));
        }
        let t = self.scoped(
            goal,
            signature,
            |ctx| ctx.term(text),
            |t| t.functions().into_keys().collect(),
        )?;
        signature.use_function(name, 0)?;
        let mut g = goal.clone();
        let content = Content::Object {
            name: name.to_string(),
            definition: Some(t),
        };
        g.items.push(Item {
            id: ids.item(),
            color: Color::Green,
            content,
        });
        Ok(g)
    }

    /// Canonical text of the open goals, one item per line.
    pub fn render(&self) -> String {
        let printer = self.printer();
        if self.current.goals.is_empty() {
            return "no goals\n".to_string();
        }
        let mut out = String::new();
        for g in &self.current.goals {
            let _ = writeln!(out, "goal {}", g.id);
            for i in &g.items {
                let color = match i.color {
                    Color::Red => "red",
                    Color::Blue => "blue",
                    Color::Green => "green",
                };
                let _ = writeln!(out, "  {} {color} {}", i.id, i.text(printer));
            }
        }
        out
    }

    /// A serializable view of the open goals.
    pub fn view(&self) -> StateView {
        let printer = self.printer();
        StateView {
            goals: self
                .current
                .goals
                .iter()
                .map(|g| GoalView {
                    id: g.id,
                    items: g
                        .items
                        .iter()
                        .map(|i| ItemView {
                            id: i.id,
                            color: i.color,
                            text: i.text(printer),
                            tree: i
                                .formula()
                                .map(|f| tree(Node::Formula(f), Path::root(), printer)),
                        })
                        .collect(),
                })
                .collect(),
            complete: self.is_complete(),
            can_undo: self.can_undo(),
            can_redo: self.can_redo(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemView {
    pub id: ItemId,
    pub color: Color,
    pub text: String,
    pub tree: Option<TreeNode>,
}

/// A node of an item with the path that selects it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub path: Path,
    pub kind: &'static str,
    pub label: String,
    pub text: String,
    pub children: Vec<TreeNode>,
}

fn tree(node: Node<'_>, path: Path, printer: Printer) -> TreeNode {
    let (kind, label, text) = match node {
        Node::Formula(f) => {
            let label = match f {
                Formula::Pred(p, _) => p.clone(),
                Formula::Eq(..) => "=".into(),
                Formula::True => "true".into(),
                Formula::False => "false".into(),
                Formula::And(..) => "/\\".into(),
                Formula::Or(..) => "\\/".into(),
                Formula::Imp(_, b) if **b == Formula::False => "~".into(),
                Formula::Imp(..) => "=>".into(),
                Formula::Forall(x, _) | Formula::Exists(x, _) => {
                    let q = if f.as_quant().unwrap().0 == Quantifier::Forall {
                        "forall"
                    } else {
                        "exists"
                    };
                    format!("{q} {x}")
                }
            };
            ("formula", label, printer.formula(f))
        }
        Node::Term(t) => {
            let label = match t {
                Term::Var(x) | Term::App(x, _) => x.clone(),
            };
            ("term", label, printer.term(t))
        }
    };
    let children = (0..node.arity())
        .map(|i| tree(node.child(i).unwrap(), path.child(i), printer))
        .collect();
    TreeNode {
        path,
        kind,
        label,
        text,
        children,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoalView {
    pub id: GoalId,
    pub items: Vec<ItemView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateView {
    pub goals: Vec<GoalView>,
    pub complete: bool,
    pub can_undo: bool,
    pub can_redo: bool,
}
