//! Linkages between two selections and their execution.

mod engine;
mod rules;
mod units;

pub use engine::{
    execute, DnDResult, EngineError, InteractionState, Op, Operand, StepOutcome, TraceStep,
};
pub use rules::{RuleId, UnknownRule};
pub use units::{eliminate_units, is_unit_normal};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::path::{inversions, resolve, Node, Path, PathError};
use crate::syntax::{Formula, Term};
use crate::unify::{profile, unify, Role, Side, Unifier, UnifyFailure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Backward,
    Forward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EqSide {
    LhsSelected,
    RhsSelected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum Form {
    Logical,
    Rewrite { side: EqSide, equality_in: Role },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkageKind {
    pub direction: Direction,
    #[serde(flatten)]
    pub form: Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Src,
    Dst,
}

/// One end of a prospective linkage: an item of the goal and a path in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub item: Formula,
    pub path: Path,
    pub role: Role,
}

impl End {
    pub fn new(item: Formula, path: Path, role: Role) -> Self {
        End { item, path, role }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub item: Formula,
    pub path: Path,
    pub origin: Origin,
}

/// A classified and validated linkage. `left` is the hypothesis of a
/// backward linkage or the source of a forward one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linkage {
    pub kind: LinkageKind,
    pub left: Selection,
    pub right: Selection,
    /// For rewrite linkages, which end holds the equation.
    pub equation: Option<Side>,
    pub unifier: Unifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotALinkage {
    #[error("selections do not form a linkage: {detail}")]
    BadShape { detail: String },
    #[error("polarity condition violated (inversions {left} and {right})")]
    PolarityViolation { left: usize, right: usize },
    #[error("selections are not unifiable: {failure}")]
    UnificationFailure { failure: UnifyFailure },
    #[error("{message}")]
    InvalidPath { message: String },
}

impl From<PathError> for NotALinkage {
    fn from(e: PathError) -> Self {
        NotALinkage::InvalidPath {
            message: e.to_string(),
        }
    }
}

fn bad_shape(detail: &str) -> NotALinkage {
    NotALinkage::BadShape {
        detail: detail.to_string(),
    }
}

/// If `path` selects one side of an equation, that side.
fn equation_side(item: &Formula, path: &Path) -> Option<EqSide> {
    let (&last, parent) = path.0.split_last()?;
    match resolve(item, &Path(parent.to_vec())).ok()? {
        Node::Formula(Formula::Eq(..)) => Some(if last == 0 {
            EqSide::LhsSelected
        } else {
            EqSide::RhsSelected
        }),
        _ => None,
    }
}

/// Classifies the selection pair `src`, `dst` of one goal and checks the
/// unification and polarity conditions. `constants` are the names that
/// binders of the goal must avoid.
pub fn classify(
    src: &End,
    dst: &End,
    constants: &BTreeSet<String>,
) -> Result<Linkage, NotALinkage> {
    let src_node = resolve(&src.item, &src.path)?;
    resolve(&dst.item, &dst.path)?;
    // rename the destination binders apart from the source
    let mut avoid = constants.clone();
    avoid.extend(src.item.all_var_names());
    let dst = End {
        item: dst.item.normalize_binders(&avoid),
        path: dst.path.clone(),
        role: dst.role,
    };
    let dst_node = resolve(&dst.item, &dst.path)?;

    let sel = |e: &End, origin| Selection {
        item: e.item.clone(),
        path: e.path.clone(),
        origin,
    };
    let (kind, left, right, equation) = match (src_node, dst_node) {
        (Node::Formula(_), Node::Formula(_)) => {
            let (direction, left, right) = match (src.role, dst.role) {
                (Role::Hypothesis, Role::Conclusion) => (
                    Direction::Backward,
                    sel(src, Origin::Src),
                    sel(&dst, Origin::Dst),
                ),
                (Role::Conclusion, Role::Hypothesis) => (
                    Direction::Backward,
                    sel(&dst, Origin::Dst),
                    sel(src, Origin::Src),
                ),
                (Role::Hypothesis, Role::Hypothesis) => (
                    Direction::Forward,
                    sel(src, Origin::Src),
                    sel(&dst, Origin::Dst),
                ),
                (Role::Conclusion, Role::Conclusion) => {
                    return Err(bad_shape("both selections are in the conclusion"))
                }
            };
            let li = inversions(&left.item, &left.path);
            let ri = inversions(&right.item, &right.path);
            let allowed: &[(usize, usize)] = match direction {
                Direction::Backward => &[(0, 0), (1, 1), (0, 2)],
                Direction::Forward => &[(0, 1), (1, 0)],
            };
            if !allowed.contains(&(li, ri)) {
                return Err(NotALinkage::PolarityViolation {
                    left: li,
                    right: ri,
                });
            }
            (
                LinkageKind {
                    direction,
                    form: Form::Logical,
                },
                left,
                right,
                None,
            )
        }
        (Node::Term(_), Node::Term(_)) => {
            let as_src = equation_side(&src.item, &src.path)
                .map(|side| rewrite(src, Origin::Src, &dst, Origin::Dst, side));
            let as_dst = equation_side(&dst.item, &dst.path)
                .map(|side| rewrite(&dst, Origin::Dst, src, Origin::Src, side));
            match (as_src, as_dst) {
                (Some(Ok(r)), _) | (_, Some(Ok(r))) => r,
                (Some(Err(e)), _) | (None, Some(Err(e))) => return Err(e),
                (None, None) => return Err(bad_shape("neither term is a side of an equation")),
            }
        }
        _ => return Err(bad_shape("a formula cannot be linked with a term")),
    };

    let (left_role, right_role, prefer) = match kind.direction {
        Direction::Backward => (Role::Hypothesis, Role::Conclusion, Side::Right),
        Direction::Forward => (Role::Hypothesis, Role::Hypothesis, Side::Left),
    };
    let pl = profile(&left.item, &left.path, left_role)?;
    let pr = profile(&right.item, &right.path, right_role)?;
    let witness = constants.iter().next().map(|c| Term::constant(c.as_str()));
    let unifier = unify(
        resolve(&left.item, &left.path)?,
        resolve(&right.item, &right.path)?,
        &pl,
        &pr,
        prefer,
        witness.as_ref(),
    )
    .map_err(|failure| NotALinkage::UnificationFailure { failure })?;
    Ok(Linkage {
        kind,
        left,
        right,
        equation,
        unifier,
    })
}

/// Whether a derivation can bring both operands to an interaction redex,
/// considering only the implication premises still to be entered: `counts`
/// gives them for the left and right operand, and `equation` is the index
/// of the equation operand of a rewrite. Under `⊢` only the right operand
/// may enter a premise, which switches to `*`; under `*` either operand may,
/// becoming the right operand of `⊢`.
pub(crate) fn reachable(star: bool, counts: [usize; 2], equation: Option<usize>) -> bool {
    if counts == [0, 0] {
        return match equation {
            None => !star,
            Some(e) => star || e == 0,
        };
    }
    if !star {
        return counts[1] > 0 && reachable(true, [counts[0], counts[1] - 1], equation);
    }
    (0..2).any(|k| {
        counts[k] > 0
            && reachable(
                false,
                [counts[1 - k], counts[k] - 1],
                equation.map(|e| usize::from(e == k)),
            )
    })
}

fn rewrite(
    eq: &End,
    eq_origin: Origin,
    target: &End,
    target_origin: Origin,
    side: EqSide,
) -> Result<(LinkageKind, Selection, Selection, Option<Side>), NotALinkage> {
    let atom_path = Path(eq.path.0[..eq.path.len() - 1].to_vec());
    let inv = inversions(&eq.item, &atom_path);
    let target_inv = inversions(&target.item, &target.path);
    let eq_sel = Selection {
        item: eq.item.clone(),
        path: eq.path.clone(),
        origin: eq_origin,
    };
    let target_sel = Selection {
        item: target.item.clone(),
        path: target.path.clone(),
        origin: target_origin,
    };
    let violation = NotALinkage::PolarityViolation {
        left: inv,
        right: target_inv,
    };
    let r = rewrite_kind(eq, eq_sel, target, target_sel, side, inv, violation.clone())?;
    let eq_index = if r.3 == Some(Side::Left) { 0 } else { 1 };
    let counts = if eq_index == 0 {
        [inv, target_inv]
    } else {
        [target_inv, inv]
    };
    if !reachable(r.0.direction == Direction::Forward, counts, Some(eq_index)) {
        return Err(violation);
    }
    Ok(r)
}

fn rewrite_kind(
    eq: &End,
    eq_sel: Selection,
    target: &End,
    target_sel: Selection,
    side: EqSide,
    inv: usize,
    violation: NotALinkage,
) -> Result<(LinkageKind, Selection, Selection, Option<Side>), NotALinkage> {
    let eq_origin = eq_sel.origin;
    match (eq.role, target.role) {
        (Role::Hypothesis, other) => {
            if inv % 2 != 0 {
                return Err(violation);
            }
            let direction = if other == Role::Conclusion {
                Direction::Backward
            } else {
                Direction::Forward
            };
            let kind = LinkageKind {
                direction,
                form: Form::Rewrite {
                    side,
                    equality_in: Role::Hypothesis,
                },
            };
            Ok(match (direction, eq_origin) {
                (Direction::Backward, _) | (Direction::Forward, Origin::Src) => {
                    (kind, eq_sel, target_sel, Some(Side::Left))
                }
                (Direction::Forward, Origin::Dst) => (kind, target_sel, eq_sel, Some(Side::Right)),
            })
        }
        (Role::Conclusion, Role::Hypothesis) => {
            if inv % 2 == 0 {
                return Err(violation);
            }
            let kind = LinkageKind {
                direction: Direction::Backward,
                form: Form::Rewrite {
                    side,
                    equality_in: Role::Conclusion,
                },
            };
            Ok((kind, target_sel, eq_sel, Some(Side::Right)))
        }
        (Role::Conclusion, Role::Conclusion) => {
            Err(bad_shape("both selections are in the conclusion"))
        }
    }
}
