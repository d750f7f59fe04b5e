//! Subterm addresses inside an item.
//!
//! A path is a list of child indices. Binary connectives and equalities use
//! 0 for the left child and 1 for the right one, a quantifier has its body at
//! index 0, and predicate or function arguments are numbered from 0. The same
//! scheme reaches formula nodes and term nodes.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Path {
        let mut steps = self.0.clone();
        steps.push(i);
        Path(steps)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// The path with its first step removed.
    pub fn tail(&self) -> Path {
        Path(self.0.iter().skip(1).copied().collect())
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Path {
    fn from(steps: Vec<usize>) -> Self {
        Path(steps)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path {path} leaves the item at step {step}")]
    OutOfRange { path: Path, step: usize },
    #[error("replacement is a {found} but the selection is a {expected}")]
    ClassMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

/// A resolved selection: either a formula node or a term node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node<'a> {
    Formula(&'a Formula),
    Term(&'a Term),
}

/// Owned counterpart of [`Node`], used for replacements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Formula(Formula),
    Term(Term),
}

impl<'a> Node<'a> {
    pub fn to_owned(self) -> Subject {
        match self {
            Node::Formula(f) => Subject::Formula(f.clone()),
            Node::Term(t) => Subject::Term(t.clone()),
        }
    }

    pub fn as_formula(self) -> Option<&'a Formula> {
        match self {
            Node::Formula(f) => Some(f),
            Node::Term(_) => None,
        }
    }

    pub fn as_term(self) -> Option<&'a Term> {
        match self {
            Node::Term(t) => Some(t),
            Node::Formula(_) => None,
        }
    }

    fn class(self) -> &'static str {
        match self {
            Node::Formula(_) => "formula",
            Node::Term(_) => "term",
        }
    }

    pub fn child(self, i: usize) -> Option<Node<'a>> {
        match self {
            Node::Formula(f) => match f {
                Formula::Pred(_, args) => args.get(i).map(Node::Term),
                Formula::Eq(a, b) => [a, b].get(i).map(|t| Node::Term(t)),
                Formula::True | Formula::False => None,
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                    [l, r].get(i).map(|g| Node::Formula(g))
                }
                Formula::Forall(_, b) | Formula::Exists(_, b) => {
                    (i == 0).then_some(Node::Formula(b))
                }
            },
            Node::Term(Term::App(_, args)) => args.get(i).map(Node::Term),
            Node::Term(Term::Var(_)) => None,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Node::Formula(f) => match f {
                Formula::Pred(_, args) => args.len(),
                Formula::Eq(..) => 2,
                Formula::True | Formula::False => 0,
                Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => 2,
                Formula::Forall(..) | Formula::Exists(..) => 1,
            },
            Node::Term(Term::App(_, args)) => args.len(),
            Node::Term(Term::Var(_)) => 0,
        }
    }
}

impl Subject {
    fn class(&self) -> &'static str {
        match self {
            Subject::Formula(_) => "formula",
            Subject::Term(_) => "term",
        }
    }
}

/// Finds the node addressed by `path` in `item`.
pub fn resolve<'a>(item: &'a Formula, path: &Path) -> Result<Node<'a>, PathError> {
    let mut node = Node::Formula(item);
    for (k, &i) in path.0.iter().enumerate() {
        node = node.child(i).ok_or_else(|| PathError::OutOfRange {
            path: path.clone(),
            step: k,
        })?;
    }
    Ok(node)
}

/// Replaces the node addressed by `path` with `new`, which must be of the
/// same syntactic class as the node it replaces.
pub fn replace_at(item: &Formula, path: &Path, new: Subject) -> Result<Formula, PathError> {
    let target = resolve(item, path)?;
    if target.class() != new.class() {
        return Err(PathError::ClassMismatch {
            expected: target.class(),
            found: new.class(),
        });
    }
    Ok(replace_formula(item, &path.0, &new))
}

fn replace_formula(f: &Formula, steps: &[usize], new: &Subject) -> Formula {
    let Some((&i, rest)) = steps.split_first() else {
        match new {
            Subject::Formula(g) => return g.clone(),
            Subject::Term(_) => unreachable!("class checked by replace_at"),
        }
    };
    match f {
        Formula::Pred(p, args) => {
            let mut args = args.clone();
            args[i] = replace_term(&args[i], rest, new);
            Formula::Pred(p.clone(), args)
        }
        Formula::Eq(a, b) => {
            if i == 0 {
                Formula::Eq(replace_term(a, rest, new), b.clone())
            } else {
                Formula::Eq(a.clone(), replace_term(b, rest, new))
            }
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            let (conn, _, _) = f.as_binary().unwrap();
            if i == 0 {
                Formula::binary(conn, replace_formula(l, rest, new), (**r).clone())
            } else {
                Formula::binary(conn, (**l).clone(), replace_formula(r, rest, new))
            }
        }
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let (q, _, _) = f.as_quant().unwrap();
            Formula::quant(q, x.clone(), replace_formula(b, rest, new))
        }
        Formula::True | Formula::False => unreachable!("path resolved"),
    }
}

fn replace_term(t: &Term, steps: &[usize], new: &Subject) -> Term {
    let Some((&i, rest)) = steps.split_first() else {
        match new {
            Subject::Term(u) => return u.clone(),
            Subject::Formula(_) => unreachable!("class checked by replace_at"),
        }
    };
    match t {
        Term::App(g, args) => {
            let mut args = args.clone();
            args[i] = replace_term(&args[i], rest, new);
            Term::App(g.clone(), args)
        }
        Term::Var(_) => unreachable!("path resolved"),
    }
}

/// Every path of `item`, in pre-order.
pub fn all_paths(item: &Formula) -> Vec<Path> {
    fn go(node: Node<'_>, here: Path, out: &mut Vec<Path>) {
        for i in 0..node.arity() {
            let child = node.child(i).unwrap();
            let p = here.child(i);
            out.push(p.clone());
            go(child, p, out);
        }
    }
    let mut out = vec![Path::root()];
    go(Node::Formula(item), Path::root(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn from_inversions(inv: usize) -> Polarity {
        if inv % 2 == 0 {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }
}

/// A formula with one hole, represented as the enclosing item and the
/// address of the hole. `item` is `context⟨selection⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub item: Formula,
    pub hole: Path,
}

impl Context {
    pub fn new(item: Formula, hole: Path) -> Result<Context, PathError> {
        resolve(&item, &hole)?;
        Ok(Context { item, hole })
    }

    pub fn selection(&self) -> Node<'_> {
        resolve(&self.item, &self.hole).expect("validated on construction")
    }

    pub fn fill(&self, sel: Subject) -> Result<Formula, PathError> {
        replace_at(&self.item, &self.hole, sel)
    }

    /// Number of implications whose left operand contains the hole.
    pub fn inv(&self) -> usize {
        inversions(&self.item, &self.hole)
    }

    pub fn polarity(&self) -> Polarity {
        Polarity::from_inversions(self.inv())
    }
}

/// Inversion count along `path`: implications entered through their premise.
/// Steps that go below the formula level (into terms) do not count.
pub fn inversions(item: &Formula, path: &Path) -> usize {
    let mut f = item;
    let mut inv = 0;
    for &i in &path.0 {
        match f {
            Formula::Imp(l, r) => {
                if i == 0 {
                    inv += 1;
                    f = l;
                } else {
                    f = r;
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) => f = if i == 0 { l } else { r },
            Formula::Forall(_, b) | Formula::Exists(_, b) => f = b,
            _ => break,
        }
    }
    inv
}

/// The deepest formula node on `path` (the node itself when it is a
/// formula, otherwise the atom containing the addressed term) and the
/// length of the prefix reaching it.
pub fn enclosing_formula<'a>(item: &'a Formula, path: &Path) -> (&'a Formula, usize) {
    let mut f = item;
    let mut depth = 0;
    for &i in &path.0 {
        match f {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                f = if i == 0 { l } else { r }
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => f = b,
            _ => break,
        }
        depth += 1;
    }
    (f, depth)
}
