//! Unification of two selections under quantifier constraints.
//!
//! Every binder above a selection is either instantiable (a universal in a
//! negative position or an existential in a positive one) or rigid. Rigid
//! binders behave like eigenvariables: they can only be opened by an
//! `s`-rule, after which later instantiations may mention them. A unifier is
//! accepted only if the binders of both sides can be interleaved so that each
//! instantiation is available when its quantifier is reached.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::path::{resolve, Node, Path, PathError, Polarity};
use crate::syntax::{Formula, Quantifier, Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Hypothesis,
    Conclusion,
}

impl Role {
    fn polarity(self) -> Polarity {
        match self {
            Role::Hypothesis => Polarity::Negative,
            Role::Conclusion => Polarity::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rigidity {
    Instantiable,
    Rigid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub kind: Quantifier,
    pub polarity: Polarity,
    pub rigidity: Rigidity,
    pub depth: usize,
}

/// Binders on the way from an item's root to a selection, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Profile {
    pub binders: Vec<Binder>,
}

impl Profile {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.binders.iter().map(|b| b.name.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&Binder> {
        self.binders.iter().find(|b| b.name == name)
    }
}

pub fn profile(item: &Formula, path: &Path, role: Role) -> Result<Profile, PathError> {
    resolve(item, path)?;
    let mut pol = role.polarity();
    let mut f = item;
    let mut binders = Vec::new();
    for &i in &path.0 {
        match f {
            Formula::Imp(l, r) => {
                if i == 0 {
                    pol = pol.flip();
                    f = l;
                } else {
                    f = r;
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) => f = if i == 0 { l } else { r },
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let kind = f.as_quant().unwrap().0;
                let instantiable = matches!(
                    (kind, pol),
                    (Quantifier::Forall, Polarity::Negative)
                        | (Quantifier::Exists, Polarity::Positive)
                );
                binders.push(Binder {
                    name: x.clone(),
                    kind,
                    polarity: pol,
                    rigidity: if instantiable {
                        Rigidity::Instantiable
                    } else {
                        Rigidity::Rigid
                    },
                    depth: binders.len(),
                });
                f = b;
            }
            _ => break,
        }
    }
    Ok(Profile { binders })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Error, Serialize, Deserialize)]
pub enum UnifyFailure {
    #[error("head symbols differ")]
    Clash,
    #[error("occurs check")]
    OccursCheck,
    #[error("circular dependency between quantified variables")]
    Cycle,
    #[error("two distinct rigid variables would be equated")]
    RigidMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// What a unifier says about one binder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    Rigid,
    /// Instantiable and determined by the unifier. The term may mention
    /// rigid binders and unconstrained instantiable binders.
    Bound(Term),
    /// Instantiable and unconstrained; variables sharing the same root must
    /// receive the same value.
    Free(String),
}

/// How the engine should treat a quantifier it is about to decompose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Keep the quantifier, moving it outward (`s`-rules).
    Introduce,
    /// Substitute the term for the bound variable (`i`-rules).
    Instantiate(Term),
    /// The instantiation mentions a variable not yet in scope.
    Blocked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unifier {
    /// Most general unifier on the instantiable binders, fully resolved.
    pub sigma: Substitution,
    pub classes: BTreeMap<String, Class>,
    /// A dependency-respecting order on all binders of both sides.
    pub order: Vec<String>,
}

impl Unifier {
    fn class_members<'a>(&'a self, root: &'a str) -> impl Iterator<Item = &'a String> + 'a {
        self.classes
            .iter()
            .filter(move |(_, c)| matches!(c, Class::Free(r) if r == root))
            .map(|(v, _)| v)
    }

    fn introduced_member(&self, root: &str, introduced: &BTreeSet<String>) -> Option<String> {
        self.class_members(root)
            .find(|m| introduced.contains(*m))
            .cloned()
    }

    /// Decides how to treat binder `var` given the binders already opened
    /// by `s`-rules.
    pub fn resolve(&self, var: &str, introduced: &BTreeSet<String>) -> Resolution {
        match self.classes.get(var) {
            None | Some(Class::Rigid) => Resolution::Introduce,
            Some(Class::Free(root)) => match self.introduced_member(root, introduced) {
                Some(m) => Resolution::Instantiate(Term::Var(m)),
                None => Resolution::Introduce,
            },
            Some(Class::Bound(t)) => {
                let mut sigma = Substitution::new();
                for u in t.vars() {
                    match self.classes.get(&u) {
                        Some(Class::Free(root)) => match self.introduced_member(root, introduced) {
                            Some(m) => sigma.insert(u, Term::Var(m)),
                            None => return Resolution::Blocked,
                        },
                        _ if introduced.contains(&u) => {}
                        _ => return Resolution::Blocked,
                    }
                }
                Resolution::Instantiate(t.apply(&sigma))
            }
        }
    }
}

struct Solver<'a> {
    instantiable: BTreeSet<String>,
    side: &'a BTreeMap<String, Side>,
    bindings: BTreeMap<String, Term>,
    locals: usize,
}

const LOCAL_PREFIX: char = '#';

fn is_local(x: &str) -> bool {
    x.starts_with(LOCAL_PREFIX)
}

impl Solver<'_> {
    fn walk(&self, t: &Term) -> Term {
        let mut t = t.clone();
        while let Term::Var(x) = &t {
            match self.bindings.get(x) {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    fn full(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::App(f, args) => Term::App(f, args.iter().map(|a| self.full(a)).collect()),
            v => v,
        }
    }

    fn bind(&mut self, x: &str, t: Term) -> Result<(), UnifyFailure> {
        let t = self.full(&t);
        if t.contains_var(x) {
            return Err(UnifyFailure::OccursCheck);
        }
        if t.vars().iter().any(|v| is_local(v)) {
            // an outer binder cannot depend on a binder inside the selection
            return Err(UnifyFailure::Cycle);
        }
        self.bindings.insert(x.to_string(), t);
        Ok(())
    }

    fn terms(&mut self, s: &Term, t: &Term) -> Result<(), UnifyFailure> {
        let s = self.walk(s);
        let t = self.walk(t);
        match (&s, &t) {
            (Term::Var(x), Term::Var(y)) if x == y => Ok(()),
            (Term::Var(x), Term::Var(y))
                if self.instantiable.contains(x) && self.instantiable.contains(y) =>
            {
                let right_to_left =
                    self.side.get(x) == Some(&Side::Right) && self.side.get(y) == Some(&Side::Left);
                if right_to_left {
                    self.bind(y, s.clone())
                } else {
                    self.bind(x, t.clone())
                }
            }
            (Term::Var(x), _) if self.instantiable.contains(x) => self.bind(x, t.clone()),
            (_, Term::Var(y)) if self.instantiable.contains(y) => self.bind(y, s.clone()),
            (Term::Var(_), Term::Var(_)) => Err(UnifyFailure::RigidMismatch),
            (Term::Var(_), _) | (_, Term::Var(_)) => Err(UnifyFailure::Clash),
            (Term::App(f, a), Term::App(g, b)) => {
                if f != g || a.len() != b.len() {
                    return Err(UnifyFailure::Clash);
                }
                for (a, b) in a.iter().zip(b) {
                    self.terms(a, b)?;
                }
                Ok(())
            }
        }
    }

    fn formulas(&mut self, f: &Formula, g: &Formula) -> Result<(), UnifyFailure> {
        match (f, g) {
            (Formula::Pred(p, a), Formula::Pred(q, b)) => {
                if p != q || a.len() != b.len() {
                    return Err(UnifyFailure::Clash);
                }
                for (a, b) in a.iter().zip(b) {
                    self.terms(a, b)?;
                }
                Ok(())
            }
            (Formula::Eq(a1, b1), Formula::Eq(a2, b2)) => {
                self.terms(a1, a2)?;
                self.terms(b1, b2)
            }
            (Formula::True, Formula::True) | (Formula::False, Formula::False) => Ok(()),
            (Formula::And(l1, r1), Formula::And(l2, r2))
            | (Formula::Or(l1, r1), Formula::Or(l2, r2))
            | (Formula::Imp(l1, r1), Formula::Imp(l2, r2)) => {
                self.formulas(l1, l2)?;
                self.formulas(r1, r2)
            }
            (Formula::Forall(x, b1), Formula::Forall(y, b2))
            | (Formula::Exists(x, b1), Formula::Exists(y, b2)) => {
                self.locals += 1;
                let local = Term::Var(format!("{LOCAL_PREFIX}{}", self.locals));
                self.formulas(&b1.substitute(x, &local), &b2.substitute(y, &local))
            }
            _ => Err(UnifyFailure::Clash),
        }
    }
}

/// Unifies two selections, both formulas or both terms. `left` belongs to
/// the hypothesis (backward) or source (forward) item. `prefer` is the side
/// whose binders are scheduled first when both are available. When the most
/// general unifier has no dependency-respecting order, the unconstrained
/// instantiable binders are instantiated with `witness`, a closed term, and
/// scheduling is retried.
pub fn unify(
    left: Node<'_>,
    right: Node<'_>,
    pl: &Profile,
    pr: &Profile,
    prefer: Side,
    witness: Option<&Term>,
) -> Result<Unifier, UnifyFailure> {
    let mut side = BTreeMap::new();
    for b in &pl.binders {
        side.insert(b.name.clone(), Side::Left);
    }
    for b in &pr.binders {
        side.insert(b.name.clone(), Side::Right);
    }
    let instantiable: BTreeSet<String> = pl
        .binders
        .iter()
        .chain(&pr.binders)
        .filter(|b| b.rigidity == Rigidity::Instantiable)
        .map(|b| b.name.clone())
        .collect();
    let mut solver = Solver {
        instantiable,
        side: &side,
        bindings: BTreeMap::new(),
        locals: 0,
    };
    match (left, right) {
        (Node::Formula(f), Node::Formula(g)) => solver.formulas(f, g)?,
        (Node::Term(s), Node::Term(t)) => solver.terms(s, t)?,
        _ => return Err(UnifyFailure::Clash),
    }

    let mut sigma = Substitution::new();
    let mut classes = BTreeMap::new();
    for b in pl.binders.iter().chain(&pr.binders) {
        if b.rigidity == Rigidity::Rigid {
            classes.insert(b.name.clone(), Class::Rigid);
            continue;
        }
        let t = solver.full(&Term::Var(b.name.clone()));
        match &t {
            Term::Var(root) if solver.instantiable.contains(root) => {
                classes.insert(b.name.clone(), Class::Free(root.clone()));
            }
            _ => {
                classes.insert(b.name.clone(), Class::Bound(t.clone()));
            }
        }
        if t != Term::Var(b.name.clone()) {
            sigma.insert(b.name.clone(), t);
        }
    }
    let mut unifier = Unifier {
        sigma,
        classes,
        order: Vec::new(),
    };
    if let Some(order) = schedule(&unifier, pl, pr, prefer) {
        unifier.order = order;
        return Ok(unifier);
    }
    let witness = witness.ok_or(UnifyFailure::Cycle)?;
    let grounded = ground(&unifier, witness);
    if grounded == unifier {
        return Err(UnifyFailure::Cycle);
    }
    unifier = grounded;
    unifier.order = schedule(&unifier, pl, pr, prefer).ok_or(UnifyFailure::Cycle)?;
    Ok(unifier)
}

/// Replaces every unconstrained instantiable binder by `witness`. Ground
/// values carry no dependencies, so this removes every cycle that does not
/// go through a rigid binder.
fn ground(u: &Unifier, witness: &Term) -> Unifier {
    let mut free = Substitution::new();
    for (v, c) in &u.classes {
        if matches!(c, Class::Free(_)) {
            free.insert(v.clone(), witness.clone());
        }
    }
    let mut sigma = Substitution::new();
    let mut classes = BTreeMap::new();
    for (v, c) in &u.classes {
        let c = match c {
            Class::Rigid => Class::Rigid,
            Class::Free(_) => Class::Bound(witness.clone()),
            Class::Bound(t) => Class::Bound(t.apply(&free)),
        };
        if let Class::Bound(t) = &c {
            sigma.insert(v.clone(), t.clone());
        }
        classes.insert(v.clone(), c);
    }
    Unifier {
        sigma,
        classes,
        order: Vec::new(),
    }
}

/// Greedy interleaving of the two binder chains. Availability only grows as
/// binders are processed, so greedy succeeds whenever any order does.
fn schedule(u: &Unifier, pl: &Profile, pr: &Profile, prefer: Side) -> Option<Vec<String>> {
    let chains = match prefer {
        Side::Left => [&pl.binders, &pr.binders],
        Side::Right => [&pr.binders, &pl.binders],
    };
    let mut next = [0usize, 0usize];
    let mut introduced = BTreeSet::new();
    let mut order = Vec::new();
    while next[0] < chains[0].len() || next[1] < chains[1].len() {
        let mut progressed = false;
        for k in 0..2 {
            let Some(b) = chains[k].get(next[k]) else {
                continue;
            };
            match u.resolve(&b.name, &introduced) {
                Resolution::Blocked => continue,
                Resolution::Introduce => {
                    introduced.insert(b.name.clone());
                }
                Resolution::Instantiate(_) => {}
            }
            order.push(b.name.clone());
            next[k] += 1;
            progressed = true;
            break;
        }
        if !progressed {
            return None;
        }
    }
    Some(order)
}
