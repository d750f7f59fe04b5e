//! First-order terms and formulas.
//!
//! Variables (`Term::Var`) only ever stand for bound variables; free
//! identifiers of a problem (constants, objects) are nullary applications.
//! This keeps substitution and capture checks purely about binders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn subst(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.subst(x, t)).collect())
            }
        }
    }

    pub fn apply(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(y) => sigma.get(y).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.apply(sigma)).collect())
            }
        }
    }

    /// Function symbols (with arities) occurring in the term, constants included.
    /// Function symbols with their arities.
    pub fn functions(&self) -> BTreeMap<String, usize> {
        let mut syms = BTreeMap::new();
        self.collect_symbols(&mut syms);
        syms
    }

    pub(crate) fn collect_symbols(&self, out: &mut BTreeMap<String, usize>) {
        if let Term::App(f, args) = self {
            out.insert(f.clone(), args.len());
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    True,
    False,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    /// `~a`, i.e. `a => false`.
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::False)
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn binary(conn: Connective, l: Formula, r: Formula) -> Formula {
        match conn {
            Connective::And => Formula::and(l, r),
            Connective::Or => Formula::or(l, r),
            Connective::Imp => Formula::imp(l, r),
        }
    }

    pub fn quant(q: Quantifier, x: impl Into<String>, body: Formula) -> Formula {
        match q {
            Quantifier::Forall => Formula::forall(x, body),
            Quantifier::Exists => Formula::exists(x, body),
        }
    }

    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(l, r) => Some((Connective::And, l, r)),
            Formula::Or(l, r) => Some((Connective::Or, l, r)),
            Formula::Imp(l, r) => Some((Connective::Imp, l, r)),
            _ => None,
        }
    }

    pub fn as_quant(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(x, b) => Some((Quantifier::Forall, x, b)),
            Formula::Exists(x, b) => Some((Quantifier::Exists, x, b)),
            _ => None,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Pred(..) | Formula::Eq(..) | Formula::True | Formula::False
        )
    }

    /// Number of connectives and quantifiers.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Pred(..) | Formula::Eq(..) | Formula::True | Formula::False => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.connectives() + r.connectives()
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.connectives(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add_term = |t: &Term, bound: &Vec<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| add_term(a, bound)),
            Formula::Eq(a, b) => {
                add_term(a, bound);
                add_term(b, bound);
            }
            Formula::True | Formula::False => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, x: &str) -> bool {
        self.free_vars().contains(x)
    }

    /// All names used anywhere as variables, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut |n, is_var| {
            if is_var {
                out.insert(n.to_string());
            }
        });
        out
    }

    /// Names of nullary function symbols (constants and objects).
    pub fn constants(&self) -> BTreeSet<String> {
        self.functions()
            .into_iter()
            .filter(|(_, a)| *a == 0)
            .map(|(n, _)| n)
            .collect()
    }

    /// Function symbols with their arities.
    pub fn functions(&self) -> BTreeMap<String, usize> {
        let mut syms = BTreeMap::new();
        self.visit_terms(&mut |t| t.collect_symbols(&mut syms));
        syms
    }

    fn visit_names(&self, f: &mut impl FnMut(&str, bool)) {
        fn term(t: &Term, f: &mut impl FnMut(&str, bool)) {
            match t {
                Term::Var(x) => f(x, true),
                Term::App(g, args) => {
                    f(g, false);
                    args.iter().for_each(|a| term(a, f));
                }
            }
        }
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| term(a, f)),
            Formula::Eq(a, b) => {
                term(a, f);
                term(b, f);
            }
            Formula::True | Formula::False => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.visit_names(f);
                r.visit_names(f);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                f(x, true);
                b.visit_names(f);
            }
        }
    }

    pub fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| f(a)),
            Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::True | Formula::False => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.visit_terms(f);
                r.visit_terms(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.visit_terms(f),
        }
    }

    pub fn binders(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<String>) {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_binders(out);
                r.collect_binders(out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.push(x.clone());
                b.collect_binders(out);
            }
            _ => {}
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `x`.
    ///
    /// Binders that would capture a variable of `t` are renamed with the
    /// smallest unused numeric suffix.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        let tvars = t.vars();
        self.subst_inner(x, t, &tvars)
    }

    fn subst_inner(&self, x: &str, t: &Term, tvars: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| a.subst(x, t)).collect())
            }
            Formula::Eq(a, b) => Formula::Eq(a.subst(x, t), b.subst(x, t)),
            Formula::True | Formula::False => self.clone(),
            Formula::And(l, r) => {
                Formula::and(l.subst_inner(x, t, tvars), r.subst_inner(x, t, tvars))
            }
            Formula::Or(l, r) => {
                Formula::or(l.subst_inner(x, t, tvars), r.subst_inner(x, t, tvars))
            }
            Formula::Imp(l, r) => {
                Formula::imp(l.subst_inner(x, t, tvars), r.subst_inner(x, t, tvars))
            }
            Formula::Forall(y, b) | Formula::Exists(y, b) => {
                let q = self.as_quant().unwrap().0;
                if y == x || !b.is_free(x) {
                    return self.clone();
                }
                if tvars.contains(y) {
                    let mut avoid = b.all_var_names();
                    avoid.extend(tvars.iter().cloned());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(y, |n| avoid.contains(n));
                    let renamed = b.subst_inner(
                        y,
                        &Term::Var(fresh.clone()),
                        &BTreeSet::from([fresh.clone()]),
                    );
                    Formula::quant(q, fresh, renamed.subst_inner(x, t, tvars))
                } else {
                    Formula::quant(q, y.clone(), b.subst_inner(x, t, tvars))
                }
            }
        }
    }

    /// Applies a substitution to the free variables. For idempotent
    /// substitutions this agrees with simultaneous replacement.
    pub fn apply(&self, sigma: &Substitution) -> Formula {
        sigma
            .iter()
            .fold(self.clone(), |acc, (x, t)| acc.substitute(x, t))
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new())
    }

    /// Renames binders so that every binder is distinct, and distinct from
    /// the free variables and from every name in `avoid`.
    pub fn normalize_binders(&self, avoid: &BTreeSet<String>) -> Formula {
        let mut used: BTreeSet<String> = avoid.clone();
        used.extend(self.free_vars());
        used.extend(self.constants());
        self.rename_binders(&mut used)
    }

    fn rename_binders(&self, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::And(l, r) => {
                let l = l.rename_binders(used);
                Formula::and(l, r.rename_binders(used))
            }
            Formula::Or(l, r) => {
                let l = l.rename_binders(used);
                Formula::or(l, r.rename_binders(used))
            }
            Formula::Imp(l, r) => {
                let l = l.rename_binders(used);
                Formula::imp(l, r.rename_binders(used))
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let q = self.as_quant().unwrap().0;
                let fresh = fresh_name(x, |n| used.contains(n));
                used.insert(fresh.clone());
                let body = if &fresh == x {
                    (**b).clone()
                } else {
                    b.substitute(x, &Term::Var(fresh.clone()))
                };
                Formula::quant(q, fresh, body.rename_binders(used))
            }
            _ => self.clone(),
        }
    }
}

fn alpha(f: &Formula, g: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (f, g) {
        (Formula::Pred(p, a), Formula::Pred(q, b)) => {
            p == q && a.len() == b.len() && a.iter().zip(b).all(|(s, t)| alpha_term(s, t, env))
        }
        (Formula::Eq(a1, b1), Formula::Eq(a2, b2)) => {
            alpha_term(a1, a2, env) && alpha_term(b1, b2, env)
        }
        (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
        (Formula::And(l1, r1), Formula::And(l2, r2))
        | (Formula::Or(l1, r1), Formula::Or(l2, r2))
        | (Formula::Imp(l1, r1), Formula::Imp(l2, r2)) => alpha(l1, l2, env) && alpha(r1, r2, env),
        (Formula::Forall(x, b1), Formula::Forall(y, b2))
        | (Formula::Exists(x, b1), Formula::Exists(y, b2)) => {
            env.push((x.clone(), y.clone()));
            let ok = alpha(b1, b2, env);
            env.pop();
            ok
        }
        _ => false,
    }
}

fn alpha_term(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => match env.iter().rev().find(|(a, b)| a == x || b == y) {
            Some((a, b)) => a == x && b == y,
            None => x == y,
        },
        (Term::App(f, a), Term::App(g, b)) => {
            f == g && a.len() == b.len() && a.iter().zip(b).all(|(s, t)| alpha_term(s, t, env))
        }
        _ => false,
    }
}

/// `base` itself if free, otherwise `base` (stripped of a numeric suffix)
/// followed by the smallest unused index.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded index range")
}

/// A finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.bindings.get(x)
    }

    pub fn insert(&mut self, x: impl Into<String>, t: Term) {
        self.bindings.insert(x.into(), t);
    }

    pub fn contains(&self, x: &str) -> bool {
        self.bindings.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    /// Composition `self` then `other`: applying the result equals applying
    /// `self` and then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut bindings: BTreeMap<String, Term> = self
            .bindings
            .iter()
            .map(|(x, t)| (x.clone(), t.apply(other)))
            .collect();
        for (x, t) in &other.bindings {
            bindings.entry(x.clone()).or_insert_with(|| t.clone());
        }
        bindings.retain(|x, t| *t != Term::Var(x.clone()));
        Substitution { bindings }
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| t.vars().iter().all(|v| !self.bindings.contains_key(v)))
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} := {}", crate::parser::print_term(t))?;
        }
        write!(f, "}}")
    }
}
