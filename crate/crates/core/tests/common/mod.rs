//! Generators and independent oracles shared by the property suites and the
//! acceptance report.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sublink_core::link::{
    classify, eliminate_units, execute, Direction, End, InteractionState, Linkage, NotALinkage,
    StepOutcome,
};
use sublink_core::oracle::entails;
use sublink_core::parser::{Flags, ParseContext};
use sublink_core::path::all_paths;
use sublink_core::unify::Role;
use sublink_core::{Formula, Path, Printer, Term, Trace};

/// Outcome of one suite: how many cases ran and what went wrong.
#[derive(Debug, Default)]
pub struct Report {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        } else if self.failures.len() == 20 {
            self.failures.push("...".into());
        }
    }

    pub fn ok(&self, min_cases: usize) -> bool {
        self.failures.is_empty() && self.cases >= min_cases
    }
}

/// Parses and links formulas for the worked derivations.
pub struct Case {
    pub ctx: ParseContext,
}

impl Case {
    pub fn new() -> Self {
        Case {
            ctx: ParseContext::default(),
        }
    }

    pub fn peano() -> Self {
        Case {
            ctx: ParseContext::new(Flags {
                peano_numerals: true,
            }),
        }
    }

    pub fn f(&mut self, s: &str) -> Formula {
        self.ctx.formula(s).unwrap()
    }

    pub fn printer(&self) -> Printer {
        Printer::new(self.ctx.flags)
    }

    pub fn link(
        &mut self,
        src: (&str, &[usize], Role),
        dst: (&str, &[usize], Role),
    ) -> Result<(String, Vec<String>, Vec<String>), NotALinkage> {
        let s = End::new(self.f(src.0), Path(src.1.to_vec()), src.2);
        let d = End::new(self.f(dst.0), Path(dst.1.to_vec()), dst.2);
        let l = classify(&s, &d, &BTreeSet::new())?;
        let out = execute(&l, self.printer()).expect("valid linkages execute");
        Ok((
            self.printer().formula(&out.result),
            out.trace
                .iter()
                .map(|t| t.rule.name().to_string())
                .collect(),
            out.trace.iter().map(|t| t.state.clone()).collect(),
        ))
    }

    pub fn backward(
        &mut self,
        hyp: &str,
        hp: &[usize],
        concl: &str,
        cp: &[usize],
    ) -> (String, Vec<String>, Vec<String>) {
        self.link((hyp, hp, Role::Hypothesis), (concl, cp, Role::Conclusion))
            .unwrap()
    }

    pub fn forward(
        &mut self,
        src: &str,
        sp: &[usize],
        dst: &str,
        dp: &[usize],
    ) -> (String, Vec<String>, Vec<String>) {
        self.link((src, sp, Role::Hypothesis), (dst, dp, Role::Hypothesis))
            .unwrap()
    }
}

pub fn rules(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

// Shipped traces.

pub const SHIPPED: [&str; 6] = [
    "aristotle_backward",
    "aristotle_forward",
    "peano",
    "edukera",
    "quantifier_swap",
    "cyclic_quantifier",
];

pub fn traces_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../traces")
}

pub fn load(name: &str) -> Trace {
    let text = fs::read_to_string(traces_dir().join(format!("{name}.json"))).unwrap();
    Trace::from_json(&text).unwrap()
}

/// The rendering after every action, then the outcome.
pub fn transcript(trace: &Trace) -> String {
    let mut out = String::new();
    let result = trace.replay_steps(|i, action, steps, state| {
        out.push_str(&format!(
            "# {i} {}\n",
            serde_json::to_string(action).unwrap()
        ));
        for s in steps {
            out.push_str(&format!("  {}  {}\n", s.rule, s.state));
        }
        out.push_str(&state.render());
    });
    match result {
        Ok(state) if state.is_complete() => out.push_str("QED\n"),
        Ok(state) => out.push_str(&format!("{} open goals\n", state.goals().len())),
        Err(e) => out.push_str(&format!("error: {e}\n")),
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random closed formulas over a small signature: propositions A B C,
/// predicates P Q (unary) and R (binary), equality, constants a b and the
/// unary function f.
pub struct FormulaGen {
    pub max_connectives: usize,
    pub max_binders: usize,
    pub equality: bool,
}

impl FormulaGen {
    pub fn formula(&self, rng: &mut impl Rng) -> Formula {
        let budget = rng.gen_range(0..=self.max_connectives);
        let mut binders = self.max_binders;
        let mut names = 0;
        self.go(rng, budget, &mut binders, &mut names, &mut Vec::new())
    }

    fn go(
        &self,
        rng: &mut impl Rng,
        budget: usize,
        binders: &mut usize,
        names: &mut usize,
        scope: &mut Vec<String>,
    ) -> Formula {
        if budget == 0 {
            return self.atom(rng, scope);
        }
        let quant = *binders > 0 && rng.gen_bool(0.3);
        if quant {
            *binders -= 1;
            let x = ["x", "y", "z", "u", "v"][*names % 5].to_string();
            *names += 1;
            scope.push(x.clone());
            let body = self.go(rng, budget - 1, binders, names, scope);
            scope.pop();
            return if rng.gen_bool(0.5) {
                Formula::forall(x, body)
            } else {
                Formula::exists(x, body)
            };
        }
        let left = rng.gen_range(0..budget);
        let l = self.go(rng, left, binders, names, scope);
        let r = self.go(rng, budget - 1 - left, binders, names, scope);
        match rng.gen_range(0..3) {
            0 => Formula::and(l, r),
            1 => Formula::or(l, r),
            _ => Formula::imp(l, r),
        }
    }

    fn term(&self, rng: &mut impl Rng, scope: &[String], depth: usize) -> Term {
        let k = rng.gen_range(0..10);
        if k < 5 && !scope.is_empty() {
            Term::var(scope[rng.gen_range(0..scope.len())].clone())
        } else if k < 8 || depth == 0 {
            Term::constant(if rng.gen_bool(0.5) { "a" } else { "b" })
        } else {
            Term::app("f", vec![self.term(rng, scope, depth - 1)])
        }
    }

    fn atom(&self, rng: &mut impl Rng, scope: &[String]) -> Formula {
        match rng.gen_range(0..if self.equality { 7 } else { 6 }) {
            0 => Formula::atom(["A", "B", "C"][rng.gen_range(0..3)]),
            1 | 2 => Formula::pred("P", vec![self.term(rng, scope, 1)]),
            3 => Formula::pred("Q", vec![self.term(rng, scope, 1)]),
            4 | 5 => Formula::pred(
                "R",
                vec![self.term(rng, scope, 1), self.term(rng, scope, 1)],
            ),
            _ => Formula::eq(self.term(rng, scope, 1), self.term(rng, scope, 1)),
        }
    }
}

pub fn constants() -> BTreeSet<String> {
    ["a", "b"].into_iter().map(String::from).collect()
}

/// Every valid linkage between the two items.
pub fn linkages(src: &Formula, sr: Role, dst: &Formula, dr: Role) -> Vec<Linkage> {
    let avoid = constants();
    let src = src.normalize_binders(&avoid);
    let dst = dst.normalize_binders(&avoid);
    let mut out = Vec::new();
    for sp in all_paths(&src) {
        for dp in all_paths(&dst) {
            let s = End::new(src.clone(), sp.clone(), sr);
            let d = End::new(dst.clone(), dp, dr);
            if let Ok(l) = classify(&s, &d, &avoid) {
                out.push(l);
            }
        }
    }
    out
}

/// Random item pairs with their roles: hypothesis onto conclusion,
/// conclusion onto hypothesis, or hypothesis onto hypothesis.
pub fn item_pairs(
    seed: u64,
    gen: &FormulaGen,
    count: usize,
) -> Vec<(Formula, Role, Formula, Role)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let (sr, dr) = match rng.gen_range(0..3) {
                0 => (Role::Hypothesis, Role::Conclusion),
                1 => (Role::Conclusion, Role::Hypothesis),
                _ => (Role::Hypothesis, Role::Hypothesis),
            };
            (gen.formula(&mut rng), sr, gen.formula(&mut rng), dr)
        })
        .collect()
}

/// Valid linkages over random item pairs, at least `min` of them when the
/// generator allows it.
pub fn random_linkages(seed: u64, gen: &FormulaGen, min: usize) -> Vec<(Linkage, usize)> {
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < min && round < 50 {
        for (s, sr, d, dr) in item_pairs(seed + round, gen, 200) {
            let size = s.connectives() + d.connectives();
            out.extend(linkages(&s, sr, &d, dr).into_iter().map(|l| (l, size)));
        }
        round += 1;
    }
    out
}

/// Runs the linking rules of `l` to the interaction, checking after every
/// step that the operator has flipped exactly when the context polarity
/// has. Returns the number of linking steps.
pub fn run_checked(l: &Linkage) -> Result<usize, String> {
    let mut st = InteractionState::new(l, Printer::default());
    let mut steps = 0;
    loop {
        if !st.polarity_consistent() {
            return Err(format!(
                "polarity broken after {steps} steps at {}",
                st.render()
            ));
        }
        match st.step() {
            Ok(StepOutcome::Rule(_)) => steps += 1,
            Ok(StepOutcome::Redex) => {
                st.interact()
                    .map_err(|e| format!("interaction failed: {e}"))?;
                return Ok(steps);
            }
            Err(e) => return Err(format!("stuck: {e}")),
        }
        if steps > 1000 {
            return Err("no redex after 1000 steps".into());
        }
    }
}

pub fn linkage_text(l: &Linkage) -> String {
    let p = Printer::default();
    format!(
        "{} @ {} / {} @ {}",
        p.formula(&l.left.item),
        l.left.path,
        p.formula(&l.right.item),
        l.right.path
    )
}

pub fn productivity(seed: u64) -> Report {
    let gen = FormulaGen {
        max_connectives: 8,
        max_binders: 3,
        equality: true,
    };
    let mut r = Report::default();
    for (l, size) in random_linkages(seed, &gen, 1000) {
        r.cases += 1;
        match run_checked(&l) {
            Ok(steps) if steps + 1 <= size + 2 => {}
            Ok(steps) => r.fail(format!(
                "{} took {steps} steps, bound {}",
                linkage_text(&l),
                size + 2
            )),
            Err(e) => r.fail(format!("{}: {e}", linkage_text(&l))),
        }
    }
    r
}

/// The operator flips exactly when the context polarity does, at every
/// step of every derivation. Derivations that get stuck are counted by
/// [`productivity`], not here.
pub fn polarity(seed: u64) -> Report {
    let gen = FormulaGen {
        max_connectives: 8,
        max_binders: 3,
        equality: true,
    };
    let mut r = Report::default();
    for (l, _) in random_linkages(seed, &gen, 1000) {
        r.cases += 1;
        let mut st = InteractionState::new(&l, Printer::default());
        loop {
            if !st.polarity_consistent() {
                r.fail(format!(
                    "{}: polarity broken at {}",
                    linkage_text(&l),
                    st.render()
                ));
                break;
            }
            if !matches!(st.step(), Ok(StepOutcome::Rule(_))) {
                break;
            }
        }
    }
    r
}

/// Property 1 as a classical necessary condition, at domain sizes 1 and 2.
pub fn semantic(seed: u64, max_binders: usize) -> Report {
    let gen = FormulaGen {
        max_connectives: 5,
        max_binders,
        equality: true,
    };
    let mut r = Report::default();
    for (l, _) in random_linkages(seed, &gen, 1000) {
        let out = match sublink_core::link::execute(&l, Printer::default()) {
            Ok(out) => out.result,
            Err(e) => {
                r.fail(format!("{}: {e}", linkage_text(&l)));
                continue;
            }
        };
        let (hyps, concl) = match l.kind.direction {
            Direction::Backward => (vec![l.left.item.clone(), out.clone()], l.right.item.clone()),
            Direction::Forward => (vec![l.left.item.clone(), l.right.item.clone()], out.clone()),
        };
        r.cases += 1;
        match entails(&hyps, &concl, 2) {
            Ok(true) => {}
            Ok(false) => r.fail(format!(
                "{} gave {} which is unsound",
                linkage_text(&l),
                Printer::default().formula(&out)
            )),
            Err(e) => r.fail(format!("{}: oracle {e}", linkage_text(&l))),
        }
    }
    r
}

// Unit elimination, reimplemented for comparison.

/// What a unit redex at the root reduces to.
#[derive(Clone, Copy)]
enum Reduct {
    Left,
    Right,
    Unit(bool),
}

fn unit_root(f: &Formula) -> Option<Reduct> {
    use Formula::*;
    use Reduct::*;
    let t = |g: &Formula| *g == True;
    let b = |g: &Formula| *g == False;
    match f {
        And(l, _) if t(l) => Some(Right),
        And(_, r) if t(r) => Some(Left),
        And(l, r) if b(l) || b(r) => Some(Unit(false)),
        Or(l, _) if b(l) => Some(Right),
        Or(_, r) if b(r) => Some(Left),
        Or(l, r) if t(l) || t(r) => Some(Unit(true)),
        Imp(l, _) if t(l) => Some(Right),
        Imp(l, r) if b(l) || t(r) => Some(Unit(true)),
        Forall(_, body) if t(body) => Some(Unit(true)),
        Exists(_, body) if b(body) => Some(Unit(false)),
        _ => None,
    }
}

pub fn has_unit_redex(f: &Formula) -> bool {
    unit_root(f).is_some()
        || match f {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                has_unit_redex(l) || has_unit_redex(r)
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => has_unit_redex(b),
            _ => false,
        }
}

/// One step at the rightmost outermost redex, in place.
fn outermost_step(f: &mut Formula) -> bool {
    if let Some(reduct) = unit_root(f) {
        let old = std::mem::replace(f, Formula::True);
        *f = match (reduct, old) {
            (Reduct::Unit(true), _) => Formula::True,
            (Reduct::Unit(false), _) => Formula::False,
            (Reduct::Left, Formula::And(l, _) | Formula::Or(l, _)) => *l,
            (Reduct::Right, Formula::And(_, r) | Formula::Or(_, r) | Formula::Imp(_, r)) => *r,
            _ => unreachable!(),
        };
        return true;
    }
    match f {
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            outermost_step(r) || outermost_step(l)
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => outermost_step(b),
        _ => false,
    }
}

pub fn normalize_outermost(f: &Formula) -> Formula {
    let mut cur = f.clone();
    while outermost_step(&mut cur) {}
    cur
}

fn contains_unit(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False => true,
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            contains_unit(l) || contains_unit(r)
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => contains_unit(b),
        _ => false,
    }
}

/// Checks one formula: the library normal form has no redex, is a fixed
/// point, and agrees with the other rule order.
pub fn check_units(f: &Formula, r: &mut Report) {
    let (nf, _) = eliminate_units(f);
    r.cases += 1;
    if has_unit_redex(&nf) {
        r.fail(format!("{f:?} normalizes to {nf:?} which has a redex"));
    } else if eliminate_units(&nf).0 != nf {
        r.fail(format!("{f:?}: normal form is not a fixed point"));
    } else if normalize_outermost(f) != nf {
        r.fail(format!("{f:?}: orders disagree"));
    }
}

/// Every formula over leaves `true`, `false`, `A` with exactly `n`
/// connectives among /\ \/ => and (when `quantifiers`) vacuous forall and
/// exists, visited without storing the largest layer.
pub fn units_exhaustive(max: usize, quantifiers: bool, visit: &mut impl FnMut(&Formula)) {
    let mut layers: Vec<Vec<Formula>> =
        vec![vec![Formula::True, Formula::False, Formula::atom("A")]];
    for n in 0..=max {
        if n > 0 {
            let mut layer = Vec::new();
            let mut emit = |f: Formula, layer: &mut Vec<Formula>| {
                if contains_unit(&f) {
                    visit(&f);
                }
                if n < max {
                    layer.push(f);
                }
            };
            if quantifiers {
                for b in &layers[n - 1] {
                    emit(Formula::forall("x", b.clone()), &mut layer);
                    emit(Formula::exists("x", b.clone()), &mut layer);
                }
            }
            for i in 0..n {
                let j = n - 1 - i;
                for l in &layers[i] {
                    for r in &layers[j] {
                        emit(Formula::and(l.clone(), r.clone()), &mut layer);
                        emit(Formula::or(l.clone(), r.clone()), &mut layer);
                        emit(Formula::imp(l.clone(), r.clone()), &mut layer);
                    }
                }
            }
            layers.push(layer);
        } else {
            for f in &layers[0] {
                if contains_unit(f) {
                    visit(f);
                }
            }
        }
    }
}

pub fn units(max_prop: usize, max_quant: usize) -> Report {
    let mut r = Report::default();
    units_exhaustive(max_prop, false, &mut |f| check_units(f, &mut r));
    units_exhaustive(max_quant, true, &mut |f| {
        if f.binders().is_empty() {
            return;
        }
        check_units(f, &mut r)
    });
    r
}

// Unification against brute-force search for quantifier orderings.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Q {
    All,
    Ex,
}

/// One side of a unification problem: a binder prefix over a binary atom.
#[derive(Clone, Debug)]
pub struct Side {
    pub binders: Vec<(Q, String)>,
    pub args: [Term; 2],
}

impl Side {
    pub fn formula(&self) -> Formula {
        let mut f = Formula::pred("R", self.args.to_vec());
        for (q, x) in self.binders.iter().rev() {
            f = match q {
                Q::All => Formula::forall(x.clone(), f),
                Q::Ex => Formula::exists(x.clone(), f),
            };
        }
        f
    }
}

/// All sides with up to two binders named from `names`, atom arguments
/// drawn from the bound variables, `a`, and `f` applied to a variable.
pub fn sides(names: [&str; 2]) -> Vec<Side> {
    let mut out = Vec::new();
    for k in 0..=2 {
        let vars: Vec<String> = names[..k].iter().map(|s| s.to_string()).collect();
        let mut terms: Vec<Term> = vars.iter().map(|v| Term::var(v.clone())).collect();
        terms.push(Term::constant("a"));
        terms.extend(
            vars.iter()
                .map(|v| Term::app("f", vec![Term::var(v.clone())])),
        );
        if k == 0 {
            terms.push(Term::app("f", vec![Term::constant("a")]));
        }
        let quants: Vec<Vec<Q>> = match k {
            0 => vec![vec![]],
            1 => vec![vec![Q::All], vec![Q::Ex]],
            _ => vec![
                vec![Q::All, Q::All],
                vec![Q::All, Q::Ex],
                vec![Q::Ex, Q::All],
                vec![Q::Ex, Q::Ex],
            ],
        };
        for qs in &quants {
            for s in &terms {
                for t in &terms {
                    out.push(Side {
                        binders: qs.iter().cloned().zip(vars.iter().cloned()).collect(),
                        args: [s.clone(), t.clone()],
                    });
                }
            }
        }
    }
    out
}

/// All merges of two sequences preserving the order within each.
fn interleavings<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut rest in interleavings(&a[1..], b) {
        rest.insert(0, a[0].clone());
        out.push(rest);
    }
    for mut rest in interleavings(a, &b[1..]) {
        rest.insert(0, b[0].clone());
        out.push(rest);
    }
    out
}

fn subst_all(t: &Term, env: &[(String, Term)]) -> Term {
    match t {
        Term::Var(x) => env
            .iter()
            .find(|(y, _)| y == x)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| t.clone()),
        Term::App(f, args) => {
            Term::app(f.clone(), args.iter().map(|a| subst_all(a, env)).collect())
        }
    }
}

/// Whether the two atoms can be made equal by instantiating the
/// instantiable binders, where each instantiation may only mention
/// binders that come strictly earlier in some merge of the two prefixes
/// and are not themselves instantiated. Witness terms range over `a`,
/// those binders, and up to two applications of `f`, which covers every
/// solution for atoms of this size.
pub fn brute_force_unifiable(
    left: &Side,
    l_inst: &dyn Fn(Q) -> bool,
    right: &Side,
    r_inst: &dyn Fn(Q) -> bool,
) -> bool {
    let l: Vec<(String, bool)> = left
        .binders
        .iter()
        .map(|(q, x)| (x.clone(), l_inst(*q)))
        .collect();
    let r: Vec<(String, bool)> = right
        .binders
        .iter()
        .map(|(q, x)| (x.clone(), r_inst(*q)))
        .collect();
    for order in interleavings(&l, &r) {
        if search(&order, 0, &mut Vec::new(), &mut Vec::new(), left, right) {
            return true;
        }
    }
    false
}

fn search(
    order: &[(String, bool)],
    k: usize,
    introduced: &mut Vec<String>,
    env: &mut Vec<(String, Term)>,
    left: &Side,
    right: &Side,
) -> bool {
    if k == order.len() {
        let l: Vec<Term> = left.args.iter().map(|t| subst_all(t, env)).collect();
        let r: Vec<Term> = right.args.iter().map(|t| subst_all(t, env)).collect();
        return l == r;
    }
    let (x, instantiable) = &order[k];
    // leave the binder as a fresh constant
    introduced.push(x.clone());
    let found = search(order, k + 1, introduced, env, left, right);
    introduced.pop();
    if found || !*instantiable {
        return found;
    }
    let mut bases: Vec<Term> = vec![Term::constant("a")];
    bases.extend(introduced.iter().map(|v| Term::var(v.clone())));
    for base in bases {
        let mut t = base;
        for _ in 0..3 {
            env.push((x.clone(), t.clone()));
            let found = search(order, k + 1, introduced, env, left, right);
            env.pop();
            if found {
                return true;
            }
            t = Term::app("f", vec![t]);
        }
    }
    false
}

/// Compares classification against brute force on every pair of sides,
/// once between a hypothesis and a conclusion, and once with both atoms
/// in the premise of an implication, which flips instantiability.
pub fn unify_vs_brute_force() -> (Report, usize) {
    let mut r = Report::default();
    let mut cycles = 0;
    let lefts = sides(["x", "y"]);
    let rights = sides(["u", "v"]);
    for flipped in [false, true] {
        for ls in &lefts {
            for rs in &rights {
                let (lf, rf, path) = if flipped {
                    let z = Formula::atom("Z");
                    (
                        Formula::imp(ls.formula(), z.clone()),
                        Formula::imp(rs.formula(), z),
                        vec![0],
                    )
                } else {
                    (ls.formula(), rs.formula(), vec![])
                };
                let lp = Path(
                    path.iter()
                        .cloned()
                        .chain(std::iter::repeat(0).take(ls.binders.len()))
                        .collect(),
                );
                let rp = Path(
                    path.iter()
                        .cloned()
                        .chain(std::iter::repeat(0).take(rs.binders.len()))
                        .collect(),
                );
                let got = classify(
                    &End::new(lf, lp, Role::Hypothesis),
                    &End::new(rf, rp, Role::Conclusion),
                    &constants(),
                );
                // hypotheses instantiate universals, conclusions existentials
                let l_inst = move |q: Q| (q == Q::All) != flipped;
                let r_inst = move |q: Q| (q == Q::Ex) != flipped;
                let expected = brute_force_unifiable(ls, &l_inst, rs, &r_inst);
                r.cases += 1;
                if matches!(
                    got,
                    Err(sublink_core::link::NotALinkage::UnificationFailure {
                        failure: sublink_core::unify::UnifyFailure::Cycle
                    })
                ) {
                    cycles += 1;
                }
                if got.is_ok() != expected {
                    r.fail(format!(
                        "{} vs {} (flipped {flipped}): classify {:?}, brute force {expected}",
                        Printer::default().formula(&ls.formula()),
                        Printer::default().formula(&rs.formula()),
                        got.as_ref().map(|_| ()).map_err(|e| e.to_string())
                    ));
                }
            }
        }
    }
    (r, cycles)
}

/// Random formulas over the full syntax for printing round trips,
/// including sums and nested function applications.
pub fn round_trip_formula(rng: &mut impl Rng) -> Formula {
    let gen = FormulaGen {
        max_connectives: 7,
        max_binders: 3,
        equality: true,
    };
    let f = gen.formula(rng);
    if rng.gen_bool(0.3) {
        let s = Term::app(
            "+",
            vec![
                Term::constant("a"),
                Term::app("g", vec![Term::constant("b"), Term::constant("a")]),
            ],
        );
        Formula::and(
            f,
            Formula::eq(s.clone(), Term::app("+", vec![s, Term::constant("b")])),
        )
    } else {
        f
    }
}

pub fn round_trip(seed: u64, count: usize) -> Report {
    let mut rng = rng(seed);
    let mut r = Report::default();
    for _ in 0..count {
        let f = round_trip_formula(&mut rng);
        r.cases += 1;
        let p = Printer::default();
        for text in [p.formula(&f), p.full(&f)] {
            match sublink_core::parse_formula(&text) {
                Ok(g) if g == f => {}
                Ok(g) => r.fail(format!("{text} reparsed as {}", p.formula(&g))),
                Err(e) => r.fail(format!("{text}: {e}")),
            }
        }
    }
    r
}
