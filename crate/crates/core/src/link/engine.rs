use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::parser::Printer;
use crate::path::{inversions, replace_at, resolve, Path, Subject};
use crate::syntax::{Connective, Formula, Quantifier, Term};
use crate::unify::{Resolution, Side, Unifier};

use super::rules::RuleId;
use super::units::eliminate_units;
use super::{reachable, Direction, Linkage, Origin};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    /// `⊢`: the left operand is used to prove the right one.
    Turnstile,
    /// `∗`: two hypotheses combined.
    Star,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::Turnstile => "|-",
            Op::Star => "*",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operand {
    pub formula: Formula,
    pub sel: Path,
    pub origin: Origin,
}

/// One layer of the context around the operator.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Frame {
    Binary {
        conn: Connective,
        other: Formula,
        hole_left: bool,
    },
    Quant {
        q: Quantifier,
        var: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: RuleId,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnDResult {
    pub result: Formula,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no linking rule applies to {state}")]
    Stuck { state: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Rule(RuleId),
    /// Both selections are at the top of their operands: ready to interact.
    Redex,
}

struct Candidate {
    operand: usize,
    rule: RuleId,
    inst: Option<Term>,
}

/// A formula `D⟨L op R⟩` in the middle of a linking derivation.
#[derive(Clone, Debug)]
pub struct InteractionState {
    frames: Vec<Frame>,
    pub op: Op,
    /// Left and right operands.
    pub operands: [Operand; 2],
    unifier: Unifier,
    introduced: BTreeSet<String>,
    /// Index of the operand holding the equation, for rewrite linkages.
    equation: Option<usize>,
    initial_op: Op,
    printer: Printer,
}

impl InteractionState {
    pub fn new(linkage: &Linkage, printer: Printer) -> Self {
        let op = match linkage.kind.direction {
            Direction::Backward => Op::Turnstile,
            Direction::Forward => Op::Star,
        };
        let operand = |s: &super::Selection| Operand {
            formula: s.item.clone(),
            sel: s.path.clone(),
            origin: s.origin,
        };
        let equation = linkage.equation.map(|side| match side {
            Side::Left => 0,
            Side::Right => 1,
        });
        InteractionState {
            frames: Vec::new(),
            op,
            operands: [operand(&linkage.left), operand(&linkage.right)],
            unifier: linkage.unifier.clone(),
            introduced: BTreeSet::new(),
            equation,
            initial_op: op,
            printer,
        }
    }

    /// Number of implications whose premise contains the operator.
    pub fn context_inversions(&self) -> usize {
        self.frames
            .iter()
            .filter(|f| {
                matches!(
                    f,
                    Frame::Binary {
                        conn: Connective::Imp,
                        hole_left: true,
                        ..
                    }
                )
            })
            .count()
    }

    /// The context polarity flips exactly when the operator has flipped.
    pub fn polarity_consistent(&self) -> bool {
        (self.op != self.initial_op) == (self.context_inversions() % 2 == 1)
    }

    fn done(&self, k: usize) -> bool {
        let o = &self.operands[k];
        match self.equation {
            None => o.sel.is_empty(),
            Some(e) if e == k => matches!(o.formula, Formula::Eq(..)) && o.sel.len() == 1,
            Some(_) => {
                matches!(o.formula, Formula::Pred(..) | Formula::Eq(..)) && !o.sel.is_empty()
            }
        }
    }

    /// Implication premises still to be entered by operand `k`.
    fn premises(&self, k: usize) -> usize {
        let o = &self.operands[k];
        inversions(&o.formula, &o.sel)
    }

    /// Whether entering a premise with `c` still leaves a way to the redex.
    fn viable(&self, c: &Candidate) -> bool {
        let k = c.operand;
        let mut counts = [self.premises(0), self.premises(1)];
        match c.rule {
            RuleId::RImp1 => {
                counts[1] -= 1;
                reachable(true, counts, self.equation)
            }
            RuleId::FImp1 => {
                let next = [counts[1 - k], counts[k] - 1];
                reachable(false, next, self.equation.map(|e| usize::from(e == k)))
            }
            _ => true,
        }
    }

    fn candidate(&self, k: usize) -> Option<Candidate> {
        let c = self.unfiltered(k)?;
        self.viable(&c).then_some(c)
    }

    fn unfiltered(&self, k: usize) -> Option<Candidate> {
        if self.done(k) {
            return None;
        }
        let o = &self.operands[k];
        let first = o.sel.first()?;
        let pick = |a: RuleId, b: RuleId| if first == 0 { a } else { b };
        let quant = |i: RuleId, s: RuleId, x: &str| match self.unifier.resolve(x, &self.introduced)
        {
            Resolution::Instantiate(t) => Some((i, Some(t))),
            Resolution::Introduce => Some((s, None)),
            Resolution::Blocked => None,
        };
        let (rule, inst) = match (self.op, k, &o.formula) {
            (Op::Turnstile, 0, Formula::And(..)) => (pick(RuleId::LAnd1, RuleId::LAnd2), None),
            (Op::Turnstile, 0, Formula::Or(..)) => (pick(RuleId::LOr1, RuleId::LOr2), None),
            (Op::Turnstile, 0, Formula::Imp(..)) if first == 1 => (RuleId::LImp2, None),
            (Op::Turnstile, 0, Formula::Forall(x, _)) => {
                quant(RuleId::LForallI, RuleId::LForallS, x)?
            }
            (Op::Turnstile, 0, Formula::Exists(..)) => (RuleId::LExistsS, None),
            (Op::Turnstile, 1, Formula::And(..)) => (pick(RuleId::RAnd1, RuleId::RAnd2), None),
            (Op::Turnstile, 1, Formula::Or(..)) => (pick(RuleId::ROr1, RuleId::ROr2), None),
            (Op::Turnstile, 1, Formula::Imp(..)) => (pick(RuleId::RImp1, RuleId::RImp2), None),
            (Op::Turnstile, 1, Formula::Forall(..)) => (RuleId::RForallS, None),
            (Op::Turnstile, 1, Formula::Exists(x, _)) => {
                quant(RuleId::RExistsI, RuleId::RExistsS, x)?
            }
            (Op::Star, _, Formula::And(..)) => (pick(RuleId::FAnd1, RuleId::FAnd2), None),
            (Op::Star, _, Formula::Or(..)) => (pick(RuleId::FOr1, RuleId::FOr2), None),
            (Op::Star, _, Formula::Imp(..)) => (pick(RuleId::FImp1, RuleId::FImp2), None),
            (Op::Star, _, Formula::Forall(x, _)) => quant(RuleId::FForallI, RuleId::FForallS, x)?,
            (Op::Star, _, Formula::Exists(..)) => (RuleId::FExistsS, None),
            _ => return None,
        };
        Some(Candidate {
            operand: k,
            rule,
            inst,
        })
    }

    /// Strategy: invertible rules first. Backward, the right operand is
    /// decomposed before the left one; forward, the source operand goes
    /// first, except that `F⇒2` wins over `F∨`.
    fn choose(&self) -> Option<Candidate> {
        let c0 = self.candidate(0);
        let c1 = self.candidate(1);
        let order: [Option<Candidate>; 2] = match self.op {
            Op::Turnstile => {
                if c0.as_ref().is_some_and(|c| c.rule.is_invertible()) {
                    [c0, c1]
                } else if c1.as_ref().is_some_and(|c| c.rule.is_invertible()) {
                    [c1, c0]
                } else {
                    [c1, c0]
                }
            }
            Op::Star => {
                let src = if self.operands[0].origin == Origin::Src {
                    0
                } else {
                    1
                };
                let (cs, cd) = if src == 0 { (c0, c1) } else { (c1, c0) };
                let inv =
                    |c: &Option<Candidate>| c.as_ref().is_some_and(|c| c.rule.is_invertible());
                let is = |c: &Option<Candidate>, r: &[RuleId]| {
                    c.as_ref().is_some_and(|c| r.contains(&c.rule))
                };
                let disj = [RuleId::FOr1, RuleId::FOr2];
                if inv(&cs) {
                    [cs, cd]
                } else if inv(&cd) {
                    [cd, cs]
                } else if is(&cd, &[RuleId::FImp2]) && is(&cs, &disj) {
                    [cd, cs]
                } else {
                    [cs, cd]
                }
            }
        };
        order.into_iter().flatten().next()
    }

    /// Applies one linking rule, or reports that the interaction redex has
    /// been reached.
    pub fn step(&mut self) -> Result<StepOutcome, EngineError> {
        if self.done(0) && self.done(1) {
            return Ok(StepOutcome::Redex);
        }
        let c = self.choose().ok_or_else(|| EngineError::Stuck {
            state: self.render(),
        })?;
        self.apply(&c);
        Ok(StepOutcome::Rule(c.rule))
    }

    fn apply(&mut self, c: &Candidate) {
        let k = c.operand;
        let o = self.operands[k].clone();
        let first = o.sel.first().expect("candidate has a step");
        let tail = o.sel.tail();
        let other = self.operands[1 - k].formula.clone();
        let set = |s: &mut Self, f: Formula| {
            s.operands[k] = Operand {
                formula: f,
                sel: tail.clone(),
                origin: o.origin,
            };
        };
        match (&o.formula, c.rule) {
            (Formula::Forall(x, b) | Formula::Exists(x, b), _) => {
                let q = o.formula.as_quant().unwrap().0;
                match &c.inst {
                    Some(t) => set(self, b.substitute(x, t)),
                    None => {
                        let outer = match (c.rule, q) {
                            (RuleId::LForallS, _) => Quantifier::Exists,
                            (RuleId::LExistsS, _) => Quantifier::Forall,
                            (_, q) => q,
                        };
                        self.frames.push(Frame::Quant {
                            q: outer,
                            var: x.clone(),
                        });
                        self.introduced.insert(x.clone());
                        set(self, (**b).clone());
                    }
                }
            }
            (Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r), rule) => {
                let (kept, dropped) = if first == 0 {
                    ((**l).clone(), (**r).clone())
                } else {
                    ((**r).clone(), (**l).clone())
                };
                let keep_left = first == 0;
                let mut push = |conn, other: Formula, hole_left| {
                    self.frames.push(Frame::Binary {
                        conn,
                        other,
                        hole_left,
                    });
                };
                match rule {
                    RuleId::LAnd1 | RuleId::LAnd2 | RuleId::FAnd1 | RuleId::FAnd2 => {}
                    RuleId::LOr1 | RuleId::LOr2 => {
                        push(Connective::And, Formula::imp(dropped, other), keep_left)
                    }
                    RuleId::LImp2 => push(Connective::And, dropped, false),
                    RuleId::RAnd1 | RuleId::RAnd2 => push(Connective::And, dropped, keep_left),
                    RuleId::ROr1 | RuleId::ROr2 | RuleId::FOr1 | RuleId::FOr2 => {
                        push(Connective::Or, dropped, keep_left)
                    }
                    RuleId::RImp1 => {
                        push(Connective::Imp, dropped, true);
                        self.op = Op::Star;
                    }
                    RuleId::RImp2 | RuleId::FImp2 => push(Connective::Imp, dropped, false),
                    RuleId::FImp1 => {
                        push(Connective::Imp, dropped, true);
                        self.op = Op::Turnstile;
                        let hyp = self.operands[1 - k].clone();
                        self.operands = [
                            hyp,
                            Operand {
                                formula: kept,
                                sel: tail,
                                origin: o.origin,
                            },
                        ];
                        self.equation = self.equation.map(|e| if e == k { 1 } else { 0 });
                        return;
                    }
                    _ => unreachable!("rule {rule} does not decompose a binary connective"),
                }
                set(self, kept);
            }
            _ => unreachable!("candidates only exist for compound operands"),
        }
    }

    /// Performs the interaction at a redex and returns the rule used and
    /// the resulting formula.
    pub fn interact(&self) -> Result<(RuleId, Formula), EngineError> {
        let stuck = || EngineError::Stuck {
            state: self.render(),
        };
        let hole = match self.equation {
            None => {
                let [l, r] = &self.operands;
                if self.op != Op::Turnstile || !l.formula.alpha_eq(&r.formula) {
                    return Err(stuck());
                }
                (RuleId::Id, Formula::True)
            }
            Some(e) => {
                let eq = &self.operands[e];
                let target = &self.operands[1 - e];
                let Formula::Eq(a, b) = &eq.formula else {
                    return Err(stuck());
                };
                let side = eq.sel.first().unwrap();
                let (t, u) = if side == 0 { (a, b) } else { (b, a) };
                match resolve(&target.formula, &target.sel) {
                    Ok(crate::path::Node::Term(found)) if found == t => {}
                    _ => return Err(stuck()),
                }
                let rule = match (self.op, e, side) {
                    (Op::Turnstile, 0, 0) => RuleId::LEq1,
                    (Op::Turnstile, 0, _) => RuleId::LEq2,
                    (Op::Star, _, 0) => RuleId::FEq1,
                    (Op::Star, _, _) => RuleId::FEq2,
                    _ => return Err(stuck()),
                };
                let out = replace_at(&target.formula, &target.sel, Subject::Term(u.clone()))
                    .map_err(|_| stuck())?;
                (rule, out)
            }
        };
        Ok((hole.0, self.wrap(hole.1)))
    }

    fn wrap(&self, mut f: Formula) -> Formula {
        for frame in self.frames.iter().rev() {
            f = match frame {
                Frame::Binary {
                    conn,
                    other,
                    hole_left: true,
                } => Formula::binary(*conn, f, other.clone()),
                Frame::Binary {
                    conn,
                    other,
                    hole_left: false,
                } => Formula::binary(*conn, other.clone(), f),
                Frame::Quant { q, var } => Formula::quant(*q, var.clone(), f),
            };
        }
        f
    }

    /// Renders `D⟨L op R⟩` in the canonical syntax.
    pub fn render(&self) -> String {
        const HOLE: &str = "\u{25a1}";
        let [l, r] = &self.operands;
        let inner = format!(
            "{} {} {}",
            self.render_operand(&l.formula, true),
            self.op.symbol(),
            self.render_operand(&r.formula, self.op == Op::Star)
        );
        if self.frames.is_empty() {
            return inner;
        }
        let outer = self.printer.formula(&self.wrap(Formula::atom(HOLE)));
        outer.replace(HOLE, &format!("({inner})"))
    }

    fn render_operand(&self, f: &Formula, enclose: bool) -> String {
        let s = self.printer.formula(f);
        let needs_parens = enclose
            && match f {
                Formula::Imp(_, b) if **b == Formula::False => false,
                Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => true,
                Formula::Forall(..) | Formula::Exists(..) => true,
                _ => false,
            };
        if needs_parens {
            format!("({s})")
        } else {
            s
        }
    }
}

const MAX_STEPS: usize = 10_000;

/// Runs a linkage to completion: linking rules under the strategy, the
/// interaction, then unit elimination for logical linkages.
pub fn execute(linkage: &Linkage, printer: Printer) -> Result<DnDResult, EngineError> {
    let mut state = InteractionState::new(linkage, printer);
    let mut trace = Vec::new();
    for _ in 0..MAX_STEPS {
        match state.step()? {
            StepOutcome::Rule(rule) => trace.push(TraceStep {
                rule,
                state: state.render(),
            }),
            StepOutcome::Redex => {
                let (rule, out) = state.interact()?;
                trace.push(TraceStep {
                    rule,
                    state: printer.formula(&out),
                });
                let result = if rule == RuleId::Id {
                    let (normal, steps) = eliminate_units(&out);
                    trace.extend(steps.into_iter().map(|(rule, f)| TraceStep {
                        rule,
                        state: printer.formula(&f),
                    }));
                    normal
                } else {
                    out
                };
                return Ok(DnDResult { result, trace });
            }
        }
    }
    Err(EngineError::Stuck {
        state: state.render(),
    })
}
