use crate::syntax::Formula;

use super::rules::RuleId;

/// Removes redundant occurrences of `true` and `false`, always rewriting
/// the leftmost innermost redex.
///
/// Returns the normal form together with the rules fired, each paired with
/// the whole formula right after it fired.
pub fn eliminate_units(f: &Formula) -> (Formula, Vec<(RuleId, Formula)>) {
    let mut trace = Vec::new();
    let mut cur = f.clone();
    let mut path = Vec::new();
    while let Some(rule) = innermost(&cur, &mut path) {
        let node = subformula_mut(&mut cur, &path);
        *node = contract(std::mem::replace(node, Formula::True), rule);
        trace.push((rule, cur.clone()));
        path.clear();
    }
    (cur, trace)
}

/// The rule at the leftmost innermost redex, leaving its path in `path`.
fn innermost(f: &Formula, path: &mut Vec<usize>) -> Option<RuleId> {
    let children: &[&Formula] = match f {
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => &[l, r],
        Formula::Forall(_, b) | Formula::Exists(_, b) => &[b],
        _ => &[],
    };
    for (i, c) in children.iter().enumerate() {
        path.push(i);
        if let Some(rule) = innermost(c, path) {
            return Some(rule);
        }
        path.pop();
    }
    redex(f)
}

fn subformula_mut<'a>(f: &'a mut Formula, path: &[usize]) -> &'a mut Formula {
    let Some((&i, rest)) = path.split_first() else {
        return f;
    };
    match f {
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            subformula_mut(if i == 0 { l } else { r }, rest)
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => subformula_mut(b, rest),
        _ => unreachable!("redex paths only cross connectives"),
    }
}

/// The unit rule applying at the root, if any.
fn redex(f: &Formula) -> Option<RuleId> {
    use Formula::{False, True};
    match f {
        Formula::And(l, r) => match (&**l, &**r) {
            (True, _) => Some(RuleId::Neul),
            (False, _) => Some(RuleId::Absl),
            (_, True) => Some(RuleId::Neur),
            (_, False) => Some(RuleId::Absr),
            _ => None,
        },
        Formula::Or(l, r) => match (&**l, &**r) {
            (False, _) => Some(RuleId::Neul),
            (True, _) => Some(RuleId::Absl),
            (_, False) => Some(RuleId::Neur),
            (_, True) => Some(RuleId::Absr),
            _ => None,
        },
        Formula::Imp(l, r) => match (&**l, &**r) {
            (True, _) => Some(RuleId::Neul),
            (False, _) => Some(RuleId::Efq),
            (_, True) => Some(RuleId::Absr),
            _ => None,
        },
        Formula::Forall(_, b) if **b == True => Some(RuleId::Absq),
        Formula::Exists(_, b) if **b == False => Some(RuleId::Absq),
        _ => None,
    }
}

/// Applies `rule`, found by [`redex`], at the root of `f`.
fn contract(f: Formula, rule: RuleId) -> Formula {
    match (f, rule) {
        (Formula::And(_, r) | Formula::Or(_, r) | Formula::Imp(_, r), RuleId::Neul) => *r,
        (Formula::And(l, _) | Formula::Or(l, _), RuleId::Neur) => *l,
        (Formula::And(..), _) => Formula::False,
        (Formula::Or(..) | Formula::Imp(..), _) => Formula::True,
        (Formula::Forall(..), _) => Formula::True,
        (Formula::Exists(..), _) => Formula::False,
        _ => unreachable!("only compound formulas are redexes"),
    }
}

/// True when no unit rule applies anywhere in `f`.
pub fn is_unit_normal(f: &Formula) -> bool {
    if redex(f).is_some() {
        return false;
    }
    match f {
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            is_unit_normal(l) && is_unit_normal(r)
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => is_unit_normal(b),
        _ => true,
    }
}
