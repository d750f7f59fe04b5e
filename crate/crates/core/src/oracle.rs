//! Classical evaluation over small finite models, and entailment checking
//! by exhaustive enumeration of interpretations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Formula, Term};

/// Largest supported domain.
pub const MAX_DOMAIN: usize = 3;
/// Default bound on the number of interpretations enumerated per size.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("symbol `{0}` is not interpreted")]
    UninterpretedSymbol(String),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("symbol `{name}` is used with arities {first} and {second}")]
    ArityClash {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("domain size {0} is outside 1..={MAX_DOMAIN}")]
    DomainSize(usize),
    #[error("{count} interpretations exceed the limit of {limit}")]
    ResourceLimit { count: u128, limit: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    arity: usize,
    values: Vec<usize>,
}

impl Table {
    fn index(&self, size: usize, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * size + a)
    }
}

/// A domain `{0, .., size - 1}` with total tables for function and
/// predicate symbols. Predicate tables hold 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    pub size: usize,
    functions: BTreeMap<String, Table>,
    predicates: BTreeMap<String, Table>,
}

impl FiniteModel {
    pub fn new(size: usize) -> Result<Self, OracleError> {
        if size == 0 || size > MAX_DOMAIN {
            return Err(OracleError::DomainSize(size));
        }
        Ok(FiniteModel {
            size,
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
        })
    }

    /// Interprets `name` by `f` on every argument tuple.
    pub fn function(mut self, name: &str, arity: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let values = tuples(self.size, arity)
            .map(|args| f(&args) % self.size)
            .collect();
        self.functions
            .insert(name.to_string(), Table { arity, values });
        self
    }

    /// Interprets `name` as the set of tuples satisfying `p`.
    pub fn predicate(mut self, name: &str, arity: usize, p: impl Fn(&[usize]) -> bool) -> Self {
        let values = tuples(self.size, arity)
            .map(|args| p(&args) as usize)
            .collect();
        self.predicates
            .insert(name.to_string(), Table { arity, values });
        self
    }

    pub fn term(&self, t: &Term, env: &[(&str, usize)]) -> Result<usize, OracleError> {
        match t {
            Term::Var(x) => env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| *v)
                .ok_or_else(|| OracleError::UnboundVariable(x.clone())),
            Term::App(f, args) => {
                let table = self
                    .functions
                    .get(f)
                    .ok_or_else(|| OracleError::UninterpretedSymbol(f.clone()))?;
                let vals = args
                    .iter()
                    .map(|a| self.term(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                check_arity(f, table, vals.len())?;
                Ok(table.values[table.index(self.size, &vals)])
            }
        }
    }

    /// Classical satisfaction of a closed formula.
    pub fn eval(&self, f: &Formula) -> Result<bool, OracleError> {
        self.eval_in(f, &mut Vec::new())
    }

    fn eval_in<'a>(
        &self,
        f: &'a Formula,
        env: &mut Vec<(&'a str, usize)>,
    ) -> Result<bool, OracleError> {
        Ok(match f {
            Formula::Pred(p, args) => {
                let table = self
                    .predicates
                    .get(p)
                    .ok_or_else(|| OracleError::UninterpretedSymbol(p.clone()))?;
                let vals = args
                    .iter()
                    .map(|a| self.term(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                check_arity(p, table, vals.len())?;
                table.values[table.index(self.size, &vals)] == 1
            }
            Formula::Eq(s, t) => self.term(s, env)? == self.term(t, env)?,
            Formula::True => true,
            Formula::False => false,
            Formula::And(a, b) => self.eval_in(a, env)? && self.eval_in(b, env)?,
            Formula::Or(a, b) => self.eval_in(a, env)? || self.eval_in(b, env)?,
            Formula::Imp(a, b) => !self.eval_in(a, env)? || self.eval_in(b, env)?,
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let universal = matches!(f, Formula::Forall(..));
                for d in 0..self.size {
                    env.push((x, d));
                    let v = self.eval_in(body, env);
                    env.pop();
                    if v? != universal {
                        return Ok(!universal);
                    }
                }
                universal
            }
        })
    }
}

fn check_arity(name: &str, table: &Table, found: usize) -> Result<(), OracleError> {
    if table.arity != found {
        return Err(OracleError::ArityClash {
            name: name.to_string(),
            first: table.arity,
            second: found,
        });
    }
    Ok(())
}

/// All argument tuples over `0..size` of length `arity`, in table order.
fn tuples(size: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = size.pow(arity as u32);
    (0..count).map(move |mut k| {
        let mut args = vec![0; arity];
        for slot in args.iter_mut().rev() {
            *slot = k % size;
            k /= size;
        }
        args
    })
}

#[derive(Default)]
struct Symbols {
    functions: BTreeMap<String, usize>,
    predicates: BTreeMap<String, usize>,
}

impl Symbols {
    fn add(map: &mut BTreeMap<String, usize>, name: &str, arity: usize) -> Result<(), OracleError> {
        match map.insert(name.to_string(), arity) {
            Some(first) if first != arity => Err(OracleError::ArityClash {
                name: name.to_string(),
                first,
                second: arity,
            }),
            _ => Ok(()),
        }
    }

    fn term(&mut self, t: &Term) -> Result<(), OracleError> {
        if let Term::App(f, args) = t {
            Self::add(&mut self.functions, f, args.len())?;
            args.iter().try_for_each(|a| self.term(a))?;
        }
        Ok(())
    }

    fn formula(&mut self, f: &Formula) -> Result<(), OracleError> {
        match f {
            Formula::Pred(p, args) => {
                Self::add(&mut self.predicates, p, args.len())?;
                args.iter().try_for_each(|a| self.term(a))
            }
            Formula::Eq(s, t) => {
                self.term(s)?;
                self.term(t)
            }
            Formula::True | Formula::False => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                self.formula(a)?;
                self.formula(b)
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => self.formula(b),
        }
    }
}

/// Number of interpretations of the symbols of `formulas` at `size`.
pub fn interpretation_count(formulas: &[&Formula], size: usize) -> Result<u128, OracleError> {
    let mut syms = Symbols::default();
    formulas.iter().try_for_each(|f| syms.formula(f))?;
    let entries = |arity: usize| (size as u128).saturating_pow(arity as u32);
    let mut count: u128 = 1;
    for &a in syms.functions.values() {
        count = count
            .saturating_mul((size as u128).saturating_pow(entries(a).min(u32::MAX as u128) as u32));
    }
    for &a in syms.predicates.values() {
        count = count.saturating_mul(2u128.saturating_pow(entries(a).min(u32::MAX as u128) as u32));
    }
    Ok(count)
}

/// A model of size at most `max_size` satisfying every hypothesis and
/// falsifying the conclusion, if one exists.
pub fn countermodel(
    hyps: &[Formula],
    concl: &Formula,
    max_size: usize,
    limit: u64,
) -> Result<Option<FiniteModel>, OracleError> {
    let mut syms = Symbols::default();
    hyps.iter()
        .chain([concl])
        .try_for_each(|f| syms.formula(f))?;
    let all: Vec<&Formula> = hyps.iter().chain([concl]).collect();
    for size in 1..=max_size {
        let count = interpretation_count(&all, size)?;
        if count > limit as u128 {
            return Err(OracleError::ResourceLimit { count, limit });
        }
        let mut model = FiniteModel::new(size)?;
        // one odometer digit per table entry: (is_function, name, index, radix)
        let mut digits = Vec::new();
        for (name, &arity) in &syms.functions {
            let n = size.pow(arity as u32);
            model.functions.insert(
                name.clone(),
                Table {
                    arity,
                    values: vec![0; n],
                },
            );
            digits.extend((0..n).map(|i| (true, name.clone(), i, size)));
        }
        for (name, &arity) in &syms.predicates {
            let n = size.pow(arity as u32);
            model.predicates.insert(
                name.clone(),
                Table {
                    arity,
                    values: vec![0; n],
                },
            );
            digits.extend((0..n).map(|i| (false, name.clone(), i, 2)));
        }
        loop {
            if hyps
                .iter()
                .map(|h| model.eval(h))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .all(|v| v)
                && !model.eval(concl)?
            {
                return Ok(Some(model));
            }
            // advance the odometer
            let mut carried = true;
            for (is_fn, name, i, radix) in &digits {
                let table = if *is_fn {
                    model.functions.get_mut(name)
                } else {
                    model.predicates.get_mut(name)
                }
                .unwrap();
                table.values[*i] += 1;
                if table.values[*i] < *radix {
                    carried = false;
                    break;
                }
                table.values[*i] = 0;
            }
            if carried {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether every model of size at most `max_size` satisfying `hyps`
/// satisfies `concl`.
pub fn entails(hyps: &[Formula], concl: &Formula, max_size: usize) -> Result<bool, OracleError> {
    Ok(countermodel(hyps, concl, max_size, DEFAULT_LIMIT)?.is_none())
}
