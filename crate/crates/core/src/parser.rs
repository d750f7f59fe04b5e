//! Concrete syntax: lexer, recursive-descent parser, printers and the
//! line-oriented problem format.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! imp   ::= or ( "=>" imp )?
//! or    ::= and ( "\/" and )*
//! and   ::= unary ( "/\" unary )*
//! unary ::= "~" unary | ("forall" | "exists") ident+ "." imp | primary
//! prim  ::= "true" | "false" | "(" imp ")" | term "=" term | ident ( "(" term,* ")" )?
//! term  ::= tatom ( "+" tatom )*
//! tatom ::= ident ( "(" term,* ")" )? | numeral | "(" term ")"
//! ```
//!
//! Identifiers bound by an enclosing quantifier become variables, all
//! others become constants.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("symbol `{symbol}` has arity {expected} but is used with {found} argument(s)")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("problem has no goal")]
    MissingGoal,
    #[error("second goal on line {line}")]
    DuplicateGoal { line: usize },
}

impl ParseError {
    fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } => (*line, *col),
            _ => (0, 0),
        }
    }
}

/// Arities of the function and predicate symbols seen so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
}

impl Signature {
    fn use_symbol(
        map: &mut BTreeMap<String, usize>,
        name: &str,
        arity: usize,
    ) -> Result<(), ParseError> {
        match map.get(name) {
            Some(&expected) if expected != arity => Err(ParseError::ArityMismatch {
                symbol: name.to_string(),
                expected,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                map.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn use_function(&mut self, name: &str, arity: usize) -> Result<(), ParseError> {
        Self::use_symbol(&mut self.functions, name, arity)
    }

    pub fn use_predicate(&mut self, name: &str, arity: usize) -> Result<(), ParseError> {
        Self::use_symbol(&mut self.predicates, name, arity)
    }

    pub fn has_function(&self, name: &str) -> bool {
        self.functions.contains_key(name)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub peano_numerals: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Plus,
    Equals,
    Assign,
    And,
    Or,
    Imp,
    Not,
    Forall,
    Exists,
    True,
    False,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Imp => "`=>`".into(),
            Tok::Not => "`~`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, col });
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let fixed = match two.as_str() {
            "/\\" => Some((Tok::And, 2)),
            "\\/" => Some((Tok::Or, 2)),
            "=>" => Some((Tok::Imp, 2)),
            ":=" => Some((Tok::Assign, 2)),
            _ => match c {
                '(' => Some((Tok::LParen, 1)),
                ')' => Some((Tok::RParen, 1)),
                ',' => Some((Tok::Comma, 1)),
                '.' => Some((Tok::Dot, 1)),
                '+' => Some((Tok::Plus, 1)),
                '=' => Some((Tok::Equals, 1)),
                '~' | '¬' => Some((Tok::Not, 1)),
                '∧' => Some((Tok::And, 1)),
                '∨' => Some((Tok::Or, 1)),
                '⇒' | '→' => Some((Tok::Imp, 1)),
                '∀' => Some((Tok::Forall, 1)),
                '∃' => Some((Tok::Exists, 1)),
                '⊤' => Some((Tok::True, 1)),
                '⊥' => Some((Tok::False, 1)),
                _ => None,
            },
        };
        if let Some((tok, len)) = fixed {
            push(&mut out, tok);
            i += len;
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            push(&mut out, tok);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && is_ident_start(chars[i]) {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    message: "identifiers cannot start with a digit".into(),
                });
            }
            push(&mut out, Tok::Num(chars[start..i].iter().collect()));
            continue;
        }
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    bound: Vec<String>,
    sig: &'a mut Signature,
    flags: Flags,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let l = self.or()?;
        if self.eat(&Tok::Imp) {
            let r = self.imp()?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.and()?;
        while self.eat(&Tok::Or) {
            let r = self.and()?;
            l = Formula::or(l, r);
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.unary()?;
        while self.eat(&Tok::And) {
            let r = self.unary()?;
            l = Formula::and(l, r);
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = self.bump();
                let mut vars = Vec::new();
                while let Tok::Ident(x) = self.peek().clone() {
                    self.bump();
                    vars.push(x);
                }
                if vars.is_empty() {
                    return Err(self.unexpected("a variable"));
                }
                self.expect(Tok::Dot)?;
                let n = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                let body = self.imp();
                self.bound.truncate(n);
                let mut f = body?;
                for x in vars.into_iter().rev() {
                    f = if q == Tok::Forall {
                        Formula::forall(x, f)
                    } else {
                        Formula::exists(x, f)
                    };
                }
                Ok(f)
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                let save = self.pos;
                let sig = self.sig.clone();
                self.bump();
                let first = self.imp().and_then(|f| {
                    self.expect(Tok::RParen)?;
                    if matches!(self.peek(), Tok::Equals | Tok::Plus) {
                        Err(self.error_here("parenthesized formula used as a term"))
                    } else {
                        Ok(f)
                    }
                });
                match first {
                    Ok(f) => Ok(f),
                    Err(e1) => {
                        self.pos = save;
                        *self.sig = sig;
                        self.term_formula().map_err(|e2| {
                            if e2.position() >= e1.position() {
                                e2
                            } else {
                                e1
                            }
                        })
                    }
                }
            }
            _ => self.term_formula(),
        }
    }

    /// An equation or an application read as a predicate.
    fn term_formula(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let starts_numeric = matches!(self.peek(), Tok::Num(_));
        let t = self.term()?;
        if self.eat(&Tok::Equals) {
            let u = self.term()?;
            self.register_term(&t)?;
            self.register_term(&u)?;
            return Ok(Formula::eq(t, u));
        }
        let here = self.pos;
        self.pos = start;
        let err = |p: &Self, m: &str| p.error_here(m);
        match t {
            _ if starts_numeric => Err(err(self, "a numeral is not a proposition")),
            Term::Var(x) => Err(err(
                self,
                &format!("bound variable `{x}` used as a proposition"),
            )),
            Term::App(ref p, _) if p == "+" => Err(err(self, "a sum is not a proposition")),
            Term::App(p, args) => {
                self.pos = here;
                for a in &args {
                    self.register_term(a)?;
                }
                self.sig.use_predicate(&p, args.len())?;
                Ok(Formula::Pred(p, args))
            }
        }
    }

    fn register_term(&mut self, t: &Term) -> Result<(), ParseError> {
        if let Term::App(f, args) = t {
            self.sig.use_function(f, args.len())?;
            for a in args {
                self.register_term(a)?;
            }
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut l = self.term_atom()?;
        while self.eat(&Tok::Plus) {
            let r = self.term_atom()?;
            l = Term::app("+", vec![l, r]);
        }
        Ok(l)
    }

    fn term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                if self.peek() == &Tok::LParen {
                    if self.bound.contains(&x) {
                        return Err(
                            self.error_here(format!("bound variable `{x}` applied to arguments"))
                        );
                    }
                    self.bump();
                    let mut args = vec![self.term()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Term::App(x, args))
                } else if self.bound.contains(&x) {
                    Ok(Term::Var(x))
                } else {
                    Ok(Term::constant(x))
                }
            }
            Tok::Num(n) => {
                self.bump();
                self.numeral(&n)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn numeral(&self, digits: &str) -> Result<Term, ParseError> {
        if !self.flags.peano_numerals {
            return Ok(Term::constant(digits));
        }
        let n: u32 = digits
            .parse()
            .ok()
            .filter(|&n| n <= 10_000)
            .ok_or_else(|| self.error_here(format!("numeral {digits} is too large")))?;
        Ok(peano(n))
    }
}

/// The unary numeral `S(...S(0)...)` with `n` successors.
pub fn peano(n: u32) -> Term {
    (0..n).fold(Term::constant("0"), |t, _| Term::app("S", vec![t]))
}

fn peano_value(t: &Term) -> Option<u32> {
    match t {
        Term::App(z, args) if z == "0" && args.is_empty() => Some(0),
        Term::App(s, args) if s == "S" && args.len() == 1 => peano_value(&args[0]).map(|n| n + 1),
        _ => None,
    }
}

/// Parsing state that persists across the formulas of one problem.
#[derive(Clone, Debug, Default)]
pub struct ParseContext {
    pub signature: Signature,
    pub flags: Flags,
}

impl ParseContext {
    pub fn new(flags: Flags) -> Self {
        ParseContext {
            signature: Signature::default(),
            flags,
        }
    }

    pub fn formula(&mut self, text: &str) -> Result<Formula, ParseError> {
        self.formula_at(text, 1, 1)
    }

    fn formula_at(&mut self, text: &str, line: usize, col: usize) -> Result<Formula, ParseError> {
        let toks = lex(text, line, col)?;
        let mut sig = self.signature.clone();
        let mut p = Parser {
            toks,
            pos: 0,
            bound: Vec::new(),
            sig: &mut sig,
            flags: self.flags,
        };
        let f = p.imp()?;
        p.finish()?;
        self.signature = sig;
        Ok(f)
    }

    /// A closed term; identifiers are read as constants.
    pub fn term(&mut self, text: &str) -> Result<Term, ParseError> {
        self.term_at(text, 1, 1)
    }

    fn term_at(&mut self, text: &str, line: usize, col: usize) -> Result<Term, ParseError> {
        let toks = lex(text, line, col)?;
        let mut sig = self.signature.clone();
        let mut p = Parser {
            toks,
            pos: 0,
            bound: Vec::new(),
            sig: &mut sig,
            flags: self.flags,
        };
        let t = p.term()?;
        p.finish()?;
        p.register_term(&t)?;
        self.signature = sig;
        Ok(t)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    ParseContext::default().formula(text)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    ParseContext::default().term(text)
}

/// Rendering options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Printer {
    pub peano_numerals: bool,
}

const P_IMP: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_UNARY: u8 = 4;

impl Printer {
    pub fn new(flags: Flags) -> Self {
        Printer {
            peano_numerals: flags.peano_numerals,
        }
    }

    /// Canonical rendering with as few parentheses as the grammar allows.
    pub fn formula(&self, f: &Formula) -> String {
        let mut out = String::new();
        self.write_formula(f, P_IMP, true, &mut out);
        out
    }

    pub fn term(&self, t: &Term) -> String {
        let mut out = String::new();
        self.write_term(t, false, &mut out);
        out
    }

    /// Rendering with every compound subformula and sum parenthesized.
    pub fn full(&self, f: &Formula) -> String {
        match f {
            Formula::Imp(a, b) if **b == Formula::False => format!("(~{})", self.full(a)),
            Formula::And(a, b) => format!("({} /\\ {})", self.full(a), self.full(b)),
            Formula::Or(a, b) => format!("({} \\/ {})", self.full(a), self.full(b)),
            Formula::Imp(a, b) => format!("({} => {})", self.full(a), self.full(b)),
            Formula::Forall(x, b) => format!("(forall {x}. {})", self.full(b)),
            Formula::Exists(x, b) => format!("(exists {x}. {})", self.full(b)),
            Formula::Eq(a, b) => format!("{} = {}", self.full_term(a), self.full_term(b)),
            Formula::Pred(p, args) if args.is_empty() => p.clone(),
            Formula::Pred(p, args) => {
                let args: Vec<String> = args.iter().map(|a| self.full_term(a)).collect();
                format!("{p}({})", args.join(","))
            }
            Formula::True => "true".into(),
            Formula::False => "false".into(),
        }
    }

    fn full_term(&self, t: &Term) -> String {
        match t {
            Term::App(f, args) if f == "+" && args.len() == 2 => {
                format!(
                    "({} + {})",
                    self.full_term(&args[0]),
                    self.full_term(&args[1])
                )
            }
            Term::App(f, args) if !args.is_empty() => {
                let args: Vec<String> = args.iter().map(|a| self.full_term(a)).collect();
                format!("{f}({})", args.join(","))
            }
            _ => self.term(t),
        }
    }

    fn write_formula(&self, f: &Formula, min: u8, rightmost: bool, out: &mut String) {
        let (prec, is_quant) = match f {
            Formula::Imp(_, b) if **b == Formula::False => (P_UNARY, false),
            Formula::Imp(..) => (P_IMP, false),
            Formula::Or(..) => (P_OR, false),
            Formula::And(..) => (P_AND, false),
            Formula::Forall(..) | Formula::Exists(..) => (P_UNARY, true),
            _ => (u8::MAX, false),
        };
        let paren = prec < min || (is_quant && !rightmost);
        let rightmost = rightmost || paren;
        if paren {
            out.push('(');
        }
        match f {
            Formula::Imp(a, b) if **b == Formula::False => {
                out.push('~');
                self.write_formula(a, P_UNARY, rightmost, out);
            }
            Formula::Imp(a, b) => {
                self.write_formula(a, P_OR, false, out);
                out.push_str(" => ");
                self.write_formula(b, P_IMP, rightmost, out);
            }
            Formula::Or(a, b) => {
                self.write_formula(a, P_OR, false, out);
                out.push_str(" \\/ ");
                self.write_formula(b, P_AND, rightmost, out);
            }
            Formula::And(a, b) => {
                self.write_formula(a, P_AND, false, out);
                out.push_str(" /\\ ");
                self.write_formula(b, P_UNARY, rightmost, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.push_str(if matches!(f, Formula::Forall(..)) {
                    "forall "
                } else {
                    "exists "
                });
                out.push_str(x);
                out.push_str(". ");
                self.write_formula(b, P_IMP, true, out);
            }
            Formula::Eq(a, b) => {
                self.write_term(a, false, out);
                out.push_str(" = ");
                self.write_term(b, false, out);
            }
            Formula::Pred(p, args) => {
                out.push_str(p);
                self.write_args(args, out);
            }
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
        }
        if paren {
            out.push(')');
        }
    }

    fn write_args(&self, args: &[Term], out: &mut String) {
        if args.is_empty() {
            return;
        }
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_term(a, false, out);
        }
        out.push(')');
    }

    fn write_term(&self, t: &Term, sum_operand: bool, out: &mut String) {
        if self.peano_numerals {
            if let Some(n) = peano_value(t) {
                out.push_str(&n.to_string());
                return;
            }
        }
        match t {
            Term::Var(x) => out.push_str(x),
            Term::App(f, args) if f == "+" && args.len() == 2 => {
                if sum_operand {
                    out.push('(');
                }
                self.write_term(&args[0], false, out);
                out.push_str(" + ");
                self.write_term(&args[1], true, out);
                if sum_operand {
                    out.push(')');
                }
            }
            Term::App(f, args) => {
                out.push_str(f);
                self.write_args(args, out);
            }
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    Printer::default().formula(f)
}

pub fn print_term(t: &Term) -> String {
    Printer::default().term(t)
}

pub fn print_full(f: &Formula) -> String {
    Printer::default().full(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectDecl {
    pub name: String,
    pub definition: Option<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub flags: Flags,
    pub hypotheses: Vec<Formula>,
    pub goal: Formula,
    pub objects: Vec<ObjectDecl>,
    pub signature: Signature,
}

impl ProblemFile {
    pub fn printer(&self) -> Printer {
        Printer::new(self.flags)
    }

    /// Constants and object names of the problem.
    pub fn constants(&self) -> BTreeSet<String> {
        self.signature
            .functions
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.clone())
            .collect()
    }
}

/// Parses the line-oriented problem format:
/// `flag NAME`, `hyp FORMULA`, `object NAME [:= TERM]`, `goal FORMULA`.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut flags = Flags::default();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(k) => (&trimmed[..k], &trimmed[k..]),
            None => (trimmed, ""),
        };
        let col = indent + keyword.chars().count() + 1;
        match keyword {
            "flag" => match rest.trim() {
                "peano_numerals" => flags.peano_numerals = true,
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col: col + 1,
                        message: format!("unknown flag `{other}`"),
                    })
                }
            },
            "hyp" | "goal" | "object" => lines.push((line, col, keyword, rest)),
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col: indent + 1,
                    message: format!(
                        "expected `flag`, `hyp`, `object` or `goal`, found `{keyword}`"
                    ),
                })
            }
        }
    }

    let mut ctx = ParseContext::new(flags);
    let mut hypotheses = Vec::new();
    let mut objects = Vec::new();
    let mut goal = None;
    for (line, col, keyword, rest) in lines {
        match keyword {
            "hyp" => hypotheses.push(ctx.formula_at(rest, line, col)?),
            "goal" => {
                if goal.is_some() {
                    return Err(ParseError::DuplicateGoal { line });
                }
                goal = Some(ctx.formula_at(rest, line, col)?);
            }
            _ => objects.push(parse_object(&mut ctx, rest, line, col)?),
        }
    }
    let goal = goal.ok_or(ParseError::MissingGoal)?;

    let mut pf = ProblemFile {
        flags,
        hypotheses,
        goal,
        objects,
        signature: ctx.signature,
    };
    let avoid = pf.constants();
    for h in &mut pf.hypotheses {
        *h = h.normalize_binders(&avoid);
    }
    pf.goal = pf.goal.normalize_binders(&avoid);
    Ok(pf)
}

fn parse_object(
    ctx: &mut ParseContext,
    rest: &str,
    line: usize,
    col: usize,
) -> Result<ObjectDecl, ParseError> {
    let toks = lex(rest, line, col)?;
    let name = match &toks[0].tok {
        Tok::Ident(n) => n.clone(),
        t => {
            return Err(ParseError::Syntax {
                line,
                col: toks[0].col,
                message: format!("expected an object name, found {}", t.describe()),
            })
        }
    };
    let definition = match &toks[1].tok {
        Tok::End => None,
        Tok::Assign => {
            let offset: usize = rest
                .find(":=")
                .map(|k| rest[..k].chars().count() + 2)
                .unwrap_or(0);
            Some(ctx.term_at(&rest[rest.find(":=").unwrap() + 2..], line, col + offset)?)
        }
        t => {
            return Err(ParseError::Syntax {
                line,
                col: toks[1].col,
                message: format!("expected `:=` or end of line, found {}", t.describe()),
            })
        }
    };
    ctx.signature.use_function(&name, 0)?;
    Ok(ObjectDecl { name, definition })
}
