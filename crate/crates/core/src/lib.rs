//! Proof engine for intuitionistic first-order logic with equality, driven
//! by subformula linking: proof steps are clicks on subformulas and links
//! between two selected subterms.

pub mod link;
pub mod oracle;
pub mod parser;
pub mod path;
pub mod proof;
pub mod syntax;
pub mod trace;
pub mod unify;

pub use parser::{
    parse_formula, parse_problem, parse_term, print_formula, print_term, ParseError, Printer,
};
pub use path::{Path, Polarity};
pub use proof::{Action, ActionError, ItemRef, ProofState};
pub use syntax::{Connective, Formula, Quantifier, Substitution, Term};
pub use trace::{ReplayError, Trace};
