//! The logical kernel: terms, their syntax, and checked theorems.

pub mod derived;
pub mod semantics;
pub mod store;
pub mod syntax;
pub mod term;
pub mod thm;

pub use store::TheoremStore;
pub use syntax::{parse_term, parse_term_in, SortEnv, TermError};
pub use term::{Conn, NatOp, Pred, Quant, Sort, SortError, Subst, Term, Var};
pub use thm::{infer, replay, KernelError, Rule, Thm};
