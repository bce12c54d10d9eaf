//! The tactic language: values, goals, tacticals and built-in tactics.

pub mod arith;
pub mod builtins;
pub mod conv;
pub mod eval;
pub mod expr;
pub mod goal;
pub mod metis;
pub mod registry;
pub mod types;
pub mod value;

pub use expr::{InfixOp, TacticExpr};
pub use eval::{apply_tactic, eval};
pub use goal::Goal;
pub use registry::Registry;
pub use types::TacticType;
pub use value::{Justification, Outcome, Tactic, TacticError, TacticValue};
