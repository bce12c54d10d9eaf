pub mod grammar;
pub mod induce;
pub mod kernel;
pub mod library;
pub mod parser;
pub mod session;
pub mod tactic;
