use std::fmt;

use crate::kernel::syntax::{sort_env, SortEnv};
use crate::kernel::term::{Sort, Term};

/// An open proof obligation `asms ?- concl`.
#[derive(Clone, Debug)]
pub struct Goal {
    pub asms: Vec<Term>,
    pub concl: Term,
}

impl Goal {
    pub fn new(concl: Term) -> Goal {
        Goal { asms: Vec::new(), concl }
    }

    pub fn with_asms(asms: Vec<Term>, concl: Term) -> Goal {
        debug_assert!(asms.iter().chain([&concl]).all(|t| t.sort() == Sort::Bool));
        Goal { asms, concl }
    }

    /// Equal conclusions and equal assumption lists, both up to alpha.
    pub fn alpha_eq(&self, other: &Goal) -> bool {
        self.concl.alpha_eq(&other.concl)
            && self.asms.len() == other.asms.len()
            && self.asms.iter().zip(&other.asms).all(|(a, b)| a.alpha_eq(b))
    }

    pub fn all_terms(&self) -> impl Iterator<Item = &Term> {
        self.asms.iter().chain(std::iter::once(&self.concl))
    }

    /// Sorts of the free variables, for reading quotations against this goal.
    pub fn sort_env(&self) -> SortEnv {
        sort_env(self.all_terms())
    }

    pub fn has_asm(&self, t: &Term) -> bool {
        self.asms.iter().any(|a| a.alpha_eq(t))
    }

    /// Adds `t` unless an alpha-equal assumption is already present.
    pub fn push_asm(&mut self, t: Term) {
        if !self.has_asm(&t) {
            self.asms.push(t);
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.asms.iter().enumerate() {
            writeln!(f, "{i:>3}.  {a}")?;
        }
        writeln!(f, "  ------------------------------------")?;
        write!(f, "       {}", self.concl)
    }
}
