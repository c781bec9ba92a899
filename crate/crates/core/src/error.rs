use thiserror::Error;

use crate::formula::Role;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("role assertions have no complement")]
    RoleAssertionComplement,
    #[error("concept is not in negation normal form: {0}")]
    NotNnf(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unknown individual `{0}`")]
    UnknownIndividual(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RBoxError {
    #[error("role {0:?} is not in the signature")]
    UnknownRole(Role),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("concept name #{0} is not interpreted")]
    UnknownAtom(usize),
    #[error("role name #{0} is not interpreted")]
    UnknownRole(usize),
    #[error("individual #{0} is not interpreted")]
    UnknownIndividual(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration budget of {0} search nodes exhausted")]
    BudgetExceeded(u64),
    #[error("domain bound must be positive")]
    ZeroBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the root of the tableau is unsatisfiable; there is no model to extract")]
    RootUnsat,
    #[error("node {0} has no saturation path")]
    NoSaturationPath(usize),
    #[error("state {0} has no successor realizing an existential of its label")]
    MissingWitness(usize),
}
