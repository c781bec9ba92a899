//! Transfer of universal restrictions across role edges.
//!
//! Each function collects `D` for every `∀R.D` in its input, plus every
//! `∀S.D` whose role `S` is a transitive superrole of `R`. The variants differ
//! only in whether inputs and outputs are bare concepts or assertions.

use crate::formula::{ConceptId, ConceptNode, Formula, FormulaSet, Individual, Role};
use crate::kb::KnowledgeBase;

// Calls `emit(D)` for `∀R.D` and `emit(∀S.D)` for SRTR(R, S).
fn transfer(kb: &KnowledgeBase, c: ConceptId, r: Role, mut emit: impl FnMut(ConceptId)) {
    if let ConceptNode::All(s, d) = kb.concept(c) {
        if s == r {
            emit(d);
        }
        if kb.rbox().srtr_fast(r, s) {
            emit(c);
        }
    }
}

/// `Trans(X, R)`: the transfer of a concept set through `R`.
pub fn trans_set(kb: &KnowledgeBase, x: &FormulaSet, r: Role) -> FormulaSet {
    let mut out = Vec::new();
    for f in x {
        if let Formula::Concept(c) = kb.formula(f) {
            transfer(kb, c, r, |d| out.push(kb.concept_formula(d)));
        }
    }
    out.into_iter().collect()
}

/// `Trans(X, R, a)`: the transfer of a concept set through `R` to `a`.
pub fn trans_to_ind(kb: &KnowledgeBase, x: &FormulaSet, r: Role, a: Individual) -> FormulaSet {
    let mut out = Vec::new();
    for f in x {
        if let Formula::Concept(c) = kb.formula(f) {
            transfer(kb, c, r, |d| out.push(kb.assertion(a, d)));
        }
    }
    out.into_iter().collect()
}

/// `Trans(Y, a, R)`: the transfer of an assertion set starting from `a`
/// through `R`.
pub fn trans_from_ind(kb: &KnowledgeBase, y: &FormulaSet, a: Individual, r: Role) -> FormulaSet {
    let mut out = Vec::new();
    for f in y {
        if let Formula::Assertion(b, c) = kb.formula(f) {
            if a == b {
                transfer(kb, c, r, |d| out.push(kb.concept_formula(d)));
            }
        }
    }
    out.into_iter().collect()
}

/// `Trans(Y, a, R, b)`: the transfer of an assertion set from `a` to `b`
/// through `R`.
pub fn trans_between(
    kb: &KnowledgeBase,
    y: &FormulaSet,
    a: Individual,
    r: Role,
    b: Individual,
) -> FormulaSet {
    let mut out = Vec::new();
    for f in y {
        if let Formula::Assertion(x, c) = kb.formula(f) {
            if x == a {
                transfer(kb, c, r, |d| out.push(kb.assertion(b, d)));
            }
        }
    }
    out.into_iter().collect()
}
