//! Inference problems reduced to knowledge base satisfiability.

use crate::engine::decide_sat;
use crate::error::KbError;
use crate::kb::KnowledgeBase;
use crate::syntax::{Assertion, Concept, KbSource, RoleAxiom, TBoxAxiom};

/// Whether `a` is an instance of `c` in every model of `kb`: the knowledge
/// base extended with `a:¬c` is unsatisfiable.
pub fn check_instance(kb: &KnowledgeBase, a: &str, c: &Concept) -> Result<bool, KbError> {
    if kb.signature().individual(a).is_none() {
        return Err(KbError::UnknownIndividual(a.to_string()));
    }
    let mut src = kb.source().clone();
    src.abox.push(Assertion::Instance(a.to_string(), Concept::not(c.clone()).nnf()));
    Ok(!decide_sat(&KnowledgeBase::new(&src)?).satisfiable)
}

/// Whether `c` has an instance in some model of the role axioms and TBox:
/// a fresh individual asserted to be in `c` is satisfiable.
pub fn check_concept_consistency(rbox: &[RoleAxiom], tbox: &[TBoxAxiom], c: &Concept) -> Result<bool, KbError> {
    let src = KbSource { role_axioms: rbox.to_vec(), tbox: tbox.to_vec(), abox: Vec::new() }.inst("_a0", c.clone());
    Ok(decide_sat(&KnowledgeBase::new(&src)?).satisfiable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::syntax::RoleRef;

    fn atom(n: &str) -> Concept {
        Concept::atom(n)
    }

    #[test]
    fn linked_pages_are_interesting() {
        let kb = KnowledgeBase::new(&examples::web_pages()).unwrap();
        assert!(check_instance(&kb, "b", &Concept::all(RoleRef::new("L"), atom("I"))).unwrap());
        assert!(check_instance(&kb, "a", &atom("I")).unwrap());
        assert!(check_instance(&kb, "b", &atom("F")).unwrap());
        assert!(!check_instance(&kb, "b", &Concept::not(atom("I"))).unwrap());
        assert!(!check_instance(&kb, "a", &atom("G")).unwrap());
    }

    #[test]
    fn asserted_membership() {
        let kb = KnowledgeBase::new(&KbSource::new().inst("a", atom("A"))).unwrap();
        assert!(check_instance(&kb, "a", &atom("A")).unwrap());
        assert!(!check_instance(&kb, "a", &atom("B")).unwrap());
        assert_eq!(check_instance(&kb, "z", &atom("A")), Err(KbError::UnknownIndividual("z".into())));
    }

    #[test]
    fn concept_consistency() {
        let src = examples::converse_example();
        assert!(!check_concept_consistency(&src.role_axioms, &src.tbox, &Concept::Top).unwrap());
        let a = atom("A");
        assert!(!check_concept_consistency(&[], &[], &Concept::and(a.clone(), Concept::not(a.clone()))).unwrap());
        assert!(check_concept_consistency(&[], &[], &a).unwrap());
    }
}
