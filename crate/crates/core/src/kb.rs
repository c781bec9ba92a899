//! Normalized knowledge bases.
//!
//! [`KnowledgeBase::new`] takes a [`KbSource`], puts every concept into NNF,
//! internalizes the TBox, repairs an empty ABox and interns the whole formula
//! universe (the closure) up front. After construction the knowledge base is
//! immutable; the engine only ever looks formulas up.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexSet;

use crate::error::{KbError, SyntaxError};
use crate::formula::{
    AtomName, ConceptId, ConceptNode, Formula, FormulaId, FormulaSet, Individual, Interner, Role,
    RoleName,
};
use crate::rbox::{build_ext, RBoxIndex, RoleInclusion};
use crate::syntax::{internalize_tbox, Assertion, Concept, KbSource, RoleAxiom, RoleRef};

/// Names declared (by use) in a knowledge base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub roles: IndexSet<String>,
    pub atoms: IndexSet<String>,
    pub individuals: IndexSet<String>,
}

impl Signature {
    pub fn role(&self, r: &RoleRef) -> Option<Role> {
        self.roles
            .get_index_of(r.name.as_str())
            .map(|i| Role { name: RoleName(i as u32), inverse: r.inverse })
    }

    pub fn atom(&self, name: &str) -> Option<AtomName> {
        self.atoms.get_index_of(name).map(|i| AtomName(i as u32))
    }

    pub fn individual(&self, name: &str) -> Option<Individual> {
        self.individuals.get_index_of(name).map(|i| Individual(i as u32))
    }

    pub fn role_name(&self, r: RoleName) -> &str {
        &self.roles[r.index()]
    }

    pub fn atom_name(&self, a: AtomName) -> &str {
        &self.atoms[a.index()]
    }

    pub fn individual_name(&self, a: Individual) -> &str {
        &self.individuals[a.index()]
    }

    fn collect(&mut self, c: &Concept) {
        c.visit_names(
            &mut |a| {
                self.atoms.insert(a.to_string());
            },
            &mut |r| {
                self.roles.insert(r.name.clone());
            },
        );
    }
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    signature: Signature,
    interner: Interner,
    source: KbSource,
    role_axioms: Vec<RoleInclusion>,
    rbox: RBoxIndex,
    tbox: Vec<ConceptId>,
    tbox_formulas: FormulaSet,
    abox: FormulaSet,
    closure: FormulaSet,
    complements: HashMap<FormulaId, FormulaId>,
    concept_formulas: HashMap<ConceptId, FormulaId>,
}

impl KnowledgeBase {
    pub fn new(source: &KbSource) -> Result<Self, KbError> {
        let mut source = source.clone();
        let mut signature = Signature::default();
        for ax in &source.role_axioms {
            match ax {
                RoleAxiom::Sub(r, s) => {
                    signature.roles.insert(r.name.clone());
                    signature.roles.insert(s.name.clone());
                }
                RoleAxiom::Trans(r) => {
                    signature.roles.insert(r.name.clone());
                }
            }
        }
        for ax in &source.tbox {
            let (crate::syntax::TBoxAxiom::Impl(c, d) | crate::syntax::TBoxAxiom::Equiv(c, d)) = ax;
            signature.collect(c);
            signature.collect(d);
        }
        for a in &source.abox {
            match a {
                Assertion::Instance(_, c) => signature.collect(c),
                Assertion::Relation(r, _, _) => {
                    signature.roles.insert(r.name.clone());
                }
            }
        }
        if source.abox.is_empty() {
            let fresh = fresh_individual(&signature);
            source.abox.push(Assertion::Instance(fresh, Concept::Top));
        }
        for name in source.individuals() {
            signature.individuals.insert(name.to_string());
        }

        let mut interner = Interner::new();
        let tbox_nnf = internalize_tbox(&source.tbox);
        let mut tbox = Vec::with_capacity(tbox_nnf.len());
        for c in &tbox_nnf {
            tbox.push(intern_nnf(&mut interner, &signature, c)?);
        }
        let mut abox_concepts = Vec::new();
        for a in &source.abox {
            if let Assertion::Instance(i, c) = a {
                let ind = signature.individual(i).expect("collected above");
                abox_concepts.push((ind, intern_nnf(&mut interner, &signature, &c.nnf())?));
            }
        }

        let role_axioms: Vec<RoleInclusion> = source
            .role_axioms
            .iter()
            .map(|ax| match ax {
                RoleAxiom::Sub(r, s) => RoleInclusion::Sub(
                    signature.role(r).expect("collected"),
                    signature.role(s).expect("collected"),
                ),
                RoleAxiom::Trans(r) => RoleInclusion::Trans(signature.role(r).expect("collected")),
            })
            .collect();
        let rbox = build_ext(&role_axioms, signature.roles.len());

        // Concepts occurring in T or A, then the universal restrictions over
        // subroles that the hierarchy and transfer rules can introduce.
        let mut concepts = Vec::new();
        for &c in tbox.iter().chain(abox_concepts.iter().map(|(_, c)| c)) {
            interner.collect_subconcepts(c, &mut concepts);
        }
        let occurring = concepts.clone();
        for &c in &occurring {
            if let ConceptNode::All(s, d) = interner.concept(c) {
                for &r in rbox.subroles_of(s) {
                    let all = interner.intern_concept(ConceptNode::All(r, d));
                    if !concepts.contains(&all) {
                        concepts.push(all);
                    }
                }
            }
        }

        let mut closure = Vec::new();
        let mut concept_formulas = HashMap::new();
        for &c in &concepts {
            let f = interner.intern(Formula::Concept(c));
            concept_formulas.insert(c, f);
            closure.push(f);
        }
        for i in 0..signature.individuals.len() {
            for &c in &concepts {
                closure.push(interner.intern(Formula::Assertion(Individual(i as u32), c)));
            }
        }
        let mut abox: Vec<FormulaId> = abox_concepts
            .iter()
            .map(|&(a, c)| interner.lookup(&Formula::Assertion(a, c)).expect("in closure"))
            .collect();
        for a in &source.abox {
            if let Assertion::Relation(r, x, y) = a {
                let f = interner.intern(Formula::Relation(
                    signature.role(r).expect("collected"),
                    signature.individual(x).expect("collected"),
                    signature.individual(y).expect("collected"),
                ));
                closure.push(f);
                abox.push(f);
            }
        }
        let closure: FormulaSet = closure.into_iter().collect();

        let mut complements = HashMap::new();
        for f in closure.iter() {
            let g = match interner.formula(f) {
                Formula::Concept(c) => {
                    let n = interner.complement_concept(c);
                    interner.lookup(&Formula::Concept(n))
                }
                Formula::Assertion(a, c) => {
                    let n = interner.complement_concept(c);
                    interner.lookup(&Formula::Assertion(a, n))
                }
                Formula::Relation(..) => None,
            };
            if let Some(g) = g.filter(|g| closure.contains(*g)) {
                complements.insert(f, g);
            }
        }

        let tbox_formulas = tbox.iter().map(|c| concept_formulas[c]).collect();
        Ok(KnowledgeBase {
            signature,
            interner,
            source,
            role_axioms,
            rbox,
            tbox,
            tbox_formulas,
            abox: abox.into_iter().collect(),
            closure,
            complements,
            concept_formulas,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn interner(&self) -> &Interner {
        &self.interner
    }

    /// The source this knowledge base was built from, with the empty-ABox
    /// repair applied.
    pub fn source(&self) -> &KbSource {
        &self.source
    }

    pub fn role_axioms(&self) -> &[RoleInclusion] {
        &self.role_axioms
    }

    pub fn rbox(&self) -> &RBoxIndex {
        &self.rbox
    }

    /// Internalized TBox concepts.
    pub fn tbox(&self) -> &[ConceptId] {
        &self.tbox
    }

    /// The TBox as a set of concept formulas.
    pub fn tbox_formulas(&self) -> &FormulaSet {
        &self.tbox_formulas
    }

    pub fn abox(&self) -> &FormulaSet {
        &self.abox
    }

    /// Every formula a tableau for this knowledge base may contain.
    pub fn closure(&self) -> &FormulaSet {
        &self.closure
    }

    pub fn individuals(&self) -> impl Iterator<Item = Individual> {
        (0..self.signature.individuals.len() as u32).map(Individual)
    }

    pub fn formula(&self, f: FormulaId) -> Formula {
        self.interner.formula(f)
    }

    pub fn concept(&self, c: ConceptId) -> ConceptNode {
        self.interner.concept(c)
    }

    /// The complement of `f` if it belongs to the closure.
    pub fn complement_in_closure(&self, f: FormulaId) -> Option<FormulaId> {
        self.complements.get(&f).copied()
    }

    /// The concept formula for `c`. Panics when `c` is outside the closure,
    /// which would mean a rule produced a formula it never should.
    pub(crate) fn concept_formula(&self, c: ConceptId) -> FormulaId {
        match self.concept_formulas.get(&c) {
            Some(f) => *f,
            None => panic!("concept {} is outside the closure", self.show_concept(c)),
        }
    }

    /// The assertion `a:c`. Panics when it is outside the closure.
    pub(crate) fn assertion(&self, a: Individual, c: ConceptId) -> FormulaId {
        match self.interner.lookup(&Formula::Assertion(a, c)) {
            Some(f) => f,
            None => panic!(
                "assertion {}:{} is outside the closure",
                self.signature.individual_name(a),
                self.show_concept(c)
            ),
        }
    }

    /// `∀R.D`, which must already be interned.
    pub(crate) fn all_concept(&self, r: Role, d: ConceptId) -> ConceptId {
        match self.interner.lookup_concept(&ConceptNode::All(r, d)) {
            Some(c) => c,
            None => panic!("∀{}.{} is outside the closure", self.show_role(r), self.show_concept(d)),
        }
    }

    pub fn lookup_concept(&self, c: &Concept) -> Option<ConceptId> {
        let node = match c.nnf() {
            Concept::Top => ConceptNode::Top,
            Concept::Bot => ConceptNode::Bot,
            Concept::Atom(a) => ConceptNode::Atom(self.signature.atom(&a)?),
            Concept::Not(inner) => match *inner {
                Concept::Atom(a) => ConceptNode::NotAtom(self.signature.atom(&a)?),
                _ => unreachable!("nnf"),
            },
            Concept::And(l, r) => ConceptNode::And(self.lookup_concept(&l)?, self.lookup_concept(&r)?),
            Concept::Or(l, r) => ConceptNode::Or(self.lookup_concept(&l)?, self.lookup_concept(&r)?),
            Concept::All(r, d) => ConceptNode::All(self.signature.role(&r)?, self.lookup_concept(&d)?),
            Concept::Some(r, d) => {
                ConceptNode::Some(self.signature.role(&r)?, self.lookup_concept(&d)?)
            }
        };
        self.interner.lookup_concept(&node)
    }

    /// Looks up the formula for a bare concept.
    pub fn lookup_concept_formula(&self, c: &Concept) -> Option<FormulaId> {
        self.interner.lookup(&Formula::Concept(self.lookup_concept(c)?))
    }

    /// Looks up the formula for `a:C`.
    pub fn lookup_assertion(&self, a: &str, c: &Concept) -> Option<FormulaId> {
        let ind = self.signature.individual(a)?;
        self.interner.lookup(&Formula::Assertion(ind, self.lookup_concept(c)?))
    }

    /// Looks up the formula for `R(a, b)`.
    pub fn lookup_relation(&self, r: &RoleRef, a: &str, b: &str) -> Option<FormulaId> {
        let f = Formula::Relation(
            self.signature.role(r)?,
            self.signature.individual(a)?,
            self.signature.individual(b)?,
        );
        self.interner.lookup(&f)
    }

    /// Converts an interned concept back to surface syntax.
    pub fn concept_ast(&self, c: ConceptId) -> Concept {
        match self.concept(c) {
            ConceptNode::Top => Concept::Top,
            ConceptNode::Bot => Concept::Bot,
            ConceptNode::Atom(a) => Concept::atom(self.signature.atom_name(a)),
            ConceptNode::NotAtom(a) => Concept::not(Concept::atom(self.signature.atom_name(a))),
            ConceptNode::And(l, r) => Concept::and(self.concept_ast(l), self.concept_ast(r)),
            ConceptNode::Or(l, r) => Concept::or(self.concept_ast(l), self.concept_ast(r)),
            ConceptNode::All(r, d) => Concept::all(self.role_ref(r), self.concept_ast(d)),
            ConceptNode::Some(r, d) => Concept::some(self.role_ref(r), self.concept_ast(d)),
        }
    }

    pub fn role_ref(&self, r: Role) -> RoleRef {
        RoleRef { name: self.signature.role_name(r.name).to_string(), inverse: r.inverse }
    }

    pub fn show_role(&self, r: Role) -> String {
        let name = self.signature.role_name(r.name);
        if r.inverse {
            format!("{name}⁻")
        } else {
            name.to_string()
        }
    }

    pub fn show_concept(&self, c: ConceptId) -> String {
        let mut s = String::new();
        self.write_concept(&mut s, c, false).expect("string write");
        s
    }

    fn write_concept(&self, out: &mut impl fmt::Write, c: ConceptId, nested: bool) -> fmt::Result {
        match self.concept(c) {
            ConceptNode::Top => out.write_str("⊤"),
            ConceptNode::Bot => out.write_str("⊥"),
            ConceptNode::Atom(a) => out.write_str(self.signature.atom_name(a)),
            ConceptNode::NotAtom(a) => write!(out, "¬{}", self.signature.atom_name(a)),
            ConceptNode::And(l, r) | ConceptNode::Or(l, r) => {
                let op = if matches!(self.concept(c), ConceptNode::And(..)) { "⊓" } else { "⊔" };
                if nested {
                    out.write_str("(")?;
                }
                self.write_concept(out, l, true)?;
                write!(out, " {op} ")?;
                self.write_concept(out, r, true)?;
                if nested {
                    out.write_str(")")?;
                }
                Ok(())
            }
            ConceptNode::All(r, d) => {
                write!(out, "∀{}.", self.show_role(r))?;
                self.write_concept(out, d, true)
            }
            ConceptNode::Some(r, d) => {
                write!(out, "∃{}.", self.show_role(r))?;
                self.write_concept(out, d, true)
            }
        }
    }

    pub fn show(&self, f: FormulaId) -> String {
        match self.formula(f) {
            Formula::Concept(c) => self.show_concept(c),
            Formula::Assertion(a, c) => {
                let mut s = format!("{}:", self.signature.individual_name(a));
                self.write_concept(&mut s, c, true).expect("string write");
                s
            }
            Formula::Relation(r, a, b) => format!(
                "{}({}, {})",
                self.show_role(r),
                self.signature.individual_name(a),
                self.signature.individual_name(b)
            ),
        }
    }

    /// Renders a formula set as `{φ1, φ2, …}` in formula order.
    pub fn show_set(&self, s: &FormulaSet) -> String {
        let parts: Vec<String> = s.iter().map(|f| self.show(f)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn fresh_individual(sig: &Signature) -> String {
    (0..)
        .map(|i| format!("_a{i}"))
        .find(|n| !sig.individuals.contains(n.as_str()))
        .expect("unbounded")
}

fn intern_nnf(interner: &mut Interner, sig: &Signature, c: &Concept) -> Result<ConceptId, KbError> {
    let node = match c {
        Concept::Top => ConceptNode::Top,
        Concept::Bot => ConceptNode::Bot,
        Concept::Atom(a) => ConceptNode::Atom(sig.atom(a).ok_or_else(|| KbError::UnknownName(a.clone()))?),
        Concept::Not(inner) => match inner.as_ref() {
            Concept::Atom(a) => {
                ConceptNode::NotAtom(sig.atom(a).ok_or_else(|| KbError::UnknownName(a.clone()))?)
            }
            _ => return Err(SyntaxError::NotNnf(c.to_string()).into()),
        },
        Concept::And(l, r) => {
            ConceptNode::And(intern_nnf(interner, sig, l)?, intern_nnf(interner, sig, r)?)
        }
        Concept::Or(l, r) => ConceptNode::Or(intern_nnf(interner, sig, l)?, intern_nnf(interner, sig, r)?),
        Concept::All(r, d) => ConceptNode::All(
            sig.role(r).ok_or_else(|| KbError::UnknownName(r.name.clone()))?,
            intern_nnf(interner, sig, d)?,
        ),
        Concept::Some(r, d) => ConceptNode::Some(
            sig.role(r).ok_or_else(|| KbError::UnknownName(r.name.clone()))?,
            intern_nnf(interner, sig, d)?,
        ),
    };
    Ok(interner.intern_concept(node))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{converse_example, web_pages_query};

    fn c(name: &str) -> Concept {
        Concept::atom(name)
    }

    #[test]
    fn single_assertion_closure() {
        let kb = KnowledgeBase::new(&KbSource::new().inst("a", c("A"))).unwrap();
        let want: FormulaSet = [
            kb.lookup_concept_formula(&c("A")).unwrap(),
            kb.lookup_assertion("a", &c("A")).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(kb.closure(), &want);
        assert_eq!(kb.closure().len(), 2);
    }

    #[test]
    fn web_pages_closure_contains_subrole_universal() {
        let kb = KnowledgeBase::new(&web_pages_query()).unwrap();
        let all_l_f = Concept::all(RoleRef::new("L"), c("F"));
        let f = kb.lookup_concept_formula(&all_l_f).expect("∀L.F interned");
        assert!(kb.closure().contains(f));
        assert!(kb.closure().contains(kb.lookup_assertion("b", &all_l_f).unwrap()));
        let rel = kb.lookup_relation(&RoleRef::new("L"), "a", "b").unwrap();
        assert!(kb.closure().contains(rel));
    }

    #[test]
    fn converse_example_closure_contains_both_directions() {
        let kb = KnowledgeBase::new(&converse_example()).unwrap();
        let not_a = Concept::not(c("A"));
        for r in [RoleRef::new("r"), RoleRef::inverted("r")] {
            let f = kb.lookup_concept_formula(&Concept::all(r, not_a.clone())).unwrap();
            assert!(kb.closure().contains(f));
        }
    }

    #[test]
    fn empty_abox_is_repaired() {
        let kb = KnowledgeBase::new(&KbSource::new().implies(c("A"), c("B"))).unwrap();
        assert_eq!(kb.abox().len(), 1);
        let ind = kb.signature().individuals[0].clone();
        assert!(ind.starts_with("_a"));
        assert!(kb.lookup_assertion(&ind, &Concept::Top).is_some());
    }

    #[test]
    fn tbox_is_internalized_in_nnf() {
        let kb = KnowledgeBase::new(&web_pages_query()).unwrap();
        assert_eq!(kb.tbox().len(), 1);
        let phi = Concept::or(
            Concept::not(c("F")),
            Concept::and(c("I"), Concept::all(RoleRef::new("P"), c("F"))),
        );
        assert_eq!(kb.concept_ast(kb.tbox()[0]), phi);
        assert_eq!(kb.show_concept(kb.tbox()[0]), "¬F ⊔ (I ⊓ ∀P.F)");
    }

    #[test]
    fn complements_stay_inside_the_closure() {
        let kb = KnowledgeBase::new(&web_pages_query()).unwrap();
        let f = kb.lookup_assertion("a", &c("F")).unwrap();
        let nf = kb.lookup_assertion("a", &Concept::not(c("F"))).unwrap();
        assert_eq!(kb.complement_in_closure(f), Some(nf));
        assert_eq!(kb.complement_in_closure(nf), Some(f));
        for g in kb.closure().iter() {
            if let Some(h) = kb.complement_in_closure(g) {
                assert_eq!(kb.complement_in_closure(h), Some(g));
            }
        }
    }

    #[test]
    fn role_assertions_come_last_in_formula_order() {
        let kb = KnowledgeBase::new(&web_pages_query()).unwrap();
        let rel = kb.lookup_relation(&RoleRef::new("L"), "a", "b").unwrap();
        assert_eq!(kb.closure().iter().last(), Some(rel));
    }
}
