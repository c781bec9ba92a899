//! Surface syntax of SHI: concepts, role axioms, terminological axioms and
//! ABox assertions, together with negation normal form and TBox
//! internalization.
//!
//! These are plain owned trees keyed by names. A [`KbSource`] is turned into
//! an interned, normalized [`KnowledgeBase`](crate::KnowledgeBase) before any
//! reasoning happens.

use std::fmt;

/// A role name, possibly inverted (`r` or `r-`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleRef {
    pub name: String,
    pub inverse: bool,
}

impl RoleRef {
    pub fn new(name: impl Into<String>) -> Self {
        RoleRef { name: name.into(), inverse: false }
    }

    pub fn inverted(name: impl Into<String>) -> Self {
        RoleRef { name: name.into(), inverse: true }
    }

    /// `(r-)- = r`.
    pub fn inverse(&self) -> Self {
        RoleRef { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for RoleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}-", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// A concept expression. Negation may occur anywhere; see [`Concept::nnf`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    Top,
    Bot,
    Atom(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    All(RoleRef, Box<Concept>),
    Some(RoleRef, Box<Concept>),
}

impl Concept {
    pub fn atom(name: impl Into<String>) -> Self {
        Concept::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn and(l: Concept, r: Concept) -> Self {
        Concept::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Concept, r: Concept) -> Self {
        Concept::Or(Box::new(l), Box::new(r))
    }

    pub fn all(r: RoleRef, c: Concept) -> Self {
        Concept::All(r, Box::new(c))
    }

    pub fn some(r: RoleRef, c: Concept) -> Self {
        Concept::Some(r, Box::new(c))
    }

    /// Right-folds a non-empty list into nested binary conjunctions.
    pub fn and_all(mut items: Vec<Concept>) -> Option<Self> {
        let last = items.pop()?;
        Some(items.into_iter().rev().fold(last, |acc, c| Concept::and(c, acc)))
    }

    /// Right-folds a non-empty list into nested binary disjunctions.
    pub fn or_all(mut items: Vec<Concept>) -> Option<Self> {
        let last = items.pop()?;
        Some(items.into_iter().rev().fold(last, |acc, c| Concept::or(c, acc)))
    }

    /// Negation normal form: `¬` only directly in front of atoms.
    pub fn nnf(&self) -> Concept {
        match self {
            Concept::Top | Concept::Bot | Concept::Atom(_) => self.clone(),
            Concept::Not(inner) => inner.negated_nnf(),
            Concept::And(l, r) => Concept::and(l.nnf(), r.nnf()),
            Concept::Or(l, r) => Concept::or(l.nnf(), r.nnf()),
            Concept::All(role, c) => Concept::all(role.clone(), c.nnf()),
            Concept::Some(role, c) => Concept::some(role.clone(), c.nnf()),
        }
    }

    /// The NNF of `¬self`.
    pub fn complement(&self) -> Concept {
        self.negated_nnf()
    }

    fn negated_nnf(&self) -> Concept {
        match self {
            Concept::Top => Concept::Bot,
            Concept::Bot => Concept::Top,
            Concept::Atom(_) => Concept::not(self.clone()),
            Concept::Not(inner) => inner.nnf(),
            Concept::And(l, r) => Concept::or(l.negated_nnf(), r.negated_nnf()),
            Concept::Or(l, r) => Concept::and(l.negated_nnf(), r.negated_nnf()),
            Concept::All(role, c) => Concept::some(role.clone(), c.negated_nnf()),
            Concept::Some(role, c) => Concept::all(role.clone(), c.negated_nnf()),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::Atom(_) => true,
            Concept::Not(inner) => matches!(**inner, Concept::Atom(_)),
            Concept::And(l, r) | Concept::Or(l, r) => l.is_nnf() && r.is_nnf(),
            Concept::All(_, c) | Concept::Some(_, c) => c.is_nnf(),
        }
    }

    /// Nesting depth of role restrictions.
    pub fn modal_depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::Atom(_) => 0,
            Concept::Not(c) => c.modal_depth(),
            Concept::And(l, r) | Concept::Or(l, r) => l.modal_depth().max(r.modal_depth()),
            Concept::All(_, c) | Concept::Some(_, c) => 1 + c.modal_depth(),
        }
    }

    /// Calls `f` on every atom name and role occurring in the concept.
    pub(crate) fn visit_names<'a>(
        &'a self,
        atom: &mut impl FnMut(&'a str),
        role: &mut impl FnMut(&'a RoleRef),
    ) {
        match self {
            Concept::Top | Concept::Bot => {}
            Concept::Atom(a) => atom(a),
            Concept::Not(c) => c.visit_names(atom, role),
            Concept::And(l, r) | Concept::Or(l, r) => {
                l.visit_names(atom, role);
                r.visit_names(atom, role);
            }
            Concept::All(r, c) | Concept::Some(r, c) => {
                role(r);
                c.visit_names(atom, role);
            }
        }
    }
}

/// Prints the prefix s-expression form accepted by the KB parser.
impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bot => f.write_str("bot"),
            Concept::Atom(a) => f.write_str(a),
            Concept::Not(c) => write!(f, "(not {c})"),
            Concept::And(l, r) => write!(f, "(and {l} {r})"),
            Concept::Or(l, r) => write!(f, "(or {l} {r})"),
            Concept::All(role, c) => write!(f, "(all {role} {c})"),
            Concept::Some(role, c) => write!(f, "(some {role} {c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RoleAxiom {
    /// `R ⊑ S`
    Sub(RoleRef, RoleRef),
    /// `R ∘ R ⊑ R`
    Trans(RoleRef),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TBoxAxiom {
    /// `C ⊑ D`
    Impl(Concept, Concept),
    /// `C ≐ D`
    Equiv(Concept, Concept),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Assertion {
    /// `a : C`
    Instance(String, Concept),
    /// `R(a, b)`
    Relation(RoleRef, String, String),
}

/// An un-normalized knowledge base as written by the user.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KbSource {
    pub role_axioms: Vec<RoleAxiom>,
    pub tbox: Vec<TBoxAxiom>,
    pub abox: Vec<Assertion>,
}

impl KbSource {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sub(mut self, r: RoleRef, s: RoleRef) -> Self {
        self.role_axioms.push(RoleAxiom::Sub(r, s));
        self
    }

    pub fn trans(mut self, r: RoleRef) -> Self {
        self.role_axioms.push(RoleAxiom::Trans(r));
        self
    }

    pub fn implies(mut self, c: Concept, d: Concept) -> Self {
        self.tbox.push(TBoxAxiom::Impl(c, d));
        self
    }

    pub fn equiv(mut self, c: Concept, d: Concept) -> Self {
        self.tbox.push(TBoxAxiom::Equiv(c, d));
        self
    }

    pub fn inst(mut self, a: impl Into<String>, c: Concept) -> Self {
        self.abox.push(Assertion::Instance(a.into(), c));
        self
    }

    pub fn rel(mut self, r: RoleRef, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.abox.push(Assertion::Relation(r, a.into(), b.into()));
        self
    }

    /// Individuals in order of first occurrence in the ABox.
    pub fn individuals(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for a in &self.abox {
            let names = match a {
                Assertion::Instance(i, _) => [Some(i.as_str()), None],
                Assertion::Relation(_, x, y) => [Some(x.as_str()), Some(y.as_str())],
            };
            for n in names.into_iter().flatten() {
                if !seen.contains(&n) {
                    seen.push(n);
                }
            }
        }
        seen
    }
}

impl fmt::Display for RoleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleAxiom::Sub(r, s) => write!(f, "sub {r} {s}"),
            RoleAxiom::Trans(r) => write!(f, "trans {r}"),
        }
    }
}

impl fmt::Display for TBoxAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TBoxAxiom::Impl(c, d) => write!(f, "impl {c} {d}"),
            TBoxAxiom::Equiv(c, d) => write!(f, "equiv {c} {d}"),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Instance(a, c) => write!(f, "inst {a} {c}"),
            Assertion::Relation(r, a, b) => write!(f, "rel {r} {a} {b}"),
        }
    }
}

impl fmt::Display for KbSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in &self.role_axioms {
            writeln!(f, "{ax}")?;
        }
        for ax in &self.tbox {
            writeln!(f, "{ax}")?;
        }
        for a in &self.abox {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Turns terminological axioms into global NNF concepts:
/// `C ⊑ D` becomes `¬C ⊔ D` and `C ≐ D` becomes `(¬C ⊔ D) ⊓ (¬D ⊔ C)`.
/// `⊤ ⊑ D` is how a bare global concept is written and yields `D` itself.
pub fn internalize_tbox(axioms: &[TBoxAxiom]) -> Vec<Concept> {
    axioms
        .iter()
        .map(|ax| match ax {
            TBoxAxiom::Impl(Concept::Top, d) => d.nnf(),
            TBoxAxiom::Impl(c, d) => Concept::or(c.complement(), d.nnf()),
            TBoxAxiom::Equiv(c, d) => Concept::and(
                Concept::or(c.complement(), d.nnf()),
                Concept::or(d.complement(), c.nnf()),
            ),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Concept {
        Concept::atom(n)
    }

    #[test]
    fn de_morgan() {
        let c = Concept::not(Concept::and(a("A"), a("B")));
        assert_eq!(c.nnf(), Concept::or(Concept::not(a("A")), Concept::not(a("B"))));
    }

    #[test]
    fn negated_universal_becomes_existential() {
        let p = RoleRef::new("P");
        let c = Concept::not(Concept::all(p.clone(), a("F")));
        assert_eq!(c.nnf(), Concept::some(p, Concept::not(a("F"))));
    }

    #[test]
    fn complement_examples() {
        let l = RoleRef::new("L");
        assert_eq!(Concept::not(a("I")).complement(), a("I"));
        assert_eq!(
            Concept::some(l.clone(), Concept::not(a("I"))).complement(),
            Concept::all(l, a("I"))
        );
        assert_eq!(Concept::Top.complement(), Concept::Bot);
    }

    #[test]
    fn internalize_web_pages_axiom() {
        let p = RoleRef::new("P");
        let ax = TBoxAxiom::Impl(a("F"), Concept::and(a("I"), Concept::all(p.clone(), a("F"))));
        let got = internalize_tbox(&[ax]);
        let phi = Concept::or(Concept::not(a("F")), Concept::and(a("I"), Concept::all(p, a("F"))));
        assert_eq!(got, vec![phi]);
    }

    #[test]
    fn internalize_empty_and_equivalence() {
        assert!(internalize_tbox(&[]).is_empty());
        let got = internalize_tbox(&[TBoxAxiom::Equiv(a("A"), a("B"))]);
        let want = Concept::and(
            Concept::or(Concept::not(a("A")), a("B")),
            Concept::or(Concept::not(a("B")), a("A")),
        );
        assert_eq!(got, vec![want]);
    }

    #[test]
    fn top_implication_is_a_global_concept() {
        let d = Concept::not(Concept::some(RoleRef::new("r"), a("A")));
        let got = internalize_tbox(&[TBoxAxiom::Impl(Concept::Top, d.clone())]);
        assert_eq!(got, vec![d.nnf()]);
    }

    #[test]
    fn right_fold() {
        let c = Concept::and_all(vec![a("A"), a("B"), a("C")]).unwrap();
        assert_eq!(c, Concept::and(a("A"), Concept::and(a("B"), a("C"))));
        assert_eq!(Concept::or_all(vec![a("A")]), Some(a("A")));
        assert_eq!(Concept::or_all(vec![]), None);
    }
}
