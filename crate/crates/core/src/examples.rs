//! Small named knowledge bases used by tests, benches and documentation.

use crate::syntax::{Concept, KbSource, RoleRef};

fn atom(n: &str) -> Concept {
    Concept::atom(n)
}

/// Web pages: links are paths, paths are transitive, and perfect pages are
/// interesting with only perfect pages along their paths.
/// `a` is perfect and links to `b`.
pub fn web_pages() -> KbSource {
    let (l, p) = (RoleRef::new("L"), RoleRef::new("P"));
    KbSource::new()
        .sub(l.clone(), p.clone())
        .trans(p.clone())
        .implies(atom("F"), Concept::and(atom("I"), Concept::all(p, atom("F"))))
        .inst("a", atom("F"))
        .rel(l, "a", "b")
}

/// [`web_pages`] plus `b:∃L.¬I`; unsatisfiable, which shows that `b` is an
/// instance of `∀L.I`.
pub fn web_pages_query() -> KbSource {
    web_pages().inst("b", Concept::some(RoleRef::new("L"), Concept::not(atom("I"))))
}

/// The same as [`web_pages_query`] but asking for an interesting successor,
/// which is satisfiable.
pub fn web_pages_sat() -> KbSource {
    web_pages().inst("b", Concept::some(RoleRef::new("L"), atom("I")))
}

/// Every element has an `r`-successor in `A` all of whose `s`-neighbours lie
/// outside `A`, with `r` and `r⁻` both below the transitive `s`.
/// Unsatisfiable only because of the converse direction.
pub fn converse_example() -> KbSource {
    let (r, s) = (RoleRef::new("r"), RoleRef::new("s"));
    KbSource::new()
        .sub(r.clone(), s.clone())
        .sub(r.inverse(), s.clone())
        .trans(s.clone())
        .implies(
            Concept::Top,
            Concept::some(r, Concept::and(atom("A"), Concept::all(s, Concept::not(atom("A"))))),
        )
        .inst("a", Concept::Top)
}

/// A family of knowledge bases whose closure grows linearly in `n`:
/// `a:C0` over a transitive `r`, where `Ci = (∀r.Pi ⊔ ∀r.Qi) ⊓ ∃r.C(i+1)`
/// and the innermost `Cn = Pn ⊓ ∀r⁻.B`. Choices travel down the transitive
/// role, so the number of distinct states doubles with every level, and the
/// last element forces `B` back onto every earlier one through the converse
/// direction, so states are repaired by `Conv`.
pub fn chain(n: usize) -> KbSource {
    let r = RoleRef::new("r");
    let mut c = Concept::and(atom(&format!("P{n}")), Concept::all(r.inverse(), atom("B")));
    for i in (0..n).rev() {
        let choice = Concept::or(
            Concept::all(r.clone(), atom(&format!("P{i}"))),
            Concept::all(r.clone(), atom(&format!("Q{i}"))),
        );
        c = Concept::and(choice, Concept::some(r.clone(), c));
    }
    KbSource::new().trans(r).inst("a", c)
}
