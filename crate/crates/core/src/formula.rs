//! Interned formulas.
//!
//! Every concept and formula handled by the engine lives in an [`Interner`]
//! and is referred to by a small copyable id. Ids are handed out in creation
//! order, which doubles as the fixed total order used for deterministic rule
//! selection.

use std::fmt;

use indexmap::IndexSet;

use crate::error::SyntaxError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleName(pub(crate) u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomName(pub(crate) u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Individual(pub(crate) u32);

impl RoleName {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl AtomName {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Individual {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A role name or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub name: RoleName,
    pub inverse: bool,
}

impl Role {
    pub fn named(name: RoleName) -> Self {
        Role { name, inverse: false }
    }

    pub fn inverse(self) -> Self {
        Role { name: self.name, inverse: !self.inverse }
    }

    /// Dense index in `0..2·|RN|`: `r` at `2i`, `r-` at `2i+1`.
    pub fn index(self) -> usize {
        self.name.index() * 2 + self.inverse as usize
    }

    pub fn from_index(i: usize) -> Self {
        Role { name: RoleName((i / 2) as u32), inverse: i % 2 == 1 }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptId(pub(crate) u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An NNF concept whose children are interned.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConceptNode {
    Top,
    Bot,
    Atom(AtomName),
    NotAtom(AtomName),
    And(ConceptId, ConceptId),
    Or(ConceptId, ConceptId),
    All(Role, ConceptId),
    Some(Role, ConceptId),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaId(pub(crate) u32);

impl FormulaId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A label entry: a bare concept (simple nodes), a concept assertion or a
/// role assertion (complex nodes).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Concept(ConceptId),
    Assertion(Individual, ConceptId),
    Relation(Role, Individual, Individual),
}

impl Formula {
    pub fn concept(self) -> Option<ConceptId> {
        match self {
            Formula::Concept(c) | Formula::Assertion(_, c) => Some(c),
            Formula::Relation(..) => None,
        }
    }

    pub fn is_assertion(self) -> bool {
        !matches!(self, Formula::Concept(_))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Interner {
    concepts: IndexSet<ConceptNode>,
    formulas: IndexSet<Formula>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_concept(&mut self, node: ConceptNode) -> ConceptId {
        ConceptId(self.concepts.insert_full(node).0 as u32)
    }

    pub fn intern(&mut self, f: Formula) -> FormulaId {
        FormulaId(self.formulas.insert_full(f).0 as u32)
    }

    pub fn concept(&self, id: ConceptId) -> ConceptNode {
        self.concepts[id.index()]
    }

    pub fn formula(&self, id: FormulaId) -> Formula {
        self.formulas[id.index()]
    }

    pub fn lookup_concept(&self, node: &ConceptNode) -> Option<ConceptId> {
        self.concepts.get_index_of(node).map(|i| ConceptId(i as u32))
    }

    pub fn lookup(&self, f: &Formula) -> Option<FormulaId> {
        self.formulas.get_index_of(f).map(|i| FormulaId(i as u32))
    }

    pub fn concept_count(&self) -> usize {
        self.concepts.len()
    }

    pub fn formula_count(&self) -> usize {
        self.formulas.len()
    }

    /// Interns the NNF of `¬c`.
    pub fn complement_concept(&mut self, c: ConceptId) -> ConceptId {
        let node = match self.concept(c) {
            ConceptNode::Top => ConceptNode::Bot,
            ConceptNode::Bot => ConceptNode::Top,
            ConceptNode::Atom(a) => ConceptNode::NotAtom(a),
            ConceptNode::NotAtom(a) => ConceptNode::Atom(a),
            ConceptNode::And(l, r) => {
                ConceptNode::Or(self.complement_concept(l), self.complement_concept(r))
            }
            ConceptNode::Or(l, r) => {
                ConceptNode::And(self.complement_concept(l), self.complement_concept(r))
            }
            ConceptNode::All(role, d) => ConceptNode::Some(role, self.complement_concept(d)),
            ConceptNode::Some(role, d) => ConceptNode::All(role, self.complement_concept(d)),
        };
        self.intern_concept(node)
    }

    /// `C ↦ C̄`, `a:C ↦ a:C̄`. Role assertions have no complement.
    pub fn complement(&mut self, f: FormulaId) -> Result<FormulaId, SyntaxError> {
        match self.formula(f) {
            Formula::Concept(c) => {
                let n = self.complement_concept(c);
                Ok(self.intern(Formula::Concept(n)))
            }
            Formula::Assertion(a, c) => {
                let n = self.complement_concept(c);
                Ok(self.intern(Formula::Assertion(a, n)))
            }
            Formula::Relation(..) => Err(SyntaxError::RoleAssertionComplement),
        }
    }

    /// `c` and all its subconcepts, children before parents, no repeats.
    pub fn subconcepts(&self, c: ConceptId) -> Vec<ConceptId> {
        let mut out = Vec::new();
        self.collect_subconcepts(c, &mut out);
        out
    }

    pub(crate) fn collect_subconcepts(&self, c: ConceptId, out: &mut Vec<ConceptId>) {
        if out.contains(&c) {
            return;
        }
        match self.concept(c) {
            ConceptNode::And(l, r) | ConceptNode::Or(l, r) => {
                self.collect_subconcepts(l, out);
                self.collect_subconcepts(r, out);
            }
            ConceptNode::All(_, d) | ConceptNode::Some(_, d) => self.collect_subconcepts(d, out),
            _ => {}
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
}

/// A finite set of formulas kept as a sorted, duplicate-free vector so that
/// equality and hashing are order-insensitive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaSet(Vec<FormulaId>);

impl FormulaSet {
    pub fn new() -> Self {
        FormulaSet(Vec::new())
    }

    pub fn singleton(f: FormulaId) -> Self {
        FormulaSet(vec![f])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: FormulaId) -> bool {
        self.0.binary_search(&f).is_ok()
    }

    pub fn insert(&mut self, f: FormulaId) -> bool {
        match self.0.binary_search(&f) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, f);
                true
            }
        }
    }

    pub fn remove(&mut self, f: FormulaId) -> bool {
        match self.0.binary_search(&f) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = FormulaId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[FormulaId] {
        &self.0
    }

    pub fn union(&self, other: &FormulaSet) -> FormulaSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FormulaSet(out)
    }

    pub fn extend(&mut self, other: &FormulaSet) {
        if !other.is_empty() {
            *self = self.union(other);
        }
    }

    pub fn difference(&self, other: &FormulaSet) -> FormulaSet {
        FormulaSet(self.0.iter().copied().filter(|f| !other.contains(*f)).collect())
    }

    pub fn intersects(&self, other: &FormulaSet) -> bool {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().any(|f| big.contains(f))
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.iter().all(|f| other.contains(f))
    }

    pub fn with(&self, f: FormulaId) -> FormulaSet {
        let mut s = self.clone();
        s.insert(f);
        s
    }

    pub fn without(&self, f: FormulaId) -> FormulaSet {
        let mut s = self.clone();
        s.remove(f);
        s
    }
}

impl FromIterator<FormulaId> for FormulaSet {
    fn from_iter<I: IntoIterator<Item = FormulaId>>(iter: I) -> Self {
        let mut v: Vec<FormulaId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FormulaSet(v)
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = FormulaId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, FormulaId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> FormulaSet {
        ids.iter().map(|&i| FormulaId(i)).collect()
    }

    #[test]
    fn set_operations() {
        let a = set(&[3, 1, 2, 3]);
        assert_eq!(a.as_slice(), &[FormulaId(1), FormulaId(2), FormulaId(3)]);
        let b = set(&[2, 5]);
        assert_eq!(a.union(&b), set(&[1, 2, 3, 5]));
        assert_eq!(a.difference(&b), set(&[1, 3]));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&set(&[7])));
        assert!(set(&[1, 3]).is_subset(&a));
        assert_eq!(a.without(FormulaId(2)).with(FormulaId(9)), set(&[1, 3, 9]));
    }

    #[test]
    fn interning_is_canonical() {
        let mut i = Interner::new();
        let a = i.intern_concept(ConceptNode::Atom(AtomName(0)));
        let b = i.intern_concept(ConceptNode::Atom(AtomName(0)));
        assert_eq!(a, b);
        let f1 = i.intern(Formula::Concept(a));
        let f2 = i.intern(Formula::Assertion(Individual(0), a));
        assert_ne!(f1, f2);
        assert_eq!(i.intern(Formula::Concept(b)), f1);
    }

    #[test]
    fn complement_is_an_involution() {
        let mut i = Interner::new();
        let a = i.intern_concept(ConceptNode::Atom(AtomName(0)));
        let na = i.intern_concept(ConceptNode::NotAtom(AtomName(1)));
        let r = Role::named(RoleName(0));
        let and = i.intern_concept(ConceptNode::And(a, na));
        let some = i.intern_concept(ConceptNode::Some(r.inverse(), and));
        let f = i.intern(Formula::Assertion(Individual(0), some));
        let g = i.complement(f).unwrap();
        assert_ne!(f, g);
        match i.formula(g) {
            Formula::Assertion(_, c) => assert!(matches!(i.concept(c), ConceptNode::All(..))),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(i.complement(g).unwrap(), f);
    }

    #[test]
    fn role_assertion_has_no_complement() {
        let mut i = Interner::new();
        let f = i.intern(Formula::Relation(Role::named(RoleName(0)), Individual(0), Individual(1)));
        assert!(matches!(i.complement(f), Err(SyntaxError::RoleAssertionComplement)));
    }

    #[test]
    fn role_index_round_trip() {
        for i in 0..8 {
            assert_eq!(Role::from_index(i).index(), i);
        }
        let r = Role::named(RoleName(3));
        assert_eq!(r.inverse().inverse(), r);
    }
}
