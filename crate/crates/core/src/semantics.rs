//! Finite interpretations and the model relation.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::SemanticsError;
use crate::formula::{ConceptId, ConceptNode, Formula, Role};
use crate::kb::KnowledgeBase;
use crate::rbox::RoleInclusion;

/// A finite interpretation over the domain `0..domain`. Atoms, role names and
/// individuals are indexed as in the knowledge base's signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub domain: usize,
    pub atoms: Vec<BTreeSet<usize>>,
    pub roles: Vec<BTreeSet<(usize, usize)>>,
    pub individuals: Vec<usize>,
}

impl Interpretation {
    /// An interpretation with empty extensions, every individual mapped to 0.
    pub fn empty(domain: usize, atoms: usize, roles: usize, individuals: usize) -> Self {
        Interpretation {
            domain,
            atoms: vec![BTreeSet::new(); atoms],
            roles: vec![BTreeSet::new(); roles],
            individuals: vec![0; individuals],
        }
    }

    /// `(x, y) ∈ R^I`, reading inverse roles as converses.
    pub fn holds(&self, r: Role, x: usize, y: usize) -> Result<bool, SemanticsError> {
        let rel = self.roles.get(r.name.index()).ok_or(SemanticsError::UnknownRole(r.name.index()))?;
        Ok(if r.inverse { rel.contains(&(y, x)) } else { rel.contains(&(x, y)) })
    }

    /// The extension of `r`, inverse roles included.
    pub fn role_extension(&self, r: Role) -> Result<BTreeSet<(usize, usize)>, SemanticsError> {
        let rel = self.roles.get(r.name.index()).ok_or(SemanticsError::UnknownRole(r.name.index()))?;
        Ok(if r.inverse { rel.iter().map(|&(x, y)| (y, x)).collect() } else { rel.clone() })
    }

    fn individual(&self, a: usize) -> Result<usize, SemanticsError> {
        self.individuals.get(a).copied().ok_or(SemanticsError::UnknownIndividual(a))
    }

    fn eval(&self, kb: &KnowledgeBase, c: ConceptId) -> Result<Vec<bool>, SemanticsError> {
        let n = self.domain;
        Ok(match kb.concept(c) {
            ConceptNode::Top => vec![true; n],
            ConceptNode::Bot => vec![false; n],
            ConceptNode::Atom(a) | ConceptNode::NotAtom(a) => {
                let ext = self.atoms.get(a.index()).ok_or(SemanticsError::UnknownAtom(a.index()))?;
                let neg = matches!(kb.concept(c), ConceptNode::NotAtom(_));
                (0..n).map(|x| ext.contains(&x) != neg).collect()
            }
            ConceptNode::And(l, r) => {
                let (l, r) = (self.eval(kb, l)?, self.eval(kb, r)?);
                l.iter().zip(&r).map(|(a, b)| *a && *b).collect()
            }
            ConceptNode::Or(l, r) => {
                let (l, r) = (self.eval(kb, l)?, self.eval(kb, r)?);
                l.iter().zip(&r).map(|(a, b)| *a || *b).collect()
            }
            ConceptNode::All(r, d) | ConceptNode::Some(r, d) => {
                let d = self.eval(kb, d)?;
                let ext = self.role_extension(r)?;
                let universal = matches!(kb.concept(c), ConceptNode::All(..));
                let mut out = vec![universal; n];
                for (x, y) in ext {
                    if universal && !d[y] {
                        out[x] = false;
                    } else if !universal && d[y] {
                        out[x] = true;
                    }
                }
                out
            }
        })
    }

    /// Renders the interpretation with the knowledge base's names.
    pub fn render(&self, kb: &KnowledgeBase) -> String {
        let sig = kb.signature();
        let mut out = String::new();
        let elems: Vec<String> = (0..self.domain).map(|x| format!("d{x}")).collect();
        writeln!(out, "domain: {}", elems.join(" ")).unwrap();
        let inds: Vec<String> =
            sig.individuals.iter().zip(&self.individuals).map(|(a, x)| format!("{a}=d{x}")).collect();
        writeln!(out, "individuals: {}", inds.join(" ")).unwrap();
        for (name, ext) in sig.atoms.iter().zip(&self.atoms) {
            let xs: Vec<String> = ext.iter().map(|x| format!("d{x}")).collect();
            writeln!(out, "{name}: {{{}}}", xs.join(", ")).unwrap();
        }
        for (name, ext) in sig.roles.iter().zip(&self.roles) {
            let ps: Vec<String> = ext.iter().map(|(x, y)| format!("(d{x}, d{y})")).collect();
            writeln!(out, "{name}: {{{}}}", ps.join(", ")).unwrap();
        }
        out
    }
}

/// `C^I`, the elements satisfying `c`.
pub fn eval_concept(i: &Interpretation, kb: &KnowledgeBase, c: ConceptId) -> Result<BTreeSet<usize>, SemanticsError> {
    let ext = i.eval(kb, c)?;
    Ok(ext.iter().enumerate().filter(|(_, b)| **b).map(|(x, _)| x).collect())
}

/// Whether `i` satisfies every role axiom, validates every TBox concept and
/// satisfies every assertion of `kb`. Interpretations over a different
/// signature are never models.
pub fn check_model(i: &Interpretation, kb: &KnowledgeBase) -> bool {
    model_violation(i, kb).is_none()
}

/// The first reason `i` is not a model of `kb`, if any.
pub fn model_violation(i: &Interpretation, kb: &KnowledgeBase) -> Option<String> {
    let sig = kb.signature();
    if i.atoms.len() != sig.atoms.len() || i.roles.len() != sig.roles.len() || i.individuals.len() != sig.individuals.len() {
        return Some("signature mismatch".into());
    }
    if i.domain == 0 {
        return Some("empty domain".into());
    }
    if i.individuals.iter().any(|&x| x >= i.domain)
        || i.atoms.iter().flatten().any(|&x| x >= i.domain)
        || i.roles.iter().flatten().any(|&(x, y)| x >= i.domain || y >= i.domain)
    {
        return Some("element outside the domain".into());
    }
    let result = (|| -> Result<Option<String>, SemanticsError> {
        for ax in kb.role_axioms() {
            match *ax {
                RoleInclusion::Sub(r, s) => {
                    let (re, se) = (i.role_extension(r)?, i.role_extension(s)?);
                    if !re.is_subset(&se) {
                        return Ok(Some(format!("{} ⊑ {} violated", kb.show_role(r), kb.show_role(s))));
                    }
                }
                RoleInclusion::Trans(r) => {
                    let re = i.role_extension(r)?;
                    for &(x, y) in &re {
                        for &(y2, z) in re.range((y, 0)..=(y, usize::MAX)) {
                            debug_assert_eq!(y, y2);
                            if !re.contains(&(x, z)) {
                                return Ok(Some(format!("{} is not transitive", kb.show_role(r))));
                            }
                        }
                    }
                }
            }
        }
        for &c in kb.tbox() {
            if i.eval(kb, c)?.iter().any(|b| !b) {
                return Ok(Some(format!("TBox concept {} is not valid", kb.show_concept(c))));
            }
        }
        for f in kb.abox() {
            let ok = match kb.formula(f) {
                Formula::Assertion(a, c) => i.eval(kb, c)?[i.individual(a.index())?],
                Formula::Relation(r, a, b) => i.holds(r, i.individual(a.index())?, i.individual(b.index())?)?,
                Formula::Concept(_) => true,
            };
            if !ok {
                return Ok(Some(format!("assertion {} fails", kb.show(f))));
            }
        }
        Ok(None)
    })();
    result.unwrap_or_else(|e| Some(e.to_string()))
}
