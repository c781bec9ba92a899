//! Models read off a finished tableau.
//!
//! A model graph assigns each element a set of concepts and each role a set
//! of edges. Individuals come first, labelled by the saturation path below
//! the root; every other element stands for the end of a saturation path
//! below a state's successor and is shared between elements with equal
//! labels. Closing the edges under converses, role inclusions and
//! transitivity gives an interpretation.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::ModelError;
use crate::formula::{ConceptId, ConceptNode, Formula, FormulaId, FormulaSet, Role};
use crate::graph::{NodeId, Status, SubType, TableauGraph};
use crate::kb::KnowledgeBase;
use crate::rbox::RBoxIndex;
use crate::semantics::Interpretation;
use crate::transfer::trans_set;

pub type Relation = BTreeSet<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGraph {
    /// Elements `0..individuals` are the individuals, in signature order.
    pub individuals: usize,
    /// The concepts of each element, as concept formulas.
    pub labels: Vec<FormulaSet>,
    /// The node each element was read from.
    pub origin: Vec<NodeId>,
    /// Edges indexed by [`Role::index`], inverse roles included.
    pub edges: Vec<Relation>,
}

impl ModelGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(BTreeSet::len).sum()
    }
}

fn usable(status: Status) -> bool {
    !matches!(status, Status::Unsat | Status::Incomplete)
}

/// The saturation path starting at the non-state `v0`: each step takes the
/// earliest-created successor that is neither unsatisfiable nor incomplete,
/// up to a state or a satisfied leaf.
pub fn saturation_path(graph: &TableauGraph, v0: NodeId) -> Result<Vec<NodeId>, ModelError> {
    let fail = ModelError::NoSaturationPath(v0.index());
    if graph.node(v0).is_state() || !usable(graph.node(v0).status) {
        return Err(fail);
    }
    let mut path = vec![v0];
    let mut v = v0;
    loop {
        let n = graph.node(v);
        if n.is_state() {
            return Ok(path);
        }
        if n.successors().is_empty() {
            return if n.status == Status::Sat { Ok(path) } else { Err(fail) };
        }
        v = n.successors().iter().copied().filter(|&w| usable(graph.node(w).status)).min().ok_or(fail.clone())?;
        path.push(v);
    }
}

fn end_of_path(graph: &TableauGraph, v0: NodeId) -> Result<NodeId, ModelError> {
    Ok(*saturation_path(graph, v0)?.last().expect("paths are non-empty"))
}

/// Builds the model graph of a tableau whose root is not unsatisfiable.
pub fn extract_model_graph(kb: &KnowledgeBase, graph: &TableauGraph) -> Result<ModelGraph, ModelError> {
    let root = graph.root();
    if graph.node(root).status == Status::Unsat {
        return Err(ModelError::RootUnsat);
    }
    let top = end_of_path(graph, root)?;
    let top_formulas = graph.node(top).aformulas();

    let inds: Vec<_> = kb.individuals().collect();
    let mut mg = ModelGraph {
        individuals: inds.len(),
        labels: Vec::new(),
        origin: Vec::new(),
        edges: vec![Relation::new(); 2 * kb.signature().roles.len()],
    };
    for &a in &inds {
        let label = top_formulas
            .iter()
            .filter_map(|f| match kb.formula(f) {
                Formula::Assertion(b, c) if b == a => Some(kb.concept_formula(c)),
                _ => None,
            })
            .collect();
        mg.labels.push(label);
        mg.origin.push(top);
    }
    for f in kb.abox() {
        if let Formula::Relation(r, a, b) = kb.formula(f) {
            mg.edges[r.index()].insert((a.index(), b.index()));
        }
    }

    let mut by_label: HashMap<FormulaSet, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = (0..mg.individuals).collect();
    while let Some(x) = queue.pop_front() {
        let u = mg.origin[x];
        for f in mg.labels[x].clone().iter() {
            let Some(ConceptNode::Some(r, _)) = kb.formula(f).concept().map(|c| kb.concept(c)) else { continue };
            let ce = match graph.node(u).stype {
                SubType::Complex => kb.assertion(inds[x], kb.formula(f).concept().expect("concept formula")),
                SubType::Simple => f,
            };
            let w0 = graph
                .node(u)
                .successors()
                .iter()
                .copied()
                .find(|&w| graph.node(w).ce_label == Some(ce))
                .ok_or(ModelError::MissingWitness(u.index()))?;
            let wh = end_of_path(graph, w0)?;
            let label = graph.node(wh).aformulas();
            let y = match by_label.get(&label) {
                Some(&y) => y,
                None => {
                    let y = mg.labels.len();
                    by_label.insert(label.clone(), y);
                    mg.labels.push(label);
                    mg.origin.push(wh);
                    queue.push_back(y);
                    y
                }
            };
            mg.edges[r.index()].insert((x, y));
        }
    }
    Ok(mg)
}

fn role_of(i: usize) -> Role {
    Role::from_index(i)
}

/// Everything that keeps `mg` from being a consistent saturated model graph:
/// unreduced conjunctions and disjunctions, missing role-hierarchy
/// propagations, transfers along edges in either direction, unrealized
/// existentials and clashes.
pub fn saturation_violations(kb: &KnowledgeBase, mg: &ModelGraph) -> Vec<String> {
    let mut out = Vec::new();
    let formula_of = |c: ConceptId| -> Option<FormulaId> { kb.interner().lookup(&Formula::Concept(c)) };
    let has = |x: usize, c| formula_of(c).is_some_and(|f| mg.labels[x].contains(f));
    for (x, label) in mg.labels.iter().enumerate() {
        for f in label {
            let Some(c) = kb.formula(f).concept() else {
                out.push(format!("element {x} holds the non-concept {}", kb.show(f)));
                continue;
            };
            match kb.concept(c) {
                ConceptNode::Bot => out.push(format!("element {x} holds ⊥")),
                ConceptNode::Atom(_) => {
                    if kb.complement_in_closure(f).is_some_and(|g| label.contains(g)) {
                        out.push(format!("element {x} holds {} and its complement", kb.show(f)));
                    }
                }
                ConceptNode::And(l, r) => {
                    if !has(x, l) || !has(x, r) {
                        out.push(format!("element {x}: {} is not reduced", kb.show(f)));
                    }
                }
                ConceptNode::Or(l, r) => {
                    if !has(x, l) && !has(x, r) {
                        out.push(format!("element {x}: {} is not reduced", kb.show(f)));
                    }
                }
                ConceptNode::All(s, d) => {
                    for &r in kb.rbox().subroles_of(s) {
                        let g = kb.interner().lookup_concept(&ConceptNode::All(r, d)).and_then(formula_of);
                        if !g.is_some_and(|g| label.contains(g)) {
                            out.push(format!("element {x}: {} does not propagate to {}", kb.show(f), kb.show_role(r)));
                        }
                    }
                }
                ConceptNode::Some(r, d) => {
                    let df = formula_of(d);
                    let realized = mg.edges[r.index()]
                        .range((x, 0)..=(x, usize::MAX))
                        .any(|&(_, y)| df.is_some_and(|g| mg.labels[y].contains(g)));
                    if !realized {
                        out.push(format!("element {x}: {} is not realized", kb.show(f)));
                    }
                }
                ConceptNode::Top | ConceptNode::NotAtom(_) => {}
            }
        }
    }
    for (i, rel) in mg.edges.iter().enumerate() {
        let r = role_of(i);
        for &(x, y) in rel {
            if !trans_set(kb, &mg.labels[x], r).is_subset(&mg.labels[y]) {
                out.push(format!("edge {x} -{}-> {y}: forward transfer is missing", kb.show_role(r)));
            }
            if !trans_set(kb, &mg.labels[y], r.inverse()).is_subset(&mg.labels[x]) {
                out.push(format!("edge {x} -{}-> {y}: backward transfer is missing", kb.show_role(r)));
            }
        }
    }
    out
}

/// The least extension of `edges` (indexed by [`Role::index`]) that is closed
/// under converses, the role hierarchy and transitivity.
pub fn close_relations(edges: &[Relation], rbox: &RBoxIndex) -> Vec<Relation> {
    let mut rel = edges.to_vec();
    rel.resize(2 * rbox.role_names(), Relation::new());
    loop {
        let mut changed = false;
        for i in 0..rel.len() {
            let r = role_of(i);
            let pairs: Vec<_> = rel[i].iter().copied().collect();
            for &(x, y) in &pairs {
                changed |= rel[r.inverse().index()].insert((y, x));
                for &s in rbox.superroles_of(r) {
                    changed |= rel[s.index()].insert((x, y));
                }
            }
            if rbox.trans(r) {
                for &(x, y) in &pairs {
                    let next: Vec<_> = rel[i].range((y, 0)..=(y, usize::MAX)).map(|&(_, z)| z).collect();
                    for z in next {
                        changed |= rel[i].insert((x, z));
                    }
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Closure conditions `rel` fails: converse, role hierarchy, transitivity.
pub fn closure_violations(rel: &[Relation], rbox: &RBoxIndex) -> Vec<String> {
    let mut out = Vec::new();
    for (i, pairs) in rel.iter().enumerate() {
        let r = role_of(i);
        for &(x, y) in pairs {
            if !rel[r.inverse().index()].contains(&(y, x)) {
                out.push(format!("({x}, {y}) in role #{i} lacks its converse"));
            }
            for &s in rbox.superroles_of(r) {
                if !rel[s.index()].contains(&(x, y)) {
                    out.push(format!("({x}, {y}) in role #{i} is missing from super-role #{}", s.index()));
                }
            }
            if rbox.trans(r) {
                for &(_, z) in pairs.range((y, 0)..=(y, usize::MAX)) {
                    if !pairs.contains(&(x, z)) {
                        out.push(format!("role #{i} is not transitive at ({x}, {y}, {z})"));
                    }
                }
            }
        }
    }
    out
}

/// Pairs of `closed` beyond `base` that the closure did not need: removing
/// the pair together with its converse keeps `base` and every closure
/// condition intact.
pub fn minimality_violations(base: &[Relation], closed: &[Relation], rbox: &RBoxIndex) -> Vec<String> {
    let mut out = Vec::new();
    let empty = Relation::new();
    let base_of = |i: usize| base.get(i).unwrap_or(&empty);
    for (i, pairs) in closed.iter().enumerate() {
        let inv = role_of(i).inverse().index();
        for &(x, y) in pairs {
            if base_of(i).contains(&(x, y)) {
                continue;
            }
            let mut smaller = closed.to_vec();
            smaller[i].remove(&(x, y));
            smaller[inv].remove(&(y, x));
            let keeps_base = (0..smaller.len()).all(|j| base_of(j).is_subset(&smaller[j]));
            if keeps_base && closure_violations(&smaller, rbox).is_empty() {
                out.push(format!("({x}, {y}) in role #{i} is not needed"));
            }
        }
    }
    out
}

/// The interpretation of a model graph: individuals denote themselves, atoms
/// the elements whose label holds them, roles the closed edges.
pub fn complete_relations(kb: &KnowledgeBase, mg: &ModelGraph) -> Interpretation {
    let sig = kb.signature();
    let closed = close_relations(&mg.edges, kb.rbox());
    let mut i = Interpretation::empty(mg.len(), sig.atoms.len(), sig.roles.len(), mg.individuals);
    i.individuals = (0..mg.individuals).collect();
    for (x, label) in mg.labels.iter().enumerate() {
        for f in label {
            if let Some(ConceptNode::Atom(a)) = kb.formula(f).concept().map(|c| kb.concept(c)) {
                i.atoms[a.index()].insert(x);
            }
        }
    }
    for (n, roles) in i.roles.iter_mut().enumerate() {
        *roles = closed[2 * n].clone();
    }
    i
}

/// The model of a satisfiable knowledge base, read off its tableau.
pub fn extract_model(kb: &KnowledgeBase, graph: &TableauGraph) -> Result<Interpretation, ModelError> {
    Ok(complete_relations(kb, &extract_model_graph(kb, graph)?))
}

/// Formulas of `mg` rendered per element, for display.
pub fn render_model_graph(kb: &KnowledgeBase, mg: &ModelGraph) -> String {
    let mut out = String::new();
    for (x, label) in mg.labels.iter().enumerate() {
        let name = if x < mg.individuals {
            kb.signature().individuals[x].clone()
        } else {
            format!("d{x}")
        };
        out.push_str(&format!("{name} {}: {}\n", mg.origin[x], kb.show_set(label)));
    }
    for (i, rel) in mg.edges.iter().enumerate() {
        for &(x, y) in rel {
            out.push_str(&format!("{x} -{}-> {y}\n", kb.show_role(role_of(i))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::decide_sat;
    use crate::examples;
    use crate::semantics::{check_model, model_violation};
    use crate::syntax::{Concept, KbSource, RoleRef};

    fn model_of(src: &KbSource) -> (KnowledgeBase, ModelGraph, Interpretation) {
        let kb = KnowledgeBase::new(src).unwrap();
        let v = decide_sat(&kb);
        assert!(v.satisfiable);
        let mg = extract_model_graph(&kb, &v.graph).unwrap();
        let i = complete_relations(&kb, &mg);
        (kb, mg, i)
    }

    #[test]
    fn web_pages_model() {
        let (kb, mg, i) = model_of(&examples::web_pages_sat());
        assert!(saturation_violations(&kb, &mg).is_empty(), "{:?}", saturation_violations(&kb, &mg));
        assert_eq!(model_violation(&i, &kb), None);
        assert!(mg.len() >= 3);
    }

    #[test]
    fn unsat_root_has_no_model() {
        let kb = KnowledgeBase::new(&examples::web_pages_query()).unwrap();
        let v = decide_sat(&kb);
        assert_eq!(extract_model_graph(&kb, &v.graph), Err(ModelError::RootUnsat));
    }

    #[test]
    fn elements_with_equal_labels_are_shared() {
        let r = RoleRef::new("r");
        let src = KbSource::new().implies(Concept::Top, Concept::some(r, Concept::atom("A"))).inst("a", Concept::Top);
        let (kb, mg, i) = model_of(&src);
        assert_eq!(mg.len(), 2);
        assert!(check_model(&i, &kb));
    }

    #[test]
    fn closure_of_inverse_and_transitive_roles() {
        let (r, s) = (RoleRef::new("r"), RoleRef::new("s"));
        let src = KbSource::new().sub(r.inverse(), s.clone()).trans(s).rel(r, "a", "b").rel(RoleRef::new("r"), "b", "c");
        let kb = KnowledgeBase::new(&src).unwrap();
        let mut base = vec![Relation::new(); 4];
        base[0].extend([(0, 1), (1, 2)]);
        let closed = close_relations(&base, kb.rbox());
        assert_eq!(closed[2], Relation::from([(1, 0), (2, 1), (2, 0)]));
        assert_eq!(closed[1], Relation::from([(1, 0), (2, 1)]));
        assert!(closure_violations(&closed, kb.rbox()).is_empty());
        assert!(minimality_violations(&base, &closed, kb.rbox()).is_empty());
        let mut bigger = closed.clone();
        for rel in bigger.iter_mut().take(4) {
            rel.insert((2, 2));
        }
        assert!(closure_violations(&bigger, kb.rbox()).is_empty());
        assert!(!minimality_violations(&base, &bigger, kb.rbox()).is_empty());
    }

    #[test]
    fn saturation_paths_avoid_closed_branches() {
        let src = KbSource::new().inst("a", Concept::or(Concept::Bot, Concept::atom("A")));
        let kb = KnowledgeBase::new(&src).unwrap();
        let v = decide_sat(&kb);
        let path = saturation_path(&v.graph, v.graph.root()).unwrap();
        assert!(path.iter().all(|&w| v.graph.node(w).status != Status::Unsat));
        assert_eq!(v.graph.node(*path.last().unwrap()).status, Status::Sat);
    }

    #[test]
    fn chain_models_check() {
        for n in 1..5 {
            let (kb, mg, i) = model_of(&examples::chain(n));
            assert!(saturation_violations(&kb, &mg).is_empty());
            assert_eq!(model_violation(&i, &kb), None);
        }
    }
}
