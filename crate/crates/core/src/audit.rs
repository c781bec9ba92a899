//! Structural invariants of finished tableaux, checked from the outside.

use std::collections::{HashMap, HashSet};

use crate::formula::{Formula, FormulaSet};
use crate::graph::{NodeId, Status, SubType, TableauGraph};
use crate::kb::KnowledgeBase;

/// Violations found by [`audit`], grouped by invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    /// Formula sets leaving the closure of the knowledge base.
    pub closure: Vec<String>,
    /// States sharing `(label, rformulas, dformulas)`.
    pub state_cache: Vec<String>,
    /// Non-states of one local graph sharing `(label, rformulas, dformulas)`.
    pub local_cache: Vec<String>,
    /// Cycles through non-states only.
    pub cycles: Vec<String>,
    /// Incomplete states reachable from the root.
    pub incomplete_states: Vec<String>,
    /// Incomplete non-states reachable from the root. These arise when an
    /// or-node keeps an incomplete branch beside a usable one.
    pub incomplete_non_states: Vec<String>,
    /// Nodes expanded more than twice.
    pub reexpansion: Vec<String>,
    /// Edge shapes, sub-types, predecessor links, monotonicity of static
    /// edges.
    pub structure: Vec<String>,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &String> {
        self.closure
            .iter()
            .chain(&self.state_cache)
            .chain(&self.local_cache)
            .chain(&self.cycles)
            .chain(&self.incomplete_states)
            .chain(&self.incomplete_non_states)
            .chain(&self.reexpansion)
            .chain(&self.structure)
    }

    /// No violation of any kind.
    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    /// No violation apart from reachable incomplete non-states.
    pub fn is_clean_except_non_states(&self) -> bool {
        self.violations().count() == self.incomplete_non_states.len()
    }
}

/// Checks every invariant of a finished tableau.
pub fn audit(kb: &KnowledgeBase, graph: &TableauGraph) -> AuditReport {
    let mut report = AuditReport::default();
    let closure = kb.closure();

    let mut states = HashMap::new();
    let mut locals = HashMap::new();
    for (v, n) in graph.nodes() {
        let mut sets: Vec<(&str, &FormulaSet)> =
            vec![("label", &n.label), ("rformulas", &n.rformulas), ("dformulas", &n.dformulas), ("fmls_rc", &n.fmls_rc)];
        sets.extend(n.alt_fml_sets_sc.iter().map(|s| ("alt_fml_sets_sc", s)));
        sets.extend(n.alt_fml_sets_scp.iter().map(|s| ("alt_fml_sets_scp", s)));
        for (what, set) in sets {
            if !set.is_subset(closure) {
                report.closure.push(format!("{v}: {what} leaves the closure"));
            }
        }
        if n.ce_label.is_some_and(|f| !closure.contains(f)) {
            report.closure.push(format!("{v}: coming edge label leaves the closure"));
        }

        let key = (n.label.clone(), n.rformulas.clone(), n.dformulas.clone());
        if n.is_state() {
            if let Some(w) = states.insert(key, v) {
                report.state_cache.push(format!("states {w} and {v} coincide"));
            }
        } else if let Some(w) = locals.insert((n.after_trans_pred, key), v) {
            report.local_cache.push(format!("non-states {w} and {v} coincide"));
        }

        if n.expansions > 2 {
            report.reexpansion.push(format!("{v} was expanded {} times", n.expansions));
        }
        structure(kb, graph, v, &mut report.structure);
    }

    cycles(graph, &mut report.cycles);

    for v in graph.reachable() {
        let n = graph.node(v);
        if n.status == Status::Incomplete {
            let list = if n.is_state() { &mut report.incomplete_states } else { &mut report.incomplete_non_states };
            list.push(format!("{v} is incomplete and reachable"));
        }
    }
    report
}

fn structure(kb: &KnowledgeBase, graph: &TableauGraph, v: NodeId, out: &mut Vec<String>) {
    let n = graph.node(v);
    let formulas_fit = n.label.iter().chain(n.rformulas.iter()).all(|f| match (n.stype, kb.formula(f)) {
        (SubType::Complex, Formula::Concept(_)) => false,
        (SubType::Simple, f) => matches!(f, Formula::Concept(_)),
        _ => true,
    });
    if !formulas_fit {
        out.push(format!("{v}: formulas do not match the sub-type"));
    }
    if v == graph.root() && (n.is_state() || n.stype != SubType::Complex || !n.predecessors().is_empty()) {
        out.push(format!("{v}: the root must be a complex non-state without predecessors"));
    }
    if !n.is_state() && n.predecessors().is_empty() && v != graph.root() {
        out.push(format!("{v}: a non-root node without predecessors"));
    }
    if n.is_state() && n.successors().iter().any(|&w| graph.node(w).is_state()) {
        out.push(format!("{v}: a state with a state successor"));
    }
    if !n.is_state() && n.successors().iter().filter(|&&w| graph.node(w).is_state()).count() > 0 && n.successors().len() != 1
    {
        out.push(format!("{v}: a state successor must be the only successor"));
    }
    for &w in n.successors() {
        let m = graph.node(w);
        if n.stype == SubType::Simple && m.stype == SubType::Complex {
            out.push(format!("{v} -> {w}: from simple to complex"));
        }
        if n.stype == SubType::Complex && m.stype == SubType::Simple && !n.is_state() {
            out.push(format!("{v} -> {w}: from complex to simple through a non-state"));
        }
        if m.is_state() {
            continue;
        }
        if n.is_state() {
            if m.after_trans_pred != Some(w) || m.state_pred != Some(v) {
                out.push(format!("{v} -> {w}: a transitional successor must start its own local graph"));
            }
            let ce_held = m.ce_label.is_some_and(|f| n.label.contains(f));
            if !ce_held {
                out.push(format!("{v} -> {w}: the coming edge label is not in the state's label"));
            }
        } else {
            if m.after_trans_pred != n.after_trans_pred || m.state_pred != n.state_pred {
                out.push(format!("{v} -> {w}: a static edge leaves its local graph"));
            }
            let grows = n.rformulas.is_subset(&m.rformulas)
                && n.dformulas.is_subset(&m.dformulas)
                && n.aformulas().is_subset(&m.aformulas());
            if !grows {
                out.push(format!("{v} -> {w}: a static edge loses formulas"));
            }
        }
    }
}

// Non-state edges only; every cycle of the graph passes through a state.
fn cycles(graph: &TableauGraph, out: &mut Vec<String>) {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; graph.len()];
    let mut reported = HashSet::new();
    for start in graph.node_ids() {
        if graph.node(start).is_state() || mark[start.index()] != Mark::New {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        mark[start.index()] = Mark::Open;
        while let Some((v, i)) = stack.pop() {
            let succ = graph.node(v).successors();
            if i == succ.len() {
                mark[v.index()] = Mark::Done;
                continue;
            }
            stack.push((v, i + 1));
            let w = succ[i];
            if graph.node(w).is_state() {
                continue;
            }
            match mark[w.index()] {
                Mark::New => {
                    mark[w.index()] = Mark::Open;
                    stack.push((w, 0));
                }
                Mark::Open => {
                    if reported.insert(w) {
                        out.push(format!("a cycle of non-states through {w}"));
                    }
                }
                Mark::Done => {}
            }
        }
    }
}
