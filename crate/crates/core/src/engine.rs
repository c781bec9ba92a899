//! Rule application and status propagation over the and-or graph.
//!
//! The main loop repeatedly picks an unexpanded node and applies the
//! highest-priority applicable rule, breaking ties by the smallest principal
//! formula. Status changes travel up through predecessors; when a node's only
//! successor is an incomplete state, the node is re-expanded by `Conv` using
//! the formulas that state asked for.

use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{ConceptNode, Formula, FormulaId, FormulaSet, Individual, Role};
use crate::graph::{ConvMethod, NodeId, NodeType, Status, Strategy, SubType, TableauGraph, TableauNode};
use crate::kb::KnowledgeBase;
use crate::transfer::{trans_between, trans_from_ind, trans_set, trans_to_ind};

/// Tableau rules. Primed rules work on complex nodes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    And,
    Or,
    H,
    Trans,
    AndP,
    OrP,
    HP,
    ForallP,
    TransP,
    FormingState,
    Conv,
}

impl RuleTag {
    pub const ALL: [RuleTag; 11] = [
        RuleTag::And,
        RuleTag::Or,
        RuleTag::H,
        RuleTag::Trans,
        RuleTag::AndP,
        RuleTag::OrP,
        RuleTag::HP,
        RuleTag::ForallP,
        RuleTag::TransP,
        RuleTag::FormingState,
        RuleTag::Conv,
    ];

    /// Larger is stronger.
    pub fn priority(self) -> u8 {
        use RuleTag::*;
        match self {
            And | AndP | H | HP | ForallP => 5,
            Or | OrP => 4,
            FormingState => 3,
            Trans | TransP => 2,
            Conv => 1,
        }
    }

    pub fn is_transitional(self) -> bool {
        matches!(self, RuleTag::Trans | RuleTag::TransP)
    }

    pub fn symbol(self) -> &'static str {
        use RuleTag::*;
        match self {
            And => "⊓",
            Or => "⊔",
            H => "H",
            Trans => "Trans",
            AndP => "⊓′",
            OrP => "⊔′",
            HP => "H′",
            ForallP => "∀′",
            TransP => "Trans′",
            FormingState => "FormingState",
            Conv => "Conv",
        }
    }

    /// ASCII name used in statistics output.
    pub fn name(self) -> &'static str {
        use RuleTag::*;
        match self {
            And => "and",
            Or => "or",
            H => "h",
            Trans => "trans",
            AndP => "and'",
            OrP => "or'",
            HP => "h'",
            ForallP => "forall'",
            TransP => "trans'",
            FormingState => "forming-state",
            Conv => "conv",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A rule bound to a node, with the labels of its conclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub tag: RuleTag,
    /// Empty for `FormingState` and `Conv`; one formula per successor for the
    /// transitional rules.
    pub principals: Vec<FormulaId>,
    /// For `H`/`H′`, the `R` with `R ⊑ S`; for `∀′`, the role of the edge.
    pub role: Option<Role>,
    pub conclusions: Vec<FormulaSet>,
}

impl RuleInstance {
    fn conv() -> Self {
        RuleInstance { tag: RuleTag::Conv, principals: Vec::new(), role: None, conclusions: Vec::new() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub states: usize,
    pub edges: usize,
    pub expansions: u64,
    rule_counts: [u64; 11],
}

impl Stats {
    pub fn applications(&self, tag: RuleTag) -> u64 {
        self.rule_counts[tag.index()]
    }

    pub fn rule_applications(&self) -> impl Iterator<Item = (RuleTag, u64)> + '_ {
        RuleTag::ALL.into_iter().map(|t| (t, self.applications(t)))
    }
}

/// One step of a run, recorded when tracing is enabled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Created { node: NodeId },
    Applied { node: NodeId, rule: RuleTag },
    Status { node: NodeId, status: Status },
    EdgeRemoved { from: NodeId, to: NodeId },
    /// A `Conv` re-expansion of `node` driven by the incomplete `state`, with
    /// the state's repair data at that moment.
    Conv {
        node: NodeId,
        state: NodeId,
        method: ConvMethod,
        fmls_rc: FormulaSet,
        alt_fml_sets_sc: BTreeSet<FormulaSet>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    pub strategy: Strategy,
    pub trace: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub satisfiable: bool,
    pub graph: TableauGraph,
    pub stats: Stats,
    /// Empty unless tracing was requested.
    pub trace: Vec<TraceEvent>,
}

/// Trivial unsatisfiability: `⊥`, `a:⊥` or a complementary pair.
pub fn t_unsat(kb: &KnowledgeBase, label: &FormulaSet) -> bool {
    label.iter().any(|f| {
        kb.formula(f).concept().is_some_and(|c| kb.concept(c) == ConceptNode::Bot)
            || kb.complement_in_closure(f).is_some_and(|g| label.contains(g))
    })
}

/// The rule the engine would apply to the unexpanded node `v`, or `None` when
/// nothing but `Conv` could apply.
pub fn applicable_rule(kb: &KnowledgeBase, graph: &TableauGraph, v: NodeId) -> Option<RuleInstance> {
    let n = graph.node(v);
    if n.is_state() {
        transitional(kb, n)
    } else {
        unary_static(kb, n).or_else(|| disjunction(kb, n)).or_else(|| forming_state(kb, n))
    }
}

fn existential(kb: &KnowledgeBase, f: FormulaId) -> Option<(Option<Individual>, Role, FormulaId)> {
    match kb.formula(f) {
        Formula::Concept(c) => match kb.concept(c) {
            ConceptNode::Some(r, d) => Some((None, r, kb.concept_formula(d))),
            _ => None,
        },
        Formula::Assertion(a, c) => match kb.concept(c) {
            ConceptNode::Some(r, d) => Some((Some(a), r, kb.concept_formula(d))),
            _ => None,
        },
        Formula::Relation(..) => None,
    }
}

fn transitional(kb: &KnowledgeBase, n: &TableauNode) -> Option<RuleInstance> {
    let mut principals = Vec::new();
    let mut conclusions = Vec::new();
    for f in &n.label {
        let Some((a, r, c)) = existential(kb, f) else { continue };
        let carried = match a {
            None => trans_set(kb, &n.label, r),
            Some(a) => trans_from_ind(kb, &n.label, a, r),
        };
        let mut x = carried.union(kb.tbox_formulas());
        x.insert(c);
        principals.push(f);
        conclusions.push(x);
    }
    if principals.is_empty() {
        return None;
    }
    let tag = match n.stype {
        SubType::Simple => RuleTag::Trans,
        SubType::Complex => RuleTag::TransP,
    };
    Some(RuleInstance { tag, principals, role: None, conclusions })
}

// ⊓, ⊓′, H, H′ and ∀′: the first principal in formula order that admits an
// instance, and for several H instances on one principal the smallest added
// formula.
fn unary_static(kb: &KnowledgeBase, n: &TableauNode) -> Option<RuleInstance> {
    let af = n.aformulas();
    let complex = n.stype == SubType::Complex;
    for f in &n.label {
        let (ind, c) = match kb.formula(f) {
            Formula::Concept(c) => (None, c),
            Formula::Assertion(a, c) => (Some(a), c),
            Formula::Relation(r, a, b) => {
                let added = trans_between(kb, &n.label, a, r, b)
                    .union(&trans_between(kb, &n.label, b, r.inverse(), a))
                    .difference(&af);
                if !added.is_empty() {
                    return Some(RuleInstance {
                        tag: RuleTag::ForallP,
                        principals: vec![f],
                        role: Some(r),
                        conclusions: vec![n.label.union(&added)],
                    });
                }
                continue;
            }
        };
        let lift = |c| match ind {
            None => kb.concept_formula(c),
            Some(a) => kb.assertion(a, c),
        };
        match kb.concept(c) {
            ConceptNode::And(l, r) if !n.rformulas.contains(f) => {
                let mut x = n.label.without(f);
                x.insert(lift(l));
                x.insert(lift(r));
                let tag = if complex { RuleTag::AndP } else { RuleTag::And };
                return Some(RuleInstance { tag, principals: vec![f], role: None, conclusions: vec![x] });
            }
            ConceptNode::All(s, d) => {
                let best = kb
                    .rbox()
                    .subroles_of(s)
                    .iter()
                    .map(|&r| (lift(kb.all_concept(r, d)), r))
                    .filter(|(g, _)| !af.contains(*g))
                    .min();
                if let Some((g, r)) = best {
                    let tag = if complex { RuleTag::HP } else { RuleTag::H };
                    return Some(RuleInstance {
                        tag,
                        principals: vec![f],
                        role: Some(r),
                        conclusions: vec![n.label.with(g)],
                    });
                }
            }
            _ => {}
        }
    }
    None
}

fn disjunction(kb: &KnowledgeBase, n: &TableauNode) -> Option<RuleInstance> {
    for f in &n.label {
        if n.rformulas.contains(f) {
            continue;
        }
        let (lift, c): (Box<dyn Fn(_) -> FormulaId>, _) = match kb.formula(f) {
            Formula::Concept(c) => (Box::new(|d| kb.concept_formula(d)), c),
            Formula::Assertion(a, c) => (Box::new(move |d| kb.assertion(a, d)), c),
            Formula::Relation(..) => continue,
        };
        if let ConceptNode::Or(l, r) = kb.concept(c) {
            let x = n.label.without(f);
            let tag = if n.stype == SubType::Complex { RuleTag::OrP } else { RuleTag::Or };
            return Some(RuleInstance {
                tag,
                principals: vec![f],
                role: None,
                conclusions: vec![x.with(lift(l)), x.with(lift(r))],
            });
        }
    }
    None
}

// Only worthwhile when there is an existential for a transitional rule to
// realize; saturated existential-free nodes are satisfiable as they stand.
fn forming_state(kb: &KnowledgeBase, n: &TableauNode) -> Option<RuleInstance> {
    n.label.iter().any(|f| existential(kb, f).is_some()).then(|| RuleInstance {
        tag: RuleTag::FormingState,
        principals: Vec::new(),
        role: None,
        conclusions: vec![n.label.clone()],
    })
}

/// A tableau under construction.
pub struct Engine<'kb> {
    kb: &'kb KnowledgeBase,
    graph: TableauGraph,
    stats: Stats,
    trace: Option<Vec<TraceEvent>>,
    pending: Vec<NodeId>,
    draining: bool,
}

impl<'kb> Engine<'kb> {
    /// Creates the root: the ABox plus every TBox concept asserted of every
    /// individual, checked at once for trivial (un)satisfiability.
    pub fn new(kb: &'kb KnowledgeBase, opts: &EngineOptions) -> Self {
        let mut e = Engine {
            kb,
            graph: TableauGraph::new(opts.strategy),
            stats: Stats::default(),
            trace: opts.trace.then(Vec::new),
            pending: Vec::new(),
            draining: false,
        };
        let mut x = kb.abox().clone();
        for a in kb.individuals() {
            for &c in kb.tbox() {
                x.insert(kb.assertion(a, c));
            }
        }
        let root = e.new_node(None, NodeType::NonState, SubType::Complex, None, x);
        if t_unsat(kb, &e.graph.node(root).label) {
            e.set_status(root, Status::Unsat);
        } else if applicable_rule(kb, &e.graph, root).is_none() {
            e.set_status(root, Status::Sat);
        }
        e
    }

    pub fn graph(&self) -> &TableauGraph {
        &self.graph
    }

    #[cfg(test)]
    pub(crate) fn graph_mut(&mut self) -> &mut TableauGraph {
        &mut self.graph
    }

    /// Expands one node. Returns `false` once nothing is left to expand.
    pub fn step(&mut self) -> bool {
        let Some(v) = self.graph.to_expand() else {
            return false;
        };
        // Every node is checked for clashes when created; this only guards.
        if t_unsat(self.kb, &self.graph.node(v).label) {
            self.set_status(v, Status::Unsat);
            self.propagate_status(v);
            return true;
        }
        match applicable_rule(self.kb, &self.graph, v) {
            Some(rule) => self.apply_rule(&rule, v),
            None => {
                self.set_status(v, Status::Sat);
                self.propagate_status(v);
            }
        }
        true
    }

    pub fn run(mut self) -> Verdict {
        while self.step() {}
        self.finish()
    }

    pub fn finish(mut self) -> Verdict {
        self.stats.nodes = self.graph.len();
        self.stats.states = self.graph.state_count();
        self.stats.edges = self.graph.edge_count();
        let root = self.graph.root();
        Verdict {
            satisfiable: self.graph.node(root).status != Status::Unsat,
            graph: self.graph,
            stats: self.stats,
            trace: self.trace.unwrap_or_default(),
        }
    }

    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(t) = &mut self.trace {
            t.push(event());
        }
    }

    fn status(&self, v: NodeId) -> Status {
        self.graph.node(v).status
    }

    fn set_status(&mut self, v: NodeId, status: Status) {
        if self.status(v) != status {
            self.graph.node_mut(v).status = status;
            self.record(|| TraceEvent::Status { node: v, status });
        }
    }

    fn new_node(
        &mut self,
        v: Option<NodeId>,
        node_type: NodeType,
        stype: SubType,
        ce_label: Option<FormulaId>,
        label: FormulaSet,
    ) -> NodeId {
        let w = self.graph.new_succ(v, node_type, stype, ce_label, label, FormulaSet::new(), FormulaSet::new());
        self.record(|| TraceEvent::Created { node: w });
        w
    }

    fn connect(
        &mut self,
        v: NodeId,
        node_type: NodeType,
        label: FormulaSet,
        rformulas: FormulaSet,
        dformulas: FormulaSet,
    ) -> NodeId {
        let stype = self.graph.node(v).stype;
        let (w, created) = self.graph.con_to_succ(v, node_type, stype, None, label, rformulas, dformulas);
        if created {
            self.record(|| TraceEvent::Created { node: w });
        }
        w
    }

    /// What a non-state in the local graph of `v1` needs its state `v0` to
    /// hold, going back along the converse of the edge that created `v1`.
    fn converse_requirement(&self, v0: NodeId, v1: NodeId, label: &FormulaSet) -> FormulaSet {
        let ce = self.graph.node(v1).ce_label.expect("after-transition nodes carry a coming edge label");
        let back = match existential(self.kb, ce) {
            Some((None, r, _)) => trans_set(self.kb, label, r.inverse()),
            Some((Some(a), r, _)) => trans_to_ind(self.kb, label, r.inverse(), a),
            None => unreachable!("coming edge labels are existentials"),
        };
        back.difference(&self.graph.node(v0).aformulas())
    }

    /// Applies `rule` to `v`, then checks the successors for clashes and
    /// converse compatibility and updates statuses.
    pub fn apply_rule(&mut self, rule: &RuleInstance, v: NodeId) {
        if rule.tag == RuleTag::Conv {
            assert_eq!(self.status(v), Status::Expanded, "Conv re-expands expanded nodes");
            assert!(self.graph.before_forming_state(v), "Conv needs a state successor");
        } else {
            assert_eq!(self.status(v), Status::Unexpanded, "{} applied to an expanded node", rule.tag);
        }
        let node = self.graph.node_mut(v);
        node.expansions += 1;
        node.rule = Some(rule.tag);
        self.stats.expansions += 1;
        self.stats.rule_counts[rule.tag.index()] += 1;
        self.record(|| TraceEvent::Applied { node: v, rule: rule.tag });

        match rule.tag {
            RuleTag::FormingState => {
                let n = self.graph.node(v);
                let (label, rf, df) = (n.label.clone(), n.rformulas.clone(), n.dformulas.clone());
                self.connect(v, NodeType::State, label, rf, df);
            }
            RuleTag::Conv => self.apply_conv_rule(v),
            RuleTag::Trans | RuleTag::TransP => {
                self.apply_trans_rule(rule, v);
                if self.status(v).is_determined() {
                    self.propagate_status(v);
                    return;
                }
            }
            tag => {
                let n = self.graph.node(v);
                let mut y = n.rformulas.clone();
                if !matches!(tag, RuleTag::H | RuleTag::HP | RuleTag::ForallP) {
                    y.insert(rule.principals[0]);
                }
                let df = n.dformulas.clone();
                for x in &rule.conclusions {
                    self.connect(v, NodeType::NonState, x.clone(), y.clone(), df.clone());
                }
            }
        }
        self.set_status(v, Status::Expanded);

        for w in self.graph.node(v).successors().to_vec() {
            if self.status(w).is_determined() {
                continue;
            }
            let wn = self.graph.node(w);
            if t_unsat(self.kb, &wn.label) {
                self.set_status(w, Status::Unsat);
            } else if !wn.is_state() {
                // Successors in the root's local graph have no state to answer to.
                let Some(v0) = wn.state_pred else { continue };
                let v1 = wn.after_trans_pred.expect("non-states have an after-transition predecessor");
                let x = self.converse_requirement(v0, v1, &wn.label);
                if x.is_empty() {
                    continue;
                }
                let state = self.graph.node_mut(v0);
                if state.conv_method == ConvMethod::Required && state.status != Status::Unexpanded {
                    // The state's requirements were fixed when its transition
                    // finished; an or-branch below it must not add to them.
                    continue;
                }
                if state.conv_method == ConvMethod::Required {
                    state.fmls_rc.extend(&x);
                    if x.intersects(&state.dformulas) {
                        self.set_status(v0, Status::Unsat);
                        self.propagate_status(v0);
                        return;
                    }
                } else if x.intersects(&state.dformulas) {
                    self.set_status(w, Status::Unsat);
                } else {
                    self.graph.node_mut(v1).alt_fml_sets_scp.insert(x);
                    self.set_status(w, Status::Incomplete);
                }
            } else if wn.status == Status::Unexpanded && applicable_rule(self.kb, &self.graph, w).is_none() {
                self.set_status(w, Status::Sat);
            }
        }

        self.update_status(v);
        if self.status(v).is_determined() {
            self.propagate_status(v);
        }
    }

    fn apply_trans_rule(&mut self, rule: &RuleInstance, u: NodeId) {
        let mut clash = false;
        for (&p, x) in rule.principals.iter().zip(&rule.conclusions) {
            let w = self.new_node(Some(u), NodeType::NonState, SubType::Simple, Some(p), x.clone());
            if t_unsat(self.kb, x) {
                // One contradictory successor settles the whole and-node.
                self.set_status(w, Status::Unsat);
                clash = true;
                continue;
            }
            let req = self.converse_requirement(u, w, x);
            self.graph.node_mut(u).fmls_rc.extend(&req);
        }
        let n = self.graph.node(u);
        if clash || n.fmls_rc.intersects(&n.dformulas) {
            self.set_status(u, Status::Unsat);
            return;
        }

        // Saturate the local graph of `u` with the unary static rules.
        let roots = self.graph.node(u).successors().to_vec();
        'scopes: for s in roots {
            let mut i = 0;
            while i < self.graph.local_graph(s).len() {
                if self.status(u) == Status::Unsat {
                    break 'scopes;
                }
                let w = self.graph.local_graph(s)[i];
                i += 1;
                if self.status(w) != Status::Unexpanded {
                    continue;
                }
                if let Some(rule) = applicable_rule(self.kb, &self.graph, w) {
                    if rule.tag.priority() == 5 {
                        self.apply_rule(&rule, w);
                    }
                }
            }
        }

        if self.status(u) != Status::Unsat {
            if self.graph.node(u).fmls_rc.is_empty() {
                self.graph.node_mut(u).conv_method = ConvMethod::Alternatives;
            } else {
                self.set_status(u, Status::Incomplete);
            }
        }
    }

    fn apply_conv_rule(&mut self, v: NodeId) {
        let succ = self.graph.node(v).successors();
        assert_eq!(succ.len(), 1, "Conv applies to nodes with a single state successor");
        let w = succ[0];
        self.graph.remove_edge(v, w);
        let state = self.graph.node(w);
        let (method, fmls_rc, alt) = (state.conv_method, state.fmls_rc.clone(), state.alt_fml_sets_sc.clone());
        self.record(|| TraceEvent::EdgeRemoved { from: v, to: w });
        self.record(|| TraceEvent::Conv {
            node: v,
            state: w,
            method,
            fmls_rc: fmls_rc.clone(),
            alt_fml_sets_sc: alt.clone(),
        });
        let n = self.graph.node(v);
        let (label, rf, df) = (n.label.clone(), n.rformulas.clone(), n.dformulas.clone());
        match method {
            ConvMethod::Required => {
                self.connect(v, NodeType::NonState, label.union(&fmls_rc), rf, df);
            }
            ConvMethod::Alternatives => {
                let singles: Vec<FormulaId> =
                    alt.iter().filter(|x| x.len() == 1).map(|x| x.as_slice()[0]).collect();
                for (i, &phi) in singles.iter().enumerate() {
                    let mut d = df.clone();
                    d.extend(&singles[..i].iter().copied().collect());
                    self.connect(v, NodeType::NonState, label.with(phi), rf.clone(), d);
                }
                let all_singles: FormulaSet = singles.iter().copied().collect();
                for x in alt.iter().filter(|x| x.len() != 1) {
                    self.connect(v, NodeType::NonState, label.union(x), rf.clone(), df.union(&all_singles));
                }
            }
        }
    }

    /// Recomputes the status of the expanded node `v` from its successors.
    pub fn update_status(&mut self, v: NodeId) {
        assert_eq!(self.status(v), Status::Expanded);
        let succ = self.graph.node(v).successors().to_vec();
        let statuses: Vec<Status> = succ.iter().map(|&w| self.status(w)).collect();
        if !self.graph.node(v).is_state() {
            if statuses.contains(&Status::Sat) {
                self.set_status(v, Status::Sat);
            } else if statuses.iter().all(|&s| s == Status::Unsat) {
                self.set_status(v, Status::Unsat);
            } else if statuses.iter().all(|&s| matches!(s, Status::Incomplete | Status::Unsat)) {
                if self.graph.before_forming_state(v) {
                    self.apply_rule(&RuleInstance::conv(), v);
                } else {
                    self.set_status(v, Status::Incomplete);
                }
            }
        } else if statuses.iter().all(|&s| s == Status::Sat) {
            self.set_status(v, Status::Sat);
        } else if statuses.contains(&Status::Unsat) {
            self.set_status(v, Status::Unsat);
        } else if let Some(&w) = succ.iter().filter(|&&w| self.status(w) == Status::Incomplete).min() {
            let alt = self.graph.node(w).alt_fml_sets_scp.clone();
            self.graph.node_mut(v).alt_fml_sets_sc = alt;
            self.set_status(v, Status::Incomplete);
        }
    }

    /// Pushes the determined status of `v` up to its expanded predecessors.
    pub fn propagate_status(&mut self, v: NodeId) {
        self.pending.push(v);
        if self.draining {
            return;
        }
        self.draining = true;
        while let Some(x) = self.pending.pop() {
            for u in self.graph.node(x).predecessors().to_vec() {
                if self.status(u) == Status::Expanded {
                    self.update_status(u);
                    if self.status(u).is_determined() {
                        self.pending.push(u);
                    }
                }
            }
        }
        self.draining = false;
    }
}

/// Builds the complete tableau for `kb`.
pub fn build_tableau(kb: &KnowledgeBase, opts: &EngineOptions) -> Verdict {
    Engine::new(kb, opts).run()
}

/// Decides satisfiability with the default depth-first strategy.
pub fn decide_sat(kb: &KnowledgeBase) -> Verdict {
    build_tableau(kb, &EngineOptions::default())
}
