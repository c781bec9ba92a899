//! The rooted and-or graph built by the engine.
//!
//! Nodes are never deleted. Two caches keep nodes unique: states are unique
//! globally up to `(label, rformulas, dformulas)` and sub-type, non-states
//! only within the local graph of their after-transition predecessor. A
//! non-state's local graph is exactly the set of non-states sharing its
//! `after_trans_pred`, so the local cache is keyed by that node.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::engine::RuleTag;
use crate::formula::{FormulaId, FormulaSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Nodes print 1-based, in creation order: `(1)` is the root.
impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0 + 1)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeType {
    State,
    NonState,
}

/// Complex nodes carry ABox assertions; simple nodes carry concepts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubType {
    Complex,
    Simple,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Unexpanded,
    Expanded,
    Incomplete,
    Unsat,
    Sat,
}

impl Status {
    /// `Incomplete`, `Unsat` or `Sat`.
    pub fn is_determined(self) -> bool {
        matches!(self, Status::Incomplete | Status::Unsat | Status::Sat)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unexpanded => "unexpanded",
            Status::Expanded => "expanded",
            Status::Incomplete => "incomplete",
            Status::Unsat => "unsat",
            Status::Sat => "sat",
        })
    }
}

/// How a state repairs converse requirements coming back from its successors.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConvMethod {
    /// Add every required formula at once.
    Required,
    /// Branch over the suggested alternative sets.
    Alternatives,
}

impl ConvMethod {
    pub fn as_u8(self) -> u8 {
        match self {
            ConvMethod::Required => 0,
            ConvMethod::Alternatives => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableauNode {
    pub node_type: NodeType,
    pub stype: SubType,
    pub status: Status,
    pub label: FormulaSet,
    pub rformulas: FormulaSet,
    pub dformulas: FormulaSet,
    /// Non-states only.
    pub state_pred: Option<NodeId>,
    /// Non-states only.
    pub after_trans_pred: Option<NodeId>,
    /// Successors of states only.
    pub ce_label: Option<FormulaId>,
    /// States only.
    pub conv_method: ConvMethod,
    pub fmls_rc: FormulaSet,
    pub alt_fml_sets_sc: BTreeSet<FormulaSet>,
    pub alt_fml_sets_scp: BTreeSet<FormulaSet>,
    /// The rule of the most recent expansion.
    pub rule: Option<RuleTag>,
    /// How many times the node has been expanded (a `Conv` counts).
    pub expansions: u32,
    succ: Vec<NodeId>,
    pred: Vec<NodeId>,
}

impl TableauNode {
    pub fn is_state(&self) -> bool {
        self.node_type == NodeType::State
    }

    pub fn aformulas(&self) -> FormulaSet {
        self.label.union(&self.rformulas)
    }

    pub fn successors(&self) -> &[NodeId] {
        &self.succ
    }

    pub fn predecessors(&self) -> &[NodeId] {
        &self.pred
    }
}

/// Order in which unexpanded nodes are picked.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Last created first (depth-first).
    #[default]
    Dfs,
    /// First created first (breadth-first).
    Fifo,
}

type CacheKey = (SubType, FormulaSet, FormulaSet, FormulaSet);

#[derive(Clone, Debug)]
pub struct TableauGraph {
    nodes: Vec<TableauNode>,
    root: Option<NodeId>,
    state_cache: HashMap<CacheKey, NodeId>,
    local_cache: HashMap<(NodeId, CacheKey), NodeId>,
    local_members: HashMap<NodeId, Vec<NodeId>>,
    queue: VecDeque<NodeId>,
    strategy: Strategy,
    edges: usize,
}

impl TableauGraph {
    pub fn new(strategy: Strategy) -> Self {
        TableauGraph {
            nodes: Vec::new(),
            root: None,
            state_cache: HashMap::new(),
            local_cache: HashMap::new(),
            local_members: HashMap::new(),
            queue: VecDeque::new(),
            strategy,
            edges: 0,
        }
    }

    /// The root. Panics on an empty graph.
    pub fn root(&self) -> NodeId {
        self.root.expect("graph has no root")
    }

    pub fn node(&self, v: NodeId) -> &TableauNode {
        &self.nodes[v.index()]
    }

    pub(crate) fn node_mut(&mut self, v: NodeId) -> &mut TableauNode {
        &mut self.nodes[v.index()]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &TableauNode)> {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i as u32), n))
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(|(v, n)| n.succ.iter().map(move |&w| (v, w)))
    }

    pub fn state_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_state()).count()
    }

    /// The non-states whose after-transition predecessor is `v1`, in creation
    /// order.
    pub fn local_graph(&self, v1: NodeId) -> &[NodeId] {
        self.local_members.get(&v1).map_or(&[], Vec::as_slice)
    }

    /// Creates a node, as a successor of `v` when given.
    #[allow(clippy::too_many_arguments)]
    pub fn new_succ(
        &mut self,
        v: Option<NodeId>,
        node_type: NodeType,
        stype: SubType,
        ce_label: Option<FormulaId>,
        label: FormulaSet,
        rformulas: FormulaSet,
        dformulas: FormulaSet,
    ) -> NodeId {
        let w = NodeId(self.nodes.len() as u32);
        let parent = v.map(|v| self.node(v));
        if let Some(p) = parent {
            assert!(
                !(p.is_state() && node_type == NodeType::State),
                "a state cannot succeed a state"
            );
            assert!(
                !(p.stype == SubType::Simple && stype == SubType::Complex),
                "no edge from a simple node to a complex node"
            );
            assert!(
                p.stype == stype || p.is_state(),
                "only states may step from complex to simple nodes"
            );
        } else {
            assert!(self.root.is_none(), "the graph already has a root");
        }
        let parent_is_state = parent.is_some_and(|p| p.is_state());
        let (state_pred, after_trans_pred) = match (node_type, parent) {
            (NodeType::State, _) => (None, None),
            (NodeType::NonState, None) => (None, Some(w)),
            (NodeType::NonState, Some(_)) if parent_is_state => (v, Some(w)),
            (NodeType::NonState, Some(p)) => (p.state_pred, p.after_trans_pred),
        };
        let key = (stype, label.clone(), rformulas.clone(), dformulas.clone());
        match after_trans_pred {
            None => {
                self.state_cache.entry(key).or_insert(w);
            }
            Some(v1) => {
                self.local_cache.entry((v1, key)).or_insert(w);
                self.local_members.entry(v1).or_default().push(w);
            }
        }
        self.nodes.push(TableauNode {
            node_type,
            stype,
            status: Status::Unexpanded,
            label,
            rformulas,
            dformulas,
            state_pred,
            after_trans_pred,
            ce_label: if parent_is_state { ce_label } else { None },
            conv_method: ConvMethod::Required,
            fmls_rc: FormulaSet::new(),
            alt_fml_sets_sc: BTreeSet::new(),
            alt_fml_sets_scp: BTreeSet::new(),
            rule: None,
            expansions: 0,
            succ: Vec::new(),
            pred: Vec::new(),
        });
        match v {
            Some(v) => {
                self.add_edge(v, w);
            }
            None => self.root = Some(w),
        }
        self.queue.push_back(w);
        w
    }

    /// Looks up an existing node with the given attributes: among all states,
    /// or among the local graph of `v1` for non-states.
    pub fn find_proxy(
        &self,
        node_type: NodeType,
        stype: SubType,
        v1: Option<NodeId>,
        label: &FormulaSet,
        rformulas: &FormulaSet,
        dformulas: &FormulaSet,
    ) -> Option<NodeId> {
        let key = (stype, label.clone(), rformulas.clone(), dformulas.clone());
        match node_type {
            NodeType::State => self.state_cache.get(&key).copied(),
            NodeType::NonState => {
                let v1 = v1.expect("non-state proxies are looked up in a local graph");
                self.local_cache.get(&(v1, key)).copied()
            }
        }
    }

    /// Connects `v` to a node with the given attributes, creating it unless a
    /// proxy exists. Returns the successor and whether it was created.
    #[allow(clippy::too_many_arguments)]
    pub fn con_to_succ(
        &mut self,
        v: NodeId,
        node_type: NodeType,
        stype: SubType,
        ce_label: Option<FormulaId>,
        label: FormulaSet,
        rformulas: FormulaSet,
        dformulas: FormulaSet,
    ) -> (NodeId, bool) {
        let v1 = match node_type {
            NodeType::State => None,
            NodeType::NonState => self.node(v).after_trans_pred,
        };
        match self.find_proxy(node_type, stype, v1, &label, &rformulas, &dformulas) {
            Some(w) => {
                self.add_edge(v, w);
                (w, false)
            }
            None => {
                (self.new_succ(Some(v), node_type, stype, ce_label, label, rformulas, dformulas), true)
            }
        }
    }

    /// Adds `(v, w)` unless present. Returns whether the edge is new.
    pub(crate) fn add_edge(&mut self, v: NodeId, w: NodeId) -> bool {
        if self.nodes[v.index()].succ.contains(&w) {
            return false;
        }
        self.nodes[v.index()].succ.push(w);
        self.nodes[w.index()].pred.push(v);
        self.edges += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, v: NodeId, w: NodeId) -> bool {
        let succ = &mut self.nodes[v.index()].succ;
        let Some(i) = succ.iter().position(|&x| x == w) else {
            return false;
        };
        succ.remove(i);
        let pred = &mut self.nodes[w.index()].pred;
        pred.retain(|&x| x != v);
        self.edges -= 1;
        true
    }

    /// Next node with status `Unexpanded`, per the strategy.
    pub fn to_expand(&mut self) -> Option<NodeId> {
        loop {
            let v = match self.strategy {
                Strategy::Dfs => self.queue.pop_back(),
                Strategy::Fifo => self.queue.pop_front(),
            }?;
            if self.node(v).status == Status::Unexpanded {
                return Some(v);
            }
        }
    }

    /// Whether `v` has a state successor.
    pub fn before_forming_state(&self, v: NodeId) -> bool {
        self.node(v).succ.iter().any(|&w| self.node(w).is_state())
    }

    /// Nodes reachable from the root along current edges, in discovery order.
    pub fn reachable(&self) -> Vec<NodeId> {
        let Some(root) = self.root else {
            return Vec::new();
        };
        let mut seen = vec![false; self.nodes.len()];
        let mut order = vec![root];
        seen[root.index()] = true;
        let mut i = 0;
        while i < order.len() {
            for &w in &self.node(order[i]).succ {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
        order
    }
}
