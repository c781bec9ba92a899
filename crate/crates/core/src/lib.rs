//! Satisfiability of SHI knowledge bases by a cut-free tableau calculus over
//! and-or graphs with global state caching.
//!
//! ```
//! use shi_core::{decide_sat, parse_kb};
//!
//! let kb = parse_kb("trans P\nsub L P\nimpl F (all P F)\ninst a F\nrel L a b\ninst b (not F)").unwrap();
//! assert!(!decide_sat(&kb).satisfiable);
//! ```

pub mod audit;
pub mod dot;
pub mod engine;
pub mod error;
pub mod examples;
pub mod formula;
pub mod graph;
pub mod kb;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod rbox;
pub mod reasoning;
pub mod semantics;
pub mod syntax;
pub mod transfer;

pub use audit::{audit, AuditReport};
pub use dot::export_dot;
pub use engine::{
    applicable_rule, build_tableau, decide_sat, t_unsat, Engine, EngineOptions, RuleInstance, RuleTag, Stats,
    TraceEvent, Verdict,
};
pub use error::{KbError, ModelError, OracleError, ParseError, RBoxError, SemanticsError, SyntaxError};
pub use formula::{
    AtomName, ConceptId, ConceptNode, Formula, FormulaId, FormulaSet, Individual, Interner, Role, RoleName,
};
pub use graph::{ConvMethod, NodeId, NodeType, Status, Strategy, SubType, TableauGraph, TableauNode};
pub use kb::{KnowledgeBase, Signature};
pub use model::{
    close_relations, closure_violations, complete_relations, extract_model, extract_model_graph, minimality_violations,
    saturation_path, saturation_violations, ModelGraph, Relation,
};
pub use oracle::{bounded_model_search, bounded_model_search_with_budget};
pub use parse::{parse_concept, parse_kb, parse_source};
pub use rbox::{build_ext, RBoxIndex, RoleInclusion};
pub use reasoning::{check_concept_consistency, check_instance};
pub use semantics::{check_model, eval_concept, model_violation, Interpretation};
pub use syntax::{internalize_tbox, Assertion, Concept, KbSource, RoleAxiom, RoleRef, TBoxAxiom};
pub use transfer::{trans_between, trans_from_ind, trans_set, trans_to_ind};
