//! Benchmark inputs shared by the criterion suites.

use shi_core::{examples, KnowledgeBase};

/// Chain lengths used for the scaling benchmark.
pub const CHAIN_LENGTHS: [usize; 5] = [2, 4, 6, 8, 10];

/// The fixed example knowledge bases, by name.
pub fn fixed_kbs() -> Vec<(&'static str, KnowledgeBase)> {
    [
        ("web_pages", examples::web_pages()),
        ("web_pages_query", examples::web_pages_query()),
        ("converse", examples::converse_example()),
    ]
    .into_iter()
    .map(|(name, src)| (name, KnowledgeBase::new(&src).expect("examples are well formed")))
    .collect()
}

pub fn chain_kb(n: usize) -> KnowledgeBase {
    KnowledgeBase::new(&examples::chain(n)).expect("examples are well formed")
}
