//! Shared helpers for the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shi_core::{Concept, KbSource, RoleAxiom, RoleRef, TBoxAxiom};

pub const ATOMS: [&str; 3] = ["A", "B", "C"];
pub const ROLES: [&str; 2] = ["r", "s"];
pub const INDIVIDUALS: [&str; 2] = ["a", "b"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_role(rng: &mut impl Rng, roles: usize) -> RoleRef {
    let name = ROLES[rng.random_range(0..roles)];
    if rng.random_bool(0.3) {
        RoleRef::inverted(name)
    } else {
        RoleRef::new(name)
    }
}

/// A concept of quantifier depth at most `depth` over the first `atoms`
/// concept names and `roles` role names.
pub fn random_concept(rng: &mut impl Rng, depth: usize, atoms: usize, roles: usize) -> Concept {
    let leaf = |rng: &mut dyn rand::RngCore| {
        let a = Concept::atom(ATOMS[rng.random_range(0..atoms)]);
        match rng.random_range(0..10) {
            0 => Concept::Top,
            1 => Concept::Bot,
            2..=5 => Concept::not(a),
            _ => a,
        }
    };
    let choice = if depth == 0 { rng.random_range(0..6) } else { rng.random_range(0..10) };
    match choice {
        0..=3 => leaf(rng),
        4 => Concept::and(leaf(rng), random_concept(rng, depth, atoms, roles)),
        5 => Concept::or(leaf(rng), random_concept(rng, depth, atoms, roles)),
        6 | 7 => Concept::some(random_role(rng, roles), random_concept(rng, depth - 1, atoms, roles)),
        _ => Concept::all(random_role(rng, roles), random_concept(rng, depth - 1, atoms, roles)),
    }
}

/// A small random knowledge base: at most two individuals, two role names,
/// three concept names, two role axioms and two TBox axioms, concepts of
/// quantifier depth at most two.
pub fn random_kb(rng: &mut impl Rng) -> KbSource {
    let atoms = rng.random_range(1..=ATOMS.len());
    let roles = rng.random_range(1..=ROLES.len());
    let inds = rng.random_range(1..=INDIVIDUALS.len());
    let mut src = KbSource::new();
    for _ in 0..rng.random_range(0..=2) {
        src.role_axioms.push(if rng.random_bool(0.5) {
            RoleAxiom::Trans(random_role(rng, roles))
        } else {
            RoleAxiom::Sub(random_role(rng, roles), random_role(rng, roles))
        });
    }
    for _ in 0..rng.random_range(0..=2) {
        let c = random_concept(rng, 1, atoms, roles);
        let d = random_concept(rng, 2, atoms, roles);
        src.tbox.push(if rng.random_bool(0.8) { TBoxAxiom::Impl(c, d) } else { TBoxAxiom::Equiv(c, d) });
    }
    for _ in 0..rng.random_range(1..=3) {
        let a = INDIVIDUALS[rng.random_range(0..inds)];
        src.abox.push(shi_core::Assertion::Instance(a.into(), random_concept(rng, 2, atoms, roles)));
    }
    for _ in 0..rng.random_range(0..=2) {
        let (a, b) = (INDIVIDUALS[rng.random_range(0..inds)], INDIVIDUALS[rng.random_range(0..inds)]);
        src.abox.push(shi_core::Assertion::Relation(random_role(rng, roles), a.into(), b.into()));
    }
    src
}
