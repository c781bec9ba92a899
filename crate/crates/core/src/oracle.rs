//! Bounded brute-force model search, independent of the tableau.
//!
//! Interpretations of size `1..=k` are enumerated bit by bit: individuals are
//! assigned first (in canonical order, so permutations are tried once), then
//! atom and role-name memberships element by element. Every partial
//! assignment is evaluated in three-valued logic and abandoned as soon as an
//! axiom is definitely false. Elements no individual denotes are
//! interchangeable, so their atom vectors are kept in lexicographic order.

use crate::error::OracleError;
use crate::formula::{ConceptId, ConceptNode, Formula, Role};
use crate::kb::KnowledgeBase;
use crate::rbox::RoleInclusion;
use crate::semantics::{check_model, Interpretation};

/// Search nodes visited before [`bounded_model_search`] gives up.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

// Kleene truth values, ordered so that `∧` is `min` and `∨` is `max`.
const F: u8 = 0;
const U: u8 = 1;
const T: u8 = 2;

fn not(v: u8) -> u8 {
    T - v
}

#[derive(Copy, Clone)]
enum Var {
    Atom(usize),
    Role(usize),
}

struct Search<'a> {
    kb: &'a KnowledgeBase,
    n: usize,
    atoms: usize,
    roles: usize,
    anonymous_from: usize,
    ind: Vec<usize>,
    atom_bits: Vec<u8>,
    role_bits: Vec<u8>,
    visited: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn atom(&self, a: usize, x: usize) -> u8 {
        self.atom_bits[a * self.n + x]
    }

    fn role(&self, r: Role, x: usize, y: usize) -> u8 {
        let (x, y) = if r.inverse { (y, x) } else { (x, y) };
        self.role_bits[(r.name.index() * self.n + x) * self.n + y]
    }

    fn eval(&self, c: ConceptId, x: usize) -> u8 {
        match self.kb.concept(c) {
            ConceptNode::Top => T,
            ConceptNode::Bot => F,
            ConceptNode::Atom(a) => self.atom(a.index(), x),
            ConceptNode::NotAtom(a) => not(self.atom(a.index(), x)),
            ConceptNode::And(l, r) => self.eval(l, x).min(self.eval(r, x)),
            ConceptNode::Or(l, r) => self.eval(l, x).max(self.eval(r, x)),
            ConceptNode::Some(r, d) => {
                (0..self.n).map(|y| self.role(r, x, y).min(self.eval(d, y))).max().unwrap_or(F)
            }
            ConceptNode::All(r, d) => {
                (0..self.n).map(|y| not(self.role(r, x, y)).max(self.eval(d, y))).min().unwrap_or(T)
            }
        }
    }

    /// The value of the whole knowledge base under the partial assignment.
    fn value(&self) -> u8 {
        let n = self.n;
        let mut v = T;
        for ax in self.kb.role_axioms() {
            match *ax {
                RoleInclusion::Sub(r, s) => {
                    for x in 0..n {
                        for y in 0..n {
                            v = v.min(not(self.role(r, x, y)).max(self.role(s, x, y)));
                            if v == F {
                                return F;
                            }
                        }
                    }
                }
                RoleInclusion::Trans(r) => {
                    for x in 0..n {
                        for y in 0..n {
                            let xy = self.role(r, x, y);
                            if xy == F {
                                continue;
                            }
                            for z in 0..n {
                                let premise = xy.min(self.role(r, y, z));
                                v = v.min(not(premise).max(self.role(r, x, z)));
                                if v == F {
                                    return F;
                                }
                            }
                        }
                    }
                }
            }
        }
        for &c in self.kb.tbox() {
            for x in 0..n {
                v = v.min(self.eval(c, x));
                if v == F {
                    return F;
                }
            }
        }
        for f in self.kb.abox() {
            v = v.min(match self.kb.formula(f) {
                Formula::Assertion(a, c) => self.eval(c, self.ind[a.index()]),
                Formula::Relation(r, a, b) => self.role(r, self.ind[a.index()], self.ind[b.index()]),
                Formula::Concept(_) => T,
            });
            if v == F {
                return F;
            }
        }
        v
    }

    // Variables grouped by the largest element they mention, atoms first, so
    // that axioms about early elements are decided early.
    fn order(&self) -> Vec<Var> {
        let n = self.n;
        let mut vars = Vec::new();
        for g in 0..n {
            for a in 0..self.atoms {
                vars.push(Var::Atom(a * n + g));
            }
            for r in 0..self.roles {
                for x in 0..=g {
                    vars.push(Var::Role((r * n + x) * n + g));
                    if x != g {
                        vars.push(Var::Role((r * n + g) * n + x));
                    }
                }
            }
        }
        vars
    }

    fn atom_vector(&self, x: usize) -> Vec<u8> {
        (0..self.atoms).map(|a| self.atom(a, x)).collect()
    }

    // Anonymous elements `x - 1` and `x` in lexicographic order, once `x`'s
    // atoms are all assigned.
    fn ordered(&self, x: usize) -> bool {
        x <= self.anonymous_from || self.atom_vector(x - 1) <= self.atom_vector(x)
    }

    fn set(&mut self, var: Var, v: u8) {
        match var {
            Var::Atom(i) => self.atom_bits[i] = v,
            Var::Role(i) => self.role_bits[i] = v,
        }
    }

    fn dfs(&mut self, vars: &[Var], depth: usize) -> Result<bool, OracleError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        match self.value() {
            F => return Ok(false),
            T => return Ok(true),
            _ => {}
        }
        let Some(&var) = vars.get(depth) else { return Ok(false) };
        // The last atom of element x closes its atom vector.
        let closes = match var {
            Var::Atom(i) if i / self.n + 1 == self.atoms => Some(i % self.n),
            _ => None,
        };
        for v in [F, T] {
            self.set(var, v);
            if closes.is_some_and(|x| !self.ordered(x)) {
                continue;
            }
            if self.dfs(vars, depth + 1)? {
                return Ok(true);
            }
        }
        self.set(var, U);
        Ok(false)
    }

    fn reset(&mut self) {
        self.atom_bits.iter_mut().for_each(|b| *b = U);
        self.role_bits.iter_mut().for_each(|b| *b = U);
    }

    // Canonical assignments: each individual maps to an element already used
    // or to the next fresh one.
    fn assign(&mut self, i: usize, used: usize, vars: &[Var]) -> Result<bool, OracleError> {
        if i == self.ind.len() {
            self.anonymous_from = used;
            self.reset();
            return self.dfs(vars, 0);
        }
        for x in 0..(used + 1).min(self.n) {
            self.ind[i] = x;
            if self.assign(i + 1, used.max(x + 1), vars)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn interpretation(&self) -> Interpretation {
        let n = self.n;
        let mut i = Interpretation::empty(n, self.atoms, self.roles, self.ind.len());
        i.individuals = self.ind.clone();
        for a in 0..self.atoms {
            i.atoms[a] = (0..n).filter(|&x| self.atom(a, x) == T).collect();
        }
        for r in 0..self.roles {
            for x in 0..n {
                for y in 0..n {
                    if self.role_bits[(r * n + x) * n + y] == T {
                        i.roles[r].insert((x, y));
                    }
                }
            }
        }
        i
    }
}

/// A model of `kb` with at most `k` elements, if one exists.
pub fn bounded_model_search(kb: &KnowledgeBase, k: usize) -> Result<Option<Interpretation>, OracleError> {
    bounded_model_search_with_budget(kb, k, DEFAULT_BUDGET)
}

/// [`bounded_model_search`] with an explicit bound on visited search nodes,
/// shared across all domain sizes.
pub fn bounded_model_search_with_budget(
    kb: &KnowledgeBase,
    k: usize,
    budget: u64,
) -> Result<Option<Interpretation>, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroBound);
    }
    let sig = kb.signature();
    let (atoms, roles) = (sig.atoms.len(), sig.roles.len());
    let mut visited = 0;
    for n in 1..=k {
        let mut s = Search {
            kb,
            n,
            atoms,
            roles,
            anonymous_from: 0,
            ind: vec![0; sig.individuals.len()],
            atom_bits: vec![U; atoms * n],
            role_bits: vec![U; roles * n * n],
            visited,
            budget,
        };
        let vars = s.order();
        if s.assign(0, 0, &vars)? {
            // Unassigned memberships are irrelevant to a definitely true
            // knowledge base; they read as false.
            let i = s.interpretation();
            debug_assert!(check_model(&i, kb));
            return Ok(Some(i));
        }
        visited = s.visited;
    }
    Ok(None)
}
