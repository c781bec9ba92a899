//! The role hierarchy closure `Ext(R)`.
//!
//! Roles are indexed densely (`r` at `2i`, `r-` at `2i+1`), so the subrole
//! relation is a small square boolean matrix. The closure is computed by
//! naive iteration to stability over the four closure conditions.

use crate::error::RBoxError;
use crate::formula::Role;

/// An axiom of the role box over interned role names.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RoleInclusion {
    Sub(Role, Role),
    Trans(Role),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBoxIndex {
    role_names: usize,
    sub: Vec<bool>,
    transitive: Vec<bool>,
    supers: Vec<Vec<Role>>,
    subs: Vec<Vec<Role>>,
    // S such that R ⊑ S and S is transitive, per R
    srtr: Vec<Vec<Role>>,
}

/// Computes the least extension of `axioms` closed under reflexivity,
/// inversion of inclusions and transitivity, and inversion of transitivity
/// axioms, over the roles built from `role_names` names.
pub fn build_ext(axioms: &[RoleInclusion], role_names: usize) -> RBoxIndex {
    let n = role_names * 2;
    let mut sub = vec![false; n * n];
    let mut transitive = vec![false; n];
    for ax in axioms {
        match *ax {
            RoleInclusion::Sub(r, s) => sub[r.index() * n + s.index()] = true,
            RoleInclusion::Trans(r) => transitive[r.index()] = true,
        }
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            if !sub[i * n + i] {
                sub[i * n + i] = true;
                changed = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if sub[i * n + j] {
                    let (ri, rj) = (Role::from_index(i).inverse(), Role::from_index(j).inverse());
                    let k = ri.index() * n + rj.index();
                    if !sub[k] {
                        sub[k] = true;
                        changed = true;
                    }
                }
            }
            if transitive[i] {
                let inv = Role::from_index(i).inverse().index();
                if !transitive[inv] {
                    transitive[inv] = true;
                    changed = true;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !sub[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if sub[j * n + k] && !sub[i * n + k] {
                        sub[i * n + k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let roles = |pred: &dyn Fn(usize) -> bool| -> Vec<Role> {
        (0..n).filter(|&j| pred(j)).map(Role::from_index).collect()
    };
    let supers = (0..n).map(|i| roles(&|j| sub[i * n + j])).collect();
    let subs = (0..n).map(|j| roles(&|i| sub[i * n + j])).collect();
    let srtr = (0..n).map(|i| roles(&|j| sub[i * n + j] && transitive[j])).collect();
    RBoxIndex { role_names, sub, transitive, supers, subs, srtr }
}

impl RBoxIndex {
    fn check(&self, r: Role) -> Result<usize, RBoxError> {
        if r.name.index() < self.role_names {
            Ok(r.index())
        } else {
            Err(RBoxError::UnknownRole(r))
        }
    }

    fn width(&self) -> usize {
        self.role_names * 2
    }

    pub fn role_names(&self) -> usize {
        self.role_names
    }

    /// All roles of the signature, names and inverses.
    pub fn roles(&self) -> impl Iterator<Item = Role> + '_ {
        (0..self.width()).map(Role::from_index)
    }

    /// `R ⊑ S ∈ Ext(R)`.
    pub fn is_subrole(&self, r: Role, s: Role) -> Result<bool, RBoxError> {
        let (i, j) = (self.check(r)?, self.check(s)?);
        Ok(self.sub[i * self.width() + j])
    }

    /// `R ∘ R ⊑ R ∈ Ext(R)`.
    pub fn is_transitive(&self, r: Role) -> Result<bool, RBoxError> {
        Ok(self.transitive[self.check(r)?])
    }

    /// `R ⊑ S` and `S` transitive.
    pub fn srtr(&self, r: Role, s: Role) -> Result<bool, RBoxError> {
        Ok(self.is_subrole(r, s)? && self.is_transitive(s)?)
    }

    pub(crate) fn sub(&self, r: Role, s: Role) -> bool {
        self.sub[r.index() * self.width() + s.index()]
    }

    pub(crate) fn trans(&self, r: Role) -> bool {
        self.transitive[r.index()]
    }

    pub(crate) fn srtr_fast(&self, r: Role, s: Role) -> bool {
        self.sub(r, s) && self.trans(s)
    }

    /// Every `R` with `R ⊑ S`, including `S` itself.
    pub fn subroles_of(&self, s: Role) -> &[Role] {
        &self.subs[s.index()]
    }

    /// Every `S` with `R ⊑ S`, including `R` itself.
    pub fn superroles_of(&self, r: Role) -> &[Role] {
        &self.supers[r.index()]
    }

    /// Every transitive `S` with `R ⊑ S`.
    pub fn transitive_superroles_of(&self, r: Role) -> &[Role] {
        &self.srtr[r.index()]
    }

    /// Number of `(R, S)` pairs in `Ext(R)`.
    pub fn pair_count(&self) -> usize {
        self.sub.iter().filter(|b| **b).count()
    }

    /// All subrole pairs in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (Role, Role)> + '_ {
        let n = self.width();
        (0..n * n)
            .filter(|k| self.sub[*k])
            .map(move |k| (Role::from_index(k / n), Role::from_index(k % n)))
    }

    pub fn transitive_roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.roles().filter(|r| self.trans(*r))
    }

    /// Whether one more application of the closure conditions adds nothing.
    pub fn is_closed(&self) -> bool {
        let n = self.width();
        for i in 0..n {
            let ri = Role::from_index(i);
            if !self.sub[i * n + i] {
                return false;
            }
            if self.transitive[i] && !self.trans(ri.inverse()) {
                return false;
            }
            for j in 0..n {
                if !self.sub[i * n + j] {
                    continue;
                }
                let rj = Role::from_index(j);
                if !self.sub(ri.inverse(), rj.inverse()) {
                    return false;
                }
                if (0..n).any(|k| self.sub[j * n + k] && !self.sub[i * n + k]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
pub(crate) fn role(name: u32, inverse: bool) -> Role {
    Role { name: crate::formula::RoleName(name), inverse }
}
