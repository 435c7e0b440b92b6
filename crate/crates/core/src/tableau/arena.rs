//! Hash-consed NNF concepts. Labels hold small integer ids instead of trees.

use std::collections::HashMap;

use crate::syntax::{to_nnf, ConceptExpr, Role, RoleKind, Sort};

pub(crate) type Cid = u32;
pub(crate) type Rid = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Con {
    Top,
    Bot,
    /// Atom id and polarity.
    Atom(u32, bool),
    And(Cid, Cid),
    Or(Cid, Cid),
    Exists(Rid, Cid),
    Forall(Rid, Cid),
}

#[derive(Debug, Default)]
pub(crate) struct Arena {
    cons: Vec<Con>,
    index: HashMap<Con, Cid>,
    atoms: Vec<(String, Sort)>,
    atom_index: HashMap<String, u32>,
    roles: Vec<Role>,
    role_index: HashMap<Role, Rid>,
}

impl Arena {
    pub fn con(&self, c: Cid) -> Con {
        self.cons[c as usize]
    }

    pub fn lookup(&self, c: Con) -> Option<Cid> {
        self.index.get(&c).copied()
    }

    fn intern(&mut self, c: Con) -> Cid {
        if let Some(&id) = self.index.get(&c) {
            return id;
        }
        let id = self.cons.len() as Cid;
        self.cons.push(c);
        self.index.insert(c, id);
        id
    }

    pub fn atom_id(&mut self, name: &str, sort: Sort) -> u32 {
        if let Some(&id) = self.atom_index.get(name) {
            return id;
        }
        let id = self.atoms.len() as u32;
        self.atoms.push((name.to_string(), sort));
        self.atom_index.insert(name.to_string(), id);
        id
    }

    pub fn atom(&self, id: u32) -> (&str, Sort) {
        let (n, s) = &self.atoms[id as usize];
        (n, *s)
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn role_id(&mut self, role: &Role) -> Rid {
        if let Some(&id) = self.role_index.get(role) {
            return id;
        }
        let id = self.roles.len() as Rid;
        self.roles.push(role.clone());
        self.role_index.insert(role.clone(), id);
        id
    }

    pub fn role_count(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, id: Rid) -> &Role {
        &self.roles[id as usize]
    }

    /// The stored role an edge is kept under, and whether `id` walks it
    /// backwards. Edges of `inv(r)` are stored as edges of `r`.
    pub fn base(&mut self, id: Rid) -> (Rid, bool) {
        let role = self.roles[id as usize].clone();
        if role.kind == RoleKind::CrossInverse {
            (self.role_id(&Role::cross(role.name)), true)
        } else {
            (id, false)
        }
    }

    /// Interns the negation normal form of `e`.
    pub fn concept(&mut self, e: &ConceptExpr) -> Cid {
        let nnf = to_nnf(e);
        self.intern_nnf(&nnf)
    }

    fn intern_nnf(&mut self, e: &ConceptExpr) -> Cid {
        let c = match e {
            ConceptExpr::Top => Con::Top,
            ConceptExpr::Bot => Con::Bot,
            ConceptExpr::Atom(a) => Con::Atom(self.atom_id(&a.name, a.sort), true),
            ConceptExpr::Not(x) => match x.as_ref() {
                ConceptExpr::Atom(a) => Con::Atom(self.atom_id(&a.name, a.sort), false),
                other => unreachable!("negation of non-atom `{other}` after NNF"),
            },
            ConceptExpr::And(l, r) => Con::And(self.intern_nnf(l), self.intern_nnf(r)),
            ConceptExpr::Or(l, r) => Con::Or(self.intern_nnf(l), self.intern_nnf(r)),
            ConceptExpr::Exists(role, x) => Con::Exists(self.role_id(role), self.intern_nnf(x)),
            ConceptExpr::Forall(role, x) => Con::Forall(self.role_id(role), self.intern_nnf(x)),
            ConceptExpr::Implies(..) | ConceptExpr::Iff(..) => {
                unreachable!("arrow after NNF")
            }
        };
        self.intern(c)
    }

    /// NNF of the complement of `c`.
    pub fn negate(&mut self, c: Cid) -> Cid {
        let n = match self.con(c) {
            Con::Top => Con::Bot,
            Con::Bot => Con::Top,
            Con::Atom(a, pos) => Con::Atom(a, !pos),
            Con::And(l, r) => Con::Or(self.negate(l), self.negate(r)),
            Con::Or(l, r) => Con::And(self.negate(l), self.negate(r)),
            Con::Exists(role, x) => Con::Forall(role, self.negate(x)),
            Con::Forall(role, x) => Con::Exists(role, self.negate(x)),
        };
        self.intern(n)
    }

    pub fn to_expr(&self, c: Cid) -> ConceptExpr {
        match self.con(c) {
            Con::Top => ConceptExpr::Top,
            Con::Bot => ConceptExpr::Bot,
            Con::Atom(a, pos) => {
                let (name, sort) = self.atom(a);
                let e = ConceptExpr::atom(name, sort);
                if pos {
                    e
                } else {
                    ConceptExpr::not(e)
                }
            }
            Con::And(l, r) => ConceptExpr::and(self.to_expr(l), self.to_expr(r)),
            Con::Or(l, r) => ConceptExpr::or(self.to_expr(l), self.to_expr(r)),
            Con::Exists(role, x) => ConceptExpr::exists(self.role(role).clone(), self.to_expr(x)),
            Con::Forall(role, x) => ConceptExpr::forall(self.role(role).clone(), self.to_expr(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ConceptExpr as E;

    #[test]
    fn interning_shares_structure_and_negation_round_trips() {
        let mut a = Arena::default();
        let e = E::not(E::and(E::object("C"), E::exists(Role::obj("p"), E::object("D"))));
        let c1 = a.concept(&e);
        let c2 = a.concept(&e);
        assert_eq!(c1, c2);
        let n = a.negate(c1);
        assert_eq!(a.negate(n), c1);
        assert_eq!(a.to_expr(c1).to_string(), "not C or all p not D");
    }
}
