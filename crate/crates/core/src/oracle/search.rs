//! Depth-first model search over the variable layout with three-valued
//! (Kleene) evaluation of partial assignments. A prefix is abandoned once the
//! goal is false under every completion, and accepted with all-zero
//! completion once it is true under every completion, so the model returned
//! is the first one in enumeration order.

use super::space::{Layout, UNSET};
use crate::semantics::FunctionalityMode;
use crate::syntax::{Assertion, ConceptExpr, Formula, RoleKind, Sort};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tri {
    F,
    U,
    T,
}

impl Tri {
    fn not(self) -> Tri {
        match self {
            Tri::F => Tri::T,
            Tri::U => Tri::U,
            Tri::T => Tri::F,
        }
    }

    fn and(self, o: Tri) -> Tri {
        self.min(o)
    }

    fn or(self, o: Tri) -> Tri {
        self.max(o)
    }

    fn iff(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::U, _) | (_, Tri::U) => Tri::U,
            (a, b) => {
                if a == b {
                    Tri::T
                } else {
                    Tri::F
                }
            }
        }
    }
}

impl PartialOrd for Tri {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tri {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let rank = |t: &Tri| match t {
            Tri::F => 0,
            Tri::U => 1,
            Tri::T => 2,
        };
        rank(self).cmp(&rank(other))
    }
}

#[derive(Debug, Clone, Copy)]
enum RoleRef {
    P(usize),
    Q(usize),
    R(usize),
    RInv(usize),
}

#[derive(Debug, Clone)]
enum Node {
    Top,
    Bot,
    Atom(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Exists(RoleRef, Sort, Box<Node>),
    Forall(RoleRef, Sort, Box<Node>),
}

#[derive(Debug, Clone)]
enum Check {
    NonEmpty(Node, Sort),
    Inclusion(Node, Node, Sort),
    Equivalence(Node, Node, Sort),
    ConceptAssertion(Node, Sort, usize),
    RoleAssertion(RoleRef, usize, usize),
    Not(Box<Check>),
}

/// A conjunction of checks over one layout.
pub(crate) struct Goal<'a> {
    layout: &'a Layout,
    checks: Vec<Check>,
}

fn index(names: &[String], name: &str) -> usize {
    names
        .iter()
        .position(|n| n == name)
        .unwrap_or_else(|| panic!("symbol `{name}` missing from the search layout"))
}

impl<'a> Goal<'a> {
    pub fn new(layout: &'a Layout) -> Self {
        Goal {
            layout,
            checks: Vec::new(),
        }
    }

    fn role(&self, role: &crate::syntax::Role) -> RoleRef {
        let l = self.layout;
        match role.kind {
            RoleKind::ObjObj => RoleRef::P(index(&l.proles, &role.name)),
            RoleKind::AttrAttr => RoleRef::Q(index(&l.qroles, &role.name)),
            RoleKind::Cross => RoleRef::R(index(&l.rroles, &role.name)),
            RoleKind::CrossInverse => RoleRef::RInv(index(&l.rroles, &role.name)),
        }
    }

    fn compile(&self, e: &ConceptExpr, sort: Sort) -> Node {
        let b = |x: &ConceptExpr, s| Box::new(self.compile(x, s));
        match e {
            ConceptExpr::Top => Node::Top,
            ConceptExpr::Bot => Node::Bot,
            ConceptExpr::Atom(a) => Node::Atom(match sort {
                Sort::Object => index(&self.layout.oatoms, &a.name),
                Sort::Attribute => index(&self.layout.aatoms, &a.name),
            }),
            ConceptExpr::Not(x) => Node::Not(b(x, sort)),
            ConceptExpr::And(l, r) => Node::And(b(l, sort), b(r, sort)),
            ConceptExpr::Or(l, r) => Node::Or(b(l, sort), b(r, sort)),
            ConceptExpr::Implies(l, r) => Node::Implies(b(l, sort), b(r, sort)),
            ConceptExpr::Iff(l, r) => Node::Iff(b(l, sort), b(r, sort)),
            ConceptExpr::Exists(role, x) => {
                let range = role.kind.range();
                Node::Exists(self.role(role), range, b(x, range))
            }
            ConceptExpr::Forall(role, x) => {
                let range = role.kind.range();
                Node::Forall(self.role(role), range, b(x, range))
            }
        }
    }

    fn ind(&self, name: &str) -> (usize, Sort) {
        let k = self
            .layout
            .inds
            .iter()
            .position(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("individual `{name}` missing from the search layout"));
        (k, self.layout.inds[k].1)
    }

    fn formula(&self, f: &Formula, sort: Sort) -> Check {
        match f {
            Formula::Inclusion(l, r) => Check::Inclusion(self.compile(l, sort), self.compile(r, sort), sort),
            Formula::Equivalence(l, r) => Check::Equivalence(self.compile(l, sort), self.compile(r, sort), sort),
            Formula::Assertion(a) => match a.normalized() {
                Assertion::Concept { concept, individual } => {
                    let (k, s) = self.ind(&individual);
                    Check::ConceptAssertion(self.compile(&concept, s), s, k)
                }
                Assertion::Role { role, subject, object } => {
                    Check::RoleAssertion(self.role(&role), self.ind(&subject).0, self.ind(&object).0)
                }
            },
        }
    }

    /// Requires some element of the concept's domain to satisfy it.
    pub fn non_empty(&mut self, e: &ConceptExpr, sort: Sort) {
        let n = self.compile(e, sort);
        self.checks.push(Check::NonEmpty(n, sort));
    }

    /// Requires the formula to hold under the universal reading.
    pub fn holds(&mut self, f: &Formula, sort: Sort) {
        let c = self.formula(f, sort);
        self.checks.push(c);
    }

    /// Requires the formula to fail.
    pub fn fails(&mut self, f: &Formula, sort: Sort) {
        let c = self.formula(f, sort);
        self.checks.push(Check::Not(Box::new(c)));
    }

    fn edge(&self, role: RoleRef, a: usize, b: usize, vals: &[u32]) -> Tri {
        let l = self.layout;
        let (var, yes) = match role {
            RoleRef::P(k) => (l.p_var(k, a, b), 1),
            RoleRef::Q(k) => (l.q_var(k, a, b), 1),
            RoleRef::R(k) => l.r_edge(k, a, b),
            RoleRef::RInv(k) => l.r_edge(k, b, a),
        };
        match vals[var] {
            UNSET => Tri::U,
            v if v == yes => Tri::T,
            _ => Tri::F,
        }
    }

    fn eval(&self, n: &Node, sort: Sort, e: usize, vals: &[u32]) -> Tri {
        match n {
            Node::Top => Tri::T,
            Node::Bot => Tri::F,
            Node::Atom(k) => match vals[self.layout.atom_var(sort, *k, e)] {
                UNSET => Tri::U,
                1 => Tri::T,
                _ => Tri::F,
            },
            Node::Not(x) => self.eval(x, sort, e, vals).not(),
            Node::And(l, r) => {
                let a = self.eval(l, sort, e, vals);
                if a == Tri::F {
                    return a;
                }
                a.and(self.eval(r, sort, e, vals))
            }
            Node::Or(l, r) => {
                let a = self.eval(l, sort, e, vals);
                if a == Tri::T {
                    return a;
                }
                a.or(self.eval(r, sort, e, vals))
            }
            Node::Implies(l, r) => {
                let a = self.eval(l, sort, e, vals).not();
                if a == Tri::T {
                    return a;
                }
                a.or(self.eval(r, sort, e, vals))
            }
            Node::Iff(l, r) => self.eval(l, sort, e, vals).iff(self.eval(r, sort, e, vals)),
            Node::Exists(role, range, x) => {
                if let Some(v) = self.undecided_choice(*role, e, x, vals, Tri::F) {
                    return v;
                }
                let mut acc = Tri::F;
                for y in 0..self.layout.dom(*range) {
                    let edge = self.edge(*role, e, y, vals);
                    if edge == Tri::F {
                        continue;
                    }
                    acc = acc.or(edge.and(self.eval(x, *range, y, vals)));
                    if acc == Tri::T {
                        break;
                    }
                }
                acc
            }
            Node::Forall(role, range, x) => {
                if let Some(v) = self.undecided_choice(*role, e, x, vals, Tri::T) {
                    return v;
                }
                let mut acc = Tri::T;
                for y in 0..self.layout.dom(*range) {
                    let edge = self.edge(*role, e, y, vals);
                    if edge == Tri::F {
                        continue;
                    }
                    acc = acc.and(edge.not().or(self.eval(x, *range, y, vals)));
                    if acc == Tri::F {
                        break;
                    }
                }
                acc
            }
        }
    }

    /// A functional `r` whose successor of `e` is not chosen yet: the value
    /// is known if every possible choice agrees. `empty` is the value when
    /// there is no successor.
    fn undecided_choice(&self, role: RoleRef, e: usize, x: &Node, vals: &[u32], empty: Tri) -> Option<Tri> {
        let l = self.layout;
        let RoleRef::R(k) = role else {
            return None;
        };
        if l.mode == FunctionalityMode::Unrestricted || vals[l.r_edge(k, e, 0).0] != UNSET {
            return None;
        }
        let mut acc = (l.mode == FunctionalityMode::AtMostOne).then_some(empty);
        for u in 0..l.dom(Sort::Attribute) {
            let v = self.eval(x, Sort::Attribute, u, vals);
            match acc {
                None => acc = Some(v),
                Some(a) if a != v => return Some(Tri::U),
                Some(_) => {}
            }
        }
        acc
    }

    fn ind_value(&self, k: usize, vals: &[u32]) -> Option<usize> {
        match vals[self.layout.ind_var(k)] {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    fn check(&self, c: &Check, vals: &[u32]) -> Tri {
        let every = |sort: Sort, f: &dyn Fn(usize) -> Tri| {
            let mut acc = Tri::T;
            for x in 0..self.layout.dom(sort) {
                acc = acc.and(f(x));
                if acc == Tri::F {
                    break;
                }
            }
            acc
        };
        match c {
            Check::NonEmpty(n, sort) => {
                let mut acc = Tri::F;
                for x in 0..self.layout.dom(*sort) {
                    acc = acc.or(self.eval(n, *sort, x, vals));
                    if acc == Tri::T {
                        break;
                    }
                }
                acc
            }
            Check::Inclusion(l, r, sort) => every(*sort, &|x| {
                self.eval(l, *sort, x, vals).not().or(self.eval(r, *sort, x, vals))
            }),
            Check::Equivalence(l, r, sort) => every(*sort, &|x| {
                self.eval(l, *sort, x, vals).iff(self.eval(r, *sort, x, vals))
            }),
            Check::ConceptAssertion(n, sort, k) => match self.ind_value(*k, vals) {
                None => Tri::U,
                Some(e) => self.eval(n, *sort, e, vals),
            },
            Check::RoleAssertion(role, a, b) => match (self.ind_value(*a, vals), self.ind_value(*b, vals)) {
                (Some(a), Some(b)) => self.edge(*role, a, b, vals),
                _ => Tri::U,
            },
            Check::Not(c) => self.check(c, vals).not(),
        }
    }

    pub fn value(&self, vals: &[u32]) -> Tri {
        let mut acc = Tri::T;
        for c in &self.checks {
            acc = acc.and(self.check(c, vals));
            if acc == Tri::F {
                break;
            }
        }
        acc
    }

    /// First complete assignment in lexicographic order satisfying the goal.
    pub fn first_model(&self) -> Option<Vec<u32>> {
        let mut vals = vec![UNSET; self.layout.len()];
        if self.layout.radix.contains(&0) {
            return None;
        }
        self.dfs(0, &mut vals).then_some(vals)
    }

    fn dfs(&self, k: usize, vals: &mut [u32]) -> bool {
        match self.value(vals) {
            Tri::F => return false,
            Tri::T => {
                for v in &mut vals[k..] {
                    *v = 0;
                }
                return true;
            }
            Tri::U => {}
        }
        debug_assert!(k < vals.len(), "complete assignment evaluated to unknown");
        for v in 0..self.layout.radix[k] {
            vals[k] = v;
            if self.dfs(k + 1, vals) {
                return true;
            }
        }
        vals[k] = UNSET;
        false
    }

    /// Plain scan over every assignment; the reference for `first_model`.
    #[cfg(test)]
    pub fn first_model_linear(&self) -> Option<Vec<u32>> {
        let mut o = super::space::Odometer::new(self.layout.clone());
        while !o.done {
            if self.value(&o.vals) == Tri::T {
                return Some(o.vals);
            }
            o.advance();
        }
        None
    }
}
