//! Interpretations of fixed domain sizes as assignments to a vector of
//! finite-valued variables.
//!
//! Variables, most significant first: individuals, object atom membership
//! (atom-major), attribute atom membership, `p` pairs, `q` pairs, cross role
//! choices. A cross role gets one variable per object: `0` for no successor
//! and `k` for `u_k` under at-most-one, `k` for `u_(k+1)` under exactly-one,
//! and one bit per object/value pair when unrestricted.

use crate::semantics::{FunctionalityMode, Interpretation};
use crate::syntax::{Role, RoleKind, Signature, Sort};

pub(crate) const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub d: usize,
    pub s: usize,
    pub mode: FunctionalityMode,
    pub inds: Vec<(String, Sort)>,
    pub oatoms: Vec<String>,
    pub aatoms: Vec<String>,
    pub proles: Vec<String>,
    pub qroles: Vec<String>,
    pub rroles: Vec<String>,
    oatom_base: usize,
    aatom_base: usize,
    p_base: usize,
    q_base: usize,
    r_base: usize,
    pub radix: Vec<u32>,
}

impl Layout {
    pub fn new(sig: &Signature, d: usize, s: usize, mode: FunctionalityMode) -> Self {
        let names = |k| sig.roles_of(k).map(String::from).collect::<Vec<_>>();
        let inds: Vec<(String, Sort)> = sig.individuals().map(|(n, s)| (n.to_string(), s)).collect();
        let oatoms: Vec<String> = sig.atoms_of(Sort::Object).map(String::from).collect();
        let aatoms: Vec<String> = sig.atoms_of(Sort::Attribute).map(String::from).collect();
        let (proles, qroles, rroles) = (
            names(RoleKind::ObjObj),
            names(RoleKind::AttrAttr),
            names(RoleKind::Cross),
        );
        let mut radix = Vec::new();
        for (_, sort) in &inds {
            radix.push(if *sort == Sort::Object { d } else { s } as u32);
        }
        let oatom_base = radix.len();
        radix.extend(std::iter::repeat_n(2, oatoms.len() * d));
        let aatom_base = radix.len();
        radix.extend(std::iter::repeat_n(2, aatoms.len() * s));
        let p_base = radix.len();
        radix.extend(std::iter::repeat_n(2, proles.len() * d * d));
        let q_base = radix.len();
        radix.extend(std::iter::repeat_n(2, qroles.len() * s * s));
        let r_base = radix.len();
        match mode {
            FunctionalityMode::AtMostOne => radix.extend(std::iter::repeat_n(s as u32 + 1, rroles.len() * d)),
            FunctionalityMode::ExactlyOne => radix.extend(std::iter::repeat_n(s as u32, rroles.len() * d)),
            FunctionalityMode::Unrestricted => radix.extend(std::iter::repeat_n(2, rroles.len() * d * s)),
        }
        Layout {
            d,
            s,
            mode,
            inds,
            oatoms,
            aatoms,
            proles,
            qroles,
            rroles,
            oatom_base,
            aatom_base,
            p_base,
            q_base,
            r_base,
            radix,
        }
    }

    pub fn len(&self) -> usize {
        self.radix.len()
    }

    pub fn dom(&self, sort: Sort) -> usize {
        match sort {
            Sort::Object => self.d,
            Sort::Attribute => self.s,
        }
    }

    pub fn ind_var(&self, k: usize) -> usize {
        k
    }

    pub fn atom_var(&self, sort: Sort, atom: usize, e: usize) -> usize {
        match sort {
            Sort::Object => self.oatom_base + atom * self.d + e,
            Sort::Attribute => self.aatom_base + atom * self.s + e,
        }
    }

    pub fn p_var(&self, role: usize, x: usize, y: usize) -> usize {
        self.p_base + role * self.d * self.d + x * self.d + y
    }

    pub fn q_var(&self, role: usize, u: usize, v: usize) -> usize {
        self.q_base + role * self.s * self.s + u * self.s + v
    }

    /// The variable deciding whether `(x, u)` is in cross role `role`, and
    /// the value that means "yes".
    pub fn r_edge(&self, role: usize, x: usize, u: usize) -> (usize, u32) {
        match self.mode {
            FunctionalityMode::AtMostOne => (self.r_base + role * self.d + x, u as u32 + 1),
            FunctionalityMode::ExactlyOne => (self.r_base + role * self.d + x, u as u32),
            FunctionalityMode::Unrestricted => (self.r_base + role * self.d * self.s + x * self.s + u, 1),
        }
    }

    /// The interpretation encoded by a complete assignment.
    pub fn decode(&self, vals: &[u32]) -> Interpretation {
        let mut i = Interpretation::new(self.d, self.s, self.mode);
        for (k, (name, sort)) in self.inds.iter().enumerate() {
            i.set_individual(name, *sort, vals[self.ind_var(k)] as usize);
        }
        for (sort, atoms) in [(Sort::Object, &self.oatoms), (Sort::Attribute, &self.aatoms)] {
            for (a, name) in atoms.iter().enumerate() {
                let members = (0..self.dom(sort)).filter(|&e| vals[self.atom_var(sort, a, e)] == 1);
                i.set_concept(name, sort, members);
            }
        }
        for (k, name) in self.proles.iter().enumerate() {
            let role = Role::obj(name.clone());
            i.declare_role(name, RoleKind::ObjObj);
            for x in 0..self.d {
                for y in 0..self.d {
                    if vals[self.p_var(k, x, y)] == 1 {
                        i.add_pair(&role, x, y);
                    }
                }
            }
        }
        for (k, name) in self.qroles.iter().enumerate() {
            let role = Role::attr(name.clone());
            i.declare_role(name, RoleKind::AttrAttr);
            for u in 0..self.s {
                for v in 0..self.s {
                    if vals[self.q_var(k, u, v)] == 1 {
                        i.add_pair(&role, u, v);
                    }
                }
            }
        }
        for (k, name) in self.rroles.iter().enumerate() {
            let role = Role::cross(name.clone());
            i.declare_role(name, RoleKind::Cross);
            for x in 0..self.d {
                for u in 0..self.s {
                    let (var, yes) = self.r_edge(k, x, u);
                    if vals[var] == yes {
                        i.add_pair(&role, x, u);
                    }
                }
            }
        }
        i
    }
}

/// Domain sizes up to the bounds, smallest total first, then fewer objects.
pub(crate) fn sizes(max_delta: usize, max_sigma: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = (1..=max_delta)
        .flat_map(|d| (1..=max_sigma).map(move |s| (d, s)))
        .collect();
    v.sort_by_key(|&(d, s)| (d + s, d));
    v
}

/// Lexicographic walk over all complete assignments of a layout.
pub(crate) struct Odometer {
    pub layout: Layout,
    pub vals: Vec<u32>,
    pub done: bool,
}

impl Odometer {
    pub fn new(layout: Layout) -> Self {
        let done = layout.radix.contains(&0);
        Odometer {
            vals: vec![0; layout.len()],
            layout,
            done,
        }
    }

    pub fn advance(&mut self) {
        for k in (0..self.vals.len()).rev() {
            self.vals[k] += 1;
            if self.vals[k] < self.layout.radix[k] {
                return;
            }
            self.vals[k] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Odometer {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let i = self.layout.decode(&self.vals);
        self.advance();
        Some(i)
    }
}
