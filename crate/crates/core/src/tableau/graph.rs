//! Completion graphs and the expansion rules.

use std::collections::{BTreeSet, VecDeque};

use super::arena::{Arena, Cid, Con, Rid};
use super::TableauError;
use crate::semantics::FunctionalityMode;
use crate::syntax::{RoleKind, Sort};

/// Hard cap on completion-graph size. Blocking keeps graphs far below it;
/// hitting it means a bug, not a hard input.
pub(crate) const NODE_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    Init,
    Global,
    Abox,
    And,
    Unfold,
    Forall,
    OrLeft,
    OrRight,
    Exists,
    Functional,
    Totality,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Init => "init",
            Rule::Global => "global",
            Rule::Abox => "abox",
            Rule::And => "and",
            Rule::Unfold => "unfold",
            Rule::Forall => "forall",
            Rule::OrLeft => "or-left",
            Rule::OrRight => "or-right",
            Rule::Exists => "exists",
            Rule::Functional => "functional",
            Rule::Totality => "totality",
        }
    }
}

/// Everything fixed for one query: the concept arena plus per-atom
/// definitions, per-sort global constraints and role metadata.
pub(crate) struct Ctx {
    pub arena: Arena,
    /// Per atom id: the definition body and its negation, both in NNF.
    pub defs: Vec<Option<(Cid, Cid)>>,
    pub global: [Option<Cid>; 2],
    /// Per role id: stored role and direction.
    pub bases: Vec<(Rid, bool)>,
    /// Cross roles that the totality rule instantiates.
    pub cross: Vec<Rid>,
    pub mode: FunctionalityMode,
}

impl Ctx {
    pub fn sort_index(s: Sort) -> usize {
        match s {
            Sort::Object => 0,
            Sort::Attribute => 1,
        }
    }

    fn kind(&self, role: Rid) -> RoleKind {
        self.arena.role(role).kind
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub sort: Sort,
    pub label: BTreeSet<Cid>,
    /// Tree parent and the role (as used in the `some`) leading here.
    pub parent: Option<(usize, Rid)>,
    pub root: bool,
    /// Created to satisfy `some inv(r) C`; such nodes are never blocked.
    pub via_inverse: bool,
    pub names: Vec<String>,
    /// Outgoing stored edges `(role, target)` and incoming `(role, source)`.
    pub out: Vec<(Rid, usize)>,
    pub inc: Vec<(Rid, usize)>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub rule: Rule,
    pub node: usize,
    pub concept: Cid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Block {
    No,
    Direct(usize),
    Indirect,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Graph {
    pub nodes: Vec<Node>,
    pub clash: Option<(usize, Cid)>,
    pub trace: Vec<Step>,
    queue: VecDeque<(usize, Cid, Rule)>,
}

pub(crate) enum Outcome {
    Open(Graph),
    Closed(Graph),
}

impl Graph {
    pub fn add_node(
        &mut self,
        ctx: &Ctx,
        sort: Sort,
        parent: Option<(usize, Rid)>,
        root: bool,
    ) -> Result<usize, TableauError> {
        if self.nodes.len() >= NODE_BUDGET {
            return Err(TableauError::BudgetExceeded { nodes: NODE_BUDGET });
        }
        let via_inverse = parent.is_some_and(|(_, r)| ctx.bases[r as usize].1);
        let id = self.nodes.len();
        self.nodes.push(Node {
            sort,
            label: BTreeSet::new(),
            parent,
            root,
            via_inverse,
            names: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
        });
        if let Some(g) = ctx.global[Ctx::sort_index(sort)] {
            self.add(ctx, id, g, Rule::Global);
        }
        Ok(id)
    }

    /// Neighbours of `n` along `role`, following stored edges backwards for
    /// inverse roles.
    pub fn neighbours(&self, ctx: &Ctx, n: usize, role: Rid) -> Vec<usize> {
        let (base, inv) = ctx.bases[role as usize];
        let list = if inv { &self.nodes[n].inc } else { &self.nodes[n].out };
        list.iter().filter(|(r, _)| *r == base).map(|&(_, m)| m).collect()
    }

    /// Adds a stored edge and pushes universal restrictions across it.
    pub fn add_edge(&mut self, ctx: &Ctx, base: Rid, from: usize, to: usize) {
        if self.nodes[from].out.contains(&(base, to)) {
            return;
        }
        self.nodes[from].out.push((base, to));
        self.nodes[to].inc.push((base, from));
        self.push_foralls(ctx, from, to, base, false);
        self.push_foralls(ctx, to, from, base, true);
        self.drain(ctx);
    }

    fn push_foralls(&mut self, ctx: &Ctx, at: usize, other: usize, base: Rid, inv: bool) {
        let found: Vec<Cid> = self.nodes[at]
            .label
            .iter()
            .filter_map(|&c| match ctx.arena.con(c) {
                Con::Forall(r, x) if ctx.bases[r as usize] == (base, inv) => Some(x),
                _ => None,
            })
            .collect();
        for x in found {
            self.queue.push_back((other, x, Rule::Forall));
        }
    }

    /// Adds `c` to the label of `n` and runs the deterministic rules (and,
    /// unfolding, forall) to a fixpoint.
    pub fn add(&mut self, ctx: &Ctx, n: usize, c: Cid, rule: Rule) {
        self.queue.push_back((n, c, rule));
        self.drain(ctx);
    }

    fn drain(&mut self, ctx: &Ctx) {
        while let Some((n, c, rule)) = self.queue.pop_front() {
            if self.clash.is_some() {
                self.queue.clear();
                return;
            }
            if !self.nodes[n].label.insert(c) {
                continue;
            }
            self.trace.push(Step {
                rule,
                node: n,
                concept: c,
            });
            match ctx.arena.con(c) {
                Con::Bot => self.clash = Some((n, c)),
                Con::Atom(a, pos) => {
                    if let Some(neg) = ctx.arena.lookup(Con::Atom(a, !pos)) {
                        if self.nodes[n].label.contains(&neg) {
                            self.clash = Some((n, c));
                            continue;
                        }
                    }
                    if let Some((def, ndef)) = ctx.defs[a as usize] {
                        self.queue.push_back((n, if pos { def } else { ndef }, Rule::Unfold));
                    }
                }
                Con::And(l, r) => {
                    self.queue.push_back((n, l, Rule::And));
                    self.queue.push_back((n, r, Rule::And));
                }
                Con::Forall(role, x) => {
                    for m in self.neighbours(ctx, n, role) {
                        self.queue.push_back((m, x, Rule::Forall));
                    }
                }
                Con::Top | Con::Or(..) | Con::Exists(..) => {}
            }
        }
    }

    /// Blocking status of every node. Parents precede children in id order.
    pub fn blocking(&self) -> Vec<Block> {
        let mut out = vec![Block::No; self.nodes.len()];
        for n in 0..self.nodes.len() {
            let node = &self.nodes[n];
            let Some((p, role)) = node.parent else {
                continue;
            };
            if out[p] != Block::No {
                out[n] = Block::Indirect;
                continue;
            }
            if node.root || node.via_inverse {
                continue;
            }
            let mut a = p;
            while let Some((ap, arole)) = self.nodes[a].parent {
                let cand = &self.nodes[a];
                if !cand.root
                    && !cand.via_inverse
                    && cand.sort == node.sort
                    && arole == role
                    && cand.label == node.label
                    && self.nodes[ap].label == self.nodes[p].label
                {
                    out[n] = Block::Direct(a);
                    break;
                }
                a = ap;
            }
        }
        out
    }

    fn find_or(&self, ctx: &Ctx, blocked: &[Block]) -> Option<(usize, Cid, Cid)> {
        for (n, node) in self.nodes.iter().enumerate() {
            if blocked[n] == Block::Indirect {
                continue;
            }
            for &c in &node.label {
                if let Con::Or(l, r) = ctx.arena.con(c) {
                    if !node.label.contains(&l) && !node.label.contains(&r) {
                        return Some((n, l, r));
                    }
                }
            }
        }
        None
    }

    /// One application of the generating rules, or `false` if none applies.
    fn apply_exists(&mut self, ctx: &Ctx, blocked: &[Block]) -> Result<bool, TableauError> {
        for (n, &block) in blocked.iter().enumerate() {
            if block != Block::No {
                continue;
            }
            let exists: Vec<(Rid, Cid)> = self.nodes[n]
                .label
                .iter()
                .filter_map(|&c| match ctx.arena.con(c) {
                    Con::Exists(r, x) => Some((r, x)),
                    _ => None,
                })
                .collect();
            for (role, x) in exists {
                let near = self.neighbours(ctx, n, role);
                let functional = ctx.kind(role) == RoleKind::Cross && ctx.mode != FunctionalityMode::Unrestricted;
                if functional {
                    if let Some(&u) = near.first() {
                        if !self.nodes[u].label.contains(&x) {
                            self.add(ctx, u, x, Rule::Functional);
                            return Ok(true);
                        }
                        continue;
                    }
                } else if near.iter().any(|&m| self.nodes[m].label.contains(&x)) {
                    continue;
                }
                let m = self.successor(ctx, n, role)?;
                self.add(ctx, m, x, Rule::Exists);
                return Ok(true);
            }
            if ctx.mode == FunctionalityMode::ExactlyOne && self.nodes[n].sort == Sort::Object {
                for &r in &ctx.cross {
                    if self.neighbours(ctx, n, r).is_empty() {
                        let m = self.successor(ctx, n, r)?;
                        let top = ctx.arena.lookup(Con::Top).expect("top is interned");
                        self.add(ctx, m, top, Rule::Totality);
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// A fresh child of `n` along `role`.
    fn successor(&mut self, ctx: &Ctx, n: usize, role: Rid) -> Result<usize, TableauError> {
        let range = ctx.kind(role).range();
        let m = self.add_node(ctx, range, Some((n, role)), false)?;
        let (base, inv) = ctx.bases[role as usize];
        if inv {
            self.add_edge(ctx, base, m, n);
        } else {
            self.add_edge(ctx, base, n, m);
        }
        Ok(m)
    }

    /// Runs the expansion to completion. Disjunctions branch left first;
    /// the right branch reuses the graph in place.
    pub fn expand(mut self, ctx: &Ctx) -> Result<Outcome, TableauError> {
        loop {
            if self.clash.is_some() {
                return Ok(Outcome::Closed(self));
            }
            let blocked = self.blocking();
            if let Some((n, l, r)) = self.find_or(ctx, &blocked) {
                let mut left = self.clone();
                left.add(ctx, n, l, Rule::OrLeft);
                if let Outcome::Open(g) = left.expand(ctx)? {
                    return Ok(Outcome::Open(g));
                }
                self.add(ctx, n, r, Rule::OrRight);
                continue;
            }
            if !self.apply_exists(ctx, &blocked)? {
                return Ok(Outcome::Open(self));
            }
        }
    }
}
