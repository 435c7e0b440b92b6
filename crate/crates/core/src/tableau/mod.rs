//! Tableau decision procedure for concept satisfiability, knowledge base
//! consistency, subsumption, instance checking and classification.
//!
//! Inclusions are internalized into one global constraint per sort,
//! definitions are unfolded lazily, disjunctions branch left first, and
//! generated nodes are blocked pairwise. Cross roles are functional unless
//! the mode is [`FunctionalityMode::Unrestricted`]: a second `some r C` on an
//! object reuses its existing `r`-successor, and attribute individuals named
//! as `r`-fillers of one object are merged.

mod arena;
mod graph;
pub mod suite;
#[cfg(test)]
mod tests;
mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::semantics::{expr_sort, extension_in, satisfies_kb, FunctionalityMode, Interpretation};
use crate::syntax::{
    check_sort, Assertion, ConceptExpr, KnowledgeBase, Role, RoleKind, Signature, Sort, SortError, SyntaxError,
};
use arena::{Arena, Cid, Con, Rid};
use graph::{Ctx, Graph, Outcome, Rule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("individual `{0}` is not declared")]
    UndeclaredIndividual(String),
    #[error("completion graph exceeded {nodes} nodes")]
    BudgetExceeded { nodes: usize },
    #[error("the knowledge base is inconsistent")]
    Inconsistent,
    #[error("internal error: witness failed its model check: {0}")]
    UnsoundWitness(String),
}

impl From<SortError> for TableauError {
    fn from(e: SortError) -> Self {
        TableauError::Syntax(e.into())
    }
}

/// One rule application in a clash trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: &'static str,
    pub node: usize,
    pub concept: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n{} {}", self.rule, self.node, self.concept)
    }
}

/// Rule applications of the last branch explored, ending in the clash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClashTrace {
    pub steps: Vec<TraceStep>,
    pub clash: TraceStep,
}

impl fmt::Display for ClashTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        writeln!(f, "{}", self.clash)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub interpretation: Interpretation,
    /// Groups of individuals that denote one element because functionality
    /// forced them together.
    pub merged: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Witness),
    Unsatisfiable(ClashTrace),
}

impl SatResult {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&Interpretation> {
        match self {
            SatResult::Satisfiable(w) => Some(&w.interpretation),
            SatResult::Unsatisfiable(_) => None,
        }
    }
}

/// Prepared query: arena, rules context and the resolved ABox.
struct Prepared {
    ctx: Ctx,
    sig: Signature,
    concepts: Vec<Cid>,
    abox: Vec<AboxItem>,
}

enum AboxItem {
    Concept(String, Cid),
    Role(Role, Rid, String, String),
}

fn prepare(kb: &KnowledgeBase, extra: &[&ConceptExpr], mode: FunctionalityMode) -> Result<Prepared, TableauError> {
    let mut sig = kb.sig.clone();
    for e in extra {
        sig.merge(&e.signature())?;
        check_sort(e, &sig)?;
    }
    let mut arena = Arena::default();
    arena.concept(&ConceptExpr::Top);
    for (name, sort) in sig.atoms() {
        arena.atom_id(name, sort);
    }
    let mut defs = Vec::new();
    for d in kb.definitions() {
        let a = arena.atom_id(&d.name, d.sort);
        let body = arena.concept(&d.body);
        let neg = arena.negate(body);
        defs.push((a, body, neg));
    }
    let mut global = [None, None];
    for sort in [Sort::Object, Sort::Attribute] {
        let parts = kb
            .inclusions()
            .iter()
            .filter(|i| i.sort == sort)
            .map(|i| ConceptExpr::or(ConceptExpr::not(i.sub.clone()), i.sup.clone()));
        if let Some(g) = ConceptExpr::and_all(parts) {
            global[Ctx::sort_index(sort)] = Some(arena.concept(&g));
        }
    }
    let abox = kb
        .abox()
        .iter()
        .map(|a| match a.normalized() {
            Assertion::Concept { concept, individual } => AboxItem::Concept(individual, arena.concept(&concept)),
            Assertion::Role { role, subject, object } => {
                let rid = arena.role_id(&role);
                AboxItem::Role(role, rid, subject, object)
            }
        })
        .collect();
    let concepts = extra.iter().map(|e| arena.concept(e)).collect();
    let cross: Vec<_> = sig
        .roles_of(RoleKind::Cross)
        .map(|r| arena.role_id(&Role::cross(r)))
        .collect();
    let mut bases = Vec::new();
    while bases.len() < arena.role_count() {
        bases.push(arena.base(bases.len() as Rid));
    }
    let mut def_table = vec![None; arena.atom_count()];
    for (a, body, neg) in defs {
        def_table[a as usize] = Some((body, neg));
    }
    Ok(Prepared {
        ctx: Ctx {
            arena,
            defs: def_table,
            global,
            bases,
            cross,
            mode,
        },
        sig,
        concepts,
        abox,
    })
}

/// Root nodes for the ABox individuals. Attribute individuals named as
/// fillers of the same functional role on the same object share a node.
fn init_abox(g: &mut Graph, p: &Prepared, kb: &KnowledgeBase) -> Result<Vec<Vec<String>>, TableauError> {
    let ctx = &p.ctx;
    let inds: Vec<(String, Sort)> = kb.sig.individuals().map(|(n, s)| (n.to_string(), s)).collect();
    let pos = |name: &str| {
        inds.iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| TableauError::UndeclaredIndividual(name.to_string()))
    };
    let mut rep: Vec<usize> = (0..inds.len()).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        rep[x] = r;
        r
    }
    if ctx.mode != FunctionalityMode::Unrestricted {
        let mut first: BTreeMap<(Rid, usize), usize> = BTreeMap::new();
        for item in &p.abox {
            let AboxItem::Role(role, rid, s, o) = item else {
                continue;
            };
            if role.kind != RoleKind::Cross {
                continue;
            }
            let (s, o) = (pos(s)?, pos(o)?);
            match first.get(&(*rid, s)) {
                None => {
                    first.insert((*rid, s), o);
                }
                Some(&prev) => {
                    let (a, b) = (find(&mut rep, prev), find(&mut rep, o));
                    rep[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut node_of = vec![usize::MAX; inds.len()];
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for k in 0..inds.len() {
        let r = find(&mut rep, k);
        if node_of[r] == usize::MAX {
            node_of[r] = g.add_node(ctx, inds[r].1, None, true)?;
        }
        node_of[k] = node_of[r];
        g.nodes[node_of[k]].names.push(inds[k].0.clone());
        groups.entry(r).or_default().push(inds[k].0.clone());
    }
    for item in &p.abox {
        match item {
            AboxItem::Role(_, rid, s, o) => g.add_edge(ctx, *rid, node_of[pos(s)?], node_of[pos(o)?]),
            AboxItem::Concept(ind, c) => g.add(ctx, node_of[pos(ind)?], *c, Rule::Abox),
        }
    }
    Ok(groups.into_values().filter(|v| v.len() > 1).collect())
}

/// Tableau reasoner over a fixed knowledge base.
#[derive(Debug, Clone, Copy)]
pub struct Tableau<'a> {
    kb: &'a KnowledgeBase,
    mode: FunctionalityMode,
}

impl<'a> Tableau<'a> {
    pub fn new(kb: &'a KnowledgeBase) -> Self {
        Tableau {
            kb,
            mode: FunctionalityMode::default(),
        }
    }

    pub fn with_mode(mut self, mode: FunctionalityMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn mode(&self) -> FunctionalityMode {
        self.mode
    }

    /// Runs the procedure on the knowledge base, optionally with a query
    /// root labelled `query` and an extra assertion `(concept)(individual)`.
    fn run(
        &self,
        query: Option<(&ConceptExpr, Option<Sort>)>,
        assert: Option<(&str, &ConceptExpr)>,
    ) -> Result<SatResult, TableauError> {
        let mut extra = Vec::new();
        extra.extend(query.map(|(e, _)| e));
        extra.extend(assert.map(|(_, c)| c));
        let p = prepare(self.kb, &extra, self.mode)?;
        let mut g = Graph::default();
        let merged = init_abox(&mut g, &p, self.kb)?;
        let ctx = &p.ctx;
        if let Some((ind, c)) = assert {
            let want = self
                .kb
                .sig
                .individual_sort(ind)
                .ok_or_else(|| TableauError::UndeclaredIndividual(ind.to_string()))?;
            crate::syntax::check_sort_as(c, &p.sig, want)?;
            let n = g
                .nodes
                .iter()
                .position(|n| n.names.iter().any(|m| m == ind))
                .expect("declared individuals have nodes");
            let cid = p.concepts[extra.len() - 1];
            g.add(ctx, n, cid, Rule::Init);
        }
        let root = match query {
            Some((e, want)) => {
                let sort = match want {
                    Some(sort) => {
                        crate::syntax::check_sort_as(e, &p.sig, sort)?;
                        sort
                    }
                    None => check_sort(e, &p.sig)?,
                };
                let n = g.add_node(ctx, sort, None, true)?;
                g.add(ctx, n, p.concepts[0], Rule::Init);
                Some(n)
            }
            None => None,
        };
        for sort in [Sort::Object, Sort::Attribute] {
            if !g.nodes.iter().any(|n| n.sort == sort) {
                g.add_node(ctx, sort, None, true)?;
            }
        }
        match g.expand(ctx)? {
            Outcome::Closed(g) => Ok(SatResult::Unsatisfiable(clash_trace(&g, ctx))),
            Outcome::Open(g) => {
                let (i, elem) = witness::build(&g, ctx, self.kb, &p.sig);
                let query = query.map(|(e, want)| (e, want.unwrap_or_else(|| expr_sort(e))));
                self.check_witness(&i, query.zip(root.and_then(|r| elem[r])))?;
                Ok(SatResult::Satisfiable(Witness {
                    interpretation: i,
                    merged,
                }))
            }
        }
    }

    fn check_witness(
        &self,
        i: &Interpretation,
        query: Option<((&ConceptExpr, Sort), usize)>,
    ) -> Result<(), TableauError> {
        let v = i.validate();
        if !v.is_empty() {
            let msgs: Vec<_> = v.iter().map(|v| v.to_string()).collect();
            return Err(TableauError::UnsoundWitness(msgs.join("; ")));
        }
        let fail = |what: String| Err(TableauError::UnsoundWitness(format!("{what}\n{i}")));
        match satisfies_kb(i, self.kb) {
            Ok(true) => {}
            Ok(false) => return fail("knowledge base not satisfied".into()),
            Err(e) => return fail(e.to_string()),
        }
        if let Some(((e, sort), root)) = query {
            match extension_in(e, sort, i) {
                Ok(ext) if ext.contains(root) => {}
                Ok(_) => return fail(format!("query root not in the extension of `{e}`")),
                Err(err) => return fail(err.to_string()),
            }
        }
        Ok(())
    }

    /// Whether some model of the knowledge base gives `e` a non-empty extension.
    pub fn is_satisfiable(&self, e: &ConceptExpr) -> Result<SatResult, TableauError> {
        self.run(Some((e, None)), None)
    }

    /// Like [`Tableau::is_satisfiable`], with the extension taken in `sort`.
    pub fn is_satisfiable_as(&self, e: &ConceptExpr, sort: Sort) -> Result<SatResult, TableauError> {
        self.run(Some((e, Some(sort))), None)
    }

    pub fn is_consistent(&self) -> Result<SatResult, TableauError> {
        self.run(None, None)
    }

    /// Whether `sub` is included in `sup` in every model.
    pub fn subsumes(&self, sub: &ConceptExpr, sup: &ConceptExpr) -> Result<bool, TableauError> {
        let mut sig = self.kb.sig.clone();
        sig.merge(&sub.signature())?;
        sig.merge(&sup.signature())?;
        crate::syntax::sort::check_pair(sub, sup, &sig)?;
        let q = ConceptExpr::and(sub.clone(), ConceptExpr::not(sup.clone()));
        Ok(!self.is_satisfiable(&q)?.is_satisfiable())
    }

    /// Whether `ind` belongs to `e` in every model.
    pub fn instance_of(&self, ind: &str, e: &ConceptExpr) -> Result<bool, TableauError> {
        let neg = ConceptExpr::not(e.clone());
        Ok(!self.run(None, Some((ind, &neg)))?.is_satisfiable())
    }

    /// Subsumption order over the named atoms of each sort.
    pub fn classify(&self) -> Result<Classification, TableauError> {
        if !self.is_consistent()?.is_satisfiable() {
            return Err(TableauError::Inconsistent);
        }
        Ok(Classification {
            object: self.hierarchy(Sort::Object)?,
            attribute: self.hierarchy(Sort::Attribute)?,
        })
    }

    fn hierarchy(&self, sort: Sort) -> Result<Hierarchy, TableauError> {
        let names: Vec<String> = self.kb.sig.atoms_of(sort).map(String::from).collect();
        let n = names.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let results: Vec<bool> = pairs
            .par_iter()
            .map(|&(i, j)| {
                self.subsumes(
                    &ConceptExpr::atom(names[i].clone(), sort),
                    &ConceptExpr::atom(names[j].clone(), sort),
                )
            })
            .collect::<Result<_, _>>()?;
        let mut below = vec![vec![false; n]; n];
        for (&(i, j), &r) in pairs.iter().zip(&results) {
            below[i][j] = r;
        }
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut cell_of = vec![usize::MAX; n];
        let mut cells: Vec<Vec<String>> = Vec::new();
        for i in 0..n {
            if cell_of[i] != usize::MAX {
                continue;
            }
            let c = cells.len();
            cells.push(Vec::new());
            for j in i..n {
                if below[i][j] && below[j][i] {
                    cell_of[j] = c;
                    cells[c].push(names[j].clone());
                }
            }
        }
        let mut above = vec![BTreeSet::new(); cells.len()];
        for i in 0..n {
            for j in 0..n {
                if below[i][j] && cell_of[i] != cell_of[j] {
                    above[cell_of[i]].insert(cell_of[j]);
                }
            }
        }
        Ok(Hierarchy { sort, cells, above })
    }
}

/// Named atoms of one sort, grouped into cells of equivalent atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchy {
    pub sort: Sort,
    pub cells: Vec<Vec<String>>,
    /// Per cell, every cell strictly above it.
    pub above: Vec<BTreeSet<usize>>,
}

impl Hierarchy {
    fn cell(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.iter().any(|n| n == name))
    }

    /// Whether `sub` is below or equivalent to `sup`.
    pub fn is_below(&self, sub: &str, sup: &str) -> bool {
        match (self.cell(sub), self.cell(sup)) {
            (Some(a), Some(b)) => a == b || self.above[a].contains(&b),
            _ => false,
        }
    }

    pub fn equivalent(&self, a: &str, b: &str) -> bool {
        self.cell(a).is_some() && self.cell(a) == self.cell(b)
    }

    /// Cells immediately above `cell`.
    pub fn parents(&self, cell: usize) -> Vec<usize> {
        self.above[cell]
            .iter()
            .copied()
            .filter(|&p| !self.above[cell].iter().any(|&q| q != p && self.above[q].contains(&p)))
            .collect()
    }
}

impl fmt::Display for Hierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, cell) in self.cells.iter().enumerate() {
            write!(f, "{}", cell.join(" = "))?;
            let parents: Vec<_> = self.parents(k).iter().map(|&p| self.cells[p][0].as_str()).collect();
            if !parents.is_empty() {
                write!(f, " <= {}", parents.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub object: Hierarchy,
    pub attribute: Hierarchy,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "object:")?;
        write!(f, "{}", self.object)?;
        writeln!(f, "attribute:")?;
        write!(f, "{}", self.attribute)
    }
}

fn clash_trace(g: &Graph, ctx: &Ctx) -> ClashTrace {
    let step = |rule: &'static str, node: usize, c: Cid| TraceStep {
        rule,
        node,
        concept: ctx.arena.to_expr(c).to_string(),
    };
    let (node, c) = g.clash.expect("closed graph has a clash");
    let clash = match ctx.arena.con(c) {
        Con::Atom(a, pos) => {
            let (name, sort) = ctx.arena.atom(a);
            let atom = ConceptExpr::atom(name, sort);
            let text = if pos {
                format!("not {atom}, {atom}")
            } else {
                format!("{atom}, not {atom}")
            };
            TraceStep {
                rule: "clash",
                node,
                concept: text,
            }
        }
        _ => step("clash", node, c),
    };
    ClashTrace {
        steps: g.trace.iter().map(|s| step(s.rule.name(), s.node, s.concept)).collect(),
        clash,
    }
}

pub fn is_satisfiable(e: &ConceptExpr, kb: &KnowledgeBase) -> Result<SatResult, TableauError> {
    Tableau::new(kb).is_satisfiable(e)
}

pub fn is_consistent(kb: &KnowledgeBase) -> Result<SatResult, TableauError> {
    Tableau::new(kb).is_consistent()
}

pub fn subsumes(kb: &KnowledgeBase, sub: &ConceptExpr, sup: &ConceptExpr) -> Result<bool, TableauError> {
    Tableau::new(kb).subsumes(sub, sup)
}

pub fn instance_of(kb: &KnowledgeBase, ind: &str, e: &ConceptExpr) -> Result<bool, TableauError> {
    Tableau::new(kb).instance_of(ind, e)
}

pub fn classify(kb: &KnowledgeBase) -> Result<Classification, TableauError> {
    Tableau::new(kb).classify()
}
