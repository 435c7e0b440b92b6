//! Reading a finite interpretation off an open completion graph.

use super::arena::Con;
use super::graph::{Block, Ctx, Graph};
use crate::semantics::{extension_in, Interpretation};
use crate::syntax::{KnowledgeBase, Signature, Sort};

/// The interpretation and, per node, the element it denotes (`None` for
/// dropped nodes). Directly blocked nodes denote their blocker's element.
pub(crate) fn build(g: &Graph, ctx: &Ctx, kb: &KnowledgeBase, sig: &Signature) -> (Interpretation, Vec<Option<usize>>) {
    let blocked = g.blocking();
    let mut elem = vec![None; g.nodes.len()];
    let (mut d, mut s) = (0, 0);
    for (n, node) in g.nodes.iter().enumerate() {
        if blocked[n] != Block::No {
            continue;
        }
        let counter = match node.sort {
            Sort::Object => &mut d,
            Sort::Attribute => &mut s,
        };
        elem[n] = Some(*counter);
        *counter += 1;
    }
    for n in 0..g.nodes.len() {
        if let Block::Direct(b) = blocked[n] {
            elem[n] = elem[b];
        }
    }

    let mut i = Interpretation::new(d, s, ctx.mode);
    i.extend_to(sig);
    let defined = |name: &str| kb.definition(name).is_some();
    for (n, node) in g.nodes.iter().enumerate() {
        if blocked[n] != Block::No {
            continue;
        }
        let e = elem[n].expect("kept node has an element");
        for &c in &node.label {
            if let Con::Atom(a, true) = ctx.arena.con(c) {
                let (name, sort) = ctx.arena.atom(a);
                if !defined(name) {
                    i.add_to_concept(name, sort, e);
                }
            }
        }
        for name in &node.names {
            i.set_individual(name, node.sort, e);
        }
        for &(base, m) in &node.out {
            if let Some(t) = elem[m] {
                i.add_pair(ctx.arena.role(base), e, t);
            }
        }
    }
    for def in kb.definitions_in_dependency_order() {
        let ext = extension_in(&def.body, def.sort, &i).expect("witness covers the signature");
        i.set_concept(&def.name, def.sort, ext.iter());
    }
    (i, elem)
}
