//! Random well-sorted concepts over a small fixed signature.

#![allow(dead_code)]

use kedl_core::syntax::{ConceptExpr as E, Role, RoleKind, Signature, Sort};
use rand::rngs::StdRng;
use rand::Rng;

pub fn small_signature() -> Signature {
    Signature::new()
        .with_atom("C1", Sort::Object)
        .with_atom("C2", Sort::Object)
        .with_atom("A1", Sort::Attribute)
        .with_atom("A2", Sort::Attribute)
        .with_role("p", RoleKind::ObjObj)
        .with_role("q", RoleKind::AttrAttr)
        .with_role("r", RoleKind::Cross)
}

fn atom(rng: &mut StdRng, sort: Sort) -> E {
    let k = rng.gen_range(1..=2);
    match sort {
        Sort::Object => E::object(format!("C{k}")),
        Sort::Attribute => E::attribute(format!("A{k}")),
    }
}

fn roles(sort: Sort) -> [Role; 2] {
    match sort {
        Sort::Object => [Role::obj("p"), Role::cross("r")],
        Sort::Attribute => [Role::attr("q"), Role::cross_inverse("r")],
    }
}

/// A concept in negation normal form whose constructor depth is at most
/// `depth`.
pub fn nnf_concept(rng: &mut StdRng, sort: Sort, depth: usize) -> E {
    let pick = if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..9)
    };
    match pick {
        0 => atom(rng, sort),
        1 => match rng.gen_range(0..4) {
            0 => E::Top,
            1 => E::Bot,
            _ => atom(rng, sort),
        },
        2 if depth >= 1 => E::not(atom(rng, sort)),
        2 => atom(rng, sort),
        3 | 4 => E::and(nnf_concept(rng, sort, depth - 1), nnf_concept(rng, sort, depth - 1)),
        5 => E::or(nnf_concept(rng, sort, depth - 1), nnf_concept(rng, sort, depth - 1)),
        _ => {
            let role = roles(sort)[rng.gen_range(0..2)].clone();
            let filler = nnf_concept(rng, role.kind.range(), depth - 1);
            if rng.gen_bool(0.5) {
                E::exists(role, filler)
            } else {
                E::forall(role, filler)
            }
        }
    }
}

/// An arbitrary expression, arrows and nested negation included.
pub fn any_concept(rng: &mut StdRng, sort: Sort, depth: usize) -> E {
    if depth == 0 {
        return match rng.gen_range(0..5) {
            0 => E::Top,
            1 => E::Bot,
            _ => atom(rng, sort),
        };
    }
    let sub = |rng: &mut StdRng| any_concept(rng, sort, depth - 1);
    match rng.gen_range(0..9) {
        0 => atom(rng, sort),
        1 => E::not(sub(rng)),
        2 => E::and(sub(rng), sub(rng)),
        3 => E::or(sub(rng), sub(rng)),
        4 => E::implies(sub(rng), sub(rng)),
        5 => E::iff(sub(rng), sub(rng)),
        _ => {
            let role = roles(sort)[rng.gen_range(0..2)].clone();
            let filler = any_concept(rng, role.kind.range(), depth - 1);
            if rng.gen_bool(0.5) {
                E::exists(role, filler)
            } else {
                E::forall(role, filler)
            }
        }
    }
}
