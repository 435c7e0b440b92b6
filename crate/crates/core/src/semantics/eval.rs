use fixedbitset::FixedBitSet;

use super::{ElementSet, Interpretation};
use crate::syntax::{Assertion, ConceptExpr, Formula, KnowledgeBase, Role, Sort};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("concept `{0}` has no extension in the interpretation")]
    UndeclaredAtom(String),
    #[error("role `{0}` has no extension in the interpretation")]
    UndeclaredRole(String),
    #[error("individual `{0}` is not mapped to an element")]
    UnmappedIndividual(String),
    #[error("`{name}` is interpreted over the {found} domain but used as {expected}")]
    SortMismatch { name: String, expected: Sort, found: Sort },
}

/// How an inclusion `C <= D` is read against an interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    /// Every element of `C` lies in `D`.
    #[default]
    Universal,
    /// Some element satisfies the material implication `C -> D`. Kept for
    /// comparison with the original formulation.
    PaperExistential,
}

/// Sort read off the atoms and roles of `e` alone; `top`/`bot` default to
/// objects. Ill-sorted input is caught during evaluation.
pub fn expr_sort(e: &ConceptExpr) -> Sort {
    sort_hint(e).unwrap_or(Sort::Object)
}

/// Sort fixed by some atom or role of `e`, if any.
pub(crate) fn sort_hint(e: &ConceptExpr) -> Option<Sort> {
    fn go(e: &ConceptExpr) -> Option<Sort> {
        match e {
            ConceptExpr::Top | ConceptExpr::Bot => None,
            ConceptExpr::Atom(a) => Some(a.sort),
            ConceptExpr::Not(x) => go(x),
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) | ConceptExpr::Implies(l, r) | ConceptExpr::Iff(l, r) => {
                go(l).or_else(|| go(r))
            }
            ConceptExpr::Exists(role, _) | ConceptExpr::Forall(role, _) => Some(role.kind.domain()),
        }
    }
    go(e)
}

pub(crate) fn pair_sort(l: &ConceptExpr, r: &ConceptExpr) -> Sort {
    sort_hint(l).or_else(|| sort_hint(r)).unwrap_or(Sort::Object)
}

fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn complement(mut s: FixedBitSet) -> FixedBitSet {
    s.toggle_range(..);
    s
}

fn role_pairs(i: &Interpretation, role: &Role) -> Result<Vec<(usize, usize)>, EvalError> {
    match i.role_kind(&role.name) {
        None => Err(EvalError::UndeclaredRole(role.name.clone())),
        Some(k) if k != role.kind.declared() => Err(EvalError::UndeclaredRole(role.to_string())),
        Some(_) => Ok(i.role_pairs(role).unwrap_or_default()),
    }
}

fn eval(e: &ConceptExpr, sort: Sort, i: &Interpretation) -> Result<FixedBitSet, EvalError> {
    let n = i.domain_size(sort);
    Ok(match e {
        ConceptExpr::Top => full(n),
        ConceptExpr::Bot => FixedBitSet::with_capacity(n),
        ConceptExpr::Atom(a) => {
            let (found, members) = i
                .concept(&a.name)
                .ok_or_else(|| EvalError::UndeclaredAtom(a.name.clone()))?;
            if found != sort || a.sort != sort {
                return Err(EvalError::SortMismatch {
                    name: a.name.clone(),
                    expected: sort,
                    found,
                });
            }
            let mut s = FixedBitSet::with_capacity(n);
            for &m in members {
                if m < n {
                    s.insert(m);
                }
            }
            s
        }
        ConceptExpr::Not(x) => complement(eval(x, sort, i)?),
        ConceptExpr::And(l, r) => {
            let mut s = eval(l, sort, i)?;
            s.intersect_with(&eval(r, sort, i)?);
            s
        }
        ConceptExpr::Or(l, r) => {
            let mut s = eval(l, sort, i)?;
            s.union_with(&eval(r, sort, i)?);
            s
        }
        ConceptExpr::Implies(l, r) => {
            let mut s = complement(eval(l, sort, i)?);
            s.union_with(&eval(r, sort, i)?);
            s
        }
        ConceptExpr::Iff(l, r) => {
            let (a, b) = (eval(l, sort, i)?, eval(r, sort, i)?);
            let mut s = FixedBitSet::with_capacity(n);
            for x in 0..n {
                s.set(x, a.contains(x) == b.contains(x));
            }
            s
        }
        ConceptExpr::Exists(role, x) | ConceptExpr::Forall(role, x) => {
            if role.kind.domain() != sort {
                return Err(EvalError::SortMismatch {
                    name: role.to_string(),
                    expected: sort,
                    found: role.kind.domain(),
                });
            }
            let filler = eval(x, role.kind.range(), i)?;
            let pairs = role_pairs(i, role)?;
            let range = i.domain_size(role.kind.range());
            let exists = matches!(e, ConceptExpr::Exists(..));
            let mut s = if exists { FixedBitSet::with_capacity(n) } else { full(n) };
            for (a, b) in pairs {
                if a >= n || b >= range {
                    continue;
                }
                match (exists, filler.contains(b)) {
                    (true, true) => s.insert(a),
                    (false, false) => s.set(a, false),
                    _ => {}
                }
            }
            s
        }
    })
}

/// The extension of `e` in `i`, over the domain given by the sort of `e`.
pub fn extension(e: &ConceptExpr, i: &Interpretation) -> Result<ElementSet, EvalError> {
    extension_in(e, expr_sort(e), i)
}

/// The extension of `e` read in the given sort.
pub fn extension_in(e: &ConceptExpr, sort: Sort, i: &Interpretation) -> Result<ElementSet, EvalError> {
    eval(e, sort, i).map(ElementSet)
}

pub fn satisfies_assertion(i: &Interpretation, a: &Assertion) -> Result<bool, EvalError> {
    let lookup = |name: &str| {
        i.individual(name)
            .ok_or_else(|| EvalError::UnmappedIndividual(name.to_string()))
    };
    match a.normalized() {
        Assertion::Concept { concept, individual } => {
            let (sort, e) = lookup(&individual)?;
            let want = sort_hint(&concept).unwrap_or(sort);
            if want != sort {
                return Err(EvalError::SortMismatch {
                    name: individual,
                    expected: want,
                    found: sort,
                });
            }
            Ok(eval(&concept, sort, i)?.contains(e))
        }
        Assertion::Role { role, subject, object } => {
            let ((ss, s), (os, o)) = (lookup(&subject)?, lookup(&object)?);
            for (name, want, found) in [(&subject, role.kind.domain(), ss), (&object, role.kind.range(), os)] {
                if want != found {
                    return Err(EvalError::SortMismatch {
                        name: name.clone(),
                        expected: want,
                        found,
                    });
                }
            }
            Ok(role_pairs(i, &role)?.contains(&(s, o)))
        }
    }
}

pub fn satisfies_formula(i: &Interpretation, f: &Formula, reading: Reading) -> Result<bool, EvalError> {
    let (l, r, both) = match f {
        Formula::Assertion(a) => return satisfies_assertion(i, a),
        Formula::Inclusion(l, r) => (l, r, false),
        Formula::Equivalence(l, r) => (l, r, true),
    };
    let sort = pair_sort(l, r);
    let (a, b) = (eval(l, sort, i)?, eval(r, sort, i)?);
    Ok(match reading {
        Reading::Universal => a.is_subset(&b) && (!both || b.is_subset(&a)),
        Reading::PaperExistential => (0..i.domain_size(sort)).any(|x| {
            let fwd = !a.contains(x) || b.contains(x);
            let bwd = !b.contains(x) || a.contains(x);
            fwd && (!both || bwd)
        }),
    })
}

/// Whether `i` satisfies every statement of the knowledge base under the
/// universal reading.
pub fn satisfies_kb(i: &Interpretation, kb: &KnowledgeBase) -> Result<bool, EvalError> {
    for f in kb.formulas() {
        if !satisfies_formula(i, &f, Reading::Universal)? {
            return Ok(false);
        }
    }
    Ok(true)
}
