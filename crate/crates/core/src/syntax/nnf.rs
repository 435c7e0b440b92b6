use super::ConceptExpr as E;
use super::ConceptExpr;

/// Rewrites `=>` and `<=>` into their negation/disjunction encodings.
pub fn desugar(expr: &ConceptExpr) -> ConceptExpr {
    match expr {
        E::Top | E::Bot | E::Atom(_) => expr.clone(),
        E::Not(e) => E::not(desugar(e)),
        E::And(l, r) => E::and(desugar(l), desugar(r)),
        E::Or(l, r) => E::or(desugar(l), desugar(r)),
        E::Exists(role, e) => E::exists(role.clone(), desugar(e)),
        E::Forall(role, e) => E::forall(role.clone(), desugar(e)),
        E::Implies(l, r) => E::or(E::not(desugar(l)), desugar(r)),
        E::Iff(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            E::and(E::or(E::not(l.clone()), r.clone()), E::or(E::not(r), l))
        }
    }
}

/// Pushes negation down to atoms. Arrows are desugared on the way, so the
/// result is always arrow-free.
pub fn to_nnf(expr: &ConceptExpr) -> ConceptExpr {
    match expr {
        E::Top | E::Bot | E::Atom(_) => expr.clone(),
        E::Not(e) => negated(e),
        E::And(l, r) => E::and(to_nnf(l), to_nnf(r)),
        E::Or(l, r) => E::or(to_nnf(l), to_nnf(r)),
        E::Exists(role, e) => E::exists(role.clone(), to_nnf(e)),
        E::Forall(role, e) => E::forall(role.clone(), to_nnf(e)),
        E::Implies(..) | E::Iff(..) => to_nnf(&desugar(expr)),
    }
}

/// NNF of `not expr`.
fn negated(expr: &ConceptExpr) -> ConceptExpr {
    match expr {
        E::Top => E::Bot,
        E::Bot => E::Top,
        E::Atom(_) => E::not(expr.clone()),
        E::Not(e) => to_nnf(e),
        E::And(l, r) => E::or(negated(l), negated(r)),
        E::Or(l, r) => E::and(negated(l), negated(r)),
        E::Exists(role, e) => E::forall(role.clone(), negated(e)),
        E::Forall(role, e) => E::exists(role.clone(), negated(e)),
        E::Implies(..) | E::Iff(..) => negated(&desugar(expr)),
    }
}
