//! Sort discipline for concept expressions.
//!
//! Connectives keep the sort of their operands, quantifiers move between
//! sorts according to the role family:
//!
//! | role        | filler sort | result sort |
//! |-------------|-------------|-------------|
//! | object `p`  | object      | object      |
//! | attr `q`    | attribute   | attribute   |
//! | cross `r`   | attribute   | object      |
//! | `inv(r)`    | object      | attribute   |
//!
//! `top` and `bot` have no sort of their own; they adopt the sort of their
//! context and default to object sort at top level.

use std::fmt;

use super::{ConceptExpr, Role, RoleKind, Signature, Sort, Span};

/// What a sort check expected or found at the offending position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortTag {
    Sort(Sort),
    Role(RoleKind),
    Undeclared,
}

impl fmt::Display for SortTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortTag::Sort(s) => write!(f, "{s} sort"),
            SortTag::Role(k) => write!(f, "{k}"),
            SortTag::Undeclared => f.write_str("undeclared name"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}{message} (expected {expected}, found {found})", span.map(|s| format!("{}:{}: ", s.line, s.column)).unwrap_or_default())]
pub struct SortError {
    pub span: Option<Span>,
    pub expected: SortTag,
    pub found: SortTag,
    pub message: String,
}

impl SortError {
    pub(crate) fn at(mut self, span: Span) -> Self {
        self.span.get_or_insert(span);
        self
    }
}

/// Joins the sorts of two operands of a binary connective.
pub(crate) fn join(op: &str, left: Option<Sort>, right: Option<Sort>) -> Result<Option<Sort>, SortError> {
    match (left, right) {
        (Some(l), Some(r)) if l != r => Err(SortError {
            span: None,
            expected: SortTag::Sort(l),
            found: SortTag::Sort(r),
            message: format!("operands of `{op}` must have the same sort"),
        }),
        (Some(s), _) | (_, Some(s)) => Ok(Some(s)),
        (None, None) => Ok(None),
    }
}

/// Checks that a filler sort fits the role and returns the quantifier's sort.
pub(crate) fn quantifier(role: &Role, filler: Option<Sort>) -> Result<Sort, SortError> {
    let want = role.kind.range();
    match filler {
        Some(found) if found != want => Err(SortError {
            span: None,
            expected: SortTag::Sort(want),
            found: SortTag::Sort(found),
            message: format!("filler of role `{role}` has the wrong sort"),
        }),
        _ => Ok(role.kind.domain()),
    }
}

pub(crate) fn check_role(role: &Role, sig: &Signature) -> Result<(), SortError> {
    match sig.role_kind(&role.name) {
        None => Err(SortError {
            span: None,
            expected: SortTag::Role(role.kind),
            found: SortTag::Undeclared,
            message: format!("role `{}` is not declared", role.name),
        }),
        Some(declared) if declared != role.kind.declared() => Err(SortError {
            span: None,
            expected: SortTag::Role(role.kind),
            found: SortTag::Role(declared),
            message: if role.kind == RoleKind::CrossInverse {
                format!("only cross roles have inverses; `{}` is an {declared}", role.name)
            } else {
                format!("role `{}` is declared as {declared}", role.name)
            },
        }),
        Some(_) => Ok(()),
    }
}

pub(crate) fn check_atom(name: &str, sort: Sort, sig: &Signature) -> Result<(), SortError> {
    match sig.atom_sort(name) {
        None => Err(SortError {
            span: None,
            expected: SortTag::Sort(sort),
            found: SortTag::Undeclared,
            message: format!("concept `{name}` is not declared"),
        }),
        Some(declared) if declared != sort => Err(SortError {
            span: None,
            expected: SortTag::Sort(sort),
            found: SortTag::Sort(declared),
            message: format!("concept `{name}` is declared with {declared} sort"),
        }),
        Some(_) => Ok(()),
    }
}

/// Infers the sort of `expr`, or `None` if it is built from `top`/`bot` only.
pub fn infer_sort(expr: &ConceptExpr, sig: &Signature) -> Result<Option<Sort>, SortError> {
    match expr {
        ConceptExpr::Top | ConceptExpr::Bot => Ok(None),
        ConceptExpr::Atom(a) => {
            check_atom(&a.name, a.sort, sig)?;
            Ok(Some(a.sort))
        }
        ConceptExpr::Not(e) => infer_sort(e, sig),
        ConceptExpr::And(l, r) => join("and", infer_sort(l, sig)?, infer_sort(r, sig)?),
        ConceptExpr::Or(l, r) => join("or", infer_sort(l, sig)?, infer_sort(r, sig)?),
        ConceptExpr::Implies(l, r) => join("=>", infer_sort(l, sig)?, infer_sort(r, sig)?),
        ConceptExpr::Iff(l, r) => join("<=>", infer_sort(l, sig)?, infer_sort(r, sig)?),
        ConceptExpr::Exists(role, e) | ConceptExpr::Forall(role, e) => {
            check_role(role, sig)?;
            quantifier(role, infer_sort(e, sig)?).map(Some)
        }
    }
}

/// Returns the unique sort of a well-sorted expression.
pub fn check_sort(expr: &ConceptExpr, sig: &Signature) -> Result<Sort, SortError> {
    Ok(infer_sort(expr, sig)?.unwrap_or(Sort::Object))
}

/// Checks `expr` in a context that requires `sort`.
pub fn check_sort_as(expr: &ConceptExpr, sig: &Signature, sort: Sort) -> Result<(), SortError> {
    match infer_sort(expr, sig)? {
        Some(found) if found != sort => Err(SortError {
            span: None,
            expected: SortTag::Sort(sort),
            found: SortTag::Sort(found),
            message: format!("expression `{expr}` has {found} sort"),
        }),
        _ => Ok(()),
    }
}

/// Sort of the pair `(l, r)` used in an inclusion or equivalence.
pub fn check_pair(l: &ConceptExpr, r: &ConceptExpr, sig: &Signature) -> Result<Sort, SortError> {
    Ok(join("<=", infer_sort(l, sig)?, infer_sort(r, sig)?)?.unwrap_or(Sort::Object))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ConceptExpr as E;

    fn sig() -> Signature {
        Signature::new()
            .with_atom("Gas", Sort::Object)
            .with_atom("GasComposition", Sort::Attribute)
            .with_atom("Length", Sort::Attribute)
            .with_role("has-length", RoleKind::Cross)
            .with_role("p", RoleKind::ObjObj)
            .with_role("q", RoleKind::AttrAttr)
    }

    #[test]
    fn cross_existential_is_object_sort() {
        let e = E::exists(Role::cross("has-length"), E::attribute("Length"));
        assert_eq!(check_sort(&e, &sig()), Ok(Sort::Object));
    }

    #[test]
    fn top_defaults_to_object_and_negation_keeps_sort() {
        assert_eq!(check_sort(&E::Top, &sig()), Ok(Sort::Object));
        assert_eq!(check_sort(&E::not(E::object("Gas")), &sig()), Ok(Sort::Object));
        let attr_top = E::and(E::Top, E::attribute("Length"));
        assert_eq!(check_sort(&attr_top, &sig()), Ok(Sort::Attribute));
    }

    #[test]
    fn mixed_conjunction_is_rejected() {
        let e = E::and(E::object("Gas"), E::attribute("GasComposition"));
        let err = check_sort(&e, &sig()).unwrap_err();
        assert_eq!(err.expected, SortTag::Sort(Sort::Object));
        assert_eq!(err.found, SortTag::Sort(Sort::Attribute));
    }

    #[test]
    fn inverse_role_takes_object_filler() {
        let ok = E::exists(Role::cross_inverse("has-length"), E::object("Gas"));
        assert_eq!(check_sort(&ok, &sig()), Ok(Sort::Attribute));
        let bad = E::exists(Role::cross_inverse("has-length"), E::attribute("Length"));
        assert!(check_sort(&bad, &sig()).is_err());
    }

    #[test]
    fn wrong_role_family_and_undeclared_names() {
        let e = E::exists(Role::obj("q"), E::object("Gas"));
        assert_eq!(
            check_sort(&e, &sig()).unwrap_err().found,
            SortTag::Role(RoleKind::AttrAttr)
        );
        let inv_p = E::exists(Role::cross_inverse("p"), E::object("Gas"));
        assert!(check_sort(&inv_p, &sig()).is_err());
        let undeclared = E::object("Pressure");
        assert_eq!(check_sort(&undeclared, &sig()).unwrap_err().found, SortTag::Undeclared);
    }
}
