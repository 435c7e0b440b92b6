use std::fmt::{self, Write};

use super::{Assertion, ConceptExpr, Formula, KnowledgeBase, RoleKind, Sort};

// Binding strength: arrows < or < and < unary.
const ARROW: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn level(e: &ConceptExpr) -> u8 {
    match e {
        ConceptExpr::Implies(..) | ConceptExpr::Iff(..) => ARROW,
        ConceptExpr::Or(..) => OR,
        ConceptExpr::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &ConceptExpr, min: u8) -> fmt::Result {
    if level(e) < min {
        f.write_char('(')?;
        write_expr(f, e)?;
        f.write_char(')')
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &ConceptExpr) -> fmt::Result {
    match e {
        ConceptExpr::Top => f.write_str("top"),
        ConceptExpr::Bot => f.write_str("bot"),
        ConceptExpr::Atom(a) => f.write_str(&a.name),
        ConceptExpr::Not(x) => {
            f.write_str("not ")?;
            write_at(f, x, UNARY)
        }
        ConceptExpr::Exists(role, x) => {
            write!(f, "some {role} ")?;
            write_at(f, x, UNARY)
        }
        ConceptExpr::Forall(role, x) => {
            write!(f, "all {role} ")?;
            write_at(f, x, UNARY)
        }
        // And/Or associate to the left, arrows to the right.
        ConceptExpr::And(l, r) => {
            write_at(f, l, AND)?;
            f.write_str(" and ")?;
            write_at(f, r, UNARY)
        }
        ConceptExpr::Or(l, r) => {
            write_at(f, l, OR)?;
            f.write_str(" or ")?;
            write_at(f, r, AND)
        }
        ConceptExpr::Implies(l, r) => {
            write_at(f, l, OR)?;
            f.write_str(" => ")?;
            write_at(f, r, ARROW)
        }
        ConceptExpr::Iff(l, r) => {
            write_at(f, l, OR)?;
            f.write_str(" <=> ")?;
            write_at(f, r, ARROW)
        }
    }
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

fn write_applied(f: &mut fmt::Formatter<'_>, concept: &ConceptExpr, arg: &str) -> fmt::Result {
    match concept {
        ConceptExpr::Atom(a) => write!(f, "{}({arg})", a.name),
        other => write!(f, "({other})({arg})"),
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Concept { concept, individual } => write_applied(f, concept, individual),
            Assertion::Role { role, subject, object } => {
                let n = self.normalized();
                if role.kind == RoleKind::CrossInverse {
                    return n.fmt(f);
                }
                write!(f, "{}({subject}, {object})", role.name)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Inclusion(l, r) => write!(f, "{l} <= {r}"),
            Formula::Equivalence(l, r) => write!(f, "{l} == {r}"),
            Formula::Assertion(a) => a.fmt(f),
        }
    }
}

/// Prints in the input grammar: declarations grouped by category, then
/// definitions, inclusions and assertions, each in insertion order.
impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = &self.sig;
        let mut any = false;
        let mut group = |f: &mut fmt::Formatter<'_>, kw: &str, names: Vec<&str>| {
            for n in &names {
                writeln!(f, "{kw} {n};")?;
            }
            if !names.is_empty() {
                any = true;
            }
            Ok::<(), fmt::Error>(())
        };
        group(f, "oconcept", sig.atoms_of(Sort::Object).collect())?;
        group(f, "aconcept", sig.atoms_of(Sort::Attribute).collect())?;
        group(f, "orole", sig.roles_of(RoleKind::ObjObj).collect())?;
        group(f, "arole", sig.roles_of(RoleKind::AttrAttr).collect())?;
        group(f, "xrole", sig.roles_of(RoleKind::Cross).collect())?;
        group(f, "oindividual", sig.individuals_of(Sort::Object).collect())?;
        group(f, "aindividual", sig.individuals_of(Sort::Attribute).collect())?;
        let mut sep = |f: &mut fmt::Formatter<'_>, nonempty: bool| {
            if nonempty && any {
                writeln!(f)?;
            }
            any |= nonempty;
            Ok::<(), fmt::Error>(())
        };
        sep(f, !self.definitions().is_empty())?;
        for d in self.definitions() {
            writeln!(f, "{} := {};", d.name, d.body)?;
        }
        sep(f, !self.inclusions().is_empty())?;
        for i in self.inclusions() {
            writeln!(f, "{} <= {};", i.sub, i.sup)?;
        }
        sep(f, !self.abox().is_empty())?;
        for a in self.abox() {
            writeln!(f, "{a};")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_kb, ConceptExpr as E, Role, RoleKind, Signature};

    fn sig() -> Signature {
        Signature::new()
            .with_atom("C", Sort::Object)
            .with_atom("D", Sort::Object)
            .with_atom("A", Sort::Attribute)
            .with_role("p", RoleKind::ObjObj)
            .with_role("r", RoleKind::Cross)
    }

    #[test]
    fn minimal_parentheses() {
        let (c, d) = (E::object("C"), E::object("D"));
        let e = E::and(c.clone(), E::or(c.clone(), d.clone()));
        assert_eq!(e.to_string(), "C and (C or D)");
        let e = E::not(E::and(c.clone(), d.clone()));
        assert_eq!(e.to_string(), "not (C and D)");
        let e = E::implies(E::implies(c.clone(), d.clone()), c.clone());
        assert_eq!(e.to_string(), "(C => D) => C");
        let e = E::exists(Role::cross_inverse("r"), E::forall(Role::obj("p"), c));
        assert_eq!(e.to_string(), "some inv(r) all p C");
    }

    #[test]
    fn right_nested_conjunction_reparses() {
        let (c, d) = (E::object("C"), E::object("D"));
        let e = E::and(c.clone(), E::and(d, c));
        assert_eq!(parse_concept(&e.to_string(), &sig()).unwrap(), e);
    }

    #[test]
    fn kb_printing_reparses() {
        let text = "oconcept C;\noconcept D;\naconcept A;\nxrole r;\noindividual c1;\n\
                    aindividual u1;\n\nC := some r A;\n\nD <= C or D;\n\nr(c1, u1);\n(not A)(u1);\n";
        let kb = parse_kb(text).unwrap();
        assert_eq!(kb.to_string(), text);
    }
}
