use std::fmt;

use super::{validate_km, Element, KmError};
use crate::syntax::{parse_concept_as, ConceptExpr, KnowledgeBase, Role, RoleKind, Sort, SyntaxError};

/// A translated knowledge base plus the element metadata, which has no
/// logical content and is printed as `#` comment lines.
#[derive(Debug, Clone)]
pub struct Translation {
    pub kb: KnowledgeBase,
    pub annotations: Vec<String>,
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# Translated from knowledge elements. Comment lines carry metadata only."
        )?;
        for a in &self.annotations {
            writeln!(f, "# {a}")?;
        }
        writeln!(f)?;
        write!(f, "{}", self.kb)
    }
}

fn collision(e: SyntaxError) -> KmError {
    match e {
        SyntaxError::Duplicate { name, .. } => KmError::Collision(name),
        other => KmError::Syntax(other),
    }
}

fn quoted(gloss: &Option<String>) -> String {
    gloss.as_ref().map(|g| format!(" {g:?}")).unwrap_or_default()
}

fn annotation(e: &Element) -> String {
    match e {
        Element::Object(o) => format!("object {}{}", o.name, quoted(&o.gloss)),
        Element::Attribute(a) => format!(
            "attribute {}{}: measurability {} ({}), dimension {}, function {}",
            a.name,
            quoted(&a.gloss),
            a.measurability.level(),
            a.measurability.describe(),
            a.dimension.as_ref().map_or("none".to_string(), |d| format!("{d:?}")),
            a.function.as_deref().unwrap_or("none"),
        ),
        Element::Relation(r) => format!(
            "relation {}: mapping {}, {} = {}({})",
            r.name,
            r.mapping,
            r.outputs.join(", "),
            r.function.as_deref().unwrap_or("none"),
            r.inputs.join(", "),
        ),
        Element::Value { name, gloss } => format!("value {name}{}", quoted(gloss)),
        Element::Comparison { name } => format!("comparison {name}"),
    }
}

/// Translates validated elements.
///
/// Each object becomes a defined object atom whose definition conjoins one
/// existential per attribute, over the attribute's cross role. Each
/// relation becomes an attribute role `q_<name>` with an inclusion
/// `in <= some q_<name> out` per input and output pair.
pub fn translate(elements: &[Element]) -> Result<Translation, KmError> {
    let violations = validate_km(elements);
    if !violations.is_empty() {
        return Err(KmError::Invalid(violations));
    }
    let mut kb = KnowledgeBase::default();
    let sig = &mut kb.sig;
    for e in elements {
        if let Element::Object(o) = e {
            sig.declare_atom(&o.name, Sort::Object).map_err(collision)?;
        }
    }
    for e in elements {
        match e {
            Element::Attribute(a) => sig.declare_atom(&a.name, Sort::Attribute).map_err(collision)?,
            Element::Value { name, .. } => sig.declare_atom(name, Sort::Attribute).map_err(collision)?,
            _ => {}
        }
    }
    for e in elements {
        if let Element::Comparison { name } = e {
            sig.declare_role(name, RoleKind::AttrAttr).map_err(collision)?;
        }
    }
    for e in elements {
        if let Element::Relation(r) = e {
            sig.declare_role(&r.role_name(), RoleKind::AttrAttr)
                .map_err(collision)?;
        }
    }
    let mut role_of = std::collections::HashMap::new();
    for e in elements {
        if let Element::Attribute(a) = e {
            let role = a.role_name();
            sig.declare_role(&role, RoleKind::Cross).map_err(collision)?;
            role_of.insert(a.name.as_str(), role);
        }
    }

    for e in elements {
        let Element::Object(o) = e else { continue };
        let mut conjuncts = Vec::new();
        for a in &o.attributes {
            let filler = match o.constraints.iter().find(|(c, _)| c == a) {
                Some((_, text)) => {
                    parse_concept_as(text, &kb.sig, Sort::Attribute).map_err(|error| KmError::Constraint {
                        object: o.name.clone(),
                        attribute: a.clone(),
                        error,
                    })?
                }
                None => ConceptExpr::attribute(a.clone()),
            };
            conjuncts.push(ConceptExpr::exists(Role::cross(role_of[a.as_str()].clone()), filler));
        }
        let body = ConceptExpr::and_all(conjuncts).expect("validated objects have attributes");
        kb.add_definition(&o.name, body)?;
    }
    for e in elements {
        let Element::Relation(r) = e else { continue };
        let role = Role::attr(r.role_name());
        for i in &r.inputs {
            for o in &r.outputs {
                kb.add_inclusion(
                    ConceptExpr::attribute(i.clone()),
                    ConceptExpr::exists(role.clone(), ConceptExpr::attribute(o.clone())),
                )?;
            }
        }
    }
    Ok(Translation {
        kb,
        annotations: elements.iter().map(annotation).collect(),
    })
}

pub fn translate_to_kb(elements: &[Element]) -> Result<KnowledgeBase, KmError> {
    translate(elements).map(|t| t.kb)
}
