//! Knowledge-element records (object, attribute and relational elements),
//! their side conditions, and translation into knowledge bases.
//!
//! The concrete syntax:
//!
//! ```text
//! object Tunnel "roadway" { attributes: Location, Length; relations: Wear; }
//! attribute Length "length" { measurability: 2; dimension: "m"; function: none; role: has-length; }
//! relation Wear { mapping: linear; inputs: Length; outputs: Location; function: wear; }
//! value Meters1200 "1200 meters";
//! comparison more-than;
//! ```
//!
//! An object may constrain the filler of one of its attributes with
//! `where Length: some more-than Meters1200;`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::syntax::{Span, SyntaxError};

mod parse;
mod translate;

pub use parse::{parse_km, read_km};
pub use translate::{translate, translate_to_kb, Translation};

/// The measurability feature of an attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measurability {
    NonDescriptive = 0,
    Descriptive = 1,
    Conventional = 2,
    Random = 3,
    Fuzzy = 4,
}

impl Measurability {
    pub fn from_level(level: u64) -> Option<Self> {
        Some(match level {
            0 => Measurability::NonDescriptive,
            1 => Measurability::Descriptive,
            2 => Measurability::Conventional,
            3 => Measurability::Random,
            4 => Measurability::Fuzzy,
            _ => return None,
        })
    }

    pub fn level(self) -> u8 {
        self as u8
    }

    pub fn describe(self) -> &'static str {
        match self {
            Measurability::NonDescriptive => "non-descriptive",
            Measurability::Descriptive => "descriptive",
            Measurability::Conventional => "conventional measurable",
            Measurability::Random => "random measurable",
            Measurability::Fuzzy => "fuzzy measurable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectElement {
    pub name: String,
    pub gloss: Option<String>,
    pub attributes: Vec<String>,
    pub relations: Vec<String>,
    /// `where` clauses: attribute name and the source text of the filler.
    pub constraints: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeElement {
    pub name: String,
    pub gloss: Option<String>,
    pub measurability: Measurability,
    pub dimension: Option<String>,
    pub function: Option<String>,
    /// Cross role linking objects to this attribute; `has-<name>` if absent.
    pub role: Option<String>,
}

impl AttributeElement {
    pub fn role_name(&self) -> String {
        self.role.clone().unwrap_or_else(|| format!("has-{}", self.name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationElement {
    pub name: String,
    pub mapping: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub function: Option<String>,
}

impl RelationElement {
    /// The attribute-attribute role the relation becomes.
    pub fn role_name(&self) -> String {
        format!("q_{}", self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Object(ObjectElement),
    Attribute(AttributeElement),
    Relation(RelationElement),
    /// A named attribute value such as "1200 meters", used as an atom.
    Value {
        name: String,
        gloss: Option<String>,
    },
    /// An attribute-attribute role comparing values, such as `more-than`.
    Comparison {
        name: String,
    },
}

impl Element {
    pub fn name(&self) -> &str {
        match self {
            Element::Object(o) => &o.name,
            Element::Attribute(a) => &a.name,
            Element::Relation(r) => &r.name,
            Element::Value { name, .. } | Element::Comparison { name } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Element::Object(_) => "object",
            Element::Attribute(_) => "attribute",
            Element::Relation(_) => "relation",
            Element::Value { .. } => "value",
            Element::Comparison { .. } => "comparison",
        }
    }
}

/// A broken side condition, naming the element and field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub element: String,
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}: {}", self.element, self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KmError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
    #[error("generated name `{0}` is used twice")]
    Collision(String),
    #[error("constraint on `{attribute}` in `{object}`: {error}")]
    Constraint {
        object: String,
        attribute: String,
        error: SyntaxError,
    },
}

/// Every side condition the elements break, in document order. Empty iff
/// the elements are valid.
pub fn validate_km(elements: &[Element]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |element: &str, field: &'static str, message: String| {
        out.push(Violation {
            element: element.to_string(),
            field,
            message,
        })
    };

    let mut seen = BTreeSet::new();
    for e in elements {
        if !seen.insert(e.name()) {
            bad(
                e.name(),
                "name",
                format!("{} `{}` is declared twice", e.kind(), e.name()),
            );
        }
    }
    let attrs: HashMap<&str, &AttributeElement> = elements
        .iter()
        .filter_map(|e| match e {
            Element::Attribute(a) => Some((a.name.as_str(), a)),
            _ => None,
        })
        .collect();
    let rels: HashMap<&str, &RelationElement> = elements
        .iter()
        .filter_map(|e| match e {
            Element::Relation(r) => Some((r.name.as_str(), r)),
            _ => None,
        })
        .collect();

    for e in elements {
        match e {
            Element::Object(o) => {
                if o.attributes.is_empty() {
                    bad(
                        &o.name,
                        "attributes",
                        "an object element needs at least one attribute".into(),
                    );
                }
                for a in &o.attributes {
                    if !attrs.contains_key(a.as_str()) {
                        bad(&o.name, "attributes", format!("undeclared attribute `{a}`"));
                    }
                }
                for r in &o.relations {
                    let Some(rel) = rels.get(r.as_str()) else {
                        bad(&o.name, "relations", format!("undeclared relation `{r}`"));
                        continue;
                    };
                    for a in rel.inputs.iter().chain(&rel.outputs) {
                        if !o.attributes.contains(a) {
                            bad(
                                &o.name,
                                "relations",
                                format!("relation `{r}` uses `{a}`, which is not an attribute of `{}`", o.name),
                            );
                        }
                    }
                }
                for (a, _) in &o.constraints {
                    if !o.attributes.contains(a) {
                        bad(&o.name, "where", format!("`{a}` is not an attribute of `{}`", o.name));
                    }
                }
            }
            Element::Attribute(a) => {
                if a.measurability != Measurability::NonDescriptive && a.dimension.is_none() {
                    bad(
                        &a.name,
                        "dimension",
                        format!("a {} attribute needs a dimension", a.measurability.describe()),
                    );
                }
            }
            Element::Relation(r) => {
                if r.mapping.is_empty() {
                    bad(&r.name, "mapping", "the mapping kind is missing".into());
                }
                if r.inputs.is_empty() {
                    bad(&r.name, "inputs", "a relation needs at least one input".into());
                }
                if r.outputs.is_empty() {
                    bad(&r.name, "outputs", "a relation needs at least one output".into());
                }
                if r.function.is_none() {
                    bad(&r.name, "function", "a relation needs a mapping function".into());
                }
                for (field, list) in [("inputs", &r.inputs), ("outputs", &r.outputs)] {
                    for a in list {
                        if !attrs.contains_key(a.as_str()) {
                            bad(&r.name, field, format!("undeclared attribute `{a}`"));
                        }
                    }
                }
            }
            Element::Value { .. } | Element::Comparison { .. } => {}
        }
    }
    out
}

pub(crate) fn span_error(span: Span, message: String) -> SyntaxError {
    SyntaxError::Parse {
        line: span.line,
        column: span.column,
        message,
    }
}

#[cfg(test)]
mod tests;
