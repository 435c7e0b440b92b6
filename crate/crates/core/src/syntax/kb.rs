use std::collections::{BTreeSet, HashMap};

use super::sort::{self, SortError, SortTag};
use super::{ConceptExpr, Role, RoleKind, Signature, Sort, SyntaxError};

/// `name := body`, an acyclic definition of an atomic concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub sort: Sort,
    pub body: ConceptExpr,
}

/// `sub <= sup`, read as universal inclusion of extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inclusion {
    pub sub: ConceptExpr,
    pub sup: ConceptExpr,
    pub sort: Sort,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    /// `C(a)`
    Concept { concept: ConceptExpr, individual: String },
    /// `r(a, b)`; an inverse cross role asserts the flipped pair.
    Role {
        role: Role,
        subject: String,
        object: String,
    },
}

impl Assertion {
    pub fn concept(concept: ConceptExpr, individual: impl Into<String>) -> Self {
        Assertion::Concept {
            concept,
            individual: individual.into(),
        }
    }

    pub fn role(role: Role, subject: impl Into<String>, object: impl Into<String>) -> Self {
        Assertion::Role {
            role,
            subject: subject.into(),
            object: object.into(),
        }
    }

    /// Role assertions over `inv(r)` rewritten to the underlying cross role.
    pub fn normalized(&self) -> Assertion {
        match self {
            Assertion::Role { role, subject, object } if role.kind == RoleKind::CrossInverse => Assertion::Role {
                role: Role::cross(role.name.clone()),
                subject: object.clone(),
                object: subject.clone(),
            },
            other => other.clone(),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<(), SortError> {
        let individual_sort = |name: &str| {
            sig.individual_sort(name).ok_or_else(|| SortError {
                span: None,
                expected: SortTag::Sort(Sort::Object),
                found: SortTag::Undeclared,
                message: format!("individual `{name}` is not declared"),
            })
        };
        let mismatch = |name: &str, want: Sort, found: Sort| SortError {
            span: None,
            expected: SortTag::Sort(want),
            found: SortTag::Sort(found),
            message: format!("individual `{name}` has {found} sort"),
        };
        match self {
            Assertion::Concept { concept, individual } => {
                let ind = individual_sort(individual)?;
                if let Some(s) = sort::infer_sort(concept, sig)? {
                    if s != ind {
                        return Err(SortError {
                            span: None,
                            expected: SortTag::Sort(s),
                            found: SortTag::Sort(ind),
                            message: format!("{ind} individual `{individual}` asserted into a {s} concept"),
                        });
                    }
                }
                Ok(())
            }
            Assertion::Role { role, subject, object } => {
                sort::check_role(role, sig)?;
                let (s, o) = (individual_sort(subject)?, individual_sort(object)?);
                if s != role.kind.domain() {
                    return Err(mismatch(subject, role.kind.domain(), s));
                }
                if o != role.kind.range() {
                    return Err(mismatch(object, role.kind.range(), o));
                }
                Ok(())
            }
        }
    }
}

/// Formulas evaluated against an interpretation as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Inclusion(ConceptExpr, ConceptExpr),
    Equivalence(ConceptExpr, ConceptExpr),
    Assertion(Assertion),
}

/// Signature, terminology (definitions and inclusions) and assertions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub sig: Signature,
    definitions: Vec<Definition>,
    inclusions: Vec<Inclusion>,
    abox: Vec<Assertion>,
}

impl KnowledgeBase {
    pub fn new(sig: Signature) -> Self {
        KnowledgeBase {
            sig,
            ..Default::default()
        }
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.definitions
    }

    pub fn inclusions(&self) -> &[Inclusion] {
        &self.inclusions
    }

    pub fn abox(&self) -> &[Assertion] {
        &self.abox
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.sig.is_empty() && self.definitions.is_empty() && self.inclusions.is_empty() && self.abox.is_empty()
    }

    pub fn add_definition(&mut self, name: &str, body: ConceptExpr) -> Result<(), SyntaxError> {
        let sort = self.sig.atom_sort(name).ok_or_else(|| SortError {
            span: None,
            expected: SortTag::Sort(Sort::Object),
            found: SortTag::Undeclared,
            message: format!("defined concept `{name}` is not declared"),
        })?;
        sort::check_sort_as(&body, &self.sig, sort)?;
        if self.definition(name).is_some() {
            return Err(SyntaxError::DuplicateDefinition { name: name.to_string() });
        }
        if self.reaches(&body, name) {
            return Err(SyntaxError::CyclicDefinition { name: name.to_string() });
        }
        self.definitions.push(Definition {
            name: name.to_string(),
            sort,
            body,
        });
        Ok(())
    }

    pub fn add_inclusion(&mut self, sub: ConceptExpr, sup: ConceptExpr) -> Result<(), SyntaxError> {
        let sort = sort::check_pair(&sub, &sup, &self.sig)?;
        self.inclusions.push(Inclusion { sub, sup, sort });
        Ok(())
    }

    pub fn add_assertion(&mut self, assertion: Assertion) -> Result<(), SyntaxError> {
        assertion.check(&self.sig)?;
        self.abox.push(assertion);
        Ok(())
    }

    /// Whether unfolding `expr` through the definitions mentions `target`.
    fn reaches(&self, expr: &ConceptExpr, target: &str) -> bool {
        let by_name: HashMap<&str, &ConceptExpr> =
            self.definitions.iter().map(|d| (d.name.as_str(), &d.body)).collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![expr];
        while let Some(e) = stack.pop() {
            let mut names = Vec::new();
            e.visit_symbols(&mut |a| names.push(a.name.clone()), &mut |_| {});
            for n in names {
                if n == target {
                    return true;
                }
                if seen.insert(n.clone()) {
                    if let Some(body) = by_name.get(n.as_str()) {
                        stack.push(body);
                    }
                }
            }
        }
        false
    }

    /// Defined atoms ordered so that every definition comes after the
    /// definitions its body depends on.
    pub fn definitions_in_dependency_order(&self) -> Vec<&Definition> {
        let mut done: BTreeSet<&str> = BTreeSet::new();
        let mut out = Vec::with_capacity(self.definitions.len());
        fn visit<'a>(
            kb: &'a KnowledgeBase,
            d: &'a Definition,
            done: &mut BTreeSet<&'a str>,
            out: &mut Vec<&'a Definition>,
        ) {
            if done.contains(d.name.as_str()) {
                return;
            }
            done.insert(&d.name);
            let mut names = Vec::new();
            d.body.visit_symbols(&mut |a| names.push(a.name.clone()), &mut |_| {});
            for n in names {
                if let Some(dep) = kb.definition(&n) {
                    visit(kb, dep, done, out);
                }
            }
            out.push(d);
        }
        for d in &self.definitions {
            visit(self, d, &mut done, &mut out);
        }
        out
    }

    /// Every statement as a formula under the universal reading.
    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        for d in &self.definitions {
            out.push(Formula::Equivalence(
                ConceptExpr::atom(d.name.clone(), d.sort),
                d.body.clone(),
            ));
        }
        for i in &self.inclusions {
            out.push(Formula::Inclusion(i.sub.clone(), i.sup.clone()));
        }
        for a in &self.abox {
            out.push(Formula::Assertion(a.clone()));
        }
        out
    }
}
