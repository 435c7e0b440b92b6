use std::fmt;

use indexmap::IndexMap;

use super::SyntaxError;

/// The two sorts of the logic: object elements and attribute values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Object,
    Attribute,
}

impl Sort {
    pub fn other(self) -> Sort {
        match self {
            Sort::Object => Sort::Attribute,
            Sort::Attribute => Sort::Object,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Object => f.write_str("object"),
            Sort::Attribute => f.write_str("attribute"),
        }
    }
}

/// Role families. `CrossInverse` only ever names a declared `Cross` role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleKind {
    /// Object to object.
    ObjObj,
    /// Attribute to attribute.
    AttrAttr,
    /// Object to attribute; functional in models.
    Cross,
    /// Attribute back to object.
    CrossInverse,
}

impl RoleKind {
    pub fn domain(self) -> Sort {
        match self {
            RoleKind::ObjObj | RoleKind::Cross => Sort::Object,
            RoleKind::AttrAttr | RoleKind::CrossInverse => Sort::Attribute,
        }
    }

    pub fn range(self) -> Sort {
        match self {
            RoleKind::ObjObj | RoleKind::CrossInverse => Sort::Object,
            RoleKind::AttrAttr | RoleKind::Cross => Sort::Attribute,
        }
    }

    /// The kind a role of this family is declared with.
    pub fn declared(self) -> RoleKind {
        match self {
            RoleKind::CrossInverse => RoleKind::Cross,
            k => k,
        }
    }
}

impl fmt::Display for RoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RoleKind::ObjObj => "object role",
            RoleKind::AttrAttr => "attribute role",
            RoleKind::Cross => "cross role",
            RoleKind::CrossInverse => "inverse cross role",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub name: String,
    pub kind: RoleKind,
}

impl Role {
    pub fn new(name: impl Into<String>, kind: RoleKind) -> Self {
        Role {
            name: name.into(),
            kind,
        }
    }

    pub fn obj(name: impl Into<String>) -> Self {
        Role::new(name, RoleKind::ObjObj)
    }

    pub fn attr(name: impl Into<String>) -> Self {
        Role::new(name, RoleKind::AttrAttr)
    }

    pub fn cross(name: impl Into<String>) -> Self {
        Role::new(name, RoleKind::Cross)
    }

    pub fn cross_inverse(name: impl Into<String>) -> Self {
        Role::new(name, RoleKind::CrossInverse)
    }

    /// Swaps a cross role with its inverse. Object and attribute roles have
    /// no inverse in this logic.
    pub fn invert(&self) -> Result<Role, SyntaxError> {
        let kind = match self.kind {
            RoleKind::Cross => RoleKind::CrossInverse,
            RoleKind::CrossInverse => RoleKind::Cross,
            kind => {
                return Err(SyntaxError::NotInvertible {
                    role: self.name.clone(),
                    kind,
                })
            }
        };
        Ok(Role::new(self.name.clone(), kind))
    }
}

/// Free-function form of [`Role::invert`].
pub fn invert_role(role: &Role) -> Result<Role, SyntaxError> {
    role.invert()
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RoleKind::CrossInverse => write!(f, "inv({})", self.name),
            _ => f.write_str(&self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub name: String,
    pub sort: Sort,
}

/// Concept expressions of either sort. `Top` and `Bot` take the sort of
/// their context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConceptExpr {
    Top,
    Bot,
    Atom(Atom),
    Not(Box<ConceptExpr>),
    And(Box<ConceptExpr>, Box<ConceptExpr>),
    Or(Box<ConceptExpr>, Box<ConceptExpr>),
    Exists(Role, Box<ConceptExpr>),
    Forall(Role, Box<ConceptExpr>),
    Implies(Box<ConceptExpr>, Box<ConceptExpr>),
    Iff(Box<ConceptExpr>, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn atom(name: impl Into<String>, sort: Sort) -> Self {
        ConceptExpr::Atom(Atom {
            name: name.into(),
            sort,
        })
    }

    pub fn object(name: impl Into<String>) -> Self {
        ConceptExpr::atom(name, Sort::Object)
    }

    pub fn attribute(name: impl Into<String>) -> Self {
        ConceptExpr::atom(name, Sort::Attribute)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(e))
    }

    pub fn and(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn exists(role: Role, e: ConceptExpr) -> Self {
        ConceptExpr::Exists(role, Box::new(e))
    }

    pub fn forall(role: Role, e: ConceptExpr) -> Self {
        ConceptExpr::Forall(role, Box::new(e))
    }

    pub fn implies(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::Iff(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction of a non-empty list.
    pub fn and_all(items: impl IntoIterator<Item = ConceptExpr>) -> Option<Self> {
        items.into_iter().reduce(ConceptExpr::and)
    }

    pub fn size(&self) -> usize {
        match self {
            ConceptExpr::Top | ConceptExpr::Bot | ConceptExpr::Atom(_) => 1,
            ConceptExpr::Not(e) | ConceptExpr::Exists(_, e) | ConceptExpr::Forall(_, e) => 1 + e.size(),
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) | ConceptExpr::Implies(l, r) | ConceptExpr::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Nesting depth of constructors; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ConceptExpr::Top | ConceptExpr::Bot | ConceptExpr::Atom(_) => 0,
            ConceptExpr::Not(e) | ConceptExpr::Exists(_, e) | ConceptExpr::Forall(_, e) => 1 + e.depth(),
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) | ConceptExpr::Implies(l, r) | ConceptExpr::Iff(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn has_arrows(&self) -> bool {
        match self {
            ConceptExpr::Top | ConceptExpr::Bot | ConceptExpr::Atom(_) => false,
            ConceptExpr::Implies(..) | ConceptExpr::Iff(..) => true,
            ConceptExpr::Not(e) | ConceptExpr::Exists(_, e) | ConceptExpr::Forall(_, e) => e.has_arrows(),
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) => l.has_arrows() || r.has_arrows(),
        }
    }

    /// True when negation is applied to atoms only and no arrows remain.
    pub fn is_nnf(&self) -> bool {
        match self {
            ConceptExpr::Top | ConceptExpr::Bot | ConceptExpr::Atom(_) => true,
            ConceptExpr::Not(e) => matches!(**e, ConceptExpr::Atom(_)),
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) => l.is_nnf() && r.is_nnf(),
            ConceptExpr::Exists(_, e) | ConceptExpr::Forall(_, e) => e.is_nnf(),
            ConceptExpr::Implies(..) | ConceptExpr::Iff(..) => false,
        }
    }

    /// Visits every atom and role occurring in the expression.
    pub fn visit_symbols(&self, atoms: &mut impl FnMut(&Atom), roles: &mut impl FnMut(&Role)) {
        match self {
            ConceptExpr::Top | ConceptExpr::Bot => {}
            ConceptExpr::Atom(a) => atoms(a),
            ConceptExpr::Not(e) => e.visit_symbols(atoms, roles),
            ConceptExpr::Exists(role, e) | ConceptExpr::Forall(role, e) => {
                roles(role);
                e.visit_symbols(atoms, roles);
            }
            ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) | ConceptExpr::Implies(l, r) | ConceptExpr::Iff(l, r) => {
                l.visit_symbols(atoms, roles);
                r.visit_symbols(atoms, roles);
            }
        }
    }

    /// The smallest signature declaring every symbol used by the expression.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        self.extend_signature(&mut sig);
        sig
    }

    pub(crate) fn extend_signature(&self, sig: &mut Signature) {
        let mut atoms = Vec::new();
        let mut roles = Vec::new();
        self.visit_symbols(&mut |a| atoms.push(a.clone()), &mut |r| roles.push(r.clone()));
        for a in atoms {
            let _ = sig.declare_atom(&a.name, a.sort);
        }
        for r in roles {
            let _ = sig.declare_role(&r.name, r.kind.declared());
        }
    }
}

/// Declared vocabulary. Every name belongs to exactly one category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    atoms: IndexMap<String, Sort>,
    roles: IndexMap<String, RoleKind>,
    individuals: IndexMap<String, Sort>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn taken(&self, name: &str) -> bool {
        self.atoms.contains_key(name) || self.roles.contains_key(name) || self.individuals.contains_key(name)
    }

    pub fn declare_atom(&mut self, name: &str, sort: Sort) -> Result<(), SyntaxError> {
        if self.taken(name) {
            return Err(SyntaxError::Duplicate {
                name: name.to_string(),
                span: None,
            });
        }
        self.atoms.insert(name.to_string(), sort);
        Ok(())
    }

    /// Declares a role. `CrossInverse` is not a declarable kind: the inverse
    /// of every cross role exists implicitly.
    pub fn declare_role(&mut self, name: &str, kind: RoleKind) -> Result<(), SyntaxError> {
        if kind == RoleKind::CrossInverse {
            return Err(SyntaxError::NotInvertible {
                role: name.to_string(),
                kind,
            });
        }
        if self.taken(name) {
            return Err(SyntaxError::Duplicate {
                name: name.to_string(),
                span: None,
            });
        }
        self.roles.insert(name.to_string(), kind);
        Ok(())
    }

    pub fn declare_individual(&mut self, name: &str, sort: Sort) -> Result<(), SyntaxError> {
        if self.taken(name) {
            return Err(SyntaxError::Duplicate {
                name: name.to_string(),
                span: None,
            });
        }
        self.individuals.insert(name.to_string(), sort);
        Ok(())
    }

    pub fn with_atom(mut self, name: &str, sort: Sort) -> Self {
        self.declare_atom(name, sort).expect("fresh atom name");
        self
    }

    pub fn with_role(mut self, name: &str, kind: RoleKind) -> Self {
        self.declare_role(name, kind).expect("fresh role name");
        self
    }

    pub fn with_individual(mut self, name: &str, sort: Sort) -> Self {
        self.declare_individual(name, sort).expect("fresh individual name");
        self
    }

    pub fn atom_sort(&self, name: &str) -> Option<Sort> {
        self.atoms.get(name).copied()
    }

    pub fn role_kind(&self, name: &str) -> Option<RoleKind> {
        self.roles.get(name).copied()
    }

    pub fn individual_sort(&self, name: &str) -> Option<Sort> {
        self.individuals.get(name).copied()
    }

    /// Atoms of the given sort, in declaration order.
    pub fn atoms_of(&self, sort: Sort) -> impl Iterator<Item = &str> {
        self.atoms
            .iter()
            .filter(move |(_, s)| **s == sort)
            .map(|(n, _)| n.as_str())
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, Sort)> {
        self.atoms.iter().map(|(n, s)| (n.as_str(), *s))
    }

    pub fn roles_of(&self, kind: RoleKind) -> impl Iterator<Item = &str> {
        self.roles
            .iter()
            .filter(move |(_, k)| **k == kind)
            .map(|(n, _)| n.as_str())
    }

    pub fn roles(&self) -> impl Iterator<Item = (&str, RoleKind)> {
        self.roles.iter().map(|(n, k)| (n.as_str(), *k))
    }

    pub fn individuals_of(&self, sort: Sort) -> impl Iterator<Item = &str> {
        self.individuals
            .iter()
            .filter(move |(_, s)| **s == sort)
            .map(|(n, _)| n.as_str())
    }

    pub fn individuals(&self) -> impl Iterator<Item = (&str, Sort)> {
        self.individuals.iter().map(|(n, s)| (n.as_str(), *s))
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.roles.is_empty() && self.individuals.is_empty()
    }

    /// Adds every declaration of `other` that is not already present.
    /// Conflicting categories are reported as duplicates.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SyntaxError> {
        for (name, sort) in other.atoms() {
            if self.atom_sort(name) != Some(sort) {
                self.declare_atom(name, sort)?;
            }
        }
        for (name, kind) in other.roles() {
            if self.role_kind(name) != Some(kind) {
                self.declare_role(name, kind)?;
            }
        }
        for (name, sort) in other.individuals() {
            if self.individual_sort(name) != Some(sort) {
                self.declare_individual(name, sort)?;
            }
        }
        Ok(())
    }

    /// Restriction to the given atom, role and individual names, keeping
    /// declaration order.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> Signature {
        Signature {
            atoms: self
                .atoms
                .iter()
                .filter(|(n, _)| keep(n))
                .map(|(n, s)| (n.clone(), *s))
                .collect(),
            roles: self
                .roles
                .iter()
                .filter(|(n, _)| keep(n))
                .map(|(n, k)| (n.clone(), *k))
                .collect(),
            individuals: self
                .individuals
                .iter()
                .filter(|(n, _)| keep(n))
                .map(|(n, s)| (n.clone(), *s))
                .collect(),
        }
    }
}
