use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::syntax::{Role, RoleKind, Sort};

/// How many `r`-successors an object element may have for a cross role `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FunctionalityMode {
    /// At most one successor: a uniqueness reading.
    #[default]
    AtMostOne,
    /// Exactly one successor: uniqueness plus totality.
    ExactlyOne,
    /// No constraint; cross roles behave like ordinary relations.
    Unrestricted,
}

impl fmt::Display for FunctionalityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionalityMode::AtMostOne => "at-most-one",
            FunctionalityMode::ExactlyOne => "exactly-one",
            FunctionalityMode::Unrestricted => "unrestricted",
        })
    }
}

impl std::str::FromStr for FunctionalityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "at-most-one" => Ok(FunctionalityMode::AtMostOne),
            "exactly-one" => Ok(FunctionalityMode::ExactlyOne),
            "unrestricted" => Ok(FunctionalityMode::Unrestricted),
            other => Err(format!(
                "unknown functionality mode `{other}` (expected at-most-one, exactly-one or unrestricted)"
            )),
        }
    }
}

/// A set of elements of one domain; elements are dense indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(pub(crate) FixedBitSet);

impl ElementSet {
    pub fn empty(domain: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(domain))
    }

    pub fn full(domain: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(domain);
        s.insert_range(..);
        ElementSet(s)
    }

    pub fn from_elements(domain: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(domain);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: usize) {
        self.0.insert(e);
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn domain_size(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct ConceptExt {
    pub sort: Sort,
    pub members: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct RoleExt {
    pub kind: RoleKind,
    pub pairs: BTreeSet<(usize, usize)>,
}

/// A finite two-domain interpretation. Object elements are `0..delta`,
/// attribute elements `0..sigma`. Inverse cross roles are never stored;
/// they are read off the forward pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    pub(crate) delta: usize,
    pub(crate) sigma: usize,
    pub(crate) concepts: BTreeMap<String, ConceptExt>,
    pub(crate) roles: BTreeMap<String, RoleExt>,
    pub(crate) individuals: BTreeMap<String, (Sort, usize)>,
    pub(crate) mode: FunctionalityMode,
}

/// A breach of the structural conditions on interpretations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyDomain(Sort),
    ElementOutOfRange {
        symbol: String,
        sort: Sort,
        element: usize,
    },
    Functionality {
        role: String,
        element: usize,
        successors: usize,
        mode: FunctionalityMode,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDomain(s) => write!(f, "{s} domain must be non-empty"),
            Violation::ElementOutOfRange { symbol, sort, element } => write!(
                f,
                "`{symbol}` refers to {} which is outside the {sort} domain",
                element_name(*sort, *element)
            ),
            Violation::Functionality {
                role,
                element,
                successors,
                mode,
            } => write!(
                f,
                "cross role `{role}` gives {} {successors} successors ({mode})",
                element_name(Sort::Object, *element)
            ),
        }
    }
}

/// Serialized element name: `x1, x2, ...` for objects, `u1, u2, ...` for
/// attribute values.
pub fn element_name(sort: Sort, e: usize) -> String {
    match sort {
        Sort::Object => format!("x{}", e + 1),
        Sort::Attribute => format!("u{}", e + 1),
    }
}

impl Interpretation {
    pub fn new(delta: usize, sigma: usize, mode: FunctionalityMode) -> Self {
        Interpretation {
            delta,
            sigma,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
            individuals: BTreeMap::new(),
            mode,
        }
    }

    pub fn delta_size(&self) -> usize {
        self.delta
    }

    pub fn sigma_size(&self) -> usize {
        self.sigma
    }

    pub fn domain_size(&self, sort: Sort) -> usize {
        match sort {
            Sort::Object => self.delta,
            Sort::Attribute => self.sigma,
        }
    }

    pub fn mode(&self) -> FunctionalityMode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: FunctionalityMode) {
        self.mode = mode;
    }

    /// Declares an atom with an empty extension if it is not present yet.
    pub fn declare_concept(&mut self, name: &str, sort: Sort) {
        self.concepts.entry(name.to_string()).or_insert_with(|| ConceptExt {
            sort,
            members: BTreeSet::new(),
        });
    }

    pub fn set_concept(&mut self, name: &str, sort: Sort, members: impl IntoIterator<Item = usize>) {
        self.concepts.insert(
            name.to_string(),
            ConceptExt {
                sort,
                members: members.into_iter().collect(),
            },
        );
    }

    pub fn add_to_concept(&mut self, name: &str, sort: Sort, element: usize) {
        self.declare_concept(name, sort);
        self.concepts.get_mut(name).expect("declared").members.insert(element);
    }

    /// Declares a role with an empty extension. Inverse cross roles declare
    /// the underlying cross role.
    pub fn declare_role(&mut self, name: &str, kind: RoleKind) {
        self.roles.entry(name.to_string()).or_insert_with(|| RoleExt {
            kind: kind.declared(),
            pairs: BTreeSet::new(),
        });
    }

    /// Adds a pair to a role; pairs of `inv(r)` are stored flipped on `r`.
    pub fn add_pair(&mut self, role: &Role, from: usize, to: usize) {
        self.declare_role(&role.name, role.kind);
        let pair = if role.kind == RoleKind::CrossInverse {
            (to, from)
        } else {
            (from, to)
        };
        self.roles.get_mut(&role.name).expect("declared").pairs.insert(pair);
    }

    pub fn set_individual(&mut self, name: &str, sort: Sort, element: usize) {
        self.individuals.insert(name.to_string(), (sort, element));
    }

    pub fn concept(&self, name: &str) -> Option<(Sort, &BTreeSet<usize>)> {
        self.concepts.get(name).map(|c| (c.sort, &c.members))
    }

    /// Pairs of the role as used: pairs of `inv(r)` are the flipped pairs of `r`.
    pub fn role_pairs(&self, role: &Role) -> Option<Vec<(usize, usize)>> {
        let ext = self.roles.get(&role.name)?;
        if ext.kind != role.kind.declared() {
            return None;
        }
        Some(if role.kind == RoleKind::CrossInverse {
            ext.pairs.iter().map(|&(x, u)| (u, x)).collect()
        } else {
            ext.pairs.iter().copied().collect()
        })
    }

    pub fn role_kind(&self, name: &str) -> Option<RoleKind> {
        self.roles.get(name).map(|r| r.kind)
    }

    pub fn individual(&self, name: &str) -> Option<(Sort, usize)> {
        self.individuals.get(name).copied()
    }

    pub fn concept_names(&self) -> impl Iterator<Item = (&str, Sort)> {
        self.concepts.iter().map(|(n, c)| (n.as_str(), c.sort))
    }

    pub fn role_names(&self) -> impl Iterator<Item = (&str, RoleKind)> {
        self.roles.iter().map(|(n, r)| (n.as_str(), r.kind))
    }

    pub fn individual_names(&self) -> impl Iterator<Item = (&str, Sort, usize)> {
        self.individuals.iter().map(|(n, &(s, e))| (n.as_str(), s, e))
    }

    /// Checks non-empty domains, element ranges and the functionality of
    /// cross roles. An empty result means the interpretation is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.delta == 0 {
            out.push(Violation::EmptyDomain(Sort::Object));
        }
        if self.sigma == 0 {
            out.push(Violation::EmptyDomain(Sort::Attribute));
        }
        let range = |symbol: &str, sort: Sort, e: usize, out: &mut Vec<Violation>| {
            if e >= self.domain_size(sort) {
                out.push(Violation::ElementOutOfRange {
                    symbol: symbol.to_string(),
                    sort,
                    element: e,
                });
            }
        };
        for (name, c) in &self.concepts {
            for &e in &c.members {
                range(name, c.sort, e, &mut out);
            }
        }
        for (name, r) in &self.roles {
            for &(a, b) in &r.pairs {
                range(name, r.kind.domain(), a, &mut out);
                range(name, r.kind.range(), b, &mut out);
            }
            if r.kind != RoleKind::Cross || self.mode == FunctionalityMode::Unrestricted {
                continue;
            }
            let mut counts = vec![0usize; self.delta];
            for &(x, _) in &r.pairs {
                if x < self.delta {
                    counts[x] += 1;
                }
            }
            for (x, &n) in counts.iter().enumerate() {
                let bad = match self.mode {
                    FunctionalityMode::AtMostOne => n > 1,
                    FunctionalityMode::ExactlyOne => n != 1,
                    FunctionalityMode::Unrestricted => false,
                };
                if bad {
                    out.push(Violation::Functionality {
                        role: name.clone(),
                        element: x,
                        successors: n,
                        mode: self.mode,
                    });
                }
            }
        }
        for (name, &(sort, e)) in &self.individuals {
            range(name, sort, e, &mut out);
        }
        out
    }
}

/// Free-function form of [`Interpretation::validate`].
pub fn validate_interpretation(i: &Interpretation) -> Vec<Violation> {
    i.validate()
}

/// Line-oriented text form with sorted element order, e.g.
///
/// ```text
/// delta: x1 x2;
/// sigma: u1;
/// C = {x1};
/// r = {(x1,u1)};
/// ind gas1 = x1;
/// ```
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |sort: Sort, n: usize| (0..n).map(|e| element_name(sort, e)).collect::<Vec<_>>().join(" ");
        writeln!(f, "delta: {};", names(Sort::Object, self.delta))?;
        writeln!(f, "sigma: {};", names(Sort::Attribute, self.sigma))?;
        for (name, c) in &self.concepts {
            let members: Vec<_> = c.members.iter().map(|&e| element_name(c.sort, e)).collect();
            writeln!(f, "{name} = {{{}}};", members.join(","))?;
        }
        for (name, r) in &self.roles {
            let pairs: Vec<_> = r
                .pairs
                .iter()
                .map(|&(a, b)| {
                    format!(
                        "({},{})",
                        element_name(r.kind.domain(), a),
                        element_name(r.kind.range(), b)
                    )
                })
                .collect();
            writeln!(f, "{name} = {{{}}};", pairs.join(","))?;
        }
        for (name, &(sort, e)) in &self.individuals {
            writeln!(f, "ind {name} = {};", element_name(sort, e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_successors_breach_functionality() {
        let mut i = Interpretation::new(1, 2, FunctionalityMode::AtMostOne);
        i.add_pair(&Role::cross("r"), 0, 0);
        i.add_pair(&Role::cross("r"), 0, 1);
        let v = i.validate();
        assert_eq!(
            v,
            vec![Violation::Functionality {
                role: "r".into(),
                element: 0,
                successors: 2,
                mode: FunctionalityMode::AtMostOne
            }]
        );
        i.set_mode(FunctionalityMode::Unrestricted);
        assert!(i.validate().is_empty());
    }

    #[test]
    fn totality_is_checked_only_in_exactly_one_mode() {
        let mut i = Interpretation::new(2, 1, FunctionalityMode::AtMostOne);
        i.add_pair(&Role::cross("r"), 0, 0);
        assert!(i.validate().is_empty());
        i.set_mode(FunctionalityMode::ExactlyOne);
        assert_eq!(i.validate().len(), 1);
    }

    #[test]
    fn tunnel_model_is_valid() {
        let mut i = Interpretation::new(1, 2, FunctionalityMode::AtMostOne);
        i.add_pair(&Role::cross("has-length"), 0, 1);
        i.set_individual("tunnel1", Sort::Object, 0);
        i.set_individual("loc1", Sort::Attribute, 0);
        i.set_individual("len1", Sort::Attribute, 1);
        assert!(validate_interpretation(&i).is_empty());
    }

    #[test]
    fn empty_domains_are_reported() {
        let i = Interpretation::new(0, 1, FunctionalityMode::AtMostOne);
        assert_eq!(i.validate(), vec![Violation::EmptyDomain(Sort::Object)]);
        assert!(i.validate()[0].to_string().contains("non-empty"));
    }

    #[test]
    fn inverse_pairs_are_stored_forward() {
        let mut i = Interpretation::new(1, 1, FunctionalityMode::AtMostOne);
        i.add_pair(&Role::cross_inverse("r"), 0, 0);
        assert_eq!(i.role_pairs(&Role::cross("r")), Some(vec![(0, 0)]));
        i.add_pair(&Role::cross("s"), 0, 0);
        assert_eq!(i.role_pairs(&Role::cross_inverse("s")), Some(vec![(0, 0)]));
    }

    #[test]
    fn text_form_is_sorted() {
        let mut i = Interpretation::new(2, 1, FunctionalityMode::AtMostOne);
        i.set_concept("D", Sort::Object, [1, 0]);
        i.set_concept("C", Sort::Object, [0]);
        i.add_pair(&Role::cross("r"), 1, 0);
        i.add_pair(&Role::cross("r"), 0, 0);
        i.set_individual("gas1", Sort::Object, 0);
        assert_eq!(
            i.to_string(),
            "delta: x1 x2;\nsigma: u1;\nC = {x1};\nD = {x1,x2};\nr = {(x1,u1),(x2,u1)};\nind gas1 = x1;\n"
        );
    }
}
