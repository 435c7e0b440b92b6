//! Brute-force ground truth: every interpretation up to small domain sizes.
//!
//! Answers are qualified by the bounds searched. Returned models and
//! countermodels are checked again with the evaluator in
//! [`crate::semantics`] before they are handed out.

mod search;
mod space;

use std::fmt;
use std::str::FromStr;

use crate::semantics::{
    self, expr_sort, extension, extension_in, satisfies_formula, satisfies_kb, FunctionalityMode, Interpretation,
    Reading,
};
use crate::syntax::{Assertion, ConceptExpr, Formula, KnowledgeBase, Signature, Sort};
use search::Goal;
use space::{sizes, Layout, Odometer};

/// Largest domain sizes searched, and the functionality reading used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub max_delta: usize,
    pub max_sigma: usize,
    pub mode: FunctionalityMode,
}

impl Bounds {
    /// # Panics
    /// If either bound is zero; both domains are non-empty by definition.
    pub fn new(max_delta: usize, max_sigma: usize) -> Self {
        assert!(max_delta >= 1 && max_sigma >= 1, "bounds must be at least (1,1)");
        Bounds {
            max_delta,
            max_sigma,
            mode: FunctionalityMode::default(),
        }
    }

    pub fn with_mode(mut self, mode: FunctionalityMode) -> Self {
        self.mode = mode;
        self
    }

    /// Componentwise order.
    pub fn within(&self, other: &Bounds) -> bool {
        self.max_delta <= other.max_delta && self.max_sigma <= other.max_sigma
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.max_delta, self.max_sigma)
    }
}

/// Parses `D,S`, e.g. `2,3`.
impl FromStr for Bounds {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bounds must look like `2,3` with both sizes at least 1, got `{s}`");
        let (d, sg) = s.split_once(',').ok_or_else(bad)?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        let sg: usize = sg.trim().parse().map_err(|_| bad())?;
        if d == 0 || sg == 0 {
            return Err(bad());
        }
        Ok(Bounds::new(d, sg))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedVerdict {
    Model(Interpretation),
    NoModelUpToBound(Bounds),
    Countermodel(Interpretation),
    NoCountermodelUpToBound(Bounds),
}

impl BoundedVerdict {
    pub fn interpretation(&self) -> Option<&Interpretation> {
        match self {
            BoundedVerdict::Model(i) | BoundedVerdict::Countermodel(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_model(&self) -> bool {
        matches!(self, BoundedVerdict::Model(_))
    }

    pub fn is_countermodel(&self) -> bool {
        matches!(self, BoundedVerdict::Countermodel(_))
    }
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedVerdict::Model(i) => write!(f, "model found:\n{i}"),
            BoundedVerdict::Countermodel(i) => write!(f, "countermodel found:\n{i}"),
            BoundedVerdict::NoModelUpToBound(b) => write!(f, "no model up to bounds {b}"),
            BoundedVerdict::NoCountermodelUpToBound(b) => {
                write!(f, "no countermodel up to bounds {b}")
            }
        }
    }
}

/// What a model has to satisfy.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    /// A non-empty extension.
    Concept(&'a ConceptExpr),
    /// Every statement of the knowledge base.
    Kb(&'a KnowledgeBase),
    /// The knowledge base, plus a non-empty extension of the concept.
    ConceptInKb(&'a ConceptExpr, &'a KnowledgeBase),
    /// A non-empty extension in the given sort. Only matters for concepts
    /// without atoms or roles at the top, such as `top`.
    ConceptAs(&'a ConceptExpr, Sort),
}

impl<'a> From<&'a ConceptExpr> for Target<'a> {
    fn from(e: &'a ConceptExpr) -> Self {
        Target::Concept(e)
    }
}

impl<'a> From<&'a KnowledgeBase> for Target<'a> {
    fn from(kb: &'a KnowledgeBase) -> Self {
        Target::Kb(kb)
    }
}

/// Every interpretation over `sig` within the bounds, smallest domains
/// first, in a fixed order. Not deduplicated up to renaming.
pub fn enumerate_interpretations(sig: &Signature, b: Bounds) -> impl Iterator<Item = Interpretation> + '_ {
    sizes(b.max_delta, b.max_sigma)
        .into_iter()
        .flat_map(move |(d, s)| Odometer::new(Layout::new(sig, d, s, b.mode)))
}

/// Statement sort for formulas outside a knowledge base.
fn formula_sort(f: &Formula) -> Sort {
    match f {
        Formula::Inclusion(l, r) | Formula::Equivalence(l, r) => semantics::pair_sort(l, r),
        Formula::Assertion(_) => Sort::Object,
    }
}

fn kb_symbols(kb: &KnowledgeBase, extra: Option<&ConceptExpr>) -> Signature {
    let mut used = Signature::new();
    for d in kb.definitions() {
        ConceptExpr::atom(d.name.clone(), d.sort).extend_signature(&mut used);
        d.body.extend_signature(&mut used);
    }
    for i in kb.inclusions() {
        i.sub.extend_signature(&mut used);
        i.sup.extend_signature(&mut used);
    }
    let mut inds = Vec::new();
    for a in kb.abox() {
        match a.normalized() {
            Assertion::Concept { concept, individual } => {
                concept.extend_signature(&mut used);
                inds.push(individual);
            }
            Assertion::Role { role, subject, object } => {
                let _ = used.declare_role(&role.name, role.kind.declared());
                inds.push(subject);
                inds.push(object);
            }
        }
    }
    if let Some(e) = extra {
        e.extend_signature(&mut used);
    }
    // Keep the knowledge base's declaration order where it has one.
    let mut ordered = kb
        .sig
        .restrict(|n| used.atom_sort(n).is_some() || used.role_kind(n).is_some() || inds.iter().any(|i| i == n));
    let _ = ordered.merge(&used);
    ordered
}

fn search(used: &Signature, b: Bounds, build: impl Fn(&mut Goal)) -> Option<Interpretation> {
    for (d, s) in sizes(b.max_delta, b.max_sigma) {
        let layout = Layout::new(used, d, s, b.mode);
        let mut goal = Goal::new(&layout);
        build(&mut goal);
        if let Some(vals) = goal.first_model() {
            return Some(layout.decode(&vals));
        }
    }
    None
}

/// Pads a model found over the used symbols out to the full signature.
fn complete(mut i: Interpretation, full: &Signature) -> Interpretation {
    i.extend_to(full);
    for (name, sort) in full.individuals() {
        if i.individual(name).is_none() {
            i.set_individual(name, sort, 0);
        }
    }
    i
}

fn confirm(i: &Interpretation, ok: bool, what: &str) {
    let violations = i.validate();
    assert!(
        violations.is_empty() && ok,
        "oracle produced an unsound {what}: {violations:?}\n{i}"
    );
}

/// A model of the target within the bounds, the first in enumeration order.
pub fn find_model<'a>(target: impl Into<Target<'a>>, b: Bounds) -> BoundedVerdict {
    let target = target.into();
    let (used, full) = match target {
        Target::Concept(e) | Target::ConceptAs(e, _) => (e.signature(), e.signature()),
        Target::Kb(kb) => (kb_symbols(kb, None), kb.sig.clone()),
        Target::ConceptInKb(e, kb) => {
            let mut full = kb.sig.clone();
            e.extend_signature(&mut full);
            (kb_symbols(kb, Some(e)), full)
        }
    };
    let (concept, kb) = match target {
        Target::Concept(e) => (Some((e, expr_sort(e))), None),
        Target::ConceptAs(e, sort) => (Some((e, sort)), None),
        Target::Kb(kb) => (None, Some(kb)),
        Target::ConceptInKb(e, kb) => (Some((e, expr_sort(e))), Some(kb)),
    };
    let found = search(&used, b, |g| {
        if let Some(kb) = kb {
            for d in kb.definitions() {
                let f = Formula::Equivalence(ConceptExpr::atom(d.name.clone(), d.sort), d.body.clone());
                g.holds(&f, d.sort);
            }
            for inc in kb.inclusions() {
                g.holds(&Formula::Inclusion(inc.sub.clone(), inc.sup.clone()), inc.sort);
            }
            for a in kb.abox() {
                g.holds(&Formula::Assertion(a.clone()), Sort::Object);
            }
        }
        if let Some((e, sort)) = concept {
            g.non_empty(e, sort);
        }
    });
    match found {
        None => BoundedVerdict::NoModelUpToBound(b),
        Some(i) => {
            let i = complete(i, &full);
            let ok = kb.is_none_or(|kb| satisfies_kb(&i, kb) == Ok(true))
                && concept.is_none_or(|(e, sort)| extension_in(e, sort, &i).is_ok_and(|x| !x.is_empty()));
            confirm(&i, ok, "model");
            BoundedVerdict::Model(i)
        }
    }
}

/// Searches for an interpretation where `f` fails under the universal reading.
pub fn check_validity_bounded(f: &Formula, b: Bounds) -> BoundedVerdict {
    check_validity_in(f, &KnowledgeBase::default(), b)
}

/// Like [`check_validity_bounded`], restricted to models of `kb`.
pub fn check_validity_in(f: &Formula, kb: &KnowledgeBase, b: Bounds) -> BoundedVerdict {
    let mut full = kb.sig.clone();
    let mut used = kb_symbols(kb, None);
    let mut add = |e: &ConceptExpr| {
        e.extend_signature(&mut full);
        e.extend_signature(&mut used);
    };
    match f {
        Formula::Inclusion(l, r) | Formula::Equivalence(l, r) => {
            add(l);
            add(r);
        }
        Formula::Assertion(a) => {
            match a {
                Assertion::Concept { concept, .. } => add(concept),
                Assertion::Role { role, .. } => {
                    let _ = used.declare_role(&role.name, role.kind.declared());
                    let _ = full.declare_role(&role.name, role.kind.declared());
                }
            }
            let _ = used.merge(&kb.sig.restrict(|n| kb.sig.individual_sort(n).is_some()));
        }
    }
    let sort = formula_sort(f);
    let found = search(&used, b, |g| {
        for d in kb.definitions() {
            let def = Formula::Equivalence(ConceptExpr::atom(d.name.clone(), d.sort), d.body.clone());
            g.holds(&def, d.sort);
        }
        for inc in kb.inclusions() {
            g.holds(&Formula::Inclusion(inc.sub.clone(), inc.sup.clone()), inc.sort);
        }
        for a in kb.abox() {
            g.holds(&Formula::Assertion(a.clone()), Sort::Object);
        }
        g.fails(f, sort);
    });
    match found {
        None => BoundedVerdict::NoCountermodelUpToBound(b),
        Some(i) => {
            let i = complete(i, &full);
            let ok = satisfies_kb(&i, kb) == Ok(true) && satisfies_formula(&i, f, Reading::Universal) == Ok(false);
            confirm(&i, ok, "countermodel");
            BoundedVerdict::Countermodel(i)
        }
    }
}

/// Like [`check_validity_in`] with the formula read under `reading`. The
/// existential reading is checked by plain enumeration.
pub fn check_validity_reading(f: &Formula, kb: &KnowledgeBase, b: Bounds, reading: Reading) -> BoundedVerdict {
    if reading == Reading::Universal {
        return check_validity_in(f, kb, b);
    }
    let mut sig = kb.sig.clone();
    match f {
        Formula::Inclusion(l, r) | Formula::Equivalence(l, r) => {
            l.extend_signature(&mut sig);
            r.extend_signature(&mut sig);
        }
        Formula::Assertion(Assertion::Concept { concept, .. }) => concept.extend_signature(&mut sig),
        Formula::Assertion(Assertion::Role { role, .. }) => {
            let _ = sig.declare_role(&role.name, role.kind.declared());
        }
    }
    let found = enumerate_interpretations(&sig, b)
        .find(|i| satisfies_kb(i, kb) == Ok(true) && satisfies_formula(i, f, reading) == Ok(false));
    found.map_or(BoundedVerdict::NoCountermodelUpToBound(b), BoundedVerdict::Countermodel)
}

/// Number of enumerated interpretations over `sig` (extended by the symbols
/// of `e`) in which `e` has a non-empty extension.
pub fn count_models(e: &ConceptExpr, sig: &Signature, b: Bounds) -> u64 {
    let mut sig = sig.clone();
    e.extend_signature(&mut sig);
    enumerate_interpretations(&sig, b)
        .filter(|i| extension(e, i).is_ok_and(|x| !x.is_empty()))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_kb, RoleKind};

    fn concept(text: &str) -> ConceptExpr {
        let sig = Signature::new()
            .with_atom("C", Sort::Object)
            .with_atom("D", Sort::Object)
            .with_atom("A", Sort::Attribute)
            .with_atom("B", Sort::Attribute)
            .with_role("p", RoleKind::ObjObj)
            .with_role("q", RoleKind::AttrAttr)
            .with_role("r", RoleKind::Cross)
            .with_role("has-r", RoleKind::Cross);
        parse_concept(text, &sig).unwrap()
    }

    fn b(d: usize, s: usize) -> Bounds {
        Bounds::new(d, s)
    }

    #[test]
    fn enumeration_counts_match_the_closed_form() {
        let sig = Signature::new()
            .with_atom("C", Sort::Object)
            .with_atom("A", Sort::Attribute)
            .with_role("p", RoleKind::ObjObj)
            .with_role("q", RoleKind::AttrAttr)
            .with_role("r", RoleKind::Cross);
        for (d, s) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let layout = Layout::new(&sig, d, s, FunctionalityMode::AtMostOne);
            let n = Odometer::new(layout).count() as u64;
            let expect = 2u64.pow((d + s + d * d + s * s) as u32) * (s as u64 + 1).pow(d as u32);
            assert_eq!(n, expect, "sizes ({d},{s})");
        }
    }

    #[test]
    fn cross_role_choices_per_mode() {
        let sig = Signature::new().with_role("r", RoleKind::Cross);
        let count = |mode| enumerate_interpretations(&sig, b(1, 1).with_mode(mode)).count();
        assert_eq!(count(FunctionalityMode::AtMostOne), 2);
        assert_eq!(count(FunctionalityMode::ExactlyOne), 1);
        assert_eq!(count(FunctionalityMode::Unrestricted), 2);
        let sig = Signature::new().with_atom("C", Sort::Object);
        assert_eq!(enumerate_interpretations(&sig, b(1, 1)).count(), 2);
    }

    #[test]
    fn every_enumerated_interpretation_is_valid() {
        let sig = Signature::new()
            .with_role("r", RoleKind::Cross)
            .with_individual("a", Sort::Attribute);
        for mode in [
            FunctionalityMode::AtMostOne,
            FunctionalityMode::ExactlyOne,
            FunctionalityMode::Unrestricted,
        ] {
            for i in enumerate_interpretations(&sig, b(2, 2).with_mode(mode)) {
                assert!(i.validate().is_empty(), "{i}");
            }
        }
    }

    #[test]
    fn sizes_grow_by_total() {
        assert_eq!(sizes(2, 2), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn find_model_examples() {
        assert_eq!(
            find_model(&concept("C and not C"), b(3, 3)),
            BoundedVerdict::NoModelUpToBound(b(3, 3))
        );
        let BoundedVerdict::Model(i) = find_model(&concept("C"), b(2, 2)) else {
            panic!("expected a model");
        };
        assert_eq!(i.to_string(), "delta: x1;\nsigma: u1;\nC = {x1};\n");
        let e = concept("some has-r A and all has-r (not A)");
        assert!(!find_model(&e, b(2, 2)).is_model());
    }

    #[test]
    fn functionality_changes_satisfiability() {
        let e = concept("some r A and some r (not A)");
        assert!(!find_model(&e, b(3, 3)).is_model());
        let free = b(2, 2).with_mode(FunctionalityMode::Unrestricted);
        let BoundedVerdict::Model(i) = find_model(&e, free) else {
            panic!("expected a model");
        };
        assert_eq!(i.role_pairs(&crate::syntax::Role::cross("r")).unwrap().len(), 2);
    }

    #[test]
    fn validity_examples() {
        let sig = Signature::new()
            .with_atom("A", Sort::Attribute)
            .with_role("r", RoleKind::Cross);
        let ax16 = Formula::Inclusion(
            parse_concept("some inv(r) (all r A)", &sig).unwrap(),
            ConceptExpr::attribute("A"),
        );
        assert_eq!(
            check_validity_bounded(&ax16, b(2, 2)),
            BoundedVerdict::NoCountermodelUpToBound(b(2, 2))
        );
        let top_bot = Formula::Inclusion(ConceptExpr::Top, ConceptExpr::Bot);
        assert!(check_validity_bounded(&top_bot, b(1, 1)).is_countermodel());
        let f = Formula::Inclusion(concept("some p C"), concept("all p C"));
        let BoundedVerdict::Countermodel(i) = check_validity_bounded(&f, b(3, 1)) else {
            panic!("expected a countermodel");
        };
        assert!(i.delta_size() >= 2);
    }

    #[test]
    fn count_examples() {
        let sig = Signature::new()
            .with_atom("C", Sort::Object)
            .with_atom("A", Sort::Attribute);
        let total = enumerate_interpretations(&sig, b(1, 1)).count() as u64;
        assert_eq!(count_models(&ConceptExpr::object("C"), &sig, b(1, 1)) * 2, total);
        assert_eq!(count_models(&ConceptExpr::Bot, &sig, b(2, 2)), 0);
        let sig = Signature::new()
            .with_role("has-r", RoleKind::Cross)
            .with_atom("A", Sort::Attribute);
        let e = parse_concept("some has-r A", &sig).unwrap();
        assert_eq!(enumerate_interpretations(&sig, b(1, 1)).count(), 4);
        assert_eq!(count_models(&e, &sig, b(1, 1)), 1);
    }

    #[test]
    fn duality_between_validity_and_model_finding() {
        let cases = [
            ("some p C", "all p C"),
            ("all p C", "some p C"),
            ("some p (C and D)", "some p C and some p D"),
            ("C", "C or D"),
            ("some r A", "all r A"),
        ];
        for (l, r) in cases {
            let (l, r) = (concept(l), concept(r));
            for bounds in [b(1, 1), b(2, 2), b(3, 1)] {
                let v = check_validity_bounded(&Formula::Inclusion(l.clone(), r.clone()), bounds);
                let m = find_model(&ConceptExpr::and(l.clone(), ConceptExpr::not(r.clone())), bounds);
                assert_eq!(v.is_countermodel(), m.is_model(), "{l} <= {r} at {bounds}");
            }
        }
    }

    #[test]
    fn monotone_in_the_bounds() {
        for text in ["some p C and all p (not C)", "some r A and all r (not A)", "C"] {
            let e = concept(text);
            let big = find_model(&e, b(3, 3)).is_model();
            for small in [b(1, 1), b(2, 1), b(1, 3), b(2, 2)] {
                if !big {
                    assert!(!find_model(&e, small).is_model(), "{text} at {small}");
                }
            }
        }
    }

    #[test]
    fn depth_first_search_agrees_with_a_linear_scan() {
        let texts = [
            "C and some p (D and not C)",
            "all p C and some p top and not D",
            "some r (A and some q (not A)) and all r B",
            "some inv(r) C and all q (not B)",
            "C and D",
            "some r A and some r B and not C",
        ];
        for text in texts {
            let e = concept(text);
            let sig = e.signature();
            for mode in [FunctionalityMode::AtMostOne, FunctionalityMode::ExactlyOne] {
                for (d, s) in sizes(2, 2) {
                    let layout = Layout::new(&sig, d, s, mode);
                    let mut g = Goal::new(&layout);
                    g.non_empty(&e, expr_sort(&e));
                    assert_eq!(g.first_model(), g.first_model_linear(), "{text} ({d},{s}) {mode}");
                }
            }
        }
    }

    #[test]
    fn kb_models() {
        let kb = parse_kb(
            "aconcept A; xrole has-r; oindividual c1; aindividual u1, u2;\n\
             has-r(c1, u1); has-r(c1, u2); A(u1); (not A)(u2);",
        )
        .unwrap();
        assert!(!find_model(&kb, b(3, 3)).is_model());
        let free = b(2, 2).with_mode(FunctionalityMode::Unrestricted);
        assert!(find_model(&kb, free).is_model());
        let kb = parse_kb("oconcept C, D; orole p; D := some p C; oindividual a; D(a);").unwrap();
        let BoundedVerdict::Model(i) = find_model(&kb, b(2, 2)) else {
            panic!("expected a model");
        };
        assert_eq!(i.delta_size(), 1);
        assert!(satisfies_kb(&i, &kb).unwrap());
    }

    #[test]
    fn bounds_parse() {
        assert_eq!("2,3".parse::<Bounds>().unwrap(), b(2, 3));
        assert!("0,3".parse::<Bounds>().is_err());
        assert!("3".parse::<Bounds>().is_err());
    }
}
