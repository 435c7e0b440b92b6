//! The axiom and property suite: every schema instantiated with atomic
//! placeholders and checked valid by both the tableau and the bounded oracle.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{Tableau, TableauError};
use crate::oracle::{find_model, BoundedVerdict, Bounds, Target};
use crate::syntax::{ConceptExpr as E, KnowledgeBase, Role, Sort};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Axiom,
    Property,
}

/// One concept that must be valid in `sort`.
#[derive(Debug, Clone)]
pub struct SuiteItem {
    pub id: String,
    pub family: Family,
    pub sort: Sort,
    pub concept: E,
}

impl SuiteItem {
    /// Whether `filter` names this item: the whole id, or a prefix of it
    /// ending where a `-` or `.` starts. `axiom1` selects both sorts of
    /// axiom 1 but not axiom 16.
    pub fn matches(&self, filter: &str) -> bool {
        match self.id.strip_prefix(filter) {
            Some(rest) => rest.is_empty() || rest.starts_with(['-', '.']),
            None => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ItemReport {
    pub item: SuiteItem,
    /// The tableau found the negation unsatisfiable.
    pub tableau_valid: bool,
    pub oracle: BoundedVerdict,
    pub elapsed: Duration,
}

impl ItemReport {
    pub fn passed(&self) -> bool {
        self.tableau_valid && !self.oracle.is_countermodel()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub bounds: Bounds,
    pub items: Vec<ItemReport>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.items.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(ItemReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ItemReport> {
        self.items.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.items.iter().map(|r| r.item.id.len()).max().unwrap_or(0);
        for r in &self.items {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            let tableau = if r.tableau_valid { "valid" } else { "not valid" };
            let oracle = if r.oracle.is_countermodel() {
                "countermodel"
            } else {
                "no countermodel"
            };
            writeln!(
                f,
                "{verdict} {:width$}  tableau: {tableau}  oracle: {oracle}  {}  [{:.1} ms]",
                r.item.id,
                r.item.concept,
                r.elapsed.as_secs_f64() * 1e3,
            )?;
        }
        writeln!(
            f,
            "{}/{} passed, mode {}, bounds {}  [{:.1} ms]",
            self.passed(),
            self.items.len(),
            self.bounds.mode,
            self.bounds,
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

/// Placeholders for φ, ψ, γ in each sort.
fn placeholders(sort: Sort) -> [E; 3] {
    match sort {
        Sort::Object => [E::object("C"), E::object("D"), E::object("E")],
        Sort::Attribute => [E::attribute("A"), E::attribute("B"), E::attribute("G")],
    }
}

fn imp(a: E, b: E) -> E {
    E::implies(a, b)
}

fn sort_name(sort: Sort) -> &'static str {
    match sort {
        Sort::Object => "object",
        Sort::Attribute => "attribute",
    }
}

/// The three schemas shared by every role family: union, intersection and
/// the existential-universal interaction.
fn role_schemas(role: &Role, x: &E, y: &E) -> [E; 3] {
    let ex = |c: E| E::exists(role.clone(), c);
    [
        imp(E::or(ex(x.clone()), ex(y.clone())), ex(E::or(x.clone(), y.clone()))),
        imp(ex(E::and(x.clone(), y.clone())), E::and(ex(x.clone()), ex(y.clone()))),
        imp(
            E::and(ex(x.clone()), E::forall(role.clone(), y.clone())),
            ex(E::and(x.clone(), y.clone())),
        ),
    ]
}

fn axioms() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let mut push = |id: String, sort: Sort, concept: E| {
        out.push(SuiteItem {
            id,
            family: Family::Axiom,
            sort,
            concept,
        })
    };
    let both = [Sort::Object, Sort::Attribute];
    for sort in both {
        let [f, s, g] = placeholders(sort);
        let n = |e: &E| E::not(e.clone());
        let forms = [
            imp(f.clone(), imp(s.clone(), f.clone())),
            imp(
                imp(f.clone(), imp(s.clone(), g.clone())),
                imp(imp(f.clone(), s.clone()), imp(f.clone(), g.clone())),
            ),
            imp(imp(n(&f), n(&s)), imp(s.clone(), f.clone())),
        ];
        for (k, e) in forms.into_iter().enumerate() {
            push(format!("axiom{}-{}", k + 1, sort_name(sort)), sort, e);
        }
    }
    let [c, d, _] = placeholders(Sort::Object);
    let [a, b, _] = placeholders(Sort::Attribute);
    let families = [
        (Role::obj("p"), &c, &d),
        (Role::attr("q"), &a, &b),
        (Role::cross("r"), &a, &b),
        (Role::cross_inverse("r"), &c, &d),
    ];
    for (k, (role, x, y)) in families.iter().enumerate() {
        let sort = role.kind.domain();
        for (j, e) in role_schemas(role, x, y).into_iter().enumerate() {
            push(format!("axiom{}", 4 + 3 * k + j), sort, e);
        }
    }
    let r = Role::cross("r");
    let rinv = Role::cross_inverse("r");
    push(
        "axiom16".into(),
        Sort::Attribute,
        imp(E::exists(rinv.clone(), E::forall(r.clone(), a.clone())), a.clone()),
    );
    push(
        "axiom17".into(),
        Sort::Object,
        imp(E::exists(r, E::forall(rinv, c.clone())), c.clone()),
    );
    for sort in both {
        let [f, s, g] = placeholders(sort);
        let forms = [
            imp(E::and(f.clone(), imp(f.clone(), s.clone())), s.clone()),
            imp(
                E::and(imp(f.clone(), s.clone()), imp(s.clone(), f.clone())),
                E::iff(f.clone(), s.clone()),
            ),
            imp(
                E::and(imp(f.clone(), s.clone()), imp(s.clone(), g.clone())),
                imp(f.clone(), g.clone()),
            ),
            E::iff(
                imp(f.clone(), E::and(s.clone(), g.clone())),
                E::and(imp(f.clone(), s.clone()), imp(f.clone(), g.clone())),
            ),
        ];
        for (k, e) in forms.into_iter().enumerate() {
            push(format!("axiom{}-{}", 18 + k, sort_name(sort)), sort, e);
        }
    }
    out.sort_by_key(|i| axiom_number(&i.id));
    out
}

fn axiom_number(id: &str) -> u32 {
    let digits: String = id
        .trim_start_matches("axiom")
        .chars()
        .take_while(char::is_ascii_digit)
        .collect();
    digits.parse().expect("axiom ids carry a number")
}

/// Properties as (number, sub-item, left, right) biconditionals.
fn property_laws(sort: Sort) -> Vec<(u32, Option<u32>, E, E)> {
    let [f, s, g] = placeholders(sort);
    let and = |a: &E, b: &E| E::and(a.clone(), b.clone());
    let or = |a: &E, b: &E| E::or(a.clone(), b.clone());
    let not = |a: &E| E::not(a.clone());
    vec![
        (1, Some(1), and(&f, &f), f.clone()),
        (1, Some(2), or(&f, &f), f.clone()),
        (2, Some(1), and(&f, &s), and(&s, &f)),
        (2, Some(2), or(&f, &s), or(&s, &f)),
        (3, Some(1), and(&and(&f, &s), &g), and(&f, &and(&s, &g))),
        (3, Some(2), or(&or(&f, &s), &g), or(&f, &or(&s, &g))),
        (4, Some(1), or(&f, &and(&s, &g)), and(&or(&f, &s), &or(&f, &g))),
        (4, Some(2), and(&f, &or(&s, &g)), or(&and(&f, &s), &and(&f, &g))),
        (5, Some(1), or(&f, &E::Bot), f.clone()),
        (5, Some(2), and(&f, &E::Top), f.clone()),
        (6, Some(1), or(&f, &E::Top), E::Top),
        (6, Some(2), and(&f, &E::Bot), E::Bot),
        (7, None, or(&not(&f), &f), E::Top),
        (8, None, and(&f, &not(&f)), E::Bot),
        (9, Some(1), or(&f, &and(&f, &s)), f.clone()),
        (9, Some(2), and(&f, &or(&f, &s)), f.clone()),
        (10, Some(1), not(&and(&f, &s)), or(&not(&f), &not(&s))),
        (10, Some(2), not(&or(&f, &s)), and(&not(&f), &not(&s))),
        (11, Some(1), not(&E::Bot), E::Top),
        (11, Some(2), not(&E::Top), E::Bot),
        (12, None, not(&not(&f)), f.clone()),
    ]
}

fn properties() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let laws: Vec<_> = [Sort::Object, Sort::Attribute]
        .into_iter()
        .map(|sort| (sort, property_laws(sort)))
        .collect();
    for k in 0..laws[0].1.len() {
        for (sort, list) in &laws {
            let (n, sub, l, r) = &list[k];
            let base = match sub {
                Some(j) => format!("property{n}.{j}"),
                None => format!("property{n}"),
            };
            for (dir, e) in [("lr", imp(l.clone(), r.clone())), ("rl", imp(r.clone(), l.clone()))] {
                out.push(SuiteItem {
                    id: format!("{base}-{}-{dir}", sort_name(*sort)),
                    family: Family::Property,
                    sort: *sort,
                    concept: e,
                });
            }
        }
    }
    out
}

/// Every suite item in report order: axioms by number, then properties.
pub fn suite_items() -> Vec<SuiteItem> {
    let mut v = axioms();
    v.extend(properties());
    v
}

/// Checks one concept for validity with both engines.
pub fn check_item(item: &SuiteItem, bounds: Bounds) -> Result<ItemReport, TableauError> {
    let start = Instant::now();
    let kb = KnowledgeBase::default();
    let neg = E::not(item.concept.clone());
    let tableau_valid = !Tableau::new(&kb)
        .with_mode(bounds.mode)
        .is_satisfiable_as(&neg, item.sort)?
        .is_satisfiable();
    let oracle = match find_model(Target::ConceptAs(&neg, item.sort), bounds) {
        BoundedVerdict::Model(i) => BoundedVerdict::Countermodel(i),
        _ => BoundedVerdict::NoCountermodelUpToBound(bounds),
    };
    Ok(ItemReport {
        item: item.clone(),
        tableau_valid,
        oracle,
        elapsed: start.elapsed(),
    })
}

/// Runs the items selected by `only` (all if `None`) in parallel. The
/// report keeps suite order.
pub fn verify_suite(bounds: Bounds, only: Option<&str>) -> Result<SuiteReport, TableauError> {
    let start = Instant::now();
    let items: Vec<SuiteItem> = suite_items()
        .into_iter()
        .filter(|i| only.is_none_or(|f| i.matches(f)))
        .collect();
    let items = items
        .par_iter()
        .map(|i| check_item(i, bounds))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport {
        bounds,
        items,
        elapsed: start.elapsed(),
    })
}
