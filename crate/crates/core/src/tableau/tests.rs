use super::*;
use crate::oracle::{find_model, Bounds};
use crate::syntax::{parse_concept, parse_kb};

fn sig() -> Signature {
    Signature::new()
        .with_atom("C", Sort::Object)
        .with_atom("D", Sort::Object)
        .with_atom("E", Sort::Object)
        .with_atom("A", Sort::Attribute)
        .with_atom("B", Sort::Attribute)
        .with_role("p", RoleKind::ObjObj)
        .with_role("q", RoleKind::AttrAttr)
        .with_role("r", RoleKind::Cross)
        .with_role("has-r", RoleKind::Cross)
}

fn c(text: &str) -> ConceptExpr {
    parse_concept(text, &sig()).unwrap()
}

fn empty() -> KnowledgeBase {
    KnowledgeBase::default()
}

fn sat(text: &str) -> bool {
    is_satisfiable(&c(text), &empty()).unwrap().is_satisfiable()
}

#[test]
fn contradiction_is_unsatisfiable() {
    let SatResult::Unsatisfiable(trace) = is_satisfiable(&c("C and not C"), &empty()).unwrap() else {
        panic!("expected a clash");
    };
    assert_eq!(
        trace.to_string(),
        "init n0 C and not C\nand n0 C\nand n0 not C\nclash n0 C, not C\n"
    );
}

#[test]
fn inverse_cross_roles() {
    assert!(!sat("some inv(r) (all r A) and not A"));
    assert!(!sat("some r (all inv(r) C) and not C"));
    assert!(sat("some inv(r) (all r A)"));
}

#[test]
fn functional_successor_is_shared() {
    let r = is_satisfiable(&c("some has-r A and all has-r B"), &empty()).unwrap();
    let w = r.witness().expect("satisfiable");
    let pairs = w.role_pairs(&Role::cross("has-r")).unwrap();
    assert_eq!(pairs.len(), 1);
    let u = pairs[0].1;
    assert!(w.concept("A").unwrap().1.contains(&u));
    assert!(w.concept("B").unwrap().1.contains(&u));
    assert!(!sat("some r A and some r (not A)"));
    let kb = empty();
    let free = Tableau::new(&kb).with_mode(FunctionalityMode::Unrestricted);
    assert!(free
        .is_satisfiable(&c("some r A and some r (not A)"))
        .unwrap()
        .is_satisfiable());
}

#[test]
fn consistency_examples() {
    let kb = parse_kb("oconcept C; oindividual c1; C <= bot; C(c1);").unwrap();
    assert!(!is_consistent(&kb).unwrap().is_satisfiable());
    let text = "aconcept A; xrole has-r; oindividual c1; aindividual u1, u2;\n\
                has-r(c1, u1); has-r(c1, u2); A(u1); (not A)(u2);";
    let kb = parse_kb(text).unwrap();
    assert!(!is_consistent(&kb).unwrap().is_satisfiable());
    let free = Tableau::new(&kb).with_mode(FunctionalityMode::Unrestricted);
    assert!(free.is_consistent().unwrap().is_satisfiable());
}

#[test]
fn merged_individuals_are_reported() {
    let kb = parse_kb("aconcept A; xrole r; oindividual c1; aindividual u1, u2; r(c1, u1); r(c1, u2); A(u1);").unwrap();
    let SatResult::Satisfiable(w) = is_consistent(&kb).unwrap() else {
        panic!("expected consistency");
    };
    assert_eq!(w.merged, vec![vec!["u1".to_string(), "u2".to_string()]]);
    let i = &w.interpretation;
    assert_eq!(i.individual("u1"), i.individual("u2"));
}

#[test]
fn subsumption_examples() {
    let kb = empty();
    assert!(subsumes(&kb, &c("C"), &ConceptExpr::Top).unwrap());
    assert!(subsumes(&kb, &c("some p (C and D)"), &c("some p C and some p D")).unwrap());
    assert!(!subsumes(&kb, &c("some p C and some p D"), &c("some p (C and D)")).unwrap());
    assert!(subsumes(&kb, &c("some r A and some r B"), &c("some r (A and B)")).unwrap());
    assert!(subsumes(&kb, &ConceptExpr::attribute("A"), &ConceptExpr::Top).is_ok());
    assert!(subsumes(&kb, &c("C"), &c("A")).is_err());
}

#[test]
fn instance_examples() {
    let kb = parse_kb("oconcept C, D; oindividual c1; C(c1);").unwrap();
    assert!(instance_of(&kb, "c1", &c("C")).unwrap());
    assert!(!instance_of(&kb, "c1", &c("not C")).unwrap());
    assert!(!instance_of(&kb, "c1", &c("D")).unwrap());
    let kb = parse_kb("oconcept C, D; oindividual c1; C(c1); C <= D;").unwrap();
    assert!(instance_of(&kb, "c1", &c("D")).unwrap());
    assert!(matches!(
        instance_of(&kb, "nobody", &c("D")),
        Err(TableauError::UndeclaredIndividual(_))
    ));
}

#[test]
fn classification_examples() {
    let kb = parse_kb("oconcept C, D, E; C := D and E;").unwrap();
    let h = classify(&kb).unwrap().object;
    assert!(h.is_below("C", "D") && h.is_below("C", "E"));
    assert!(!h.is_below("D", "E"));
    assert_eq!(h.to_string(), "C <= D, E\nD\nE\n");
    let kb = parse_kb("aconcept A, B; A := B or B;").unwrap();
    let cl = classify(&kb).unwrap();
    assert!(cl.attribute.equivalent("A", "B"));
    assert_eq!(cl.attribute.cells, vec![vec!["A".to_string(), "B".to_string()]]);
    let kb = parse_kb("oconcept C; oindividual c; C <= bot; C(c);").unwrap();
    assert_eq!(classify(&kb), Err(TableauError::Inconsistent));
}

#[test]
fn cyclic_inclusions_terminate_by_blocking() {
    let kb = parse_kb("oconcept C; orole p; C <= some p C;").unwrap();
    let r = is_satisfiable(&ConceptExpr::object("C"), &kb).unwrap();
    assert!(r.witness().unwrap().delta_size() <= 3);
    let kb = parse_kb(
        "oconcept C; aconcept A; xrole r; arole q;\n\
         C <= some r A; A <= some inv(r) C and some q A;",
    )
    .unwrap();
    assert!(is_satisfiable(&ConceptExpr::object("C"), &kb).unwrap().is_satisfiable());
    let kb = parse_kb("oconcept C; orole p; C <= some p C and all p (not C);").unwrap();
    assert!(!is_satisfiable(&ConceptExpr::object("C"), &kb).unwrap().is_satisfiable());
}

#[test]
fn totality_only_in_exactly_one_mode() {
    let kb = parse_kb("xrole r;").unwrap();
    let e = c("all r bot");
    assert!(is_satisfiable(&e, &kb).unwrap().is_satisfiable());
    let exact = Tableau::new(&kb).with_mode(FunctionalityMode::ExactlyOne);
    assert!(!exact.is_satisfiable(&e).unwrap().is_satisfiable());
}

#[test]
fn global_constraints_reach_both_domains() {
    let kb = parse_kb("aconcept A; top <= bot;").unwrap();
    assert!(!is_consistent(&kb).unwrap().is_satisfiable());
    let kb = parse_kb("aconcept A; A <= not A; top <= A;").unwrap();
    assert!(!is_consistent(&kb).unwrap().is_satisfiable());
}

#[test]
fn agrees_with_the_oracle_on_small_cases() {
    let cases = [
        "some p C and all p (not C)",
        "some r (A and some q B) and all r (not B or all q bot)",
        "some inv(r) (C and some r (not A)) and A",
        "all p (some r A) and some p (all r (not A))",
        "(C or D) and not C and (not D or some p E)",
        "some inv(r) C and some inv(r) (not C) and all inv(r) (some r (not A))",
    ];
    for text in cases {
        let e = c(text);
        for mode in [FunctionalityMode::AtMostOne, FunctionalityMode::ExactlyOne] {
            let kb = empty();
            let t = Tableau::new(&kb).with_mode(mode).is_satisfiable(&e).unwrap();
            let o = find_model(&e, Bounds::new(3, 3).with_mode(mode));
            assert_eq!(t.is_satisfiable(), o.is_model(), "{text} ({mode})");
        }
    }
}
