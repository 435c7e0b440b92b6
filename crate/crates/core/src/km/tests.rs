use super::*;
use crate::syntax::parse_kb;
use crate::tableau::Tableau;

const GAS: &str = include_str!("../../corpus/gas.km");
const GAS_KB: &str = include_str!("../../corpus/gas.kedl");

fn objects(elements: &[Element]) -> Vec<&ObjectElement> {
    elements
        .iter()
        .filter_map(|e| match e {
            Element::Object(o) => Some(o),
            _ => None,
        })
        .collect()
}

#[test]
fn gas_corpus_reads() {
    let elements = parse_km(GAS).unwrap();
    let objs = objects(&elements);
    assert_eq!(objs.len(), 4);
    assert_eq!(objs[0].name, "Gas");
    assert_eq!(
        objs[0].attributes,
        [
            "GasComposition",
            "IgnitionPoint",
            "Temperature",
            "GasConcentration",
            "GasVolume"
        ]
    );
    let attrs = elements.iter().filter(|e| matches!(e, Element::Attribute(_))).count();
    assert_eq!(attrs, 15);
}

#[test]
fn gas_corpus_matches_golden_file() {
    let t = translate(&parse_km(GAS).unwrap()).unwrap();
    assert_eq!(t.to_string(), GAS_KB);
    let back = parse_kb(GAS_KB).unwrap();
    assert_eq!(back.to_string(), t.kb.to_string());
    assert!(Tableau::new(&t.kb).is_consistent().unwrap().is_satisfiable());
}

#[test]
fn non_descriptive_attribute_needs_no_dimension() {
    let text = "object O { attributes: A; } attribute A { measurability: 0; function: none; }";
    assert!(parse_km(text).is_ok());
}

#[test]
fn measurable_attribute_needs_a_dimension() {
    let text = "object O { attributes: A; } attribute A { measurability: 2; function: none; }";
    let Err(KmError::Invalid(v)) = parse_km(text) else {
        panic!("expected a violation")
    };
    assert_eq!(
        v[0].to_string(),
        "A.dimension: a conventional measurable attribute needs a dimension"
    );
    let text = "object O { attributes: A; } attribute A { measurability: 3; dimension: \"m\"; function: none; }";
    assert!(validate_km(&read_km(text).unwrap()).is_empty());
}

#[test]
fn relation_without_outputs_is_rejected() {
    let text = "object O { attributes: A; relations: R; }
                attribute A { measurability: 0; function: none; }
                relation R { mapping: linear; inputs: A; outputs: ; function: f; }";
    let Err(KmError::Invalid(v)) = parse_km(text) else {
        panic!("expected a violation")
    };
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].element.as_str(), v[0].field), ("R", "outputs"));
}

#[test]
fn dangling_and_empty_references() {
    let text = "object Gas { attributes: GasVolume, Pressure; }
                object Empty { attributes: ; }
                attribute GasVolume { measurability: 2; dimension: \"m3\"; function: none; }";
    let v = validate_km(&read_km(text).unwrap());
    let shown: Vec<String> = v.iter().map(|v| v.to_string()).collect();
    assert_eq!(
        shown,
        [
            "Gas.attributes: undeclared attribute `Pressure`",
            "Empty.attributes: an object element needs at least one attribute",
        ]
    );
}

#[test]
fn single_element_translation() {
    let text = "object O { attributes: A; } attribute A { measurability: 0; function: none; }";
    let kb = translate_to_kb(&parse_km(text).unwrap()).unwrap();
    assert_eq!(kb.definitions().len(), 1);
    assert_eq!(
        kb.sig.roles().collect::<Vec<_>>(),
        [("has-A", crate::syntax::RoleKind::Cross)]
    );
    assert_eq!(kb.definitions()[0].body.to_string(), "some has-A A");
}

#[test]
fn constrained_filler() {
    let text = "object Long-tunnel { attributes: Location, Length; where Length: some more-than Meters1200; }
                attribute Location { measurability: 0; function: none; role: has-location; }
                attribute Length { measurability: 2; dimension: \"m\"; function: none; role: has-length; }
                value Meters1200 \"1200 meters\";
                comparison more-than;";
    let kb = translate_to_kb(&parse_km(text).unwrap()).unwrap();
    let expected = crate::syntax::parse_concept("some has-length (some more-than Meters1200)", &kb.sig).unwrap();
    let crate::syntax::ConceptExpr::And(_, last) = &kb.definitions()[0].body else {
        panic!("expected a conjunction")
    };
    assert_eq!(**last, expected);
    assert!(Tableau::new(&kb).is_consistent().unwrap().is_satisfiable());
}

#[test]
fn constraint_errors_name_the_element() {
    let text = "object O { attributes: A; where A: some nowhere A; } attribute A { measurability: 0; function: none; }";
    let err = translate(&parse_km(text).unwrap()).unwrap_err();
    assert!(
        matches!(err, KmError::Constraint { ref object, .. } if object == "O"),
        "{err}"
    );
}

#[test]
fn relations_become_attribute_roles() {
    let text = "object O { attributes: A, B; relations: Heat; }
                attribute A { measurability: 0; function: none; }
                attribute B { measurability: 0; function: none; }
                relation Heat { mapping: nonlinear; inputs: A; outputs: A, B; function: warm; }";
    let t = translate(&parse_km(text).unwrap()).unwrap();
    let incs: Vec<String> =
        t.kb.inclusions()
            .iter()
            .map(|i| format!("{} <= {}", i.sub, i.sup))
            .collect();
    assert_eq!(incs, ["A <= some q_Heat A", "A <= some q_Heat B"]);
    assert!(t
        .annotations
        .contains(&"relation Heat: mapping nonlinear, A, B = warm(A)".to_string()));
}

#[test]
fn relation_attributes_must_belong_to_the_object() {
    let text = "object O { attributes: A; relations: R; }
                attribute A { measurability: 0; function: none; }
                attribute B { measurability: 0; function: none; }
                relation R { mapping: linear; inputs: A; outputs: B; function: f; }";
    let v = validate_km(&read_km(text).unwrap());
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].field, "relations");
}

#[test]
fn generated_name_collisions() {
    let text = "object O { attributes: A; } attribute A { measurability: 0; function: none; role: O; }";
    assert_eq!(
        translate(&parse_km(text).unwrap()).unwrap_err(),
        KmError::Collision("O".into())
    );
    let text = "object O { attributes: A; } attribute A { measurability: 0; function: none; } value A;";
    let Err(KmError::Invalid(v)) = parse_km(text) else {
        panic!("expected a violation")
    };
    assert_eq!(v[0].field, "name");
}

#[test]
fn syntax_errors() {
    let bad = [
        ("attribute A { measurability: 7; }", "1:30:"),
        ("thing X;", "1:1:"),
        ("object O { colour: red; }", "1:12:"),
        ("object O { attributes: A; attributes: A; }", "1:27:"),
        ("attribute A { dimension: \"m\"; }", "1:11:"),
    ];
    for (text, at) in bad {
        let err = read_km(text).unwrap_err().to_string();
        assert!(err.starts_with(at), "{text}: {err}");
    }
}
