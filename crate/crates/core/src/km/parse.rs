use super::{
    span_error, validate_km, AttributeElement, Element, KmError, Measurability, ObjectElement, RelationElement,
};
use crate::syntax::lexer::Tok;
use crate::syntax::parser::Cursor;
use crate::syntax::{Span, SyntaxError};

/// Reads elements without checking their side conditions.
pub fn read_km(text: &str) -> Result<Vec<Element>, SyntaxError> {
    let mut c = Cursor::new(text)?;
    let mut out = Vec::new();
    while !c.at_eof() {
        let (kw, span) = c.ident()?;
        let e = match kw.as_str() {
            "object" => object(&mut c, text)?,
            "attribute" => attribute(&mut c)?,
            "relation" => relation(&mut c)?,
            "value" => {
                let (name, _) = c.ident()?;
                let gloss = gloss(&mut c);
                c.expect(&Tok::Semi)?;
                Element::Value { name, gloss }
            }
            "comparison" => {
                let (name, _) = c.ident()?;
                c.expect(&Tok::Semi)?;
                Element::Comparison { name }
            }
            _ => {
                return Err(span_error(
                    span,
                    format!("expected `object`, `attribute`, `relation`, `value` or `comparison`, found `{kw}`"),
                ))
            }
        };
        out.push(e);
    }
    Ok(out)
}

/// Reads elements and checks every side condition.
pub fn parse_km(text: &str) -> Result<Vec<Element>, KmError> {
    let elements = read_km(text)?;
    let violations = validate_km(&elements);
    if violations.is_empty() {
        Ok(elements)
    } else {
        Err(KmError::Invalid(violations))
    }
}

fn gloss(c: &mut Cursor) -> Option<String> {
    match c.peek().clone() {
        Tok::Str(s) => {
            c.bump();
            Some(s)
        }
        _ => None,
    }
}

/// Runs `field` for each `name: ...;` entry of a braced block, rejecting
/// repeated fields.
fn block(
    c: &mut Cursor,
    mut field: impl FnMut(&mut Cursor, &str, Span) -> Result<(), SyntaxError>,
) -> Result<(), SyntaxError> {
    c.expect(&Tok::LBrace)?;
    let mut seen: Vec<String> = Vec::new();
    while !c.eat(&Tok::RBrace) {
        let (name, span) = c.ident()?;
        if name != "where" {
            if seen.contains(&name) {
                return Err(span_error(span, format!("field `{name}` is given twice")));
            }
            seen.push(name.clone());
            c.expect(&Tok::Colon)?;
        }
        field(c, &name, span)?;
        c.expect(&Tok::Semi)?;
    }
    Ok(())
}

fn unknown(span: Span, kind: &str, name: &str) -> SyntaxError {
    span_error(span, format!("unknown {kind} field `{name}`"))
}

/// A possibly empty comma-separated name list.
fn names(c: &mut Cursor) -> Result<Vec<String>, SyntaxError> {
    let mut out = Vec::new();
    if *c.peek() == Tok::Semi {
        return Ok(out);
    }
    loop {
        out.push(c.ident()?.0);
        if !c.eat(&Tok::Comma) {
            return Ok(out);
        }
    }
}

/// A name, or `none` for absent.
fn optional_name(c: &mut Cursor) -> Result<Option<String>, SyntaxError> {
    let (name, _) = c.ident()?;
    Ok((name != "none").then_some(name))
}

fn object(c: &mut Cursor, text: &str) -> Result<Element, SyntaxError> {
    let (name, _) = c.ident()?;
    let mut o = ObjectElement {
        name,
        gloss: gloss(c),
        attributes: Vec::new(),
        relations: Vec::new(),
        constraints: Vec::new(),
    };
    block(c, |c, field, span| {
        match field {
            "attributes" => o.attributes = names(c)?,
            "relations" => o.relations = names(c)?,
            "where" => {
                let (attr, _) = c.ident()?;
                c.expect(&Tok::Colon)?;
                let start = c.span();
                let mut end = start;
                while !matches!(c.peek(), Tok::Semi | Tok::Eof) {
                    end = c.bump().span;
                }
                if *c.peek() == Tok::Eof || start == c.span() {
                    return Err(c.error("expected a concept"));
                }
                o.constraints.push((attr, text[start.start..end.end].to_string()));
            }
            _ => return Err(unknown(span, "object", field)),
        }
        Ok(())
    })?;
    Ok(Element::Object(o))
}

fn attribute(c: &mut Cursor) -> Result<Element, SyntaxError> {
    let (name, at) = c.ident()?;
    let gloss = gloss(c);
    let mut measurability = None;
    let (mut dimension, mut function, mut role) = (None, None, None);
    block(c, |c, field, span| {
        match field {
            "measurability" => {
                let at = c.span();
                let Tok::Int(n) = *c.peek() else {
                    return Err(c.error(format!("expected a level from 0 to 4, found {}", c.peek())));
                };
                c.bump();
                measurability = Some(
                    Measurability::from_level(n)
                        .ok_or_else(|| span_error(at, format!("measurability {n} is not a level from 0 to 4")))?,
                );
            }
            "dimension" => match c.peek().clone() {
                Tok::Str(s) => {
                    c.bump();
                    dimension = Some(s);
                }
                _ => dimension = optional_name(c)?,
            },
            "function" => function = optional_name(c)?,
            "role" => role = Some(c.ident()?.0),
            _ => return Err(unknown(span, "attribute", field)),
        }
        Ok(())
    })?;
    let measurability =
        measurability.ok_or_else(|| span_error(at, format!("attribute `{name}` has no measurability")))?;
    Ok(Element::Attribute(AttributeElement {
        name,
        gloss,
        measurability,
        dimension,
        function,
        role,
    }))
}

fn relation(c: &mut Cursor) -> Result<Element, SyntaxError> {
    let (name, _) = c.ident()?;
    let mut r = RelationElement {
        name,
        mapping: String::new(),
        inputs: Vec::new(),
        outputs: Vec::new(),
        function: None,
    };
    block(c, |c, field, span| {
        match field {
            "mapping" => r.mapping = c.ident()?.0,
            "inputs" => r.inputs = names(c)?,
            "outputs" => r.outputs = names(c)?,
            "function" => r.function = optional_name(c)?,
            _ => return Err(unknown(span, "relation", field)),
        }
        Ok(())
    })?;
    Ok(Element::Relation(r))
}
