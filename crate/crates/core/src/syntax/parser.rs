//! Surface syntax for concepts and knowledge bases.
//!
//! ```text
//! decl    := ("oconcept"|"aconcept") NAME ";" | ("orole"|"arole"|"xrole") NAME ";"
//!          | ("oindividual"|"aindividual") NAME ";"
//! concept := "top" | "bot" | NAME | "not" concept | concept ("and"|"or") concept
//!          | ("some"|"all") roleref concept | "(" concept ")" | concept ("=>"|"<=>") concept
//! roleref := NAME | "inv(" NAME ")"
//! tbox    := NAME ":=" concept ";" | concept "<=" concept ";"
//! abox    := NAME "(" NAME ")" ";" | "(" concept ")" "(" NAME ")" ";" | NAME "(" NAME "," NAME ")" ";"
//! ```
//!
//! `not` and the quantifiers bind tightest, then `and`, then `or`; the arrows
//! bind loosest and associate to the right.

use std::collections::HashMap;

use super::lexer::{tokenize, Tok, Token};
use super::sort::{self, SortError, SortTag};
use super::{Assertion, ConceptExpr, KnowledgeBase, Role, RoleKind, Signature, Sort, Span, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Implies => "=>",
            BinOp::Iff => "<=>",
        }
    }
}

#[derive(Debug, Clone)]
struct RawRole {
    name: String,
    inverse: bool,
    span: Span,
}

/// Parsed concept before names are resolved against a signature.
#[derive(Debug, Clone)]
enum Raw {
    Top,
    Bot,
    Name(String),
    Not(Box<RawNode>),
    Bin(BinOp, Box<RawNode>, Box<RawNode>),
    Quant {
        exists: bool,
        role: RawRole,
        body: Box<RawNode>,
    },
}

#[derive(Debug, Clone)]
struct RawNode {
    raw: Raw,
    span: Span,
}

pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SyntaxError {
        let s = self.span();
        SyntaxError::Parse {
            line: s.line,
            column: s.column,
            message: message.into(),
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<Span, SyntaxError> {
        if self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<(String, Span), SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok((name, span))
            }
            other => Err(self.error(format!("expected a name, found {other}"))),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }
}

fn join_spans(a: Span, b: Span) -> Span {
    Span {
        start: a.start,
        end: b.end,
        line: a.line,
        column: a.column,
    }
}

fn parse_arrow(c: &mut Cursor) -> Result<RawNode, SyntaxError> {
    let left = parse_or(c)?;
    let op = match c.peek() {
        Tok::Implies => BinOp::Implies,
        Tok::Iff => BinOp::Iff,
        _ => return Ok(left),
    };
    c.bump();
    let right = parse_arrow(c)?;
    let span = join_spans(left.span, right.span);
    Ok(RawNode {
        raw: Raw::Bin(op, Box::new(left), Box::new(right)),
        span,
    })
}

fn parse_or(c: &mut Cursor) -> Result<RawNode, SyntaxError> {
    let mut left = parse_and(c)?;
    while c.eat(&Tok::Or) {
        let right = parse_and(c)?;
        let span = join_spans(left.span, right.span);
        left = RawNode {
            raw: Raw::Bin(BinOp::Or, Box::new(left), Box::new(right)),
            span,
        };
    }
    Ok(left)
}

fn parse_and(c: &mut Cursor) -> Result<RawNode, SyntaxError> {
    let mut left = parse_unary(c)?;
    while c.eat(&Tok::And) {
        let right = parse_unary(c)?;
        let span = join_spans(left.span, right.span);
        left = RawNode {
            raw: Raw::Bin(BinOp::And, Box::new(left), Box::new(right)),
            span,
        };
    }
    Ok(left)
}

fn parse_role(c: &mut Cursor) -> Result<RawRole, SyntaxError> {
    let (name, span) = c.ident()?;
    if name == "inv" && *c.peek() == Tok::LParen {
        c.bump();
        let (inner, _) = c.ident()?;
        let end = c.expect(&Tok::RParen)?;
        return Ok(RawRole {
            name: inner,
            inverse: true,
            span: join_spans(span, end),
        });
    }
    Ok(RawRole {
        name,
        inverse: false,
        span,
    })
}

fn parse_unary(c: &mut Cursor) -> Result<RawNode, SyntaxError> {
    let start = c.span();
    match c.peek().clone() {
        Tok::Not => {
            c.bump();
            let body = parse_unary(c)?;
            let span = join_spans(start, body.span);
            Ok(RawNode {
                raw: Raw::Not(Box::new(body)),
                span,
            })
        }
        Tok::Some | Tok::All => {
            let exists = c.bump().tok == Tok::Some;
            let role = parse_role(c)?;
            c.eat(&Tok::Dot);
            let body = parse_unary(c)?;
            let span = join_spans(start, body.span);
            Ok(RawNode {
                raw: Raw::Quant {
                    exists,
                    role,
                    body: Box::new(body),
                },
                span,
            })
        }
        Tok::Top => Ok(RawNode {
            raw: Raw::Top,
            span: c.bump().span,
        }),
        Tok::Bot => Ok(RawNode {
            raw: Raw::Bot,
            span: c.bump().span,
        }),
        Tok::Ident(name) => Ok(RawNode {
            raw: Raw::Name(name),
            span: c.bump().span,
        }),
        Tok::LParen => {
            c.bump();
            let inner = parse_arrow(c)?;
            let end = c.expect(&Tok::RParen)?;
            Ok(RawNode {
                raw: inner.raw,
                span: join_spans(start, end),
            })
        }
        other => Err(c.error(format!("expected a concept, found {other}"))),
    }
}

fn resolve_role(role: &RawRole, sig: &Signature) -> Result<Role, SortError> {
    let kind = match sig.role_kind(&role.name) {
        Some(kind) => kind,
        None if sig.atom_sort(&role.name).is_some() || sig.individual_sort(&role.name).is_some() => {
            return Err(SortError {
                span: Some(role.span),
                expected: SortTag::Role(RoleKind::ObjObj),
                found: SortTag::Undeclared,
                message: format!("`{}` is not a role", role.name),
            })
        }
        None => {
            return Err(SortError {
                span: Some(role.span),
                expected: SortTag::Role(RoleKind::ObjObj),
                found: SortTag::Undeclared,
                message: format!("role `{}` is not declared", role.name),
            })
        }
    };
    let resolved = if role.inverse {
        if kind != RoleKind::Cross {
            return Err(SortError {
                span: Some(role.span),
                expected: SortTag::Role(RoleKind::Cross),
                found: SortTag::Role(kind),
                message: format!("only cross roles have inverses; `{}` is an {kind}", role.name),
            });
        }
        Role::cross_inverse(role.name.clone())
    } else {
        Role::new(role.name.clone(), kind)
    };
    Ok(resolved)
}

/// Resolves names and checks sorts, reporting the span of the innermost
/// offending sub-expression.
fn resolve(node: &RawNode, sig: &Signature) -> Result<(ConceptExpr, Option<Sort>), SortError> {
    match &node.raw {
        Raw::Top => Ok((ConceptExpr::Top, None)),
        Raw::Bot => Ok((ConceptExpr::Bot, None)),
        Raw::Name(name) => match sig.atom_sort(name) {
            Some(sort) => Ok((ConceptExpr::atom(name.clone(), sort), Some(sort))),
            None => Err(SortError {
                span: Some(node.span),
                expected: SortTag::Sort(Sort::Object),
                found: if sig.role_kind(name).is_some() {
                    SortTag::Role(sig.role_kind(name).unwrap())
                } else {
                    SortTag::Undeclared
                },
                message: format!("`{name}` is not a declared concept"),
            }),
        },
        Raw::Not(body) => {
            let (e, s) = resolve(body, sig)?;
            Ok((ConceptExpr::not(e), s))
        }
        Raw::Bin(op, l, r) => {
            let (le, ls) = resolve(l, sig)?;
            let (re, rs) = resolve(r, sig)?;
            let s = sort::join(op.symbol(), ls, rs).map_err(|e| e.at(node.span))?;
            let e = match op {
                BinOp::And => ConceptExpr::and(le, re),
                BinOp::Or => ConceptExpr::or(le, re),
                BinOp::Implies => ConceptExpr::implies(le, re),
                BinOp::Iff => ConceptExpr::iff(le, re),
            };
            Ok((e, s))
        }
        Raw::Quant { exists, role, body } => {
            let role = resolve_role(role, sig)?;
            let (be, bs) = resolve(body, sig)?;
            let s = sort::quantifier(&role, bs).map_err(|e| e.at(body.span))?;
            let e = if *exists {
                ConceptExpr::exists(role, be)
            } else {
                ConceptExpr::forall(role, be)
            };
            Ok((e, Some(s)))
        }
    }
}

/// Parses a single concept expression and checks it against `sig`.
pub fn parse_concept(text: &str, sig: &Signature) -> Result<ConceptExpr, SyntaxError> {
    let mut c = Cursor::new(text)?;
    let raw = parse_arrow(&mut c)?;
    if !c.at_eof() {
        return Err(c.error(format!("unexpected {} after concept", c.peek())));
    }
    Ok(resolve(&raw, sig)?.0)
}

/// Parses a concept that must have the given sort.
pub fn parse_concept_as(text: &str, sig: &Signature, want: Sort) -> Result<ConceptExpr, SyntaxError> {
    let e = parse_concept(text, sig)?;
    sort::check_sort_as(&e, sig, want)?;
    Ok(e)
}

/// Parses a concept whose undeclared names get their categories inferred
/// from use, extending `base`.
///
/// Sorts propagate through connectives and quantifiers. A name used under
/// `inv(..)` is a cross role. Open choices are then settled in order: a
/// `has-X` role is a cross role, atoms are object atoms, and roles whose
/// kind is still open are cross roles.
pub fn parse_concept_inferring(text: &str, base: &Signature) -> Result<(ConceptExpr, Signature), SyntaxError> {
    let mut c = Cursor::new(text)?;
    let raw = parse_arrow(&mut c)?;
    if !c.at_eof() {
        return Err(c.error(format!("unexpected {} after concept", c.peek())));
    }
    let sig = infer::infer(&raw, base)?;
    let e = resolve(&raw, &sig)?.0;
    Ok((e, sig))
}

mod infer {
    use super::*;

    /// Union-find over sort variables; slots 0 and 1 are the constants.
    struct Vars {
        parent: Vec<usize>,
    }

    const OBJ: usize = 0;
    const ATTR: usize = 1;

    impl Vars {
        fn fresh(&mut self) -> usize {
            self.parent.push(self.parent.len());
            self.parent.len() - 1
        }

        fn find(&mut self, v: usize) -> usize {
            let p = self.parent[v];
            if p == v {
                return v;
            }
            let root = self.find(p);
            self.parent[v] = root;
            root
        }

        fn unify(&mut self, a: usize, b: usize, span: Span) -> Result<(), SortError> {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                return Ok(());
            }
            if a <= ATTR && b <= ATTR {
                return Err(SortError {
                    span: Some(span),
                    expected: SortTag::Sort(sort_of(a)),
                    found: SortTag::Sort(sort_of(b)),
                    message: "operands have different sorts".into(),
                });
            }
            // Constants stay roots.
            if b <= ATTR {
                self.parent[a] = b;
            } else {
                self.parent[b] = a;
            }
            Ok(())
        }

        fn value(&mut self, v: usize) -> Option<Sort> {
            match self.find(v) {
                OBJ => Some(Sort::Object),
                ATTR => Some(Sort::Attribute),
                _ => None,
            }
        }
    }

    fn sort_of(v: usize) -> Sort {
        if v == OBJ {
            Sort::Object
        } else {
            Sort::Attribute
        }
    }

    fn const_of(s: Sort) -> usize {
        match s {
            Sort::Object => OBJ,
            Sort::Attribute => ATTR,
        }
    }

    struct State<'a> {
        base: &'a Signature,
        vars: Vars,
        atoms: Vec<(String, usize)>,
        roles: Vec<(String, usize, usize)>,
        atom_ix: HashMap<String, usize>,
        role_ix: HashMap<String, usize>,
    }

    impl State<'_> {
        fn atom_var(&mut self, name: &str) -> usize {
            if let Some(s) = self.base.atom_sort(name) {
                return const_of(s);
            }
            if let Some(&i) = self.atom_ix.get(name) {
                return self.atoms[i].1;
            }
            let v = self.vars.fresh();
            self.atom_ix.insert(name.to_string(), self.atoms.len());
            self.atoms.push((name.to_string(), v));
            v
        }

        fn role_vars(&mut self, name: &str) -> (usize, usize) {
            if let Some(k) = self.base.role_kind(name) {
                return (const_of(k.domain()), const_of(k.range()));
            }
            if let Some(&i) = self.role_ix.get(name) {
                let (_, d, r) = self.roles[i];
                return (d, r);
            }
            let (d, r) = (self.vars.fresh(), self.vars.fresh());
            self.role_ix.insert(name.to_string(), self.roles.len());
            self.roles.push((name.to_string(), d, r));
            (d, r)
        }

        fn walk(&mut self, node: &RawNode) -> Result<usize, SortError> {
            match &node.raw {
                Raw::Top | Raw::Bot => Ok(self.vars.fresh()),
                Raw::Name(n) => Ok(self.atom_var(n)),
                Raw::Not(b) => self.walk(b),
                Raw::Bin(_, l, r) => {
                    let (lv, rv) = (self.walk(l)?, self.walk(r)?);
                    self.vars.unify(lv, rv, node.span)?;
                    Ok(lv)
                }
                Raw::Quant { role, body, .. } => {
                    let bv = self.walk(body)?;
                    let (d, r) = self.role_vars(&role.name);
                    if role.inverse {
                        self.vars.unify(d, OBJ, role.span)?;
                        self.vars.unify(r, ATTR, role.span)?;
                        self.vars.unify(bv, OBJ, body.span)?;
                        Ok(ATTR)
                    } else {
                        self.vars.unify(bv, r, body.span)?;
                        Ok(d)
                    }
                }
            }
        }
    }

    pub(super) fn infer(raw: &RawNode, base: &Signature) -> Result<Signature, SyntaxError> {
        let mut st = State {
            base,
            vars: Vars {
                parent: vec![OBJ, ATTR],
            },
            atoms: Vec::new(),
            roles: Vec::new(),
            atom_ix: HashMap::new(),
            role_ix: HashMap::new(),
        };
        st.walk(raw)?;
        let span = raw.span;
        // `has-X` names assign attributes to objects.
        for i in 0..st.roles.len() {
            let (ref name, d, r) = st.roles[i];
            let open = st.vars.find(d) != st.vars.find(r)
                && st.vars.value(d) != Some(Sort::Attribute)
                && st.vars.value(r) != Some(Sort::Object);
            if name.starts_with("has-") && open {
                st.vars.unify(d, OBJ, span)?;
                st.vars.unify(r, ATTR, span)?;
            }
        }
        // No role leads from attributes to objects, so these are forced.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..st.roles.len() {
                let (_, d, r) = st.roles[i];
                match (st.vars.value(d), st.vars.value(r)) {
                    (Some(Sort::Attribute), None) => st.vars.unify(r, ATTR, span)?,
                    (None, Some(Sort::Object)) => st.vars.unify(d, OBJ, span)?,
                    _ => continue,
                }
                changed = true;
            }
        }
        for i in 0..st.atoms.len() {
            let v = st.atoms[i].1;
            if st.vars.value(v).is_none() {
                st.vars.unify(v, OBJ, span)?;
            }
        }
        for i in 0..st.roles.len() {
            let (_, d, r) = st.roles[i];
            if st.vars.find(d) == st.vars.find(r) {
                if st.vars.value(d).is_none() {
                    st.vars.unify(d, OBJ, span)?;
                }
                continue;
            }
            match (st.vars.value(d), st.vars.value(r)) {
                (None, None) => {
                    st.vars.unify(d, OBJ, span)?;
                    st.vars.unify(r, ATTR, span)?;
                }
                (Some(Sort::Object), None) | (None, Some(Sort::Attribute)) => {
                    st.vars.unify(d, OBJ, span)?;
                    st.vars.unify(r, ATTR, span)?;
                }
                (Some(Sort::Attribute), None) => st.vars.unify(r, ATTR, span)?,
                (None, Some(Sort::Object)) => st.vars.unify(d, OBJ, span)?,
                _ => {}
            }
        }
        let mut sig = base.clone();
        for (name, d, r) in st.roles.clone() {
            let kind = match (st.vars.value(d), st.vars.value(r)) {
                (Some(Sort::Object), Some(Sort::Object)) => RoleKind::ObjObj,
                (Some(Sort::Attribute), Some(Sort::Attribute)) => RoleKind::AttrAttr,
                (Some(Sort::Object), Some(Sort::Attribute)) => RoleKind::Cross,
                _ => {
                    return Err(SortError {
                        span: Some(span),
                        expected: SortTag::Role(RoleKind::Cross),
                        found: SortTag::Role(RoleKind::CrossInverse),
                        message: format!("role `{name}` would need to lead from attributes to objects; use inv(..)"),
                    }
                    .into())
                }
            };
            sig.declare_role(&name, kind)?;
        }
        for (name, v) in st.atoms.clone() {
            let sort = st.vars.value(v).expect("atoms are defaulted above");
            sig.declare_atom(&name, sort)?;
        }
        Ok(sig)
    }
}

const DECLS: [&str; 7] = [
    "oconcept",
    "aconcept",
    "orole",
    "arole",
    "xrole",
    "oindividual",
    "aindividual",
];

fn declare(sig: &mut Signature, keyword: &str, name: &str, span: Span) -> Result<(), SyntaxError> {
    let r = match keyword {
        "oconcept" => sig.declare_atom(name, Sort::Object),
        "aconcept" => sig.declare_atom(name, Sort::Attribute),
        "orole" => sig.declare_role(name, RoleKind::ObjObj),
        "arole" => sig.declare_role(name, RoleKind::AttrAttr),
        "xrole" => sig.declare_role(name, RoleKind::Cross),
        "oindividual" => sig.declare_individual(name, Sort::Object),
        "aindividual" => sig.declare_individual(name, Sort::Attribute),
        _ => unreachable!("not a declaration keyword"),
    };
    r.map_err(|e| match e {
        SyntaxError::Duplicate { name, .. } => SyntaxError::Duplicate { name, span: Some(span) },
        other => other,
    })
}

fn with_span(e: SyntaxError, span: Span) -> SyntaxError {
    match e {
        SyntaxError::Sort(s) => SyntaxError::Sort(s.at(span)),
        other => other,
    }
}

/// Parses a knowledge base file. Declarations must precede use.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, SyntaxError> {
    let mut c = Cursor::new(text)?;
    let mut kb = KnowledgeBase::new(Signature::new());
    while !c.at_eof() {
        let start = c.span();
        if let (Tok::Ident(kw), Tok::Ident(_)) = (c.peek().clone(), c.peek_at(1).clone()) {
            if DECLS.contains(&kw.as_str()) {
                c.bump();
                loop {
                    let (name, span) = c.ident()?;
                    declare(&mut kb.sig, &kw, &name, span)?;
                    if !c.eat(&Tok::Comma) {
                        break;
                    }
                }
                c.expect(&Tok::Semi)?;
                continue;
            }
        }
        if let (Tok::Ident(name), Tok::Define) = (c.peek().clone(), c.peek_at(1)) {
            c.bump();
            c.bump();
            let raw = parse_arrow(&mut c)?;
            let (body, _) = resolve(&raw, &kb.sig)?;
            kb.add_definition(&name, body).map_err(|e| with_span(e, start))?;
            c.expect(&Tok::Semi)?;
            continue;
        }
        if let (Tok::Ident(name), Tok::LParen) = (c.peek().clone(), c.peek_at(1)) {
            if let Some(kind) = kb.sig.role_kind(&name) {
                c.bump();
                c.bump();
                let (subject, _) = c.ident()?;
                c.expect(&Tok::Comma)?;
                let (object, _) = c.ident()?;
                c.expect(&Tok::RParen)?;
                c.expect(&Tok::Semi)?;
                kb.add_assertion(Assertion::role(Role::new(name, kind), subject, object))
                    .map_err(|e| with_span(e, start))?;
                continue;
            }
        }
        let raw = parse_arrow(&mut c)?;
        let (lhs, _) = resolve(&raw, &kb.sig)?;
        match c.peek() {
            Tok::Sub => {
                c.bump();
                let raw = parse_arrow(&mut c)?;
                let (rhs, _) = resolve(&raw, &kb.sig)?;
                kb.add_inclusion(lhs, rhs).map_err(|e| with_span(e, start))?;
            }
            Tok::LParen => {
                c.bump();
                let (individual, _) = c.ident()?;
                c.expect(&Tok::RParen)?;
                kb.add_assertion(Assertion::concept(lhs, individual))
                    .map_err(|e| with_span(e, start))?;
            }
            other => {
                return Err(c.error(format!(
                    "expected `<=` or an assertion argument after concept, found {other}"
                )))
            }
        }
        c.expect(&Tok::Semi)?;
    }
    Ok(kb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ConceptExpr as E;

    fn gas_sig() -> Signature {
        Signature::new()
            .with_atom("Gas", Sort::Object)
            .with_atom("Tunnel", Sort::Object)
            .with_atom("GasComposition", Sort::Attribute)
            .with_atom("Temperature", Sort::Attribute)
            .with_role("has-composite", RoleKind::Cross)
            .with_role("has-temperature", RoleKind::Cross)
            .with_role("has-length", RoleKind::Cross)
    }

    #[test]
    fn gas_style_definition_body() {
        let e = parse_concept(
            "some has-composite GasComposition and some has-temperature Temperature",
            &gas_sig(),
        )
        .unwrap();
        assert_eq!(
            e,
            E::and(
                E::exists(Role::cross("has-composite"), E::attribute("GasComposition")),
                E::exists(Role::cross("has-temperature"), E::attribute("Temperature")),
            )
        );
    }

    #[test]
    fn top_and_inverse_roles() {
        assert_eq!(parse_concept("top", &gas_sig()).unwrap(), E::Top);
        assert_eq!(
            parse_concept("some inv(has-length) Tunnel", &gas_sig()).unwrap(),
            E::exists(Role::cross_inverse("has-length"), E::object("Tunnel"))
        );
    }

    #[test]
    fn precedence() {
        let sig = Signature::new()
            .with_atom("C", Sort::Object)
            .with_atom("D", Sort::Object)
            .with_atom("E", Sort::Object)
            .with_role("p", RoleKind::ObjObj);
        let (c, d, e) = (E::object("C"), E::object("D"), E::object("E"));
        assert_eq!(
            parse_concept("not C and D or E", &sig).unwrap(),
            E::or(E::and(E::not(c.clone()), d.clone()), e.clone())
        );
        assert_eq!(
            parse_concept("some p C and D", &sig).unwrap(),
            E::and(E::exists(Role::obj("p"), c.clone()), d.clone())
        );
        assert_eq!(
            parse_concept("C => D => E", &sig).unwrap(),
            E::implies(c.clone(), E::implies(d.clone(), e.clone()))
        );
        assert_eq!(parse_concept("C or D <=> E", &sig).unwrap(), E::iff(E::or(c, d), e));
    }

    #[test]
    fn unicode_dl_notation() {
        let sig = gas_sig();
        assert_eq!(
            parse_concept("∃has-composite.GasComposition ⊓ ¬Gas", &sig).unwrap(),
            E::and(
                E::exists(Role::cross("has-composite"), E::attribute("GasComposition")),
                E::not(E::object("Gas"))
            )
        );
    }

    #[test]
    fn mixed_sorts_report_a_span() {
        let err = parse_concept("Gas and\n  GasComposition", &gas_sig()).unwrap_err();
        match err {
            SyntaxError::Sort(e) => {
                let span = e.span.expect("span");
                assert_eq!((span.line, span.column), (1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_concept("Gas and", &gas_sig()) {
            Err(SyntaxError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inference_defaults() {
        let (e, sig) = parse_concept_inferring("some has-r A", &Signature::new()).unwrap();
        assert_eq!(sig.role_kind("has-r"), Some(RoleKind::Cross));
        assert_eq!(sig.atom_sort("A"), Some(Sort::Attribute));
        assert_eq!(e, E::exists(Role::cross("has-r"), E::attribute("A")));

        let (_, sig) = parse_concept_inferring("C and not C", &Signature::new()).unwrap();
        assert_eq!(sig.atom_sort("C"), Some(Sort::Object));

        let (_, sig) = parse_concept_inferring("some p C", &Signature::new()).unwrap();
        assert_eq!(sig.role_kind("p"), Some(RoleKind::ObjObj));

        let (_, sig) = parse_concept_inferring("some q top", &Signature::new()).unwrap();
        assert_eq!(sig.role_kind("q"), Some(RoleKind::Cross));

        let (_, sig) = parse_concept_inferring("some inv(r) C", &Signature::new()).unwrap();
        assert_eq!(sig.role_kind("r"), Some(RoleKind::Cross));
        assert_eq!(sig.atom_sort("C"), Some(Sort::Object));

        // Declarations and uses win over the naming convention.
        let (_, sig) = parse_concept_inferring("some has-p C", &Signature::new().with_atom("C", Sort::Object)).unwrap();
        assert_eq!(sig.role_kind("has-p"), Some(RoleKind::ObjObj));
        let (_, sig) = parse_concept_inferring(
            "some r (some has-q A)",
            &Signature::new().with_role("r", RoleKind::Cross),
        )
        .unwrap();
        assert_eq!(sig.role_kind("has-q"), Some(RoleKind::AttrAttr));
    }

    #[test]
    fn empty_kb() {
        assert!(parse_kb("").unwrap().is_empty());
        assert!(parse_kb("# only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn kb_statements() {
        let kb = parse_kb(
            "oconcept C; oconcept D; aconcept A; xrole has-r;\n\
             oindividual c1; aindividual u1; aindividual u2;\n\
             C := some has-r A;\n\
             D <= C;\n\
             has-r(c1, u1); has-r(c1, u2); A(u1); (not A)(u2); C(c1);",
        )
        .unwrap();
        assert_eq!(kb.definitions().len(), 1);
        assert_eq!(kb.inclusions().len(), 1);
        assert_eq!(kb.abox().len(), 5);
        assert_eq!(kb.abox()[3], Assertion::concept(E::not(E::attribute("A")), "u2"));
    }

    #[test]
    fn kb_sort_mismatch_on_assertion() {
        let err = parse_kb("oconcept Gas; aindividual u1; Gas(u1);").unwrap_err();
        assert!(matches!(err, SyntaxError::Sort(_)), "{err}");
    }

    #[test]
    fn kb_duplicates() {
        assert!(matches!(
            parse_kb("oconcept C; aconcept C;"),
            Err(SyntaxError::Duplicate { .. })
        ));
        assert!(matches!(
            parse_kb("oconcept C; C := top; C := bot;"),
            Err(SyntaxError::DuplicateDefinition { .. })
        ));
    }
}
