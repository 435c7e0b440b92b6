//! Reader for the text form printed by `Display for Interpretation`.

use crate::syntax::lexer::Tok;
use crate::syntax::parser::Cursor;
use crate::syntax::{RoleKind, Signature, Sort, SyntaxError};

use super::{FunctionalityMode, Interpretation};

fn element(c: &mut Cursor, delta: usize, sigma: usize) -> Result<(Sort, usize), SyntaxError> {
    let (name, span) = c.ident()?;
    let err = |msg: String| SyntaxError::Parse {
        line: span.line,
        column: span.column,
        message: msg,
    };
    let (sort, digits) = match name.split_at(1) {
        ("x", d) => (Sort::Object, d),
        ("u", d) => (Sort::Attribute, d),
        _ => return Err(err(format!("`{name}` is not an element name (x1, u1, ...)"))),
    };
    let k: usize = digits
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| err(format!("`{name}` is not an element name (x1, u1, ...)")))?;
    let size = if sort == Sort::Object { delta } else { sigma };
    if k > size {
        return Err(err(format!("`{name}` is outside the {sort} domain of size {size}")));
    }
    Ok((sort, k - 1))
}

fn domain(c: &mut Cursor, keyword: &str, prefix: char) -> Result<usize, SyntaxError> {
    let (kw, span) = c.ident()?;
    if kw != keyword {
        return Err(SyntaxError::Parse {
            line: span.line,
            column: span.column,
            message: format!("expected `{keyword}:`, found `{kw}`"),
        });
    }
    c.expect(&Tok::Colon)?;
    let mut n = 0;
    while let Tok::Ident(name) = c.peek().clone() {
        if name != format!("{prefix}{}", n + 1) {
            return Err(c.error(format!("expected element `{prefix}{}`, found `{name}`", n + 1)));
        }
        c.bump();
        n += 1;
    }
    c.expect(&Tok::Semi)?;
    Ok(n)
}

/// Parses the text form of an interpretation. Symbol sorts come from `sig`
/// when declared there and from the element names otherwise. Symbols of
/// `sig` missing from the text get empty extensions.
pub fn parse_interpretation(
    text: &str,
    sig: &Signature,
    mode: FunctionalityMode,
) -> Result<Interpretation, SyntaxError> {
    let mut c = Cursor::new(text)?;
    let delta = domain(&mut c, "delta", 'x')?;
    let sigma = domain(&mut c, "sigma", 'u')?;
    let mut i = Interpretation::new(delta, sigma, mode);
    while !c.at_eof() {
        let (name, span) = c.ident()?;
        let err = |msg: String| SyntaxError::Parse {
            line: span.line,
            column: span.column,
            message: msg,
        };
        if name == "ind" && matches!(c.peek(), Tok::Ident(_)) {
            let (ind, _) = c.ident()?;
            c.expect(&Tok::Eq)?;
            let (sort, e) = element(&mut c, delta, sigma)?;
            if let Some(declared) = sig.individual_sort(&ind) {
                if declared != sort {
                    return Err(err(format!("individual `{ind}` is declared with {declared} sort")));
                }
            }
            i.set_individual(&ind, sort, e);
            c.expect(&Tok::Semi)?;
            continue;
        }
        c.expect(&Tok::Eq)?;
        c.expect(&Tok::LBrace)?;
        let is_role = *c.peek() == Tok::LParen || sig.role_kind(&name).is_some();
        if is_role {
            let mut pairs = Vec::new();
            while c.eat(&Tok::LParen) {
                let a = element(&mut c, delta, sigma)?;
                c.expect(&Tok::Comma)?;
                let b = element(&mut c, delta, sigma)?;
                c.expect(&Tok::RParen)?;
                pairs.push((a, b));
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            let inferred = pairs.first().map(|&((sa, _), (sb, _))| match (sa, sb) {
                (Sort::Object, Sort::Object) => Ok(RoleKind::ObjObj),
                (Sort::Attribute, Sort::Attribute) => Ok(RoleKind::AttrAttr),
                (Sort::Object, Sort::Attribute) => Ok(RoleKind::Cross),
                (Sort::Attribute, Sort::Object) => Err(err(format!(
                    "pairs of `{name}` go from attribute values to objects; list them on the cross role instead"
                ))),
            });
            let kind = match (sig.role_kind(&name), inferred) {
                (Some(k), _) => k,
                (None, Some(k)) => k?,
                (None, None) => return Err(err(format!("cannot tell the kind of undeclared role `{name}`"))),
            };
            i.declare_role(&name, kind);
            for ((sa, a), (sb, b)) in pairs {
                if sa != kind.domain() || sb != kind.range() {
                    return Err(err(format!("pair ({sa}, {sb}) does not fit {kind} `{name}`")));
                }
                i.roles.get_mut(&name).expect("declared").pairs.insert((a, b));
            }
        } else {
            let mut members = Vec::new();
            while !matches!(c.peek(), Tok::RBrace) {
                members.push(element(&mut c, delta, sigma)?);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            let sort = match (sig.atom_sort(&name), members.first()) {
                (Some(s), _) => s,
                (None, Some(&(s, _))) => s,
                (None, None) => return Err(err(format!("cannot tell the sort of undeclared concept `{name}`"))),
            };
            if let Some(&(s, _)) = members.iter().find(|(s, _)| *s != sort) {
                return Err(err(format!("concept `{name}` has {sort} sort but lists a {s} element")));
            }
            i.set_concept(&name, sort, members.into_iter().map(|(_, e)| e));
        }
        c.expect(&Tok::RBrace)?;
        c.expect(&Tok::Semi)?;
    }
    i.extend_to(sig);
    Ok(i)
}

impl Interpretation {
    /// Extends `self` with empty extensions for the symbols of `sig` it lacks.
    pub fn extend_to(&mut self, sig: &Signature) {
        for (name, sort) in sig.atoms() {
            self.declare_concept(name, sort);
        }
        for (name, kind) in sig.roles() {
            self.declare_role(name, kind);
        }
    }
}
