use std::fmt;

use super::{Span, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Int(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Dot,
    /// `:=`
    Define,
    /// `<=`
    Sub,
    /// `=>`
    Implies,
    /// `<=>`
    Iff,
    Eq,
    And,
    Or,
    Not,
    Some,
    All,
    Top,
    Bot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Define => f.write_str("`:=`"),
            Tok::Sub => f.write_str("`<=`"),
            Tok::Implies => f.write_str("`=>`"),
            Tok::Iff => f.write_str("`<=>`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::And => f.write_str("`and`"),
            Tok::Or => f.write_str("`or`"),
            Tok::Not => f.write_str("`not`"),
            Tok::Some => f.write_str("`some`"),
            Tok::All => f.write_str("`all`"),
            Tok::Top => f.write_str("`top`"),
            Tok::Bot => f.write_str("`bot`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "and" => Tok::And,
        "or" => Tok::Or,
        "not" => Tok::Not,
        "some" => Tok::Some,
        "all" => Tok::All,
        "top" => Tok::Top,
        "bot" => Tok::Bot,
        _ => return None,
    })
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
/// The usual DL symbols are accepted as aliases of the keyword operators.
pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    let err = |line, column, message: String| SyntaxError::Parse { line, column, message };

    while let Some(&(start, c)) = chars.peek() {
        let span_at = |end: usize, line, column| Span {
            start,
            end,
            line,
            column,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        let (tok_line, tok_col) = (line, col);
        if is_ident_start(c) {
            let mut end = start;
            let mut word = String::new();
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                word.push(c);
                end = i + c.len_utf8();
                chars.next();
                col += 1;
            }
            if word.ends_with('-') {
                return Err(err(tok_line, tok_col, format!("name `{word}` may not end with `-`")));
            }
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token {
                tok,
                span: span_at(end, tok_line, tok_col),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            let mut digits = String::new();
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                digits.push(c);
                end = i + 1;
                chars.next();
                col += 1;
            }
            let n = digits
                .parse()
                .map_err(|_| err(tok_line, tok_col, format!("integer `{digits}` is too large")))?;
            out.push(Token {
                tok: Tok::Int(n),
                span: span_at(end, tok_line, tok_col),
            });
            continue;
        }
        if c == '"' {
            chars.next();
            col += 1;
            let mut s = String::new();
            let mut end = None;
            while let Some((i, c)) = chars.next() {
                col += 1;
                match c {
                    '"' => {
                        end = Some(i + 1);
                        break;
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => {
                            col += 1;
                            s.push(e);
                        }
                        Some((_, 'n')) => {
                            col += 1;
                            s.push('\n');
                        }
                        _ => return Err(err(line, col, "invalid escape in string".into())),
                    },
                    '\n' => return Err(err(tok_line, tok_col, "unterminated string".into())),
                    c => s.push(c),
                }
            }
            let Some(end) = end else {
                return Err(err(tok_line, tok_col, "unterminated string".into()));
            };
            out.push(Token {
                tok: Tok::Str(s),
                span: span_at(end, tok_line, tok_col),
            });
            continue;
        }

        chars.next();
        col += 1;
        let mut next_is = |want: char, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            if chars.peek().map(|&(_, c)| c) == Some(want) {
                chars.next();
                col += 1;
                true
            } else {
                false
            }
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            ':' if next_is('=', &mut chars) => Tok::Define,
            ':' => Tok::Colon,
            '=' if next_is('>', &mut chars) => Tok::Implies,
            '=' => Tok::Eq,
            '<' if next_is('=', &mut chars) => {
                if next_is('>', &mut chars) {
                    Tok::Iff
                } else {
                    Tok::Sub
                }
            }
            '⊓' => Tok::And,
            '⊔' => Tok::Or,
            '¬' => Tok::Not,
            '∃' => Tok::Some,
            '∀' => Tok::All,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            '→' => Tok::Implies,
            '↔' => Tok::Iff,
            '⊑' => Tok::Sub,
            '≡' => Tok::Define,
            other => return Err(err(tok_line, tok_col, format!("unexpected character `{other}`"))),
        };
        let end = chars.peek().map(|&(i, _)| i).unwrap_or(text.len());
        out.push(Token {
            tok,
            span: span_at(end, tok_line, tok_col),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span {
            start: text.len(),
            end: text.len(),
            line,
            column: col,
        },
    });
    Ok(out)
}
