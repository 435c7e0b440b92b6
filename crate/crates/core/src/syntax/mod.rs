//! Concept syntax: the sorted AST, sort checking, parsing and printing,
//! arrow desugaring and negation normal form.

mod ast;
mod kb;
pub(crate) mod lexer;
mod nnf;
pub(crate) mod parser;
mod print;
pub mod sort;

pub use ast::{invert_role, Atom, ConceptExpr, Role, RoleKind, Signature, Sort};
pub use kb::{Assertion, Definition, Formula, Inclusion, KnowledgeBase};
pub use nnf::{desugar, to_nnf};
pub use parser::{parse_concept, parse_concept_as, parse_concept_inferring, parse_kb};
pub use sort::{check_sort, check_sort_as, infer_sort, SortError, SortTag};

/// Byte range plus 1-based line/column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("{}name `{name}` is declared twice", span.map(|s| format!("{}:{}: ", s.line, s.column)).unwrap_or_default())]
    Duplicate { name: String, span: Option<Span> },
    #[error("concept `{name}` is defined twice")]
    DuplicateDefinition { name: String },
    #[error("definition of `{name}` is cyclic")]
    CyclicDefinition { name: String },
    #[error("`{role}` is an {kind} and has no inverse")]
    NotInvertible { role: String, kind: RoleKind },
}
