//! Finite two-domain interpretations and the extension of concepts in them.

mod eval;
mod interp;
mod text;

pub(crate) use eval::pair_sort;
pub use eval::{
    expr_sort, extension, extension_in, satisfies_assertion, satisfies_formula, satisfies_kb, EvalError, Reading,
};
pub use interp::{element_name, validate_interpretation, ElementSet, FunctionalityMode, Interpretation, Violation};
pub use text::parse_interpretation;
