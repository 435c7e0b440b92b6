//! Reasoning toolkit for KEDL, a two-sorted extension of ALC with object
//! concepts, attribute concepts, three role families and inverse cross roles.

pub mod km;
pub mod oracle;
pub mod semantics;
pub mod syntax;
pub mod tableau;
