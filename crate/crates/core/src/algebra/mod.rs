//! Structure-constant algebras over a field and finite rings over `⊕ Z/m_i`.

mod finite;
mod json;
mod structure;

pub use finite::{Elements, FiniteRing, DEFAULT_ENUMERATION_BOUND};
pub use json::AnyRing;
pub use structure::{Algebra, Element, Violation, ViolationKind};
