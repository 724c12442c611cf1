//! Decision procedures, constructive witnesses and a small-rank
//! representation-theory oracle for diagonal locally simple Lie algebras.

pub mod branching;
pub mod classify;
pub mod constructor;
pub mod exhaustions;
pub mod steinitz;
pub mod sweep;
pub mod text;

pub use text::ParseError;
