//! Exact rational arithmetic and truncated multigraded polynomial rings.

mod class;
pub mod rational;
mod ring;
pub mod text;

pub(crate) use class::same_ring;
pub use class::GradedClass;
pub use rational::Rational;
pub use ring::{Generator, Monomial, Ring, RingSpec};
