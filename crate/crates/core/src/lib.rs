//! Exact symbolic engine for multi-singularity Thom polynomials.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact rationals and truncated polynomial rings modelling
//!   Chow rings of products of projective spaces.
//! * [`chow`]: complete intersections in such products, their tangent classes
//!   and integration.
//! * [`maps`]: proper-map models with pullback, pushforward, quotient Chern
//!   classes and Landweber-Novikov classes.
//! * [`tpcore`]: residual polynomials, set-partition expansions of source and
//!   target Thom polynomials, evaluation and enumerative counts.
//! * [`interp`]: recovering unknown residual coefficients from known counts.
//! * [`oracle`]: an independent resultant-based double-point counter.
//! * [`verify`]: the reproducible check suites driven by the CLI.

pub mod algebra;
pub mod chow;
mod error;
pub mod interp;
pub mod maps;
pub mod oracle;
pub mod tpcore;
pub mod verify;

pub use algebra::{GradedClass, Monomial, Rational, Ring, RingSpec};
pub use chow::VarietyModel;
pub use error::{Error, Result};
pub use maps::{LnIndex, MapModel};
pub use tpcore::{MultiSingType, ResidualDb, Side, SymbolicExpr};
