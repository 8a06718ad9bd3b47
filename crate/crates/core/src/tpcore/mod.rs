//! Multi-singularity Thom polynomials: type registry, residual database,
//! partition expansions, extraction, Thom-Porteous classes and evaluation
//! on map models.

mod db;
mod evaluate;
mod expand;
mod partitions;
mod porteous;
mod series;
mod symbolic;
mod types;

pub use db::{format_record, parse_record, ResidualDb};
pub use evaluate::{count_points, count_points_source, evaluate, integrate};
pub use expand::{
    decomposable_part, denormalize, expand, expand_source, expand_target, expected_degree,
    extract_residual, normalization, normalize,
};
pub use partitions::{set_partitions, SetPartition};
pub use porteous::thom_porteous;
pub use series::{exponential_coefficient, exponential_series, verify_generating_series};
pub use symbolic::{Side, SymMonomial, Symbol, SymbolicExpr};
pub use types::{MultiSingType, SingType, TypeRegistry};
