//! Poset-building constructions, each paired with its point map and a
//! verification helper.

pub mod formal_ball;
pub mod gdelta;
pub mod precompact;
pub mod product;

use thiserror::Error;

pub use formal_ball::{FormalBall, FormalBallPoset, Rational, RationalMetric};
pub use gdelta::{gdelta_mf_poset, gdelta_uf_poset, open_subspace_uf, Rank};
pub use precompact::precompact_open_poset;
pub use product::product_poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("product needs at least one factor")]
    EmptyFactorList,
    #[error("factor {0} is empty")]
    EmptyFactor(usize),
    #[error("set {0} is not open")]
    NotOpen(String),
    #[error("open sets are not descending at position {0}")]
    NotDescending(usize),
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("metric axiom violated: {0}")]
    MetricAxiomViolation(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
