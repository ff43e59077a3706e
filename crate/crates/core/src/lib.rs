//! Poset spaces: filters on partial orders, the topologies they carry, and
//! the constructions and games built on them.

pub mod constructions;
pub mod filters;
pub mod finite_space;
pub mod generated;
pub mod poset;
pub mod topology;
pub mod enumerate;
pub mod games;
pub mod choquet_mf;
pub mod domain;
pub mod semi_topogenous;
pub mod text;
