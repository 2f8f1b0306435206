//! Predimension calculus, class membership, strong amalgamation and finite
//! approximations of the generic geometry for 3-sorted incidence graphs.

pub mod amalgam;
pub mod ample;
pub mod builder;
pub mod canon;
pub mod census;
pub mod cli;
pub mod config;
pub mod error;
pub mod gen;
pub mod graph;
pub mod kclass;
pub mod lattice;
pub mod lemmas;
pub mod local;
pub mod mu;
pub mod predim;
pub mod report;
pub mod verdict;

pub use config::{Budgets, Config, StrongnessMode};
pub use error::{Error, Result};
pub use graph::{Flag, Id, IdSet, Sort, TriGraph};
pub use verdict::{Certificate, KCondition, Verdict};
