//! Trivial-representation multiplicities in rank-selected homology of the
//! partition lattice, computed as flag h-vectors of quotient complexes
//! `Δ(Π_n)/S_λ`, together with the bar-insertion model of their facets.

pub mod acceptance;
pub mod bars;
pub mod cache;
pub mod chain;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod flag;
pub mod order;
pub mod partition;
pub mod shape;
pub mod vanish;

pub use bars::{CoverLabel, DescentWord, InsertionFacet};
pub use chain::{Basis, ChainType, RankSet};
pub use error::{Error, Result};
pub use flag::FlagTable;
pub use order::BlockOrder;
pub use shape::{BlockContent, Shape};
