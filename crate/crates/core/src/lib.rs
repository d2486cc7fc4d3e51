//! Exact classical and quantum r-matrices attached to generalized
//! Belavin–Drinfeld triples of sl(n), computed in the vector representation.

pub mod error;
pub mod exactring;

pub use error::{Error, Result};
pub mod bdtriples;
pub mod classical;
pub mod io;
pub mod linalg;
pub mod liecore;
pub mod quantum;
pub mod suites;
