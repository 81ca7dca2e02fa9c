//! McKay-Megill-Pavicic hypergraphs (MMPHs): the string format, structural
//! operations, 0/1 assignment search, exact coordinatizations and random
//! generation of critical non-KS sets.
//!
//! ```
//! use mmph::{lang::parse_mmph, solver::{classify, Kind}};
//!
//! let bug = parse_mmph("123,34,45,567,78,81,26.", None).unwrap();
//! assert_eq!((bug.k(), bug.l(), bug.dimension()), (8, 7, 3));
//! assert_eq!(classify(&bug).kind, Kind::NonKsNbmmph);
//! ```

pub mod coord;
pub mod error;
pub mod generation;
mod hypergraph;
pub mod label;
pub mod lang;
pub mod solver;
pub mod structure;

pub use hypergraph::Mmph;
pub use label::VertexLabel;
