//! Exact rational graded linear algebra.

mod complex;
mod linalg;
mod map;
mod rational;
mod space;
pub mod tensor;
pub mod words;

pub use complex::{
    chain_map_defect, check_square_zero, induced_iso_on_homology, ChainComplex, Homology,
    HomologyDegree,
};
pub(crate) use complex::positions;
pub use linalg::{kernel, rank, solve, Echelon};
pub use map::GradedMap;
pub use rational::{Rational, RationalParseError};
pub use space::{BasisElement, GradedSpace, Vector};
pub use tensor::{koszul_sign, swap, tensor_maps, tensor_spaces};
pub use words::{LocalOperator, PrefixSign, Word, WordSpace};
