//! Complete absolute associative algebras, represented as truncated towers.

mod completion;
mod convolution;
mod series;
mod tower;

pub use completion::{
    absolute_envelope, f_in_w, filtration_completion, res_abs_round_trip, restriction, Completion,
    InclusionCheck, RoundTrip,
};
pub use convolution::{
    convolution_absolute, gamma_direct, hom_space, hom_vector_to_map, map_to_hom_vector, mc_residual,
    partial, star, twisting_check, twisting_check_complete, Convolution, TwistingReport,
};
pub use series::{monad_laws, random_series, FormalSeries, MonadLawReport, TowerElement};
pub use tower::{ideal_closure, presented_tower, word_algebra, AlgebraTower, TowerDefect};

use crate::exactlin::ChainComplex;

/// `T̄^∧(V)` truncated at `N`.
pub fn free_complete_tensor(v: &ChainComplex, n: usize) -> crate::Result<AlgebraTower> {
    AlgebraTower::free(format!("T^({})", n), v, n)
}

#[cfg(test)]
mod tests;
