use serde::Serialize;

use super::AlgebraTower;
use crate::assoc::{algebra_mismatch, canonical_filtration_f, product_powers, DgAssocAlgebra, Filtration, Nilpotency};
use crate::error::Result;
use crate::exactlin::{GradedMap, Rational};

/// Canonical filtration, completion tower and comparison map of an algebra.
#[derive(Clone, Debug)]
pub struct Completion {
    /// `W_ω` for `0 ≤ ω ≤ N`, on the augmentation ideal.
    pub filtration: Filtration,
    pub tower: AlgebraTower,
    /// `φ_ω: A → A/W_ω`.
    pub phi: Vec<GradedMap>,
    /// Whether `φ` is an isomorphism onto the limit, decided exactly: the
    /// chain `W_ω` stabilizes within `dim A + 1` steps, and the algebra is
    /// complete iff it stabilizes at zero.
    pub complete: bool,
}

pub fn filtration_completion(a: &DgAssocAlgebra, n: usize) -> Result<Completion> {
    let abar = a.augmentation_ideal()?;
    let (filtration, _) = canonical_filtration_f(a, n)?;
    let depth = n.max(abar.dim() + 1);
    let powers = product_powers(&abar, depth + 1);
    let complete = powers[depth].rank() == 0;
    // layer ω is A/W_ω = A/P_{ω+1}
    let ideals: Vec<_> = (1..=n).map(|w| powers[w].clone()).collect();
    let (tower, phi) = AlgebraTower::from_filtered_with_maps(format!("Abs({})", a.name()), &abar, &ideals)?;
    Ok(Completion {
        filtration,
        tower,
        phi,
        complete,
    })
}

/// `Abs(B)`: the tower of quotients `B/W_ω`.
pub fn absolute_envelope(b: &DgAssocAlgebra, n: usize) -> Result<AlgebraTower> {
    Ok(filtration_completion(b, n)?.tower)
}

/// `Res(A)`: the algebra `A/W_N` with its truncated product.
pub fn restriction(a: &AlgebraTower) -> DgAssocAlgebra {
    a.top().clone().with_name(format!("Res({})", a.name()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    pub omega: usize,
    pub holds: bool,
}

/// `F_ω Res(A) ⊆ W_ω A` for `1 ≤ ω ≤ N`, where `W_ω A` is the kernel of
/// `A/W_N → A/W_ω`.
pub fn f_in_w(a: &AlgebraTower) -> Vec<InclusionCheck> {
    let n = a.truncation();
    let res = restriction(a);
    let powers = product_powers(&res, n + 1);
    (1..=n)
        .map(|w| {
            let p = a.projection_between(n, w);
            let holds = powers[w].rows().all(|r| p.apply(r).is_zero());
            InclusionCheck { omega: w, holds }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub algebra: String,
    pub nilpotency: Nilpotency,
    pub restricted_nilpotency: Nilpotency,
    /// First structure constant where `Res(Abs(B))` differs from `B`.
    pub mismatch: Option<String>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.nilpotency == self.restricted_nilpotency
    }
}

/// `Res(Abs(B)) ≅ B` for nilpotent `B` of degree ≤ N, with the same nilpotency degree.
pub fn res_abs_round_trip(b: &DgAssocAlgebra, n: usize) -> Result<RoundTrip> {
    let bbar = b.augmentation_ideal()?;
    let res = restriction(&absolute_envelope(b, n)?);
    let (_, nil) = canonical_filtration_f(&bbar, n)?;
    let (_, nil_res) = canonical_filtration_f(&res, n)?;
    let signs = vec![Rational::one(); bbar.dim()];
    let mismatch = if res.dim() != bbar.dim() {
        Some(format!("dimension {} vs {}", res.dim(), bbar.dim()))
    } else {
        algebra_mismatch(&bbar, &res, &signs)
    };
    Ok(RoundTrip {
        algebra: b.name().to_string(),
        nilpotency: nil,
        restricted_nilpotency: nil_res,
        mismatch,
    })
}
