//! Classical and complete Bar/Cobar constructions for associative (co)algebras.
//!
//! Both directions share one engine: a [`LocalOperator`] holding the
//! component of the differential on cogenerators (resp. generators), extended
//! as a coderivation of the tensor coalgebra (resp. derivation of the tensor
//! algebra). Signs come only from the suspension maps and the Koszul rule.

mod adjunction;

pub use adjunction::{
    algebra_map_from_twisting, bar_counit_quasi_iso, coalgebra_map_from_twisting, complete_round_trip,
    round_trip, universal_twisting, QuasiIsoReport, RoundTripReport,
};

use std::sync::Arc;

use serde::Serialize;

use crate::absolute::{AlgebraTower, FormalSeries};
use crate::assoc::{ConilpotencyVerdict, DgAssocAlgebra, DgCoassocCoalgebra, PairTerms};
use crate::error::{Error, Result};
use crate::exactlin::{check_square_zero, ChainComplex, GradedMap, GradedSpace, LocalOperator, PrefixSign, Rational, WordSpace};

/// Deliberate sign errors, used to show that the law checks detect them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMutation {
    #[default]
    None,
    /// Extension sign ignores the prefix.
    PrefixIgnored,
    /// Extension sign uses prefix length instead of prefix degree.
    PrefixLength,
    /// Extension sign flipped at the last position.
    FlipLast,
    /// Suspension sign `(-1)^{|sa|}` dropped from the quadratic component.
    SuspensionDropped,
    /// `d₁ + d₂` instead of `d₁ − d₂`.
    SumOfParts,
    /// `d_{sV} = s d s⁻¹` without the sign.
    UnsignedShift,
}

impl SignMutation {
    pub const ALL: [SignMutation; 6] = [
        SignMutation::PrefixIgnored,
        SignMutation::PrefixLength,
        SignMutation::FlipLast,
        SignMutation::SuspensionDropped,
        SignMutation::SumOfParts,
        SignMutation::UnsignedShift,
    ];

    fn prefix(self) -> PrefixSign {
        match self {
            SignMutation::PrefixIgnored => PrefixSign::Ignore,
            SignMutation::PrefixLength => PrefixSign::Length,
            SignMutation::FlipLast => PrefixSign::FlipLast,
            _ => PrefixSign::Koszul,
        }
    }

    fn shift_sign(self) -> Rational {
        if self == SignMutation::UnsignedShift {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    fn combine(self) -> Rational {
        if self == SignMutation::SumOfParts {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Sign of `s⁻¹` passing an element of degree `deg`.
    fn suspension(self, deg: i64) -> Rational {
        if self == SignMutation::SuspensionDropped {
            Rational::one()
        } else {
            Rational::sign(deg)
        }
    }
}

/// Linear part of a shifted differential: `d_{s^k V} = (-1)^k s^k d s^{-k}`.
fn linear_part(d: &GradedMap, m: SignMutation) -> LocalOperator {
    let mut op = LocalOperator::new(-1).with_prefix_sign(m.prefix());
    let c = m.shift_sign();
    for i in 0..d.source().dim() {
        for (j, x) in d.column(i).iter() {
            op.add_rule(vec![i], vec![j], &c * x);
        }
    }
    op
}

fn assemble(d1: &LocalOperator, d2: &LocalOperator, m: SignMutation) -> LocalOperator {
    let mut d = d1.clone();
    d.merge(d2, &m.combine());
    d
}

/// The components `d₁`, `d₂` and `d = d₁ − d₂` as maps on a word space.
#[derive(Clone, Debug)]
pub struct Differentials {
    pub d1: GradedMap,
    pub d2: GradedMap,
    pub d: GradedMap,
}

fn extend_all(ws: &WordSpace, d1: &LocalOperator, d2: &LocalOperator, m: SignMutation) -> Result<Differentials> {
    Ok(Differentials {
        d1: d1.extend(ws, ws)?,
        d2: d2.extend(ws, ws)?,
        d: assemble(d1, d2, m).extend(ws, ws)?,
    })
}

/// `Bar(B)`: the tensor coalgebra on `sB̄`, words of length `1..=N`,
/// deconcatenation coproduct, and the coderivation `d₁ − d₂`.
#[derive(Clone, Debug)]
pub struct BarCoalgebra {
    pub words: WordSpace,
    pub coalgebra: DgCoassocCoalgebra,
    pub parts: Differentials,
}

fn bar_operators(bbar: &DgAssocAlgebra, m: SignMutation) -> (LocalOperator, LocalOperator) {
    let d1 = linear_part(bbar.differential(), m);
    let mut d2 = LocalOperator::new(-1).with_prefix_sign(m.prefix());
    // s∘μ∘(s⁻¹⊗s⁻¹): s⁻¹ passes sa, giving (-1)^{|sa|}
    for (&(a, b), v) in bbar.product() {
        let sign = m.suspension(bbar.space().degree(a) + 1);
        for (j, x) in v.iter() {
            d2.add_rule(vec![a, b], vec![j], &sign * x);
        }
    }
    (d1, d2)
}

pub(crate) fn deconcatenation(ws: &WordSpace) -> Vec<PairTerms> {
    (0..ws.dim())
        .map(|i| {
            ws.deconcatenation(i)
                .into_iter()
                .map(|p| (p, Rational::one()))
                .collect()
        })
        .collect()
}

/// The differential of `Bar(B)` on words of length ≤ N, without checking `d² = 0`.
pub fn bar_differential(b: &DgAssocAlgebra, n: usize, m: SignMutation) -> Result<(WordSpace, Differentials)> {
    let bbar = b.augmentation_ideal()?;
    let letters = Arc::new(bbar.space().suspend(1));
    let ws = WordSpace::new(letters, n);
    let (d1, d2) = bar_operators(&bbar, m);
    let parts = extend_all(&ws, &d1, &d2, m)?;
    Ok((ws, parts))
}

/// `Bar(B)` with a sign mutation and no `d² = 0` check, for mutation testing.
pub fn bar_mutated(b: &DgAssocAlgebra, n: usize, m: SignMutation) -> Result<BarCoalgebra> {
    let (words, parts) = bar_differential(b, n, m)?;
    let coalgebra = DgCoassocCoalgebra::new_unchecked(
        format!("Bar({})", b.name()),
        parts.d.clone(),
        deconcatenation(&words),
        None,
        None,
    )?;
    Ok(BarCoalgebra {
        words,
        coalgebra,
        parts,
    })
}

pub fn bar(b: &DgAssocAlgebra, n: usize) -> Result<BarCoalgebra> {
    let (words, parts) = bar_differential(b, n, SignMutation::None)?;
    check_square_zero(&parts.d)?;
    let coalgebra = DgCoassocCoalgebra::new(
        format!("Bar({})", b.name()),
        parts.d.clone(),
        deconcatenation(&words),
        None,
        None,
    )?;
    Ok(BarCoalgebra {
        words,
        coalgebra,
        parts,
    })
}

/// `Ω(D)`: the tensor algebra on `s⁻¹D̄`, words of length `1..=N`,
/// concatenation product, and the derivation `d₁ − d₂`.
#[derive(Clone, Debug)]
pub struct CobarAlgebra {
    pub words: WordSpace,
    pub algebra: DgAssocAlgebra,
    pub parts: Differentials,
}

fn cobar_operators(d: &DgCoassocCoalgebra, m: SignMutation) -> (LocalOperator, LocalOperator) {
    let d1 = linear_part(d.differential(), m);
    let mut d2 = LocalOperator::new(-1).with_prefix_sign(m.prefix());
    // (s⁻¹⊗s⁻¹)∘Δ∘s: the second s⁻¹ passes x, giving (-1)^{|x|}
    for (c, terms) in d.coproduct().iter().enumerate() {
        for (&(x, y), k) in terms {
            let sign = m.suspension(d.space().degree(x));
            d2.add_rule(vec![c], vec![x, y], &sign * k);
        }
    }
    (d1, d2)
}

fn require_conilpotent(d: &DgCoassocCoalgebra, n: usize) -> Result<()> {
    let bound = n.max(d.dim() + 1);
    match crate::assoc::coradical_filtration(d, bound)?.1 {
        ConilpotencyVerdict::Conilpotent { .. } => Ok(()),
        ConilpotencyVerdict::NotConilpotent { witness } => Err(Error::NotConilpotent { witness, bound }),
        ConilpotencyVerdict::Undetermined { .. } => Err(Error::NotConilpotent {
            witness: "(filtration not exhausted)".into(),
            bound,
        }),
    }
}

fn cobar_words(dbar: &DgCoassocCoalgebra, n: usize, m: SignMutation) -> Result<(WordSpace, LocalOperator, LocalOperator)> {
    let letters = Arc::new(dbar.space().suspend(-1));
    let ws = WordSpace::new(letters, n);
    let (d1, d2) = cobar_operators(dbar, m);
    Ok((ws, d1, d2))
}

/// The differential of `Ω(D)` truncated at word length N, without checks.
pub fn cobar_differential(d: &DgCoassocCoalgebra, n: usize, m: SignMutation) -> Result<(WordSpace, Differentials)> {
    let dbar = d.reduced()?;
    let (ws, d1, d2) = cobar_words(&dbar, n, m)?;
    let parts = extend_all(&ws, &d1, &d2, m)?;
    Ok((ws, parts))
}

pub fn cobar(d: &DgCoassocCoalgebra, n: usize) -> Result<CobarAlgebra> {
    let dbar = d.reduced()?;
    require_conilpotent(&dbar, n)?;
    let (words, parts) = cobar_differential(d, n, SignMutation::None)?;
    check_square_zero(&parts.d)?;
    let algebra = word_product_algebra(format!("Ω({})", d.name()), &words, parts.d.clone())?;
    Ok(CobarAlgebra {
        words,
        algebra,
        parts,
    })
}

fn word_product_algebra(name: String, ws: &WordSpace, d: GradedMap) -> Result<DgAssocAlgebra> {
    let mut product = crate::assoc::Bilinear::new();
    for ((a, b), c) in ws.concatenation() {
        product.insert((a, b), crate::exactlin::Vector::basis(c));
    }
    DgAssocAlgebra::new(name, d, product, None)
}

/// `Ω̂(C)` for any coalgebra: the free complete tensor algebra on `s⁻¹C`
/// (reduced when `C` is coaugmented) with the derivation `d₁ − d₂`, as a tower.
pub fn complete_cobar(c: &DgCoassocCoalgebra, n: usize) -> Result<AlgebraTower> {
    complete_cobar_mutated(c, n, SignMutation::None)
}

pub fn complete_cobar_mutated(c: &DgCoassocCoalgebra, n: usize, m: SignMutation) -> Result<AlgebraTower> {
    let cbar = c.reduced()?;
    let (ws, d1, d2) = cobar_words(&cbar, n, m)?;
    let op = assemble(&d1, &d2, m);
    let top = op.extend(&ws, &ws)?;
    check_square_zero(&top)?;
    AlgebraTower::from_words(format!("Ω^({})", c.name()), &ws, &op)
}

/// Top-layer differential of `Ω̂(C)`, unchecked.
pub fn complete_cobar_differential(c: &DgCoassocCoalgebra, n: usize, m: SignMutation) -> Result<(WordSpace, Differentials)> {
    cobar_differential(c, n, m)
}

/// `B̂(A)` restricted to the conilpotent core: the tensor coalgebra on
/// `s(A/W_N)`, words of length ≤ N, with `d₂` extending `s∘γ_A∘(s⁻¹⊗s⁻¹)` on
/// length-two words (the only component of the associative twisting morphism).
pub fn complete_bar_conil(a: &AlgebraTower, n: usize) -> Result<BarCoalgebra> {
    let (words, parts) = complete_bar_differential(a, n, SignMutation::None)?;
    check_square_zero(&parts.d)?;
    let coalgebra = DgCoassocCoalgebra::new(
        format!("B^({})", a.name()),
        parts.d.clone(),
        deconcatenation(&words),
        None,
        None,
    )?;
    Ok(BarCoalgebra {
        words,
        coalgebra,
        parts,
    })
}

pub fn complete_bar_differential(a: &AlgebraTower, n: usize, m: SignMutation) -> Result<(WordSpace, Differentials)> {
    let top = a.top();
    let sp: &Arc<GradedSpace> = top.space();
    let letters = Arc::new(sp.suspend(1));
    let ws = WordSpace::new(letters, n);
    let d1 = linear_part(top.differential(), m);
    let mut d2 = LocalOperator::new(-1).with_prefix_sign(m.prefix());
    for x in 0..sp.dim() {
        for y in 0..sp.dim() {
            let g = a.gamma(&FormalSeries::from_terms([(vec![x, y], Rational::one())]))?;
            let v = g.last().expect("towers are nonempty");
            let sign = m.suspension(sp.degree(x) + 1);
            for (j, c) in v.iter() {
                d2.add_rule(vec![x, y], vec![j], &sign * c);
            }
        }
    }
    let parts = extend_all(&ws, &d1, &d2, m)?;
    Ok((ws, parts))
}

/// Homology of a construction's underlying complex.
pub fn homology_of(d: &GradedMap) -> Result<crate::exactlin::Homology> {
    Ok(ChainComplex::new(d.clone())?.homology())
}

#[cfg(test)]
mod tests;
