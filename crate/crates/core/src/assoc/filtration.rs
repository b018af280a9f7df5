use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{DgAssocAlgebra, DgCoassocCoalgebra};
use crate::error::Result;
use crate::exactlin::{kernel, Echelon, GradedSpace, Vector, Word};

/// A filtration of a finite-basis space, each stage given by an echelonized spanning set.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub kind: String,
    ambient: Arc<GradedSpace>,
    first: usize,
    stages: Vec<Echelon>,
}

impl Filtration {
    pub fn new(kind: impl Into<String>, ambient: Arc<GradedSpace>, first: usize, stages: Vec<Echelon>) -> Self {
        Filtration {
            kind: kind.into(),
            ambient,
            first,
            stages,
        }
    }

    pub fn ambient(&self) -> &Arc<GradedSpace> {
        &self.ambient
    }

    /// Index of the first stored stage.
    pub fn first_index(&self) -> usize {
        self.first
    }

    pub fn last_index(&self) -> usize {
        self.first + self.stages.len() - 1
    }

    pub fn stage(&self, omega: usize) -> &Echelon {
        &self.stages[omega - self.first]
    }

    pub fn dim(&self, omega: usize) -> usize {
        self.stage(omega).rank()
    }

    pub fn contains(&self, omega: usize, v: &Vector) -> bool {
        self.stage(omega).contains(v)
    }

    pub fn dims(&self) -> Vec<(usize, usize)> {
        (self.first..=self.last_index()).map(|w| (w, self.dim(w))).collect()
    }

    /// Stage contents rendered with basis labels.
    pub fn rendered(&self) -> Vec<FiltrationStage> {
        (self.first..=self.last_index())
            .map(|w| FiltrationStage {
                index: w,
                dim: self.dim(w),
                basis: self
                    .stage(w)
                    .rows()
                    .map(|r| self.ambient.format_vector(r))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStage {
    pub index: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConilpotencyVerdict {
    /// `ℛ_degree = D`, least such.
    Conilpotent { degree: usize },
    /// The filtration has stabilized short of `D`.
    NotConilpotent { witness: String },
    /// Not exhausted within the bound, and not yet stable.
    Undetermined { bound: usize },
}

impl ConilpotencyVerdict {
    pub fn is_conilpotent(&self) -> bool {
        matches!(self, ConilpotencyVerdict::Conilpotent { .. })
    }
}

/// Coradical filtration `ℛ_ω = ker Δ̄^{ω+1}` (the ω-fold reduced coproduct) of the
/// coaugmentation coideal, for `1 ≤ ω ≤ bound`.
pub fn coradical_filtration(d: &DgCoassocCoalgebra, bound: usize) -> Result<(Filtration, ConilpotencyVerdict)> {
    let r = d.reduced()?;
    let n = r.dim();
    let bound = bound.max(1);
    let stages: Vec<Echelon> = crate::par::map_coarse(bound, |k| {
        let omega = k + 1;
        let mut ids: HashMap<Word, usize> = HashMap::new();
        let cols: Vec<Vector> = (0..n)
            .map(|c| {
                r.iterate_coproduct(c, omega + 1)
                    .into_iter()
                    .map(|(w, x)| {
                        let next = ids.len();
                        (*ids.entry(w).or_insert(next), x)
                    })
                    .collect()
            })
            .collect();
        Echelon::from_vectors(kernel(&cols).iter())
    });
    let filt = Filtration::new("coradical", r.space().clone(), 1, stages);
    let verdict = conilpotency_verdict(&filt, n, bound);
    Ok((filt, verdict))
}

fn conilpotency_verdict(filt: &Filtration, n: usize, bound: usize) -> ConilpotencyVerdict {
    if let Some(w) = (1..=bound).find(|&w| filt.dim(w) == n) {
        return ConilpotencyVerdict::Conilpotent { degree: w };
    }
    if n == 0 {
        return ConilpotencyVerdict::Conilpotent { degree: 0 };
    }
    let stable = (1..bound).any(|w| filt.dim(w) == filt.dim(w + 1)) || bound >= n;
    if stable {
        let last = filt.stage(bound);
        let witness = (0..n)
            .find(|&i| !last.contains(&Vector::basis(i)))
            .map(|i| filt.ambient().label(i).to_string())
            .unwrap_or_default();
        ConilpotencyVerdict::NotConilpotent { witness }
    } else {
        ConilpotencyVerdict::Undetermined { bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Nilpotency {
    /// Least `ω₀` with `F_{ω₀} = 0`.
    Nilpotent { degree: usize },
    ExceedsBound { bound: usize },
}

/// Spans of products of `k ≥ 1` elements, `k = 1..=max_len`, in `x`: `P_1 = X`,
/// `P_{k+1} = P_k · X`.
pub(crate) fn product_powers(b: &DgAssocAlgebra, max_len: usize) -> Vec<Echelon> {
    let n = b.dim();
    let mut out: Vec<Echelon> = Vec::with_capacity(max_len);
    let mut cur = Echelon::from_vectors((0..n).map(Vector::basis).collect::<Vec<_>>().iter());
    out.push(cur.clone());
    for _ in 1..max_len {
        let rows: Vec<Vector> = cur.rows().cloned().collect();
        let prods = crate::par::map_slice(&rows, |r| {
            (0..n)
                .map(|j| b.mul(r, &Vector::basis(j)))
                .filter(|v| !v.is_zero())
                .collect::<Vec<_>>()
        });
        let mut next = Echelon::new();
        for v in prods.into_iter().flatten() {
            next.insert(v);
        }
        let stable = next.rank() == cur.rank();
        cur = next;
        out.push(cur.clone());
        if stable {
            // P_{k+1} ⊆ P_k with equal rank: the chain has stabilized
            while out.len() < max_len {
                out.push(cur.clone());
            }
            break;
        }
    }
    out
}

/// `F_ω = span of products of ≥ ω+1 elements` of the augmentation ideal, `0 ≤ ω ≤ bound`.
pub fn canonical_filtration_f(b: &DgAssocAlgebra, bound: usize) -> Result<(Filtration, Nilpotency)> {
    let bbar = b.augmentation_ideal()?;
    let powers = product_powers(&bbar, bound + 1);
    let filt = Filtration::new("F", bbar.space().clone(), 0, powers);
    let nil = match (0..=bound).find(|&w| filt.dim(w) == 0) {
        Some(w) => Nilpotency::Nilpotent { degree: w },
        None => Nilpotency::ExceedsBound { bound },
    };
    Ok((filt, nil))
}

/// Checks that every coradical stage is a subcoalgebra closed under `d`:
/// `Δ̄(ℛ_ω) ⊆ Σ_{i+j=ω} ℛ_i ⊗ ℛ_j` and `d(ℛ_ω) ⊆ ℛ_ω`. Returns the first bad stage.
pub fn coradical_compatibility(d: &DgCoassocCoalgebra, filt: &Filtration) -> Result<Option<usize>> {
    let r = d.reduced()?;
    let n = r.dim();
    for w in filt.first_index()..=filt.last_index() {
        let mut target = Echelon::new();
        for i in 1..w {
            let j = w - i;
            for x in filt.stage(i).rows() {
                for y in filt.stage(j).rows() {
                    let mut v = Vector::new();
                    for (a, p) in x.iter() {
                        for (b, q) in y.iter() {
                            v.add_term(a * n + b, p * q);
                        }
                    }
                    target.insert(v);
                }
            }
        }
        for x in filt.stage(w).rows() {
            let dx = r.delta(x);
            let v: Vector = dx.into_iter().map(|((a, b), c)| (a * n + b, c)).collect();
            if !target.contains(&v) || !filt.contains(w, &r.differential().apply(x)) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Checks that every F stage is a two-sided ideal closed under `d`.
pub fn f_compatibility(b: &DgAssocAlgebra, filt: &Filtration) -> Result<Option<usize>> {
    let bbar = b.augmentation_ideal()?;
    for w in filt.first_index()..=filt.last_index() {
        let st = filt.stage(w);
        for x in st.rows() {
            if !st.contains(&bbar.differential().apply(x)) {
                return Ok(Some(w));
            }
            for j in 0..bbar.dim() {
                let e = Vector::basis(j);
                if !st.contains(&bbar.mul(x, &e)) || !st.contains(&bbar.mul(&e, x)) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
