//! Linear dualities between conilpotent coalgebras and complete algebras, and
//! executable checks of the square they form with Bar/Cobar.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::absolute::AlgebraTower;
use crate::assoc::{
    algebra_mismatch, coalgebra_mismatch, coradical_filtration, dualize_algebra, dualize_coalgebra,
    ConilpotencyVerdict, DgAssocAlgebra, DgCoassocCoalgebra,
};
use crate::barcobar::{bar, bar_differential, cobar, complete_bar_conil, complete_cobar, deconcatenation, SignMutation};
use crate::error::{Error, Result};
use crate::exactlin::{kernel, Echelon, GradedSpace, Rational, Vector, WordSpace};

/// `D ↦ (ℛ_ω D̄)*`: layer `ω` is the dual of the `ω`-th coradical stage, i.e.
/// `D̄*` modulo the annihilator of `ℛ_ω`.
pub fn dual_conilpotent_to_tower(d: &DgCoassocCoalgebra, n: usize) -> Result<AlgebraTower> {
    let dbar = d.reduced()?;
    let (filt, verdict) = coradical_filtration(&dbar, n.max(dbar.dim() + 1))?;
    if let ConilpotencyVerdict::NotConilpotent { witness } = verdict {
        return Err(Error::NotConilpotent { witness, bound: n });
    }
    let dual = dualize_coalgebra(&dbar)?;
    let ideals: Vec<Echelon> = (1..=n)
        .map(|w| annihilator(filt.stage(w.min(filt.last_index())), dbar.dim()))
        .collect();
    AlgebraTower::from_filtered(format!("({})*", d.name()), &dual, &ideals)
}

/// Functionals vanishing on a subspace, in the dual basis.
fn annihilator(sub: &Echelon, dim: usize) -> Echelon {
    let rows: Vec<&Vector> = sub.rows().collect();
    let columns: Vec<Vector> = (0..dim)
        .map(|i| {
            rows.iter()
                .enumerate()
                .filter_map(|(r, v)| v.coefficient(i).map(|c| (r, c.clone())))
                .collect()
        })
        .collect();
    Echelon::from_vectors(&kernel(&columns))
}

/// `A^∨ = colim (A/W_ω)*`; on a tower truncated at `N` this is the dual of the top layer.
pub fn topological_dual(a: &AlgebraTower) -> Result<DgCoassocCoalgebra> {
    Ok(dualize_algebra(a.top())?.with_name(format!("({})^∨", a.name())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareMode {
    /// `Bar(C*) ≅ (Ω̂ C)^∨`.
    Mate,
    /// `Ω̂(B*) ≅ (Bar B)*` for finite-dimensional `B`.
    Fd,
    /// `(Ω D)* ≅ B̂(D*)` on conilpotent cores.
    ConilCore,
}

impl SquareMode {
    pub fn name(self) -> &'static str {
        match self {
            SquareMode::Mate => "mate",
            SquareMode::Fd => "fd",
            SquareMode::ConilCore => "conil-core",
        }
    }
}

/// Per weight, dimensions by degree.
pub type DimTable = BTreeMap<usize, BTreeMap<i64, usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub mode: SquareMode,
    pub input: String,
    pub max_weight: usize,
    pub left: String,
    pub right: String,
    pub left_dims: DimTable,
    pub right_dims: DimTable,
    pub identification: String,
    /// First structure constant that differs; `None` means the square commutes.
    pub difference: Option<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.difference.is_none()
    }
}

fn dim_table(ws: &WordSpace, space: &GradedSpace) -> DimTable {
    let mut t = DimTable::new();
    for i in 0..ws.dim() {
        *t.entry(ws.weight(i)).or_default().entry(space.degree(i)).or_default() += 1;
    }
    t
}

/// Signs identifying the word `x_1|…|x_k` on one side with `y_1|…|y_k` on the
/// other, where letter `x_i` built on the basis element `c_i` of `base`
/// carries `(-1)^{|c_i|+offset}`:
/// `Π_i (-1)^{|c_i|+offset} · (-1)^{Σ_{i<j} |x_i||x_j|}`.
pub fn word_signs(ws: &WordSpace, base: &GradedSpace, offset: i64) -> Vec<Rational> {
    (0..ws.dim())
        .map(|i| {
            let w = ws.word(i);
            let degs = ws.letter_degrees(w);
            let mut e: i64 = w.iter().map(|&c| base.degree(c) + offset).sum();
            for a in 0..w.len() {
                for b in a + 1..w.len() {
                    e += degs[a] * degs[b];
                }
            }
            Rational::sign(e)
        })
        .collect()
}

const IDENTIFICATION_COALGEBRA: &str =
    "words in the input basis; s(c*) ↔ (s⁻¹c)* with sign (-1)^{|c|}, words signed by the Koszul rule";
const IDENTIFICATION_ALGEBRA: &str =
    "words in the input basis; s⁻¹(b*) ↔ (sb)* with sign (-1)^{|b|+1}, words signed by the Koszul rule";

pub fn duality_square_check(mode: SquareMode, input: &Input, n: usize) -> Result<DualityReport> {
    match (mode, input) {
        (SquareMode::Mate, Input::Coalgebra(c)) => {
            let cbar = c.reduced()?;
            let left = bar(&dualize_coalgebra(&cbar)?, n)?;
            let right = topological_dual(&complete_cobar(c, n)?)?;
            let signs = word_signs(&left.words, cbar.space(), 0);
            let difference = coalgebra_mismatch(&left.coalgebra, &right, &signs);
            Ok(report(mode, c.name(), n, "Bar(C*)", "(Ω^ C)^∨", &left.words, right.space(), difference))
        }
        (SquareMode::ConilCore, Input::Coalgebra(d)) => {
            let dbar = d.reduced()?;
            let omega = cobar(d, n)?;
            let left = dualize_algebra(&omega.algebra)?;
            let right = complete_bar_conil(&dual_conilpotent_to_tower(d, n)?, n)?;
            let signs = word_signs(&omega.words, dbar.space(), 0);
            let difference = coalgebra_mismatch(&right.coalgebra, &left, &signs);
            Ok(report(mode, d.name(), n, "(Ω D)*", "B^(D*)", &omega.words, left.space(), difference))
        }
        (SquareMode::Fd, Input::Algebra(b)) => {
            let bbar = b.augmentation_ideal()?;
            let left = complete_cobar(&dualize_algebra(&bbar)?, n)?;
            let barb = bar(b, n)?;
            let right = dualize_coalgebra(&barb.coalgebra)?;
            let ws = WordSpace::new(Arc::new(bbar.space().dual().suspend(-1)), n);
            let signs = word_signs(&barb.words, bbar.space(), 1);
            let difference = algebra_mismatch(left.top(), &right, &signs);
            Ok(report(mode, b.name(), n, "Ω^(B*)", "(Bar B)*", &ws, right.space(), difference))
        }
        _ => Err(Error::InvalidStructure(format!(
            "square-check {} does not apply to this input",
            mode.name()
        ))),
    }
}

/// Mate square with a deliberately mis-signed bar differential on the left;
/// returns the first difference (`None` would mean the mutation is invisible).
pub fn mate_difference_with(c: &DgCoassocCoalgebra, n: usize, m: SignMutation) -> Result<Option<String>> {
    let cbar = c.reduced()?;
    let (words, parts) = bar_differential(&dualize_coalgebra(&cbar)?, n, m)?;
    let left = DgCoassocCoalgebra::new_unchecked("Bar(C*)", parts.d, deconcatenation(&words), None, None)?;
    let right = topological_dual(&complete_cobar(c, n)?)?;
    Ok(coalgebra_mismatch(&left, &right, &word_signs(&words, cbar.space(), 0)))
}

#[allow(clippy::too_many_arguments)]
fn report(
    mode: SquareMode,
    input: &str,
    n: usize,
    left: &str,
    right: &str,
    ws: &WordSpace,
    right_space: &GradedSpace,
    difference: Option<String>,
) -> DualityReport {
    DualityReport {
        mode,
        input: input.to_string(),
        max_weight: n,
        left: left.to_string(),
        right: right.to_string(),
        left_dims: dim_table(ws, ws.space()),
        right_dims: if right_space.dim() == ws.dim() {
            dim_table(ws, right_space)
        } else {
            DimTable::new()
        },
        identification: if mode == SquareMode::Fd {
            IDENTIFICATION_ALGEBRA
        } else {
            IDENTIFICATION_COALGEBRA
        }
        .to_string(),
        difference,
    }
}

/// Input to a square check.
#[derive(Clone, Debug)]
pub enum Input {
    Algebra(DgAssocAlgebra),
    Coalgebra(DgCoassocCoalgebra),
}
