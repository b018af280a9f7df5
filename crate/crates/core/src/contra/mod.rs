//! Contramodules over finite-dimensional coalgebras.
//!
//! For finite-dimensional `C` an element of `Hom(C, M)` is a combination of
//! elementary maps `[c_i→m_j]`; a contraaction is the table of their images.

mod duality;

pub use duality::{
    cocontra_duality_check, cofree_module_check, comodule_morphism_defect, dual_comodule, twisted_hom_differential,
    twisted_square_check, twisted_tensor_differential, CoContraReport,
    CofreeModuleReport, TwistedSquareReport,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::absolute::hom_space;
use crate::assoc::{coradical_filtration, ConilpotencyVerdict, DgCoassocCoalgebra, LawCheck, PairTerms, Witness};
use crate::error::{Error, Result};
use crate::exactlin::{kernel, rank, ChainComplex, Echelon, GradedMap, GradedSpace, Rational, Vector};
use crate::par;

/// Which of the two monad structures on `Hom(C, −)` an action is over:
/// `Right` uses `Φ ↦ (c ↦ Σ Φ(c₁)(c₂))`, `Left` uses `Φ ↦ (c ↦ Σ ± Φ(c₂)(c₁))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub const BOTH: [Chirality; 2] = [Chirality::Left, Chirality::Right];
}

/// `∂f = d_M∘f − (-1)^{|f|} f∘d_C` on `Hom(C, M)`.
pub fn hom_differential(c: &DgCoassocCoalgebra, m: &ChainComplex) -> GradedMap {
    let hs = Arc::new(hom_space(c.space(), m.space()));
    let (cd, md) = (c.dim(), m.space().dim());
    GradedMap::from_fn(hs.clone(), hs.clone(), -1, |k| {
        let (i, j) = (k / md, k % md);
        let s = -Rational::sign(hs.degree(k));
        let mut out = Vector::new();
        for (l, x) in m.differential().column(j).iter() {
            out.add_term(i * md + l, x.clone());
        }
        // (f∘d_C)(c_p) = coefficient of c_i in d(c_p), times m_j
        for p in 0..cd {
            let x = c.differential().column(p).get(i);
            if !x.is_zero() {
                out.add_term(p * md + j, &s * &x);
            }
        }
        out
    })
    .expect("∂ has degree -1")
}

/// The monad multiplication on the elementary element `c_i ↦ [c_k→m_j]` of
/// `Hom(C, Hom(C, M))`, as an element of `Hom(C, M)`.
pub fn monad_multiplication(c: &DgCoassocCoalgebra, md: usize, chirality: Chirality, i: usize, k: usize, j: usize) -> Vector {
    let sp = c.space();
    let mut out = Vector::new();
    for (p, terms) in c.coproduct().iter().enumerate() {
        let x = match chirality {
            Chirality::Right => terms.get(&(i, k)).cloned(),
            Chirality::Left => terms
                .get(&(k, i))
                .map(|x| x * Rational::sign(sp.degree(k) * sp.degree(i))),
        };
        if let Some(x) = x {
            out.add_term(p * md + j, x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Contramodule {
    name: String,
    coalgebra: DgCoassocCoalgebra,
    module: ChainComplex,
    hom: Arc<GradedSpace>,
    /// Entry `i·dim M + j` is `γ([c_i→m_j])`.
    action: Vec<Vector>,
    chirality: Chirality,
}

impl Contramodule {
    pub fn new(
        name: impl Into<String>,
        coalgebra: DgCoassocCoalgebra,
        module: ChainComplex,
        action: Vec<Vector>,
        chirality: Chirality,
    ) -> Result<Self> {
        let hom = Arc::new(hom_space(coalgebra.space(), module.space()));
        // degree check happens here
        GradedMap::new(hom.clone(), module.space().clone(), 0, action.clone())?;
        Ok(Contramodule {
            name: name.into(),
            coalgebra,
            module,
            hom,
            action,
            chirality,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coalgebra(&self) -> &DgCoassocCoalgebra {
        &self.coalgebra
    }

    pub fn module(&self) -> &ChainComplex {
        &self.module
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.module.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn hom(&self) -> &Arc<GradedSpace> {
        &self.hom
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn action(&self) -> &[Vector] {
        &self.action
    }

    pub fn with_action(&self, action: Vec<Vector>) -> Result<Self> {
        Self::new(self.name.clone(), self.coalgebra.clone(), self.module.clone(), action, self.chirality)
    }

    pub fn with_chirality(mut self, chirality: Chirality) -> Self {
        self.chirality = chirality;
        self
    }

    pub fn act(&self, phi: &Vector) -> Vector {
        let mut out = Vector::new();
        for (k, x) in phi.iter() {
            out.axpy(x, &self.action[k]);
        }
        out
    }

    pub fn action_map(&self) -> GradedMap {
        GradedMap::new(self.hom.clone(), self.space().clone(), 0, self.action.clone()).expect("checked")
    }

    /// Contraassociativity and counit for the given chirality, plus `γ` being a chain map.
    pub fn laws(&self, chirality: Chirality) -> Vec<LawCheck> {
        let (cd, md) = (self.coalgebra.dim(), self.dim());
        let c_sp = self.coalgebra.space();
        let hom = &self.hom;
        let assoc = par::find_first(cd * cd * md, |t| {
            let (i, k, j) = (t / (cd * md), (t / md) % cd, t % md);
            // γ(Hom(C,γ)Ψ)
            let inner = &self.action[k * md + j];
            let lhs = self.act(&inner.iter().map(|(l, x)| (i * md + l, x.clone())).collect());
            let rhs = self.act(&monad_multiplication(&self.coalgebra, md, chirality, i, k, j));
            (lhs != rhs).then(|| Witness {
                inputs: vec![format!("{} ↦ {}", c_sp.label(i), hom.label(k * md + j))],
                lhs: self.space().format_vector(&lhs),
                rhs: self.space().format_vector(&rhs),
            })
        })
        .map(|(_, w)| w);
        let mut checks = vec![check(&format!("contraassociativity_{}", name(chirality)), assoc)];
        if let Some(eps) = self.coalgebra.counit() {
            let unit = (0..md).find_map(|j| {
                let phi: Vector = (0..cd).map(|c| (c * md + j, eps[c].clone())).collect();
                let v = self.act(&phi);
                (v != Vector::basis(j)).then(|| Witness {
                    inputs: vec![self.space().label(j).to_string()],
                    lhs: self.space().format_vector(&v),
                    rhs: self.space().label(j).to_string(),
                })
            });
            checks.push(check("counit", unit));
        }
        let dh = hom_differential(&self.coalgebra, &self.module);
        let chain = (0..hom.dim()).find_map(|k| {
            let lhs = self.module.differential().apply(&self.action[k]);
            let rhs = self.act(dh.column(k));
            (lhs != rhs).then(|| Witness {
                inputs: vec![hom.label(k).to_string()],
                lhs: self.space().format_vector(&lhs),
                rhs: self.space().format_vector(&rhs),
            })
        });
        checks.push(check("chain_map", chain));
        checks
    }
}

fn name(c: Chirality) -> &'static str {
    match c {
        Chirality::Left => "left",
        Chirality::Right => "right",
    }
}

fn check(law: &str, witness: Option<Witness>) -> LawCheck {
    LawCheck {
        law: law.to_string(),
        passed: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContraReport {
    pub contramodule: String,
    pub declared: Chirality,
    pub left: Vec<LawCheck>,
    pub right: Vec<LawCheck>,
    /// Chiralities whose laws all hold.
    pub satisfied: Vec<Chirality>,
}

impl ContraReport {
    pub fn passed(&self) -> bool {
        self.satisfied.contains(&self.declared)
    }
}

pub fn validate_contramodule(x: &Contramodule) -> ContraReport {
    let left = x.laws(Chirality::Left);
    let right = x.laws(Chirality::Right);
    let mut satisfied = Vec::new();
    if left.iter().all(|c| c.passed) {
        satisfied.push(Chirality::Left);
    }
    if right.iter().all(|c| c.passed) {
        satisfied.push(Chirality::Right);
    }
    ContraReport {
        contramodule: x.name.clone(),
        declared: x.chirality,
        left,
        right,
        satisfied,
    }
}

/// `Hom(C, D)` with the monad multiplication of the given chirality.
pub fn free_contramodule(c: &DgCoassocCoalgebra, d: &ChainComplex, chirality: Chirality) -> Result<Contramodule> {
    let hs = Arc::new(hom_space(c.space(), d.space()));
    let module = ChainComplex::new(hom_differential(c, d))?;
    let (cd, dd) = (c.dim(), d.space().dim());
    let md = cd * dd;
    // γ([c_i → [c_k→d_l]])
    let action = par::map_range(cd * md, |t| {
        let (i, rest) = (t / md, t % md);
        let (k, l) = (rest / dd, rest % dd);
        monad_multiplication(c, dd, chirality, i, k, l)
    });
    let _ = hs;
    Contramodule::new(format!("Hom({},{})", c.name(), d_name(d)), c.clone(), module, action, chirality)
}

fn d_name(d: &ChainComplex) -> String {
    let labels: Vec<&str> = (0..d.space().dim()).map(|i| d.space().label(i)).collect();
    format!("⟨{}⟩", labels.join(","))
}

/// The unit `η: D → Hom(C, D)`, `d ↦ (c ↦ ε(c) d)`.
pub fn free_unit(c: &DgCoassocCoalgebra, free: &Contramodule, d: &ChainComplex) -> Result<GradedMap> {
    let eps = c
        .counit()
        .ok_or_else(|| Error::InvalidStructure("the free contramodule unit needs a counit".into()))?;
    let dd = d.space().dim();
    GradedMap::new(
        d.space().clone(),
        free.space().clone(),
        0,
        (0..dd)
            .map(|l| (0..c.dim()).map(|p| (p * dd + l, eps[p].clone())).collect())
            .collect(),
    )
}

/// Extension of `g: D → N` to the contramodule morphism `Hom(C, D) → N`, `Φ ↦ γ_N(g∘Φ)`.
pub fn free_extension(g: &GradedMap, free: &Contramodule, target: &Contramodule) -> Result<GradedMap> {
    let cd = free.coalgebra.dim();
    let dd = g.source().dim();
    let nd = target.dim();
    GradedMap::new(
        free.space().clone(),
        target.space().clone(),
        0,
        (0..cd * dd)
            .map(|t| {
                let (p, l) = (t / dd, t % dd);
                target.act(&g.column(l).iter().map(|(n, x)| (p * nd + n, x.clone())).collect())
            })
            .collect(),
    )
}

/// Whether `h` is a morphism of contramodules: `h∘γ = γ∘Hom(C, h)`.
pub fn contramodule_morphism_defect(h: &GradedMap, x: &Contramodule, y: &Contramodule) -> Option<usize> {
    let (xd, yd) = (x.dim(), y.dim());
    (0..x.hom.dim()).find(|&k| {
        let (p, j) = (k / xd, k % xd);
        let lhs = h.apply(&x.action[k]);
        let rhs = y.act(&h.column(j).iter().map(|(n, c)| (p * yd + n, c.clone())).collect());
        lhs != rhs
    })
}

/// Uniqueness of extensions: the only contramodule morphism `Hom(C, D) → N`
/// vanishing on the unit is zero (the linear system has full column rank).
pub fn extension_is_unique(free: &Contramodule, d: &ChainComplex, target: &Contramodule) -> Result<bool> {
    let eta = free_unit(&free.coalgebra, free, d)?;
    let (fd, nd) = (free.dim(), target.dim());
    // unknown h has entries h[j][n] at index j·nd + n
    let cd = free.coalgebra.dim();
    let mut equations: Vec<Vector> = Vec::new();
    // morphism: Σ_m h[m][n] γ_free(k)_m − γ_N(Σ_n' h[j][n'] at c_p ↦ n') = 0
    for k in 0..free.hom.dim() {
        let (p, j) = (k / fd, k % fd);
        for out in 0..nd {
            let mut eq = Vector::new();
            for (m, x) in free.action[k].iter() {
                eq.add_term(m * nd + out, x.clone());
            }
            for n in 0..nd {
                let x = target.action[p * nd + n].get(out);
                if !x.is_zero() {
                    eq.add_term(j * nd + n, -x);
                }
            }
            if !eq.is_zero() {
                equations.push(eq);
            }
        }
    }
    let _ = cd;
    // vanishing on the unit
    for l in 0..eta.source().dim() {
        for out in 0..nd {
            let eq: Vector = eta.column(l).iter().map(|(m, x)| (m * nd + out, x.clone())).collect();
            if !eq.is_zero() {
                equations.push(eq);
            }
        }
    }
    Ok(rank(&equations) == fd * nd)
}

/// `Hom(V, D)` for a right comodule `V`, with `γ(g)(v) = Σ ± g(v₁)(v₀)`
/// (left chirality).
pub fn comodule_to_contramodule(v: &RightComodule, d: &ChainComplex) -> Result<Contramodule> {
    let c = &v.coalgebra;
    let vs = v.space();
    let (cd, vd, dd) = (c.dim(), vs.dim(), d.space().dim());
    let hom_vd = Arc::new(hom_space(vs, d.space()));
    let dv = ChainComplex::zero(vs.clone());
    let _ = dv;
    // ∂ on Hom(V, D)
    let s_mod = GradedMap::from_fn(hom_vd.clone(), hom_vd.clone(), -1, |k| {
        let (a, l) = (k / dd, k % dd);
        let s = -Rational::sign(hom_vd.degree(k));
        let mut out = Vector::new();
        for (m, x) in d.differential().column(l).iter() {
            out.add_term(a * dd + m, x.clone());
        }
        for b in 0..vd {
            let x = v.differential.column(b).get(a);
            if !x.is_zero() {
                out.add_term(b * dd + l, &s * &x);
            }
        }
        out
    })?;
    let module = ChainComplex::new(s_mod)?;
    let md = vd * dd;
    // γ([c_i → [v_a→d_l]])(v_b) = Σ over coaction terms v_b ↦ v_a ⊗ c_i of ± d_l
    let action = (0..cd * md)
        .map(|t| {
            let (i, rest) = (t / md, t % md);
            let (a, l) = (rest / dd, rest % dd);
            let mut out = Vector::new();
            for (b, terms) in v.coaction.iter().enumerate() {
                if let Some(x) = terms.get(&(a, i)) {
                    let s = Rational::sign(vs.degree(a) * c.space().degree(i));
                    out.add_term(b * dd + l, s * x);
                }
            }
            out
        })
        .collect();
    Contramodule::new(format!("Hom({},{})", v.name, d_name(d)), c.clone(), module, action, Chirality::Left)
}

/// A right comodule `Δ_V: V → V⊗C`.
#[derive(Clone, Debug, PartialEq)]
pub struct RightComodule {
    pub name: String,
    pub coalgebra: DgCoassocCoalgebra,
    pub space: Arc<GradedSpace>,
    pub differential: GradedMap,
    /// `coaction[v]` lists `(v', c) ↦ coefficient`.
    pub coaction: Vec<PairTerms>,
}

impl RightComodule {
    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    /// The coalgebra as a right comodule over itself.
    pub fn regular(c: &DgCoassocCoalgebra) -> Self {
        RightComodule {
            name: c.name().to_string(),
            coalgebra: c.clone(),
            space: c.space().clone(),
            differential: c.differential().clone(),
            coaction: c.coproduct().to_vec(),
        }
    }

    /// The cofree right comodule `M⊗C`, basis `m⊗c` at index `m·dim C + c`.
    pub fn cofree(m: &ChainComplex, c: &DgCoassocCoalgebra) -> Result<Self> {
        let space = Arc::new(crate::exactlin::tensor::tensor_spaces(m.space(), c.space()));
        let differential = crate::exactlin::tensor::tensor_differential(m.differential(), c.differential());
        let cd = c.dim();
        let coaction = (0..space.dim())
            .map(|k| {
                let (a, p) = (k / cd, k % cd);
                c.coproduct()[p]
                    .iter()
                    .map(|(&(x, y), v)| ((a * cd + x, y), v.clone()))
                    .collect()
            })
            .collect();
        Ok(RightComodule {
            name: format!("{}⊗{}", d_name(m), c.name()),
            coalgebra: c.clone(),
            space,
            differential,
            coaction,
        })
    }

    pub fn validate(&self) -> Vec<LawCheck> {
        let c = &self.coalgebra;
        let sp = &self.space;
        let mut checks = Vec::new();
        // (Δ_V⊗id)Δ_V = (id⊗Δ)Δ_V
        let coassoc = (0..sp.dim()).find_map(|v| {
            let mut lhs: std::collections::BTreeMap<(usize, usize, usize), Rational> = Default::default();
            let mut rhs = lhs.clone();
            for (&(w, x), a) in &self.coaction[v] {
                for (&(u, y), b) in &self.coaction[w] {
                    *lhs.entry((u, y, x)).or_insert_with(Rational::zero) += a * b;
                }
                for (&(y, z), b) in &c.coproduct()[x] {
                    *rhs.entry((w, y, z)).or_insert_with(Rational::zero) += a * b;
                }
            }
            lhs.retain(|_, x| !x.is_zero());
            rhs.retain(|_, x| !x.is_zero());
            (lhs != rhs).then(|| Witness {
                inputs: vec![sp.label(v).to_string()],
                lhs: format!("{} terms", lhs.len()),
                rhs: format!("{} terms", rhs.len()),
            })
        });
        checks.push(check("coassociativity", coassoc));
        if let Some(eps) = c.counit() {
            let unit = (0..sp.dim()).find_map(|v| {
                let mut out = Vector::new();
                for (&(w, x), a) in &self.coaction[v] {
                    out.add_term(w, a * &eps[x]);
                }
                (out != Vector::basis(v)).then(|| Witness {
                    inputs: vec![sp.label(v).to_string()],
                    lhs: sp.format_vector(&out),
                    rhs: sp.label(v).to_string(),
                })
            });
            checks.push(check("counit", unit));
        }
        checks
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContraFiltration {
    pub contramodule: String,
    /// `dim W_ω M` for `ω = 1..=N`.
    pub stage_dims: Vec<usize>,
    /// `dim M/W_ω`.
    pub quotient_dims: Vec<usize>,
    /// `∩ W_ω = 0` within the truncation, i.e. `M → lim M/W_ω` is injective.
    pub complete: bool,
}

/// `W_ω M = γ(maps vanishing on the coaugmentation and on ℛ_ω C̄)`.
pub fn contra_filtration_completion(x: &Contramodule, n: usize) -> Result<ContraFiltration> {
    let c = &x.coalgebra;
    let cbar = c.reduced()?;
    let (filt, verdict) = coradical_filtration(&cbar, n.max(cbar.dim() + 1))?;
    if let ConilpotencyVerdict::NotConilpotent { witness } = verdict {
        return Err(Error::NotConilpotent { witness, bound: n });
    }
    let kept: Vec<usize> = (0..c.dim()).filter(|&i| Some(i) != c.coaugmentation()).collect();
    let md = x.dim();
    let mut stage_dims = Vec::new();
    let mut quotient_dims = Vec::new();
    let mut last = Echelon::new();
    for w in 1..=n {
        let r = filt.stage(w.min(filt.last_index()));
        // functionals on C̄ vanishing on ℛ_ω, pulled back to C
        let rows: Vec<&Vector> = r.rows().collect();
        let cols: Vec<Vector> = (0..cbar.dim())
            .map(|i| {
                rows.iter()
                    .enumerate()
                    .filter_map(|(q, v)| v.coefficient(i).map(|x| (q, x.clone())))
                    .collect()
            })
            .collect();
        let ann = kernel(&cols);
        let mut ech = Echelon::new();
        for f in &ann {
            for j in 0..md {
                let phi: Vector = f.iter().map(|(i, a)| (kept[i] * md + j, a.clone())).collect();
                ech.insert(x.act(&phi));
            }
        }
        stage_dims.push(ech.rank());
        quotient_dims.push(md - ech.rank());
        last = ech;
    }
    Ok(ContraFiltration {
        contramodule: x.name.clone(),
        stage_dims,
        quotient_dims,
        complete: last.rank() == 0,
    })
}

#[cfg(test)]
mod tests;
