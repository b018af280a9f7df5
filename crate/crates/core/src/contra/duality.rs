//! Co-contra correspondence checks for finite-dimensional inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{
    check, comodule_to_contramodule, contramodule_morphism_defect, free_contramodule, hom_differential, Chirality,
    Contramodule, RightComodule,
};
use crate::absolute::hom_space;
use crate::assoc::{dualize_algebra, DgAssocAlgebra, DgCoassocCoalgebra, LawCheck, PairTerms, Witness};
use crate::error::Result;
use crate::exactlin::{chain_map_defect, ChainComplex, GradedMap, GradedSpace, Rational, Vector};

fn ground() -> ChainComplex {
    ChainComplex::zero(Arc::new(GradedSpace::from_pairs(&[("1", 0)]).expect("one label")))
}

/// `Hom(M, 𝕂)` with the internal-hom differential `φ ↦ -(-1)^{|φ|} φ∘d`,
/// which is the negative of the transpose convention used for (co)algebra duals.
fn dual_complex(m: &ChainComplex) -> Result<ChainComplex> {
    let sp = Arc::new(m.space().dual());
    ChainComplex::new(hom_dual(m.differential()).with_spaces(sp.clone(), sp)?)
}

fn hom_dual(d: &GradedMap) -> GradedMap {
    d.dual().scaled(&-Rational::one())
}

/// The dual `X*` of a left contramodule as a right comodule:
/// `Δ(ξ_a) = Σ_{i,b} γ([c_i→x_b])_a ξ_b⊗c_i`, with the Koszul sign for `ξ_b` passing `c_i`.
pub fn dual_comodule(x: &Contramodule) -> Result<RightComodule> {
    let c = x.coalgebra();
    let sp = Arc::new(x.space().dual());
    let differential = x.module().differential().dual().with_spaces(sp.clone(), sp.clone())?;
    let md = x.dim();
    let mut coaction = vec![PairTerms::new(); md];
    for (k, img) in x.action().iter().enumerate() {
        let (i, b) = (k / md, k % md);
        let s = Rational::sign(c.space().degree(i) * x.space().degree(b));
        for (a, v) in img.iter() {
            *coaction[a].entry((b, i)).or_insert_with(Rational::zero) += &s * v;
        }
    }
    for t in &mut coaction {
        t.retain(|_, v| !v.is_zero());
    }
    Ok(RightComodule {
        name: format!("{}*", x.name()),
        coalgebra: c.clone(),
        space: sp,
        differential,
        coaction,
    })
}

/// First basis element where `(h⊗id)Δ_V ≠ Δ_W h`.
pub fn comodule_morphism_defect(h: &GradedMap, v: &RightComodule, w: &RightComodule) -> Option<usize> {
    (0..v.space.dim()).find(|&a| {
        let mut lhs: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(b, i), x) in &v.coaction[a] {
            for (u, y) in h.column(b).iter() {
                *lhs.entry((u, i)).or_insert_with(Rational::zero) += x * y;
            }
        }
        let mut rhs: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (u, y) in h.column(a).iter() {
            for (&(b, i), x) in &w.coaction[u] {
                *rhs.entry((b, i)).or_insert_with(Rational::zero) += x * y;
            }
        }
        lhs.retain(|_, x| !x.is_zero());
        rhs.retain(|_, x| !x.is_zero());
        lhs != rhs
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoContraReport {
    pub coalgebra: String,
    pub module_dim: usize,
    /// `(M⊗C)* ≅ Hom(C, M*)` as left contramodules.
    pub contra_side: Vec<LawCheck>,
    /// `Hom(C, M)* ≅ M*⊗C` as right comodules.
    pub co_side: Vec<LawCheck>,
}

impl CoContraReport {
    pub fn passed(&self) -> bool {
        self.contra_side.iter().chain(&self.co_side).all(|c| c.passed)
    }
}

fn defect_check(law: &str, at: Option<usize>, space: &GradedSpace) -> LawCheck {
    check(
        law,
        at.map(|i| Witness {
            inputs: vec![space.label(i).to_string()],
            lhs: "identification ∘ structure".into(),
            rhs: "structure ∘ identification".into(),
        }),
    )
}

/// Both halves of the co-contra correspondence, compared through the
/// canonical pairings with Koszul signs.
pub fn cocontra_duality_check(c: &DgCoassocCoalgebra, m: &ChainComplex) -> Result<CoContraReport> {
    let (cd, md) = (c.dim(), m.space().dim());
    let msp = m.space();
    let csp = c.space();
    let mdual = dual_complex(m)?;

    // (M⊗C)* via the comodule, against the free contramodule on M*.
    let cofree = RightComodule::cofree(m, c)?;
    let x = comodule_to_contramodule(&cofree, &ground())?;
    let y = free_contramodule(c, &mdual, Chirality::Left)?;
    // [m⊗c→1] ↦ (-1)^{|m||c|} [c→m*]
    let h = GradedMap::new(
        x.space().clone(),
        y.space().clone(),
        0,
        (0..md * cd)
            .map(|k| {
                let (a, p) = (k / cd, k % cd);
                Vector::term(p * md + a, Rational::sign(msp.degree(a) * csp.degree(p)))
            })
            .collect(),
    )?;
    let contra_side = vec![
        defect_check("contraaction", contramodule_morphism_defect(&h, &x, &y), x.space()),
        defect_check("differential", chain_map_defect(&h, x.module(), y.module()), x.space()),
        check("free_laws", super::validate_contramodule(&y).passed().then_some(()).map_or_else(
            || {
                Some(Witness {
                    inputs: vec![y.name().to_string()],
                    lhs: "left contramodule laws".into(),
                    rhs: "fail".into(),
                })
            },
            |_| None,
        )),
    ];

    // Hom(C, M)* as a comodule, against the cofree comodule on M*.
    let free = free_contramodule(c, m, Chirality::Left)?;
    let v = dual_comodule(&free)?;
    let w = RightComodule::cofree(&mdual, c)?;
    // ([c→m])* ↦ (-1)^{|m||c|+|m|} m*⊗c
    let h2 = GradedMap::new(
        v.space.clone(),
        w.space.clone(),
        0,
        (0..cd * md)
            .map(|k| {
                let (p, a) = (k / md, k % md);
                Vector::term(a * cd + p, Rational::sign(msp.degree(a) * (csp.degree(p) + 1)))
            })
            .collect(),
    )?;
    let vc = ChainComplex::new(v.differential.clone())?;
    let wc = ChainComplex::new(w.differential.clone())?;
    let mut co_side = vec![
        defect_check("coaction", comodule_morphism_defect(&h2, &v, &w), &v.space),
        defect_check("differential", chain_map_defect(&h2, &vc, &wc), &v.space),
    ];
    co_side.extend(v.validate());
    Ok(CoContraReport {
        coalgebra: c.name().to_string(),
        module_dim: md,
        contra_side,
        co_side,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedSquareReport {
    pub sample: String,
    pub is_twisting: bool,
    /// `d_α² = 0` on `C⊗_α N`.
    pub square_zero: bool,
    /// `(d_α)*` equals the twisted hom differential on `Hom(C, N*)`.
    pub dual_matches: bool,
}

/// `d_α(c⊗n) = dc⊗n + (-1)^{|c|} c⊗dn + Σ (-1)^{|c₁|} c₁⊗α(c₂)·n` on `C⊗N`,
/// `N` a left dg module given by the action of `a` (the algebra `α` lands in).
pub fn twisted_tensor_differential(
    alpha: &GradedMap,
    c: &DgCoassocCoalgebra,
    a: &DgAssocAlgebra,
    n: &ChainComplex,
    act: &(impl Fn(usize, usize) -> Vector + Sync),
) -> GradedMap {
    let csp = c.space();
    let nd = n.space().dim();
    let sp = Arc::new(crate::exactlin::tensor_spaces(csp, n.space()));
    let _ = a;
    GradedMap::from_fn(sp.clone(), sp, -1, |k| {
        let (p, j) = (k / nd, k % nd);
        let mut out = Vector::new();
        for (q, x) in c.differential().column(p).iter() {
            out.add_term(q * nd + j, x.clone());
        }
        let s = Rational::sign(csp.degree(p));
        for (l, x) in n.differential().column(j).iter() {
            out.add_term(p * nd + l, &s * x);
        }
        for (&(c1, c2), x) in &c.coproduct()[p] {
            let s = Rational::sign(csp.degree(c1)) * x;
            for (e, y) in alpha.column(c2).iter() {
                for (l, z) in act(e, j).iter() {
                    out.add_term(c1 * nd + l, &s * y * z);
                }
            }
        }
        out
    })
    .expect("d_α has degree -1")
}

/// The twisted hom differential on `Hom(C, N*)`:
/// `∂_α f = ∂f − (c ↦ Σ (-1)^{|f(c₁)|} f(c₁)∘α(c₂)·)`, the twist precomposing with the action.
pub fn twisted_hom_differential(
    alpha: &GradedMap,
    c: &DgCoassocCoalgebra,
    n: &ChainComplex,
    act: &(impl Fn(usize, usize) -> Vector + Sync),
) -> Result<GradedMap> {
    let ndual = dual_complex(n)?;
    let base = hom_differential(c, &ndual);
    let csp = c.space();
    let nsp = n.space();
    let nd = nsp.dim();
    let hs = Arc::new(hom_space(csp, ndual.space()));
    let twist = GradedMap::from_fn(hs.clone(), hs, -1, |k| {
        // f = [c_i → n_j*]
        let (i, j) = (k / nd, k % nd);
        let mut out = Vector::new();
        for (p, terms) in c.coproduct().iter().enumerate() {
            for (&(c1, c2), x) in terms {
                if c1 != i {
                    continue;
                }
                for (e, y) in alpha.column(c2).iter() {
                    for l in 0..nd {
                        let z = act(e, l).get(j);
                        if z.is_zero() {
                            continue;
                        }
                        let s = -Rational::sign(nsp.degree(j));
                        out.add_term(p * nd + l, s * x * y * &z);
                    }
                }
            }
        }
        out
    })?;
    base.add(&twist)
}

/// Compare `(C⊗_α N)*` with `Hom^α(C, N*)` entry-wise under currying, `[c→n*] ↔ (c⊗n)*`.
pub fn twisted_square_check(
    sample: &str,
    alpha: &GradedMap,
    c: &DgCoassocCoalgebra,
    a: &DgAssocAlgebra,
    n: &ChainComplex,
    act: &(impl Fn(usize, usize) -> Vector + Sync),
) -> Result<TwistedSquareReport> {
    let is_twisting = crate::absolute::twisting_check(alpha, c, a)?.is_twisting;
    let dt = twisted_tensor_differential(alpha, c, a, n, act);
    let square_zero = dt.compose(&dt)?.is_zero();
    let hom = twisted_hom_differential(alpha, c, n, act)?;
    let dual = hom_dual(&dt);
    let dual_matches = dual.columns() == hom.columns();
    Ok(TwistedSquareReport {
        sample: sample.to_string(),
        is_twisting,
        square_zero,
        dual_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofreeModuleReport {
    pub algebra: String,
    pub module_dim: usize,
    /// `Hom(A, V)` with `(f·a)(b) = f(ab)` is a right module.
    pub module_associative: bool,
    /// `A*⊗V` with `Δ(a*⊗v) = Δ(a*)⊗v` is a left comodule over `A*`.
    pub comodule_coassociative: bool,
    /// The transcribed action `w·a = Σ ⟨c, a⟩ w'` agrees with the module action.
    pub matches: bool,
}

/// Cofree right modules `Hom(A, V)` against cofree left `A*`-comodules, for
/// an algebra concentrated in degree 0.
pub fn cofree_module_check(a: &DgAssocAlgebra, v_dim: usize) -> Result<CofreeModuleReport> {
    let ad = a.dim();
    let coalg = dualize_algebra(a)?;
    // right action of a_k on [a_i→v_j]
    let module = |t: usize, k: usize| -> Vector {
        let (i, j) = (t / v_dim, t % v_dim);
        let mut out = Vector::new();
        for b in 0..ad {
            let x = a.mul_basis(k, b).get(i);
            if !x.is_zero() {
                out.add_term(b * v_dim + j, x);
            }
        }
        out
    };
    let act_vec = |x: &Vector, k: usize| -> Vector {
        let mut out = Vector::new();
        for (t, c) in x.iter() {
            out.axpy(c, &module(t, k));
        }
        out
    };
    let dim = ad * v_dim;
    let mut module_associative = true;
    for t in 0..dim {
        for k in 0..ad {
            for l in 0..ad {
                let lhs = act_vec(&module(t, k), l);
                let mut rhs = Vector::new();
                for (e, c) in a.mul_basis(k, l).iter() {
                    rhs.axpy(c, &module(t, e));
                }
                module_associative &= lhs == rhs;
            }
        }
    }
    // left coaction on a_i*⊗v_j: Σ Δ(a_i*)_{x,y} a_x* ⊗ (a_y*⊗v_j)
    let coaction = |t: usize| -> PairTerms {
        let (i, j) = (t / v_dim, t % v_dim);
        coalg.coproduct()[i]
            .iter()
            .map(|(&(x, y), c)| ((x, y * v_dim + j), c.clone()))
            .collect()
    };
    let mut comodule_coassociative = true;
    for t in 0..dim {
        let mut lhs: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut rhs = lhs.clone();
        for (&(x, w), c) in &coaction(t) {
            for (&(y, u), d) in &coaction(w) {
                *lhs.entry((x, y, u)).or_insert_with(Rational::zero) += c * d;
            }
            for (&(y, z), d) in &coalg.coproduct()[x] {
                *rhs.entry((y, z, w)).or_insert_with(Rational::zero) += c * d;
            }
        }
        lhs.retain(|_, x| !x.is_zero());
        rhs.retain(|_, x| !x.is_zero());
        comodule_coassociative &= lhs == rhs;
    }
    let mut matches = true;
    for t in 0..dim {
        for k in 0..ad {
            let transcribed: Vector = coaction(t)
                .into_iter()
                .filter(|&((x, _), _)| x == k)
                .map(|((_, w), c)| (w, c))
                .collect();
            matches &= transcribed == module(t, k);
        }
    }
    Ok(CofreeModuleReport {
        algebra: a.name().to_string(),
        module_dim: v_dim,
        module_associative,
        comodule_coassociative,
        matches,
    })
}
