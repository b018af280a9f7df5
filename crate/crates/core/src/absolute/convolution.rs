//! Convolution algebras `hom(D, B)` and twisting morphisms.

use std::sync::Arc;

use serde::Serialize;

use super::AlgebraTower;
use crate::assoc::{coradical_filtration, Bilinear, ConilpotencyVerdict, DgAssocAlgebra, DgCoassocCoalgebra};
use crate::error::{Error, Result};
use crate::exactlin::{BasisElement, GradedMap, GradedSpace, Rational, Vector};
use crate::par;

/// `hom(D, B)` with basis the elementary maps `[d_i→b_j]`, index `i·dim B + j`.
pub fn hom_space(d: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    let mut el = Vec::with_capacity(d.dim() * b.dim());
    for i in 0..d.dim() {
        for j in 0..b.dim() {
            el.push(BasisElement::new(
                format!("[{}→{}]", d.label(i), b.label(j)),
                b.degree(j) - d.degree(i),
            ));
        }
    }
    GradedSpace::new(el).expect("elementary map labels are distinct")
}

/// Read a homogeneous element of `hom(D, B)` as a map of the given degree.
pub fn hom_vector_to_map(
    v: &Vector,
    d: &Arc<GradedSpace>,
    b: &Arc<GradedSpace>,
    degree: i64,
) -> Result<GradedMap> {
    let mut cols = vec![Vector::new(); d.dim()];
    for (k, c) in v.iter() {
        cols[k / b.dim()].add_term(k % b.dim(), c.clone());
    }
    GradedMap::new(d.clone(), b.clone(), degree, cols)
}

pub fn map_to_hom_vector(f: &GradedMap) -> Vector {
    let bd = f.target().dim();
    let mut v = Vector::new();
    for (i, col) in f.columns().iter().enumerate() {
        for (j, c) in col.iter() {
            v.add_term(i * bd + j, c.clone());
        }
    }
    v
}

/// `f ⋆ g = μ ∘ (f⊗g) ∘ Δ`, with `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`.
pub fn star(f: &GradedMap, g: &GradedMap, d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> GradedMap {
    let sp = d.space();
    GradedMap::from_fn(sp.clone(), b.space().clone(), f.degree() + g.degree(), |c| {
        let mut out = Vector::new();
        for (&(x, y), k) in &d.coproduct()[c] {
            let fx = f.column(x);
            if fx.is_zero() {
                continue;
            }
            let s = Rational::sign(g.degree() * sp.degree(x));
            out.axpy(&(s * k), &b.mul(fx, g.column(y)));
        }
        out
    })
    .expect("convolution of homogeneous maps is homogeneous")
}

/// `∂f = d_B ∘ f − (-1)^{|f|} f ∘ d_D`.
pub fn partial(f: &GradedMap, d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> GradedMap {
    let s = -Rational::sign(f.degree());
    GradedMap::from_fn(d.space().clone(), b.space().clone(), f.degree() - 1, |c| {
        let mut out = b.differential().apply(f.column(c));
        out.axpy(&s, &f.apply(d.differential().column(c)));
        out
    })
    .expect("∂ of a homogeneous map is homogeneous")
}

/// `μⁿ ∘ (f_1⊗…⊗f_n) ∘ Δⁿ`, computed directly from the iterated coproduct.
pub fn gamma_direct(maps: &[GradedMap], d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> Vector {
    let n = maps.len();
    let sp = d.space();
    let bd = b.dim();
    let deg = maps.iter().map(GradedMap::degree).sum::<i64>();
    let _ = deg;
    let mut out = Vector::new();
    for c in 0..d.dim() {
        for (w, k) in d.iterate_coproduct(c, n) {
            let el: Vec<i64> = w.iter().map(|&x| sp.degree(x)).collect();
            let md: Vec<i64> = maps.iter().map(GradedMap::degree).collect();
            let s = crate::exactlin::koszul_sign(&md, &el);
            let mut acc = maps[0].column(w[0]).clone();
            for (f, &x) in maps[1..].iter().zip(&w[1..]) {
                if acc.is_zero() {
                    break;
                }
                acc = b.mul(&acc, f.column(x));
            }
            for (j, y) in acc.iter() {
                out.add_term(c * bd + j, &s * &k * y);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Convolution {
    pub coalgebra: DgCoassocCoalgebra,
    pub algebra: DgAssocAlgebra,
    /// `hom(D̄, B̄)` with the convolution product and `∂`.
    pub hom: DgAssocAlgebra,
    pub conilpotency: usize,
    pub tower: AlgebraTower,
}

/// The convolution absolute algebra on `hom(D̄, B̄)` for conilpotent `D`.
pub fn convolution_absolute(d: &DgCoassocCoalgebra, b: &DgAssocAlgebra, n: usize) -> Result<Convolution> {
    let (_, verdict) = coradical_filtration(d, n)?;
    let conilpotency = match verdict {
        ConilpotencyVerdict::Conilpotent { degree } => degree,
        ConilpotencyVerdict::NotConilpotent { witness } => {
            return Err(Error::NotConilpotent { witness, bound: n })
        }
        ConilpotencyVerdict::Undetermined { .. } => {
            return Err(Error::NotConilpotent {
                witness: "(filtration not exhausted)".into(),
                bound: n,
            })
        }
    };
    let dbar = d.reduced()?;
    let bbar = b.augmentation_ideal()?;
    let hs = Arc::new(hom_space(dbar.space(), bbar.space()));
    let (dd, bd) = (dbar.dim(), bbar.dim());
    let elementary = |k: usize| {
        let mut cols = vec![Vector::new(); dd];
        cols[k / bd] = Vector::basis(k % bd);
        GradedMap::new(dbar.space().clone(), bbar.space().clone(), hs.degree(k), cols)
            .expect("elementary maps are homogeneous")
    };
    let maps: Vec<GradedMap> = par::map_range(hs.dim(), elementary);
    let dcols = par::map_slice(&maps, |f| map_to_hom_vector(&partial(f, &dbar, &bbar)));
    let diff = GradedMap::new(hs.clone(), hs.clone(), -1, dcols)?;
    let rows = par::map_range(hs.dim(), |p| {
        (0..hs.dim())
            .filter_map(|q| {
                let v = map_to_hom_vector(&star(&maps[p], &maps[q], &dbar, &bbar));
                (!v.is_zero()).then_some(((p, q), v))
            })
            .collect::<Vec<_>>()
    });
    let product: Bilinear = rows.into_iter().flatten().collect();
    let hom = DgAssocAlgebra::new(format!("hom({},{})", d.name(), b.name()), diff, product, None)?;
    let tower = super::absolute_envelope(&hom, n)?;
    Ok(Convolution {
        coalgebra: dbar,
        algebra: bbar,
        hom,
        conilpotency,
        tower,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistingReport {
    pub is_twisting: bool,
    /// `(layer, basis label, value)` of nonzero residual entries; layer 0 means classical.
    pub residual: Vec<(usize, String, String)>,
}

/// Maurer–Cartan residual `∂ν + ν ⋆ ν` of a degree −1 map `ν: D → B`.
pub fn mc_residual(nu: &GradedMap, d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> GradedMap {
    partial(nu, d, b).add(&star(nu, nu, d, b)).expect("same spaces and degree")
}

fn report(residuals: Vec<(usize, GradedMap)>) -> TwistingReport {
    let mut residual = Vec::new();
    for (layer, r) in residuals {
        for (c, v) in r.columns().iter().enumerate() {
            if !v.is_zero() {
                residual.push((layer, r.source().label(c).to_string(), r.target().format_vector(v)));
            }
        }
    }
    TwistingReport {
        is_twisting: residual.is_empty(),
        residual,
    }
}

/// Classical check: `D` a coalgebra, `B` an algebra, `ν` of degree −1.
pub fn twisting_check(nu: &GradedMap, d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> Result<TwistingReport> {
    if nu.degree() != -1 && !nu.is_zero() {
        return Err(Error::InvalidStructure(format!(
            "twisting morphisms have degree -1, got {}",
            nu.degree()
        )));
    }
    let nu = GradedMap::new(nu.source().clone(), nu.target().clone(), -1, nu.columns().to_vec())?;
    Ok(report(vec![(0, mc_residual(&nu, d, b))]))
}

/// Complete check: `C` any coalgebra, `A` a tower, `ν: C → A/W_N`; the
/// residual is evaluated in every layer.
pub fn twisting_check_complete(nu: &GradedMap, c: &DgCoassocCoalgebra, a: &AlgebraTower) -> Result<TwistingReport> {
    let n = a.truncation();
    let per_layer = par::map_coarse(n, |k| {
        let omega = k + 1;
        let p = a.projection_between(n, omega);
        let nu_w = p.compose(nu).expect("ν lands in the top layer");
        let nu_w = GradedMap::new(c.space().clone(), a.layer(omega).space().clone(), -1, nu_w.columns().to_vec())
            .expect("degree −1");
        (omega, mc_residual(&nu_w, c, a.layer(omega)))
    });
    Ok(report(per_layer))
}
