use std::sync::Arc;

use serde::Serialize;

use crate::assoc::{product_powers, Bilinear, DgAssocAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{
    positions, Echelon, GradedMap, GradedSpace, LocalOperator, Vector, WordSpace,
};
use crate::par;

/// A complete absolute algebra truncated at weight `N`: the quotients
/// `A/W_1 ↞ A/W_2 ↞ … ↞ A/W_N` with their projections.
#[derive(Clone, Debug)]
pub struct AlgebraTower {
    name: String,
    layers: Vec<DgAssocAlgebra>,
    projections: Vec<GradedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerDefect {
    pub layer: usize,
    pub law: String,
    pub detail: String,
}

impl AlgebraTower {
    /// `layers[ω-1] = A/W_ω`; `projections[ω-1]: A/W_{ω+1} → A/W_ω`.
    pub fn new(name: impl Into<String>, layers: Vec<DgAssocAlgebra>, projections: Vec<GradedMap>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidStructure("a tower needs at least one layer".into()));
        }
        if projections.len() + 1 != layers.len() {
            return Err(Error::DimensionMismatch("one projection per consecutive pair".into()));
        }
        for (k, p) in projections.iter().enumerate() {
            if *p.source() != *layers[k + 1].space() || *p.target() != *layers[k].space() || p.degree() != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "projection {} does not connect layers {} and {}",
                    k + 1,
                    k + 2,
                    k + 1
                )));
            }
        }
        Ok(AlgebraTower {
            name: name.into(),
            layers,
            projections,
        })
    }

    /// `N` copies of the same algebra, joined by identities.
    pub fn constant(name: impl Into<String>, a: DgAssocAlgebra, n: usize) -> Self {
        let id = GradedMap::identity(a.space().clone());
        AlgebraTower {
            name: name.into(),
            layers: vec![a; n.max(1)],
            projections: vec![id; n.max(1) - 1],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The truncation weight `N`.
    pub fn truncation(&self) -> usize {
        self.layers.len()
    }

    /// `A/W_ω`, for `1 ≤ ω ≤ N`.
    pub fn layer(&self, omega: usize) -> &DgAssocAlgebra {
        &self.layers[omega - 1]
    }

    pub fn top(&self) -> &DgAssocAlgebra {
        self.layers.last().expect("nonempty")
    }

    pub fn layers(&self) -> &[DgAssocAlgebra] {
        &self.layers
    }

    /// `A/W_{ω+1} → A/W_ω`.
    pub fn projection(&self, omega: usize) -> &GradedMap {
        &self.projections[omega - 1]
    }

    /// Composite projection `A/W_from → A/W_to`, `to ≤ from`.
    pub fn projection_between(&self, from: usize, to: usize) -> GradedMap {
        let mut p = GradedMap::identity(self.layer(from).space().clone());
        for w in (to..from).rev() {
            p = self.projection(w).compose(&p).expect("consecutive layers compose");
        }
        p
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(DgAssocAlgebra::dim).collect()
    }

    /// Same tower cut at a smaller weight.
    pub fn truncate(&self, n: usize) -> AlgebraTower {
        let n = n.clamp(1, self.truncation());
        AlgebraTower {
            name: self.name.clone(),
            layers: self.layers[..n].to_vec(),
            projections: self.projections[..n - 1].to_vec(),
        }
    }

    /// Checks: every layer is a dg algebra, projections are surjective dg
    /// algebra morphisms, and in `A/W_ω` all products of `ω+1` elements vanish.
    pub fn defects(&self) -> Vec<TowerDefect> {
        let n = self.truncation();
        let per_layer = par::map_coarse(n, |k| {
            let omega = k + 1;
            let mut out = Vec::new();
            let layer = &self.layers[k];
            if let Some(c) = layer.validate().first_violation() {
                out.push(TowerDefect {
                    layer: omega,
                    law: c.law.clone(),
                    detail: format!("{:?}", c.witness),
                });
            }
            let powers = product_powers(layer, omega + 1);
            if powers[omega].rank() != 0 {
                out.push(TowerDefect {
                    layer: omega,
                    law: "filtration".into(),
                    detail: format!("products of {} elements do not vanish", omega + 1),
                });
            }
            if omega < n {
                let p = &self.projections[k];
                if let Some(w) = crate::assoc::algebra_morphism_defect(p, &self.layers[k + 1], layer) {
                    out.push(TowerDefect {
                        layer: omega,
                        law: "projection_morphism".into(),
                        detail: format!("{w:?}"),
                    });
                }
                if crate::exactlin::rank(p.columns().iter()) != layer.dim() {
                    out.push(TowerDefect {
                        layer: omega,
                        law: "projection_surjective".into(),
                        detail: String::new(),
                    });
                }
            }
            out
        });
        per_layer.into_iter().flatten().collect()
    }

    /// The tower of quotients `X/W_ω` of one algebra by a decreasing chain of
    /// dg ideals (`ideals[ω-1] = W_ω`). Each quotient keeps the non-pivot basis
    /// elements of `X`, so labels are inherited.
    pub fn from_filtered(name: impl Into<String>, x: &DgAssocAlgebra, ideals: &[Echelon]) -> Result<Self> {
        Ok(Self::from_filtered_with_maps(name, x, ideals)?.0)
    }

    /// As [`AlgebraTower::from_filtered`], also returning the quotient maps `X → X/W_ω`.
    pub fn from_filtered_with_maps(
        name: impl Into<String>,
        x: &DgAssocAlgebra,
        ideals: &[Echelon],
    ) -> Result<(Self, Vec<GradedMap>)> {
        let quotients = par::map_coarse(ideals.len(), |k| Quotient::new(x, &ideals[k]));
        let layers = quotients
            .iter()
            .map(|q| q.algebra.clone())
            .collect::<Result<Vec<_>>>()?;
        let mut projections = Vec::with_capacity(layers.len().saturating_sub(1));
        for k in 0..quotients.len().saturating_sub(1) {
            let (hi, lo) = (&quotients[k + 1], &quotients[k]);
            let cols = hi.kept.iter().map(|&i| lo.reduce(&Vector::basis(i))).collect();
            projections.push(GradedMap::new(
                layers[k + 1].space().clone(),
                layers[k].space().clone(),
                0,
                cols,
            )?);
        }
        let maps = quotients
            .iter()
            .zip(&layers)
            .map(|(q, l)| {
                let cols = (0..x.dim()).map(|i| q.reduce(&Vector::basis(i))).collect();
                GradedMap::new(x.space().clone(), l.space().clone(), 0, cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((AlgebraTower::new(name, layers, projections)?, maps))
    }

    /// Free complete tensor algebra on a complex `(V, d)`: layer `ω` is
    /// `⊕_{n ≤ ω} V^⊗n` with truncated concatenation, `d` extended as a derivation.
    pub fn free(name: impl Into<String>, generators: &crate::exactlin::ChainComplex, n: usize) -> Result<Self> {
        let letters = generators.space().clone();
        let mut op = LocalOperator::new(-1);
        let d = generators.differential();
        for i in 0..letters.dim() {
            for (j, c) in d.column(i).iter() {
                op.add_rule(vec![i], vec![j], c.clone());
            }
        }
        Self::from_words(name, &WordSpace::new(letters, n), &op)
    }

    /// Tower of truncated word algebras with a differential given by a local operator
    /// (a derivation of the free algebra).
    pub fn from_words(name: impl Into<String>, top: &WordSpace, d: &LocalOperator) -> Result<Self> {
        let n = top.max_weight().max(1);
        let spaces: Vec<WordSpace> = (1..=n).map(|w| top.truncate(w)).collect();
        let layers = par::map_coarse(n, |k| word_algebra(&spaces[k], d))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let projections = (0..n - 1)
            .map(|k| spaces[k + 1].projection_to(&spaces[k]))
            .collect();
        AlgebraTower::new(name, layers, projections)
    }
}

/// The truncated word algebra: concatenation, words beyond the weight bound dropped.
pub fn word_algebra(ws: &WordSpace, d: &LocalOperator) -> Result<DgAssocAlgebra> {
    let diff = d.extend(ws, ws)?;
    let mut product = Bilinear::new();
    for ((a, b), c) in ws.concatenation() {
        product.insert((a, b), Vector::basis(c));
    }
    DgAssocAlgebra::new(format!("T≤{}", ws.max_weight()), diff, product, None)
}

struct Quotient {
    ideal: Echelon,
    kept: Vec<usize>,
    pos: std::collections::HashMap<usize, usize>,
    algebra: Result<DgAssocAlgebra>,
}

impl Quotient {
    fn new(x: &DgAssocAlgebra, ideal: &Echelon) -> Self {
        let kept: Vec<usize> = (0..x.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
        let pos = positions(&kept);
        let mut q = Quotient {
            ideal: ideal.clone(),
            kept,
            pos,
            algebra: Err(Error::InvalidStructure(String::new())),
        };
        q.algebra = q.build(x);
        q
    }

    fn reduce(&self, v: &Vector) -> Vector {
        self.ideal
            .reduce(v)
            .map_indices(|j| Some(*self.pos.get(&j).expect("reduced vectors avoid pivots")))
    }

    fn build(&self, x: &DgAssocAlgebra) -> Result<DgAssocAlgebra> {
        for r in self.ideal.rows() {
            if !self.ideal.contains(&x.differential().apply(r)) {
                return Err(Error::InvalidStructure("ideal is not closed under d".into()));
            }
        }
        let space: Arc<GradedSpace> = Arc::new(x.space().restrict(&self.kept));
        let cols = self
            .kept
            .iter()
            .map(|&i| self.reduce(x.differential().column(i)))
            .collect();
        let d = GradedMap::new(space.clone(), space, -1, cols)?;
        let mut product = Bilinear::new();
        for (&(a, b), v) in x.product() {
            if let (Some(&pa), Some(&pb)) = (self.pos.get(&a), self.pos.get(&b)) {
                let r = self.reduce(v);
                if !r.is_zero() {
                    product.insert((pa, pb), r);
                }
            }
        }
        let unit = x.unit().map(|u| self.reduce(u));
        DgAssocAlgebra::new(x.name().to_string(), d, product, unit)
    }
}

/// Smallest two-sided dg ideal containing the generators.
pub fn ideal_closure(x: &DgAssocAlgebra, generators: &[Vector]) -> Echelon {
    let mut ech = Echelon::new();
    let mut frontier: Vec<Vector> = Vec::new();
    for g in generators {
        if ech.insert(g.clone()).is_some() {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let products = par::map_slice(&frontier, |v| {
            let mut out = vec![x.differential().apply(v)];
            for j in 0..x.dim() {
                let e = Vector::basis(j);
                out.push(x.mul(&e, v));
                out.push(x.mul(v, &e));
            }
            out
        });
        frontier.clear();
        for v in products.into_iter().flatten() {
            if !v.is_zero() && ech.insert(v.clone()).is_some() {
                frontier.push(v);
            }
        }
    }
    ech
}

/// Tower presented by generators, a differential and relations: the free
/// complete tensor algebra modulo the closed dg ideal generated by the relations.
pub fn presented_tower(
    name: impl Into<String>,
    generators: &crate::exactlin::ChainComplex,
    relations: &[Tensor],
    n: usize,
) -> Result<AlgebraTower> {
    let free = AlgebraTower::free("free", generators, n)?;
    if relations.is_empty() {
        return Ok(free.with_name(name));
    }
    let top_words = WordSpace::new(generators.space().clone(), n);
    let x = free.top().clone();
    let rels: Vec<Vector> = relations
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|(w, c)| top_words.index_of(w).map(|i| (i, c.clone())))
                .collect()
        })
        .collect();
    let ideals: Vec<Echelon> = par::map_coarse(n, |k| {
        let omega = k + 1;
        let mut gens = rels.clone();
        gens.extend(
            (0..top_words.dim())
                .filter(|&i| top_words.weight(i) > omega)
                .map(Vector::basis),
        );
        ideal_closure(&x, &gens)
    });
    AlgebraTower::from_filtered(name, &x, &ideals)
}
