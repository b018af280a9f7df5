use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::absolute::AlgebraTower;
use crate::assoc::{Bilinear, DgAssocAlgebra, DgLieAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{solve, BasisElement, Echelon, GradedMap, GradedSpace, Rational, Vector};
use crate::par;

/// Default bound on rewriting steps per normal-form computation.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// A basis adapted to the lower central series, with weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwBasis {
    /// Generators in rewriting order (each labelled by its expression in the input basis).
    pub generators: Vec<String>,
    /// Lower-central-series depth of each generator.
    pub weights: Vec<usize>,
    /// Dimension of `𝔤^∞`, the part of `𝔤` lying in every `W_ω` (zero for nilpotent `𝔤`).
    pub infinitely_deep: usize,
    /// Normal monomials of the top layer, as generator-index words.
    pub monomials: Vec<Vec<usize>>,
    /// Total rewriting steps used to build the top layer.
    pub steps: usize,
}

/// `Û(𝔤)` truncated at `N`, with the data needed to map into and out of it.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub tower: AlgebraTower,
    pub pbw: PbwBasis,
    /// `𝔤` in the adapted basis (modulo `𝔤^∞`).
    pub adapted: DgLieAlgebra,
    /// Column `i`: adapted generator `i` in the input basis.
    pub change_of_basis: Vec<Vector>,
    /// Input basis element `i` expressed in adapted generators (modulo `𝔤^∞`).
    pub to_adapted: Vec<Vector>,
    rewriter: Rewriter,
}

/// Lower central series with an adapted homogeneous basis.
fn adapted_basis(g: &DgLieAlgebra) -> (Vec<Vector>, Vec<usize>, usize) {
    let dim = g.dim();
    let mut spans: Vec<Vec<Vector>> = vec![(0..dim).map(Vector::basis).collect()];
    let mut ranks = vec![dim];
    loop {
        let prev = spans.last().expect("nonempty");
        let mut ech = Echelon::new();
        let mut next = Vec::new();
        for x in 0..dim {
            for v in prev {
                let b = g.br(&Vector::basis(x), v);
                if !b.is_zero() && ech.insert(b.clone()).is_some() {
                    next.push(b);
                }
            }
        }
        let r = next.len();
        if r == *ranks.last().expect("nonempty") {
            break;
        }
        spans.push(next);
        ranks.push(r);
    }
    // spans[k] spans 𝔤^{k+1}; the last one is 𝔤^∞
    let depth = spans.len();
    let mut ech = Echelon::new();
    let mut inf = Vec::new();
    for v in &spans[depth - 1] {
        if ech.insert(v.clone()).is_some() {
            inf.push(v.clone());
        }
    }
    let mut chosen: Vec<(usize, Vector)> = Vec::new();
    for k in (0..depth - 1).rev() {
        let candidates = (0..dim).map(Vector::basis).chain(spans[k].iter().cloned());
        let sub = Echelon::from_vectors(&spans[k]);
        for c in candidates {
            if sub.contains(&c) && ech.insert(c.clone()).is_some() {
                chosen.push((k + 1, c));
            }
        }
    }
    // order by weight, then by first input index, for a deterministic rewriting order
    chosen.sort_by(|a, b| (a.0, a.1.leading().map(|l| l.0)).cmp(&(b.0, b.1.leading().map(|l| l.0))));
    let n_inf = inf.len();
    let (weights, mut vectors): (Vec<usize>, Vec<Vector>) = chosen.into_iter().unzip();
    vectors.extend(inf);
    (vectors, weights, n_inf)
}

fn label_of(space: &GradedSpace, v: &Vector) -> String {
    match v.leading() {
        Some((i, c)) if v.len() == 1 && c.is_one() => space.label(i).to_string(),
        _ => format!("({})", space.format_vector(v)),
    }
}

#[derive(Clone, Debug)]
struct Rewriter {
    degrees: Vec<i64>,
    weights: Vec<usize>,
    bracket: Bilinear,
    budget: usize,
}

impl Rewriter {
    fn weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&i| self.weights[i]).sum()
    }

    fn is_normal(&self, w: &[usize]) -> Option<usize> {
        w.windows(2).position(|p| p[0] > p[1] || (p[0] == p[1] && self.degrees[p[0]] % 2 != 0))
    }

    /// Normal form of a combination of words, dropping words of weight > `max`.
    /// Returns the number of rewriting steps.
    fn normalize(&self, input: Tensor, max: usize) -> Result<(Tensor, usize)> {
        let mut pending: Tensor = input.into_iter().filter(|(w, _)| self.weight(w) <= max).collect();
        let mut out = Tensor::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            let Some(p) = self.is_normal(&w) else {
                crate::assoc::add_tensor_term(&mut out, w, c);
                continue;
            };
            steps += 1;
            if steps > self.budget {
                return Err(Error::NonTerminating { budget: self.budget });
            }
            let (a, b) = (w[p], w[p + 1]);
            let mut push = |word: Vec<usize>, x: Rational| {
                if self.weight(&word) <= max && !word.is_empty() {
                    crate::assoc::add_tensor_term(&mut pending, word, x);
                }
            };
            if a != b {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                push(swapped, &c * Rational::sign(self.degrees[a] * self.degrees[b]));
            }
            // ab = ±ba + [a,b]; for odd a, aa = ½[a,a]
            let factor = if a == b { Rational::new(1, 2) } else { Rational::one() };
            if let Some(br) = self.bracket.get(&(a, b)) {
                for (k, x) in br.iter() {
                    let mut nw = w[..p].to_vec();
                    nw.push(k);
                    nw.extend_from_slice(&w[p + 2..]);
                    push(nw, &c * &factor * x);
                }
            }
        }
        Ok((out, steps))
    }
}

pub fn universal_envelope(g: &DgLieAlgebra, n: usize) -> Result<Envelope> {
    universal_envelope_with_budget(g, n, DEFAULT_STEP_BUDGET)
}

/// `Û(𝔤)/W_ω` has basis the ordered monomials of total weight ≤ ω in a basis
/// adapted to the lower central series; products are rewritten to normal form.
pub fn universal_envelope_with_budget(g: &DgLieAlgebra, n: usize, budget: usize) -> Result<Envelope> {
    let (vectors, weights, n_inf) = adapted_basis(g);
    let m = weights.len();
    let sp = g.space();
    // coordinates in the adapted basis; 𝔤^∞ coordinates are dropped
    let express = |v: &Vector| -> Vector {
        let x = solve(&vectors, v).expect("adapted vectors form a basis");
        x.map_indices(|i| (i < m).then_some(i))
    };
    let labels: Vec<BasisElement> = vectors[..m]
        .iter()
        .map(|v| {
            let deg = sp.homogeneous_degree(v).unwrap_or(0);
            BasisElement::new(label_of(sp, v), deg)
        })
        .collect();
    let adapted_space = Arc::new(GradedSpace::new(labels)?);
    let mut bracket = Bilinear::new();
    for a in 0..m {
        for b in 0..m {
            let v = express(&g.br(&vectors[a], &vectors[b]));
            if !v.is_zero() {
                bracket.insert((a, b), v);
            }
        }
    }
    let d_cols = (0..m).map(|a| express(&g.differential().apply(&vectors[a]))).collect();
    let d = GradedMap::new(adapted_space.clone(), adapted_space.clone(), -1, d_cols)?;
    let adapted = DgLieAlgebra::new(g.name().to_string(), d, bracket.clone())?;
    let to_adapted = (0..g.dim()).map(|i| express(&Vector::basis(i))).collect();
    let rewriter = Rewriter {
        degrees: (0..m).map(|i| adapted_space.degree(i)).collect(),
        weights: weights.clone(),
        bracket,
        budget,
    };
    let (layers, monomials, steps) = build_layers(&adapted, &rewriter, n)?;
    let projections = (1..n)
        .map(|w| {
            let (src, tgt) = (&monomials[w], &monomials[w - 1]);
            let index: BTreeMap<&Vec<usize>, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
            GradedMap::new(
                layers[w].space().clone(),
                layers[w - 1].space().clone(),
                0,
                src.iter()
                    .map(|m| index.get(m).map_or_else(Vector::new, |&i| Vector::basis(i)))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let tower = AlgebraTower::new(format!("U^({})", g.name()), layers, projections)?;
    let pbw = PbwBasis {
        generators: adapted_space.elements().iter().map(|e| e.label.clone()).collect(),
        weights,
        infinitely_deep: n_inf,
        monomials: monomials.last().cloned().unwrap_or_default(),
        steps,
    };
    Ok(Envelope {
        tower,
        pbw,
        adapted,
        change_of_basis: vectors[..m].to_vec(),
        to_adapted,
        rewriter,
    })
}

fn normal_monomials(r: &Rewriter, max: usize) -> Vec<Vec<usize>> {
    // non-decreasing words (strictly increasing on odd letters) of weight ≤ max
    let m = r.weights.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..m).filter(|&i| r.weights[i] <= max).map(|i| vec![i]).collect();
    while let Some(w) = stack.pop() {
        let last = *w.last().expect("nonempty");
        let wt = r.weight(&w);
        for k in last..m {
            if k == last && r.degrees[k] % 2 != 0 {
                continue;
            }
            if wt + r.weights[k] <= max {
                let mut nw = w.clone();
                nw.push(k);
                stack.push(nw);
            }
        }
        out.push(w);
    }
    out.sort_by(|a, b| (r.weight(a), a).cmp(&(r.weight(b), b)));
    out
}

type Layers = (Vec<DgAssocAlgebra>, Vec<Vec<Vec<usize>>>, usize);

fn build_layers(g: &DgLieAlgebra, r: &Rewriter, n: usize) -> Result<Layers> {
    let built = par::map_coarse(n, |k| -> Result<(DgAssocAlgebra, Vec<Vec<usize>>, usize)> {
        let omega = k + 1;
        let monos = normal_monomials(r, omega);
        let index: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |t: Tensor| -> Vector {
            t.into_iter()
                .map(|(w, c)| (*index.get(&w).expect("normal words of bounded weight are basis"), c))
                .collect()
        };
        let gs = g.space();
        let elements: Vec<BasisElement> = monos
            .iter()
            .map(|m| {
                let label = m.iter().map(|&i| gs.label(i)).collect::<Vec<_>>().join("·");
                BasisElement::new(label, m.iter().map(|&i| gs.degree(i)).sum())
            })
            .collect();
        let space = Arc::new(GradedSpace::new(elements)?);
        let mut steps = 0;
        let mut product = Bilinear::new();
        for (i, u) in monos.iter().enumerate() {
            for (j, v) in monos.iter().enumerate() {
                if r.weight(u) + r.weight(v) > omega {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                let (t, s) = r.normalize([(w, Rational::one())].into_iter().collect(), omega)?;
                steps += s;
                let vct = to_vec(t);
                if !vct.is_zero() {
                    product.insert((i, j), vct);
                }
            }
        }
        let mut cols = Vec::with_capacity(monos.len());
        for u in &monos {
            // Leibniz: Σ_i (-1)^{|u_1|+…+|u_{i-1}|} u_1⋯d(u_i)⋯u_k
            let mut t = Tensor::new();
            let mut prefix = 0i64;
            for (p, &x) in u.iter().enumerate() {
                for (y, c) in g.differential().column(x).iter() {
                    let mut w = u.clone();
                    w[p] = y;
                    crate::assoc::add_tensor_term(&mut t, w, c * Rational::sign(prefix));
                }
                prefix += gs.degree(x);
            }
            let (t, s) = r.normalize(t, omega)?;
            steps += s;
            cols.push(to_vec(t));
        }
        let d = GradedMap::new(space.clone(), space, -1, cols)?;
        Ok((DgAssocAlgebra::new(format!("U^/W{omega}"), d, product, None)?, monos, steps))
    });
    let mut layers = Vec::with_capacity(n);
    let mut monomials = Vec::with_capacity(n);
    let mut steps = 0;
    for b in built {
        let (a, m, s) = b?;
        layers.push(a);
        monomials.push(m);
        steps = s;
    }
    Ok((layers, monomials, steps))
}

impl Envelope {
    /// A combination of generator words as an element of layer `ω`.
    fn evaluate(&self, words: Tensor, omega: usize) -> Result<Vector> {
        let (t, _) = self.rewriter.normalize(words, omega)?;
        let monos = normal_monomials(&self.rewriter, omega);
        let index: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(t.into_iter().map(|(w, c)| (index[&w], c)).collect())
    }

    /// The image of `𝔤` in layer `ω`, on the input basis.
    pub fn generator_image(&self, omega: usize) -> Result<Vec<Vector>> {
        self.to_adapted
            .iter()
            .map(|v| self.evaluate(v.iter().map(|(i, c)| (vec![i], c.clone())).collect(), omega))
            .collect()
    }
}

/// Layer maps `Û(𝔤)/W_ω → Û(𝔥)/W_ω` induced by a Lie morphism `f: 𝔤 → 𝔥`.
pub fn envelope_map(f: &GradedMap, g: &Envelope, h: &Envelope) -> Result<Vec<GradedMap>> {
    let n = g.tower.truncation().min(h.tower.truncation());
    // f on adapted generators of 𝔤, in adapted generators of 𝔥
    let images: Vec<Vector> = g
        .change_of_basis
        .iter()
        .map(|v| {
            let fv = f.apply(v);
            let mut out = Vector::new();
            for (i, c) in fv.iter() {
                out.axpy(c, &h.to_adapted[i]);
            }
            out
        })
        .collect();
    (1..=n)
        .map(|omega| {
            let monos = normal_monomials(&g.rewriter, omega);
            let cols = monos
                .iter()
                .map(|m| {
                    let mut acc: Tensor = [(Vec::new(), Rational::one())].into_iter().collect();
                    for &x in m {
                        let mut next = Tensor::new();
                        for (w, c) in &acc {
                            for (y, k) in images[x].iter() {
                                let mut nw = w.clone();
                                nw.push(y);
                                crate::assoc::add_tensor_term(&mut next, nw, c * k);
                            }
                        }
                        acc = next;
                    }
                    h.evaluate(acc, omega)
                })
                .collect::<Result<Vec<_>>>()?;
            GradedMap::new(
                g.tower.layer(omega).space().clone(),
                h.tower.layer(omega).space().clone(),
                0,
                cols,
            )
        })
        .collect()
}

/// Transpose of a Lie morphism `φ: 𝔤 → Skew(Res A)` (valued in the top layer of
/// `A`) to layer maps `Û(𝔤)/W_ω → A/W_ω`.
pub fn extend_lie_morphism(phi: &GradedMap, env: &Envelope, a: &AlgebraTower) -> Result<Vec<GradedMap>> {
    let n = env.tower.truncation().min(a.truncation());
    (1..=n)
        .map(|omega| {
            let p = a.projection_between(a.truncation(), omega);
            let layer = a.layer(omega);
            let gens: Vec<Vector> = env.change_of_basis.iter().map(|v| p.apply(&phi.apply(v))).collect();
            let monos = normal_monomials(&env.rewriter, omega);
            let cols = monos
                .iter()
                .map(|m| {
                    let mut acc = gens[m[0]].clone();
                    for &x in &m[1..] {
                        acc = layer.mul(&acc, &gens[x]);
                    }
                    acc
                })
                .collect();
            GradedMap::new(env.tower.layer(omega).space().clone(), layer.space().clone(), 0, cols)
        })
        .collect()
}

/// Transpose back: restrict the top-layer map to the generators, `𝔤 → Res A`.
pub fn restrict_to_generators(maps: &[GradedMap], env: &Envelope, g: &DgLieAlgebra) -> Result<GradedMap> {
    let top = maps.last().ok_or_else(|| Error::InvalidStructure("empty tower".into()))?;
    let n = maps.len();
    let images = env.generator_image(n)?;
    GradedMap::new(g.space().clone(), top.target().clone(), 0, images.iter().map(|v| top.apply(v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeInvariants {
    pub name: String,
    pub layer_dims: Vec<usize>,
    /// `dim` of the span of graded commutators in each layer.
    pub commutator_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub left: EnvelopeInvariants,
    pub right: EnvelopeInvariants,
    /// `true` certifies that the envelopes (hence the Lie algebras) are not isomorphic;
    /// `false` is inconclusive.
    pub distinguished: bool,
    pub first_difference: Option<String>,
}

fn invariants(g: &DgLieAlgebra, n: usize) -> Result<EnvelopeInvariants> {
    let env = universal_envelope(g, n)?;
    let commutator_dims = env
        .tower
        .layers()
        .iter()
        .map(|l| {
            let sp = l.space();
            let mut ech = Echelon::new();
            for a in 0..l.dim() {
                for b in 0..l.dim() {
                    let mut v = l.mul_basis(a, b);
                    v.axpy(&-Rational::sign(sp.degree(a) * sp.degree(b)), &l.mul_basis(b, a));
                    ech.insert(v);
                }
            }
            ech.rank()
        })
        .collect();
    Ok(EnvelopeInvariants {
        name: g.name().to_string(),
        layer_dims: env.tower.layer_dims(),
        commutator_dims,
    })
}

pub fn envelope_invariants(g: &DgLieAlgebra, h: &DgLieAlgebra, n: usize) -> Result<InvariantsReport> {
    let left = invariants(g, n)?;
    let right = invariants(h, n)?;
    let first_difference = (0..n).find_map(|k| {
        if left.layer_dims[k] != right.layer_dims[k] {
            Some(format!("layer {} dimension {} vs {}", k + 1, left.layer_dims[k], right.layer_dims[k]))
        } else if left.commutator_dims[k] != right.commutator_dims[k] {
            Some(format!(
                "layer {} commutator dimension {} vs {}",
                k + 1,
                left.commutator_dims[k],
                right.commutator_dims[k]
            ))
        } else {
            None
        }
    });
    Ok(InvariantsReport {
        left,
        right,
        distinguished: first_difference.is_some(),
        first_difference,
    })
}
