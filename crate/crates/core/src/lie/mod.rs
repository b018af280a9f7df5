//! Lie algebras: skew-symmetrization, free complete Lie algebras, and the
//! universal enveloping absolute algebra computed by PBW rewriting.

mod envelope;

pub use envelope::{
    envelope_invariants, envelope_map, extend_lie_morphism, restrict_to_generators, universal_envelope,
    universal_envelope_with_budget, Envelope, EnvelopeInvariants, InvariantsReport, PbwBasis,
};

use std::sync::Arc;

use serde::Serialize;

use crate::assoc::{Bilinear, DgAssocAlgebra, DgLieAlgebra};
use crate::error::Result;
use crate::exactlin::{Echelon, GradedSpace, Rational, Vector, WordSpace};

/// `[a,b] = ab − (-1)^{|a||b|} ba`.
pub fn skew(b: &DgAssocAlgebra) -> Result<DgLieAlgebra> {
    let sp = b.space();
    let mut bracket = Bilinear::new();
    for x in 0..b.dim() {
        for y in 0..b.dim() {
            let s = -Rational::sign(sp.degree(x) * sp.degree(y));
            let mut v = b.mul_basis(x, y);
            v.axpy(&s, &b.mul_basis(y, x));
            if !v.is_zero() {
                bracket.insert((x, y), v);
            }
        }
    }
    DgLieAlgebra::new(format!("Skew({})", b.name()), b.differential().clone(), bracket)
}

/// Lie elements of `T̄(V)` by weight.
#[derive(Clone, Debug)]
pub struct FreeLie {
    pub words: WordSpace,
    /// Basis of the weight-`k` Lie elements at index `k - 1`.
    pub layers: Vec<Vec<Vector>>,
}

impl FreeLie {
    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeLieDims {
    pub weight: usize,
    pub dim: usize,
}

/// Weight-`k` layer spanned by left-normed brackets `[x_1,[x_2,…,x_k]]` inside `V^⊗k`.
pub fn free_complete_lie(v: &Arc<GradedSpace>, n: usize) -> FreeLie {
    let words = WordSpace::new(v.clone(), n);
    let tensor = crate::absolute::word_algebra(&words, &crate::exactlin::LocalOperator::new(-1))
        .expect("free algebra with zero differential");
    let lie = skew(&tensor).expect("skew of an associative algebra");
    let mut layers: Vec<Vec<Vector>> = Vec::new();
    if n == 0 || v.dim() == 0 {
        return FreeLie { words, layers: vec![Vec::new(); n] };
    }
    layers.push((0..v.dim()).map(|i| Vector::basis(words.index_of(&[i]).expect("letter"))).collect());
    for _ in 1..n {
        let prev = layers.last().expect("nonempty");
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for x in 0..v.dim() {
            let e = Vector::basis(words.index_of(&[x]).expect("letter"));
            for l in prev {
                let b = lie.br(&e, l);
                if !b.is_zero() && ech.insert(b.clone()).is_some() {
                    basis.push(b);
                }
            }
        }
        layers.push(basis);
    }
    FreeLie { words, layers }
}

#[cfg(test)]
mod tests;
