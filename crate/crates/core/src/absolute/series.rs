//! Evaluation of the structural map on formal series.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AlgebraTower;
use crate::assoc::{add_tensor_term, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{GradedMap, Rational, Vector};
use crate::par;

/// A finite truncation of a series `Σ_n Σ_i a_1⊗…⊗a_n` of tensor words in the
/// top layer `A/W_N` of a tower.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FormalSeries {
    terms: Tensor,
}

impl FormalSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Rational)>>(terms: I) -> Self {
        let mut s = Self::new();
        for (w, c) in terms {
            s.add(w, c);
        }
        s
    }

    /// The one-letter series `a`.
    pub fn letter(a: usize) -> Self {
        Self::from_terms([(vec![a], Rational::one())])
    }

    pub fn add(&mut self, word: Vec<usize>, c: Rational) {
        assert!(!word.is_empty(), "series words are nonempty");
        add_tensor_term(&mut self.terms, word, c);
    }

    pub fn terms(&self) -> &Tensor {
        &self.terms
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The weight-`ω` component: words of length `ω`.
    pub fn component(&self, omega: usize) -> Tensor {
        self.terms
            .iter()
            .filter(|(w, _)| w.len() == omega)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// Expand a word of vectors multilinearly into basis words.
    pub fn from_vector_word(c: &Rational, factors: &[Vector]) -> Self {
        let mut acc: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
        for f in factors {
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (w, x) in &acc {
                for (i, y) in f.iter() {
                    let mut w2 = w.clone();
                    w2.push(i);
                    next.push((w2, x * y));
                }
            }
            acc = next;
        }
        Self::from_terms(acc.into_iter().filter(|(w, _)| !w.is_empty()))
    }

    pub fn scaled_add(&mut self, c: &Rational, other: &FormalSeries) {
        for (w, x) in &other.terms {
            self.add(w.clone(), c * x);
        }
    }
}

/// An element of a tower: one component per layer, compatible under projections.
pub type TowerElement = Vec<Vector>;

impl AlgebraTower {
    fn projections_from_top(&self) -> Vec<GradedMap> {
        let n = self.truncation();
        par::map_coarse(n, |k| self.projection_between(n, k + 1))
    }

    /// `γ_A(s)`: in each layer `A/W_ω` only words of length ≤ ω contribute,
    /// each by its iterated product.
    pub fn gamma(&self, s: &FormalSeries) -> Result<TowerElement> {
        let n = self.truncation();
        if s.max_length() > n {
            return Err(Error::Truncation {
                length: s.max_length(),
                max_weight: n,
            });
        }
        let proj = self.projections_from_top();
        Ok(par::map_coarse(n, |k| {
            let omega = k + 1;
            let layer = self.layer(omega);
            let mut out = Vector::new();
            for (w, c) in s.terms() {
                if w.len() > omega {
                    continue;
                }
                let mut acc = proj[k].column(w[0]).clone();
                for &l in &w[1..] {
                    if acc.is_zero() {
                        break;
                    }
                    acc = layer.mul(&acc, proj[k].column(l));
                }
                out.axpy(c, &acc);
            }
            out
        }))
    }

    /// Whether an element's components agree under the projections.
    pub fn is_compatible(&self, x: &TowerElement) -> bool {
        (1..self.truncation()).all(|w| self.projection(w).apply(&x[w]) == x[w - 1])
    }

    /// The element with the given top-layer component.
    pub fn element_from_top(&self, top: &Vector) -> TowerElement {
        self.projections_from_top().iter().map(|p| p.apply(top)).collect()
    }

    /// `d` applied to a series as a coderivation of words:
    /// `Σ_i (-1)^{|a_1|+…+|a_{i-1}|} a_1⊗…⊗da_i⊗…⊗a_n`.
    pub fn series_differential(&self, s: &FormalSeries) -> FormalSeries {
        let top = self.top();
        let d = top.differential();
        let mut out = FormalSeries::new();
        for (w, c) in s.terms() {
            let mut prefix = 0i64;
            for i in 0..w.len() {
                let sign = Rational::sign(prefix);
                for (j, x) in d.column(w[i]).iter() {
                    let mut w2 = w.clone();
                    w2[i] = j;
                    out.add(w2, &sign * c * x);
                }
                prefix += top.space().degree(w[i]);
            }
        }
        out
    }

    /// Unit law: `γ(a) = a` for the one-letter series of every top-layer basis element.
    pub fn gamma_unit_defect(&self) -> Option<usize> {
        (0..self.top().dim()).find(|&a| {
            let g = self.gamma(&FormalSeries::letter(a)).expect("length 1");
            g != self.element_from_top(&Vector::basis(a))
        })
    }

    /// Differential condition: `d γ(s) = γ(d s)` in every layer.
    pub fn gamma_differential_holds(&self, s: &FormalSeries) -> Result<bool> {
        let lhs: TowerElement = self
            .gamma(s)?
            .iter()
            .enumerate()
            .map(|(k, v)| self.layer(k + 1).differential().apply(v))
            .collect();
        Ok(lhs == self.gamma(&self.series_differential(s))?)
    }

    /// Associativity: evaluating inner series first, then the outer word,
    /// agrees with evaluating the substituted (concatenated) series.
    /// `outer` lists coefficients with words of inner series.
    pub fn gamma_associativity_holds(&self, outer: &[(Rational, Vec<FormalSeries>)]) -> Result<bool> {
        let n = self.truncation();
        let mut lhs_series = FormalSeries::new();
        let mut rhs_series = FormalSeries::new();
        for (c, inner) in outer {
            let values = inner
                .iter()
                .map(|s| Ok(self.gamma(s)?.pop().expect("nonempty tower")))
                .collect::<Result<Vec<_>>>()?;
            lhs_series.scaled_add(&Rational::one(), &FormalSeries::from_vector_word(c, &values));
            // substitution: concatenate words multilinearly
            let mut acc: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
            for s in inner {
                let mut next = Vec::new();
                for (w, x) in &acc {
                    for (v, y) in s.terms() {
                        let mut w2 = w.clone();
                        w2.extend_from_slice(v);
                        if w2.len() <= n {
                            next.push((w2, x * y));
                        }
                    }
                }
                acc = next;
            }
            for (w, x) in acc {
                rhs_series.add(w, x);
            }
        }
        Ok(self.gamma(&lhs_series)? == self.gamma(&rhs_series)?)
    }
}

/// A seeded random series of at most `terms` words of length ≤ `max_len`
/// in the top-layer basis, with small integer coefficients.
pub fn random_series(tower: &AlgebraTower, seed: u64, max_len: usize, terms: usize) -> FormalSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = tower.top().dim();
    let mut s = FormalSeries::new();
    if dim == 0 {
        return s;
    }
    for _ in 0..terms {
        let len = rng.gen_range(1..=max_len.max(1));
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
        let c = Rational::from_integer(rng.gen_range(-3..=3));
        s.add(w, c);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadLawReport {
    pub tower: String,
    pub seeds: Vec<u64>,
    pub unit: bool,
    /// Seeds whose associativity (resp. differential) sample failed.
    pub associativity_failures: Vec<u64>,
    pub differential_failures: Vec<u64>,
}

impl MonadLawReport {
    pub fn passed(&self) -> bool {
        self.unit && self.associativity_failures.is_empty() && self.differential_failures.is_empty()
    }
}

/// Unit law once, then associativity and the differential condition on one
/// seeded random sample per seed.
pub fn monad_laws(tower: &AlgebraTower, seeds: std::ops::Range<u64>) -> Result<MonadLawReport> {
    let n = tower.truncation();
    let seeds: Vec<u64> = seeds.collect();
    let results = par::map_slice(&seeds, |&seed| -> Result<(bool, bool)> {
        let s = random_series(tower, seed, n, 4);
        let inner1 = random_series(tower, seed.wrapping_mul(31).wrapping_add(1), n.div_ceil(2), 3);
        let inner2 = random_series(tower, seed.wrapping_mul(31).wrapping_add(2), n / 2, 3);
        let outer = vec![
            (Rational::from_integer(2), vec![inner1.clone(), inner2]),
            (Rational::from_integer(-1), vec![inner1]),
        ];
        Ok((tower.gamma_associativity_holds(&outer)?, tower.gamma_differential_holds(&s)?))
    });
    let mut associativity_failures = Vec::new();
    let mut differential_failures = Vec::new();
    for (seed, r) in seeds.iter().zip(results) {
        let (a, d) = r?;
        if !a {
            associativity_failures.push(*seed);
        }
        if !d {
            differential_failures.push(*seed);
        }
    }
    Ok(MonadLawReport {
        tower: tower.name().to_string(),
        unit: tower.gamma_unit_defect().is_none(),
        seeds,
        associativity_failures,
        differential_failures,
    })
}
