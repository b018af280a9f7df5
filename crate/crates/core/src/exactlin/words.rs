//! Weight-graded tensor words and the local operator extension.
//!
//! A [`WordSpace`] is the span of all words `x_1|…|x_k` in a set of graded
//! letters whose total weight lies in a range. A [`LocalOperator`] is a finite
//! table of rewrite rules `u ↦ Σ c·v` of a fixed degree; its extension acts on
//! a word by applying a rule at every position, with the Koszul sign picked up
//! when the operator passes the prefix. This single engine realises both the
//! coderivation of a cofree coalgebra extending a component `(sV)^⊗k → sV` and
//! the derivation of a free algebra extending `V → V^⊗k`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{BasisElement, GradedMap, GradedSpace, Rational, Vector};
use crate::error::{Error, Result};

pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct WordSpace {
    letters: Arc<GradedSpace>,
    letter_weights: Vec<usize>,
    min_weight: usize,
    max_weight: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    space: Arc<GradedSpace>,
}

impl PartialEq for WordSpace {
    fn eq(&self, other: &Self) -> bool {
        self.letter_weights == other.letter_weights
            && self.min_weight == other.min_weight
            && self.max_weight == other.max_weight
            && *self.letters == *other.letters
    }
}

impl WordSpace {
    /// Words of length `1..=max_len` in letters of weight one.
    pub fn new(letters: Arc<GradedSpace>, max_len: usize) -> Self {
        let w = vec![1; letters.dim()];
        Self::weighted(letters, w, 1, max_len)
    }

    /// Words of total weight in `min_weight..=max_weight`. Letter weights must be ≥ 1.
    pub fn weighted(
        letters: Arc<GradedSpace>,
        letter_weights: Vec<usize>,
        min_weight: usize,
        max_weight: usize,
    ) -> Self {
        assert_eq!(letters.dim(), letter_weights.len());
        assert!(letter_weights.iter().all(|&w| w >= 1), "letter weights must be positive");
        let min_weight = min_weight.max(1);
        // by_weight[w] = all words of weight exactly w, in lexicographic order
        let mut by_weight: Vec<Vec<Word>> = vec![Vec::new(); max_weight + 1];
        by_weight[0].push(Vec::new());
        for w in 1..=max_weight {
            let mut list = Vec::new();
            for (l, &lw) in letter_weights.iter().enumerate() {
                if lw <= w {
                    for rest in &by_weight[w - lw] {
                        let mut word = Vec::with_capacity(rest.len() + 1);
                        word.push(l);
                        word.extend_from_slice(rest);
                        list.push(word);
                    }
                }
            }
            by_weight[w] = list;
        }
        let words: Vec<Word> = by_weight
            .into_iter()
            .enumerate()
            .filter(|(w, _)| *w >= min_weight)
            .flat_map(|(_, ws)| ws)
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let elements = words
            .iter()
            .map(|word| {
                let label = word
                    .iter()
                    .map(|&l| letters.label(l))
                    .collect::<Vec<_>>()
                    .join("|");
                let degree = word.iter().map(|&l| letters.degree(l)).sum();
                let weight: usize = word.iter().map(|&l| letter_weights[l]).sum();
                BasisElement::weighted(label, degree, weight as u32)
            })
            .collect();
        let space = Arc::new(GradedSpace::new(elements).expect("word labels are distinct"));
        WordSpace {
            letters,
            letter_weights,
            min_weight,
            max_weight,
            words,
            index,
            space,
        }
    }

    /// Same letters, smaller weight bound.
    pub fn truncate(&self, max_weight: usize) -> WordSpace {
        Self::weighted(
            self.letters.clone(),
            self.letter_weights.clone(),
            self.min_weight,
            max_weight,
        )
    }

    pub fn letters(&self) -> &Arc<GradedSpace> {
        &self.letters
    }

    pub fn letter_weight(&self, l: usize) -> usize {
        self.letter_weights[l]
    }

    pub fn letter_weights(&self) -> &[usize] {
        &self.letter_weights
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.space.element(i).weight.unwrap_or(0) as usize
    }

    pub fn indices_of_weight(&self, w: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weight(i) == w).collect()
    }

    pub fn letter_degrees(&self, word: &[usize]) -> Vec<i64> {
        word.iter().map(|&l| self.letters.degree(l)).collect()
    }

    /// Index of the concatenation `a|b`, if it is within the weight bound.
    pub fn concat(&self, a: usize, b: usize) -> Option<usize> {
        let mut w = self.words[a].clone();
        w.extend_from_slice(&self.words[b]);
        self.index_of(&w)
    }

    /// The truncated concatenation product as a bilinear table.
    pub fn concatenation(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                if self.weight(a) + self.weight(b) > self.max_weight {
                    continue;
                }
                if let Some(c) = self.concat(a, b) {
                    out.push(((a, b), c));
                }
            }
        }
        out
    }

    /// Deconcatenation `w ↦ Σ u ⊗ v` over splittings into two nonempty words.
    pub fn deconcatenation(&self, i: usize) -> Vec<(usize, usize)> {
        let w = &self.words[i];
        (1..w.len())
            .filter_map(|k| Some((self.index_of(&w[..k])?, self.index_of(&w[k..])?)))
            .collect()
    }

    /// Projection onto the words of weight ≤ `target.max_weight()` (same letters).
    pub fn projection_to(&self, target: &WordSpace) -> GradedMap {
        let columns = self
            .words
            .iter()
            .map(|w| match target.index_of(w) {
                Some(j) => Vector::basis(j),
                None => Vector::new(),
            })
            .collect();
        GradedMap::new(self.space.clone(), target.space.clone(), 0, columns)
            .expect("projection preserves degrees")
    }
}

/// How the extension signs an operator acting after a prefix. Only
/// [`PrefixSign::Koszul`] is correct; the others exist for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PrefixSign {
    #[default]
    Koszul,
    /// No sign at all.
    Ignore,
    /// `(-1)^{|op|·length(prefix)}` instead of the prefix degree.
    Length,
    /// Correct sign, negated when the rule is applied at the last position.
    FlipLast,
}

#[derive(Clone, Debug)]
pub struct LocalOperator {
    degree: i64,
    rules: HashMap<Word, Vec<(Word, Rational)>>,
    lengths: BTreeSet<usize>,
    prefix_sign: PrefixSign,
}

impl LocalOperator {
    pub fn new(degree: i64) -> Self {
        LocalOperator {
            degree,
            rules: HashMap::new(),
            lengths: BTreeSet::new(),
            prefix_sign: PrefixSign::Koszul,
        }
    }

    pub fn with_prefix_sign(mut self, s: PrefixSign) -> Self {
        self.prefix_sign = s;
        self
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn add_rule(&mut self, input: Word, output: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert!(!input.is_empty(), "rules act on nonempty words");
        self.lengths.insert(input.len());
        let terms = self.rules.entry(input).or_default();
        if let Some(t) = terms.iter_mut().find(|(w, _)| *w == output) {
            t.1 += c;
        } else {
            terms.push((output, c));
        }
    }

    /// Adds `c·other` (same degree).
    pub fn merge(&mut self, other: &LocalOperator, c: &Rational) {
        let mut keys: Vec<_> = other.rules.keys().collect();
        keys.sort();
        for k in keys {
            for (w, x) in &other.rules[k] {
                self.add_rule(k.clone(), w.clone(), c * x);
            }
        }
    }

    pub fn rule(&self, input: &[usize]) -> Option<&[(Word, Rational)]> {
        self.rules.get(input).map(Vec::as_slice)
    }

    /// Apply the extension to one source word.
    pub fn apply_word(&self, source: &WordSpace, target: &WordSpace, word: &[usize]) -> Vector {
        let mut out = Vector::new();
        let n = word.len();
        for &k in &self.lengths {
            if k > n {
                break;
            }
            let mut prefix_deg = 0i64;
            for i in 0..=n - k {
                if i > 0 {
                    prefix_deg += source.letters().degree(word[i - 1]);
                }
                let Some(terms) = self.rules.get(&word[i..i + k]) else {
                    continue;
                };
                let mut sign = match self.prefix_sign {
                    PrefixSign::Koszul | PrefixSign::FlipLast => {
                        Rational::sign(self.degree * prefix_deg)
                    }
                    PrefixSign::Ignore => Rational::one(),
                    PrefixSign::Length => Rational::sign(self.degree * i as i64),
                };
                if self.prefix_sign == PrefixSign::FlipLast && i + k == n && n > 1 {
                    sign = -sign;
                }
                for (out_word, c) in terms {
                    let mut w = Vec::with_capacity(n - k + out_word.len());
                    w.extend_from_slice(&word[..i]);
                    w.extend_from_slice(out_word);
                    w.extend_from_slice(&word[i + k..]);
                    if let Some(j) = target.index_of(&w) {
                        out.add_term(j, &sign * c);
                    }
                }
            }
        }
        out
    }

    /// The extension as a map between word spaces; words leaving the target's
    /// weight range are dropped.
    pub fn extend(&self, source: &WordSpace, target: &WordSpace) -> Result<GradedMap> {
        GradedMap::from_fn(source.space().clone(), target.space().clone(), self.degree, |i| {
            self.apply_word(source, target, source.word(i))
        })
        .map_err(|e| match e {
            Error::DegreeMismatch { .. } => {
                Error::InvalidStructure(format!("rule table is not homogeneous: {e}"))
            }
            e => e,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        let l = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 0)]).unwrap());
        let w = WordSpace::new(l, 3);
        assert_eq!(w.dim(), 2 + 4 + 8);
        assert_eq!(w.space().label(2), "a|a");
    }

    #[test]
    fn weighted_words() {
        let l = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 0)]).unwrap());
        let w = WordSpace::weighted(l, vec![1, 2], 1, 3);
        // weight 1: a; 2: aa, b; 3: aaa, ab, ba
        assert_eq!(w.dim(), 6);
    }

    #[test]
    fn derivation_sign() {
        // odd letters, odd derivation x ↦ y: d(x|x) = y|x - x|y
        let l = Arc::new(GradedSpace::from_pairs(&[("x", 1), ("y", 0)]).unwrap());
        let w = WordSpace::new(l, 2);
        let mut op = LocalOperator::new(-1);
        op.add_rule(vec![0], vec![1], Rational::one());
        let v = op.apply_word(&w, &w, &[0, 0]);
        let yx = w.index_of(&[1, 0]).unwrap();
        let xy = w.index_of(&[0, 1]).unwrap();
        assert_eq!(v, Vector::from_terms([(yx, Rational::one()), (xy, -Rational::one())]));
    }
}
