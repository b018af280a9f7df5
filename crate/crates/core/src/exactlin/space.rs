use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};

/// A sparse vector: basis index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: BTreeMap<usize, Rational>,
}

impl Vector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut v = Self::new();
        v.add_term(i, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_term(i, c * x);
        }
    }

    pub fn add_vector(&mut self, other: &Vector) {
        for (&i, x) in &other.entries {
            self.add_term(i, x.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::new();
        }
        Vector {
            entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn negated(&self) -> Vector {
        Vector {
            entries: self.entries.iter().map(|(&i, x)| (i, -x)).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.axpy(&-Rational::one(), other);
        v
    }

    pub fn get(&self, i: usize) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, i: usize) -> Option<&Rational> {
        self.entries.get(&i)
    }

    pub fn remove(&mut self, i: usize) -> Option<Rational> {
        self.entries.remove(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub(crate) fn range_from(&self, start: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.range(start..).map(|(&i, c)| (i, c))
    }

    /// Relabel indices through `f`, summing collisions. Terms mapped to `None` are dropped.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Vector {
        let mut out = Vector::new();
        for (i, c) in self.iter() {
            if let Some(j) = f(i) {
                out.add_term(j, c.clone());
            }
        }
        out
    }
}

impl FromIterator<(usize, Rational)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        Vector::from_terms(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        BasisElement {
            label: label.into(),
            degree,
            weight: None,
        }
    }

    pub fn weighted(label: impl Into<String>, degree: i64, weight: u32) -> Self {
        BasisElement {
            label: label.into(),
            degree,
            weight: Some(weight),
        }
    }
}

/// A finite-basis graded vector space over the rationals.
///
/// The basis order is significant: every report lists elements in this order.
#[derive(Clone, Debug, Default)]
pub struct GradedSpace {
    elements: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(GradedSpace { elements, index })
    }

    /// Shorthand for tests and examples: `(label, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, i64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(l, d)| BasisElement::new(l, d))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Sorted list of degrees that occur.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims_by_degree().into_keys().collect()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(e.degree).or_insert(0) += 1;
        }
        m
    }

    pub fn indices_in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    /// The degree of a vector if it is homogeneous (zero vectors have no degree).
    pub fn homogeneous_degree(&self, v: &Vector) -> Option<i64> {
        let mut it = v.iter().map(|(i, _)| self.degree(i));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn suspend(&self, k: i64) -> GradedSpace {
        let prefix = suspension_prefix(k);
        let elements = self
            .elements
            .iter()
            .map(|e| BasisElement {
                label: shifted_label(&prefix, &e.label),
                degree: e.degree + k,
                weight: e.weight,
            })
            .collect();
        GradedSpace::new(elements).expect("suspension preserves distinct labels")
    }

    /// The graded linear dual, with dual basis labelled `x*` in degree `-|x|`.
    pub fn dual(&self) -> GradedSpace {
        let elements = self
            .elements
            .iter()
            .map(|e| BasisElement {
                label: format!("{}*", e.label),
                degree: -e.degree,
                weight: e.weight,
            })
            .collect();
        GradedSpace::new(elements).expect("dualization preserves distinct labels")
    }

    pub fn shared(self) -> Arc<GradedSpace> {
        Arc::new(self)
    }

    /// Subspace spanned by the given basis indices, keeping the ambient order.
    pub fn restrict(&self, indices: &[usize]) -> GradedSpace {
        GradedSpace::new(indices.iter().map(|&i| self.elements[i].clone()).collect())
            .expect("restriction preserves distinct labels")
    }

    /// Render a vector with basis labels, in basis order.
    pub fn format_vector(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.label(i).to_string()
                } else {
                    format!("{c}·{}", self.label(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn shifted_label(prefix: &str, label: &str) -> String {
    if prefix.is_empty() {
        label.to_string()
    } else if label.contains(['|', '⊗', ' ', '+']) {
        format!("{prefix}({label})")
    } else {
        format!("{prefix}{label}")
    }
}

pub(crate) fn suspension_prefix(k: i64) -> String {
    match k {
        0 => String::new(),
        1 => "s".to_string(),
        -1 => "s^-1".to_string(),
        k => format!("s^{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GradedSpace::from_pairs(&[("a", 0), ("a", 1)]).is_err());
    }

    #[test]
    fn suspend_shifts_degrees() {
        let v = GradedSpace::from_pairs(&[("x", 0)]).unwrap();
        let sv = v.suspend(1);
        assert_eq!(sv.label(0), "sx");
        assert_eq!(sv.degree(0), 1);
    }

    #[test]
    fn dual_negates_degrees() {
        let v = GradedSpace::from_pairs(&[("a", 0), ("b", 0), ("c", 1), ("d", 1), ("e", 1)])
            .unwrap();
        let dims: Vec<_> = v.dual().dims_by_degree().into_iter().collect();
        assert_eq!(dims, vec![(-1, 3), (0, 2)]);
    }

    #[test]
    fn vector_cancellation_removes_entries() {
        let mut v = Vector::basis(3);
        v.add_term(3, -Rational::one());
        assert!(v.is_zero());
    }
}
