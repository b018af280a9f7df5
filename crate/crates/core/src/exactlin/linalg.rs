//! Exact sparse Gaussian elimination.
//!
//! Vectors are reduced against a semi-echelon basis whose rows are normalized
//! to a leading coefficient of one. A fully reduced vector has a zero entry in
//! every pivot column, which makes the residual a canonical normal form modulo
//! the span.

use std::collections::BTreeMap;

use super::{Rational, Vector};

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Vector>>(vectors: I) -> Self {
        let mut e = Self::new();
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vector> + '_ {
        self.rows.values()
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        self.reduce_in_place(&mut v, |_, _| {});
        v
    }

    fn reduce_in_place(&self, v: &mut Vector, mut on_step: impl FnMut(usize, &Rational)) {
        let mut cursor = 0;
        loop {
            let next = v
                .range_from(cursor)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (i, c.clone()));
            let Some((pivot, coeff)) = next else { break };
            let row = &self.rows[&pivot];
            v.axpy(&-&coeff, row);
            on_step(pivot, &coeff);
            cursor = pivot + 1;
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: Vector) -> Option<usize> {
        let r = self.reduce(&v);
        let (pivot, lead) = r.leading()?;
        let inv = lead.recip();
        let r = r.scaled(&inv);
        self.rows.insert(pivot, r);
        Some(pivot)
    }
}

/// Echelon form that remembers how each row was obtained from the inputs.
#[derive(Clone, Debug, Default)]
struct TrackedEchelon {
    rows: BTreeMap<usize, (Vector, Vector)>,
}

impl TrackedEchelon {
    /// Reduce `v`, returning the residual and the combination of inputs subtracted.
    fn reduce(&self, v: &Vector) -> (Vector, Vector) {
        let mut v = v.clone();
        let mut acc = Vector::new();
        let mut cursor = 0;
        loop {
            let next = v
                .range_from(cursor)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (i, c.clone()));
            let Some((pivot, coeff)) = next else { break };
            let (row, comb) = &self.rows[&pivot];
            v.axpy(&-&coeff, row);
            acc.axpy(&coeff, comb);
            cursor = pivot + 1;
        }
        (v, acc)
    }
}

/// Basis of the kernel of the linear map whose `i`-th column is `columns[i]`.
/// Kernel vectors are expressed in column coordinates.
pub fn kernel(columns: &[Vector]) -> Vec<Vector> {
    let mut ech = TrackedEchelon::default();
    let mut out = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let (r, acc) = ech.reduce(col);
        // col - Σ acc_j col_j = r
        let mut comb = acc.negated();
        comb.add_term(i, Rational::one());
        match r.leading() {
            None => out.push(comb),
            Some((pivot, lead)) => {
                let inv = lead.recip();
                ech.rows.insert(pivot, (r.scaled(&inv), comb.scaled(&inv)));
            }
        }
    }
    out
}

/// Coefficients `x` with `Σ x_i columns[i] = target`, if a solution exists.
pub fn solve(columns: &[Vector], target: &Vector) -> Option<Vector> {
    let mut ech = TrackedEchelon::default();
    for (i, col) in columns.iter().enumerate() {
        let (r, acc) = ech.reduce(col);
        let mut comb = acc.negated();
        comb.add_term(i, Rational::one());
        if let Some((pivot, lead)) = r.leading() {
            let inv = lead.recip();
            ech.rows.insert(pivot, (r.scaled(&inv), comb.scaled(&inv)));
        }
    }
    let (r, acc) = ech.reduce(target);
    r.is_zero().then_some(acc)
}

pub fn rank<'a, I: IntoIterator<Item = &'a Vector>>(vectors: I) -> usize {
    Echelon::from_vectors(vectors).rank()
}
