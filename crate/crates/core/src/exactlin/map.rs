use std::sync::Arc;

use super::{GradedSpace, Rational, Vector};
use crate::error::{Error, Result};
use crate::par;

/// A degree-homogeneous linear map between finite-basis graded spaces,
/// stored column-wise: `columns[i]` is the image of the `i`-th source basis element.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    degree: i64,
    columns: Vec<Vector>,
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.columns == other.columns
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl GradedMap {
    pub fn new(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        columns: Vec<Vector>,
    ) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a source of dimension {}",
                columns.len(),
                source.dim()
            )));
        }
        for (i, col) in columns.iter().enumerate() {
            for (j, _) in col.iter() {
                if j >= target.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "index {j} outside a target of dimension {}",
                        target.dim()
                    )));
                }
                if target.degree(j) != source.degree(i) + degree {
                    return Err(Error::DegreeMismatch {
                        source_label: source.label(i).to_string(),
                        source_degree: source.degree(i),
                        target_degree: target.degree(j),
                        map_degree: degree,
                    });
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            columns,
        })
    }

    /// Build a map column by column; columns are computed in parallel.
    pub fn from_fn<F>(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(usize) -> Vector + Sync + Send,
    {
        let columns = par::map_range(source.dim(), f);
        Self::new(source, target, degree, columns)
    }

    pub fn zero(source: Arc<GradedSpace>, target: Arc<GradedSpace>, degree: i64) -> Self {
        let columns = vec![Vector::new(); source.dim()];
        GradedMap {
            source,
            target,
            degree,
            columns,
        }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let columns = (0..space.dim()).map(Vector::basis).collect();
        GradedMap {
            source: space.clone(),
            target: space,
            degree: 0,
            columns,
        }
    }

    /// The suspension `V → s^k V`, sending each basis element to its shifted copy.
    pub fn suspension(space: &Arc<GradedSpace>, k: i64) -> (Arc<GradedSpace>, GradedMap) {
        let shifted = Arc::new(space.suspend(k));
        let columns = (0..space.dim()).map(Vector::basis).collect();
        (
            shifted.clone(),
            GradedMap {
                source: space.clone(),
                target: shifted,
                degree: k,
                columns,
            },
        )
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &Vector {
        &self.columns[i]
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.columns[col].get(row)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, c) in v.iter() {
            out.axpy(c, &self.columns[i]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if *other.target != *self.source {
            return Err(Error::DimensionMismatch(
                "composition of maps with mismatched spaces".into(),
            ));
        }
        let columns = par::map_slice(&other.columns, |c| self.apply(c));
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            columns,
        })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &GradedMap, c: &Rational) -> Result<GradedMap> {
        if *self.source != *other.source
            || *self.target != *other.target
            || (self.degree != other.degree && !self.is_zero() && !other.is_zero())
        {
            return Err(Error::DimensionMismatch(
                "sum of maps with mismatched spaces or degrees".into(),
            ));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.axpy(c, b);
                v
            })
            .collect();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            columns,
        })
    }

    pub fn scaled(&self, c: &Rational) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            columns: self.columns.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// First source basis element on which the two maps differ.
    pub fn first_difference(&self, other: &GradedMap) -> Option<usize> {
        (0..self.columns.len().max(other.columns.len())).find(|&i| {
            self.columns.get(i).cloned().unwrap_or_default()
                != other.columns.get(i).cloned().unwrap_or_default()
        })
    }

    /// Linear dual `f*: W* → V*` with `f*(φ) = (-1)^{|f||φ|} φ∘f`, on dual bases.
    pub fn dual(&self) -> GradedMap {
        let vd = Arc::new(self.source.dual());
        let wd = Arc::new(self.target.dual());
        let mut columns = vec![Vector::new(); wd.dim()];
        for (i, col) in self.columns.iter().enumerate() {
            for (j, c) in col.iter() {
                // φ_j has degree -|w_j|.
                let sign = Rational::sign(self.degree * -self.target.degree(j));
                columns[j].add_term(i, sign * c);
            }
        }
        GradedMap {
            source: wd,
            target: vd,
            degree: self.degree,
            columns,
        }
    }

    /// Conjugate by diagonal sign changes of the bases:
    /// entry `(j, i)` becomes `t_j · f_{ji} · s_i`.
    pub fn transport_diagonal(&self, source_signs: &[Rational], target_signs: &[Rational]) -> GradedMap {
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, col)| {
                col.iter()
                    .map(|(j, c)| (j, &target_signs[j] * c * &source_signs[i]))
                    .collect()
            })
            .collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            columns,
        }
    }

    /// Reinterpret the map between spaces with identical degree profiles
    /// (e.g. after relabelling).
    pub fn with_spaces(&self, source: Arc<GradedSpace>, target: Arc<GradedSpace>) -> Result<GradedMap> {
        GradedMap::new(source, target, self.degree, self.columns.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_violations_rejected() {
        let v = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 1)]).unwrap());
        let bad = GradedMap::new(v.clone(), v.clone(), -1, vec![Vector::basis(1), Vector::new()]);
        assert!(matches!(bad, Err(Error::DegreeMismatch { .. })));
        let good = GradedMap::new(v.clone(), v.clone(), -1, vec![Vector::new(), Vector::basis(0)]);
        assert!(good.is_ok());
    }

    #[test]
    fn double_dual_is_original() {
        let v = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 1), ("c", 1)]).unwrap());
        let d = GradedMap::new(
            v.clone(),
            v.clone(),
            -1,
            vec![Vector::new(), Vector::basis(0), Vector::term(0, Rational::new(2, 3))],
        )
        .unwrap();
        // canonical V → V** is v ↦ (φ ↦ (-1)^{|v||φ|} φ(v)), i.e. (-1)^{|v|} on basis vectors
        let signs: Vec<_> = (0..3).map(|i| Rational::sign(v.degree(i))).collect();
        let dd = d.dual().dual().transport_diagonal(&signs, &signs);
        assert_eq!(dd.columns(), d.columns());
        assert_eq!(dd.degree(), -1);
    }
}
