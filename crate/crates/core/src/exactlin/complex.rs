use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{kernel, Echelon, GradedMap, GradedSpace, Vector};
use crate::error::{Error, Result};
use crate::par;

/// A finite-basis chain complex with a degree −1 differential.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    d: GradedMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDegree {
    pub degree: i64,
    pub dim: usize,
    #[serde(skip)]
    pub representatives: Vec<Vector>,
    /// Representatives rendered with basis labels.
    pub representative_labels: Vec<String>,
}

pub type Homology = BTreeMap<i64, HomologyDegree>;

impl ChainComplex {
    /// Validates the degree and `d² = 0`.
    pub fn new(d: GradedMap) -> Result<Self> {
        if d.degree() != -1 && !d.is_zero() {
            return Err(Error::InvalidStructure(format!(
                "differential has degree {}, expected -1",
                d.degree()
            )));
        }
        if *d.source() != *d.target() {
            return Err(Error::DimensionMismatch(
                "differential must be an endomorphism".into(),
            ));
        }
        check_square_zero(&d)?;
        Ok(ChainComplex { d })
    }

    /// Skips the `d² = 0` check; for law checkers that report it as data.
    pub fn new_unchecked(d: GradedMap) -> Self {
        ChainComplex { d }
    }

    pub fn zero(space: Arc<GradedSpace>) -> Self {
        ChainComplex {
            d: GradedMap::zero(space.clone(), space, -1),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.d.source()
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    pub fn homology(&self) -> Homology {
        let space = self.space().clone();
        let degrees = space.degrees();
        let blocks = par::map_coarse(degrees.len(), |k| {
            let n = degrees[k];
            let (dim, reps) = self.homology_in_degree(n);
            let representative_labels = reps.iter().map(|r| space.format_vector(r)).collect();
            HomologyDegree {
                degree: n,
                dim,
                representatives: reps,
                representative_labels,
            }
        });
        blocks.into_iter().map(|h| (h.degree, h)).collect()
    }

    fn cycles(&self, n: i64) -> Vec<Vector> {
        let idx = self.space().indices_in_degree(n);
        let cols: Vec<Vector> = idx.iter().map(|&i| self.d.column(i).clone()).collect();
        kernel(&cols)
            .into_iter()
            .map(|k| k.map_indices(|p| Some(idx[p])))
            .collect()
    }

    fn boundaries(&self, n: i64) -> Echelon {
        let idx = self.space().indices_in_degree(n + 1);
        Echelon::from_vectors(idx.iter().map(|&i| self.d.column(i)))
    }

    fn homology_in_degree(&self, n: i64) -> (usize, Vec<Vector>) {
        let mut ech = self.boundaries(n);
        let mut reps = Vec::new();
        for z in self.cycles(n) {
            if ech.insert(z.clone()).is_some() {
                reps.push(z);
            }
        }
        (reps.len(), reps)
    }

    /// Homology dimensions only.
    pub fn betti(&self) -> BTreeMap<i64, usize> {
        self.homology().into_iter().map(|(n, h)| (n, h.dim)).collect()
    }
}

/// First basis element with `d(d(e)) ≠ 0`.
pub fn check_square_zero(d: &GradedMap) -> Result<()> {
    let hit = par::find_first(d.source().dim(), |i| {
        let dd = d.apply(d.column(i));
        (!dd.is_zero()).then_some(dd)
    });
    match hit {
        None => Ok(()),
        Some((i, v)) => Err(Error::DSquaredNonzero {
            witness: d.source().label(i).to_string(),
            value: d.target().format_vector(&v),
        }),
    }
}

/// First basis element on which `f ∘ d_src ≠ ± d_tgt ∘ f` (sign `(-1)^{|f|}`).
pub fn chain_map_defect(f: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> Option<usize> {
    let sign = super::Rational::sign(f.degree());
    par::find_first(f.source().dim(), |i| {
        let a = f.apply(src.differential().column(i));
        let b = tgt.differential().apply(f.column(i)).scaled(&sign);
        (a != b).then_some(())
    })
    .map(|(i, _)| i)
}

/// For a degree-0 chain map, whether the induced map on homology is an
/// isomorphism in each degree of the union of both supports.
pub fn induced_iso_on_homology(
    f: &GradedMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> BTreeMap<i64, bool> {
    let hs = src.homology();
    let ht = tgt.homology();
    let mut degrees: Vec<i64> = hs.keys().chain(ht.keys()).copied().collect();
    degrees.sort();
    degrees.dedup();
    let empty = Vec::new();
    degrees
        .into_iter()
        .map(|n| {
            let reps = hs.get(&n).map(|h| &h.representatives).unwrap_or(&empty);
            let dim_t = ht.get(&n).map_or(0, |h| h.dim);
            // images of the source classes must be independent modulo boundaries
            let mut ech = tgt.boundaries(n);
            let independent = reps
                .iter()
                .all(|z| ech.insert(f.apply(z)).is_some());
            (n, independent && reps.len() == dim_t)
        })
        .collect()
}

/// Positions of a list of indices, for block extraction.
pub(crate) fn positions(indices: &[usize]) -> HashMap<usize, usize> {
    indices.iter().enumerate().map(|(p, &i)| (i, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    fn sp(pairs: &[(&str, i64)]) -> Arc<GradedSpace> {
        Arc::new(GradedSpace::from_pairs(pairs).unwrap())
    }

    #[test]
    fn acyclic_two_term() {
        let v = sp(&[("e1", 1), ("e0", 0)]);
        let d = GradedMap::new(v.clone(), v, -1, vec![Vector::basis(1), Vector::new()]).unwrap();
        let c = ChainComplex::new(d).unwrap();
        assert!(c.betti().values().all(|&b| b == 0));
    }

    #[test]
    fn zero_differential() {
        let v = sp(&[("a", 0), ("b", 1), ("c", 1)]);
        let c = ChainComplex::zero(v);
        let b: Vec<_> = c.betti().into_iter().collect();
        assert_eq!(b, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn extra_cycle_is_representative() {
        let v = sp(&[("e1", 1), ("e0", 0), ("f0", 0)]);
        let d = GradedMap::new(v.clone(), v, -1, vec![Vector::basis(1), Vector::new(), Vector::new()])
            .unwrap();
        let c = ChainComplex::new(d).unwrap();
        let h = c.homology();
        assert_eq!(h[&0].dim, 1);
        assert_eq!(h[&1].dim, 0);
        let rep = &h[&0].representatives[0];
        // the class is f0 modulo the boundary e0
        assert!(rep.get(2) != Rational::zero());
    }

    #[test]
    fn d_squared_witness() {
        let v = sp(&[("a", 2), ("b", 1), ("c", 0)]);
        let d = GradedMap::new(v.clone(), v, -1, vec![Vector::basis(1), Vector::basis(2), Vector::new()])
            .unwrap();
        match ChainComplex::new(d) {
            Err(Error::DSquaredNonzero { witness, .. }) => assert_eq!(witness, "a"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
