//! Presented dg associative algebras, coassociative coalgebras and Lie algebras.

mod dual;
mod filtration;
mod validate;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use dual::{algebra_mismatch, coalgebra_mismatch, dual_signs, dualize_algebra, dualize_coalgebra};
pub use filtration::{
    canonical_filtration_f, coradical_compatibility, coradical_filtration, f_compatibility,
    ConilpotencyVerdict, Filtration, FiltrationStage, Nilpotency,
};
pub(crate) use filtration::product_powers;
pub use validate::{algebra_morphism_defect, coalgebra_morphism_defect, LawCheck, ValidationReport, Witness};

use crate::error::{Error, Result};
use crate::exactlin::{ChainComplex, GradedMap, GradedSpace, Rational, Vector, Word};

/// Structure constants of a bilinear operation: `(a, b) ↦ vector`. Absent pairs are zero.
pub type Bilinear = BTreeMap<(usize, usize), Vector>;

/// A tensor in `V⊗V`, as coefficients of basis pairs.
pub type PairTerms = BTreeMap<(usize, usize), Rational>;

/// A tensor in `V^⊗n`, as coefficients of basis words.
pub type Tensor = BTreeMap<Word, Rational>;

pub fn add_tensor_term(t: &mut Tensor, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(w).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        let k: Vec<usize> = t.iter().find(|(_, v)| v.is_zero()).unwrap().0.clone();
        t.remove(&k);
    }
}

fn check_bilinear(space: &GradedSpace, table: &Bilinear, degree: i64, what: &str) -> Result<()> {
    for (&(a, b), v) in table {
        if a >= space.dim() || b >= space.dim() {
            return Err(Error::DimensionMismatch(format!("{what} index out of range")));
        }
        for (c, _) in v.iter() {
            if c >= space.dim() {
                return Err(Error::DimensionMismatch(format!("{what} index out of range")));
            }
            if space.degree(c) != space.degree(a) + space.degree(b) + degree {
                return Err(Error::DegreeMismatch {
                    source_label: format!("{}⊗{}", space.label(a), space.label(b)),
                    source_degree: space.degree(a) + space.degree(b),
                    target_degree: space.degree(c),
                    map_degree: degree,
                });
            }
        }
    }
    Ok(())
}

fn apply_bilinear(table: &Bilinear, x: &Vector, y: &Vector) -> Vector {
    let mut out = Vector::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            if let Some(v) = table.get(&(i, j)) {
                out.axpy(&(a * b), v);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct DgAssocAlgebra {
    name: String,
    complex: ChainComplex,
    product: Bilinear,
    unit: Option<Vector>,
}

impl DgAssocAlgebra {
    /// Checks index ranges, degree homogeneity and `d² = 0`; the algebraic laws
    /// are checked separately by [`DgAssocAlgebra::validate`].
    pub fn new(
        name: impl Into<String>,
        d: GradedMap,
        product: Bilinear,
        unit: Option<Vector>,
    ) -> Result<Self> {
        let complex = ChainComplex::new(d)?;
        Self::from_complex(name, complex, product, unit)
    }

    /// As [`DgAssocAlgebra::new`] but without the `d² = 0` check, so that a
    /// law checker can report it as a violation.
    pub fn new_unchecked(
        name: impl Into<String>,
        d: GradedMap,
        product: Bilinear,
        unit: Option<Vector>,
    ) -> Result<Self> {
        Self::from_complex(name, ChainComplex::new_unchecked(d), product, unit)
    }

    fn from_complex(
        name: impl Into<String>,
        complex: ChainComplex,
        mut product: Bilinear,
        unit: Option<Vector>,
    ) -> Result<Self> {
        product.retain(|_, v| !v.is_zero());
        check_bilinear(complex.space(), &product, 0, "product")?;
        if let Some(u) = &unit {
            if complex.space().homogeneous_degree(u).is_some_and(|d| d != 0) {
                return Err(Error::InvalidStructure("unit must have degree 0".into()));
            }
        }
        Ok(DgAssocAlgebra {
            name: name.into(),
            complex,
            product,
            unit,
        })
    }

    /// Zero-differential algebra.
    pub fn graded(name: impl Into<String>, space: Arc<GradedSpace>, product: Bilinear) -> Result<Self> {
        let d = GradedMap::zero(space.clone(), space, -1);
        Self::new(name, d, product, None)
    }

    pub fn zero() -> Self {
        Self::graded("0", Arc::new(GradedSpace::zero()), Bilinear::new()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.complex.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn differential(&self) -> &GradedMap {
        self.complex.differential()
    }

    pub fn product(&self) -> &Bilinear {
        &self.product
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Vector {
        self.product.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        apply_bilinear(&self.product, x, y)
    }

    /// Left-normed iterated product `μⁿ` of a word of basis elements (`μ¹ = id`).
    pub fn iterate_product(&self, word: &[usize]) -> Vector {
        let Some((&first, rest)) = word.split_first() else {
            return Vector::new();
        };
        let mut acc = Vector::basis(first);
        for &b in rest {
            if acc.is_zero() {
                break;
            }
            acc = self.mul(&acc, &Vector::basis(b));
        }
        acc
    }

    /// Right-normed iterated product, for parenthesization checks.
    pub fn iterate_product_right(&self, word: &[usize]) -> Vector {
        let Some((&last, rest)) = word.split_last() else {
            return Vector::new();
        };
        let mut acc = Vector::basis(last);
        for &b in rest.iter().rev() {
            acc = self.mul(&Vector::basis(b), &acc);
        }
        acc
    }

    /// `μⁿ` as a map from the words of length exactly `n`.
    pub fn iterate_map(&self, n: usize) -> (crate::exactlin::WordSpace, GradedMap) {
        let ws = crate::exactlin::WordSpace::weighted(
            self.space().clone(),
            vec![1; self.dim()],
            n,
            n,
        );
        let m = GradedMap::from_fn(ws.space().clone(), self.space().clone(), 0, |i| {
            self.iterate_product(ws.word(i))
        })
        .expect("products have degree 0");
        (ws, m)
    }

    /// The augmentation ideal: the whole algebra when non-unital; when the
    /// unit is a basis element `1`, the span of the other basis elements
    /// (augmentation `1 ↦ 1`, others `↦ 0`).
    pub fn augmentation_ideal(&self) -> Result<DgAssocAlgebra> {
        let Some(u) = &self.unit else {
            return Ok(self.clone());
        };
        let one = match u.leading() {
            Some((i, c)) if u.len() == 1 && c.is_one() => i,
            _ => {
                return Err(Error::InvalidStructure(
                    "augmentation requires the unit to be a basis element".into(),
                ))
            }
        };
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| i != one).collect();
        let pos = crate::exactlin::positions(&keep);
        let space = Arc::new(self.space().restrict(&keep));
        let relabel = |v: &Vector, what: &str| -> Result<Vector> {
            if v.get(one) != Rational::zero() {
                return Err(Error::InvalidStructure(format!(
                    "{what} leaves the augmentation ideal"
                )));
            }
            Ok(v.map_indices(|j| pos.get(&j).copied()))
        };
        let mut cols = Vec::with_capacity(keep.len());
        for &i in &keep {
            cols.push(relabel(self.differential().column(i), "differential")?);
        }
        let d = GradedMap::new(space.clone(), space, -1, cols)?;
        let mut product = Bilinear::new();
        for (&(a, b), v) in &self.product {
            if a == one || b == one {
                continue;
            }
            product.insert((pos[&a], pos[&b]), relabel(v, "product")?);
        }
        DgAssocAlgebra::new(format!("{}‾", self.name), d, product, None)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DgCoassocCoalgebra {
    name: String,
    complex: ChainComplex,
    coproduct: Vec<PairTerms>,
    counit: Option<Vec<Rational>>,
    coaugmentation: Option<usize>,
}

impl DgCoassocCoalgebra {
    pub fn new(
        name: impl Into<String>,
        d: GradedMap,
        coproduct: Vec<PairTerms>,
        counit: Option<Vec<Rational>>,
        coaugmentation: Option<usize>,
    ) -> Result<Self> {
        Self::from_complex(name, ChainComplex::new(d)?, coproduct, counit, coaugmentation)
    }

    pub fn new_unchecked(
        name: impl Into<String>,
        d: GradedMap,
        coproduct: Vec<PairTerms>,
        counit: Option<Vec<Rational>>,
        coaugmentation: Option<usize>,
    ) -> Result<Self> {
        Self::from_complex(
            name,
            ChainComplex::new_unchecked(d),
            coproduct,
            counit,
            coaugmentation,
        )
    }

    fn from_complex(
        name: impl Into<String>,
        complex: ChainComplex,
        mut coproduct: Vec<PairTerms>,
        counit: Option<Vec<Rational>>,
        coaugmentation: Option<usize>,
    ) -> Result<Self> {
        let space = complex.space().clone();
        let n = space.dim();
        if coproduct.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "coproduct given on {} of {n} basis elements",
                coproduct.len()
            )));
        }
        for (c, terms) in coproduct.iter_mut().enumerate() {
            terms.retain(|_, x| !x.is_zero());
            for &(a, b) in terms.keys() {
                if a >= n || b >= n {
                    return Err(Error::DimensionMismatch("coproduct index out of range".into()));
                }
                if space.degree(a) + space.degree(b) != space.degree(c) {
                    return Err(Error::DegreeMismatch {
                        source_label: space.label(c).to_string(),
                        source_degree: space.degree(c),
                        target_degree: space.degree(a) + space.degree(b),
                        map_degree: 0,
                    });
                }
            }
        }
        if let Some(e) = &counit {
            if e.len() != n {
                return Err(Error::DimensionMismatch("counit length".into()));
            }
            if let Some(i) = (0..n).find(|&i| !e[i].is_zero() && space.degree(i) != 0) {
                return Err(Error::InvalidStructure(format!(
                    "counit is nonzero on `{}` of nonzero degree",
                    space.label(i)
                )));
            }
        }
        if coaugmentation.is_some() && counit.is_none() {
            return Err(Error::InvalidStructure(
                "a coaugmentation requires a counit".into(),
            ));
        }
        Ok(DgCoassocCoalgebra {
            name: name.into(),
            complex,
            coproduct,
            counit,
            coaugmentation,
        })
    }

    pub fn graded(name: impl Into<String>, space: Arc<GradedSpace>, coproduct: Vec<PairTerms>) -> Result<Self> {
        let d = GradedMap::zero(space.clone(), space, -1);
        Self::new(name, d, coproduct, None, None)
    }

    pub fn zero() -> Self {
        Self::graded("0", Arc::new(GradedSpace::zero()), Vec::new()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.complex.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn differential(&self) -> &GradedMap {
        self.complex.differential()
    }

    pub fn coproduct(&self) -> &[PairTerms] {
        &self.coproduct
    }

    pub fn counit(&self) -> Option<&[Rational]> {
        self.counit.as_deref()
    }

    pub fn coaugmentation(&self) -> Option<usize> {
        self.coaugmentation
    }

    pub fn delta(&self, x: &Vector) -> PairTerms {
        let mut out = PairTerms::new();
        for (c, a) in x.iter() {
            for (&k, b) in &self.coproduct[c] {
                let e = out.entry(k).or_insert_with(Rational::zero);
                *e += a * b;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Apply `Δ` at position `pos` of every word of a tensor.
    fn delta_at(&self, t: &Tensor, pos: impl Fn(usize) -> usize) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in t {
            let p = pos(w.len());
            for (&(a, b), x) in &self.coproduct[w[p]] {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.extend_from_slice(&w[..p]);
                nw.push(a);
                nw.push(b);
                nw.extend_from_slice(&w[p + 1..]);
                add_tensor_term(&mut out, nw, c * x);
            }
        }
        out
    }

    /// Left-normed iterated coproduct `Δⁿ: V → V^⊗n` on a basis element (`Δ¹ = id`).
    pub fn iterate_coproduct(&self, c: usize, n: usize) -> Tensor {
        let mut t = Tensor::new();
        if n == 0 {
            return t;
        }
        t.insert(vec![c], Rational::one());
        for _ in 1..n {
            t = self.delta_at(&t, |_| 0);
            if t.is_empty() {
                break;
            }
        }
        t
    }

    pub fn iterate_coproduct_right(&self, c: usize, n: usize) -> Tensor {
        let mut t = Tensor::new();
        if n == 0 {
            return t;
        }
        t.insert(vec![c], Rational::one());
        for _ in 1..n {
            t = self.delta_at(&t, |len| len - 1);
        }
        t
    }

    /// `Δⁿ` as a map into the words of length exactly `n`.
    pub fn iterate_map(&self, n: usize) -> (crate::exactlin::WordSpace, GradedMap) {
        let ws = crate::exactlin::WordSpace::weighted(
            self.space().clone(),
            vec![1; self.dim()],
            n,
            n,
        );
        let m = GradedMap::from_fn(self.space().clone(), ws.space().clone(), 0, |c| {
            self.iterate_coproduct(c, n)
                .into_iter()
                .map(|(w, x)| (ws.index_of(&w).expect("word of length n"), x))
                .collect()
        })
        .expect("coproducts have degree 0");
        (ws, m)
    }

    /// The coaugmentation coideal with the reduced coproduct. A non-counital
    /// coalgebra is returned unchanged; a counital coalgebra without a declared
    /// coaugmentation has its counit forgotten.
    pub fn reduced(&self) -> Result<DgCoassocCoalgebra> {
        let Some(one) = self.coaugmentation else {
            let mut r = self.clone();
            r.counit = None;
            return Ok(r);
        };
        let eps = self.counit.as_ref().expect("checked at construction");
        if (0..self.dim()).any(|i| eps[i] != if i == one { Rational::one() } else { Rational::zero() })
        {
            return Err(Error::InvalidStructure(
                "reduction requires the counit to be dual to the coaugmentation element".into(),
            ));
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| i != one).collect();
        let pos = crate::exactlin::positions(&keep);
        let space = Arc::new(self.space().restrict(&keep));
        let mut cols = Vec::with_capacity(keep.len());
        for &i in &keep {
            let v = self.differential().column(i);
            cols.push(v.map_indices(|j| pos.get(&j).copied()));
        }
        let d = GradedMap::new(space.clone(), space, -1, cols)?;
        let coproduct = keep
            .iter()
            .map(|&c| {
                let mut t = self.coproduct[c].clone();
                for k in [(one, c), (c, one)] {
                    let e = t.entry(k).or_insert_with(Rational::zero);
                    *e -= &Rational::one();
                }
                let mut out = PairTerms::new();
                for ((a, b), x) in t {
                    if x.is_zero() {
                        continue;
                    }
                    match (pos.get(&a), pos.get(&b)) {
                        (Some(&pa), Some(&pb)) => {
                            out.insert((pa, pb), x);
                        }
                        _ => {
                            return Err(Error::InvalidStructure(format!(
                                "coproduct of `{}` is not coaugmented",
                                self.space().label(c)
                            )))
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        DgCoassocCoalgebra::new(format!("{}‾", self.name), d, coproduct, None, None)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DgLieAlgebra {
    name: String,
    complex: ChainComplex,
    bracket: Bilinear,
}

impl DgLieAlgebra {
    pub fn new(name: impl Into<String>, d: GradedMap, bracket: Bilinear) -> Result<Self> {
        Self::from_complex(name, ChainComplex::new(d)?, bracket)
    }

    pub fn new_unchecked(name: impl Into<String>, d: GradedMap, bracket: Bilinear) -> Result<Self> {
        Self::from_complex(name, ChainComplex::new_unchecked(d), bracket)
    }

    fn from_complex(name: impl Into<String>, complex: ChainComplex, mut bracket: Bilinear) -> Result<Self> {
        bracket.retain(|_, v| !v.is_zero());
        check_bilinear(complex.space(), &bracket, 0, "bracket")?;
        Ok(DgLieAlgebra {
            name: name.into(),
            complex,
            bracket,
        })
    }

    pub fn graded(name: impl Into<String>, space: Arc<GradedSpace>, bracket: Bilinear) -> Result<Self> {
        let d = GradedMap::zero(space.clone(), space, -1);
        Self::new(name, d, bracket)
    }

    /// Builds a graded Lie algebra from brackets of ordered pairs, filling in
    /// the antisymmetric partner `[b,a] = -(-1)^{|a||b|}[a,b]`.
    pub fn from_upper_brackets(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        upper: &[((usize, usize), Vector)],
    ) -> Result<Self> {
        let mut bracket = Bilinear::new();
        for ((a, b), v) in upper {
            bracket.insert((*a, *b), v.clone());
            if a != b {
                let s = -Rational::sign(space.degree(*a) * space.degree(*b));
                bracket.insert((*b, *a), v.scaled(&s));
            }
        }
        Self::graded(name, space, bracket)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.complex.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn differential(&self) -> &GradedMap {
        self.complex.differential()
    }

    pub fn bracket(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> Vector {
        self.bracket.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn br(&self, x: &Vector, y: &Vector) -> Vector {
        apply_bilinear(&self.bracket, x, y)
    }

    /// Reorder/relabel the basis by a permutation: new element `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DgLieAlgebra> {
        let inv: std::collections::HashMap<usize, usize> =
            perm.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let space = Arc::new(self.space().restrict(perm));
        let mv = |v: &Vector| v.map_indices(|j| inv.get(&j).copied());
        let cols = perm.iter().map(|&i| mv(self.differential().column(i))).collect();
        let d = GradedMap::new(space.clone(), space, -1, cols)?;
        let bracket = self
            .bracket
            .iter()
            .map(|(&(a, b), v)| ((inv[&a], inv[&b]), mv(v)))
            .collect();
        DgLieAlgebra::new(self.name.clone(), d, bracket)
    }
}
