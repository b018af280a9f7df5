//! Finite-dimensional linear duality between algebras and coalgebras.
//!
//! The dual basis `x*` sits in degree `-|x|`. Tensors of duals are paired with
//! tensors by the Koszul rule, so `(a⊗b)*` corresponds to `(-1)^{|a||b|} a*⊗b*`.

use std::sync::Arc;

use super::{Bilinear, DgAssocAlgebra, DgCoassocCoalgebra, PairTerms};
use crate::error::Result;
use crate::exactlin::{GradedMap, GradedSpace, Rational, Vector};

/// Signs of the canonical map `V → V**` on basis vectors: `(-1)^{|v|}`.
pub fn dual_signs(space: &GradedSpace) -> Vec<Rational> {
    (0..space.dim()).map(|i| Rational::sign(space.degree(i))).collect()
}

/// `μ = Δ*`: `a*·b* = Σ_c (-1)^{|a||b|} Δ(c)_{a⊗b} c*`; the unit is the counit.
pub fn dualize_coalgebra(d: &DgCoassocCoalgebra) -> Result<DgAssocAlgebra> {
    let sp = d.space();
    let dual: Arc<GradedSpace> = Arc::new(sp.dual());
    let mut product = Bilinear::new();
    for (c, terms) in d.coproduct().iter().enumerate() {
        for (&(a, b), x) in terms {
            let s = Rational::sign(sp.degree(a) * sp.degree(b));
            product.entry((a, b)).or_default().add_term(c, s * x);
        }
    }
    let diff = d.differential().dual().with_spaces(dual.clone(), dual.clone())?;
    let unit = d
        .counit()
        .map(|e| e.iter().enumerate().map(|(i, x)| (i, x.clone())).collect::<Vector>());
    DgAssocAlgebra::new(format!("{}*", d.name()), diff, product, unit)
}

/// `Δ = μ*`: `Δ(c*) = Σ_{a,b} (-1)^{|a||b|} μ(a,b)_c a*⊗b*`; the counit is
/// evaluation at the unit, and a basis unit `1` gives the coaugmentation `1*`.
pub fn dualize_algebra(b: &DgAssocAlgebra) -> Result<DgCoassocCoalgebra> {
    let sp = b.space();
    let dual: Arc<GradedSpace> = Arc::new(sp.dual());
    let mut coproduct = vec![PairTerms::new(); b.dim()];
    for (&(x, y), v) in b.product() {
        let s = Rational::sign(sp.degree(x) * sp.degree(y));
        for (c, k) in v.iter() {
            *coproduct[c].entry((x, y)).or_insert_with(Rational::zero) += &s * k;
        }
    }
    let diff = b.differential().dual().with_spaces(dual.clone(), dual.clone())?;
    let counit = b
        .unit()
        .map(|u| (0..b.dim()).map(|i| u.get(i)).collect::<Vec<_>>());
    let coaug = b.unit().and_then(|u| match u.leading() {
        Some((i, c)) if u.len() == 1 && c.is_one() => Some(i),
        _ => None,
    });
    DgCoassocCoalgebra::new(format!("{}*", b.name()), diff, coproduct, counit, coaug)
}

fn map_mismatch(f: &GradedMap, g: &GradedMap, signs: &[Rational]) -> Option<usize> {
    let t = f.transport_diagonal(signs, signs);
    t.first_difference(g)
}

/// Compare two algebras on index-aligned bases, where basis `i` of `b`
/// corresponds to `signs[i]` times basis `i` of `a`. Returns a description of
/// the first difference.
pub fn algebra_mismatch(a: &DgAssocAlgebra, b: &DgAssocAlgebra, signs: &[Rational]) -> Option<String> {
    if a.dim() != b.dim() {
        return Some(format!("dimensions {} vs {}", a.dim(), b.dim()));
    }
    if let Some(i) = (0..a.dim()).find(|&i| a.space().degree(i) != b.space().degree(i)) {
        return Some(format!("degree of `{}`", a.space().label(i)));
    }
    if let Some(i) = map_mismatch(a.differential(), b.differential(), signs) {
        return Some(format!("differential on `{}`", a.space().label(i)));
    }
    let keys: std::collections::BTreeSet<_> = a.product().keys().chain(b.product().keys()).collect();
    for &(x, y) in keys {
        let mut lhs = Vector::new();
        for (k, c) in a.mul_basis(x, y).iter() {
            lhs.add_term(k, c * &signs[k] * &signs[x] * &signs[y]);
        }
        if lhs != b.mul_basis(x, y) {
            return Some(format!(
                "product of `{}` and `{}`",
                a.space().label(x),
                a.space().label(y)
            ));
        }
    }
    None
}

/// Coalgebra analogue of [`algebra_mismatch`].
pub fn coalgebra_mismatch(
    a: &DgCoassocCoalgebra,
    b: &DgCoassocCoalgebra,
    signs: &[Rational],
) -> Option<String> {
    if a.dim() != b.dim() {
        return Some(format!("dimensions {} vs {}", a.dim(), b.dim()));
    }
    if let Some(i) = (0..a.dim()).find(|&i| a.space().degree(i) != b.space().degree(i)) {
        return Some(format!("degree of `{}`", a.space().label(i)));
    }
    if let Some(i) = map_mismatch(a.differential(), b.differential(), signs) {
        return Some(format!("differential on `{}`", a.space().label(i)));
    }
    for c in 0..a.dim() {
        let mut lhs = PairTerms::new();
        for (&(x, y), k) in &a.coproduct()[c] {
            lhs.insert((x, y), k * &signs[x] * &signs[y] * &signs[c]);
        }
        if lhs != b.coproduct()[c] {
            return Some(format!("coproduct of `{}`", a.space().label(c)));
        }
    }
    None
}
