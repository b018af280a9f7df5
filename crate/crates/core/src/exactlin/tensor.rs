//! Koszul-signed tensor calculus on finite-basis spaces.

use std::sync::Arc;

use super::{BasisElement, GradedMap, GradedSpace, Rational, Vector};

/// Sign of evaluating `f_1 ⊗ … ⊗ f_k` on `x_1 ⊗ … ⊗ x_k`: each map passes the
/// elements to its left, giving `(-1)^{Σ_{i<j} |f_j||x_i|}`.
pub fn koszul_sign(map_degrees: &[i64], element_degrees: &[i64]) -> Rational {
    debug_assert_eq!(map_degrees.len(), element_degrees.len());
    let mut exp = 0i64;
    let mut prefix = 0i64;
    for (f, x) in map_degrees.iter().zip(element_degrees) {
        exp += f * prefix;
        prefix += x;
    }
    Rational::sign(exp)
}

/// Sign of permuting homogeneous elements: `(-1)^{Σ |x_i||x_j|}` over inverted pairs.
/// `perm[k]` is the position of the `k`-th output factor in the input.
pub fn permutation_sign(degrees: &[i64], perm: &[usize]) -> Rational {
    let mut exp = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                exp += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    Rational::sign(exp)
}

#[inline]
pub fn pair_index(i: usize, j: usize, right_dim: usize) -> usize {
    i * right_dim + j
}

#[inline]
pub fn split_pair(k: usize, right_dim: usize) -> (usize, usize) {
    (k / right_dim, k % right_dim)
}

/// `U ⊗ V` with basis `a⊗b` in lexicographic order.
pub fn tensor_spaces(u: &GradedSpace, v: &GradedSpace) -> GradedSpace {
    let mut elements = Vec::with_capacity(u.dim() * v.dim());
    for a in u.elements() {
        for b in v.elements() {
            let weight = match (a.weight, b.weight) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            elements.push(BasisElement {
                label: format!("{}⊗{}", a.label, b.label),
                degree: a.degree + b.degree,
                weight,
            });
        }
    }
    GradedSpace::new(elements).expect("tensor labels are distinct")
}

/// `(f ⊗ g)(a ⊗ b) = (-1)^{|g||a|} f(a) ⊗ g(b)`.
pub fn tensor_maps(f: &GradedMap, g: &GradedMap) -> GradedMap {
    let src = Arc::new(tensor_spaces(f.source(), g.source()));
    let tgt = Arc::new(tensor_spaces(f.target(), g.target()));
    tensor_maps_between(f, g, src, tgt)
}

/// As [`tensor_maps`], reusing already-built tensor spaces.
pub fn tensor_maps_between(
    f: &GradedMap,
    g: &GradedMap,
    src: Arc<GradedSpace>,
    tgt: Arc<GradedSpace>,
) -> GradedMap {
    let (m, n) = (f.source().dim(), g.source().dim());
    let tn = g.target().dim();
    let columns = (0..m * n)
        .map(|k| {
            let (a, b) = split_pair(k, n);
            let sign = koszul_sign(&[f.degree(), g.degree()], &[f.source().degree(a), 0]);
            let mut out = Vector::new();
            for (i, x) in f.column(a).iter() {
                for (j, y) in g.column(b).iter() {
                    out.add_term(pair_index(i, j, tn), &sign * x * y);
                }
            }
            out
        })
        .collect();
    GradedMap::new(src, tgt, f.degree() + g.degree(), columns)
        .expect("tensor of homogeneous maps is homogeneous")
}

/// The symmetry `τ: U ⊗ V → V ⊗ U`, `τ(a⊗b) = (-1)^{|a||b|} b⊗a`.
pub fn swap(u: &Arc<GradedSpace>, v: &Arc<GradedSpace>) -> GradedMap {
    let src = Arc::new(tensor_spaces(u, v));
    let tgt = Arc::new(tensor_spaces(v, u));
    let (m, n) = (u.dim(), v.dim());
    let columns = (0..m * n)
        .map(|k| {
            let (a, b) = split_pair(k, n);
            let sign = permutation_sign(&[u.degree(a), v.degree(b)], &[1, 0]);
            Vector::term(pair_index(b, a, m), sign)
        })
        .collect();
    GradedMap::new(src, tgt, 0, columns).expect("swap has degree 0")
}

/// The differential `d⊗id + id⊗d` of a tensor product of complexes.
pub fn tensor_differential(d_u: &GradedMap, d_v: &GradedMap) -> GradedMap {
    let left = tensor_maps(d_u, &GradedMap::identity(d_v.source().clone()));
    let right = tensor_maps(&GradedMap::identity(d_u.source().clone()), d_v);
    left.add(&right).expect("both summands live on the same spaces")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(pairs: &[(&str, i64)]) -> Arc<GradedSpace> {
        Arc::new(GradedSpace::from_pairs(pairs).unwrap())
    }

    #[test]
    fn dims_add_up() {
        let u = sp(&[("a", 0), ("b", 1)]);
        let t = tensor_spaces(&u, &u);
        let dims: Vec<_> = t.dims_by_degree().into_iter().collect();
        assert_eq!(dims, vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn odd_swap_is_negative() {
        let u = sp(&[("a", 1)]);
        let v = sp(&[("b", 1)]);
        let t = swap(&u, &v);
        assert_eq!(t.column(0), &Vector::term(0, -Rational::one()));
    }

    #[test]
    fn id_tensor_d_picks_up_sign() {
        let u = sp(&[("a", 1)]);
        let v = sp(&[("b0", 0), ("b1", 1)]);
        let d = GradedMap::new(v.clone(), v.clone(), -1, vec![Vector::new(), Vector::basis(0)])
            .unwrap();
        let m = tensor_maps(&GradedMap::identity(u), &d);
        // a⊗b1 ↦ -(a⊗b0)
        assert_eq!(m.column(1), &Vector::term(0, -Rational::one()));
    }
}
