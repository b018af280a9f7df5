use std::sync::Arc;

use super::*;
use crate::exactlin::GradedMap;

fn lie(labels: &[&str], upper: &[((usize, usize), usize)]) -> DgLieAlgebra {
    let pairs: Vec<(&str, i64)> = labels.iter().map(|&l| (l, 0)).collect();
    let sp = Arc::new(GradedSpace::from_pairs(&pairs).unwrap());
    let upper: Vec<_> = upper.iter().map(|&(k, c)| (k, Vector::basis(c))).collect();
    DgLieAlgebra::from_upper_brackets("g", sp, &upper).unwrap()
}

fn heisenberg() -> DgLieAlgebra {
    lie(&["x", "y", "z"], &[((0, 1), 2)])
}

fn abelian(n: usize) -> DgLieAlgebra {
    let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    lie(&refs, &[])
}

#[test]
fn skew_of_upper_triangular() {
    let sp = Arc::new(GradedSpace::from_pairs(&[("E12", 0), ("E13", 0), ("E23", 0)]).unwrap());
    let mut p = Bilinear::new();
    p.insert((0, 2), Vector::basis(1));
    let a = DgAssocAlgebra::graded("upper3", sp, p).unwrap();
    let l = skew(&a).unwrap();
    assert!(l.validate().passed());
    assert_eq!(l.bracket_basis(0, 2), Vector::basis(1));
    assert_eq!(l.bracket_basis(2, 0), Vector::basis(1).negated());
    assert_eq!(l.bracket().len(), 2);
}

#[test]
fn free_lie_dims() {
    let v2 = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 0)]).unwrap());
    assert_eq!(free_complete_lie(&v2, 5).dims(), vec![2, 1, 2, 3, 6]);
    let v1 = Arc::new(GradedSpace::from_pairs(&[("a", 0)]).unwrap());
    assert_eq!(free_complete_lie(&v1, 3).dims(), vec![1, 0, 0]);
}

#[test]
fn envelope_dims() {
    let e = universal_envelope(&abelian(3), 3).unwrap();
    assert_eq!(e.tower.layer_dims(), vec![3, 9, 19]);
    assert!(e.tower.defects().is_empty());
    let h = universal_envelope(&heisenberg(), 4).unwrap();
    assert_eq!(h.tower.layer_dims()[0], 2);
    assert_eq!(h.pbw.weights, vec![1, 1, 2]);
    assert!(h.tower.defects().is_empty());
    for l in h.tower.layers() {
        assert!(l.validate().passed());
    }
    let z = universal_envelope(&abelian(0), 3).unwrap();
    assert_eq!(z.tower.layer_dims(), vec![0, 0, 0]);
}

#[test]
fn non_nilpotent_part_vanishes() {
    // [x,y] = y: y lies in every term of the lower central series
    let g = lie(&["x", "y"], &[((0, 1), 1)]);
    let e = universal_envelope(&g, 3).unwrap();
    assert_eq!(e.pbw.infinitely_deep, 1);
    assert_eq!(e.tower.layer_dims(), vec![1, 2, 3]);
}

#[test]
fn budget_guard() {
    let r = universal_envelope_with_budget(&heisenberg(), 4, 1);
    assert!(matches!(r, Err(crate::Error::NonTerminating { budget: 1 })));
}

#[test]
fn invariants_examples() {
    let r = envelope_invariants(&heisenberg(), &abelian(3), 3).unwrap();
    assert!(r.distinguished);
    assert_eq!((r.left.layer_dims[0], r.right.layer_dims[0]), (2, 3));
    let p = heisenberg().permuted(&[2, 0, 1]).unwrap();
    let r = envelope_invariants(&heisenberg(), &p, 4).unwrap();
    assert!(!r.distinguished, "{r:?}");
    let r = envelope_invariants(&abelian(2), &abelian(2), 3).unwrap();
    assert!(!r.distinguished);
}

#[test]
fn envelope_functor_and_adjunction() {
    let g = heisenberg();
    let env = universal_envelope(&g, 4).unwrap();
    // the automorphism x ↦ 2x, y ↦ 3y, z ↦ 6z
    let scale = GradedMap::new(
        g.space().clone(),
        g.space().clone(),
        0,
        vec![Vector::term(0, Rational::from_integer(2)), Vector::term(1, Rational::from_integer(3)), Vector::term(2, Rational::from_integer(6))],
    )
    .unwrap();
    let maps = envelope_map(&scale, &env, &env).unwrap();
    for (k, f) in maps.iter().enumerate() {
        let l = env.tower.layer(k + 1);
        assert!(crate::assoc::algebra_morphism_defect(f, l, l).is_none());
    }
    // canonical inclusion 𝔤 → Res Û(𝔤), transposed and back
    let top = env.tower.top();
    let incl = GradedMap::new(g.space().clone(), top.space().clone(), 0, env.generator_image(4).unwrap()).unwrap();
    for phi in [incl.clone(), incl.compose(&scale).unwrap(), GradedMap::zero(g.space().clone(), top.space().clone(), 0)] {
        let ext = extend_lie_morphism(&phi, &env, &env.tower).unwrap();
        for (k, f) in ext.iter().enumerate() {
            let l = env.tower.layer(k + 1);
            assert!(crate::assoc::algebra_morphism_defect(f, l, l).is_none());
        }
        assert_eq!(restrict_to_generators(&ext, &env, &g).unwrap(), phi);
    }
}
