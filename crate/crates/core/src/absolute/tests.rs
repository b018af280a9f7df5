use std::sync::Arc;

use super::*;
use crate::assoc::{Bilinear, DgAssocAlgebra, DgCoassocCoalgebra, Nilpotency, PairTerms};
use crate::exactlin::{ChainComplex, GradedMap, GradedSpace, Rational, Vector};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn upper3() -> DgAssocAlgebra {
    let sp = Arc::new(GradedSpace::from_pairs(&[("E12", 0), ("E13", 0), ("E23", 0)]).unwrap());
    let mut p = Bilinear::new();
    p.insert((0, 2), Vector::basis(1));
    DgAssocAlgebra::graded("upper3", sp, p).unwrap()
}

fn idempotent() -> DgAssocAlgebra {
    let sp = Arc::new(GradedSpace::from_pairs(&[("y", 0)]).unwrap());
    let mut p = Bilinear::new();
    p.insert((0, 0), Vector::basis(0));
    DgAssocAlgebra::graded("idempotent", sp, p).unwrap()
}

fn one_generator(n: usize) -> AlgebraTower {
    let sp = Arc::new(GradedSpace::from_pairs(&[("v", 0)]).unwrap());
    free_complete_tensor(&ChainComplex::zero(sp), n).unwrap()
}

/// Truncated `𝕂[t]ᶜ` without counit: `Δ̄ t^n = Σ_{i+j=n, i,j≥1} t^i ⊗ t^j`.
fn kt(n: usize) -> DgCoassocCoalgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let pairs: Vec<(&str, i64)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
    let sp = Arc::new(GradedSpace::from_pairs(&pairs).unwrap());
    let cop = (1..=n)
        .map(|m| {
            (1..m)
                .map(|i| ((i - 1, m - i - 1), Rational::one()))
                .collect::<PairTerms>()
        })
        .collect();
    DgCoassocCoalgebra::graded("kt", sp, cop).unwrap()
}

#[test]
fn free_tower_dimensions() {
    let t = one_generator(4);
    assert_eq!(t.layer_dims(), vec![1, 2, 3, 4]);
    assert!(t.defects().is_empty());
    let sp = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 1)]).unwrap());
    let t = free_complete_tensor(&ChainComplex::zero(sp), 3).unwrap();
    assert_eq!(t.layer_dims(), vec![2, 6, 14]);
    let z = free_complete_tensor(&ChainComplex::zero(Arc::new(GradedSpace::zero())), 3).unwrap();
    assert_eq!(z.layer_dims(), vec![0, 0, 0]);
}

#[test]
fn gamma_on_geometric_series() {
    let t = one_generator(4);
    let s = FormalSeries::from_terms((1..=4).map(|n| (vec![0; n], Rational::one())));
    let g = t.gamma(&s).unwrap();
    assert!(t.is_compatible(&g));
    // the top component is v + v² + v³ + v⁴
    assert_eq!(g[3], Vector::from_terms((0..4).map(|i| (i, Rational::one()))));

    let rel = [(vec![0, 0], Rational::one())].into_iter().collect();
    let sp = Arc::new(GradedSpace::from_pairs(&[("v", 0)]).unwrap());
    let quot = presented_tower("quot", &ChainComplex::zero(sp), &[rel], 4).unwrap();
    assert_eq!(quot.layer_dims(), vec![1, 1, 1, 1]);
    let g = quot.gamma(&s).unwrap();
    assert!(g.iter().all(|x| *x == Vector::basis(0)));

    let long = FormalSeries::from_terms([(vec![0; 5], Rational::one())]);
    assert!(matches!(t.gamma(&long), Err(crate::Error::Truncation { length: 5, .. })));
}

#[test]
fn monad_laws_on_free_tower() {
    let sp = Arc::new(GradedSpace::from_pairs(&[("a", 0), ("b", 1), ("c", 0)]).unwrap());
    let d = GradedMap::new(
        sp.clone(),
        sp.clone(),
        -1,
        vec![Vector::new(), Vector::basis(2), Vector::new()],
    )
    .unwrap();
    let t = free_complete_tensor(&ChainComplex::new(d).unwrap(), 4).unwrap();
    assert_eq!(t.gamma_unit_defect(), None);
    for seed in 0..10 {
        let s = random_series(&t, seed, 4, 5);
        assert!(t.gamma_differential_holds(&s).unwrap());
        let inner1 = random_series(&t, 100 + seed, 2, 3);
        let inner2 = random_series(&t, 200 + seed, 2, 3);
        let outer = vec![(q(2), vec![inner1.clone(), inner2]), (q(-1), vec![inner1])];
        assert!(t.gamma_associativity_holds(&outer).unwrap());
    }
}

#[test]
fn completion_examples() {
    let c = filtration_completion(&upper3(), 4).unwrap();
    assert!(c.complete);
    assert_eq!(c.filtration.dim(1), 1);
    assert!(c.filtration.contains(1, &Vector::basis(1)));
    assert_eq!(c.filtration.dim(2), 0);
    assert_eq!(c.tower.layer_dims(), vec![2, 3, 3, 4 - 1]);

    let c = filtration_completion(&idempotent(), 4).unwrap();
    assert!(!c.complete);
    assert_eq!(c.tower.layer_dims(), vec![0; 4]);

    let rt = res_abs_round_trip(&upper3(), 4).unwrap();
    assert!(rt.passed(), "{rt:?}");
    assert_eq!(rt.nilpotency, Nilpotency::Nilpotent { degree: 2 });
}

#[test]
fn restriction_of_free_tower() {
    let r = restriction(&one_generator(3));
    assert_eq!(r.mul_basis(0, 0), Vector::basis(1));
    assert_eq!(r.mul_basis(0, 1), Vector::basis(2));
    assert!(r.mul_basis(0, 2).is_zero());
    assert!(f_in_w(&one_generator(5)).iter().all(|c| c.holds));
}

#[test]
fn convolution_of_power_series() {
    let conv = convolution_absolute(&kt(5), &idempotent(), 5).unwrap();
    assert!(conv.hom.validate().passed());
    // f_a = [t_a → y] has index a - 1
    for a in 1..=5 {
        for b in 1..=5 {
            let expect = if a + b <= 5 { Vector::basis(a + b - 1) } else { Vector::new() };
            assert_eq!(conv.hom.mul_basis(a - 1, b - 1), expect);
        }
    }
    // γ(Σ f₁^⊗n) at t^m is y for every m
    let f1 = hom_vector_to_map(&Vector::basis(0), conv.coalgebra.space(), conv.algebra.space(), 0).unwrap();
    let mut total = Vector::new();
    for n in 1..=5 {
        total.add_vector(&gamma_direct(&vec![f1.clone(); n], &conv.coalgebra, &conv.algebra));
    }
    assert_eq!(total, Vector::from_terms((0..5).map(|i| (i, Rational::one()))));
}

#[test]
fn zero_is_twisting() {
    let d = kt(3);
    let b = idempotent();
    let nu = GradedMap::zero(d.space().clone(), b.space().clone(), -1);
    assert!(twisting_check(&nu, &d, &b).unwrap().is_twisting);
}
