use std::sync::Arc;

use super::*;
use crate::assoc::DgAssocAlgebra;
use crate::cli::corpus;
use crate::exactlin::GradedSpace;

fn k() -> ChainComplex {
    ChainComplex::zero(Arc::new(GradedSpace::from_pairs(&[("1", 0)]).unwrap()))
}

fn k2() -> ChainComplex {
    ChainComplex::zero(Arc::new(GradedSpace::from_pairs(&[("u", 0), ("v", 0)]).unwrap()))
}

fn coalgebra(name: &str) -> DgCoassocCoalgebra {
    corpus::coalgebra(name).unwrap()
}

#[test]
fn free_contramodules_pass_for_both_declared_chiralities() {
    for name in ["kt", "path", "xy_coalgebra", "triangular_dg_dual"] {
        let c = coalgebra(name);
        for ch in Chirality::BOTH {
            let x = free_contramodule(&c, &k(), ch).unwrap();
            let r = validate_contramodule(&x);
            assert!(r.passed(), "{name} {ch:?}: {r:?}");
        }
    }
}

#[test]
fn power_series_multiplication() {
    let c = coalgebra("kt");
    let x = free_contramodule(&c, &k(), Chirality::Left).unwrap();
    let md = x.dim();
    // t^a ↦ p_b acts as p_{a+b}
    for a in 0..md {
        for b in 0..md {
            let v = x.act(&Vector::basis(a * md + b));
            let want = if a + b < md { Vector::basis(a + b) } else { Vector::new() };
            assert_eq!(v, want, "{a} {b}");
        }
    }
    let r = validate_contramodule(&x);
    assert_eq!(r.satisfied, vec![Chirality::Left, Chirality::Right]);
}

#[test]
fn path_coalgebra_separates_chiralities() {
    let c = coalgebra("path");
    let l = free_contramodule(&c, &k(), Chirality::Left).unwrap();
    let r = free_contramodule(&c, &k(), Chirality::Right).unwrap();
    assert_ne!(l.action(), r.action());
    let rl = validate_contramodule(&l);
    assert_eq!(rl.satisfied, vec![Chirality::Left]);
    let w = rl.right.iter().find(|c| !c.passed).unwrap();
    assert!(w.witness.is_some());
    let rr = validate_contramodule(&r);
    assert_eq!(rr.satisfied, vec![Chirality::Right]);
}

#[test]
fn perturbed_table_is_rejected() {
    let c = coalgebra("kt");
    let x = free_contramodule(&c, &k(), Chirality::Left).unwrap();
    let mut act = x.action().to_vec();
    act[1 * x.dim() + 1].add_term(3, Rational::one());
    let y = x.with_action(act).unwrap();
    let r = validate_contramodule(&y);
    assert!(!r.passed());
    assert!(r.left.iter().any(|c| c.witness.is_some()));
}

#[test]
fn trivial_coalgebra_gives_module_itself() {
    let sp = Arc::new(GradedSpace::from_pairs(&[("1", 0)]).unwrap());
    let c = DgCoassocCoalgebra::new(
        "k",
        GradedMap::zero(sp.clone(), sp.clone(), -1),
        vec![[((0, 0), Rational::one())].into_iter().collect()],
        Some(vec![Rational::one()]),
        Some(0),
    )
    .unwrap();
    let x = free_contramodule(&c, &k2(), Chirality::Left).unwrap();
    assert_eq!(x.dim(), 2);
    assert_eq!(x.act(&Vector::basis(1)), Vector::basis(1));
    assert!(cocontra_duality_check(&c, &k2()).unwrap().passed());
}

#[test]
fn free_universal_property() {
    for name in ["kt", "path"] {
        let c = coalgebra(name);
        let free = free_contramodule(&c, &k(), Chirality::Left).unwrap();
        let targets = [
            free.clone(),
            free_contramodule(&c, &k2(), Chirality::Left).unwrap(),
            comodule_to_contramodule(&RightComodule::regular(&c), &k()).unwrap(),
        ];
        let eta = free_unit(&c, &free, &k()).unwrap();
        for (t, target) in targets.iter().enumerate() {
            for pick in 0..target.dim() {
                let g = GradedMap::new(
                    k().space().clone(),
                    target.space().clone(),
                    0,
                    vec![Vector::basis(pick)],
                );
                let Ok(g) = g else { continue };
                let h = free_extension(&g, &free, target).unwrap();
                assert_eq!(contramodule_morphism_defect(&h, &free, target), None, "{name} {t}");
                assert_eq!(h.compose(&eta).unwrap().columns(), g.columns());
            }
            assert!(extension_is_unique(&free, &k(), target).unwrap(), "{name} {t}");
        }
    }
}

#[test]
fn comodule_induction() {
    for name in ["kt", "path", "triangular_dg_dual"] {
        let c = coalgebra(name);
        let v = RightComodule::regular(&c);
        assert!(v.validate().iter().all(|l| l.passed), "{name}");
        let x = comodule_to_contramodule(&v, &k()).unwrap();
        assert!(validate_contramodule(&x).satisfied.contains(&Chirality::Left), "{name}");
    }
    // zero comodule
    let c = coalgebra("path");
    let z = RightComodule {
        name: "0".into(),
        coalgebra: c.clone(),
        space: Arc::new(GradedSpace::zero()),
        differential: GradedMap::zero(Arc::new(GradedSpace::zero()), Arc::new(GradedSpace::zero()), -1),
        coaction: vec![],
    };
    assert_eq!(comodule_to_contramodule(&z, &k()).unwrap().dim(), 0);
}

#[test]
fn filtration_of_power_series() {
    let c = coalgebra("kt");
    let x = free_contramodule(&c, &k(), Chirality::Left).unwrap();
    let d = x.dim();
    let f = contra_filtration_completion(&x, d).unwrap();
    // W_ω = span{p_{ω+1}, …}
    let want: Vec<usize> = (1..=d).map(|w| d.saturating_sub(w + 1)).collect();
    assert_eq!(f.stage_dims, want);
    assert!(f.complete);
}

#[test]
fn cocontra_identities() {
    for name in ["path", "kt", "xy_coalgebra", "triangular_dg_dual"] {
        let c = coalgebra(name);
        for m in [k(), k2()] {
            let r = cocontra_duality_check(&c, &m).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }
    // a graded module with a differential
    let sp = Arc::new(GradedSpace::from_pairs(&[("p", 1), ("q", 0)]).unwrap());
    let d = GradedMap::new(sp.clone(), sp.clone(), -1, vec![Vector::basis(1), Vector::new()]).unwrap();
    let m = ChainComplex::new(d).unwrap();
    let c = coalgebra("triangular_dg_dual");
    let r = cocontra_duality_check(&c, &m).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn cofree_modules_over_lines() {
    for name in ["idempotent", "dual_numbers", "upper3"] {
        let a: DgAssocAlgebra = corpus::algebra(name).unwrap();
        let r = cofree_module_check(&a, 2).unwrap();
        assert!(r.module_associative && r.comodule_coassociative && r.matches, "{r:?}");
    }
}

#[test]
fn twisted_square_at_zero_and_pi() {
    use crate::barcobar::{bar, universal_twisting};
    for name in ["idempotent", "dual_numbers", "acyclic_cone", "triangular_dg"] {
        let b: DgAssocAlgebra = corpus::algebra(name).unwrap();
        let bbar = b.augmentation_ideal().unwrap();
        let bar_b = bar(&b, 3).unwrap();
        let pi = universal_twisting(&bar_b, &bbar);
        let n = bbar.complex().clone();
        let act = |e: usize, j: usize| bbar.mul_basis(e, j);
        let zero = GradedMap::zero(pi.source().clone(), pi.target().clone(), -1);
        for (label, alpha) in [("zero", &zero), ("pi", &pi)] {
            let r = twisted_square_check(label, alpha, &bar_b.coalgebra, &bbar, &n, &act).unwrap();
            assert!(r.is_twisting, "{name} {label}");
            assert!(r.square_zero, "{name} {label}");
            assert!(r.dual_matches, "{name} {label}");
        }
        if name == "idempotent" {
            let bad = pi.scaled(&Rational::from_integer(2));
            let r = twisted_square_check("2pi", &bad, &bar_b.coalgebra, &bbar, &n, &act).unwrap();
            assert!(!r.is_twisting && !r.square_zero && r.dual_matches);
        }
    }
}
