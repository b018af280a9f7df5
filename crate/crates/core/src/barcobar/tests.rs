use std::sync::Arc;

use super::*;
use crate::assoc::Bilinear;
use crate::exactlin::Vector;

fn line(square: bool) -> DgAssocAlgebra {
    let sp = Arc::new(GradedSpace::from_pairs(&[("e", 0)]).unwrap());
    let mut p = Bilinear::new();
    if square {
        p.insert((0, 0), Vector::basis(0));
    }
    DgAssocAlgebra::graded("line", sp, p).unwrap()
}

fn coalgebra(labels: &[(&str, i64)], cop: Vec<Vec<((usize, usize), i64)>>) -> DgCoassocCoalgebra {
    let sp = Arc::new(GradedSpace::from_pairs(labels).unwrap());
    let cop = cop
        .into_iter()
        .map(|t| t.into_iter().map(|(k, c)| (k, Rational::from_integer(c))).collect())
        .collect();
    DgCoassocCoalgebra::graded("c", sp, cop).unwrap()
}

#[test]
fn bar_of_dual_numbers() {
    let b = bar(&line(false), 6).unwrap();
    assert!(b.parts.d.is_zero());
    let betti = b.coalgebra.complex().betti();
    for k in 1..=6 {
        assert_eq!(betti[&k], 1);
    }
}

#[test]
fn bar_of_idempotent() {
    let b = bar(&line(true), 3).unwrap();
    let i = b.words.index_of(&[0, 0]).unwrap();
    assert_eq!(b.parts.d.column(i), &Vector::term(0, Rational::from_integer(1)));
    let bbar = line(true);
    let pi = universal_twisting(&b, &bbar);
    assert!(crate::absolute::twisting_check(&pi, &b.coalgebra, &bbar).unwrap().is_twisting);
}

#[test]
fn cobar_examples() {
    let prim = coalgebra(&[("x", 0)], vec![vec![]]);
    let c = cobar(&prim, 4).unwrap();
    assert!(c.parts.d.is_zero());
    assert_eq!(c.words.space().degree(0), -1);

    let xy = coalgebra(&[("x", 0), ("y", 0)], vec![vec![], vec![((0, 0), 1)]]);
    let c = cobar(&xy, 3).unwrap();
    let y = c.words.index_of(&[1]).unwrap();
    let xx = c.words.index_of(&[0, 0]).unwrap();
    assert_eq!(c.parts.d2.column(y), &Vector::basis(xx));
    let complete = complete_cobar(&xy, 3).unwrap();
    assert_eq!(complete.top().differential(), c.algebra.differential());

    let grouplike = coalgebra(&[("c", 0)], vec![vec![((0, 0), 1)]]);
    assert!(matches!(cobar(&grouplike, 4), Err(Error::NotConilpotent { .. })));
    let t = complete_cobar(&grouplike, 4).unwrap();
    assert_eq!(t.layer_dims(), vec![1, 2, 3, 4]);
    assert!(!t.top().differential().is_zero());
}

#[test]
fn complete_bar_of_constant_tower() {
    let eps = line(false);
    let t = AlgebraTower::constant("c", eps.clone(), 4);
    let a = complete_bar_conil(&t, 4).unwrap();
    let b = bar(&eps, 4).unwrap();
    assert_eq!(a.parts.d, b.parts.d);
}

#[test]
fn mutations_break_bar() {
    // every mutation is caught by d² or by the universal twisting morphism on
    // one of two algebras
    let sp = Arc::new(GradedSpace::from_pairs(&[("y", 0), ("x", 1)]).unwrap());
    let d = GradedMap::new(sp.clone(), sp.clone(), -1, vec![Vector::new(), Vector::basis(0)]).unwrap();
    let mut p = Bilinear::new();
    p.insert((0, 0), Vector::basis(0));
    p.insert((0, 1), Vector::basis(1));
    p.insert((1, 0), Vector::basis(1));
    let cone = DgAssocAlgebra::new("cone", d, p, None).unwrap();
    for m in SignMutation::ALL {
        assert!([line(true), cone.clone()].iter().any(|b| detected(b, m)), "{m:?} undetected");
    }
}

fn detected(b: &DgAssocAlgebra, m: SignMutation) -> bool {
    {
        let (ws, parts) = bar_differential(b, 4, m).unwrap();
        let dd = check_square_zero(&parts.d).is_err();
        let bad_pi = if dd {
            false
        } else {
            let coalg = DgCoassocCoalgebra::new("m", parts.d.clone(), deconcatenation(&ws), None, None).unwrap();
            let bc = BarCoalgebra { words: ws, coalgebra: coalg, parts };
            let pi = universal_twisting(&bc, b);
            !crate::absolute::twisting_check(&pi, &bc.coalgebra, b).unwrap().is_twisting
        };
        dd || bad_pi
    }
}

#[test]
fn round_trips_and_counit() {
    for r in round_trip(&line(true), 3).unwrap() {
        assert!(r.passed(), "{r:?}");
    }
    for sq in [false, true] {
        let q = bar_counit_quasi_iso(&line(sq), 5).unwrap();
        assert!(q.passed(), "{q:?}");
    }
}
