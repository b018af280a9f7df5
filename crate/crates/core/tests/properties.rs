//! Property tests: algebraic identities of the exact arithmetic, Koszul signs,
//! law checks against the oracle on random perturbations, and monad
//! compatibility on random series.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use absalg::absolute::random_series;
use absalg::assoc::{Bilinear, DgAssocAlgebra, DgLieAlgebra};
use absalg::cli::corpus;
use absalg::exactlin::{rank as engine_rank, swap, GradedSpace, Rational, Vector};
use absalg::lie::free_complete_lie;

use common::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn degs(sp: &GradedSpace) -> Vec<i64> {
    (0..sp.dim()).map(|i| sp.degree(i)).collect()
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, Rational::zero());
    }

    #[test]
    fn rational_inverse(a in nonzero_rational()) {
        prop_assert!((&a * &a.recip()).is_one());
        prop_assert_eq!(&Rational::one() / &a, a.recip());
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        let back: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn axpy_is_linear(x in prop::collection::vec(rational(), 5), y in prop::collection::vec(rational(), 5), c in rational()) {
        let vx = Vector::from_terms(x.iter().cloned().enumerate());
        let vy = Vector::from_terms(y.iter().cloned().enumerate());
        let mut z = vx.clone();
        z.axpy(&c, &vy);
        for i in 0..5 {
            prop_assert_eq!(z.get(i), &x[i] + &(&c * &y[i]));
        }
        prop_assert_eq!(z.sub(&vx), vy.scaled(&c));
    }

    #[test]
    fn rank_matches_plain_elimination(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..7)) {
        let vecs: Vec<Vector> = rows
            .iter()
            .map(|r| Vector::from_terms(r.iter().enumerate().map(|(i, &x)| (i, Rational::from_integer(x)))))
            .collect();
        let oracle = rank(rows.iter().map(|r| {
            r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, q(x))).collect::<Row>()
        }));
        prop_assert_eq!(engine_rank(vecs.iter()), oracle);
    }

    #[test]
    fn symmetry_is_an_involution(du in prop::collection::vec(-2i64..=2, 1..4), dv in prop::collection::vec(-2i64..=2, 1..4)) {
        let space = |p: &str, ds: &[i64]| {
            let labels: Vec<String> = (0..ds.len()).map(|i| format!("{p}{i}")).collect();
            let pairs: Vec<(&str, i64)> = labels.iter().map(String::as_str).zip(ds.iter().copied()).collect();
            Arc::new(GradedSpace::from_pairs(&pairs).unwrap())
        };
        let (u, v) = (space("u", &du), space("v", &dv));
        let tw = swap(&v, &u).compose(&swap(&u, &v)).unwrap();
        for (k, col) in tw.columns().iter().enumerate() {
            prop_assert_eq!(col, &Vector::basis(k));
        }
        // each column carries (-1)^{|a||b|}
        let s = swap(&u, &v);
        for a in 0..u.dim() {
            for b in 0..v.dim() {
                let col = s.column(a * v.dim() + b);
                prop_assert_eq!(col.len(), 1);
                let (_, c) = col.leading().unwrap();
                prop_assert_eq!(c, &Rational::sign(du[a] * dv[b]));
            }
        }
    }

    #[test]
    fn algebra_law_checks_agree_with_oracle(
        which in 0usize..6,
        slot in (0usize..4, 0usize..4, 0usize..4),
        c in nonzero_rational(),
    ) {
        let name = ["acyclic_cone", "dual_numbers", "idempotent", "triangular_dg", "unital_dual_numbers", "upper3"][which];
        let b = corpus::algebra(name).unwrap();
        let sp = b.space().clone();
        let n = b.dim();
        let (x, y, z) = (slot.0 % n, slot.1 % n, slot.2 % n);
        prop_assume!(sp.degree(z) == sp.degree(x) + sp.degree(y));
        let mut p: Bilinear = b.product().clone();
        p.entry((x, y)).or_default().add_term(z, c);
        let pb = DgAssocAlgebra::new_unchecked(name, b.differential().clone(), p, b.unit().cloned()).unwrap();
        let unit: Option<Vec<Rational>> = pb.unit().map(|u| (0..n).map(|i| u.get(i)).collect());
        let oracle = algebra_violations(
            &product_table(&pb),
            &diff_matrix(pb.differential().columns(), n),
            &degs(&sp),
            unit.as_deref(),
        );
        let engine: Vec<String> = pb.validate().checks.into_iter().filter(|k| !k.passed).map(|k| k.law).collect();
        prop_assert_eq!(engine, oracle.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn lie_law_checks_agree_with_oracle(
        which in 0usize..3,
        slot in (0usize..4, 0usize..4, 0usize..4),
        c in nonzero_rational(),
        antisymmetric in any::<bool>(),
    ) {
        let name = ["abelian3", "filiform4", "heisenberg"][which];
        let g = corpus::lie(name).unwrap();
        let sp = g.space().clone();
        let n = g.dim();
        let (x, y, z) = (slot.0 % n, slot.1 % n, slot.2 % n);
        prop_assume!(x != y && sp.degree(z) == sp.degree(x) + sp.degree(y));
        let mut br: Bilinear = g.bracket().clone();
        br.entry((x, y)).or_default().add_term(z, c.clone());
        if antisymmetric {
            br.entry((y, x)).or_default().add_term(z, -(&c * &Rational::sign(sp.degree(x) * sp.degree(y))));
        }
        let pg = DgLieAlgebra::new_unchecked(name, g.differential().clone(), br).unwrap();
        let oracle = lie_violations(&bracket_table(&pg), &diff_matrix(pg.differential().columns(), n), &degs(&sp));
        let engine: Vec<String> = pg.validate().checks.into_iter().filter(|k| !k.passed).map(|k| k.law).collect();
        prop_assert_eq!(engine, oracle.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        prop_assert_eq!(!antisymmetric, oracle.contains(&"antisymmetry"));
    }

    #[test]
    fn series_evaluation_commutes_with_d(which in 0usize..2, seed in any::<u64>()) {
        let tower = corpus::tower(["free_tower", "quotient_tower"][which], 4).unwrap();
        let s = random_series(&tower, seed, 4, 6);
        prop_assert!(tower.gamma_differential_holds(&s).unwrap());
        let x = tower.gamma(&s).unwrap();
        prop_assert!(tower.is_compatible(&x));
    }
}

#[test]
fn free_lie_dimensions_are_lyndon_counts() {
    for k in 1..=3 {
        let labels: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
        let pairs: Vec<(&str, i64)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
        let v = Arc::new(GradedSpace::from_pairs(&pairs).unwrap());
        let dims = free_complete_lie(&v, 5).dims();
        let want: Vec<usize> = (1..=5).map(|w| lyndon_count(k, w)).collect();
        assert_eq!(dims, want, "{k} generators");
    }
}
