use serde::Serialize;

use super::{DgAssocAlgebra, DgCoassocCoalgebra, DgLieAlgebra, PairTerms, Tensor};
use crate::exactlin::{check_square_zero, koszul_sign, GradedMap, GradedSpace, Rational, Vector};
use crate::error::Error;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl LawCheck {
    fn from(law: &str, witness: Option<Witness>) -> Self {
        LawCheck {
            law: law.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub object: String,
    pub kind: String,
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_violation(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

pub(crate) fn format_pairs(space: &GradedSpace, t: &PairTerms) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|(&(a, b), c)| {
            let w = format!("{}⊗{}", space.label(a), space.label(b));
            if c.is_one() {
                w
            } else {
                format!("{c}·{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) fn format_tensor(space: &GradedSpace, t: &Tensor) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|(w, c)| {
            let w = w.iter().map(|&l| space.label(l)).collect::<Vec<_>>().join("⊗");
            if c.is_one() {
                w
            } else {
                format!("{c}·{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn d_squared(d: &GradedMap) -> Option<Witness> {
    match check_square_zero(d) {
        Ok(()) => None,
        Err(Error::DSquaredNonzero { witness, value }) => Some(Witness {
            inputs: vec![witness],
            lhs: value,
            rhs: "0".into(),
        }),
        Err(e) => Some(Witness {
            inputs: vec![],
            lhs: e.to_string(),
            rhs: String::new(),
        }),
    }
}

fn labels(space: &GradedSpace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| space.label(i).to_string()).collect()
}

/// Search all `k`-tuples of basis indices in lexicographic order.
fn first_tuple<F>(n: usize, k: u32, f: F) -> Option<Witness>
where
    F: Fn(&[usize]) -> Option<Witness> + Sync + Send,
{
    let total = n.checked_pow(k)?;
    par::find_first(total, |mut code| {
        let mut t = vec![0; k as usize];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        f(&t)
    })
    .map(|(_, w)| w)
}

impl DgAssocAlgebra {
    pub fn validate(&self) -> ValidationReport {
        let sp = self.space().clone();
        let n = self.dim();
        let d = self.differential();
        let mut checks = vec![LawCheck::from("d_squared", d_squared(d))];

        let assoc = first_tuple(n, 3, |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let lhs = self.mul(&self.mul_basis(a, b), &Vector::basis(c));
            let rhs = self.mul(&Vector::basis(a), &self.mul_basis(b, c));
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: sp.format_vector(&lhs),
                rhs: sp.format_vector(&rhs),
            })
        });
        checks.push(LawCheck::from("associativity", assoc));

        let leibniz = first_tuple(n, 2, |t| {
            let (a, b) = (t[0], t[1]);
            let lhs = d.apply(&self.mul_basis(a, b));
            let mut rhs = self.mul(d.column(a), &Vector::basis(b));
            let s = koszul_sign(&[0, -1], &[sp.degree(a), sp.degree(b)]);
            rhs.axpy(&s, &self.mul(&Vector::basis(a), d.column(b)));
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: sp.format_vector(&lhs),
                rhs: sp.format_vector(&rhs),
            })
        });
        checks.push(LawCheck::from("leibniz", leibniz));

        if let Some(u) = self.unit() {
            let unit = first_tuple(n, 1, |t| {
                let a = Vector::basis(t[0]);
                let l = self.mul(u, &a);
                let r = self.mul(&a, u);
                if l != a {
                    Some(Witness {
                        inputs: vec!["1".into(), sp.label(t[0]).into()],
                        lhs: sp.format_vector(&l),
                        rhs: sp.format_vector(&a),
                    })
                } else if r != a {
                    Some(Witness {
                        inputs: vec![sp.label(t[0]).into(), "1".into()],
                        lhs: sp.format_vector(&r),
                        rhs: sp.format_vector(&a),
                    })
                } else {
                    None
                }
            });
            let du = d.apply(u);
            let unit = unit.or_else(|| {
                (!du.is_zero()).then(|| Witness {
                    inputs: vec!["d(1)".into()],
                    lhs: sp.format_vector(&du),
                    rhs: "0".into(),
                })
            });
            checks.push(LawCheck::from("unit", unit));
        }
        ValidationReport {
            object: self.name().to_string(),
            kind: "dg_algebra".into(),
            checks,
        }
    }
}

impl DgCoassocCoalgebra {
    pub fn validate(&self) -> ValidationReport {
        let sp = self.space().clone();
        let n = self.dim();
        let d = self.differential();
        let mut checks = vec![LawCheck::from("d_squared", d_squared(d))];

        let coassoc = first_tuple(n, 1, |t| {
            let l = self.iterate_coproduct(t[0], 3);
            let r = self.iterate_coproduct_right(t[0], 3);
            (l != r).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: format_tensor(&sp, &l),
                rhs: format_tensor(&sp, &r),
            })
        });
        checks.push(LawCheck::from("coassociativity", coassoc));

        let coleibniz = first_tuple(n, 1, |t| {
            let c = t[0];
            let lhs = self.delta(d.column(c));
            let mut rhs = PairTerms::new();
            for (&(a, b), x) in &self.coproduct()[c] {
                for (a2, y) in d.column(a).iter() {
                    *rhs.entry((a2, b)).or_insert_with(Rational::zero) += x * y;
                }
                let s = koszul_sign(&[0, -1], &[sp.degree(a), sp.degree(b)]);
                for (b2, y) in d.column(b).iter() {
                    *rhs.entry((a, b2)).or_insert_with(Rational::zero) += &s * x * y;
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: format_pairs(&sp, &lhs),
                rhs: format_pairs(&sp, &rhs),
            })
        });
        checks.push(LawCheck::from("coleibniz", coleibniz));

        if let Some(eps) = self.counit() {
            let counit = first_tuple(n, 1, |t| {
                let c = t[0];
                let mut left = Vector::new();
                let mut right = Vector::new();
                for (&(a, b), x) in &self.coproduct()[c] {
                    left.add_term(b, &eps[a] * x);
                    right.add_term(a, x * &eps[b]);
                }
                let e = Vector::basis(c);
                let ed: Rational = d.column(c).iter().map(|(i, x)| &eps[i] * x).sum();
                let bad = if left != e {
                    Some(left)
                } else if right != e {
                    Some(right)
                } else if !ed.is_zero() {
                    Some(Vector::term(c, ed))
                } else {
                    None
                };
                bad.map(|v| Witness {
                    inputs: labels(&sp, t),
                    lhs: sp.format_vector(&v),
                    rhs: sp.format_vector(&e),
                })
            });
            checks.push(LawCheck::from("counit", counit));
        }
        if let Some(one) = self.coaugmentation() {
            let mut expect = PairTerms::new();
            expect.insert((one, one), Rational::one());
            let eps = self.counit().expect("coaugmentation implies counit");
            let w = if self.coproduct()[one] != expect {
                Some(Witness {
                    inputs: vec![sp.label(one).into()],
                    lhs: format_pairs(&sp, &self.coproduct()[one]),
                    rhs: format_pairs(&sp, &expect),
                })
            } else if !eps[one].is_one() || !d.column(one).is_zero() {
                Some(Witness {
                    inputs: vec![sp.label(one).into()],
                    lhs: format!("ε = {}, d = {}", eps[one], sp.format_vector(d.column(one))),
                    rhs: "ε = 1, d = 0".into(),
                })
            } else {
                None
            };
            checks.push(LawCheck::from("coaugmentation", w));
        }
        ValidationReport {
            object: self.name().to_string(),
            kind: "dg_coalgebra".into(),
            checks,
        }
    }
}

impl DgLieAlgebra {
    pub fn validate(&self) -> ValidationReport {
        let sp = self.space().clone();
        let n = self.dim();
        let d = self.differential();
        let deg = |i: usize| sp.degree(i);
        let mut checks = vec![LawCheck::from("d_squared", d_squared(d))];

        let anti = first_tuple(n, 2, |t| {
            let (a, b) = (t[0], t[1]);
            let lhs = self.bracket_basis(a, b);
            let rhs = self.bracket_basis(b, a).scaled(&-Rational::sign(deg(a) * deg(b)));
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: sp.format_vector(&lhs),
                rhs: sp.format_vector(&rhs),
            })
        });
        checks.push(LawCheck::from("antisymmetry", anti));

        // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        let jacobi = first_tuple(n, 3, |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let ea = Vector::basis(a);
            let eb = Vector::basis(b);
            let lhs = self.br(&ea, &self.bracket_basis(b, c));
            let mut rhs = self.br(&self.bracket_basis(a, b), &Vector::basis(c));
            rhs.axpy(
                &Rational::sign(deg(a) * deg(b)),
                &self.br(&eb, &self.bracket_basis(a, c)),
            );
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: sp.format_vector(&lhs),
                rhs: sp.format_vector(&rhs),
            })
        });
        checks.push(LawCheck::from("jacobi", jacobi));

        let leibniz = first_tuple(n, 2, |t| {
            let (a, b) = (t[0], t[1]);
            let lhs = d.apply(&self.bracket_basis(a, b));
            let mut rhs = self.br(d.column(a), &Vector::basis(b));
            let s = koszul_sign(&[0, -1], &[deg(a), deg(b)]);
            rhs.axpy(&s, &self.br(&Vector::basis(a), d.column(b)));
            (lhs != rhs).then(|| Witness {
                inputs: labels(&sp, t),
                lhs: sp.format_vector(&lhs),
                rhs: sp.format_vector(&rhs),
            })
        });
        checks.push(LawCheck::from("leibniz", leibniz));
        ValidationReport {
            object: self.name().to_string(),
            kind: "dg_lie".into(),
            checks,
        }
    }
}

/// First basis element on which a degree-0 map fails to be a morphism of dg algebras.
pub fn algebra_morphism_defect(f: &GradedMap, a: &DgAssocAlgebra, b: &DgAssocAlgebra) -> Option<Witness> {
    let sp = a.space();
    let tp = b.space();
    if let Some(i) = crate::exactlin::chain_map_defect(f, a.complex(), b.complex()) {
        return Some(Witness {
            inputs: vec![format!("d({})", sp.label(i))],
            lhs: tp.format_vector(&f.apply(a.differential().column(i))),
            rhs: tp.format_vector(&b.differential().apply(f.column(i))),
        });
    }
    first_tuple(a.dim(), 2, |t| {
        let lhs = f.apply(&a.mul_basis(t[0], t[1]));
        let rhs = b.mul(f.column(t[0]), f.column(t[1]));
        (lhs != rhs).then(|| Witness {
            inputs: labels(sp, t),
            lhs: tp.format_vector(&lhs),
            rhs: tp.format_vector(&rhs),
        })
    })
}

/// First basis element on which a degree-0 map fails to be a morphism of dg coalgebras.
pub fn coalgebra_morphism_defect(
    f: &GradedMap,
    c: &DgCoassocCoalgebra,
    d: &DgCoassocCoalgebra,
) -> Option<Witness> {
    let sp = c.space();
    let tp = d.space();
    if let Some(i) = crate::exactlin::chain_map_defect(f, c.complex(), d.complex()) {
        return Some(Witness {
            inputs: vec![format!("d({})", sp.label(i))],
            lhs: tp.format_vector(&f.apply(c.differential().column(i))),
            rhs: tp.format_vector(&d.differential().apply(f.column(i))),
        });
    }
    first_tuple(c.dim(), 1, |t| {
        let mut lhs = PairTerms::new();
        for (&(a, b), x) in &c.coproduct()[t[0]] {
            for (i, y) in f.column(a).iter() {
                for (j, z) in f.column(b).iter() {
                    *lhs.entry((i, j)).or_insert_with(Rational::zero) += x * y * z;
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        let rhs = d.delta(f.column(t[0]));
        (lhs != rhs).then(|| Witness {
            inputs: labels(sp, t),
            lhs: format_pairs(tp, &lhs),
            rhs: format_pairs(tp, &rhs),
        })
    })
}
