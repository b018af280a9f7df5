//! Independent oracles for the integration tests. Nothing here calls into the
//! engine's linear algebra, sign conventions or law checks; only scalars and
//! structure constants are shared.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use absalg::assoc::{DgAssocAlgebra, DgCoassocCoalgebra, DgLieAlgebra};
use absalg::exactlin::Rational;

pub type Row = BTreeMap<usize, Rational>;

/// Rank by plain Gaussian elimination over ℚ.
pub fn rank(rows: impl IntoIterator<Item = Row>) -> usize {
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for mut r in rows {
        loop {
            r.retain(|_, x| !x.is_zero());
            let Some((&lead, lc)) = r.iter().next() else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    let f = lc / &p[&lead];
                    for (&k, x) in p {
                        let e = r.entry(k).or_insert_with(Rational::zero);
                        *e = &*e - &(&f * x);
                    }
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Number of Lyndon words of length `n` over `k` letters, by enumeration.
pub fn lyndon_count(k: usize, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut w = vec![0; n];
        let mut c = code;
        for x in w.iter_mut().rev() {
            *x = c % k;
            c /= k;
        }
        // strictly smaller than all proper rotations
        if (1..n).all(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rot
        }) {
            count += 1;
        }
    }
    count
}

/// Dense structure constants of a bilinear operation: `t[a][b][c]`.
pub type Table = Vec<Vec<Vec<Rational>>>;

pub fn product_table(b: &DgAssocAlgebra) -> Table {
    let n = b.dim();
    (0..n)
        .map(|a| (0..n).map(|x| (0..n).map(|c| b.mul_basis(a, x).get(c)).collect()).collect())
        .collect()
}

pub fn bracket_table(g: &DgLieAlgebra) -> Table {
    let n = g.dim();
    (0..n)
        .map(|a| (0..n).map(|x| (0..n).map(|c| g.bracket_basis(a, x).get(c)).collect()).collect())
        .collect()
}

/// `t[c][a][b]` = coefficient of `a⊗b` in `Δc`.
pub fn coproduct_table(d: &DgCoassocCoalgebra) -> Table {
    let n = d.dim();
    (0..n)
        .map(|c| {
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| d.coproduct()[c].get(&(a, b)).cloned().unwrap_or_else(Rational::zero))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `m[i][j]` = coefficient of basis `j` in `d(i)`.
pub fn diff_matrix(cols: &[absalg::exactlin::Vector], n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| cols[i].get(j)).collect()).collect()
}

fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let n = v.len();
    let mut out = vec![q(0); n];
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..n {
            out[j] = &out[j] + &(&v[i] * &m[i][j]);
        }
    }
    out
}

fn mul(t: &Table, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut out = vec![q(0); n];
    for a in 0..n {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if y[b].is_zero() {
                continue;
            }
            let s = &x[a] * &y[b];
            for c in 0..n {
                out[c] = &out[c] + &(&s * &t[a][b][c]);
            }
        }
    }
    out
}

fn e(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()
}

fn d_squared_broken(d: &[Vec<Rational>]) -> bool {
    let n = d.len();
    (0..n).any(|i| apply(d, &apply(d, &e(n, i))).iter().any(|x| !x.is_zero()))
}

/// Which laws a dg algebra breaks.
pub fn algebra_violations(t: &Table, d: &[Vec<Rational>], deg: &[i64], unit: Option<&[Rational]>) -> Vec<&'static str> {
    let n = deg.len();
    let mut out = Vec::new();
    if d_squared_broken(d) {
        out.push("d_squared");
    }
    let assoc = (0..n).any(|a| {
        (0..n).any(|b| {
            (0..n).any(|c| {
                let l = mul(t, &mul(t, &e(n, a), &e(n, b)), &e(n, c));
                let r = mul(t, &e(n, a), &mul(t, &e(n, b), &e(n, c)));
                l != r
            })
        })
    });
    if assoc {
        out.push("associativity");
    }
    let leibniz = (0..n).any(|a| {
        (0..n).any(|b| {
            let l = apply(d, &mul(t, &e(n, a), &e(n, b)));
            let r1 = mul(t, &apply(d, &e(n, a)), &e(n, b));
            let r2 = mul(t, &e(n, a), &apply(d, &e(n, b)));
            let s = sign(deg[a]);
            let r: Vec<Rational> = r1.iter().zip(&r2).map(|(x, y)| x + &(&s * y)).collect();
            l != r
        })
    });
    if leibniz {
        out.push("leibniz");
    }
    if let Some(u) = unit {
        let bad = (0..n).any(|a| mul(t, u, &e(n, a)) != e(n, a) || mul(t, &e(n, a), u) != e(n, a));
        if bad || apply(d, u).iter().any(|x| !x.is_zero()) {
            out.push("unit");
        }
    }
    out
}

/// Which laws a dg coalgebra breaks.
pub fn coalgebra_violations(
    t: &Table,
    d: &[Vec<Rational>],
    deg: &[i64],
    counit: Option<&[Rational]>,
    coaugmentation: Option<usize>,
) -> Vec<&'static str> {
    let n = deg.len();
    let mut out = Vec::new();
    if d_squared_broken(d) {
        out.push("d_squared");
    }
    // (Δ⊗1)Δ and (1⊗Δ)Δ as dense triples
    let coassoc = (0..n).any(|c| {
        let mut l = vec![q(0); n * n * n];
        let mut r = vec![q(0); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let x = &t[c][a][b];
                if x.is_zero() {
                    continue;
                }
                for p in 0..n {
                    for s in 0..n {
                        l[(p * n + s) * n + b] = &l[(p * n + s) * n + b] + &(x * &t[a][p][s]);
                        r[(a * n + p) * n + s] = &r[(a * n + p) * n + s] + &(x * &t[b][p][s]);
                    }
                }
            }
        }
        l != r
    });
    if coassoc {
        out.push("coassociativity");
    }
    // Δd = (d⊗1 + 1⊗d)Δ with (1⊗d)(x⊗y) = (-1)^{|x|} x⊗dy
    let coleibniz = (0..n).any(|c| {
        let mut l = vec![q(0); n * n];
        for k in 0..n {
            let x = &d[c][k];
            if x.is_zero() {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    l[a * n + b] = &l[a * n + b] + &(x * &t[k][a][b]);
                }
            }
        }
        let mut r = vec![q(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let x = &t[c][a][b];
                if x.is_zero() {
                    continue;
                }
                for k in 0..n {
                    r[k * n + b] = &r[k * n + b] + &(x * &d[a][k]);
                    r[a * n + k] = &r[a * n + k] + &(&(x * &sign(deg[a])) * &d[b][k]);
                }
            }
        }
        l != r
    });
    if coleibniz {
        out.push("coleibniz");
    }
    if let Some(eps) = counit {
        let bad = (0..n).any(|c| {
            let mut l = vec![q(0); n];
            let mut r = vec![q(0); n];
            for a in 0..n {
                for b in 0..n {
                    l[b] = &l[b] + &(&eps[a] * &t[c][a][b]);
                    r[a] = &r[a] + &(&eps[b] * &t[c][a][b]);
                }
            }
            let ed = (0..n).fold(q(0), |acc, k| &acc + &(&eps[k] * &d[c][k]));
            l != e(n, c) || r != e(n, c) || !ed.is_zero()
        });
        if bad {
            out.push("counit");
        }
        if let Some(one) = coaugmentation {
            let mut bad = !eps[one].is_one() || d[one].iter().any(|x| !x.is_zero());
            for a in 0..n {
                for b in 0..n {
                    let want = if a == one && b == one { q(1) } else { q(0) };
                    bad |= t[one][a][b] != want;
                }
            }
            if bad {
                out.push("coaugmentation");
            }
        }
    }
    out
}

/// Which laws a dg Lie algebra breaks.
pub fn lie_violations(t: &Table, d: &[Vec<Rational>], deg: &[i64]) -> Vec<&'static str> {
    let n = deg.len();
    let br = |x: &[Rational], y: &[Rational]| mul(t, x, y);
    let mut out = Vec::new();
    if d_squared_broken(d) {
        out.push("d_squared");
    }
    let anti = (0..n).any(|a| {
        (0..n).any(|b| {
            let s = -sign(deg[a] * deg[b]);
            let r: Vec<Rational> = br(&e(n, b), &e(n, a)).iter().map(|x| &s * x).collect();
            br(&e(n, a), &e(n, b)) != r
        })
    });
    if anti {
        out.push("antisymmetry");
    }
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    let jacobi = (0..n).any(|a| {
        (0..n).any(|b| {
            (0..n).any(|c| {
                let l = br(&e(n, a), &br(&e(n, b), &e(n, c)));
                let r1 = br(&br(&e(n, a), &e(n, b)), &e(n, c));
                let r2 = br(&e(n, b), &br(&e(n, a), &e(n, c)));
                let s = sign(deg[a] * deg[b]);
                let r: Vec<Rational> = r1.iter().zip(&r2).map(|(x, y)| x + &(&s * y)).collect();
                l != r
            })
        })
    });
    if jacobi {
        out.push("jacobi");
    }
    let leibniz = (0..n).any(|a| {
        (0..n).any(|b| {
            let l = apply(d, &br(&e(n, a), &e(n, b)));
            let r1 = br(&apply(d, &e(n, a)), &e(n, b));
            let r2 = br(&e(n, a), &apply(d, &e(n, b)));
            let s = sign(deg[a]);
            let r: Vec<Rational> = r1.iter().zip(&r2).map(|(x, y)| x + &(&s * y)).collect();
            l != r
        })
    });
    if leibniz {
        out.push("leibniz");
    }
    out
}

/// Homology dimensions of the classical bar complex of a degree-0 algebra
/// (words of length `k` in degree `k`, `d = Σ (-1)^i` multiply neighbours),
/// truncated at length `n` like the engine's.
pub fn bar_homology_oracle(t: &Table, n: usize) -> Vec<usize> {
    let dim = t.len();
    let words = |k: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..dim).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    };
    let index = |ws: &[Vec<usize>]| -> HashMap<Vec<usize>, usize> {
        ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()
    };
    // rank of d: C_k → C_{k-1}
    let rank_d = |k: usize| -> usize {
        if k < 2 || k > n {
            return 0;
        }
        let src = words(k);
        let tgt = index(&words(k - 1));
        rank(src.iter().map(|w| {
            let mut row = Row::new();
            for i in 0..k - 1 {
                for c in 0..dim {
                    let x = &t[w[i]][w[i + 1]][c];
                    if x.is_zero() {
                        continue;
                    }
                    let mut v = w[..i].to_vec();
                    v.push(c);
                    v.extend_from_slice(&w[i + 2..]);
                    let e = row.entry(tgt[&v]).or_insert_with(Rational::zero);
                    *e = &*e + &(&sign(i as i64) * x);
                }
            }
            row
        }))
    };
    (1..=n)
        .map(|k| dim.pow(k as u32) - rank_d(k) - rank_d(k + 1))
        .collect()
}

/// Layer dimensions of `U₊/U₊^{ω+1}` for a degree-0 Lie algebra, by brute
/// force: words of length `1..=ω` modulo the span of all `u·r_{ab}·v`, where
/// `r_{ab} = ab − ba − [a,b]` and terms longer than `ω` are dropped.
pub fn pbw_oracle_dims(t: &Table, omega_max: usize) -> Vec<usize> {
    let dim = t.len();
    let mut all: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for k in 1..=omega_max {
        let prev = all[k - 1].clone();
        all.push(
            prev.into_iter()
                .flat_map(|w| {
                    (0..dim).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect(),
        );
    }
    (1..=omega_max)
        .map(|omega| {
            let mut idx: HashMap<Vec<usize>, usize> = HashMap::new();
            for k in 1..=omega {
                for w in &all[k] {
                    let i = idx.len();
                    idx.insert(w.clone(), i);
                }
            }
            let mut rows = Vec::new();
            for lu in 0..omega {
                for lv in 0..omega - lu {
                    for u in &all[lu] {
                        for v in &all[lv] {
                            for a in 0..dim {
                                for b in a + 1..dim {
                                    let mut row = Row::new();
                                    let word = |mid: &[usize]| {
                                        let mut w = u.clone();
                                        w.extend_from_slice(mid);
                                        w.extend_from_slice(v);
                                        w
                                    };
                                    if lu + lv + 2 <= omega {
                                        *row.entry(idx[&word(&[a, b])]).or_insert_with(Rational::zero) += q(1);
                                        let e = row.entry(idx[&word(&[b, a])]).or_insert_with(Rational::zero);
                                        *e = &*e - &q(1);
                                    }
                                    for c in 0..dim {
                                        let x = &t[a][b][c];
                                        if !x.is_zero() {
                                            let e = row.entry(idx[&word(&[c])]).or_insert_with(Rational::zero);
                                            *e = &*e - x;
                                        }
                                    }
                                    rows.push(row);
                                }
                            }
                        }
                    }
                }
            }
            idx.len() - rank(rows)
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// First basis index `i` with `d(d(e_i)) ≠ 0`, computed column by column.
pub fn square_defect(d: &absalg::exactlin::GradedMap) -> Option<usize> {
    (0..d.columns().len()).find(|&i| {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, x) in d.column(i).iter() {
            for (k, y) in d.column(j).iter() {
                let e = acc.entry(k).or_insert_with(Rational::zero);
                *e = &*e + &(x * y);
            }
        }
        acc.values().any(|v| !v.is_zero())
    })
}
