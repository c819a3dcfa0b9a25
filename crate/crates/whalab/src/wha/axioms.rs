use std::collections::HashMap;

use super::{Element, WeakHopfAlgebraData};
use crate::exec::Exec;
use crate::report::{Check, Report};
use crate::scalar::{max_dev, Scalar, Tolerance, ZERO};

type Tensor3 = HashMap<(usize, usize, usize), Scalar>;

fn tensor_dev(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut d: f64 = 0.0;
    for (k, v) in a {
        d = d.max((v - b.get(k).copied().unwrap_or(ZERO)).norm());
    }
    for (k, v) in b {
        if !a.contains_key(k) {
            d = d.max(v.norm());
        }
    }
    d
}

fn add(t: &mut Tensor3, k: (usize, usize, usize), v: Scalar) {
    *t.entry(k).or_insert(ZERO) += v;
}

/// Worst deviation across an inner loop, labelled with the outer index.
fn worst(h: &WeakHopfAlgebraData, i: usize, devs: impl Iterator<Item = (f64, String)>) -> (f64, String) {
    devs.fold((0.0, h.basis.label(i)), |acc, d| if d.0 > acc.0 { d } else { acc })
}

pub fn verify_wha_axioms(h: &WeakHopfAlgebraData, tol: Tolerance) -> Report {
    verify_wha_axioms_with(h, tol, Exec::default())
}

pub fn verify_wha_axioms_with(h: &WeakHopfAlgebraData, tol: Tolerance, exec: Exec) -> Report {
    let n = h.dim();
    let mut rep = Report::new();
    let e = |i: usize| h.basis_vec(i);

    let assoc = exec.map(n, |i| {
        worst(
            h,
            i,
            (0..n).flat_map(|j| {
                let ij = h.mul(&e(i), &e(j));
                (0..n).map(move |k| {
                    let lhs = h.mul(&ij, &e(k));
                    let rhs = h.mul(&e(i), &h.mul(&e(j), &e(k)));
                    (max_dev(&lhs, &rhs), format!("({i},{j},{k})"))
                })
            }),
        )
    });
    rep.push(Check::from_samples("associativity", assoc, tol));

    let unital = exec.map(n, |i| {
        let d = max_dev(&h.mul(&h.unit, &e(i)), &e(i)).max(max_dev(&h.mul(&e(i), &h.unit), &e(i)));
        (d, h.basis.label(i))
    });
    rep.push(Check::from_samples("unitality", unital, tol));

    let coassoc = exec.map(n, |i| {
        let mut l = Tensor3::new();
        let mut r = Tensor3::new();
        for &(p, q, c) in &h.comult[i] {
            for &(p1, p2, c2) in &h.comult[p] {
                add(&mut l, (p1, p2, q), c * c2);
            }
            for &(q1, q2, c2) in &h.comult[q] {
                add(&mut r, (p, q1, q2), c * c2);
            }
        }
        (tensor_dev(&l, &r), h.basis.label(i))
    });
    rep.push(Check::from_samples("coassociativity", coassoc, tol));

    let counit = exec.map(n, |i| {
        let mut l = h.zero();
        let mut r = h.zero();
        for &(p, q, c) in &h.comult[i] {
            l[q] += c * h.counit[p];
            r[p] += c * h.counit[q];
        }
        (max_dev(&l, &e(i)).max(max_dev(&r, &e(i))), h.basis.label(i))
    });
    rep.push(Check::from_samples("counit_law", counit, tol));

    let mult1 = exec.map(n, |i| {
        worst(
            h,
            i,
            (0..n).map(|j| {
                let lhs = h.delta(&h.mul(&e(i), &e(j)));
                let mut rhs = crate::linalg::zeros(n, n);
                for &(p, q, c) in &h.comult[i] {
                    for &(p2, q2, c2) in &h.comult[j] {
                        let a = h.mul_basis(p, p2);
                        let b = h.mul_basis(q, q2);
                        for &(k, ka) in a {
                            for &(l, lb) in b {
                                rhs[(k, l)] += c * c2 * ka * lb;
                            }
                        }
                    }
                }
                (crate::linalg::max_abs(&(lhs - rhs)), format!("({i},{j})"))
            }),
        )
    });
    rep.push(Check::from_samples("delta_multiplicative", mult1, tol));

    rep.push(unit_coproduct(h, tol));

    // ε(e_i e_j) and ε((e_i e_j) e_k) via the pairing matrix.
    let pair: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| h.eps(&h.mul(&e(i), &e(j)))).collect())
        .collect();
    let triple =
        |f: usize, g: usize, k: usize| -> Scalar { h.mul_basis(f, g).iter().map(|&(m, c)| c * pair[m][k]).sum() };
    let standard = exec.map(n, |f| {
        worst(
            h,
            f,
            (0..n).flat_map(|g| {
                let triple = &triple;
                let pair = &pair;
                (0..n).map(move |k| {
                    let lhs = triple(f, g, k);
                    let mut r1 = ZERO;
                    let mut r2 = ZERO;
                    for &(g1, g2, c) in &h.comult[g] {
                        r1 += c * pair[f][g1] * pair[g2][k];
                        r2 += c * pair[f][g2] * pair[g1][k];
                    }
                    ((lhs - r1).norm().max((lhs - r2).norm()), format!("({f},{g},{k})"))
                })
            }),
        )
    });
    rep.push(Check::from_samples("weak_counit", standard, tol));
    let permuted = exec.map(n, |f| {
        worst(
            h,
            f,
            (0..n).flat_map(|g| {
                let triple = &triple;
                let pair = &pair;
                (0..n).map(move |k| {
                    let lhs = triple(g, k, f);
                    let r: Scalar = h.comult[g]
                        .iter()
                        .map(|&(g1, g2, c)| c * pair[f][g1] * pair[g2][k])
                        .sum();
                    ((lhs - r).norm(), format!("({f},{g},{k})"))
                })
            }),
        )
    });
    rep.push(Check::from_samples("weak_counit_permuted", permuted, tol).informational());

    let et: Vec<Element> = (0..n).map(|i| h.counital_target(&e(i))).collect();
    let es: Vec<Element> = (0..n).map(|i| h.counital_source(&e(i))).collect();
    let s_cols: Vec<Element> = (0..n).map(|j| h.antipode.column(j).iter().cloned().collect()).collect();

    let ax4 = exec.map(n, |i| {
        let mut v = h.zero();
        for &(p, q, c) in &h.comult[i] {
            for (k, x) in h.mul(&e(p), &s_cols[q]).into_iter().enumerate() {
                v[k] += c * x;
            }
        }
        (max_dev(&v, &et[i]), h.basis.label(i))
    });
    rep.push(Check::from_samples("antipode_target", ax4, tol));
    let ax5 = exec.map(n, |i| {
        let mut v = h.zero();
        for &(p, q, c) in &h.comult[i] {
            for (k, x) in h.mul(&s_cols[p], &e(q)).into_iter().enumerate() {
                v[k] += c * x;
            }
        }
        (max_dev(&v, &es[i]), h.basis.label(i))
    });
    rep.push(Check::from_samples("antipode_source", ax5, tol));
    let ax6 = exec.map(n, |i| {
        let mut v = h.zero();
        for &(p, q, c) in &h.comult[i] {
            for &(q1, q2, c2) in &h.comult[q] {
                let w = h.mul(&h.mul(&s_cols[p], &e(q1)), &s_cols[q2]);
                for (k, x) in w.into_iter().enumerate() {
                    v[k] += c * c2 * x;
                }
            }
        }
        (max_dev(&v, &s_cols[i]), h.basis.label(i))
    });
    rep.push(Check::from_samples("antipode_sandwich", ax6, tol));

    let idem = exec.map(n, |i| {
        let dt = max_dev(&h.counital_target(&et[i]), &et[i]);
        let ds = max_dev(&h.counital_source(&es[i]), &es[i]);
        (dt.max(ds), h.basis.label(i))
    });
    rep.push(Check::from_samples("counital_maps_idempotent", idem, tol));
    let commute = exec.map(n, |i| {
        worst(
            h,
            i,
            (0..n).map(|j| {
                (
                    max_dev(&h.mul(&et[i], &es[j]), &h.mul(&es[j], &et[i])),
                    format!("({i},{j})"),
                )
            }),
        )
    });
    rep.push(Check::from_samples("base_algebras_commute", commute, tol));
    rep
}

/// Δ²(1) = (Δ(1)⊗1)(1⊗Δ(1)) = (1⊗Δ(1))(Δ(1)⊗1).
fn unit_coproduct(h: &WeakHopfAlgebraData, tol: Tolerance) -> Check {
    let d1 = h.delta_one();
    let mut lhs = Tensor3::new();
    for &(p, q, c) in &d1 {
        for &(p1, p2, c2) in &h.comult[p] {
            add(&mut lhs, (p1, p2, q), c * c2);
        }
    }
    let mut a = Tensor3::new();
    let mut b = Tensor3::new();
    for &(p, q, c) in &d1 {
        for &(p2, q2, c2) in &d1 {
            for &(k, v) in h.mul_basis(q, p2) {
                add(&mut a, (p, k, q2), c * c2 * v);
            }
            for &(k, v) in h.mul_basis(p2, q) {
                add(&mut b, (p, k, q2), c * c2 * v);
            }
        }
    }
    let samples = vec![
        (tensor_dev(&lhs, &a), "left form".to_string()),
        (tensor_dev(&lhs, &b), "right form".to_string()),
    ];
    Check::from_samples("unit_coproduct", samples, tol)
}
