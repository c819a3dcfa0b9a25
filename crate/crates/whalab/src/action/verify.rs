use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::HActionOnPaths;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, zeros};
use crate::quiver::{Path, PathProduct};
use crate::report::{Check, Report};
use crate::scalar::{max_dev, Scalar, Tolerance, ONE, ZERO};
use crate::wha::{Element, WeakHopfAlgebraData};

/// Pairs above this degree sum are sampled rather than enumerated.
const EXHAUSTIVE_DEGREE: usize = 3;
/// Seed for sampling pairs above the exhaustive degree.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
const SAMPLES: usize = 256;

/// A finite algebra with a tabulated left action of a weak Hopf algebra.
pub trait ModuleAlgebra: Sync {
    fn hopf(&self) -> &WeakHopfAlgebraData;
    fn dim(&self) -> usize;
    fn unit(&self) -> Vec<Scalar>;
    /// None when the product falls outside a truncation.
    fn mul_basis(&self, p: usize, q: usize) -> Option<Vec<(usize, Scalar)>>;
    fn act_basis(&self, h: usize, p: usize) -> Vec<(usize, Scalar)>;
    fn degree(&self, _p: usize) -> usize {
        0
    }
    fn label(&self, p: usize) -> String {
        format!("{p}")
    }

    fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![ZERO; self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| **v != ZERO) {
                for (k, c) in self.mul_basis(i, j).unwrap_or_default() {
                    out[k] += ai * bj * c;
                }
            }
        }
        out
    }

    fn act(&self, h: &[Scalar], p: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![ZERO; self.dim()];
        for (i, hi) in h.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            for (j, pj) in p.iter().enumerate().filter(|(_, v)| **v != ZERO) {
                for (k, c) in self.act_basis(i, j) {
                    out[k] += hi * pj * c;
                }
            }
        }
        out
    }
}

fn dense(n: usize, sparse: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![ZERO; n];
    for &(k, c) in sparse {
        v[k] += c;
    }
    v
}

impl ModuleAlgebra for HActionOnPaths {
    fn hopf(&self) -> &WeakHopfAlgebraData {
        &self.h
    }

    fn dim(&self) -> usize {
        self.paths.dim()
    }

    fn unit(&self) -> Vec<Scalar> {
        self.paths.unit()
    }

    fn mul_basis(&self, p: usize, q: usize) -> Option<Vec<(usize, Scalar)>> {
        match self.paths.multiply(p, q) {
            PathProduct::Zero => Some(Vec::new()),
            PathProduct::Path(k) => Some(vec![(k, ONE)]),
            PathProduct::Truncated => None,
        }
    }

    fn act_basis(&self, h: usize, p: usize) -> Vec<(usize, Scalar)> {
        HActionOnPaths::act_basis(self, h, p).to_vec()
    }

    fn degree(&self, p: usize) -> usize {
        self.paths.degree_of(p)
    }

    fn label(&self, p: usize) -> String {
        let path = self.paths.path(p);
        format!("{}->{}{:?}", path.source, path.target, path.edges)
    }
}

/// H acting on its target base algebra by h▷z = ε_t(hz), in the primitive idempotent basis.
#[derive(Debug, Clone)]
pub struct TargetAction {
    pub h: WeakHopfAlgebraData,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl TargetAction {
    pub fn new(h: WeakHopfAlgebraData) -> Result<Self> {
        let z = &h.target_idempotents;
        if z.is_empty() {
            return Err(Error::Precondition("no target idempotents".into()));
        }
        let (n, r) = (h.dim(), z.len());
        let mut zm = zeros(n, r);
        for (j, zj) in z.iter().enumerate() {
            for (i, v) in zj.iter().enumerate() {
                zm[(i, j)] = *v;
            }
        }
        let mut table = Vec::with_capacity(n * r);
        for i in 0..n {
            for zj in z {
                let img = h.counital_target(&h.mul(&h.basis_vec(i), zj));
                let rhs = linalg::Mat::from_column_slice(n, 1, &img);
                let (coords, _) = linalg::lstsq(&zm, &rhs)?;
                table.push(
                    coords
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.norm() > 1e-12)
                        .map(|(k, c)| (k, *c))
                        .collect(),
                );
            }
        }
        Ok(TargetAction { h, table })
    }
}

impl ModuleAlgebra for TargetAction {
    fn hopf(&self) -> &WeakHopfAlgebraData {
        &self.h
    }

    fn dim(&self) -> usize {
        self.h.target_idempotents.len()
    }

    fn unit(&self) -> Vec<Scalar> {
        vec![ONE; self.dim()]
    }

    fn mul_basis(&self, p: usize, q: usize) -> Option<Vec<(usize, Scalar)>> {
        Some(if p == q { vec![(p, ONE)] } else { Vec::new() })
    }

    fn act_basis(&self, h: usize, p: usize) -> Vec<(usize, Scalar)> {
        self.table[h * self.dim() + p].clone()
    }
}

pub fn verify_module_algebra<A: ModuleAlgebra>(alg: &A, tol: Tolerance, sample_degree: usize) -> Report {
    verify_module_algebra_with(alg, tol, sample_degree, DEFAULT_SEED, Exec::default())
}

/// (hk)(p) = h(k(p)), h(pq) = h₍₁₎(p)h₍₂₎(q) and h(1) = ε_t(h)(1).
pub fn verify_module_algebra_with<A: ModuleAlgebra>(
    alg: &A,
    tol: Tolerance,
    sample_degree: usize,
    seed: u64,
    exec: Exec,
) -> Report {
    let h = alg.hopf();
    let (nh, np) = (h.dim(), alg.dim());
    let mut rep = Report::new();
    let low: Vec<usize> = (0..np).filter(|&p| alg.degree(p) <= sample_degree).collect();
    let acts: Vec<Vec<Vec<Scalar>>> = (0..nh)
        .map(|i| (0..np).map(|p| dense(np, &alg.act_basis(i, p))).collect())
        .collect();

    let module = exec.map(nh, |i| {
        let mut worst = (0.0, String::new());
        for k in 0..nh {
            let hk = h.mul(&h.basis_vec(i), &h.basis_vec(k));
            for &p in &low {
                let lhs = alg.act(&hk, &unit_vec(np, p));
                let rhs = alg.act(&h.basis_vec(i), &acts[k][p]);
                let d = max_dev(&lhs, &rhs);
                if d >= worst.0 {
                    worst = (d, format!("h={i} k={k} p={}", alg.label(p)));
                }
            }
        }
        worst
    });
    rep.push(Check::from_samples("module_axiom", module, tol));

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut sampled: Vec<(usize, usize)> = Vec::new();
    for p in 0..np {
        for q in 0..np {
            let d = alg.degree(p) + alg.degree(q);
            if d > sample_degree || alg.mul_basis(p, q).is_none() {
                continue;
            }
            if d <= EXHAUSTIVE_DEGREE {
                pairs.push((p, q));
            } else {
                sampled.push((p, q));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampled.shuffle(&mut rng);
    sampled.truncate(SAMPLES);
    pairs.extend(sampled);

    let coprod = exec.map(nh, |i| {
        let mut worst = (0.0, String::new());
        for &(p, q) in &pairs {
            let pq = dense(np, &alg.mul_basis(p, q).unwrap_or_default());
            let lhs = alg.act(&h.basis_vec(i), &pq);
            let mut rhs = vec![ZERO; np];
            for &(a, c, co) in &h.comult[i] {
                for (k, v) in alg.mul(&acts[a][p], &acts[c][q]).into_iter().enumerate() {
                    rhs[k] += co * v;
                }
            }
            let d = max_dev(&lhs, &rhs);
            if d >= worst.0 {
                worst = (d, format!("h={i} p={} q={}", alg.label(p), alg.label(q)));
            }
        }
        worst
    });
    rep.push(Check::from_samples("module_algebra", coprod, tol));

    let one = alg.unit();
    let target = exec.map(nh, |i| {
        let e = h.basis_vec(i);
        let d = max_dev(&alg.act(&e, &one), &alg.act(&h.counital_target(&e), &one));
        (d, format!("h={i}"))
    });
    rep.push(Check::from_samples("target_unit", target, tol));
    rep
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

/// act(1_H,·) = id, and both legs of Δ(1) act trivially against 1_A.
pub fn verify_unit_leg_triviality<A: ModuleAlgebra>(alg: &A, tol: Tolerance) -> Report {
    let h = alg.hopf();
    let np = alg.dim();
    let one = alg.unit();
    let d1 = h.delta_one();
    let mut rep = Report::new();
    let ident: Vec<_> = (0..np)
        .map(|p| {
            let e = unit_vec(np, p);
            (max_dev(&alg.act(&h.unit, &e), &e), alg.label(p))
        })
        .collect();
    rep.push(Check::from_samples("unit_acts_identity", ident, tol));
    let legs: Vec<_> = (0..np)
        .map(|p| {
            let e = unit_vec(np, p);
            let mut l = vec![ZERO; np];
            let mut r = vec![ZERO; np];
            for &(a, c, co) in &d1 {
                let (ha, hc) = (h.basis_vec(a), h.basis_vec(c));
                for (k, v) in alg.mul(&alg.act(&ha, &one), &alg.act(&hc, &e)).into_iter().enumerate() {
                    l[k] += co * v;
                }
                for (k, v) in alg.mul(&alg.act(&ha, &e), &alg.act(&hc, &one)).into_iter().enumerate() {
                    r[k] += co * v;
                }
            }
            (max_dev(&l, &e).max(max_dev(&r, &e)), alg.label(p))
        })
        .collect();
    rep.push(Check::from_samples("unit_legs_trivial", legs, tol));
    rep
}

/// Every table entry stays in the degree of its input path.
pub fn verify_grading(action: &HActionOnPaths) -> Check {
    let mut failures = Vec::new();
    let np = action.paths.dim();
    for i in 0..action.hopf_dim() {
        for p in 0..np {
            let d = action.paths.degree_of(p);
            if action
                .act_basis(i, p)
                .iter()
                .any(|&(k, _)| action.paths.degree_of(k) != d)
            {
                failures.push(format!("h={i} p={p}"));
            }
        }
    }
    Check::exact("grading", action.hopf_dim() * np, failures)
}

/// The degree-zero part as an H-module algebra, and the image of H^t in it.
pub fn degree_zero_suite(action: &HActionOnPaths, tol: Tolerance) -> Report {
    let mut rep = Report::new();
    for mut c in verify_module_algebra(action, tol, 0).checks {
        c.name = format!("degree0_{}", c.name);
        rep.push(c);
    }
    let np = action.paths.dim();
    let one = action.paths.unit();
    let imgs: Vec<Element> = action
        .h
        .target_idempotents
        .iter()
        .map(|z| action.act(z, &one))
        .collect();
    let mut samples = Vec::new();
    let mut sum = vec![ZERO; np];
    for (i, a) in imgs.iter().enumerate() {
        for (k, v) in a.iter().enumerate() {
            sum[k] += v;
        }
        if action.paths.degree_range(0).end < np && a[action.paths.degree_range(0).end..].iter().any(|v| *v != ZERO) {
            samples.push((f64::INFINITY, format!("image {i} leaves degree 0")));
        }
        for (j, b) in imgs.iter().enumerate() {
            let (ab, _) = action.paths.mul(a, b);
            let expect = if i == j { a.clone() } else { vec![ZERO; np] };
            samples.push((max_dev(&ab, &expect), format!("({i},{j})")));
        }
    }
    samples.push((max_dev(&sum, &one), "sum".into()));
    rep.push(Check::from_samples("base_image_idempotents", samples, tol));
    rep
}

/// Degree-two paths: braided table against the Δ-extension of the degree-one table.
pub fn verify_degree_two_cross_check(action: &HActionOnPaths, tol: Tolerance) -> Check {
    let paths = &action.paths;
    if paths.max_degree < 2 {
        return Check::exact("degree2_cross_check", 0, Vec::new());
    }
    let np = paths.dim();
    let h = &action.h;
    let single = |src: usize, e: usize| {
        let edge = paths.quiver.edges[e];
        paths
            .index_of(&Path {
                source: src,
                target: edge.target,
                edges: vec![e],
            })
            .expect("degree-one path")
    };
    let mut samples = Vec::new();
    for p in paths.degree_range(2) {
        let path = paths.path(p);
        let lower = single(path.source, path.edges[0]);
        let upper = single(paths.quiver.edges[path.edges[0]].target, path.edges[1]);
        for i in 0..h.dim() {
            let lhs = dense(np, action.act_basis(i, p));
            let mut rhs = vec![ZERO; np];
            for &(a, c, co) in &h.comult[i] {
                let (u, l) = (
                    dense(np, action.act_basis(a, upper)),
                    dense(np, action.act_basis(c, lower)),
                );
                for (k, v) in paths.mul(&u, &l).0.into_iter().enumerate() {
                    rhs[k] += co * v;
                }
            }
            samples.push((max_dev(&lhs, &rhs), format!("h={i} p={p}")));
        }
    }
    Check::from_samples("degree2_cross_check", samples, tol)
}

/// Every action check, for reports and the CLI.
pub fn verify_action(action: &HActionOnPaths, tol: Tolerance, sample_degree: usize, seed: u64, exec: Exec) -> Report {
    let mut rep = Report::new();
    rep.push(action.tensor.verify_invertible(&action.paths.quiver, tol));
    rep.push(verify_grading(action));
    rep.extend(verify_module_algebra_with(action, tol, sample_degree, seed, exec));
    rep.extend(verify_unit_leg_triviality(action, tol));
    rep.extend(degree_zero_suite(action, tol));
    rep.push(verify_degree_two_cross_check(action, tol));
    rep
}
