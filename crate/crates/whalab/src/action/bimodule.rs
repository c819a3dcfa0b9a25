use std::collections::HashMap;

use super::HActionOnPaths;
use crate::error::{check_index, Error, Result};
use crate::linalg::{self, zeros, Mat};
use crate::module_cat::{recoupling_tensor, weak_fiber_dims, ComposablePair, Vertex};
use crate::quiver::{Path, PathProduct};
use crate::report::{Check, Report};
use crate::scalar::{max_dev, Scalar, Tolerance, ONE, ZERO};

type Sparse = Vec<(usize, Scalar)>;

/// A ⊗_{H^t} V_x on basis (path p, vertex U) with s(p) = s(U).
#[derive(Debug, Clone)]
pub struct InducedBimodule<'a> {
    pub action: &'a HActionOnPaths,
    pub x: usize,
    pub vertices: Vec<Vertex>,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    scale: f64,
}

pub fn induce_bimodule(action: &HActionOnPaths, x: usize) -> Result<InducedBimodule<'_>> {
    check_index("corepresentation", x, action.ring.rank())?;
    let vertices = action.tensor.vertices[x].clone();
    let paths = &action.paths;
    let mut basis = Vec::new();
    for (p, path) in paths.paths().iter().enumerate() {
        for (u, v) in vertices.iter().enumerate() {
            if path.source == v.source {
                basis.push((p, u));
            }
        }
    }
    let base = basis.iter().filter(|(p, _)| paths.degree_of(*p) == 0).count();
    if base != vertices.len() {
        return Err(Error::Verification(format!(
            "H^t-balancing leaves {base} degree-zero vectors for {} vertices",
            vertices.len()
        )));
    }
    let index = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    Ok(InducedBimodule {
        action,
        x,
        vertices,
        basis,
        index,
        scale: action.ring.qdims[x].sqrt(),
    })
}

impl InducedBimodule<'_> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the degree-zero layer.
    pub fn base_dim(&self) -> usize {
        (0..self.dim()).filter(|&i| self.degree_of(i) == 0).count()
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.action.paths.degree_of(self.basis[i].0)
    }

    pub fn index_of(&self, path: usize, vertex: usize) -> Option<usize> {
        self.index.get(&(path, vertex)).copied()
    }

    /// a·(p⊗v); None when truncated.
    pub fn left_basis(&self, a: usize, m: usize) -> Option<Sparse> {
        let (p, u) = self.basis[m];
        match self.action.paths.multiply(a, p) {
            PathProduct::Zero => Some(Vec::new()),
            PathProduct::Path(k) => Some(vec![(self.index[&(k, u)], ONE)]),
            PathProduct::Truncated => None,
        }
    }

    /// (p⊗v_B)·a = d_x^{-1/2} Σ_U p·act(c_{B,U}, a) ⊗ v_U; None when truncated.
    pub fn right_basis(&self, m: usize, a: usize) -> Option<Sparse> {
        let (p, b) = self.basis[m];
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            let Some(h) = self.action.hopf_index(self.x, b, u) else {
                continue;
            };
            for &(r, c) in self.action.act_basis(h, a) {
                match self.action.paths.multiply(p, r) {
                    PathProduct::Zero => {}
                    PathProduct::Path(k) => out.push((self.index[&(k, u)], c / self.scale)),
                    PathProduct::Truncated => return None,
                }
            }
        }
        Some(out)
    }

    pub fn left(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        bilinear(self.dim(), a, m, |i, j| self.left_basis(i, j))
    }

    pub fn right(&self, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        bilinear(self.dim(), m, a, |i, j| self.right_basis(i, j))
    }
}

fn bilinear(n: usize, a: &[Scalar], b: &[Scalar], f: impl Fn(usize, usize) -> Option<Sparse>) -> Vec<Scalar> {
    let mut out = vec![ZERO; n];
    for (i, ai) in a.iter().enumerate().filter(|(_, v)| **v != ZERO) {
        for (j, bj) in b.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            for (k, c) in f(i, j).unwrap_or_default() {
                out[k] += ai * bj * c;
            }
        }
    }
    out
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

/// Associativity, unitality and commutation of the two actions within the truncation.
pub fn verify_bimodule(bim: &InducedBimodule<'_>, tol: Tolerance) -> Report {
    let paths = &bim.action.paths;
    let (n, np, top) = (bim.dim(), paths.dim(), paths.max_degree);
    let (mut left, mut right, mut commute, mut unital) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let one = paths.unit();
    for m in 0..n {
        let mv = unit_vec(n, m);
        let tag = |a: usize, b: usize| format!("m={m} a={a} b={b}");
        unital.push((
            max_dev(&bim.left(&one, &mv), &mv).max(max_dev(&bim.right(&mv, &one), &mv)),
            format!("m={m}"),
        ));
        for a in 0..np {
            for b in 0..np {
                if bim.degree_of(m) + paths.degree_of(a) + paths.degree_of(b) > top {
                    continue;
                }
                let (av, bv) = (unit_vec(np, a), unit_vec(np, b));
                let ab = paths.mul(&av, &bv).0;
                left.push((
                    max_dev(&bim.left(&av, &bim.left(&bv, &mv)), &bim.left(&ab, &mv)),
                    tag(a, b),
                ));
                right.push((
                    max_dev(&bim.right(&bim.right(&mv, &av), &bv), &bim.right(&mv, &ab)),
                    tag(a, b),
                ));
                commute.push((
                    max_dev(
                        &bim.right(&bim.left(&av, &mv), &bv),
                        &bim.left(&av, &bim.right(&mv, &bv)),
                    ),
                    tag(a, b),
                ));
            }
        }
    }
    let mut rep = Report::new();
    rep.push(Check::from_samples("bimodule_left_associative", left, tol));
    rep.push(Check::from_samples("bimodule_right_associative", right, tol));
    rep.push(Check::from_samples("bimodule_unital", unital, tol));
    rep.push(Check::from_samples("bimodule_actions_commute", commute, tol));
    if bim.x == bim.action.ring.unit {
        rep.push(trivial_is_regular(bim, tol));
    }
    rep
}

/// For the unit corepresentation (p, U) ↦ p identifies both actions with multiplication.
fn trivial_is_regular(bim: &InducedBimodule<'_>, tol: Tolerance) -> Check {
    let paths = &bim.action.paths;
    let np = paths.dim();
    let mut samples = Vec::new();
    if bim.dim() != np {
        samples.push((f64::INFINITY, format!("dimension {} vs {np}", bim.dim())));
    }
    let flatten = |v: &[Scalar]| {
        let mut out = vec![ZERO; np];
        for (i, c) in v.iter().enumerate() {
            out[bim.basis[i].0] += c;
        }
        out
    };
    for m in 0..bim.dim() {
        let p = bim.basis[m].0;
        let mv = unit_vec(bim.dim(), m);
        for a in 0..np {
            if paths.degree_of(p) + paths.degree_of(a) > paths.max_degree {
                continue;
            }
            let av = unit_vec(np, a);
            let pv = unit_vec(np, p);
            let d = max_dev(&flatten(&bim.right(&mv, &av)), &paths.mul(&pv, &av).0)
                .max(max_dev(&flatten(&bim.left(&av, &mv)), &paths.mul(&av, &pv).0));
            samples.push((d, format!("p={p} a={a}")));
        }
    }
    Check::from_samples("trivial_corep_is_regular", samples, tol)
}

/// J_{X,Y}: F(X) ⊗_A F(Y) → ⊕_z N_{XY}^z F(z), matrix columns indexed by `domain`.
#[derive(Debug, Clone)]
pub struct MonoidalMap {
    pub x: usize,
    pub y: usize,
    /// (path, X-vertex, Y-vertex) with s(path) = s(X-vertex) and t(X-vertex) = s(Y-vertex).
    pub domain: Vec<(usize, usize, usize)>,
    /// (z, α, basis index in F(z)).
    pub codomain: Vec<(usize, u32, usize)>,
    pub matrix: Mat,
    pub domain_base_dim: usize,
    pub codomain_base_dim: usize,
}

pub fn verify_monoidal_structure(
    action: &HActionOnPaths,
    x: usize,
    y: usize,
    tol: Tolerance,
) -> Result<(MonoidalMap, Report)> {
    let ring = &action.ring;
    let paths = &action.paths;
    let (fx, fy) = (induce_bimodule(action, x)?, induce_bimodule(action, y)?);
    let fused: Vec<(usize, u32)> = ring.fuse(x, y)?;
    let mut fz = HashMap::new();
    for &(z, _) in &fused {
        fz.insert(z, induce_bimodule(action, z)?);
    }

    let mut domain = Vec::new();
    for &(p, bi) in &fx.basis {
        let b = fx.vertices[bi];
        for (bj, b2) in fy.vertices.iter().enumerate() {
            if b2.source == b.target {
                domain.push((p, bi, bj));
            }
        }
    }
    let dom_index: HashMap<(usize, usize, usize), usize> = domain.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut codomain = Vec::new();
    for &(z, mult) in &fused {
        for alpha in 0..mult {
            for k in 0..fz[&z].dim() {
                codomain.push((z, alpha, k));
            }
        }
    }
    let cod_index: HashMap<(usize, u32, usize), usize> = codomain.iter().enumerate().map(|(i, k)| (*k, i)).collect();

    let rt = recoupling_tensor(ring, &action.module, x, y)?;
    let mut matrix = zeros(codomain.len(), domain.len());
    for (j, &(p, bi, bj)) in domain.iter().enumerate() {
        let (b, b2) = (fx.vertices[bi], fy.vertices[bj]);
        let blk = rt
            .block(b.source, b2.target)
            .ok_or_else(|| Error::Incomplete(format!("no recoupling block ({}, {})", b.source, b2.target)))?;
        let pair = blk
            .pair(&ComposablePair {
                middle: b2.source,
                e1: b.label,
                e2: b2.label,
            })
            .ok_or_else(|| Error::Incomplete("composable pair missing from recoupling block".into()))?;
        for (fi, fv) in blk.fused.iter().enumerate() {
            let c = blk.gamma_inv[(fi, pair)];
            if c == ZERO {
                continue;
            }
            let target = &fz[&fv.x];
            let u = Vertex {
                source: b.source,
                target: b2.target,
                label: fv.h,
            };
            let ui = target
                .vertices
                .binary_search(&u)
                .map_err(|_| Error::Incomplete("fused vertex missing".into()))?;
            let m = target
                .index_of(p, ui)
                .ok_or_else(|| Error::Incomplete("fused basis vector missing".into()))?;
            matrix[(cod_index[&(fv.x, fv.alpha, m)], j)] += c;
        }
    }

    let domain_base_dim = domain.iter().filter(|d| paths.degree_of(d.0) == 0).count();
    let codomain_base_dim = codomain.iter().filter(|c| fz[&c.0].degree_of(c.2) == 0).count();
    let jmap = MonoidalMap {
        x,
        y,
        domain,
        codomain,
        matrix,
        domain_base_dim,
        codomain_base_dim,
    };

    let apply = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![ZERO; jmap.codomain.len()];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| **c != ZERO) {
            for i in 0..jmap.codomain.len() {
                out[i] += jmap.matrix[(i, j)] * c;
            }
        }
        out
    };
    // Right action on the balanced product: through F(Y) first, then F(X).
    let dom_right = |j: usize, a: usize| -> Option<Vec<Scalar>> {
        let (p, bi, bj) = jmap.domain[j];
        let start = fy.vertices[bj].source;
        let e = paths.index_of(&Path {
            source: start,
            target: start,
            edges: Vec::new(),
        })?;
        let mut out = vec![ZERO; jmap.domain.len()];
        for (r_idx, c) in fy.right_basis(fy.index_of(e, bj)?, a)? {
            let (r, uj) = fy.basis[r_idx];
            for (k_idx, c2) in fx.right_basis(fx.index_of(p, bi)?, r)? {
                let (k, wi) = fx.basis[k_idx];
                out[*dom_index.get(&(k, wi, uj))?] += c * c2;
            }
        }
        Some(out)
    };
    let cod_right = |v: &[Scalar], a: usize| -> Vec<Scalar> {
        let mut out = vec![ZERO; jmap.codomain.len()];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| **c != ZERO) {
            let (z, alpha, m) = jmap.codomain[i];
            for (k, c2) in fz[&z].right_basis(m, a).unwrap_or_default() {
                out[cod_index[&(z, alpha, k)]] += c * c2;
            }
        }
        out
    };
    let cod_left = |a: usize, v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![ZERO; jmap.codomain.len()];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| **c != ZERO) {
            let (z, alpha, m) = jmap.codomain[i];
            for (k, c2) in fz[&z].left_basis(a, m).unwrap_or_default() {
                out[cod_index[&(z, alpha, k)]] += c * c2;
            }
        }
        out
    };

    let nd = jmap.domain.len();
    let (mut right, mut left) = (Vec::new(), Vec::new());
    for j in 0..nd {
        let (p, bi, bj) = jmap.domain[j];
        let jm = apply(&unit_vec(nd, j));
        for a in 0..paths.dim() {
            if paths.degree_of(p) + paths.degree_of(a) > paths.max_degree {
                continue;
            }
            let tag = format!("m={j} a={a}");
            match dom_right(j, a) {
                Some(ma) => right.push((max_dev(&apply(&ma), &cod_right(&jm, a)), tag.clone())),
                None => right.push((f64::INFINITY, format!("{tag}: balanced product left the basis"))),
            }
            let mut am = vec![ZERO; nd];
            if let PathProduct::Path(k) = paths.multiply(a, p) {
                am[dom_index[&(k, bi, bj)]] = ONE;
            }
            left.push((max_dev(&apply(&am), &cod_left(a, &jm)), tag));
        }
    }

    let mut rep = Report::new();
    let square = jmap.codomain.len() == nd && linalg::rank(&jmap.matrix, tol.eps()) == nd;
    rep.push(Check::exact(
        "monoidal_map_invertible",
        1,
        if square {
            Vec::new()
        } else {
            vec![format!("{} -> {}", nd, jmap.codomain.len())]
        },
    ));
    rep.push(Check::from_samples("monoidal_map_right_linear", right, tol));
    rep.push(Check::from_samples("monoidal_map_left_linear", left, tol));
    let fiber = weak_fiber_dims(ring, &action.module);
    let expected: usize = fused.iter().map(|&(z, mult)| mult as usize * fiber[z]).sum();
    let mut bad = Vec::new();
    if jmap.domain_base_dim != expected || jmap.codomain_base_dim != expected {
        bad.push(format!(
            "base dims {} -> {}, expected {expected}",
            jmap.domain_base_dim, jmap.codomain_base_dim
        ));
    }
    rep.push(Check::exact("monoidal_base_dims", 1, bad));
    Ok((jmap, rep))
}
