use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::target::{source_subalgebra, target_subalgebra};
use super::{sparsify, verify_wha_axioms, BasisLabels, Element, WeakHopfAlgebraData};
use crate::error::{Error, Result};
use crate::fusion::fsymbol::FSymbolTable;
use crate::fusion::pentagon::verify_pentagon;
use crate::fusion::ring::FusionRingData;
use crate::linalg::{self, zeros, Mat};
use crate::module_cat::{
    recoupling_tensor, verify_module_pentagon, ComposablePair, ModuleCategoryData, RecouplingTensor, Vertex,
};
use crate::scalar::{real, Scalar, Tolerance, ONE, ZERO};

/// Basis vector with bottom vertex e ∈ M(a, x▷c) and top vertex f ∈ M(x▷b, d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PictureBasisElement {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub x: usize,
    pub e: u32,
    pub f: u32,
}

impl PictureBasisElement {
    pub fn from_vertices(x: usize, bottom: Vertex, top: Vertex) -> Self {
        PictureBasisElement {
            a: bottom.source,
            b: top.target,
            c: bottom.target,
            d: top.source,
            x,
            e: bottom.label,
            f: top.label,
        }
    }

    pub fn bottom(&self) -> Vertex {
        Vertex {
            source: self.a,
            target: self.c,
            label: self.e,
        }
    }

    pub fn top(&self) -> Vertex {
        Vertex {
            source: self.d,
            target: self.b,
            label: self.f,
        }
    }

    fn sort_key(&self) -> (usize, usize, usize, u32, usize, usize, u32) {
        (self.x, self.a, self.c, self.e, self.b, self.d, self.f)
    }
}

pub fn enumerate_picture_basis(ring: &FusionRingData, m: &ModuleCategoryData) -> Vec<PictureBasisElement> {
    let mut out = Vec::new();
    for x in 0..ring.rank() {
        let v = m.vertex_basis(x);
        for bottom in &v {
            for top in &v {
                out.push(PictureBasisElement::from_vertices(x, *bottom, *top));
            }
        }
    }
    out.sort_by_key(|p| p.sort_key());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep the 1/√d_x factor in Δ. Turning it off exists only to exercise the verifier.
    pub normalized_delta: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { normalized_delta: true }
    }
}

/// Checks both pentagons, assembles H and runs the axiom suite.
pub fn build_wha(
    ring: &FusionRingData,
    f: &FSymbolTable,
    m: &ModuleCategoryData,
    tol: Tolerance,
) -> Result<WeakHopfAlgebraData> {
    let p = verify_pentagon(ring, f, tol)?;
    if !p.pass {
        return Err(Error::Precondition(format!(
            "pentagon fails (max deviation {:.3e})",
            p.max_deviation
        )));
    }
    let mp = verify_module_pentagon(ring, f, m, tol)?;
    if !mp.pass {
        return Err(Error::Precondition(format!(
            "module pentagon fails (max deviation {:.3e})",
            mp.max_deviation
        )));
    }
    let h = assemble_wha(ring, m, BuildOptions::default())?;
    let report = verify_wha_axioms(&h, tol);
    if !report.passed() {
        return Err(Error::Verification(format!("axioms fail: {:?}", report.failing())));
    }
    Ok(h)
}

struct Layout {
    basis: Vec<PictureBasisElement>,
    index: HashMap<(usize, Vertex, Vertex), usize>,
    scale: Vec<f64>,
}

impl Layout {
    fn at(&self, x: usize, bottom: Vertex, top: Vertex) -> usize {
        self.index[&(x, bottom, top)]
    }
}

/// Structure tensors without pentagon preconditions or the final axiom check.
pub fn assemble_wha(ring: &FusionRingData, m: &ModuleCategoryData, opts: BuildOptions) -> Result<WeakHopfAlgebraData> {
    let basis = enumerate_picture_basis(ring, m);
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.x, p.bottom(), p.top()), i))
        .collect();
    let scale = ring.qdims.iter().map(|d| d.sqrt()).collect();
    let lay = Layout { basis, index, scale };
    let n = lay.basis.len();
    if n == 0 {
        return Err(Error::Domain("empty picture basis".into()));
    }
    let mut notes = Vec::new();

    let r = ring.rank();
    let mut tensors = Vec::with_capacity(r * r);
    for y in 0..r {
        for x in 0..r {
            tensors.push(recoupling_tensor(ring, m, y, x)?);
        }
    }
    let mult = (0..n * n)
        .map(|ij| {
            sparsify(&product(
                &lay,
                &tensors[lay.basis[ij / n].x * r + lay.basis[ij % n].x],
                ij / n,
                ij % n,
            ))
        })
        .collect();

    let comult = lay
        .basis
        .iter()
        .map(|p| {
            let s = if opts.normalized_delta {
                1.0 / lay.scale[p.x]
            } else {
                1.0
            };
            m.vertex_basis(p.x)
                .into_iter()
                .map(|k| {
                    let left = lay.at(p.x, k, p.top());
                    let right = lay.at(p.x, p.bottom(), k);
                    (left, right, real(s))
                })
                .collect()
        })
        .collect();

    let mut h = WeakHopfAlgebraData {
        basis: BasisLabels::Picture(lay.basis.clone()),
        mult,
        unit: vec![ZERO; n],
        comult,
        counit: vec![ZERO; n],
        antipode: zeros(n, n),
        target_idempotents: Vec::new(),
        source_idempotents: Vec::new(),
        notes: Vec::new(),
    };
    let (unit, res) = solve_unit(&h)?;
    if res > 1e-8 {
        notes.push(format!("unit solve residual {res:.3e}"));
    }
    h.unit = unit;
    let (counit, res) = solve_counit(&h)?;
    if res > 1e-8 {
        notes.push(format!("counit solve residual {res:.3e}"));
    }
    h.counit = counit;
    let blocks: Vec<usize> = lay.basis.iter().map(|p| p.x).collect();
    // S carries block x to block dual(x) and preserves the endpoint multiset {a, b, c, d}.
    let ends = |p: &PictureBasisElement| {
        let mut e = [p.a, p.b, p.c, p.d];
        e.sort_unstable();
        e
    };
    let allowed = |q: usize| -> Vec<usize> {
        let pq = &lay.basis[q];
        (0..n)
            .filter(|&a| lay.basis[a].x == ring.dual[pq.x] && ends(&lay.basis[a]) == ends(pq))
            .collect()
    };
    let (s, res) = solve_antipode(&h, &blocks, allowed)?;
    if res > 1e-8 {
        notes.push(format!("antipode solve residual {res:.3e}"));
    }
    h.antipode = s;
    h.target_idempotents = target_subalgebra(&h)?.idempotents;
    h.source_idempotents = source_subalgebra(&h)?.idempotents;
    h.notes = notes;
    Ok(h)
}

/// e_i·e_j for lower factor i (in block y) and upper factor j (in block x).
fn product(lay: &Layout, rt: &RecouplingTensor, i: usize, j: usize) -> Vec<Scalar> {
    let n = lay.basis.len();
    let mut out = vec![ZERO; n];
    let (lo, up) = (&lay.basis[i], &lay.basis[j]);
    let (lb, lt, ub, ut) = (lo.bottom(), lo.top(), up.bottom(), up.top());
    if ub.source != lb.target || ut.source != lt.target {
        return out;
    }
    let (Some(bb), Some(tb)) = (rt.block(lb.source, ub.target), rt.block(lt.source, ut.target)) else {
        return out;
    };
    let pb = bb
        .pair(&ComposablePair {
            middle: ub.source,
            e1: lb.label,
            e2: ub.label,
        })
        .expect("composable pair present");
    let pt = tb
        .pair(&ComposablePair {
            middle: ut.source,
            e1: lt.label,
            e2: ut.label,
        })
        .expect("composable pair present");
    for (fi, fv) in bb.fused.iter().enumerate() {
        let g = bb.gamma[(pb, fi)];
        if g == ZERO {
            continue;
        }
        let z = fv.x;
        let k = Vertex {
            source: lb.source,
            target: ub.target,
            label: fv.h,
        };
        for (ti, tv) in tb.fused.iter().enumerate() {
            if tv.x != z || tv.alpha != fv.alpha {
                continue;
            }
            let gi = tb.gamma_inv[(ti, pt)];
            if gi == ZERO {
                continue;
            }
            let top = Vertex {
                source: lt.source,
                target: ut.target,
                label: tv.h,
            };
            let s = lay.scale[lo.x] * lay.scale[up.x] / lay.scale[z];
            out[lay.at(z, k, top)] += gi * g * s;
        }
    }
    out
}

fn solve_unit(h: &WeakHopfAlgebraData) -> Result<(Element, f64)> {
    let n = h.dim();
    let mut a = zeros(2 * n * n, n);
    let mut b = zeros(2 * n * n, 1);
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in h.mul_basis(i, j) {
                a[(j * n + k, i)] += c;
            }
            for &(k, c) in h.mul_basis(j, i) {
                a[(n * n + j * n + k, i)] += c;
            }
        }
    }
    for j in 0..n {
        b[(j * n + j, 0)] = ONE;
        b[(n * n + j * n + j, 0)] = ONE;
    }
    let (x, res) = linalg::lstsq(&a, &b)?;
    Ok((x.column(0).iter().cloned().collect(), res))
}

fn solve_counit(h: &WeakHopfAlgebraData) -> Result<(Element, f64)> {
    let n = h.dim();
    let mut a = zeros(2 * n * n, n);
    let mut b = zeros(2 * n * n, 1);
    for j in 0..n {
        for &(p, q, c) in &h.comult[j] {
            a[(j * n + q, p)] += c;
            a[(n * n + j * n + p, q)] += c;
        }
        b[(j * n + j, 0)] = ONE;
        b[(n * n + j * n + j, 0)] = ONE;
    }
    let (x, res) = linalg::lstsq(&a, &b)?;
    Ok((x.column(0).iter().cloned().collect(), res))
}

/// Least-squares solution of m(id⊗S)Δ = ε_t and m(S⊗id)Δ = ε_s, with S(e_q) restricted to the
/// span of `allowed(q)`, followed by the projection S ↦ S(h₁)h₂S(h₃) that selects the antipode.
/// Basis elements sharing a `blocks` label are solved together.
pub(crate) fn solve_antipode(
    h: &WeakHopfAlgebraData,
    blocks: &[usize],
    allowed: impl Fn(usize) -> Vec<usize>,
) -> Result<(Mat, f64)> {
    let n = h.dim();
    let et: Vec<Element> = (0..n).map(|i| h.counital_target(&h.basis_vec(i))).collect();
    let es: Vec<Element> = (0..n).map(|i| h.counital_source(&h.basis_vec(i))).collect();
    let mut s0 = zeros(n, n);
    let mut worst: f64 = 0.0;
    let mut labels: Vec<usize> = blocks.to_vec();
    labels.sort_unstable();
    labels.dedup();
    for &x in &labels {
        let dom: Vec<usize> = (0..n).filter(|&i| blocks[i] == x).collect();
        let mut col_of: HashMap<(usize, usize), usize> = HashMap::new();
        for &q in &dom {
            for a in allowed(q) {
                let next = col_of.len();
                col_of.entry((a, q)).or_insert(next);
            }
        }
        let mut cands: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (&(a, q), &col) in &col_of {
            cands.entry(q).or_default().push((a, col));
        }
        let rows = 2 * dom.len() * n;
        let mut mat = zeros(rows, col_of.len());
        let mut rhs = zeros(rows, 1);
        for (hi, &hh) in dom.iter().enumerate() {
            let r4 = hi * n;
            let r5 = (dom.len() + hi) * n;
            for &(p, q, c) in &h.comult[hh] {
                // p·S(q)
                for &(a, col) in cands.get(&q).map(Vec::as_slice).unwrap_or(&[]) {
                    for &(k, v) in h.mul_basis(p, a) {
                        mat[(r4 + k, col)] += c * v;
                    }
                }
                // S(p)·q
                for &(a, col) in cands.get(&p).map(Vec::as_slice).unwrap_or(&[]) {
                    for &(k, v) in h.mul_basis(a, q) {
                        mat[(r5 + k, col)] += c * v;
                    }
                }
            }
            for k in 0..n {
                rhs[(r4 + k, 0)] = et[hh][k];
                rhs[(r5 + k, 0)] = es[hh][k];
            }
        }
        let live: Vec<usize> = (0..rows)
            .filter(|&r| rhs[(r, 0)] != ZERO || mat.row(r).iter().any(|v| *v != ZERO))
            .collect();
        let mat = Mat::from_fn(live.len(), col_of.len(), |i, j| mat[(live[i], j)]);
        let rhs = Mat::from_fn(live.len(), 1, |i, _| rhs[(live[i], 0)]);
        let (sol, res) = linalg::lstsq(&mat, &rhs)?;
        worst = worst.max(res);
        for (&(a, q), &col) in &col_of {
            s0[(a, q)] = sol[(col, 0)];
        }
    }
    if worst > 1e-8 {
        return Ok((s0, worst));
    }
    let s0_apply = |v: &[Scalar]| -> Element {
        let dv = nalgebra::DVector::from_column_slice(v);
        (&s0 * dv).iter().cloned().collect()
    };
    let mut s = zeros(n, n);
    for j in 0..n {
        let mut col = vec![ZERO; n];
        for &(p, q, c) in &h.comult[j] {
            for &(q1, q2, c2) in &h.comult[q] {
                let left = s0_apply(&h.basis_vec(p));
                let mid = h.mul(&left, &h.basis_vec(q1));
                let v = h.mul(&mid, &s0_apply(&h.basis_vec(q2)));
                for k in 0..n {
                    col[k] += c * c2 * v[k];
                }
            }
        }
        for k in 0..n {
            s[(k, j)] = col[k];
        }
    }
    Ok((s, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{fib_f_data, fib_ring, pointed_fusion_ring, GroupTable};
    use crate::module_cat::regular_module;

    #[test]
    fn picture_basis_counts() {
        let ring = fib_ring();
        let m = regular_module(&ring, &fib_f_data().table);
        assert_eq!(enumerate_picture_basis(&ring, &m).len(), 13);
        let z2 = pointed_fusion_ring(&GroupTable::cyclic(2).unwrap());
        let m2 = regular_module(&z2, &FSymbolTable::trivial(&z2).unwrap());
        assert_eq!(enumerate_picture_basis(&z2, &m2).len(), 8);
        let z1 = pointed_fusion_ring(&GroupTable::cyclic(1).unwrap());
        let m1 = regular_module(&z1, &FSymbolTable::trivial(&z1).unwrap());
        assert_eq!(enumerate_picture_basis(&z1, &m1).len(), 1);
    }

    #[test]
    fn basis_is_sorted_and_distinct() {
        let ring = fib_ring();
        let m = regular_module(&ring, &fib_f_data().table);
        let b = enumerate_picture_basis(&ring, &m);
        for w in b.windows(2) {
            assert!(w[0].sort_key() < w[1].sort_key());
        }
    }

    #[test]
    fn fib_counit_and_unit_shape() {
        let ring = fib_ring();
        let m = regular_module(&ring, &fib_f_data().table);
        let h = assemble_wha(&ring, &m, BuildOptions::default()).unwrap();
        assert!(h.notes.is_empty(), "{:?}", h.notes);
        let BasisLabels::Picture(b) = &h.basis else {
            unreachable!()
        };
        for (i, p) in b.iter().enumerate() {
            let expect = if p.bottom() == p.top() {
                ring.qdims[p.x].sqrt()
            } else {
                0.0
            };
            assert!((h.counit[i] - real(expect)).norm() < 1e-9);
            let u = if p.x == 0 { 1.0 } else { 0.0 };
            assert!((h.unit[i] - real(u)).norm() < 1e-9);
        }
    }
}
