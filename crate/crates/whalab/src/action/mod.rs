//! Graded actions of picture-basis weak Hopf algebras on path algebras, and the bimodules they
//! induce.

mod bimodule;
mod pointed;
mod verify;

pub use bimodule::{induce_bimodule, verify_bimodule, verify_monoidal_structure, InducedBimodule, MonoidalMap};
pub use pointed::{pointed_coefficients, verify_pointed_coefficients, PointedCoefficient};
pub use verify::{
    degree_zero_suite, verify_action, verify_degree_two_cross_check, verify_grading, verify_module_algebra,
    verify_module_algebra_with, verify_unit_leg_triviality, ModuleAlgebra, TargetAction, DEFAULT_SEED,
};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fusion::fsymbol::{FSymbolTable, TreeKey};
use crate::fusion::ring::FusionRingData;
use crate::linalg::{self, zeros};
use crate::module_cat::{ModuleCategoryData, Vertex};
use crate::quiver::{
    path_algebra, quiver_from_endofunctor, Edge, EndofunctorSpec, GradedPathAlgebra, Path, PathElement, Quiver,
};
use crate::report::Check;
use crate::scalar::{Scalar, Tolerance, ZERO};
use crate::wha::{BasisLabels, WeakHopfAlgebraData};

/// Coefficients below this are structural zeros of an inverted F-block.
const DROP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraidTerm {
    /// Index into the vertex basis of the same simple.
    pub vertex: usize,
    /// Index into the quiver's edge list.
    pub edge: usize,
    pub coeff: Scalar,
}

/// Degree-one exchange (X-vertex v, edge β) ↦ Σ coeff·(edge β', X-vertex v').
#[derive(Debug, Clone, PartialEq)]
pub struct ActionTensor {
    pub vertices: Vec<Vec<Vertex>>,
    terms: BTreeMap<(usize, usize, usize), Vec<BraidTerm>>,
}

impl ActionTensor {
    /// Terms for simple x, vertex index v, edge index e; empty when v and e do not meet.
    pub fn terms(&self, x: usize, v: usize, e: usize) -> &[BraidTerm] {
        self.terms.get(&(x, v, e)).map_or(&[], |t| t.as_slice())
    }

    pub fn terms_mut(&mut self, x: usize, v: usize, e: usize) -> Option<&mut Vec<BraidTerm>> {
        self.terms.get_mut(&(x, v, e))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Vec<BraidTerm>)> {
        self.terms.iter()
    }

    pub fn vertex_index(&self, x: usize, v: &Vertex) -> Option<usize> {
        self.vertices[x].binary_search(v).ok()
    }

    /// Each (x, s(v), t(β), q, copy) block must be an invertible square matrix.
    pub fn verify_invertible(&self, quiver: &Quiver, tol: Tolerance) -> Check {
        type Block = (usize, usize, usize, usize, u32);
        let mut domain: BTreeMap<Block, Vec<(usize, usize)>> = BTreeMap::new();
        for &(x, v, e) in self.terms.keys() {
            let (vx, ed) = (self.vertices[x][v], quiver.edges[e]);
            domain
                .entry((x, vx.source, ed.target, ed.q, ed.copy))
                .or_default()
                .push((v, e));
        }
        let mut failures = Vec::new();
        for (key, dom) in &domain {
            let mut cod: Vec<(usize, usize)> = Vec::new();
            for &(v, e) in dom {
                for t in self.terms(key.0, v, e) {
                    if !cod.contains(&(t.vertex, t.edge)) {
                        cod.push((t.vertex, t.edge));
                    }
                }
            }
            let mut m = zeros(cod.len(), dom.len());
            for (j, &(v, e)) in dom.iter().enumerate() {
                for t in self.terms(key.0, v, e) {
                    let i = cod.iter().position(|c| *c == (t.vertex, t.edge)).unwrap_or(0);
                    m[(i, j)] += t.coeff;
                }
            }
            if cod.len() != dom.len() || linalg::rank(&m, tol.eps()) != dom.len() {
                failures.push(format!("x={} a={} c={} q={}", key.0, key.1, key.2, key.3));
            }
        }
        Check::exact("braiding_invertible", domain.len(), failures)
    }
}

/// Half-braiding of every X-vertex past every edge, from the inverse associator
/// F[x, t(β), q; s(v)] read off the ring's F-symbols.
pub fn half_braiding(
    ring: &FusionRingData,
    f: &FSymbolTable,
    m: &ModuleCategoryData,
    quiver: &Quiver,
) -> Result<ActionTensor> {
    if m.regular_copies().is_none() {
        return Err(Error::Unsupported(
            "half-braiding needs a regular module or a direct sum of regular modules".into(),
        ));
    }
    let cr = m.c_rank();
    let u = |v: usize| v % cr;
    let edge_index: HashMap<Edge, usize> = quiver.edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let vertices: Vec<Vec<Vertex>> = (0..ring.rank()).map(|x| m.vertex_basis(x)).collect();
    let mut terms = BTreeMap::new();
    for (x, verts) in vertices.iter().enumerate() {
        for (vi, v) in verts.iter().enumerate() {
            let base = v.source - u(v.source);
            for (ei, beta) in quiver.edges.iter().enumerate() {
                if beta.source != v.target {
                    continue;
                }
                let blk = f.require(x, u(beta.target), beta.q, u(v.source))?;
                let col = blk
                    .col(&TreeKey::new(u(v.target), beta.label, v.label))
                    .ok_or_else(|| {
                        Error::Incomplete(format!("F[{x},{},{};{}] lacks a column", beta.target, beta.q, v.source))
                    })?;
                let mut out = Vec::new();
                for (ri, rk) in blk.rows().iter().enumerate() {
                    let coeff = blk.inverse()[(col, ri)];
                    if coeff.norm() < DROP {
                        continue;
                    }
                    let b = base + rk.mid;
                    let nv = Vertex {
                        source: b,
                        target: beta.target,
                        label: rk.left,
                    };
                    let ne = Edge {
                        source: v.source,
                        target: b,
                        q: beta.q,
                        copy: beta.copy,
                        label: rk.right,
                    };
                    let vertex = verts
                        .binary_search(&nv)
                        .map_err(|_| Error::Incomplete("braided vertex missing".into()))?;
                    let edge = *edge_index
                        .get(&ne)
                        .ok_or_else(|| Error::Incomplete("braided edge missing".into()))?;
                    out.push(BraidTerm { vertex, edge, coeff });
                }
                terms.insert((x, vi, ei), out);
            }
        }
    }
    Ok(ActionTensor { vertices, terms })
}

/// H ⊗ 𝕜Q → 𝕜Q, tabulated on basis pairs.
#[derive(Debug, Clone)]
pub struct HActionOnPaths {
    pub ring: FusionRingData,
    pub module: ModuleCategoryData,
    pub h: WeakHopfAlgebraData,
    pub paths: GradedPathAlgebra,
    pub tensor: ActionTensor,
    /// (x, top vertex index, bottom vertex index) per H-basis element.
    shape: Vec<(usize, usize, usize)>,
    shape_index: HashMap<(usize, usize, usize), usize>,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl HActionOnPaths {
    pub fn new(
        ring: &FusionRingData,
        module: &ModuleCategoryData,
        h: WeakHopfAlgebraData,
        paths: GradedPathAlgebra,
        tensor: ActionTensor,
    ) -> Result<Self> {
        let BasisLabels::Picture(basis) = &h.basis else {
            return Err(Error::Unsupported(
                "path actions need a picture-basis weak Hopf algebra".into(),
            ));
        };
        let mut shape = Vec::with_capacity(basis.len());
        for el in basis {
            let (t, b) = (
                tensor.vertex_index(el.x, &el.top()),
                tensor.vertex_index(el.x, &el.bottom()),
            );
            match (t, b) {
                (Some(t), Some(b)) => shape.push((el.x, t, b)),
                _ => {
                    return Err(Error::Incomplete(format!(
                        "basis element {el:?} has no braiding vertices"
                    )))
                }
            }
        }
        let scale: Vec<f64> = ring.qdims.iter().map(|d| d.sqrt()).collect();
        let np = paths.dim();
        let mut table = Vec::with_capacity(shape.len() * np);
        for &(x, t, b) in &shape {
            for p in paths.paths() {
                table.push(act_on_path(&tensor, &paths, x, t, b, p, scale[x]));
            }
        }
        let shape_index = shape.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(HActionOnPaths {
            ring: ring.clone(),
            module: module.clone(),
            h,
            paths,
            tensor,
            shape,
            shape_index,
            table,
        })
    }

    pub fn hopf_dim(&self) -> usize {
        self.shape.len()
    }

    /// H-basis index of the element with the given simple, top and bottom vertex indices.
    pub fn hopf_index(&self, x: usize, top: usize, bottom: usize) -> Option<usize> {
        self.shape_index.get(&(x, top, bottom)).copied()
    }

    pub fn act_basis(&self, h: usize, p: usize) -> &[(usize, Scalar)] {
        &self.table[h * self.paths.dim() + p]
    }

    pub fn act(&self, h: &[Scalar], p: &[Scalar]) -> PathElement {
        let mut out = self.paths.zero();
        for (i, hi) in h.iter().enumerate() {
            if *hi == ZERO {
                continue;
            }
            for (j, pj) in p.iter().enumerate() {
                if *pj == ZERO {
                    continue;
                }
                for &(k, c) in self.act_basis(i, j) {
                    out[k] += hi * pj * c;
                }
            }
        }
        out
    }
}

/// Quiver, path algebra, half-braiding and action table in one step.
pub fn build_action(
    ring: &FusionRingData,
    f: &FSymbolTable,
    m: &ModuleCategoryData,
    h: &WeakHopfAlgebraData,
    functor: &EndofunctorSpec,
    max_degree: usize,
) -> Result<HActionOnPaths> {
    let quiver = quiver_from_endofunctor(m, functor)?;
    let tensor = half_braiding(ring, f, m, &quiver)?;
    HActionOnPaths::new(ring, m, h.clone(), path_algebra(&quiver, max_degree), tensor)
}

/// Braid the bottom vertex through the path edge by edge, keeping terms that end on the top vertex.
fn act_on_path(
    tensor: &ActionTensor,
    paths: &GradedPathAlgebra,
    x: usize,
    top: usize,
    bottom: usize,
    p: &Path,
    scale: f64,
) -> Vec<(usize, Scalar)> {
    let bv = tensor.vertices[x][bottom];
    if p.edges.is_empty() {
        if top == bottom && p.source == bv.target {
            let idx = paths.index_of(&Path {
                source: bv.source,
                target: bv.source,
                edges: Vec::new(),
            });
            return idx.map(|i| vec![(i, Scalar::new(scale, 0.0))]).unwrap_or_default();
        }
        return Vec::new();
    }
    let mut states: Vec<(Scalar, usize, Vec<usize>)> = vec![(Scalar::new(scale, 0.0), bottom, Vec::new())];
    for &e in &p.edges {
        let mut next = Vec::new();
        for (c, v, out) in &states {
            for t in tensor.terms(x, *v, e) {
                let mut o = out.clone();
                o.push(t.edge);
                next.push((c * t.coeff, t.vertex, o));
            }
        }
        states = next;
    }
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v, out) in states {
        if v != top {
            continue;
        }
        let target = paths.quiver.edges[*out.last().expect("nonempty path")].target;
        let path = Path {
            source: bv.source,
            target,
            edges: out,
        };
        if let Some(i) = paths.index_of(&path) {
            *acc.entry(i).or_insert(ZERO) += c;
        }
    }
    acc.into_iter().filter(|(_, c)| c.norm() > DROP).collect()
}
