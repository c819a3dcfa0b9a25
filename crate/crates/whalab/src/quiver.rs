//! Quivers of module endofunctors and their truncated path algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module_cat::ModuleCategoryData;
use crate::scalar::{Scalar, ONE, ZERO};

/// Q ≅ ⊕ x^{⊕k_x}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndofunctorSpec {
    multiplicities: BTreeMap<usize, u32>,
}

impl EndofunctorSpec {
    pub fn new(multiplicities: BTreeMap<usize, u32>) -> Result<Self> {
        let multiplicities: BTreeMap<_, _> = multiplicities.into_iter().filter(|(_, k)| *k > 0).collect();
        if multiplicities.is_empty() {
            return Err(Error::Domain("endofunctor must have a nonzero summand".into()));
        }
        Ok(EndofunctorSpec { multiplicities })
    }

    pub fn single(x: usize) -> Self {
        EndofunctorSpec {
            multiplicities: BTreeMap::from([(x, 1)]),
        }
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, u32> {
        &self.multiplicities
    }
}

/// An edge a→b is a basis vector of Hom(a, b◁q) in summand copy `copy` of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub q: usize,
    pub copy: u32,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut a = vec![vec![0; n]; n];
        for e in &self.edges {
            a[e.source][e.target] += 1;
        }
        a
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"q{}.{}.{}\"];",
                e.source, e.target, e.q, e.copy, e.label
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "adjacency": self.adjacency(),
            "edges": self.edges,
        })
    }
}

/// dim Hom(a, b◁q) for modules that are direct sums of the regular module.
pub fn right_action_dim(m: &ModuleCategoryData, b: usize, q: usize, a: usize) -> Result<u32> {
    if m.regular_copies().is_none() {
        return Err(Error::Unsupported(
            "module endofunctors are only available for direct sums of the regular module".into(),
        ));
    }
    if m.copy_of(a) != m.copy_of(b) {
        return Ok(0);
    }
    let (sa, sb) = (m.underlying(a).unwrap_or(a), m.underlying(b).unwrap_or(b));
    Ok(m.a(sb, q, sa))
}

pub fn quiver_from_endofunctor(m: &ModuleCategoryData, q: &EndofunctorSpec) -> Result<Quiver> {
    let mut edges = Vec::new();
    for &x in q.multiplicities.keys() {
        if x >= m.c_rank() {
            return Err(Error::IndexOutOfRange {
                what: "endofunctor summand",
                index: x,
                bound: m.c_rank(),
            });
        }
    }
    for source in 0..m.rank() {
        for target in 0..m.rank() {
            for (&x, &k) in &q.multiplicities {
                let dim = right_action_dim(m, target, x, source)?;
                for copy in 0..k {
                    for label in 0..dim {
                        edges.push(Edge {
                            source,
                            target,
                            q: x,
                            copy,
                            label,
                        });
                    }
                }
            }
        }
    }
    edges.sort();
    Ok(Quiver {
        vertices: m.m_simples.clone(),
        edges,
    })
}

/// A path stored bottom-first: `edges[0]` leaves `source`, the last edge arrives at `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn degree(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathProduct {
    Zero,
    Path(usize),
    /// Composable, but the degree exceeds the truncation.
    Truncated,
}

pub type PathElement = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedPathAlgebra {
    pub quiver: Quiver,
    pub max_degree: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    degree_start: Vec<usize>,
}

pub fn path_algebra(quiver: &Quiver, max_degree: usize) -> GradedPathAlgebra {
    let nv = quiver.vertices.len();
    let mut paths: Vec<Path> = (0..nv)
        .map(|v| Path {
            source: v,
            target: v,
            edges: Vec::new(),
        })
        .collect();
    let mut degree_start = vec![0, nv];
    let mut layer: Vec<Path> = paths.clone();
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for p in &layer {
            for (ei, e) in quiver.edges.iter().enumerate() {
                if e.source == p.target {
                    let mut edges = p.edges.clone();
                    edges.push(ei);
                    next.push(Path {
                        source: p.source,
                        target: e.target,
                        edges,
                    });
                }
            }
        }
        next.sort();
        paths.extend(next.iter().cloned());
        degree_start.push(paths.len());
        layer = next;
    }
    let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    GradedPathAlgebra {
        quiver: quiver.clone(),
        max_degree,
        paths,
        index,
        degree_start,
    }
}

impl GradedPathAlgebra {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn vertex(&self, v: usize) -> usize {
        v
    }

    /// Basis indices of degree-n paths.
    pub fn degree_range(&self, n: usize) -> std::ops::Range<usize> {
        self.degree_start[n]..self.degree_start[n + 1]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.paths[i].degree()
    }

    pub fn zero(&self) -> PathElement {
        vec![ZERO; self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> PathElement {
        let mut v = self.zero();
        v[i] = ONE;
        v
    }

    /// Σ_v e_v.
    pub fn unit(&self) -> PathElement {
        let mut v = self.zero();
        for i in self.degree_range(0) {
            v[i] = ONE;
        }
        v
    }

    /// p1·p2: p2 traversed first, then p1; needs s(p1) = t(p2).
    pub fn multiply(&self, p1: usize, p2: usize) -> PathProduct {
        let (a, b) = (&self.paths[p1], &self.paths[p2]);
        if a.source != b.target {
            return PathProduct::Zero;
        }
        if a.degree() + b.degree() > self.max_degree {
            return PathProduct::Truncated;
        }
        let mut edges = b.edges.clone();
        edges.extend_from_slice(&a.edges);
        let p = Path {
            source: b.source,
            target: a.target,
            edges,
        };
        PathProduct::Path(self.index[&p])
    }

    /// Product of elements; the flag reports whether any term was truncated.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> (PathElement, bool) {
        let mut out = self.zero();
        let mut truncated = false;
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj == ZERO {
                    continue;
                }
                match self.multiply(i, j) {
                    PathProduct::Path(k) => out[k] += ai * bj,
                    PathProduct::Truncated => truncated = true,
                    PathProduct::Zero => {}
                }
            }
        }
        (out, truncated)
    }

    /// dims[n][a][b] = number of degree-n paths from a to b.
    pub fn graded_dims(&self) -> Vec<Vec<Vec<usize>>> {
        let nv = self.quiver.vertices.len();
        let mut out = vec![vec![vec![0; nv]; nv]; self.max_degree + 1];
        for p in &self.paths {
            out[p.degree()][p.source][p.target] += 1;
        }
        out
    }
}

pub fn graded_dims(p: &GradedPathAlgebra) -> Vec<Vec<Vec<usize>>> {
    p.graded_dims()
}

pub fn multiply(p: &GradedPathAlgebra, p1: usize, p2: usize) -> PathProduct {
    p.multiply(p1, p2)
}
