//! Weak Hopf algebras on explicit bases.

mod axioms;
mod build;
mod target;
mod variants;

pub use axioms::{verify_wha_axioms, verify_wha_axioms_with};
pub use build::{assemble_wha, build_wha, enumerate_picture_basis, BuildOptions, PictureBasisElement};
pub use target::{source_subalgebra, target_subalgebra, verify_target_subalgebra, BaseSubalgebra};
pub use variants::{direct_sum_group_wha, opposite_variant, Variant};

use crate::linalg::{zeros, Mat};
use crate::scalar::{Scalar, ONE, ZERO};

pub type Element = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq)]
pub enum BasisLabels {
    Picture(Vec<PictureBasisElement>),
    Abstract(Vec<String>),
}

impl BasisLabels {
    pub fn len(&self) -> usize {
        match self {
            BasisLabels::Picture(v) => v.len(),
            BasisLabels::Abstract(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            BasisLabels::Picture(v) => {
                let p = &v[i];
                format!(
                    "(a={},b={},c={},d={},x={},e={},f={})",
                    p.a, p.b, p.c, p.d, p.x, p.e, p.f
                )
            }
            BasisLabels::Abstract(v) => v[i].clone(),
        }
    }
}

/// Structure tensors of a finite-dimensional weak Hopf algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakHopfAlgebraData {
    pub basis: BasisLabels,
    /// `mult[i * dim + j]` is e_i·e_j as a sparse vector.
    pub mult: Vec<Vec<(usize, Scalar)>>,
    pub unit: Element,
    /// `comult[i]` is Δ(e_i) as sparse (left, right, coefficient) triples.
    pub comult: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Element,
    /// Column j is S(e_j).
    pub antipode: Mat,
    pub target_idempotents: Vec<Element>,
    pub source_idempotents: Vec<Element>,
    pub notes: Vec<String>,
}

pub(crate) fn sparsify(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 1e-14)
        .map(|(i, c)| (i, *c))
        .collect()
}

impl WeakHopfAlgebraData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> Element {
        vec![ZERO; self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = ONE;
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Element {
        let mut out = self.zero();
        let bs = sparsify(b);
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for &(j, bj) in &bs {
                let c = ai * bj;
                for &(k, m) in self.mul_basis(i, j) {
                    out[k] += c * m;
                }
            }
        }
        out
    }

    /// Δ(a) as a dense dim×dim matrix of coefficients.
    pub fn delta(&self, a: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut out = zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for &(p, q, c) in &self.comult[i] {
                out[(p, q)] += ai * c;
            }
        }
        out
    }

    pub fn eps(&self, a: &[Scalar]) -> Scalar {
        a.iter().zip(&self.counit).map(|(x, y)| x * y).sum()
    }

    pub fn apply_antipode(&self, a: &[Scalar]) -> Element {
        let v = nalgebra::DVector::from_column_slice(a);
        (&self.antipode * v).iter().cloned().collect()
    }

    /// Δ(1) as sparse triples.
    pub fn delta_one(&self) -> Vec<(usize, usize, Scalar)> {
        let d = self.delta(&self.unit);
        let n = self.dim();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if d[(p, q)].norm() > 1e-14 {
                    out.push((p, q, d[(p, q)]));
                }
            }
        }
        out
    }

    /// ε_t(h) = ε(1₍₁₎h)·1₍₂₎.
    pub fn counital_target(&self, h: &[Scalar]) -> Element {
        let mut out = self.zero();
        for (p, q, c) in self.delta_one() {
            let e = self.eps(&self.mul(&self.basis_vec(p), h));
            out[q] += c * e;
        }
        out
    }

    /// ε_s(h) = 1₍₁₎·ε(h1₍₂₎).
    pub fn counital_source(&self, h: &[Scalar]) -> Element {
        let mut out = self.zero();
        for (p, q, c) in self.delta_one() {
            let e = self.eps(&self.mul(h, &self.basis_vec(q)));
            out[p] += c * e;
        }
        out
    }
}

pub fn counital_target(h_alg: &WeakHopfAlgebraData, h: &[Scalar]) -> Element {
    h_alg.counital_target(h)
}

pub fn counital_source(h_alg: &WeakHopfAlgebraData, h: &[Scalar]) -> Element {
    h_alg.counital_source(h)
}
