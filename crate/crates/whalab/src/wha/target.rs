use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Element, WeakHopfAlgebraData};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::report::{Check, Report};
use crate::scalar::{max_dev, real, Scalar, Tolerance, ONE, ZERO};

/// A commutative separable subalgebra (H^t or H^s) with its primitive idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSubalgebra {
    pub dim: usize,
    /// Orthonormal basis of the image, in H coordinates.
    pub basis: Vec<Element>,
    pub idempotents: Vec<Element>,
    pub commutative: bool,
}

pub fn target_subalgebra(h: &WeakHopfAlgebraData) -> Result<BaseSubalgebra> {
    let images: Vec<Element> = (0..h.dim()).map(|i| h.counital_target(&h.basis_vec(i))).collect();
    base_subalgebra(h, &images)
}

pub fn source_subalgebra(h: &WeakHopfAlgebraData) -> Result<BaseSubalgebra> {
    let images: Vec<Element> = (0..h.dim()).map(|i| h.counital_source(&h.basis_vec(i))).collect();
    base_subalgebra(h, &images)
}

fn coords(basis: &[Element], v: &[Scalar]) -> Vec<Scalar> {
    basis
        .iter()
        .map(|b| b.iter().zip(v).map(|(x, y)| x.conj() * y).sum())
        .collect()
}

fn base_subalgebra(h: &WeakHopfAlgebraData, images: &[Element]) -> Result<BaseSubalgebra> {
    let basis = linalg::span_basis(images, 1e-8);
    let dim = basis.len();
    let mut commutative = true;
    for a in &basis {
        for b in &basis {
            let d = crate::scalar::max_dev(&h.mul(a, b), &h.mul(b, a));
            commutative &= d < 1e-8;
        }
    }
    // A generic element separates the characters of a commutative semisimple algebra.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..8 {
        let coef: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.5..2.0)).collect();
        let mut z = h.zero();
        for (c, b) in coef.iter().zip(&basis) {
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi += real(*c) * bi;
            }
        }
        let lz = Mat::from_fn(dim, dim, |i, j| coords(&basis, &h.mul(&z, &basis[j]))[i]);
        let ev = linalg::eigenvalues(&lz)?;
        let min_gap = (0..dim)
            .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| (ev[i] - ev[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-6 {
            continue;
        }
        let mut idempotents = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = h.unit.clone();
            for j in (0..dim).filter(|&j| j != i) {
                let shifted: Element = z.iter().zip(&h.unit).map(|(zk, uk)| zk - ev[j] * uk).collect();
                let scale = ONE / (ev[i] - ev[j]);
                e = h.mul(&e, &shifted).into_iter().map(|v| v * scale).collect();
            }
            idempotents.push(e);
        }
        idempotents.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal));
        return Ok(BaseSubalgebra {
            dim,
            basis,
            idempotents,
            commutative,
        });
    }
    Err(Error::Singular(
        "could not separate idempotents of the base algebra".into(),
    ))
}

/// Deterministic ordering: position of the first significant coefficient.
fn key(e: &[Scalar]) -> (usize, i64) {
    let i = e.iter().position(|c| c.norm() > 1e-8).unwrap_or(usize::MAX);
    let v = if i == usize::MAX { ZERO } else { e[i] };
    (i, (v.re * 1e6).round() as i64)
}

/// dim H^t = `module_rank`, with orthogonal primitive idempotents summing to 1.
pub fn verify_target_subalgebra(h: &WeakHopfAlgebraData, module_rank: usize, tol: Tolerance) -> Result<Report> {
    let t = target_subalgebra(h)?;
    let mut rep = Report::new();
    let bad = if t.dim == module_rank {
        Vec::new()
    } else {
        vec![format!("dim H^t = {} but the module has {module_rank} simples", t.dim)]
    };
    rep.push(Check::exact("target_dim", 1, bad));
    let mut samples = Vec::new();
    let mut sum = h.zero();
    for (i, a) in t.idempotents.iter().enumerate() {
        for (s, v) in sum.iter_mut().zip(a) {
            *s += v;
        }
        for (j, b) in t.idempotents.iter().enumerate() {
            let expect = if i == j { a.clone() } else { h.zero() };
            samples.push((max_dev(&h.mul(a, b), &expect), format!("({i},{j})")));
        }
    }
    samples.push((max_dev(&sum, &h.unit), "sum".into()));
    rep.push(Check::from_samples("target_idempotents", samples, tol));
    let bad = if t.commutative {
        Vec::new()
    } else {
        vec!["H^t is not commutative".into()]
    };
    rep.push(Check::exact("target_commutative", 1, bad));
    Ok(rep)
}
