use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::linalg::Mat;
use crate::report::{Check, Report};
use crate::scalar::{real, RootOfUnity, Tolerance};

/// Finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {g} has length {}", row.len())));
            }
            if let Some(&h) = row.iter().find(|&&h| h >= n) {
                return Err(Error::InvalidGroup(format!("entry {h} in row {g} is not an element")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable {
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z_0".into()));
        }
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Fusion ring: labels, fusion coefficients, duals and quantum dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionRingData {
    pub simples: Vec<String>,
    pub unit: usize,
    n: Vec<u32>,
    pub dual: Vec<usize>,
    pub qdims: Vec<f64>,
}

impl FusionRingData {
    /// `entries` are (i, j, k, N_ij^k); unlisted coefficients are zero.
    pub fn new(
        simples: Vec<String>,
        unit: usize,
        entries: &[(usize, usize, usize, u32)],
        dual: Vec<usize>,
        qdims: Vec<f64>,
    ) -> Result<Self> {
        let r = simples.len();
        check_index("unit", unit, r)?;
        if dual.len() != r || qdims.len() != r {
            return Err(Error::Validation {
                location: "ring".into(),
                message: format!("expected {r} duals and qdims, got {} and {}", dual.len(), qdims.len()),
            });
        }
        for &d in &dual {
            check_index("dual", d, r)?;
        }
        let mut n = vec![0u32; r * r * r];
        for &(i, j, k, m) in entries {
            check_index("N", i.max(j).max(k), r)?;
            n[(i * r + j) * r + k] = m;
        }
        Ok(FusionRingData {
            simples,
            unit,
            n,
            dual,
            qdims,
        })
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    /// N_{ij}^k.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let m = self.n(i, j, k);
                    if m > 0 {
                        out.push((i, j, k, m));
                    }
                }
            }
        }
        out
    }

    pub fn set_n(&mut self, i: usize, j: usize, k: usize, m: u32) {
        let r = self.rank();
        self.n[(i * r + j) * r + k] = m;
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simples.iter().position(|s| s == label)
    }

    pub fn relabel(mut self, labels: &[&str]) -> Self {
        self.simples = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn fuse(&self, i: usize, j: usize) -> Result<Vec<(usize, u32)>> {
        check_index("simple", i, self.rank())?;
        check_index("simple", j, self.rank())?;
        Ok((0..self.rank())
            .filter_map(|k| {
                let m = self.n(i, j, k);
                (m > 0).then_some((k, m))
            })
            .collect())
    }

    /// Exact structural checks: unit, rigidity, dual involution, associativity.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let r = self.rank();
        let mut rep = Report::new();
        rep.push(verify_ring_associativity(self));
        let mut bad = Vec::new();
        for j in 0..r {
            for k in 0..r {
                let d = u32::from(j == k);
                if self.n(self.unit, j, k) != d || self.n(j, self.unit, k) != d {
                    bad.push(format!("unit at ({j},{k})"));
                }
            }
        }
        rep.push(Check::exact("ring_unit", r * r, bad));
        let mut bad = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if self.n(i, j, self.unit) != u32::from(j == self.dual[i]) {
                    bad.push(format!("rigidity at ({i},{j})"));
                }
            }
            if self.dual[self.dual[i]] != i {
                bad.push(format!("dual not an involution at {i}"));
            }
        }
        if self.dual[self.unit] != self.unit {
            bad.push("dual(unit) != unit".into());
        }
        rep.push(Check::exact("ring_rigidity", r * r, bad));
        let mut samples = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let lhs = self.qdims[i] * self.qdims[j];
                let rhs: f64 = (0..r).map(|k| self.n(i, j, k) as f64 * self.qdims[k]).sum();
                samples.push(((lhs - rhs).abs(), format!("({i},{j})")));
            }
        }
        rep.push(Check::from_samples("qdim_multiplicativity", samples, tol));
        rep
    }
}

pub fn verify_ring_associativity(ring: &FusionRingData) -> Check {
    let r = ring.rank();
    let mut bad = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: u64 = (0..r).map(|m| ring.n(i, j, m) as u64 * ring.n(m, k, l) as u64).sum();
                    let rhs: u64 = (0..r).map(|m| ring.n(j, k, m) as u64 * ring.n(i, m, l) as u64).sum();
                    if lhs != rhs {
                        bad.push(format!("({i},{j},{k},{l}): {lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    Check::exact("ring_associativity", r.pow(4), bad)
}

/// [n]_q with q = exp(iπ/p), evaluated through exact roots of unity.
pub fn quantum_integer(n: i64, p: u64) -> f64 {
    let q = |k: i64| RootOfUnity::new(2 * p, k).expect("order > 0").to_scalar();
    let num = q(n) - q(-n);
    let den = q(1) - q(-1);
    (num / den).re
}

/// Simples X_0, X_2, …, X_{p-3}; index i stands for the label 2i.
pub fn psu2_fusion_ring(p: u64) -> Result<FusionRingData> {
    if p < 5 || p.is_multiple_of(2) {
        return Err(Error::Domain(format!("psu2 needs odd p >= 5, got {p}")));
    }
    let r = ((p - 1) / 2) as usize;
    let mut entries = Vec::new();
    let top = 2 * (p as i64 - 2);
    for i in 0..r as i64 {
        for j in 0..r as i64 {
            for m in 0..r as i64 {
                let (a, b, c) = (2 * i, 2 * j, 2 * m);
                if (a - b).abs() <= c && c <= (a + b).min(top - a - b) {
                    entries.push((i as usize, j as usize, m as usize, 1));
                }
            }
        }
    }
    let simples = (0..r).map(|i| format!("X_{}", 2 * i)).collect();
    let qdims = (0..r).map(|i| quantum_integer(2 * i as i64 + 1, p)).collect();
    FusionRingData::new(simples, 0, &entries, (0..r).collect(), qdims)
}

pub fn pointed_fusion_ring(group: &GroupTable) -> FusionRingData {
    let n = group.order();
    let entries: Vec<_> = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| (g, h, group.mul(g, h), 1))
        .collect();
    let dual = (0..n).map(|g| group.inv(g)).collect();
    FusionRingData::new(
        (0..n).map(|g| format!("d{g}")).collect(),
        group.identity(),
        &entries,
        dual,
        vec![1.0; n],
    )
    .expect("group data is in range")
}

/// Stored quantum dimensions against the Perron–Frobenius eigenvalues.
pub fn verify_perron_frobenius(ring: &FusionRingData, tol: Tolerance) -> Check {
    let pf = perron_frobenius_dims(ring);
    let samples = ring
        .qdims
        .iter()
        .zip(&pf)
        .enumerate()
        .map(|(i, (d, p))| ((d - p).abs(), ring.simples[i].clone()))
        .collect();
    Check::from_samples("qdims_perron_frobenius", samples, tol)
}

/// Largest eigenvalue of each fusion matrix L_i = (N_ij^k)_{jk}, by power iteration on L_i + 1.
pub fn perron_frobenius_dims(ring: &FusionRingData) -> Vec<f64> {
    let r = ring.rank();
    (0..r)
        .map(|i| {
            let m = Mat::from_fn(r, r, |j, k| {
                real(ring.n(i, j, k) as f64 + if j == k { 1.0 } else { 0.0 })
            });
            let mut v = vec![1.0; r];
            let mut lambda = 0.0;
            for _ in 0..2000 {
                let w: Vec<f64> = (0..r).map(|j| (0..r).map(|k| m[(j, k)].re * v[k]).sum()).collect();
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                let next = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v = w.iter().map(|x| x / norm).collect();
                if (next - lambda).abs() < 1e-15 {
                    lambda = next;
                    break;
                }
                lambda = next;
            }
            lambda - 1.0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psu2_small_cases() {
        let r5 = psu2_fusion_ring(5).unwrap();
        assert_eq!(r5.rank(), 2);
        assert_eq!(r5.fuse(1, 1).unwrap(), vec![(0, 1), (1, 1)]);
        let r7 = psu2_fusion_ring(7).unwrap();
        assert_eq!(r7.rank(), 3);
        assert_eq!(r7.fuse(1, 2).unwrap(), vec![(1, 1), (2, 1)]);
        assert_eq!(r7.fuse(2, 2).unwrap(), vec![(0, 1), (1, 1)]);
        for j in 0..3 {
            assert_eq!(r7.fuse(0, j).unwrap(), vec![(j, 1)]);
        }
        assert!(psu2_fusion_ring(4).is_err());
        assert!(psu2_fusion_ring(3).is_err());
    }

    #[test]
    fn pointed_rings() {
        let z1 = pointed_fusion_ring(&GroupTable::cyclic(1).unwrap());
        assert_eq!(z1.rank(), 1);
        let z2 = pointed_fusion_ring(&GroupTable::cyclic(2).unwrap());
        assert_eq!(z2.fuse(1, 1).unwrap(), vec![(0, 1)]);
        let z3 = pointed_fusion_ring(&GroupTable::cyclic(3).unwrap());
        assert_eq!(z3.fuse(1, 2).unwrap(), vec![(0, 1)]);
        assert_eq!(z3.dual, vec![0, 2, 1]);
    }

    #[test]
    fn invalid_groups_rejected() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![0, 5], vec![1, 0]]).is_err());
        assert!(GroupTable::new(vec![]).is_err());
    }

    #[test]
    fn fuse_out_of_range() {
        let r = psu2_fusion_ring(5).unwrap();
        assert!(r.fuse(2, 0).is_err());
    }

    #[test]
    fn pf_dims() {
        let fib = psu2_fusion_ring(5).unwrap();
        let d = perron_frobenius_dims(&fib);
        assert!((d[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        let z4 = pointed_fusion_ring(&GroupTable::cyclic(4).unwrap());
        assert!(perron_frobenius_dims(&z4).iter().all(|x| (x - 1.0).abs() < 1e-9));
        let r7 = psu2_fusion_ring(7).unwrap();
        let closed = (3.0 * std::f64::consts::PI / 7.0).sin() / (std::f64::consts::PI / 7.0).sin();
        assert!((perron_frobenius_dims(&r7)[1] - closed).abs() < 1e-6);
        assert!((r7.qdims[1] - closed).abs() < 1e-12);
    }

    #[test]
    fn associativity_mutation_is_located() {
        assert!(verify_ring_associativity(&psu2_fusion_ring(11).unwrap()).pass);
        let mut r = psu2_fusion_ring(7).unwrap();
        assert!(r.verify(Tolerance::default()).passed());
        r.set_n(1, 1, 2, 2);
        let c = verify_ring_associativity(&r);
        assert!(!c.pass);
        assert!(c.counterexample.is_some());
    }
}
