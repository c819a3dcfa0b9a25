use std::collections::HashMap;

use crate::error::Result;
use crate::exec::Exec;
use crate::fusion::fsymbol::{FSymbolTable, TreeKey};
use crate::fusion::ring::FusionRingData;
use crate::report::Check;
use crate::scalar::{Scalar, Tolerance, ZERO};

/// Multiplicities A[x][m][n] = dim M(n, x▷m) of an action of the ring on some simples.
pub trait ActionMults: Sync {
    fn module_rank(&self) -> usize;
    fn a(&self, x: usize, m: usize, n: usize) -> u32;
}

impl ActionMults for FusionRingData {
    fn module_rank(&self) -> usize {
        self.rank()
    }
    fn a(&self, x: usize, m: usize, n: usize) -> u32 {
        self.n(x, m, n)
    }
}

type Final = (usize, u32, usize, u32, u32);

fn apply(
    table: &FSymbolTable,
    key: (usize, usize, usize, usize),
    row: TreeKey,
    coef: Scalar,
    out: &mut Vec<(TreeKey, Scalar)>,
) -> Result<()> {
    let b = table.require(key.0, key.1, key.2, key.3)?;
    let Some(i) = b.row(&row) else {
        return Ok(());
    };
    for (j, col) in b.cols().iter().enumerate() {
        let v = b.matrix()[(i, j)];
        if v != ZERO {
            out.push((*col, coef * v));
        }
    }
    Ok(())
}

/// Mixed pentagon for (x, y, z) acting on module simple u, total w. The pure pentagon is the
/// special case where the module is the ring itself and mF = F.
pub fn mixed_pentagon_deviations<A: ActionMults>(
    ring: &FusionRingData,
    f: &FSymbolTable,
    act: &A,
    mf: &FSymbolTable,
    exec: Exec,
) -> Result<Vec<(f64, String)>> {
    let r = ring.rank();
    let m = act.module_rank();
    let total = r * r * r * m * m;
    let per_tuple = exec.map(total, |idx| -> Result<Vec<(f64, String)>> {
        let w = idx % m;
        let u = (idx / m) % m;
        let z = (idx / (m * m)) % r;
        let y = (idx / (m * m * r)) % r;
        let x = idx / (m * m * r * r);
        let mut out = Vec::new();
        for a in 0..r {
            for mu1 in 0..ring.n(x, y, a) {
                for b in 0..r {
                    for mu2 in 0..ring.n(a, z, b) {
                        for mu3 in 0..act.a(b, u, w) {
                            let lhs = path_two_moves(mf, (x, y, z, u, w), (a, mu1, b, mu2, mu3))?;
                            let rhs = path_three_moves(f, mf, (x, y, z, u, w), (a, mu1, b, mu2, mu3))?;
                            let mut dev: f64 = 0.0;
                            for (k, v) in &lhs {
                                dev = dev.max((v - rhs.get(k).copied().unwrap_or(ZERO)).norm());
                            }
                            for (k, v) in &rhs {
                                if !lhs.contains_key(k) {
                                    dev = dev.max(v.norm());
                                }
                            }
                            out.push((dev, format!("(x,y,z,u,w)=({x},{y},{z},{u},{w}) a={a} b={b}")));
                        }
                    }
                }
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for v in per_tuple {
        all.extend(v?);
    }
    Ok(all)
}

fn accumulate(v: Vec<(Final, Scalar)>) -> HashMap<Final, Scalar> {
    let mut out = HashMap::new();
    for (k, c) in v {
        *out.entry(k).or_insert(ZERO) += c;
    }
    out
}

fn path_two_moves(
    mf: &FSymbolTable,
    (x, y, z, u, w): (usize, usize, usize, usize, usize),
    (a, mu1, b, mu2, mu3): (usize, u32, usize, u32, u32),
) -> Result<HashMap<Final, Scalar>> {
    let mut step = Vec::new();
    apply(
        mf,
        (a, z, u, w),
        TreeKey::new(b, mu2, mu3),
        Scalar::new(1.0, 0.0),
        &mut step,
    )?;
    let mut fin = Vec::new();
    for (col, c1) in step {
        let (c, kappa, lambda) = (col.mid, col.left, col.right);
        let mut s2 = Vec::new();
        apply(mf, (x, y, c, w), TreeKey::new(a, mu1, lambda), c1, &mut s2)?;
        for (col2, c2) in s2 {
            fin.push(((c, kappa, col2.mid, col2.left, col2.right), c2));
        }
    }
    Ok(accumulate(fin))
}

fn path_three_moves(
    f: &FSymbolTable,
    mf: &FSymbolTable,
    (x, y, z, u, w): (usize, usize, usize, usize, usize),
    (a, mu1, b, mu2, mu3): (usize, u32, usize, u32, u32),
) -> Result<HashMap<Final, Scalar>> {
    let mut s1 = Vec::new();
    apply(
        f,
        (x, y, z, b),
        TreeKey::new(a, mu1, mu2),
        Scalar::new(1.0, 0.0),
        &mut s1,
    )?;
    let mut fin = Vec::new();
    for (k1, c1) in s1 {
        let (e, rho1, rho2) = (k1.mid, k1.left, k1.right);
        let mut s2 = Vec::new();
        apply(mf, (x, e, u, w), TreeKey::new(b, rho2, mu3), c1, &mut s2)?;
        for (k2, c2) in s2 {
            let (d, sigma1, sigma2) = (k2.mid, k2.left, k2.right);
            let mut s3 = Vec::new();
            apply(mf, (y, z, u, d), TreeKey::new(e, rho1, sigma1), c2, &mut s3)?;
            for (k3, c3) in s3 {
                fin.push(((k3.mid, k3.left, d, k3.right, sigma2), c3));
            }
        }
    }
    Ok(accumulate(fin))
}

pub fn verify_pentagon(ring: &FusionRingData, f: &FSymbolTable, tol: Tolerance) -> Result<Check> {
    verify_pentagon_with(ring, f, tol, Exec::default())
}

pub fn verify_pentagon_with(ring: &FusionRingData, f: &FSymbolTable, tol: Tolerance, exec: Exec) -> Result<Check> {
    f.validate(ring)?;
    let samples = mixed_pentagon_deviations(ring, f, ring, f, exec)?;
    Ok(Check::from_samples("pentagon", samples, tol))
}
