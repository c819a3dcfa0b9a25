use crate::error::Result;
use crate::fusion::fsymbol::{ring_left_keys, ring_right_keys, FBlock, FSymbolTable};
use crate::fusion::pentagon::verify_pentagon;
use crate::fusion::ring::{psu2_fusion_ring, quantum_integer, FusionRingData};
use crate::linalg::Mat;
use crate::report::Check;
use crate::scalar::{real, Tolerance};

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Fibonacci ring with labels "1" and "tau".
pub fn fib_ring() -> FusionRingData {
    psu2_fusion_ring(5).expect("p = 5 is valid").relabel(&["1", "tau"])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibGauge {
    /// A = [[a, 1], [-a, -a]] with a = φ.
    ShearPhi,
    /// Same matrix with a = 1 - φ.
    ShearConjugate,
    /// [[1/φ, 1/√φ], [1/√φ, -1/φ]].
    Standard,
}

#[derive(Debug, Clone)]
pub struct FibFData {
    pub table: FSymbolTable,
    pub gauge: FibGauge,
    /// Pentagon verdicts for each candidate, in the order tried.
    pub verdicts: Vec<(FibGauge, Check)>,
}

/// Trivial blocks everywhere except (τ,τ,τ;τ), which gets `m`.
pub fn fib_table_with(m: Mat) -> Result<FSymbolTable> {
    let ring = fib_ring();
    let mut t = FSymbolTable::trivial(&ring)?;
    let rows = ring_left_keys(&ring, 1, 1, 1, 1);
    let cols = ring_right_keys(&ring, 1, 1, 1, 1);
    t.insert(1, 1, 1, 1, FBlock::new(rows, cols, m)?);
    Ok(t)
}

pub fn fib_block(gauge: FibGauge) -> Mat {
    let phi = golden_ratio();
    let shear = |a: f64| Mat::from_row_slice(2, 2, &[real(a), real(1.0), real(-a), real(-a)]);
    match gauge {
        FibGauge::ShearPhi => shear(phi),
        FibGauge::ShearConjugate => shear(1.0 - phi),
        FibGauge::Standard => {
            let (u, v) = (1.0 / phi, 1.0 / phi.sqrt());
            Mat::from_row_slice(2, 2, &[real(u), real(v), real(v), real(-u)])
        }
    }
}

/// Tries the shear matrix for both roots, then falls back to the standard gauge.
pub fn fib_f_data() -> FibFData {
    let ring = fib_ring();
    let tol = Tolerance::default();
    let mut verdicts = Vec::new();
    for gauge in [FibGauge::ShearPhi, FibGauge::ShearConjugate, FibGauge::Standard] {
        let table = fib_table_with(fib_block(gauge)).expect("fib blocks are invertible");
        let check = verify_pentagon(&ring, &table, tol).expect("fib table is complete");
        let pass = check.pass;
        verdicts.push((gauge, check));
        if pass {
            return FibFData { table, gauge, verdicts };
        }
    }
    unreachable!("standard Fibonacci gauge satisfies the pentagon")
}

/// Quantum 6j symbols of SU(2)_{p-2} restricted to integer spins; index i is spin i.
pub fn psu2_f_data(p: u64) -> Result<FSymbolTable> {
    let ring = psu2_fusion_ring(p)?;
    let r = ring.rank();
    let qn = |n: i64| quantum_integer(n, p);
    let fact = |n: i64| (1..=n).map(qn).product::<f64>();
    let delta =
        |a: i64, b: i64, c: i64| (fact(a + b - c) * fact(a - b + c) * fact(-a + b + c) / fact(a + b + c + 1)).sqrt();
    let sixj = |j1: i64, j2: i64, j12: i64, j3: i64, j: i64, j23: i64| {
        let tri = [(j1, j2, j12), (j12, j3, j), (j2, j3, j23), (j1, j23, j)];
        let lo = tri.iter().map(|t| t.0 + t.1 + t.2).max().unwrap();
        let hi = (j1 + j2 + j3 + j).min(j1 + j12 + j3 + j23).min(j2 + j12 + j + j23);
        let mut s = 0.0;
        for z in lo..=hi {
            let mut den = fact(j1 + j2 + j3 + j - z) * fact(j1 + j12 + j3 + j23 - z) * fact(j2 + j12 + j + j23 - z);
            for t in &tri {
                den *= fact(z - t.0 - t.1 - t.2);
            }
            let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * fact(z + 1) / den;
        }
        tri.iter().map(|t| delta(t.0, t.1, t.2)).product::<f64>() * s
    };
    let mut t = FSymbolTable::new();
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                for w in 0..r {
                    let rows = ring_left_keys(&ring, x, y, z, w);
                    if rows.is_empty() {
                        continue;
                    }
                    let cols = ring_right_keys(&ring, x, y, z, w);
                    let (xi, yi, zi, wi) = (x as i64, y as i64, z as i64, w as i64);
                    let sign = if (xi + yi + zi + wi) % 2 == 0 { 1.0 } else { -1.0 };
                    let m = Mat::from_fn(rows.len(), cols.len(), |i, j| {
                        let (e, f) = (rows[i].mid as i64, cols[j].mid as i64);
                        real(sign * (qn(2 * e + 1) * qn(2 * f + 1)).sqrt() * sixj(xi, yi, e, zi, wi, f))
                    });
                    t.insert(x, y, z, w, FBlock::new(rows, cols, m)?);
                }
            }
        }
    }
    Ok(t)
}
