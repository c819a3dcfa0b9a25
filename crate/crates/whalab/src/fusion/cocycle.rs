use crate::error::{check_index, Result};
use crate::fusion::fsymbol::{FBlock, FSymbolTable, TreeKey};
use crate::fusion::ring::GroupTable;
use crate::linalg::Mat;
use crate::report::{Check, Report};
use crate::scalar::RootOfUnity;

/// Normalized 3-cocycle on a finite group with root-of-unity values.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle3 {
    pub group: GroupTable,
    values: Vec<RootOfUnity>,
}

impl Cocycle3 {
    pub fn trivial(group: GroupTable) -> Self {
        let n = group.order();
        Cocycle3 {
            group,
            values: vec![RootOfUnity::one(); n * n * n],
        }
    }

    /// Unlisted triples default to 1.
    pub fn from_values(group: GroupTable, values: &[(usize, usize, usize, RootOfUnity)]) -> Result<Self> {
        let mut c = Self::trivial(group);
        for &(a, b, d, v) in values {
            check_index("cocycle argument", a.max(b).max(d), c.group.order())?;
            c.set(a, b, d, v);
        }
        Ok(c)
    }

    pub fn value(&self, a: usize, b: usize, c: usize) -> RootOfUnity {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: RootOfUnity) {
        let n = self.group.order();
        self.values[(a * n + b) * n + c] = v;
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, RootOfUnity)> {
        let n = self.group.order();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push((a, b, c, self.value(a, b, c)));
                }
            }
        }
        out
    }
}

/// ω(a,b,c) = exp(2πi·q·a·(b + c − ((b+c) mod n)) / n²) on Z_n.
pub fn standard_cocycle(n: usize, q: i64) -> Result<Cocycle3> {
    let group = GroupTable::cyclic(n)?;
    let mut c = Cocycle3::trivial(group);
    let nn = (n * n) as u64;
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let carry = (b + d - (b + d) % n) as i64;
                c.set(a, b, d, RootOfUnity::new(nn, q * a as i64 * carry)?);
            }
        }
    }
    Ok(c)
}

pub fn verify_cocycle(c: &Cocycle3) -> Report {
    let g = &c.group;
    let n = g.order();
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                for e in 0..n {
                    let lhs = c.value(b, d, e).mul(c.value(a, g.mul(b, d), e)).mul(c.value(a, b, d));
                    let rhs = c.value(g.mul(a, b), d, e).mul(c.value(a, b, g.mul(d, e)));
                    if lhs != rhs {
                        bad.push(format!("({a},{b},{d},{e})"));
                    }
                }
            }
        }
    }
    let mut rep = Report::new();
    rep.push(Check::exact("cocycle_condition", n.pow(4), bad));
    let id = g.identity();
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for (label, v) in [
                ("(g,e,h)", c.value(a, id, b)),
                ("(e,g,h)", c.value(id, a, b)),
                ("(g,h,e)", c.value(a, b, id)),
            ] {
                if !v.is_one() {
                    bad.push(format!("{label} at ({a},{b})"));
                }
            }
        }
    }
    rep.push(Check::exact("cocycle_normalized", 3 * n * n, bad));
    rep
}

/// F(δ_a, δ_h, δ_b; δ_{ahb}) = ω(a,h,b), one 1×1 block per triple.
pub fn pointed_f_from_cocycle(c: &Cocycle3) -> FSymbolTable {
    let g = &c.group;
    let n = g.order();
    let mut t = FSymbolTable::new();
    for a in 0..n {
        for h in 0..n {
            for b in 0..n {
                let w = g.mul(g.mul(a, h), b);
                let m = Mat::from_element(1, 1, c.value(a, h, b).to_scalar());
                let block = FBlock::new(
                    vec![TreeKey::new(g.mul(a, h), 0, 0)],
                    vec![TreeKey::new(g.mul(h, b), 0, 0)],
                    m,
                )
                .expect("roots of unity are invertible");
                t.insert(a, h, b, w, block);
            }
        }
    }
    t
}
