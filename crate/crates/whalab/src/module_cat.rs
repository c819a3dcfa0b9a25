//! Module categories over a fusion ring and the recoupling data derived from them.

use std::collections::{BTreeMap, HashMap};

use crate::error::{check_index, Error, Result};
use crate::exec::Exec;
use crate::fusion::fsymbol::{tree_keys, FBlock, FSymbolTable, TreeKey};
use crate::fusion::pentagon::{mixed_pentagon_deviations, ActionMults};
use crate::fusion::ring::FusionRingData;
use crate::linalg::Mat;
use crate::report::{Check, Report};
use crate::scalar::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleCategoryData {
    pub m_simples: Vec<String>,
    c_rank: usize,
    /// A[x][a][b] = dim M(b, x▷a).
    action: Vec<u32>,
    pub mf: FSymbolTable,
    /// Set when the module is a direct sum of copies of the regular module: simple `i` is
    /// copy `i / rank` of ring simple `i % rank`.
    regular_copies: Option<usize>,
}

/// A basis vector of M(source, x▷target).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub source: usize,
    pub target: usize,
    pub label: u32,
}

impl ModuleCategoryData {
    /// `entries` are (x, a, b, dim M(b, x▷a)).
    pub fn new(
        m_simples: Vec<String>,
        ring: &FusionRingData,
        entries: &[(usize, usize, usize, u32)],
        mf: FSymbolTable,
    ) -> Result<Self> {
        let (r, m) = (ring.rank(), m_simples.len());
        let mut action = vec![0u32; r * m * m];
        for &(x, a, b, k) in entries {
            check_index("acting simple", x, r)?;
            check_index("module simple", a.max(b), m)?;
            action[(x * m + a) * m + b] = k;
        }
        Ok(ModuleCategoryData {
            m_simples,
            c_rank: r,
            action,
            mf,
            regular_copies: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.m_simples.len()
    }

    pub fn c_rank(&self) -> usize {
        self.c_rank
    }

    pub fn regular_copies(&self) -> Option<usize> {
        self.regular_copies
    }

    /// Ring simple underlying a module simple, for regular-type modules.
    pub fn underlying(&self, m: usize) -> Option<usize> {
        self.regular_copies.map(|_| m % self.c_rank)
    }

    pub fn copy_of(&self, m: usize) -> Option<usize> {
        self.regular_copies.map(|_| m / self.c_rank)
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let m = self.rank();
        let mut out = Vec::new();
        for x in 0..self.c_rank {
            for a in 0..m {
                for b in 0..m {
                    let k = self.a(x, a, b);
                    if k > 0 {
                        out.push((x, a, b, k));
                    }
                }
            }
        }
        out
    }

    /// dim M(b, x▷a).
    pub fn a(&self, x: usize, a: usize, b: usize) -> u32 {
        let m = self.rank();
        self.action[(x * m + a) * m + b]
    }

    pub fn set_a(&mut self, x: usize, a: usize, b: usize, k: u32) {
        let m = self.rank();
        self.action[(x * m + a) * m + b] = k;
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.m_simples.iter().position(|s| s == label)
    }

    /// Basis of V_x = ⊕ M(a, x▷c), ordered by (source, target, label).
    pub fn vertex_basis(&self, x: usize) -> Vec<Vertex> {
        let m = self.rank();
        let mut out = Vec::new();
        for source in 0..m {
            for target in 0..m {
                for label in 0..self.a(x, target, source) {
                    out.push(Vertex { source, target, label });
                }
            }
        }
        out
    }

    /// ((x y)→z, z▷m→n) trees.
    pub fn left_keys(&self, ring: &FusionRingData, x: usize, y: usize, m: usize, n: usize) -> Vec<TreeKey> {
        tree_keys(ring.rank(), |z| (ring.n(x, y, z), self.a(z, m, n)))
    }

    /// (y▷m→c, x▷c→n) trees.
    pub fn right_keys(&self, x: usize, y: usize, m: usize, n: usize) -> Vec<TreeKey> {
        tree_keys(self.rank(), |c| (self.a(y, m, c), self.a(x, c, n)))
    }

    /// Unit action, mixed multiplicity associativity, and block coverage of mF.
    pub fn validate(&self, ring: &FusionRingData) -> Result<()> {
        if ring.rank() != self.c_rank {
            return Err(Error::Validation {
                location: "module".into(),
                message: "module built over a ring of different rank".into(),
            });
        }
        let report = self.verify_multiplicities(ring);
        if !report.passed() {
            return Err(Error::Validation {
                location: "module.action".into(),
                message: format!("{:?}", report.failing()),
            });
        }
        let (r, m) = (ring.rank(), self.rank());
        for (&(x, y, a, b), blk) in self.mf.iter() {
            let loc = format!("mF({x},{y},{a};{b})");
            if x.max(y) >= r || a.max(b) >= m {
                return Err(Error::Validation {
                    location: loc,
                    message: "index out of range".into(),
                });
            }
            if blk.rows() != self.left_keys(ring, x, y, a, b).as_slice()
                || blk.cols() != self.right_keys(x, y, a, b).as_slice()
            {
                return Err(Error::Validation {
                    location: loc,
                    message: "row/column labels do not match the action rules".into(),
                });
            }
        }
        for x in 0..r {
            for y in 0..r {
                for a in 0..m {
                    for b in 0..m {
                        if !self.left_keys(ring, x, y, a, b).is_empty() && self.mf.get(x, y, a, b).is_none() {
                            return Err(Error::Incomplete(format!(
                                "missing module associator block ({x},{y},{a};{b})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact integer checks on the action tensor.
    pub fn verify_multiplicities(&self, ring: &FusionRingData) -> Report {
        let (r, m) = (ring.rank(), self.rank());
        let mut rep = Report::new();
        let mut bad = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.a(ring.unit, a, b) != u32::from(a == b) {
                    bad.push(format!("({a},{b})"));
                }
            }
        }
        rep.push(Check::exact("module_unit_action", m * m, bad));
        let mut bad = Vec::new();
        for x in 0..r {
            for y in 0..r {
                for a in 0..m {
                    for b in 0..m {
                        let lhs: u64 = (0..m).map(|c| self.a(y, a, c) as u64 * self.a(x, c, b) as u64).sum();
                        let rhs: u64 = (0..r).map(|z| ring.n(x, y, z) as u64 * self.a(z, a, b) as u64).sum();
                        if lhs != rhs {
                            bad.push(format!("(x,y,a,b)=({x},{y},{a},{b}): {lhs} != {rhs}"));
                        }
                    }
                }
            }
        }
        rep.push(Check::exact("module_associativity", r * r * m * m, bad));
        rep
    }
}

impl ActionMults for ModuleCategoryData {
    fn module_rank(&self) -> usize {
        self.rank()
    }
    fn a(&self, x: usize, m: usize, n: usize) -> u32 {
        ModuleCategoryData::a(self, x, m, n)
    }
}

pub fn regular_module(ring: &FusionRingData, f: &FSymbolTable) -> ModuleCategoryData {
    let mut m = ModuleCategoryData::new(ring.simples.clone(), ring, &ring.entries(), f.clone())
        .expect("ring indices are in range");
    m.regular_copies = Some(1);
    m
}

pub fn direct_sum_module(m: &ModuleCategoryData, k: usize) -> Result<ModuleCategoryData> {
    if k == 0 {
        return Err(Error::Domain("direct sum of zero copies".into()));
    }
    if k == 1 {
        return Ok(m.clone());
    }
    let rank = m.rank();
    let simples = (0..k)
        .flat_map(|c| m.m_simples.iter().map(move |s| format!("{s}[{c}]")))
        .collect();
    let shift = |key: &TreeKey, by: usize| TreeKey::new(key.mid + by, key.left, key.right);
    let mut mf = FSymbolTable::new();
    let mut entries = Vec::new();
    for c in 0..k {
        let off = c * rank;
        for (x, a, b, mult) in m.entries() {
            entries.push((x, a + off, b + off, mult));
        }
        for (&(x, y, a, b), blk) in m.mf.iter() {
            let cols = blk.cols().iter().map(|key| shift(key, off)).collect();
            mf.insert(
                x,
                y,
                a + off,
                b + off,
                FBlock::new(blk.rows().to_vec(), cols, blk.matrix().clone())?,
            );
        }
    }
    let mut out = ModuleCategoryData {
        m_simples: simples,
        c_rank: m.c_rank,
        action: vec![0; m.c_rank * rank * rank * k * k],
        mf,
        regular_copies: m.regular_copies.map(|n| n * k),
    };
    for (x, a, b, mult) in entries {
        out.set_a(x, a, b, mult);
    }
    Ok(out)
}

pub fn verify_module_pentagon(
    ring: &FusionRingData,
    f: &FSymbolTable,
    m: &ModuleCategoryData,
    tol: Tolerance,
) -> Result<Check> {
    verify_module_pentagon_with(ring, f, m, tol, Exec::default())
}

pub fn verify_module_pentagon_with(
    ring: &FusionRingData,
    f: &FSymbolTable,
    m: &ModuleCategoryData,
    tol: Tolerance,
    exec: Exec,
) -> Result<Check> {
    f.validate(ring)?;
    m.validate(ring)?;
    let samples = mixed_pentagon_deviations(ring, f, m, &m.mf, exec)?;
    Ok(Check::from_samples("module_pentagon", samples, tol))
}

/// dim M(a, x▷c).
pub fn hom_dim(m: &ModuleCategoryData, a: usize, x: usize, c: usize) -> Result<u32> {
    check_index("module simple", a.max(c), m.rank())?;
    check_index("acting simple", x, m.c_rank())?;
    Ok(m.a(x, c, a))
}

/// Composable pair e₁ ∈ M(a, y▷c), e₂ ∈ M(c, z▷b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComposablePair {
    pub middle: usize,
    pub e1: u32,
    pub e2: u32,
}

/// Fused vector: α ∈ C(x, y⊗z) and h ∈ M(a, x▷b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusedVector {
    pub x: usize,
    pub alpha: u32,
    pub h: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecouplingBlock {
    pub pairs: Vec<ComposablePair>,
    pub fused: Vec<FusedVector>,
    /// Γ: rows are pairs, columns are fused vectors.
    pub gamma: Mat,
    pub gamma_inv: Mat,
    pair_index: HashMap<ComposablePair, usize>,
    fused_index: HashMap<FusedVector, usize>,
}

impl RecouplingBlock {
    pub fn pair(&self, p: &ComposablePair) -> Option<usize> {
        self.pair_index.get(p).copied()
    }

    pub fn fused_pos(&self, f: &FusedVector) -> Option<usize> {
        self.fused_index.get(f).copied()
    }
}

/// Γ for a fixed ordered pair (y, z), one block per endpoint pair (a, b).
#[derive(Debug, Clone, PartialEq)]
pub struct RecouplingTensor {
    pub y: usize,
    pub z: usize,
    pub blocks: BTreeMap<(usize, usize), RecouplingBlock>,
}

impl RecouplingTensor {
    pub fn block(&self, a: usize, b: usize) -> Option<&RecouplingBlock> {
        self.blocks.get(&(a, b))
    }
}

/// Stacking e₁ over e₂ and recoupling through m_{y,z,b} gives the fused expansion.
pub fn recoupling_tensor(
    ring: &FusionRingData,
    m: &ModuleCategoryData,
    y: usize,
    z: usize,
) -> Result<RecouplingTensor> {
    check_index("acting simple", y.max(z), ring.rank())?;
    let mut blocks = BTreeMap::new();
    for a in 0..m.rank() {
        for b in 0..m.rank() {
            let cols = m.right_keys(y, z, b, a);
            if cols.is_empty() {
                continue;
            }
            let blk = m.mf.require(y, z, b, a)?;
            let pairs: Vec<_> = blk
                .cols()
                .iter()
                .map(|k| ComposablePair {
                    middle: k.mid,
                    e1: k.right,
                    e2: k.left,
                })
                .collect();
            let fused: Vec<_> = blk
                .rows()
                .iter()
                .map(|k| FusedVector {
                    x: k.mid,
                    alpha: k.left,
                    h: k.right,
                })
                .collect();
            let pair_index = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let fused_index = fused.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            blocks.insert(
                (a, b),
                RecouplingBlock {
                    pairs,
                    fused,
                    gamma: blk.inverse().clone(),
                    gamma_inv: blk.matrix().clone(),
                    pair_index,
                    fused_index,
                },
            );
        }
    }
    Ok(RecouplingTensor { y, z, blocks })
}

pub fn weak_fiber_dims(ring: &FusionRingData, m: &ModuleCategoryData) -> Vec<usize> {
    (0..ring.rank())
        .map(|x| {
            (0..m.rank())
                .flat_map(|a| (0..m.rank()).map(move |c| (a, c)))
                .map(|(a, c)| m.a(x, c, a) as usize)
                .sum()
        })
        .collect()
}
