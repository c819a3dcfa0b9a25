use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fusion::ring::FusionRingData;
use crate::linalg::{self, Mat};

/// Basis label of a two-vertex tree: intermediate simple plus the two vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeKey {
    pub mid: usize,
    pub left: u32,
    pub right: u32,
}

impl TreeKey {
    pub fn new(mid: usize, left: u32, right: u32) -> Self {
        TreeKey { mid, left, right }
    }
}

/// All keys (mid, l, r) with l < first(mid) and r < second(mid), in lexicographic order.
pub fn tree_keys(mids: usize, mults: impl Fn(usize) -> (u32, u32)) -> Vec<TreeKey> {
    let mut out = Vec::new();
    for mid in 0..mids {
        let (a, b) = mults(mid);
        for l in 0..a {
            for r in 0..b {
                out.push(TreeKey::new(mid, l, r));
            }
        }
    }
    out
}

/// One associator block: rows label ((x y) z) trees, columns label (x (y z)) trees.
#[derive(Debug, Clone, PartialEq)]
pub struct FBlock {
    rows: Vec<TreeKey>,
    cols: Vec<TreeKey>,
    matrix: Mat,
    inverse: Mat,
    row_index: HashMap<TreeKey, usize>,
    col_index: HashMap<TreeKey, usize>,
}

impl FBlock {
    pub fn new(rows: Vec<TreeKey>, cols: Vec<TreeKey>, matrix: Mat) -> Result<Self> {
        if matrix.nrows() != rows.len() || matrix.ncols() != cols.len() {
            return Err(Error::Validation {
                location: "F block".into(),
                message: format!(
                    "matrix is {}x{} but has {} rows and {} cols",
                    matrix.nrows(),
                    matrix.ncols(),
                    rows.len(),
                    cols.len()
                ),
            });
        }
        let inverse = linalg::inverse(&matrix).ok_or_else(|| Error::Singular("F block is not invertible".into()))?;
        let row_index = rows.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let col_index = cols.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Ok(FBlock {
            rows,
            cols,
            matrix,
            inverse,
            row_index,
            col_index,
        })
    }

    pub fn identity(keys: Vec<TreeKey>) -> Self {
        let n = keys.len();
        FBlock::new(keys.clone(), keys, linalg::identity(n)).expect("identity is invertible")
    }

    pub fn rows(&self) -> &[TreeKey] {
        &self.rows
    }

    pub fn cols(&self) -> &[TreeKey] {
        &self.cols
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn inverse(&self) -> &Mat {
        &self.inverse
    }

    pub fn row(&self, k: &TreeKey) -> Option<usize> {
        self.row_index.get(k).copied()
    }

    pub fn col(&self, k: &TreeKey) -> Option<usize> {
        self.col_index.get(k).copied()
    }

    /// Same block with entries replaced; inverse recomputed.
    pub fn with_matrix(&self, matrix: Mat) -> Result<Self> {
        FBlock::new(self.rows.clone(), self.cols.clone(), matrix)
    }
}

/// Associator data keyed by (x, y, z, w).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FSymbolTable {
    blocks: BTreeMap<(usize, usize, usize, usize), FBlock>,
}

impl FSymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: usize, y: usize, z: usize, w: usize, block: FBlock) {
        self.blocks.insert((x, y, z, w), block);
    }

    pub fn get(&self, x: usize, y: usize, z: usize, w: usize) -> Option<&FBlock> {
        self.blocks.get(&(x, y, z, w))
    }

    pub fn require(&self, x: usize, y: usize, z: usize, w: usize) -> Result<&FBlock> {
        self.get(x, y, z, w)
            .ok_or_else(|| Error::Incomplete(format!("missing associator block ({x},{y},{z};{w})")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize, usize), &FBlock)> {
        self.blocks.iter()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Identity blocks on every admissible quadruple of the ring.
    pub fn trivial(ring: &FusionRingData) -> Result<Self> {
        let r = ring.rank();
        let mut t = FSymbolTable::new();
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    for w in 0..r {
                        let rows = ring_left_keys(ring, x, y, z, w);
                        let cols = ring_right_keys(ring, x, y, z, w);
                        if rows.is_empty() && cols.is_empty() {
                            continue;
                        }
                        if rows.len() != cols.len() {
                            return Err(Error::Validation {
                                location: format!("F({x},{y},{z};{w})"),
                                message: "ring is not associative here".into(),
                            });
                        }
                        let n = rows.len();
                        t.insert(x, y, z, w, FBlock::new(rows, cols, linalg::identity(n))?);
                    }
                }
            }
        }
        Ok(t)
    }

    /// Every admissible quadruple has a block with exactly the canonical keys, and nothing else.
    pub fn validate(&self, ring: &FusionRingData) -> Result<()> {
        let r = ring.rank();
        for (&(x, y, z, w), b) in &self.blocks {
            if x.max(y).max(z).max(w) >= r {
                return Err(Error::Validation {
                    location: format!("F({x},{y},{z};{w})"),
                    message: "index out of range".into(),
                });
            }
            if b.rows() != ring_left_keys(ring, x, y, z, w).as_slice()
                || b.cols() != ring_right_keys(ring, x, y, z, w).as_slice()
            {
                return Err(Error::Validation {
                    location: format!("F({x},{y},{z};{w})"),
                    message: "row/column labels do not match the fusion rules".into(),
                });
            }
        }
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    for w in 0..r {
                        if !ring_left_keys(ring, x, y, z, w).is_empty() && self.get(x, y, z, w).is_none() {
                            return Err(Error::Incomplete(format!("missing associator block ({x},{y},{z};{w})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// ((x y)→e, (e z)→w) trees.
pub fn ring_left_keys(ring: &FusionRingData, x: usize, y: usize, z: usize, w: usize) -> Vec<TreeKey> {
    tree_keys(ring.rank(), |e| (ring.n(x, y, e), ring.n(e, z, w)))
}

/// ((y z)→f, (x f)→w) trees.
pub fn ring_right_keys(ring: &FusionRingData, x: usize, y: usize, z: usize, w: usize) -> Vec<TreeKey> {
    tree_keys(ring.rank(), |f| (ring.n(y, z, f), ring.n(x, f, w)))
}
