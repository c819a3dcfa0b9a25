use super::target::{source_subalgebra, target_subalgebra};
use super::{BasisLabels, WeakHopfAlgebraData};
use crate::error::{Error, Result};
use crate::fusion::ring::GroupTable;
use crate::linalg::{self, zeros};
use crate::scalar::{ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Op,
    Cop,
    OpCop,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "op" => Ok(Variant::Op),
            "cop" => Ok(Variant::Cop),
            "op_cop" | "opcop" => Ok(Variant::OpCop),
            _ => Err(Error::Domain(format!("unknown variant {s}"))),
        }
    }
}

pub fn opposite_variant(h: &WeakHopfAlgebraData, variant: Variant) -> Result<WeakHopfAlgebraData> {
    let n = h.dim();
    let s_inv = linalg::inverse(&h.antipode).ok_or_else(|| Error::Singular("antipode is not invertible".into()))?;
    let flip_mult = matches!(variant, Variant::Op | Variant::OpCop);
    let flip_comult = matches!(variant, Variant::Cop | Variant::OpCop);
    let mult = if flip_mult {
        (0..n * n).map(|ij| h.mult[(ij % n) * n + ij / n].clone()).collect()
    } else {
        h.mult.clone()
    };
    let comult = if flip_comult {
        h.comult
            .iter()
            .map(|d| {
                let mut v: Vec<_> = d.iter().map(|&(p, q, c)| (q, p, c)).collect();
                v.sort_by_key(|t| (t.0, t.1));
                v
            })
            .collect()
    } else {
        h.comult.clone()
    };
    let antipode = if variant == Variant::OpCop {
        h.antipode.clone()
    } else {
        s_inv
    };
    let mut out = WeakHopfAlgebraData {
        basis: h.basis.clone(),
        mult,
        unit: h.unit.clone(),
        comult,
        counit: h.counit.clone(),
        antipode,
        target_idempotents: Vec::new(),
        source_idempotents: Vec::new(),
        notes: h.notes.clone(),
    };
    out.target_idempotents = target_subalgebra(&out)?.idempotents;
    out.source_idempotents = source_subalgebra(&out)?.idempotents;
    Ok(out)
}

/// kG₁ ⊕ kG₂ with blockwise group-algebra structure; Δ(1) = 1₁⊗1₁ + 1₂⊗1₂.
pub fn direct_sum_group_wha(g1: &GroupTable, g2: &GroupTable) -> Result<WeakHopfAlgebraData> {
    let groups = [g1, g2];
    let offsets = [0, g1.order()];
    let n = g1.order() + g2.order();
    let mut labels = Vec::with_capacity(n);
    for (k, g) in groups.iter().enumerate() {
        for i in 0..g.order() {
            labels.push(format!("g{}:{}", k + 1, i));
        }
    }
    let block = |i: usize| if i < offsets[1] { 0 } else { 1 };
    let mut mult = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (block(i), block(j));
            if bi == bj {
                let o = offsets[bi];
                mult[i * n + j] = vec![(o + groups[bi].mul(i - o, j - o), ONE)];
            }
        }
    }
    let mut unit = vec![ZERO; n];
    for (k, g) in groups.iter().enumerate() {
        unit[offsets[k] + g.identity()] = ONE;
    }
    let comult = (0..n).map(|i| vec![(i, i, ONE)]).collect();
    let counit = vec![ONE; n];
    let mut antipode = zeros(n, n);
    for i in 0..n {
        let o = offsets[block(i)];
        antipode[(o + groups[block(i)].inv(i - o), i)] = ONE;
    }
    let mut h = WeakHopfAlgebraData {
        basis: BasisLabels::Abstract(labels),
        mult,
        unit,
        comult,
        counit,
        antipode,
        target_idempotents: Vec::new(),
        source_idempotents: Vec::new(),
        notes: Vec::new(),
    };
    h.target_idempotents = target_subalgebra(&h)?.idempotents;
    h.source_idempotents = source_subalgebra(&h)?.idempotents;
    Ok(h)
}
