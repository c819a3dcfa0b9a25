use std::time::Instant;

use whalab::fusion::{fib_f_data, fib_ring, pointed_f_from_cocycle, pointed_fusion_ring, standard_cocycle, GroupTable};
use whalab::module_cat::{direct_sum_module, regular_module};
use whalab::scalar::ONE;
use whalab::wha::{
    assemble_wha, build_wha, direct_sum_group_wha, opposite_variant, target_subalgebra, verify_wha_axioms,
    BuildOptions, Variant, WeakHopfAlgebraData,
};
use whalab::Tolerance;

fn fib() -> WeakHopfAlgebraData {
    let ring = fib_ring();
    let f = fib_f_data().table;
    build_wha(&ring, &f, &regular_module(&ring, &f), Tolerance::default()).unwrap()
}

fn pointed(n: usize, q: i64) -> WeakHopfAlgebraData {
    let c = standard_cocycle(n, q).unwrap();
    let ring = pointed_fusion_ring(&c.group);
    let f = pointed_f_from_cocycle(&c);
    build_wha(&ring, &f, &regular_module(&ring, &f), Tolerance::default()).unwrap()
}

#[test]
fn fib_face_algebra_passes() {
    let t = Instant::now();
    let h = fib();
    assert_eq!(h.dim(), 13);
    let rep = verify_wha_axioms(&h, Tolerance::default());
    assert!(rep.passed(), "{:#?}", rep.failing());
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn pointed_builds_pass() {
    for n in 2..=4 {
        for q in [0, 1] {
            let h = pointed(n, q);
            assert_eq!(h.dim(), n * n * n);
            let rep = verify_wha_axioms(&h, Tolerance::default());
            assert!(rep.passed(), "n={n} q={q}: {:?}", rep.failing());
        }
    }
}

#[test]
fn pointed_delta_has_unit_coefficients() {
    let h = pointed(2, 0);
    for d in &h.comult {
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|&(_, _, c)| c == ONE));
    }
}

#[test]
fn unnormalized_delta_is_detected() {
    let ring = fib_ring();
    let f = fib_f_data().table;
    let h = assemble_wha(
        &ring,
        &regular_module(&ring, &f),
        BuildOptions {
            normalized_delta: false,
        },
    )
    .unwrap();
    let rep = verify_wha_axioms(&h, Tolerance::default());
    assert!(!rep.passed());
}

#[test]
fn variants_pass() {
    let h = fib();
    for v in [Variant::Op, Variant::Cop, Variant::OpCop] {
        let hv = opposite_variant(&h, v).unwrap();
        let rep = verify_wha_axioms(&hv, Tolerance::default());
        assert!(rep.passed(), "{v:?}: {:?}", rep.failing());
    }
    let twice = opposite_variant(&opposite_variant(&h, Variant::OpCop).unwrap(), Variant::OpCop).unwrap();
    assert_eq!(twice.mult, h.mult);
    assert_eq!(twice.comult, h.comult);
}

#[test]
fn commutative_op_is_itself() {
    let z2 = GroupTable::cyclic(2).unwrap();
    let h = direct_sum_group_wha(&z2, &z2).unwrap();
    let op = opposite_variant(&h, Variant::Op).unwrap();
    assert_eq!(op.mult, h.mult);
}

#[test]
fn direct_sum_group_algebra() {
    let h = direct_sum_group_wha(&GroupTable::cyclic(2).unwrap(), &GroupTable::cyclic(3).unwrap()).unwrap();
    assert_eq!(h.dim(), 5);
    assert!(verify_wha_axioms(&h, Tolerance::default()).passed());
    let d1 = h.delta_one();
    assert_eq!(d1, vec![(0, 0, ONE), (2, 2, ONE)]);
    let t = target_subalgebra(&h).unwrap();
    assert_eq!(t.dim, 2);
    let triv = direct_sum_group_wha(&GroupTable::cyclic(1).unwrap(), &GroupTable::cyclic(1).unwrap()).unwrap();
    assert_eq!(target_subalgebra(&triv).unwrap().dim, 2);
}

#[test]
fn target_dims_match_module_rank() {
    let h = fib();
    let t = target_subalgebra(&h).unwrap();
    assert_eq!(t.dim, 2);
    assert!(t.commutative);
    for n in 2..=3 {
        assert_eq!(target_subalgebra(&pointed(n, 1)).unwrap().dim, n);
    }
}

#[test]
fn direct_sum_module_build() {
    let ring = fib_ring();
    let f = fib_f_data().table;
    let m = direct_sum_module(&regular_module(&ring, &f), 2).unwrap();
    let h = build_wha(&ring, &f, &m, Tolerance::default()).unwrap();
    assert_eq!(h.dim(), 4 * 4 + 6 * 6);
    assert_eq!(target_subalgebra(&h).unwrap().dim, 4);
}
