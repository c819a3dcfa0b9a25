use whalab::action::{
    build_action, induce_bimodule, verify_action, verify_bimodule, verify_monoidal_structure,
    verify_pointed_coefficients, HActionOnPaths, ModuleAlgebra, DEFAULT_SEED,
};
use whalab::fusion::{
    fib_f_data, fib_ring, pointed_f_from_cocycle, pointed_fusion_ring, standard_cocycle, FSymbolTable, FusionRingData,
};
use whalab::module_cat::regular_module;
use whalab::quiver::EndofunctorSpec;
use whalab::report::Report;
use whalab::wha::build_wha;
use whalab::{Exec, Tolerance};

fn action(ring: &FusionRingData, f: &FSymbolTable, q: usize, max_degree: usize) -> HActionOnPaths {
    let m = regular_module(ring, f);
    let h = build_wha(ring, f, &m, Tolerance::default()).unwrap();
    build_action(ring, f, &m, &h, &EndofunctorSpec::single(q), max_degree).unwrap()
}

fn fib_action(max_degree: usize) -> HActionOnPaths {
    action(&fib_ring(), &fib_f_data().table, 1, max_degree)
}

fn z3_action(q: i64) -> (HActionOnPaths, whalab::fusion::Cocycle3) {
    let omega = standard_cocycle(3, q).unwrap();
    let ring = pointed_fusion_ring(&omega.group);
    let f = pointed_f_from_cocycle(&omega);
    (action(&ring, &f, 1, 3), omega)
}

fn show(rep: &Report) {
    for c in &rep.checks {
        println!(
            "{:<34} pass={} dev={:.2e} n={} {:?}",
            c.name, c.pass, c.max_deviation, c.instances, c.counterexample
        );
    }
}

#[test]
fn fib_action_passes() {
    let a = fib_action(3);
    let rep = verify_action(&a, Tolerance::default(), 3, DEFAULT_SEED, Exec::default());
    show(&rep);
    assert!(rep.passed(), "{:?}", rep.failing());
}

#[test]
fn pointed_actions_pass() {
    for q in [0, 1, 2] {
        let (a, _) = z3_action(q);
        let rep = verify_action(&a, Tolerance::default(), 3, DEFAULT_SEED, Exec::default());
        show(&rep);
        assert!(rep.passed(), "q={q}: {:?}", rep.failing());
    }
}

#[test]
fn pointed_coefficients_follow_the_associator() {
    let (a, omega) = z3_action(1);
    let rep = verify_pointed_coefficients(&a, &omega, Tolerance::default()).unwrap();
    show(&rep);
    assert!(rep.get("cocycle_coefficients_associator").unwrap().pass);
    let (a0, omega0) = z3_action(0);
    assert!(verify_pointed_coefficients(&a0, &omega0, Tolerance::default())
        .unwrap()
        .passed());
}

#[test]
fn unit_acts_as_identity() {
    let a = fib_action(2);
    for p in 0..a.paths.dim() {
        let mut e = a.paths.zero();
        e[p] = whalab::scalar::ONE;
        let got = a.act(&a.h.unit, &e);
        assert!(whalab::scalar::max_dev(&got, &e) < 1e-12);
    }
}

#[test]
fn perturbed_braiding_fails() {
    let mut a = fib_action(2);
    let key = *a.tensor.entries().find(|(_, t)| !t.is_empty()).unwrap().0;
    a.tensor.terms_mut(key.0, key.1, key.2).unwrap()[0].coeff *= 1.05;
    let (ring, module, h, paths, tensor) = (
        a.ring.clone(),
        a.module.clone(),
        a.h.clone(),
        a.paths.clone(),
        a.tensor.clone(),
    );
    let broken = HActionOnPaths::new(&ring, &module, h, paths, tensor).unwrap();
    let rep = verify_action(&broken, Tolerance::default(), 2, DEFAULT_SEED, Exec::default());
    assert!(!rep.passed());
}

#[test]
fn identity_functor_is_diagonal() {
    let a = action(&fib_ring(), &fib_f_data().table, 0, 2);
    assert!(verify_action(&a, Tolerance::default(), 2, DEFAULT_SEED, Exec::default()).passed());
    for h in 0..a.hopf_dim() {
        for p in 0..a.paths.dim() {
            let path = a.paths.path(p);
            for &(k, _) in a.act_basis(h, p) {
                assert_eq!(a.paths.path(k).degree(), path.degree());
            }
        }
    }
}

#[test]
fn fib_bimodules() {
    let a = fib_action(2);
    let tol = Tolerance::default();
    let tau = induce_bimodule(&a, 1).unwrap();
    assert_eq!(tau.base_dim(), 3);
    let rep = verify_bimodule(&tau, tol);
    show(&rep);
    assert!(rep.passed());
    let one = induce_bimodule(&a, 0).unwrap();
    assert_eq!(one.base_dim(), 2);
    let rep = verify_bimodule(&one, tol);
    assert!(rep.get("trivial_corep_is_regular").unwrap().pass);
    assert!(rep.passed());

    let (j, rep) = verify_monoidal_structure(&a, 1, 1, tol).unwrap();
    show(&rep);
    assert_eq!(j.domain_base_dim, 5);
    assert!(rep.passed());
    let (j, rep) = verify_monoidal_structure(&a, 0, 0, tol).unwrap();
    assert_eq!(j.domain_base_dim, 2);
    assert!(rep.passed());
}

#[test]
fn target_action_on_direct_sum() {
    use whalab::action::{verify_module_algebra, verify_unit_leg_triviality, TargetAction};
    use whalab::fusion::GroupTable;
    let h =
        whalab::wha::direct_sum_group_wha(&GroupTable::cyclic(2).unwrap(), &GroupTable::cyclic(3).unwrap()).unwrap();
    let t = TargetAction::new(h).unwrap();
    assert_eq!(t.dim(), 2);
    let tol = Tolerance::default();
    assert!(verify_unit_leg_triviality(&t, tol).passed());
    assert!(verify_module_algebra(&t, tol, 0).passed());
}

#[test]
fn z2_monoidal_reindexing() {
    let omega = standard_cocycle(2, 1).unwrap();
    let ring = pointed_fusion_ring(&omega.group);
    let a = action(&ring, &pointed_f_from_cocycle(&omega), 1, 2);
    let (j, rep) = verify_monoidal_structure(&a, 1, 1, Tolerance::default()).unwrap();
    assert!(rep.passed());
    // Each domain vector lands on exactly one vector of F(0), with a unit-modulus coefficient.
    for c in 0..j.domain.len() {
        let col: Vec<_> = (0..j.codomain.len())
            .filter(|&i| j.matrix[(i, c)].norm() > 1e-12)
            .collect();
        assert_eq!(col.len(), 1);
        assert!((j.matrix[(col[0], c)].norm() - 1.0).abs() < 1e-12);
        assert_eq!(j.codomain[col[0]].0, 0);
    }
}
