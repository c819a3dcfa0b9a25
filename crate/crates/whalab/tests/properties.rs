use proptest::prelude::*;

use whalab::fusion::{fib_f_data, fib_ring, pointed_f_from_cocycle, pointed_fusion_ring, standard_cocycle, GroupTable};
use whalab::io::{
    bundle_from_file, load_bundle, to_json_string, wha_from_file, wha_to_file, BasisFile, BundleFile, WhaFile,
};
use whalab::module_cat::regular_module;
use whalab::quiver::{path_algebra, quiver_from_endofunctor, EndofunctorSpec, GradedPathAlgebra, PathProduct};
use whalab::report::Report;
use whalab::scalar::{approx_eq, checked_inv, RootOfUnity, Scalar, ONE};
use whalab::wha::{build_wha, direct_sum_group_wha};
use whalab::Tolerance;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-100.0f64..100.0, -100.0f64..100.0).prop_map(|(re, im)| Scalar::new(re, im))
}

/// Relative comparison, since products of three inputs reach 1e6.
fn close(a: Scalar, b: Scalar) -> bool {
    approx_eq(a, b, Tolerance::new(1e-9 * (1.0 + a.norm().max(b.norm()))).unwrap())
}

fn fib_paths(max_degree: usize) -> GradedPathAlgebra {
    let ring = fib_ring();
    let f = fib_f_data().table;
    let q = quiver_from_endofunctor(&regular_module(&ring, &f), &EndofunctorSpec::single(1)).unwrap();
    path_algebra(&q, max_degree)
}

fn z3_paths(max_degree: usize) -> GradedPathAlgebra {
    let c = standard_cocycle(3, 1).unwrap();
    let ring = pointed_fusion_ring(&c.group);
    let f = pointed_f_from_cocycle(&c);
    let spec = EndofunctorSpec::new([(1, 1), (2, 1)].into_iter().collect()).unwrap();
    path_algebra(
        &quiver_from_endofunctor(&regular_module(&ring, &f), &spec).unwrap(),
        max_degree,
    )
}

fn triple_product(p: &GradedPathAlgebra, a: usize, b: usize, c: usize) -> (Option<usize>, Option<usize>) {
    let step = |x: PathProduct, y: usize, left: bool| match x {
        PathProduct::Path(i) => match if left { p.multiply(i, y) } else { p.multiply(y, i) } {
            PathProduct::Path(k) => Some(k),
            _ => None,
        },
        _ => None,
    };
    (step(p.multiply(a, b), c, true), step(p.multiply(b, c), a, false))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(close((a * b) * c, a * (b * c)));
        prop_assert!(close((a + b) + c, a + (b + c)));
        prop_assert!(close(a * (b + c), a * b + a * c));
        prop_assert!(close(a * b, b * a));
        if let Ok(inv) = checked_inv(a, Tolerance::default()) {
            prop_assert!(close(a * inv, ONE));
        }
    }

    #[test]
    fn roots_of_unity_are_exact(n in 1u64..48, j in -200i64..200, k in -200i64..200) {
        let (x, y) = (RootOfUnity::new(n, j).unwrap(), RootOfUnity::new(n, k).unwrap());
        prop_assert_eq!(x.mul(y), RootOfUnity::new(n, j + k).unwrap());
        prop_assert_eq!(x.mul(x.inv()), RootOfUnity::one());
        prop_assert!(close(x.to_scalar() * y.to_scalar(), RootOfUnity::new(n, j + k).unwrap().to_scalar()));
    }

    #[test]
    fn fib_path_multiplication_is_associative(a in 0usize..200, b in 0usize..200, c in 0usize..200) {
        let p = fib_paths(6);
        let (a, b, c) = (a % p.dim(), b % p.dim(), c % p.dim());
        let (left, right) = triple_product(&p, a, b, c);
        let total: usize = [a, b, c].iter().map(|&i| p.degree_of(i)).sum();
        if total <= 6 {
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn z3_path_multiplication_is_associative(a in 0usize..500, b in 0usize..500, c in 0usize..500) {
        let p = z3_paths(5);
        let (a, b, c) = (a % p.dim(), b % p.dim(), c % p.dim());
        let (left, right) = triple_product(&p, a, b, c);
        let total: usize = [a, b, c].iter().map(|&i| p.degree_of(i)).sum();
        if total <= 5 {
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn vertex_sum_is_the_unit(i in 0usize..200) {
        let p = fib_paths(5);
        let i = i % p.dim();
        let (l, _) = p.mul(&p.unit(), &p.basis_vec(i));
        let (r, _) = p.mul(&p.basis_vec(i), &p.unit());
        prop_assert_eq!(&l, &p.basis_vec(i));
        prop_assert_eq!(&r, &p.basis_vec(i));
    }

    #[test]
    fn direct_sum_export_round_trips(n1 in 1usize..6, n2 in 1usize..6) {
        let h = direct_sum_group_wha(&GroupTable::cyclic(n1).unwrap(), &GroupTable::cyclic(n2).unwrap()).unwrap();
        let text = to_json_string(&wha_to_file(&h, &Report::new()));
        let file: WhaFile = serde_json::from_str(&text).unwrap();
        let (back, rep) = wha_from_file(&file).unwrap();
        prop_assert_eq!(&back.mult, &h.mult);
        prop_assert_eq!(&back.comult, &h.comult);
        prop_assert_eq!(&back.antipode, &h.antipode);
        prop_assert_eq!(to_json_string(&wha_to_file(&back, &rep)), text);
    }

    #[test]
    fn pointed_bundle_round_trips(n in 2usize..6, q in 0i64..6) {
        let b = load_bundle(&format!("builtin:vec:Z{n}:q{q}")).unwrap();
        let text = to_json_string(&b.to_file());
        let file: BundleFile = serde_json::from_str(&text).unwrap();
        let again = bundle_from_file(&file).unwrap();
        prop_assert_eq!(&again.digest, &b.digest);
        prop_assert_eq!(&again.f, &b.f);
        prop_assert_eq!(to_json_string(&again.to_file()), text);
    }
}

#[test]
fn picture_export_round_trips_bit_for_bit() {
    for spec in ["builtin:fib", "builtin:psu2:7", "builtin:vec:Z3:q1"] {
        let b = load_bundle(spec).unwrap();
        let h = build_wha(&b.ring, &b.f, &b.module, Tolerance::default()).unwrap();
        let text = to_json_string(&wha_to_file(&h, &Report::new()));
        let (back, _) = wha_from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        let bits = |v: &[Scalar]| v.iter().map(|c| (c.re.to_bits(), c.im.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&back.unit), bits(&h.unit), "{spec}");
        assert_eq!(bits(&back.counit), bits(&h.counit), "{spec}");
        assert_eq!(back.mult, h.mult, "{spec}");
        assert_eq!(back.comult, h.comult, "{spec}");
        assert_eq!(back.antipode, h.antipode, "{spec}");
        // Reloaded unit pairs with the counit as the original does.
        let eps_one: Scalar = back.unit.iter().zip(&back.counit).map(|(u, e)| u * e).sum();
        let orig: Scalar = h.unit.iter().zip(&h.counit).map(|(u, e)| u * e).sum();
        assert_eq!(eps_one, orig, "{spec}");
    }
    let b = load_bundle("builtin:fib").unwrap();
    let h = build_wha(&b.ring, &b.f, &b.module, Tolerance::default()).unwrap();
    match wha_to_file(&h, &Report::new()).basis {
        BasisFile::Picture(v) => assert_eq!(v.len(), 13),
        BasisFile::Abstract(_) => panic!("Fibonacci build should carry picture labels"),
    }
}
