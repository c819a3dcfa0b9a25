use std::time::Instant;

use whalab::fusion::{
    fib_f_data, fib_ring, perron_frobenius_dims, pointed_f_from_cocycle, pointed_fusion_ring, psu2_f_data,
    psu2_fusion_ring, standard_cocycle, verify_cocycle, verify_pentagon, verify_ring_associativity, FSymbolTable,
    FusionRingData,
};
use whalab::module_cat::{regular_module, verify_module_pentagon};
use whalab::wha::build_wha;
use whalab::Tolerance;

fn builtins() -> Vec<(String, FusionRingData, FSymbolTable)> {
    let mut out = vec![("fib".to_string(), fib_ring(), fib_f_data().table)];
    for p in [5, 7, 11, 13] {
        out.push((
            format!("psu2:{p}"),
            psu2_fusion_ring(p).unwrap(),
            psu2_f_data(p).unwrap(),
        ));
    }
    for n in 2..=5 {
        for q in 0..n as i64 {
            let c = standard_cocycle(n, q).unwrap();
            out.push((
                format!("Z{n}:q{q}"),
                pointed_fusion_ring(&c.group),
                pointed_f_from_cocycle(&c),
            ));
        }
    }
    out
}

#[test]
fn rings_are_rigid_and_associative() {
    for (name, ring, _) in builtins() {
        let c = verify_ring_associativity(&ring);
        assert!(c.pass && c.max_deviation == 0.0, "{name}");
        assert!(ring.verify(Tolerance::default()).passed(), "{name}");
        assert_eq!(ring.dual[ring.unit], ring.unit, "{name}");
        assert!((0..ring.rank()).all(|i| ring.dual[ring.dual[i]] == i), "{name}");
        let pf = perron_frobenius_dims(&ring);
        for (d, p) in ring.qdims.iter().zip(&pf) {
            assert!((d - p).abs() < 1e-6, "{name}: {d} vs {p}");
        }
    }
}

#[test]
fn f_tables_pass_both_pentagons() {
    let tol = Tolerance::default();
    for (name, ring, f) in builtins() {
        let t = Instant::now();
        let c = verify_pentagon(&ring, &f, tol).unwrap();
        assert!(c.pass, "{name}: {:?}", c.counterexample);
        let m = regular_module(&ring, &f);
        assert!(verify_module_pentagon(&ring, &f, &m, tol).unwrap().pass, "{name}");
        assert!(t.elapsed().as_secs() < 30, "{name} too slow");
    }
}

#[test]
fn standard_cocycles_are_normalized() {
    for n in 2..=6 {
        for q in 0..n as i64 {
            assert!(verify_cocycle(&standard_cocycle(n, q).unwrap()).passed(), "Z{n} q={q}");
        }
    }
}

#[test]
fn dimension_is_sum_of_squared_fiber_dims() {
    for (name, ring, f) in builtins().into_iter().filter(|b| b.1.rank() <= 4) {
        let m = regular_module(&ring, &f);
        let h = build_wha(&ring, &f, &m, Tolerance::default()).unwrap();
        let expect: usize = (0..ring.rank()).map(|x| m.vertex_basis(x).len().pow(2)).sum();
        assert_eq!(h.dim(), expect, "{name}");
    }
}

#[test]
fn psu2_quantum_dimensions() {
    for p in [5u64, 7, 11, 13] {
        let ring = psu2_fusion_ring(p).unwrap();
        let s = (std::f64::consts::PI / p as f64).sin();
        for (j, d) in ring.qdims.iter().enumerate() {
            let want = ((2 * j + 1) as f64 * std::f64::consts::PI / p as f64).sin() / s;
            assert!((d - want).abs() < 1e-12, "p={p} j={j}");
        }
    }
    let p5 = psu2_fusion_ring(5).unwrap();
    assert_eq!(p5.fuse(1, 1).unwrap(), vec![(0, 1), (1, 1)]);
}
