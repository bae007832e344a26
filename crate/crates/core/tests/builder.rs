use std::time::Duration;

use divchain::builder::assembly_pieces;
use divchain::{build_chain, count_a, longest_chain_exact, lower_bound_f, power_chain, Status};

#[test]
fn never_beats_the_optimum() {
    for x in 2..=40u64 {
        let built = build_chain(x, x).unwrap().len();
        let exact = longest_chain_exact(x, x, Duration::from_secs(120)).unwrap();
        assert_eq!(exact.status, Status::Exact);
        assert!(
            built <= exact.best_length,
            "x = {x}: {built} > {}",
            exact.best_length
        );
    }
}

#[test]
fn lower_bound_dominates_a_half() {
    for (x, y) in [(4u64, 4u64), (100, 100), (1000, 7), (3000, 3000)] {
        let lb = lower_bound_f(x, y).unwrap();
        assert!(lb.certificate.verify().is_ok());
        assert!(lb.bound as u64 >= count_a(x as f64 / 2.0, y, 1, 1, false).unwrap());
    }
    assert_eq!(lower_bound_f(1, 2).unwrap().bound, 1);
    assert!(lower_bound_f(0.5, 2).is_err());
}

#[test]
fn pieces_are_chains_before_assembly() {
    for x in (8..3000u64).step_by(13) {
        for y in [2, 3, 11, x] {
            let (d, e) = assembly_pieces(x, y).unwrap();
            assert!(d.verify().is_ok(), "D at ({x},{y})");
            assert!(e.verify().is_ok(), "E at ({x},{y})");
            assert!(d.glue(&e).unwrap().verify().is_ok(), "D-E at ({x},{y})");
        }
    }
}

#[test]
fn power_chain_is_descending() {
    let c = power_chain(100).unwrap();
    assert_eq!(c.entries(), &[64, 32, 16, 8, 4, 2]);
}

#[test]
fn rational_parameters() {
    let a = build_chain(100.5, 7.9).unwrap();
    let b = build_chain(100, 7).unwrap();
    assert_eq!(a, b);
}
