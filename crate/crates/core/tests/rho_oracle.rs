//! ρ_n against an independent 50-digit bisection; the values come from
//! `tests/oracles/rho.py`.

use cdl_core::analysis::{compute_rho, q, rho_target};

const ORACLE: [(usize, f64); 10] = [
    (1, 0.17175145580969909165),
    (2, 0.16955372687916767109),
    (3, 0.16992585585087034074),
    (4, 0.17035677036956610711),
    (5, 0.17061332170338384596),
    (6, 0.17072025836838154595),
    (7, 0.17072388651796753059),
    (8, 0.17066020678293014097),
    (9, 0.17055387780215346289),
    (10, 0.17042127309473553788),
];

#[test]
fn rho_matches_high_precision_bisection() {
    for (n, want) in ORACLE {
        let got = compute_rho(n).unwrap();
        assert!((got - want).abs() < 1e-11, "n={n}: {got} vs {want}");
        assert!(got > 0.0 && got < 0.25);
        assert!((q(n, 4.0 * got) - rho_target(n)).abs() < 1e-10);
    }
}

#[test]
fn q_is_increasing_on_unit_interval() {
    for n in 1..=10 {
        let mut prev = 0.0;
        for i in 1..=1000 {
            let v = q(n, i as f64 / 1000.0);
            assert!(v > prev, "n={n} at {i}");
            prev = v;
        }
        assert!((prev - 1.0).abs() < 1e-15);
    }
}
