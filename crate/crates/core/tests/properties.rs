use cdl_core::analysis::{classify_sign_pattern, factorial, h_eval, threshold};
use cdl_core::covering::{g_inf_conv, inf_conv, km_square_check, reflect};
use cdl_core::profiles::{inf_conv_profile, transform_profile};
use cdl_core::random::{random_profile, random_radial, rng};
use cdl_core::{Profile, SignPattern, Side, Transform};
use proptest::prelude::*;

fn profile(seed: u64) -> Profile {
    random_profile(&mut rng(seed))
}

fn radii(u: &Profile, v: &Profile) -> Vec<f64> {
    let mut r = u.sample_points(v);
    r.extend((1..40).map(|i| i as f64 * 0.17));
    r
}

/// `a ≤ b` up to a relative tolerance, with `∞ ≤ ∞`.
fn le(a: f64, b: f64) -> bool {
    a == b || a <= b + 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transforms_are_involutions(seed in any::<u64>(), alpha in 0.2f64..10.0) {
        let u = profile(seed);
        for kind in [Transform::Legendre, Transform::Polarity(alpha), Transform::GaugeJ] {
            let back = transform_profile(&transform_profile(&u, kind).unwrap(), kind).unwrap();
            prop_assert!(back.approx_eq(&u, 1e-12), "{kind:?}");
        }
    }

    #[test]
    fn dualities_reverse_order_and_gauge_keeps_it(a in any::<u64>(), b in any::<u64>(), alpha in 0.2f64..10.0) {
        let u = profile(a);
        let bigger = u.add(&profile(b));
        for kind in [Transform::Legendre, Transform::Polarity(alpha), Transform::GaugeJ] {
            let tu = transform_profile(&u, kind).unwrap();
            let tb = transform_profile(&bigger, kind).unwrap();
            for r in radii(&tu, &tb) {
                let (x, y) = (tu.eval(r), tb.eval(r));
                if kind.is_duality() {
                    prop_assert!(le(y, x), "{kind:?} at {r}: {y} > {x}");
                } else {
                    prop_assert!(le(x, y), "{kind:?} at {r}: {x} > {y}");
                }
            }
        }
    }

    #[test]
    fn inf_convolution_lies_below_both(a in any::<u64>(), b in any::<u64>()) {
        let (u, v) = (profile(a), profile(b));
        let w = inf_conv_profile(&u, &v);
        for r in radii(&u, &v) {
            prop_assert!(le(w.eval(r), u.eval(r)) && le(w.eval(r), v.eval(r)));
        }
    }

    #[test]
    fn convolution_sandwich(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = rng(seed);
        let phi = random_radial(&mut g, n, false).unwrap();
        let psi = cdl_core::RadialFunction::new(phi.body.clone(), random_profile(&mut g));
        let ic = inf_conv(&phi, &psi).unwrap().profile;
        let gc = g_inf_conv(&phi, &psi).unwrap().profile;
        for r in radii(&ic, &gc) {
            prop_assert!(le(2.0 * gc.eval(r / 2.0), ic.eval(r)));
            prop_assert!(le(ic.eval(r), 2.0 * gc.eval(r)));
            prop_assert!(le(gc.eval(r), phi.profile.eval(r)));
        }
    }

    #[test]
    fn square_sandwich_holds(seed in any::<u64>(), n in 1usize..=3) {
        let phi = random_radial(&mut rng(seed), n, false).unwrap();
        prop_assert!(km_square_check(&phi).is_ok());
    }

    #[test]
    fn reflection_is_an_involution(seed in any::<u64>(), n in 1usize..=3) {
        let phi = random_radial(&mut rng(seed), n, false).unwrap();
        let back = reflect(&reflect(&phi));
        prop_assert!(back.body.approx_eq(&phi.body, 1e-12));
        let x: Vec<f64> = (0..n).map(|k| 0.3 + 0.2 * k as f64).collect();
        let minus: Vec<f64> = x.iter().map(|v| -v).collect();
        let (a, b) = (reflect(&phi).eval(&x).unwrap(), phi.eval(&minus).unwrap());
        prop_assert!(a == b || (a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn santalo_ratio_in_exact_regime(seed in any::<u64>(), n in 1usize..=3, m in 1.0f64..30.0) {
        let alpha = threshold(n).unwrap() * m;
        let phi = random_radial(&mut rng(seed), n, false).unwrap();
        let r = phi.santalo_ratio(alpha, Side::Left).unwrap();
        let nf = factorial(n);
        prop_assert!(r <= 1.0 / nf + 1e-9);
        prop_assert!(r >= nf / alpha.powi(n as i32) - 1e-9);
    }

    #[test]
    fn sign_pattern_roots_solve_h(n in 1usize..=6, alpha in 0.05f64..12.0, lambda in 0.001f64..2.0) {
        match classify_sign_pattern(n, alpha, lambda).unwrap() {
            SignPattern::OneCrossing { z0 } => {
                prop_assert!((h_eval(n, alpha, z0).unwrap().0 - lambda).abs() <= 1e-10 * lambda.max(1.0));
            }
            SignPattern::ThreeRoots { z1, z2, z3 } => {
                prop_assert!(z1 < z2 && z2 < z3);
                for z in [z1, z2, z3] {
                    prop_assert!((h_eval(n, alpha, z).unwrap().0 - lambda).abs() <= 1e-10 * lambda.max(1.0));
                }
                let mid = h_eval(n, alpha, 0.5 * (z1 + z2)).unwrap().0;
                prop_assert!(mid > lambda);
            }
        }
    }

    #[test]
    fn symmetric_functions_are_centered(seed in any::<u64>(), n in 1usize..=3) {
        let phi = random_radial(&mut rng(seed), n, true).unwrap();
        let bar = phi.barycenter().unwrap();
        prop_assert!(bar.iter().all(|v| v.abs() < 1e-9));
    }
}
