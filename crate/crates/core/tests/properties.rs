use proptest::prelude::*;

use riesz_snp::certify::{certify_firstcond, certify_invertibility, ModulusSet, Verdict};
use riesz_snp::eigen::EigenPair;
use riesz_snp::fourier::{g_series_eigenfunction, FourierProfile};
use riesz_snp::pelliptic::{kp, PModulus};
use riesz_snp::qtheta::{agm_complete_k, agm_jacobi_sn, modulus_from_nome, nome_from_modulus};
use riesz_snp::Sign;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classical_integral(mu in 0.0f64..0.999) {
        let k = kp(2.0, mu).unwrap();
        prop_assert!((k - agm_complete_k(mu)).abs() < 1e-10 * k.max(1.0));
    }

    #[test]
    fn classical_sine(mu in 0.01f64..0.99, t in -2.0f64..2.0) {
        let m = PModulus::new(2.0, mu).unwrap();
        let y = t * m.period();
        prop_assert!((m.snp(y).unwrap() - agm_jacobi_sn(y, mu)).abs() < 1e-9);
    }

    #[test]
    fn nome_round_trip(mu in 0.01f64..0.99) {
        let q = nome_from_modulus(mu).unwrap();
        prop_assert!((modulus_from_nome(q).unwrap() - mu).abs() < 1e-12);
    }

    #[test]
    fn eigenfunction_from_series(mu in 0.05f64..0.9, n in 1u32..4, x in 0.0f64..1.0) {
        let q = nome_from_modulus(mu).unwrap();
        let e = EigenPair::new(2.0, mu, n, Sign::Plus).unwrap();
        let s = g_series_eigenfunction(q, n, x, 400).unwrap();
        prop_assert!((s.value - e.eval(x).unwrap()).abs() < 1e-9 + s.tail_bound);
    }

    #[test]
    fn eigenfunction_zero_count(p in 1.2f64..6.0, mu in 0.0f64..0.95, n in 1u32..6) {
        let e = EigenPair::new(p, mu.max(1e-6), n, Sign::Minus).unwrap();
        prop_assert_eq!(e.sign_changes(997).unwrap(), (n - 1) as usize);
        prop_assert!(e.eval(0.0).unwrap().abs() < 1e-10);
        prop_assert!(e.eval(1.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn profile_is_odd_about_half(p in 1.3f64..5.0, mu in 0.0f64..0.95) {
        let prof = FourierProfile::compute(p, mu, 8).unwrap();
        for k in [2, 4, 6, 8] {
            prop_assert!(prof.tau(k).abs() < 1e-10);
        }
    }
}

#[test]
fn firstcond_implies_invertibility() {
    let mut checked = 0;
    for &p in &[1.5, 2.0, 3.0, 5.0, 8.0] {
        for &mu in &[0.3, 0.8] {
            let ms = ModulusSet::constant(mu).unwrap();
            if certify_firstcond(p, &ms).unwrap().verdict == Verdict::Pass {
                let inv = certify_invertibility(p, &ms, 51).unwrap();
                assert_eq!(inv.verdict, Verdict::Pass, "p={p} mu={mu}: {inv:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 10);
}
