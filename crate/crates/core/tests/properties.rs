use proptest::prelude::*;

use glaisher_core::identities::{finite_sum, verify, SumKind};
use glaisher_core::polyexact::{build_q_lemma1, build_q_scaled, f64_to_rat, parse_rat, rat_to_string};
use glaisher_core::report::{fmt_sig17, to_json};
use glaisher_core::specfrac::{defining_lhs, expansion_lemma1, expansion_lemma4, max_reassembly_error};
use glaisher_core::suite::verify_many;
use glaisher_core::{Cx, FamilyParams, QuadConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem1_holds_for_any_a(m in 0u32..6, a in 0.2f64..20.0) {
        let n = 2 * m + 1;
        let r = verify(&FamilyParams::th1(n, a), &QuadConfig::default()).unwrap();
        prop_assert!(r.pass, "{:?}", r);
        prop_assert!((r.lhs.re - a.atan() / 2.0).abs() <= 1e-10);
    }

    #[test]
    fn lemma1_reassembles(m in 0u32..5, a in 0.3f64..5.0, t in 0.01f64..0.99) {
        let e = expansion_lemma1(2 * m + 1, Cx::new(a, 0.0)).unwrap();
        let err = max_reassembly_error(&e, &[t], |z| defining_lhs(&e, z));
        prop_assert!(err <= 1e-9, "err {:e}", err);
    }

    #[test]
    fn lemma4_reassembles(m in 1u32..5, a in 0.3f64..5.0, t in 0.01f64..0.99) {
        let e = expansion_lemma4(2 * m, a).unwrap();
        let err = max_reassembly_error(&e, &[t], |z| defining_lhs(&e, z));
        prop_assert!(err <= 1e-9, "err {:e}", err);
    }

    #[test]
    fn lemma1_denominator_degree(n in 1u32..12, a in 0.1f64..8.0) {
        prop_assume!(a != 1.0);
        let q = build_q_lemma1(n, &f64_to_rat(a).unwrap()).unwrap();
        prop_assert_eq!(q.degree(), Some(n as usize));
    }

    #[test]
    fn sig17_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        let s = fmt_sig17(x).unwrap();
        prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = parse_rat(&format!("{p}/{q}")).unwrap();
        prop_assert_eq!(parse_rat(&rat_to_string(&r)).unwrap(), r);
    }
}

#[test]
fn scaled_denominator_has_even_powers_only() {
    for n in 1..=16 {
        let q = build_q_scaled(n).unwrap();
        assert_eq!(q.degree(), Some(2 * (n as usize / 2)), "n={n}");
        for (i, c) in q.coeff_strings().iter().enumerate().filter(|(i, _)| i % 2 == 1) {
            assert_eq!(c, "0", "n={n} power {i}");
        }
    }
}

#[test]
fn parallel_and_sequential_agree_bitwise() {
    let points: Vec<_> = [1, 3, 5, 7, 9, 15]
        .into_iter()
        .flat_map(|n| [0.5, 1.0, 2.0, 10.0].map(|a| FamilyParams::th1(n, a)))
        .chain([2, 4, 6].map(FamilyParams::th2))
        .collect();
    let cfg = QuadConfig::default();
    let par = verify_many(&points, &cfg, true).unwrap();
    let seq = verify_many(&points, &cfg, false).unwrap();
    let json = |rs: &[glaisher_core::VerificationReport]| rs.iter().map(|r| to_json(r, false)).collect::<Vec<_>>();
    assert_eq!(json(&par), json(&seq));
}

#[test]
fn sums_reject_wrong_parity() {
    assert!(finite_sum(SumKind::Lemma3, 2).is_err());
    assert!(finite_sum(SumKind::TanEven, 5).is_err());
    assert!(finite_sum(SumKind::Lemma3, 25).is_ok());
}
