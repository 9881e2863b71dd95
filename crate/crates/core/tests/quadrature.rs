use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use glaisher_core::identities::{full_integrand, integrand, verify, weight_mode, FamilyParams};
use glaisher_core::quad::{integrate_01_weighted, integrate_semi_infinite, integrate_segment};
use glaisher_core::{Cx, QuadConfig, QuadResult, Scheme, WeightMode};

type Case = (&'static str, Box<dyn Fn(&QuadConfig) -> QuadResult>, f64);

// ten integrands with closed forms
fn battery() -> Vec<Case> {
    let re = |f: fn(f64) -> f64| move |t: f64| Cx::new(f(t), 0.0);
    vec![
        ("t^7", Box::new(move |c| integrate_01_weighted(re(|t| t.powi(7)), WeightMode::None, c).unwrap()), 0.125),
        ("exp", Box::new(move |c| integrate_01_weighted(re(f64::exp), WeightMode::None, c).unwrap()), 1f64.exp() - 1.0),
        ("1/(1+t^2)", Box::new(move |c| integrate_01_weighted(re(|t| 1.0 / (1.0 + t * t)), WeightMode::None, c).unwrap()), PI / 4.0),
        ("1/(1+t)", Box::new(move |c| integrate_01_weighted(re(|t| 1.0 / (1.0 + t)), WeightMode::None, c).unwrap()), LN_2),
        ("w", Box::new(move |c| integrate_01_weighted(re(|_| 1.0), WeightMode::InvSqrt1mt2, c).unwrap()), FRAC_PI_2),
        ("t^2 w", Box::new(move |c| integrate_01_weighted(re(|t| t * t), WeightMode::InvSqrt1mt2, c).unwrap()), PI / 4.0),
        ("cos(5t)", Box::new(move |c| integrate_01_weighted(re(|t| (5.0 * t).cos()), WeightMode::None, c).unwrap()), 5f64.sin() / 5.0),
        ("e^-x", Box::new(move |c| integrate_semi_infinite(|x| (-x).exp(), 1.0, c).unwrap()), 1.0),
        ("x/sinh x", Box::new(move |c| integrate_semi_infinite(|x| if x == 0.0 { 1.0 } else { x / x.sinh() }, 1.0, c).unwrap()), PI * PI / 4.0),
        (
            "z^2 on [0, 1+i]",
            Box::new(move |c| integrate_segment(|z| z * z, Cx::new(0.0, 0.0), Cx::new(1.0, 1.0), c).unwrap()),
            // (1+i)^3 / 3 has real part -2/3
            -2.0 / 3.0,
        ),
    ]
}

#[test]
fn error_estimates_are_honest() {
    for scheme in [Scheme::SubstGauss, Scheme::DoubleExp] {
        for tol in [1e-6, 1e-10, 1e-12] {
            let cfg = QuadConfig::default().with_scheme(scheme).with_tol(tol);
            for (name, f, exact) in battery() {
                let r = f(&cfg);
                assert!(r.converged, "{name} {scheme:?} tol={tol}");
                let err = (r.value.re - exact).abs();
                assert!(
                    err <= 10.0 * r.error_estimate.max(f64::EPSILON),
                    "{name} {scheme:?} tol={tol}: err {err:e} vs estimate {:e}",
                    r.error_estimate
                );
            }
        }
    }
}

fn verification_points() -> Vec<FamilyParams> {
    let mut ps = Vec::new();
    for n in [1, 3, 5, 7, 9, 15] {
        for a in [0.5, 1.0, 2.0, 10.0] {
            ps.push(FamilyParams::th1(n, a));
        }
    }
    for n in [2, 4, 6, 8, 10] {
        ps.push(FamilyParams::th2(n));
    }
    for (n, k) in [(2, 0), (4, 0), (4, 1), (6, 0), (6, 2), (8, 3)] {
        ps.push(FamilyParams::th3(n, k));
    }
    ps
}

#[test]
fn schemes_agree_on_verification_integrands() {
    let gauss = QuadConfig::default();
    let de = QuadConfig::default().with_scheme(Scheme::DoubleExp);
    for p in verification_points() {
        let g = verify(&p, &gauss).unwrap();
        let d = verify(&p, &de).unwrap();
        let bound = 10.0 * gauss.abs_tol.max(gauss.rel_tol * g.lhs.norm());
        assert!((g.lhs - d.lhs).norm() <= bound, "{p:?}: {} vs {}", g.lhs, d.lhs);
    }
}

#[test]
fn glaisher_integrals_agree_across_schemes() {
    let de = QuadConfig::default().with_scheme(Scheme::DoubleExp);
    for p in [0.5, 1.0, 2.0].map(FamilyParams::glaisher1).into_iter().chain([FamilyParams::glaisher2()]) {
        let r = verify(&p, &de).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn weighted_integrands_are_finite_at_both_ends() {
    for p in verification_points() {
        assert!(weight_mode(p.family).is_some());
        for t in [0.0, 1e-300, 1e-8, 0.5, 1.0 - 1e-12, 1.0] {
            let v = integrand(&p, t).unwrap();
            assert!(v.is_finite(), "{p:?} t={t}: {v}");
        }
        let mid = full_integrand(&p, 0.5).unwrap();
        assert!((mid - integrand(&p, 0.5).unwrap() / 0.75f64.sqrt()).abs() <= 1e-15 * mid.abs().max(1.0));
    }
}

#[test]
fn tight_budget_reports_non_convergence() {
    let cfg = QuadConfig { max_evals: 50, ..QuadConfig::default() };
    let r = verify(&FamilyParams::th1(15, 10.0), &cfg).unwrap();
    assert!(!r.pass);
}
