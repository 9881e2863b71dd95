use std::f64::consts::FRAC_PI_2;

use crate::cxmath::{Cx, I};
use crate::error::{invalid, Result};
use crate::quad::{integrate_01_weighted, QuadConfig, WeightMode};

use super::VerificationReport;

/// `(atan a + i atanh(cos theta)) / (i (a cos theta + i)(a + i cos theta))`
pub fn lemma2_closed_form(a: f64, theta: f64) -> Result<Cx> {
    if !(a.is_finite() && a > 0.0) {
        return Err(invalid(format!("a must be positive, got {a}")));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(invalid(format!("theta must lie in (0, pi/2], got {theta}")));
    }
    let c = theta.cos();
    Ok((a.atan() + I * c.atanh()) / (I * (a * c + I) * (a + I * c)))
}

/// Verifies the closed form against quadrature of
/// `t / ((t^2 D - a^2 sin^2 theta) sqrt(1 - t^2) sqrt(1 + t^2/a^2))`,
/// `D = a^2 - 1 + 2 i a cos theta`.
///
/// The `1/sqrt(1 - t^2)` factor is taken as the quadrature weight so the
/// endpoint singularity is removed by substitution.
pub fn verify_lemma2(a: f64, theta: f64, cfg: &QuadConfig) -> Result<VerificationReport> {
    let rhs = lemma2_closed_form(a, theta)?;
    let (s, c) = theta.sin_cos();
    let d = a * a - 1.0 + 2.0 * I * a * c;
    let q = integrate_01_weighted(
        |t| t / ((t * t * d - a * a * s * s) * (1.0 + t * t / (a * a)).sqrt()),
        WeightMode::InvSqrt1mt2,
        cfg,
    )?;
    let mut r = VerificationReport::new("LEMMA2", None, Some(a), None);
    r.notes.push(format!("theta={theta:.17e}"));
    r.settle(q.value, rhs, super::Family::Lemma2.default_tol(), &[q]);
    Ok(r)
}

/// `(pi/2) cot^2 theta / (1 + cos^2 theta)`, the value of
/// `int_0^1 dt / ((4 t^2 + sin^4/cos^2) sqrt(1 - t^2))`.
pub fn lemma2_consequence(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(invalid(format!("theta must lie in (0, pi/2), got {theta}")));
    }
    let (s, c) = theta.sin_cos();
    Ok(FRAC_PI_2 * (c / s).powi(2) / (1.0 + c * c))
}

pub fn verify_lemma2_consequence(theta: f64, cfg: &QuadConfig) -> Result<VerificationReport> {
    let rhs = lemma2_consequence(theta)?;
    let (s, c) = theta.sin_cos();
    let b = s.powi(4) / (c * c);
    let q = integrate_01_weighted(|t| Cx::new(1.0 / (4.0 * t * t + b), 0.0), WeightMode::InvSqrt1mt2, cfg)?;
    let mut r = VerificationReport::new("LEMMA2_CONSEQUENCE", None, None, None);
    r.notes.push(format!("theta={theta:.17e}"));
    r.settle(q.value, Cx::new(rhs, 0.0), 1e-12, &[q]);
    Ok(r)
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_examples() {
        let v = lemma2_closed_form(1.0, FRAC_PI_2).unwrap();
        assert!((v - Cx::new(-PI / 4.0, 0.0)).norm() <= 1e-15, "{v}");
        assert!(lemma2_closed_form(1.0, 0.0).is_err());
        assert!(lemma2_closed_form(0.0, 1.0).is_err());
    }

    #[test]
    fn quadrature_matches() {
        let cfg = QuadConfig::default();
        for (a, th) in [(2.0, PI / 3.0), (1.0, FRAC_PI_2), (0.5, 0.2), (10.0, 1.3)] {
            let r = verify_lemma2(a, th, &cfg).unwrap();
            assert!(r.pass && r.abs_err <= 1e-11, "a={a} theta={th}: {r:?}");
        }
    }

    #[test]
    fn consequence_examples() {
        assert!((lemma2_consequence(PI / 4.0).unwrap() - PI / 3.0).abs() <= 1e-15);
        assert!((lemma2_consequence(PI / 4.0).unwrap() - 1.047_197_6).abs() <= 1e-7);
        assert!(lemma2_consequence(0.0).is_err());
        assert!(lemma2_consequence(FRAC_PI_2).is_err());
        let cfg = QuadConfig::default();
        for th in [PI / 4.0, PI / 3.0, 0.3] {
            let r = verify_lemma2_consequence(th, &cfg).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
