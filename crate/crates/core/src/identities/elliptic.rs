use std::f64::consts::PI;
use std::time::Instant;

use crate::cxmath::Cx;
use crate::error::{invalid, Result};
use crate::quad::{integrate_semi_infinite, QuadConfig};

use super::VerificationReport;

pub const IV_TOL: f64 = 1e-6;

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind, `K(k) = pi / (2 AGM(1, sqrt(1 - k^2)))`.
pub fn complete_k(modulus: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&modulus) {
        return Err(invalid(format!("modulus must lie in [0, 1), got {modulus}")));
    }
    Ok(PI / (2.0 * agm(1.0, (1.0 - modulus * modulus).sqrt())))
}

/// `int_{-inf}^{inf} dt / (cos(K sqrt t) + cosh(K' sqrt t))` compared with 1.
///
/// Both halves are taken in `u = sqrt|t|`: `t > 0` gives
/// `2u / (cos(Ku) + cosh(K'u))`, `t < 0` gives `2u / (cosh(Ku) + cos(K'u))`.
pub fn ismail_valent_check(modulus: f64, cfg: &QuadConfig) -> Result<VerificationReport> {
    if !(modulus > 0.0 && modulus < 1.0) {
        return Err(invalid(format!("modulus must lie in (0, 1), got {modulus}")));
    }
    let start = Instant::now();
    let k = complete_k(modulus)?;
    let kp = complete_k((1.0 - modulus * modulus).sqrt())?;
    let pos = integrate_semi_infinite(|u| 2.0 * u / ((k * u).cos() + (kp * u).cosh()), kp, cfg)?;
    let neg = integrate_semi_infinite(|u| 2.0 * u / ((k * u).cosh() + (kp * u).cos()), k, cfg)?;
    let mut r = VerificationReport::new("IV", None, Some(modulus), None);
    r.notes.push(format!("a column is the elliptic modulus; K={k:.17e} K'={kp:.17e}"));
    r.settle(pos.value + neg.value, Cx::new(1.0, 0.0), IV_TOL, &[pos, neg]);
    if !r.pass {
        r.notes.push(format!(
            "measured integral / stated value = {:.12}",
            r.lhs.re
        ));
    }
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agm_examples() {
        assert_eq!(agm(1.0, 1.0), 1.0);
        assert!((complete_k(0.0).unwrap() - PI / 2.0).abs() <= 1e-16);
        let k = complete_k(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((k - 1.854_074_677_301_372).abs() <= 1e-14);
        assert!((k - 1.854_074_7).abs() <= 1e-7);
        // K(0.5) = 1.68575035481259604287...
        assert!((complete_k(0.5).unwrap() - 1.685_750_354_812_596).abs() <= 1e-14);
        assert!(complete_k(1.0).is_err());
    }

    #[test]
    fn integral_is_modulus_independent() {
        let cfg = QuadConfig::default();
        let a = ismail_valent_check(0.5, &cfg).unwrap();
        let b = ismail_valent_check(std::f64::consts::FRAC_1_SQRT_2, &cfg).unwrap();
        assert!((a.lhs - b.lhs).norm() <= 1e-10, "{a:?} {b:?}");
        assert!(ismail_valent_check(0.0, &cfg).is_err());
        assert!(ismail_valent_check(1.0, &cfg).is_err());
    }
}
