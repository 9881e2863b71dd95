//! Principal-branch complex elementary functions.
//!
//! Branch cuts follow the usual conventions: `casin` is cut along
//! `(-inf, -1)` and `(1, inf)` on the real axis, `casinh` along `(-i inf, -i)`
//! and `(i, i inf)` on the imaginary axis. Signed zeros select the side of the
//! cut, so a value exactly on a cut with `+0` in the relevant component is
//! continuous from above (`casin`) or from the right (`casinh`).
//!
//! Everything is binary64. `alpha` is accurate for moderate `n`; `cosh` of it
//! grows like `(1 + sqrt 2)^(2n)` so precision degrades past `n ~ 50`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the floating-point layers.
pub type Cx = Complex64;

pub const I: Cx = Cx::new(0.0, 1.0);

#[inline]
pub fn is_finite(z: Cx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn ensure_finite(z: Cx, what: &'static str) -> Result<Cx> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Principal square root honouring the sign of a zero imaginary part.
pub(crate) fn csqrt(z: Cx) -> Cx {
    if z.re == 0.0 && z.im == 0.0 {
        return Cx::new(0.0, z.im);
    }
    let r = z.re.hypot(z.im);
    if z.re >= 0.0 {
        let t = ((r + z.re) * 0.5).sqrt();
        Cx::new(t, z.im / (2.0 * t))
    } else {
        let t = ((r - z.re) * 0.5).sqrt();
        Cx::new(z.im.abs() / (2.0 * t), t.copysign(z.im))
    }
}

/// `casin` without the finiteness check.
///
/// Hull, Fairgrieve and Tang's formulation: with `r = |z + 1|`, `s = |z - 1|`
/// and `A = (r + s) / 2`, `Re = asin(|x| / A)` and `Im = acosh(A)`, each
/// rewritten to avoid cancellation where the naive forms lose digits. Exact
/// zeros and signed zeros pass through, which fixes the cut sides.
pub(crate) fn casin_raw(z: Cx) -> Cx {
    let x = z.re.abs();
    let y = z.im.abs();
    let xp1 = x + 1.0;
    let xm1 = x - 1.0;
    let r = xp1.hypot(y);
    let s = xm1.hypot(y);
    let a = 0.5 * (r + s);
    let b = x / a;
    let y2 = y * y;

    let re = if b <= 0.6417 {
        b.asin()
    } else {
        let apx = a + x;
        if x <= 1.0 {
            (x / (0.5 * apx * (y2 / (r + xp1) + (s - xm1))).sqrt()).atan()
        } else {
            (x / (y * (0.5 * (apx / (r + xp1) + apx / (s + xm1))).sqrt())).atan()
        }
    };

    let im = if a <= 1.5 {
        let am1 = if x < 1.0 {
            0.5 * (y2 / (r + xp1) + y2 / (s - xm1))
        } else {
            0.5 * (y2 / (r + xp1) + (s + xm1))
        };
        (am1 + (am1 * (a + 1.0)).sqrt()).ln_1p()
    } else {
        (a + (a * a - 1.0).sqrt()).ln()
    };

    Cx::new(re.copysign(z.re), im.copysign(z.im))
}

/// `casinh` without the finiteness check: `asinh(z) = -i asin(iz)`.
pub(crate) fn casinh_raw(z: Cx) -> Cx {
    // build iz componentwise so signed zeros survive
    let w = casin_raw(Cx::new(-z.im, z.re));
    Cx::new(w.im, -w.re)
}

/// Principal complex arcsine: `Re` in `[-pi/2, pi/2]`.
pub fn casin(z: Cx) -> Result<Cx> {
    ensure_finite(z, "casin argument")?;
    Ok(casin_raw(z))
}

/// Principal complex inverse hyperbolic sine: `Im` in `[-pi/2, pi/2]`.
pub fn casinh(z: Cx) -> Result<Cx> {
    ensure_finite(z, "casinh argument")?;
    Ok(casinh_raw(z))
}

pub(crate) fn alpha_raw(z: Cx, n: u32) -> Cx {
    let two_n = 2.0 * n as f64;
    let mut w = (z * (PI / two_n)).sin();
    // On the imaginary axis the argument reaches the branch point i at
    // z = i y_star; a few ulps of overshoot would otherwise put it on the cut.
    if w.re == 0.0 && w.im.abs() > 1.0 && w.im.abs() <= 1.0 + 8.0 * f64::EPSILON {
        w.im = w.im.signum();
    }
    two_n * casinh_raw(w)
}

/// The map `z -> 2n asinh(sin(pi z / 2n))`.
///
/// Real for real `z`, purely imaginary on `i [0, y_star(n)]`, and
/// `alpha(i y_star(n), n) = i pi n`.
pub fn alpha(z: Cx, n: u32) -> Result<Cx> {
    ensure_finite(z, "alpha argument")?;
    if n == 0 {
        return Err(crate::error::invalid("alpha needs n >= 1"));
    }
    ensure_finite(alpha_raw(z, n), "alpha value")
}

/// `(2n / pi) ln(1 + sqrt 2)`, the height where `alpha(i y, n)` reaches `i pi n`.
pub fn y_star(n: u32) -> f64 {
    2.0 * n as f64 / PI * SQRT_2.ln_1p()
}

/// `ln(1 + sqrt 2) = asinh(1)`.
pub fn asinh_one() -> f64 {
    SQRT_2.ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Cx, b: Cx, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn casin_examples() {
        assert_eq!(casin(Cx::new(0.0, 0.0)).unwrap(), Cx::new(0.0, 0.0));
        assert!(close(casin(Cx::new(1.0, 0.0)).unwrap(), Cx::new(FRAC_PI_2, 0.0), 1e-15));
        let v = casin(I).unwrap();
        assert!(close(v, Cx::new(0.0, SQRT_2.ln_1p()), 1e-15), "{v}");
        assert!((v.im - 0.881374).abs() < 1e-6);
    }

    #[test]
    fn casinh_examples() {
        assert_eq!(casinh(Cx::new(0.0, 0.0)).unwrap(), Cx::new(0.0, 0.0));
        let one = casinh(Cx::new(1.0, 0.0)).unwrap();
        assert!(close(one, Cx::new(0.881_373_587_019_543, 0.0), 1e-15));
        let half_i = casinh(Cx::new(0.0, 0.5)).unwrap();
        assert!(close(half_i, Cx::new(0.0, PI / 6.0), 1e-15), "{half_i}");
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(casin(Cx::new(f64::NAN, 0.0)), Err(Error::NonFinite(_))));
        assert!(matches!(casinh(Cx::new(0.0, f64::INFINITY)), Err(Error::NonFinite(_))));
        assert!(alpha(Cx::new(f64::NAN, 1.0), 2).is_err());
    }

    #[test]
    fn agrees_with_real_functions_on_real_line() {
        for i in 0..=200 {
            let x = -1.0 + i as f64 / 100.0;
            let s = casin(Cx::new(x, 0.0)).unwrap();
            assert!((s.re - x.asin()).abs() <= 1e-15 && s.im == 0.0, "x={x} got {s}");
            let y = -10.0 + i as f64 / 10.0;
            let h = casinh(Cx::new(y, 0.0)).unwrap();
            assert!((h.re - y.asinh()).abs() <= 1e-15 * (1.0 + y.abs()), "y={y} got {h}");
        }
    }

    #[test]
    fn small_arguments_keep_relative_accuracy() {
        let z = Cx::new(1e-12, -3e-13);
        let w = casinh(z).unwrap();
        assert!((w - z).norm() <= 1e-27);
        let w = casin(z).unwrap();
        assert!((w - z).norm() <= 1e-27);
    }

    #[test]
    fn on_cut_values_follow_the_convention() {
        // casinh: cut values continuous from the right.
        for y in [1.5, 3.0, -2.0] {
            let on = casinh(Cx::new(0.0, y)).unwrap();
            let right = casinh(Cx::new(1e-300, y)).unwrap();
            assert!(close(on, right, 1e-14), "y={y}: {on} vs {right}");
        }
        // casin: cut values continuous from above.
        for x in [1.5, 3.0, -2.0] {
            let on = casin(Cx::new(x, 0.0)).unwrap();
            let above = casin(Cx::new(x, 1e-300)).unwrap();
            assert!(close(on, above, 1e-14), "x={x}: {on} vs {above}");
        }
    }

    #[test]
    fn round_trip_and_branch_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let r: f64 = 10.0 * rng.random::<f64>();
            let phi: f64 = rng.random_range(-PI..PI);
            let z = Cx::from_polar(r, phi);
            let s = casin(z).unwrap();
            let h = casinh(z).unwrap();
            let tol = 1e-12 * (1.0 + z.norm());
            assert!((s.sin() - z).norm() <= tol, "sin(casin({z}))");
            assert!((h.sinh() - z).norm() <= tol, "sinh(casinh({z}))");
            assert!(s.re.abs() <= FRAC_PI_2 + 1e-15);
            assert!(h.im.abs() <= FRAC_PI_2 + 1e-15);
            if z.re.abs() <= 1.0 || z.im != 0.0 {
                assert!(close(casin(z.conj()).unwrap(), s.conj(), 1e-14 * (1.0 + s.norm())));
            }
        }
    }

    #[test]
    fn matches_num_complex_off_the_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let z = Cx::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
            let tol = 1e-12 * (1.0 + z.norm());
            assert!(close(casin(z).unwrap(), z.asin(), tol), "{z}");
            assert!(close(casinh(z).unwrap(), z.asinh(), tol), "{z}");
        }
    }

    #[test]
    fn alpha_examples() {
        for n in 1..=6 {
            assert_eq!(alpha(Cx::new(0.0, 0.0), n).unwrap(), Cx::new(0.0, 0.0));
            let at_n = alpha(Cx::new(n as f64, 0.0), n).unwrap();
            let expect = 2.0 * n as f64 * asinh_one();
            assert!((at_n.re - expect).abs() <= 1e-13 * expect && at_n.im.abs() <= 1e-14);
            let top = alpha(Cx::new(0.0, y_star(n)), n).unwrap();
            assert!(close(top, Cx::new(0.0, PI * n as f64), 1e-13 * n as f64), "n={n}: {top}");
        }
    }

    #[test]
    fn alpha_reality_on_axes() {
        for n in [1, 2, 3, 5, 8] {
            for i in 0..=50 {
                let x = n as f64 * i as f64 / 50.0;
                assert!(alpha(Cx::new(x, 0.0), n).unwrap().im.abs() <= 1e-14);
                let y = y_star(n) * i as f64 / 50.0;
                assert!(alpha(Cx::new(0.0, y), n).unwrap().re.abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn y_star_values() {
        assert!((y_star(1) - 0.561_099_9).abs() < 1e-7);
        assert_eq!(y_star(2), 2.0 * y_star(1));
    }
}
