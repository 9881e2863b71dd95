use crate::error::{invalid, Result};

use super::{glaisher1_integrand, th1_integrand};

/// `|g_n(x) - G(x)| / |G(x)|` where `G` is the semi-infinite integrand with
/// parameter `a` and `g_n(x) = f_n(sin(x/n)) / n` is the Theorem 1 integrand
/// after `t = sin(x/n)`, which turns `dt / sqrt(1 - t^2)` into `dx / n`.
pub fn large_n_deviation(n: u32, a: f64, x: f64) -> f64 {
    let nf = n as f64;
    let g = th1_integrand(n, a, (x / nf).sin()) / nf;
    let big = glaisher1_integrand(a, x);
    ((g - big) / big).abs()
}

/// Largest [`large_n_deviation`] over `x_points`, each in `(0, sqrt n)`.
pub fn large_n_limit_check(n: u32, a: f64, x_points: &[f64]) -> Result<f64> {
    if n % 2 == 0 {
        return Err(invalid(format!("needs odd n, got {n}")));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(invalid(format!("needs a > 0, got {a}")));
    }
    let root = (n as f64).sqrt();
    if let Some(x) = x_points.iter().find(|&&x| !(x > 0.0 && x < root)) {
        return Err(invalid(format!("x={x} outside (0, sqrt n)")));
    }
    Ok(x_points.iter().map(|&x| large_n_deviation(n, a, x)).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(large_n_deviation(101, 1.0, 1.0) <= 0.05);
        assert!(large_n_deviation(1001, 1.0, 1.0) < large_n_deviation(101, 1.0, 1.0));
        assert!(large_n_deviation(101, 2.0, 0.5) <= 0.05);
        assert!(large_n_limit_check(100, 1.0, &[1.0]).is_err());
        assert!(large_n_limit_check(101, 1.0, &[11.0]).is_err());
    }

    #[test]
    fn deviation_shrinks_quadratically() {
        let d1 = large_n_deviation(101, 1.0, 2.0);
        let d2 = large_n_deviation(1001, 1.0, 2.0);
        let ratio = d1 / d2;
        assert!(ratio > 50.0 && ratio < 200.0, "ratio {ratio}");
    }
}
