//! Quadrature for the three integral shapes: `[0, 1]` with an optional
//! arcsine endpoint weight, `[0, inf)` with exponential decay, and straight
//! segments in the complex plane.
//!
//! Both schemes refine by levels and estimate the error as the difference of
//! the last two levels, floored at the roundoff of the weighted sum.
//! Composite Gauss–Legendre doubles its panel count per level; tanh-sinh
//! halves its step and reuses the previous nodes.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::cxmath::{is_finite, Cx};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Composite 20-point Gauss–Legendre.
    #[default]
    SubstGauss,
    /// tanh-sinh.
    DoubleExp,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::SubstGauss => "SUBST_GAUSS",
            Scheme::DoubleExp => "DOUBLE_EXP",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "SUBST_GAUSS" | "GAUSS" => Ok(Scheme::SubstGauss),
            "DOUBLE_EXP" | "TANH_SINH" | "DE" => Ok(Scheme::DoubleExp),
            _ => Err(invalid(format!("unknown scheme {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightMode {
    /// Multiply the integrand by `1 / sqrt(1 - t^2)`, removed by `t = sin(theta)`.
    InvSqrt1mt2,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_levels: u32,
    pub max_evals: u64,
    pub scheme: Scheme,
    /// Tail mass ignored by the semi-infinite truncation.
    pub truncation_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_levels: 12,
            max_evals: 2_000_000,
            scheme: Scheme::SubstGauss,
            truncation_tol: 1e-16,
        }
    }
}

impl QuadConfig {
    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.abs_tol) || !positive(self.rel_tol) || !positive(self.truncation_tol) {
            return Err(invalid("tolerances must be positive"));
        }
        if self.max_levels < 3 {
            return Err(invalid("max_levels must be at least 3"));
        }
        if self.max_evals == 0 {
            return Err(invalid("max_evals must be positive"));
        }
        Ok(())
    }

    fn target(&self, value: Cx) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Cx,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

const MIN_LEVEL: u32 = 2;
const GAUSS_POINTS: usize = 20;
/// tanh-sinh nodes run over `|u| <= DE_UMAX`; the weight there is below 1e-35.
const DE_UMAX: f64 = 4.0;

/// Nodes and weights of the 20-point Gauss–Legendre rule on `[-1, 1]`.
fn gauss_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for m in 2..=n {
                    let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn spend(&mut self, n: u64) -> bool {
        self.used += n;
        self.used <= self.max
    }
}

fn sample<F: Fn(f64) -> Cx>(f: &F, x: f64) -> Result<Cx> {
    let v = f(x);
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::NonFinite("integrand sample"))
    }
}

/// Value and `sum |w f|` of the composite rule with `panels` panels.
fn gauss_level<F: Fn(f64) -> Cx>(f: &F, a: f64, b: f64, panels: usize) -> Result<(Cx, f64)> {
    let width = (b - a) / panels as f64;
    let mut sum = Cx::zero();
    let mut mass = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        for &(x, w) in gauss_rule() {
            let v = sample(f, mid + 0.5 * width * x)? * w;
            sum += v;
            mass += v.norm();
        }
    }
    Ok((sum * (0.5 * width), mass * 0.5 * width.abs()))
}

/// Node and weight of tanh-sinh at `u`, mapped to `[a, b]`; `None` once the
/// node rounds onto an endpoint.
fn de_node(a: f64, b: f64, u: f64) -> Option<(f64, f64)> {
    let half = 0.5 * (b - a);
    let v = FRAC_PI_2 * u.sinh();
    // 1 - tanh|v| = 2 / (1 + e^{2|v|}) without cancellation
    let gap = 2.0 / (1.0 + (2.0 * v.abs()).exp());
    let x = if v >= 0.0 { b - half * gap } else { a + half * gap };
    if x == a || x == b {
        return None;
    }
    let ch = v.cosh();
    let w = half * FRAC_PI_2 * u.cosh() / (ch * ch);
    Some((x, w))
}

fn adaptive<F: Fn(f64) -> Cx>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
    abs_tol: f64,
    budget: &mut Budget,
) -> Result<QuadResult> {
    let start = budget.used;
    let mut prev: Option<Cx> = None;
    let mut best = QuadResult { value: Cx::zero(), error_estimate: f64::INFINITY, evaluations: 0, converged: false };
    // tanh-sinh state: running sum over nodes at the current step
    let mut de_sum = Cx::zero();
    let mut de_mass = 0.0;

    for level in 0..=cfg.max_levels {
        let (value, mass) = match cfg.scheme {
            Scheme::SubstGauss => {
                let panels = 1usize << level;
                if !budget.spend((panels * GAUSS_POINTS) as u64) {
                    break;
                }
                gauss_level(f, a, b, panels)?
            }
            Scheme::DoubleExp => {
                let h = 0.5f64.powi(level as i32);
                let (first, stride) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
                let kmax = (DE_UMAX / h).floor() as i64;
                let mut count = 0u64;
                let mut k = first;
                while k <= kmax {
                    for u in if k == 0 { vec![0.0] } else { vec![k as f64 * h, -(k as f64) * h] } {
                        if let Some((x, w)) = de_node(a, b, u) {
                            let v = sample(f, x)? * w;
                            de_sum += v;
                            de_mass += v.norm();
                            count += 1;
                        }
                    }
                    k += stride;
                }
                if !budget.spend(count) {
                    break;
                }
                (de_sum * h, de_mass * h)
            }
        };
        let floor = 16.0 * f64::EPSILON * mass;
        if let Some(p) = prev {
            let err = (value - p).norm().max(floor);
            let target = abs_tol.max(cfg.rel_tol * value.norm());
            best = QuadResult { value, error_estimate: err, evaluations: 0, converged: false };
            if level >= MIN_LEVEL && err <= target {
                best.converged = true;
                break;
            }
        } else {
            best.value = value;
        }
        prev = Some(value);
    }
    best.evaluations = budget.used - start;
    Ok(best)
}

fn integrate_interval<F: Fn(f64) -> Cx>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let mut budget = Budget { used: 0, max: cfg.max_evals };
    adaptive(&f, a, b, cfg, cfg.abs_tol, &mut budget)
}

/// `int_0^1 f(t) w(t) dt` with `w = 1/sqrt(1 - t^2)` or `1`.
///
/// `f` must be finite on `(0, 1)` and at `0`; a removable singularity at the
/// origin is the caller's to resolve.
pub fn integrate_01_weighted<F>(f: F, weight: WeightMode, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Cx,
{
    match weight {
        WeightMode::InvSqrt1mt2 => integrate_interval(|th: f64| f(th.sin()), 0.0, FRAC_PI_2, cfg),
        WeightMode::None => integrate_interval(f, 0.0, 1.0, cfg),
    }
}

/// `int_0^inf f(x) dx` for `|f(x)| <= M exp(-lambda x)` with
/// `lambda >= decay_rate_hint`.
///
/// The range is cut at `ln(1 / truncation_tol) / decay_rate_hint` and split
/// into panels of width `pi`, each refined on its own.
pub fn integrate_semi_infinite<F>(f: F, decay_rate_hint: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(decay_rate_hint.is_finite() && decay_rate_hint > 0.0) {
        return Err(invalid(format!("decay rate hint must be positive, got {decay_rate_hint}")));
    }
    let end = (1.0 / cfg.truncation_tol).ln() / decay_rate_hint;
    let panels = (end / PI).ceil().max(1.0) as usize;
    let width = end / panels as f64;
    let g = |x: f64| Cx::new(f(x), 0.0);
    let mut budget = Budget { used: 0, max: cfg.max_evals };
    let mut total = QuadResult { value: Cx::zero(), error_estimate: 0.0, evaluations: 0, converged: true };
    let panel_tol = cfg.abs_tol / panels as f64;
    for p in 0..panels {
        let a = p as f64 * width;
        let r = adaptive(&g, a, a + width, cfg, panel_tol, &mut budget)?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.converged &= r.converged;
        if budget.used > budget.max {
            total.converged = false;
            break;
        }
    }
    total.evaluations = budget.used;
    total.converged &= total.error_estimate <= cfg.target(total.value);
    Ok(total)
}

/// `int f(z) dz` along the straight segment from `z0` to `z1`.
///
/// The parameter `s` of `z = z0 + s (z1 - z0)` is itself mapped by
/// `s = sin^2(pi v / 2)`, which clusters nodes at both ends and absorbs
/// inverse-square-root endpoint singularities. Near such a singularity the
/// rounded `z` limits accuracy to about `sqrt(eps |z|)`; use
/// [`integrate_segment_offsets`] when the integrand can use the exact offset.
pub fn integrate_segment<F>(f: F, z0: Cx, z1: Cx, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Cx) -> Cx,
{
    integrate_segment_offsets(
        |z, _, _| {
            if z == z0 || z == z1 {
                // only reachable by tanh-sinh nodes whose weight is negligible
                Cx::zero()
            } else {
                f(z)
            }
        },
        z0,
        z1,
        cfg,
    )
}

/// As [`integrate_segment`], but `f(z, z - z0, z - z1)` also receives both
/// offsets, each computed without cancellation near its own endpoint.
pub fn integrate_segment_offsets<F>(f: F, z0: Cx, z1: Cx, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Cx, Cx, Cx) -> Cx,
{
    if !is_finite(z0) || !is_finite(z1) {
        return Err(Error::NonFinite("segment endpoint"));
    }
    let delta = z1 - z0;
    let g = |v: f64| {
        if v <= 0.5 {
            let h = (FRAC_PI_2 * v).sin();
            let d0 = h * h * delta;
            f(z0 + d0, d0, d0 - delta) * (FRAC_PI_2 * (PI * v).sin())
        } else {
            let w = 1.0 - v;
            let h = (FRAC_PI_2 * w).sin();
            let d1 = -(h * h) * delta;
            f(z1 + d1, delta + d1, d1) * (FRAC_PI_2 * (PI * w).sin())
        }
    };
    let mut r = integrate_interval(g, 0.0, 1.0, cfg)?;
    r.value *= delta;
    r.error_estimate *= delta.norm();
    r.converged &= r.error_estimate <= cfg.target(r.value);
    Ok(r)
}
