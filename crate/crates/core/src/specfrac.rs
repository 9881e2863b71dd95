//! Poles, residues and partial-fraction expansions of the three rational
//! functions behind the theorems.
//!
//! Every expansion is built from closed-form root and residue formulas in
//! binary64 and can be certified twice: the poles against the exact
//! [`polyexact`](crate::polyexact) denominator, and the reassembled sum
//! against the transcendental function it expands.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::cxmath::{casin_raw, casinh_raw, csqrt, Cx, I};
use crate::error::{invalid, Error, Result};
use crate::polyexact::{build_q_scaled, f64_to_rat, rat_to_f64, PolyRat, Variable};

/// `pi (2j - 1) / (2n)`
pub fn theta(n: u32, j: u32) -> f64 {
    PI * (2 * j - 1) as f64 / (2 * n) as f64
}

fn alt_sign(j: u32) -> f64 {
    if j % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Real and imaginary parts of `asin sqrt x_j = xi - i eta` and
/// `asinh sqrt x_j = phi - i psi` for the pure-imaginary roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchRecord {
    pub xi: f64,
    pub eta: f64,
    pub phi: f64,
    pub psi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootData {
    pub j: u32,
    pub theta: f64,
    /// `None` when the root has escaped to infinity.
    pub x: Option<Cx>,
    /// Mirror root `-x_j`, only for the scaled denominator.
    pub y: Option<Cx>,
    pub branch: Option<BranchRecord>,
    pub sign_mu: i8,
    pub sign_nu: i8,
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExpansionFamily {
    Lemma1,
    Lemma4,
    Lemma5,
}

impl ExpansionFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionFamily::Lemma1 => "LEMMA1",
            ExpansionFamily::Lemma4 => "LEMMA4",
            ExpansionFamily::Lemma5 => "LEMMA5",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfTerm {
    pub pole: Cx,
    pub residue: Cx,
}

/// `constant + sum residue / (s - pole)` where `s` is `t^2` or `t` per `variable`.
#[derive(Clone, Debug, PartialEq)]
pub struct PFExpansion {
    pub family: ExpansionFamily,
    pub n: u32,
    pub a: Cx,
    pub k: Option<u32>,
    pub constant: Cx,
    pub terms: Vec<PfTerm>,
    pub variable: Variable,
    pub notes: Vec<String>,
}

impl PFExpansion {
    pub fn eval(&self, t: Cx) -> Cx {
        let s = match self.variable {
            Variable::XEqualsTSquared => t * t,
            Variable::TDirect => t,
        };
        self.terms
            .iter()
            .fold(self.constant, |acc, term| acc + term.residue / (s - term.pole))
    }

    pub fn poles(&self) -> impl Iterator<Item = Cx> + '_ {
        self.terms.iter().map(|t| t.pole)
    }
}

fn check_index(j: u32, max: u32) -> Result<()> {
    if j == 0 || j > max {
        Err(Error::IndexOutOfRange { j: j as usize, max: max as usize })
    } else {
        Ok(())
    }
}

fn check_a(a: Cx) -> Result<()> {
    if !(a.re.is_finite() && a.im.is_finite()) || a == Cx::zero() {
        return Err(invalid("a must be finite and nonzero"));
    }
    if a.im == 0.0 && a.re <= 0.0 {
        return Err(invalid("real a must be positive"));
    }
    Ok(())
}

/// `a^2 - 1 + 2 i a cos(theta)`
fn root_denominator(a: Cx, c: f64) -> Cx {
    a * a - 1.0 + 2.0 * I * a * c
}

fn is_degenerate(d: Cx, a: Cx) -> bool {
    d.norm() <= 1e-12 * a.norm_sqr().max(1.0)
}

/// Root `x_j = a^2 sin^2(theta_j) / (a^2 - 1 + 2 i a cos(theta_j))` of the
/// denominator `cos(2n asin t) + cosh(2n asinh(t/a))` in `x = t^2`.
pub fn roots_lemma1(n: u32, a: Cx, j: u32) -> Result<RootData> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check_index(j, n)?;
    check_a(a)?;
    let th = theta(n, j);
    let (s, c) = th.sin_cos();
    let d = root_denominator(a, c);
    let degenerate = is_degenerate(d, a);
    let x = (!degenerate).then(|| a * a * s * s / d);
    let sign = alt_sign(j) as i8;
    Ok(RootData {
        j,
        theta: th,
        x,
        y: None,
        branch: None,
        sign_mu: sign,
        sign_nu: sign,
        degenerate,
    })
}

/// Pointwise value of the odd-`n` function
/// `2n sin(n asin t) sinh(n asinh(t/a)) / (t^2 [cos(2n asin t) + cosh(2n asinh(t/a))])`.
pub fn lemma1_lhs(n: u32, a: Cx, t: Cx) -> Cx {
    let nf = n as f64;
    let th = casin_raw(t);
    let ph = casinh_raw(t / a);
    let den = (2.0 * nf * th).cos() + (2.0 * nf * ph).cosh();
    2.0 * nf * (nf * th).sin() * (nf * ph).sinh() / (t * t * den)
}

/// The `j`-th summand of the odd-`n` expansion, in the form it is usually
/// displayed (no pole/residue split).
pub fn lemma1_term(n: u32, a: Cx, j: u32, t: Cx) -> Cx {
    let th = theta(n, j);
    let (s, c) = th.sin_cos();
    let d = root_denominator(a, c);
    I * alt_sign(j) * (a * c + I) * (a + I * c) / (s * (t * t * d - a * a * s * s))
}

/// Partial fractions of [`lemma1_lhs`] for odd `n`, over `x = t^2`.
///
/// A degenerate root (denominator of `x_j` vanishing, e.g. `a = 1` and the
/// middle `j`) contributes a finite constant instead of a pole.
pub fn expansion_lemma1(n: u32, a: Cx) -> Result<PFExpansion> {
    if n == 0 || n % 2 == 0 {
        return Err(invalid(format!("expansion needs odd n, got {n}")));
    }
    check_a(a)?;
    let mut constant = Cx::zero();
    let mut terms = Vec::with_capacity(n as usize);
    let mut notes = Vec::new();
    for j in 1..=n {
        let root = roots_lemma1(n, a, j)?;
        let (s, c) = root.theta.sin_cos();
        let num = I * alt_sign(j) * (a * c + I) * (a + I * c);
        match root.x {
            Some(pole) => {
                let d = root_denominator(a, c);
                terms.push(PfTerm { pole, residue: num / (s * d) });
            }
            None => {
                constant += num / (s * (-(a * a) * s * s));
                notes.push(format!("root j={j} at infinity; its term is the constant {}", fmt_cx(num / (-(a * a) * s * s * s))));
            }
        }
    }
    Ok(PFExpansion {
        family: ExpansionFamily::Lemma1,
        n,
        a,
        k: None,
        constant,
        terms,
        variable: Variable::XEqualsTSquared,
        notes,
    })
}

/// Signs linking the two factor identities at a root:
/// `cosh(n v) = mu sin(n w)` and `cos(n w) = i nu sinh(n v)`, where
/// `w = asin sqrt x_j` and `v = asinh(sqrt x_j / a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignPair {
    pub mu: i8,
    pub nu: i8,
    /// True when the principal values of `w`, `v` do not satisfy
    /// `w + i v = theta_j` and a neighbouring branch was used instead.
    pub continued_branch: bool,
}

fn unit_sign(ratio: Cx, what: &str) -> Result<i8> {
    let s = if ratio.re >= 0.0 { 1.0 } else { -1.0 };
    if (ratio - s).norm() <= 1e-9 {
        Ok(s as i8)
    } else {
        Err(Error::IdentityFailed(format!("{what} ratio {ratio} is not +-1")))
    }
}

/// Determines and certifies the sign pair `(mu_j, nu_j)` at a root of the
/// odd-`n` denominator.
///
/// `w` and `v` are taken on the branch pair that satisfies the root equation
/// `w + i v = theta_j`; that is the principal pair for `theta_j < pi/2`, and
/// `pi - asin` beyond it. On that branch both signs equal `(-1)^(j-1)`.
pub fn verify_signs(n: u32, a: f64, j: u32) -> Result<SignPair> {
    let root = roots_lemma1(n, Cx::new(a, 0.0), j)?;
    let x = root
        .x
        .ok_or_else(|| invalid(format!("root j={j} is degenerate; no sign pair")))?;
    let r = csqrt(x);
    let p = casin_raw(r);
    let q = casinh_raw(r / a);
    let mut best: Option<(f64, Cx, Cx, bool)> = None;
    for (w, w_principal) in [(p, true), (PI - p, false)] {
        for (v, v_principal) in [(q, true), (I * PI - q, false)] {
            let miss = (w + I * v - root.theta).norm();
            if best.is_none_or(|b| miss < b.0) {
                best = Some((miss, w, v, !(w_principal && v_principal)));
            }
        }
    }
    let (miss, w, v, continued) = best.expect("four candidates");
    if miss > 1e-8 {
        return Err(Error::IdentityFailed(format!(
            "no branch of asin/asinh at x_{j} satisfies the root equation (miss {miss:e})"
        )));
    }
    let nf = n as f64;
    let mu = unit_sign((nf * v).cosh() / (nf * w).sin(), "mu")?;
    let nu = unit_sign((nf * w).cos() / (I * (nf * v).sinh()), "nu")?;
    Ok(SignPair { mu, nu, continued_branch: continued })
}

/// Pointwise value of the even-`n` function
/// `cos(n asin t) cosh(n asinh(t/a)) / (cos(2n asin t) + cosh(2n asinh(t/a)))`.
pub fn lemma4_lhs(n: u32, a: f64, t: Cx) -> Cx {
    let nf = n as f64;
    let th = casin_raw(t);
    let ph = casinh_raw(t / a);
    (nf * th).cos() * (nf * ph).cosh() / ((2.0 * nf * th).cos() + (2.0 * nf * ph).cosh())
}

/// `((-1)^(n/2) / 2) a^n / (1 + a^(2n))`, written to survive large `a`.
pub fn lemma4_constant_f64(n: u32, a: f64) -> f64 {
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    0.5 * sign / (a.powi(-(n as i32)) + a.powi(n as i32))
}

/// Constant plus partial fractions of [`lemma4_lhs`] for even `n`, over `x = t^2`.
pub fn expansion_lemma4(n: u32, a: f64) -> Result<PFExpansion> {
    if n == 0 || n % 2 == 1 {
        return Err(invalid(format!("expansion needs even n, got {n}")));
    }
    let ac = Cx::new(a, 0.0);
    check_a(ac)?;
    let nf = n as f64;
    let mut terms = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let root = roots_lemma1(n, ac, j)?;
        let (s, c) = root.theta.sin_cos();
        let d = root_denominator(ac, c);
        let pole = root.x.ok_or_else(|| invalid("even n has no degenerate roots"))?;
        let residue = -alt_sign(j) * a * a * s * (a * c + I) * (a + I * c) / (2.0 * nf * d * d);
        terms.push(PfTerm { pole, residue });
    }
    Ok(PFExpansion {
        family: ExpansionFamily::Lemma4,
        n,
        a: ac,
        k: None,
        constant: Cx::new(lemma4_constant_f64(n, a), 0.0),
        terms,
        variable: Variable::XEqualsTSquared,
        notes: Vec::new(),
    })
}

/// Pure-imaginary root pair `x_j = -i s^2 / (2c)`, `y_j = -x_j` of the scaled
/// denominator `cos(2n asin sqrt t) + cosh(2n asinh sqrt t)`, with its branch
/// record certified against the principal `casin`/`casinh`.
pub fn roots_lemma5(n: u32, j: u32) -> Result<RootData> {
    check_index(j, n / 2)?;
    let th = theta(n, j);
    let (s, c) = th.sin_cos();
    let x = Cx::new(0.0, -s * s / (2.0 * c));
    let quarter = PI * (2 * j - 1) as f64 / (4 * n) as f64;
    let half_ash = 0.5 * th.tan().asinh();
    let branch = BranchRecord { xi: quarter, eta: half_ash, phi: half_ash, psi: quarter };

    let r = csqrt(x);
    let asin_r = casin_raw(r);
    let asinh_r = casinh_raw(r);
    let want_asin = Cx::new(branch.xi, -branch.eta);
    let want_asinh = Cx::new(branch.phi, -branch.psi);
    for (got, want, name) in [(asin_r, want_asin, "asin"), (asinh_r, want_asinh, "asinh")] {
        if (got - want).norm() > 1e-12 {
            return Err(Error::IdentityFailed(format!(
                "{name} sqrt x_{j} = {got}, branch formula gives {want}"
            )));
        }
    }
    let sign = alt_sign(j) as i8;
    Ok(RootData {
        j,
        theta: th,
        x: Some(x),
        y: Some(-x),
        branch: Some(branch),
        sign_mu: sign,
        sign_nu: sign,
        degenerate: false,
    })
}

/// `t^(2k) / (cos(2n asin sqrt t) + cosh(2n asinh sqrt t))`
pub fn lemma5_lhs(n: u32, k: u32, t: Cx) -> Cx {
    let nf = n as f64;
    let r = csqrt(t);
    let den = (2.0 * nf * casin_raw(r)).cos() + (2.0 * nf * casinh_raw(r)).cosh();
    t.powu(2 * k) / den
}

/// Coefficient of `1 / (4 t^2 + s^4/c^2)` in the scaled expansion.
fn lemma5_pair_coefficient(n: u32, k: u32, j: u32) -> f64 {
    let th = theta(n, j);
    let (s, c) = th.sin_cos();
    let tan = th.tan();
    let nf = n as f64;
    let k_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let cot2 = (c / s).powi(2);
    k_sign / (4f64.powi(k as i32) * nf) * alt_sign(j) * tan / (nf * tan.asinh()).cosh() * (1.0 + c * c)
        / cot2
        * (s * s / c).powi(2 * k as i32)
}

/// `4 n i (-1)^j cos^2 / (sin (1 + cos^2))`: the intermediate `Q'(x_j)` as
/// displayed in the usual derivation. Kept only to measure it against the
/// exact derivative.
pub fn displayed_q_prime(n: u32, j: u32) -> Cx {
    let (s, c) = theta(n, j).sin_cos();
    4.0 * n as f64 * I * -alt_sign(j) * c * c / (s * (1.0 + c * c))
}

/// The scaled expansion together with its independent residue check.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma5Expansion {
    /// Residues from the closed-form statement.
    pub expansion: PFExpansion,
    /// `pole^(2k) / Q'(pole)` with `Q'` differentiated exactly; same order as
    /// `expansion.terms`.
    pub oracle_residues: Vec<Cx>,
    /// `max |statement - oracle| / |oracle|` over all poles.
    pub residue_rel_diff: f64,
    /// `Q'_exact(x_j) / displayed_q_prime(n, j)` for each `j`.
    pub q_prime_ratios: Vec<Cx>,
    pub notes: Vec<String>,
}

/// Partial fractions of [`lemma5_lhs`] over `t`, for `0 <= k < floor(n/2)`.
///
/// Poles come in pairs `x_j`, `y_j = -x_j`; the stored terms alternate
/// `x_1, y_1, x_2, y_2, ...`.
pub fn expansion_lemma5(n: u32, k: u32) -> Result<Lemma5Expansion> {
    let half = n / 2;
    if k >= half {
        return Err(invalid(format!("need 0 <= k < floor(n/2) = {half}, got k={k}")));
    }
    let q = build_q_scaled(n)?;
    let dq = q.derivative();
    let mut terms = Vec::with_capacity(2 * half as usize);
    let mut oracle = Vec::with_capacity(2 * half as usize);
    let mut ratios = Vec::with_capacity(half as usize);
    for j in 1..=half {
        let root = roots_lemma5(n, j)?;
        let (x, y) = (root.x.unwrap_or_default(), root.y.unwrap_or_default());
        // K / (4 t^2 + b^2) = K / (4 (t - x)(t - y))
        let rx = lemma5_pair_coefficient(n, k, j) / (4.0 * (x - y));
        terms.push(PfTerm { pole: x, residue: rx });
        terms.push(PfTerm { pole: y, residue: -rx });
        let dqx = dq.eval_cx(x);
        oracle.push(x.powu(2 * k) / dqx);
        oracle.push(y.powu(2 * k) / dq.eval_cx(y));
        ratios.push(dqx / displayed_q_prime(n, j));
    }
    let residue_rel_diff = terms
        .iter()
        .zip(&oracle)
        .map(|(t, o)| (t.residue - o).norm() / o.norm())
        .fold(0.0, f64::max);

    let mut notes = Vec::new();
    if let Some((j, ratio)) = ratios
        .iter()
        .enumerate()
        .find(|(_, r)| (**r - 1.0).norm() > 1e-9)
    {
        let j = j as u32 + 1;
        let cosh_factor = (n as f64 * theta(n, j).tan().asinh()).cosh();
        notes.push(format!(
            "typo: displayed Q'(x_j) = 4ni(-1)^j cos^2/(sin(1+cos^2)) disagrees with the exact derivative; \
             at j={j} exact/displayed = {} (cosh(n asinh tan theta_j) = {}); the expansion itself verifies",
            fmt_cx(*ratio),
            fmt_f(cosh_factor)
        ));
    }
    Ok(Lemma5Expansion {
        expansion: PFExpansion {
            family: ExpansionFamily::Lemma5,
            n,
            a: Cx::new(1.0, 0.0),
            k: Some(k),
            constant: Cx::zero(),
            terms,
            variable: Variable::TDirect,
            notes: notes.clone(),
        },
        oracle_residues: oracle,
        residue_rel_diff,
        q_prime_ratios: ratios,
        notes,
    })
}

/// `|Q(p)| / sum |c_k| |p|^k` with `Q(p)` evaluated exactly at the binary64
/// value of `p`.
pub fn root_residual(q: &PolyRat, p: Cx) -> f64 {
    let (Some(re), Some(im)) = (f64_to_rat(p.re), f64_to_rat(p.im)) else {
        return f64::INFINITY;
    };
    let (vr, vi) = q.eval_exact_complex(&re, &im);
    let value = Cx::new(rat_to_f64(&vr), rat_to_f64(&vi)).norm();
    let scale = q.term_scale(p);
    if scale == 0.0 {
        value
    } else {
        value / scale
    }
}

/// Largest [`root_residual`] over the poles of an expansion.
pub fn max_root_residual(expansion: &PFExpansion, q: &PolyRat) -> f64 {
    expansion.poles().map(|p| root_residual(q, p)).fold(0.0, f64::max)
}

/// Largest `|lhs - expansion| / (1 + |lhs|)` over the given sample points.
pub fn max_reassembly_error(
    expansion: &PFExpansion,
    samples: &[f64],
    lhs: impl Fn(Cx) -> Cx,
) -> f64 {
    samples
        .iter()
        .map(|&t| {
            let t = Cx::new(t, 0.0);
            let l = lhs(t);
            (l - expansion.eval(t)).norm() / (1.0 + l.norm())
        })
        .fold(0.0, f64::max)
}

/// The transcendental function an expansion represents.
pub fn defining_lhs(expansion: &PFExpansion, t: Cx) -> Cx {
    match expansion.family {
        ExpansionFamily::Lemma1 => lemma1_lhs(expansion.n, expansion.a, t),
        ExpansionFamily::Lemma4 => lemma4_lhs(expansion.n, expansion.a.re, t),
        ExpansionFamily::Lemma5 => lemma5_lhs(expansion.n, expansion.k.unwrap_or(0), t),
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// `(re, im)` with 17 significant digits.
pub fn fmt_cx(z: Cx) -> String {
    format!("({}, {})", fmt_f(z.re), fmt_f(z.im))
}
