//! Exact rational polynomials for the multiple-angle expressions.
//!
//! With `x = sin^2(theta)`, `cos(2m theta)` is the Chebyshev polynomial
//! `T_m(1 - 2x)` and `sin((2m+1) theta) / sin(theta)` obeys the same
//! three-term recurrence. Replacing `-2` by `2/a^2` gives the hyperbolic
//! counterparts with `x / a^2 = sinh^2(phi)`. Every polynomial here is built
//! from those recurrences over `BigRational`, so it is exact and can certify
//! the floating-point roots and residues in `specfrac`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cxmath::Cx;
use crate::error::{invalid, Result};

pub type BigRat = BigRational;

/// What the polynomial variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    /// `x = t^2`
    XEqualsTSquared,
    /// the integration variable itself
    TDirect,
}

/// Dense polynomial with exact rational coefficients, ascending powers.
///
/// Trailing zero coefficients are always stripped; the zero polynomial has
/// no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRat {
    coeffs: Vec<BigRat>,
    var: Variable,
}

impl PolyRat {
    pub fn new(mut coeffs: Vec<BigRat>, var: Variable) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyRat { coeffs, var }
    }

    pub fn zero(var: Variable) -> Self {
        PolyRat { coeffs: Vec::new(), var }
    }

    pub fn constant(c: BigRat, var: Variable) -> Self {
        Self::new(vec![c], var)
    }

    /// `c0 + c1 x`
    pub fn linear(c0: BigRat, c1: BigRat, var: Variable) -> Self {
        Self::new(vec![c0, c1], var)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> BigRat {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRat::from_integer(BigInt::from(k)))
            .collect();
        Self::new(coeffs, self.var)
    }

    /// Exact Horner evaluation.
    pub fn eval_exact(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at `re + i im`; returns the real and imaginary parts.
    pub fn eval_exact_complex(&self, re: &BigRat, im: &BigRat) -> (BigRat, BigRat) {
        let mut acc_re = BigRat::zero();
        let mut acc_im = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            let next_re = &acc_re * re - &acc_im * im + c;
            let next_im = &acc_re * im + &acc_im * re;
            acc_re = next_re;
            acc_im = next_im;
        }
        (acc_re, acc_im)
    }

    /// `sum |c_k| |z|^k`, the magnitude Horner has to cancel down at `z`.
    pub fn term_scale(&self, z: Cx) -> f64 {
        let r = z.norm();
        self.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Horner evaluation in binary64 complex arithmetic.
    pub fn eval_cx(&self, z: Cx) -> Cx {
        self.coeffs_f64()
            .iter()
            .rev()
            .fold(Cx::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs_f64().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// True when every odd-power coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Coefficients as `p/q` strings (integers print without a denominator).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `0.5` into an exact rational.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || invalid(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRat::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(BigRat::from_integer(p));
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    f64_to_rat(x).ok_or_else(bad)
}

/// Exact dyadic value of a finite double.
pub fn f64_to_rat(x: f64) -> Option<BigRat> {
    BigRat::from_float(x)
}

fn int(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

impl fmt::Display for PolyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.var {
            Variable::XEqualsTSquared => "x",
            Variable::TDirect => "t",
        };
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let c = rat_to_string(&c.abs());
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}){name}")?,
                _ => write!(f, "({c}){name}^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyRat {
    type Output = PolyRat;
    fn add(self, rhs: &PolyRat) -> PolyRat {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PolyRat::new(coeffs, self.var)
    }
}

impl Sub for &PolyRat {
    type Output = PolyRat;
    fn sub(self, rhs: &PolyRat) -> PolyRat {
        self + &(-rhs)
    }
}

impl Neg for &PolyRat {
    type Output = PolyRat;
    fn neg(self) -> PolyRat {
        PolyRat::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Mul for &PolyRat {
    type Output = PolyRat;
    fn mul(self, rhs: &PolyRat) -> PolyRat {
        if self.is_zero() || rhs.is_zero() {
            return PolyRat::zero(self.var);
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyRat::new(out, self.var)
    }
}

/// Runs `w_{m+1} = 2(1 + c x) w_m - w_{m-1}` from the given seeds and
/// returns `w_0 ..= w_count`.
fn three_term(c: &BigRat, w0: PolyRat, w1: PolyRat, count: usize) -> Vec<PolyRat> {
    let var = w0.var();
    let two_mult = PolyRat::linear(int(2), c * int(2), var);
    let mut out = vec![w0, w1];
    while out.len() <= count {
        let m = out.len() - 1;
        let next = &(&two_mult * &out[m]) - &out[m - 1];
        out.push(next);
    }
    out.truncate(count + 1);
    out
}

/// `T_m(1 + c x)` for `m = 0..=count`: `cos(2m asin t)` at `c = -2`,
/// `cosh(2m asinh(t/a))` at `c = 2/a^2`.
pub fn cos_multiple(c: &BigRat, count: usize, var: Variable) -> Vec<PolyRat> {
    let w0 = PolyRat::constant(int(1), var);
    let w1 = PolyRat::linear(int(1), c.clone(), var);
    three_term(c, w0, w1, count)
}

/// `sin((2m+1) theta) / sin(theta)` in `x = sin^2 theta` (at `c = -2`), or its
/// hyperbolic analogue divided by `sinh(phi)` (at `c = 2/a^2`), `m = 0..=count`.
pub fn sin_odd_multiple(c: &BigRat, count: usize, var: Variable) -> Vec<PolyRat> {
    let w0 = PolyRat::constant(int(1), var);
    let w1 = PolyRat::linear(int(3), c * int(2), var);
    three_term(c, w0, w1, count)
}

fn hyperbolic_shift(a: &BigRat) -> Result<BigRat> {
    if a.is_zero() {
        return Err(invalid("a must be nonzero"));
    }
    Ok(int(2) / (a * a))
}

fn check_n(n: u32) -> Result<usize> {
    if n == 0 {
        Err(invalid("n must be a positive integer"))
    } else {
        Ok(n as usize)
    }
}

/// `cos(2n asin t) + cosh(2n asinh(t/a))` as a polynomial in `x = t^2`.
pub fn build_q_lemma1(n: u32, a: &BigRat) -> Result<PolyRat> {
    let n = check_n(n)?;
    let c_hyp = hyperbolic_shift(a)?;
    let var = Variable::XEqualsTSquared;
    let u = cos_multiple(&int(-2), n, var);
    let v = cos_multiple(&c_hyp, n, var);
    Ok(&u[n] + &v[n])
}

/// `2n sin(n asin t) sinh(n asinh(t/a)) / t^2` in `x = t^2`, for odd `n`.
pub fn build_p_lemma1(n: u32, a: &BigRat) -> Result<PolyRat> {
    let nn = check_n(n)?;
    if nn % 2 == 0 {
        return Err(invalid(format!("P needs odd n, got {n}")));
    }
    let c_hyp = hyperbolic_shift(a)?;
    let var = Variable::XEqualsTSquared;
    let m = (nn - 1) / 2;
    // sin(n asin t) = t s_m(x) and sinh(n asinh(t/a)) = (t/a) h_m(x).
    let s = sin_odd_multiple(&int(-2), m, var);
    let h = sin_odd_multiple(&c_hyp, m, var);
    let scale = int(2 * nn as i64) / a;
    Ok((&s[m] * &h[m]).scale(&scale))
}

/// The constant `C = ((-1)^(n/2) / 2) a^n / (1 + a^(2n))` of the even-`n` expansion.
pub fn lemma4_constant(n: u32, a: &BigRat) -> BigRat {
    let an = num_traits::pow(a.clone(), n as usize);
    let sign = if (n / 2) % 2 == 0 { int(1) } else { int(-1) };
    sign * &an / (int(2) * (int(1) + &an * &an))
}

/// For even `n`, returns `C` and
/// `R(x) = cos(n asin t) cosh(n asinh(t/a)) - C Q_n(x)` with `deg R <= n - 1`.
pub fn build_r_lemma4(n: u32, a: &BigRat) -> Result<(BigRat, PolyRat)> {
    let nn = check_n(n)?;
    if nn % 2 == 1 {
        return Err(invalid(format!("R needs even n, got {n}")));
    }
    let c_hyp = hyperbolic_shift(a)?;
    let var = Variable::XEqualsTSquared;
    let m = nn / 2;
    let u = cos_multiple(&int(-2), nn, var);
    let v = cos_multiple(&c_hyp, nn, var);
    let q = &u[nn] + &v[nn];
    let c = lemma4_constant(n, a);
    let r = &(&u[m] * &v[m]) - &q.scale(&c);
    Ok((c, r))
}

/// `cos(2n asin sqrt t) + cosh(2n asinh sqrt t)` as a polynomial in `t`.
pub fn build_q_scaled(n: u32) -> Result<PolyRat> {
    Ok(build_q_lemma1(n, &int(1))?.with_var(Variable::TDirect))
}

/// Coefficient of `t^n` in the raw recurrence sum behind [`build_q_scaled`],
/// before any cancellation is stripped.
pub fn q_scaled_raw_leading(n: u32) -> Result<BigRat> {
    let nn = check_n(n)?;
    let u = cos_multiple(&int(-2), nn, Variable::TDirect);
    let v = cos_multiple(&int(2), nn, Variable::TDirect);
    Ok(u[nn].coeff(nn) + v[nn].coeff(nn))
}

/// Value type accepted by [`eval_poly`].
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRat),
    Complex(Cx),
}

pub fn eval_poly(p: &PolyRat, z: &Scalar) -> Scalar {
    match z {
        Scalar::Exact(x) => Scalar::Exact(p.eval_exact(x)),
        Scalar::Complex(z) => Scalar::Complex(p.eval_cx(*z)),
    }
}
