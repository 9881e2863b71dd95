//! Integrand families, closed forms, and the harness that compares them.

mod elliptic;
mod lemma2;
mod limit;
mod sums;
mod symmetry;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;

use crate::cxmath::{Cx, I};
use crate::error::{invalid, Error, Result};
use crate::quad::{integrate_01_weighted, integrate_semi_infinite, QuadConfig, QuadResult, WeightMode};
use crate::specfrac::theta;

pub use elliptic::{agm, complete_k, ismail_valent_check, IV_TOL};
pub use lemma2::{lemma2_closed_form, lemma2_consequence, verify_lemma2, verify_lemma2_consequence};
pub use limit::{large_n_deviation, large_n_limit_check};
pub use sums::{finite_sum, SumKind, SumResult};
pub use symmetry::{CHAIN_TOL, JACOBIAN_TOL, SYM_TOL, jacobian_check, symmetry_check, JacobianCheck, SymFamily, SymmetryReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Th1,
    Th2,
    Th2GeneralA,
    Th3,
    Glaisher1,
    Glaisher2,
    Lemma2,
    Iv,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Th1,
        Family::Th2,
        Family::Th2GeneralA,
        Family::Th3,
        Family::Glaisher1,
        Family::Glaisher2,
        Family::Lemma2,
        Family::Iv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Th1 => "TH1",
            Family::Th2 => "TH2",
            Family::Th2GeneralA => "TH2_GENERAL_A",
            Family::Th3 => "TH3",
            Family::Glaisher1 => "GLAISHER1",
            Family::Glaisher2 => "GLAISHER2",
            Family::Lemma2 => "LEMMA2",
            Family::Iv => "IV",
        }
    }

    /// Acceptance tolerance on `|LHS - RHS|`.
    pub fn default_tol(self) -> f64 {
        match self {
            Family::Th1 | Family::Th2 | Family::Th2GeneralA | Family::Th3 => 1e-10,
            Family::Glaisher1 | Family::Glaisher2 => 1e-8,
            Family::Lemma2 => 1e-11,
            Family::Iv => IV_TOL,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == up)
            .ok_or_else(|| invalid(format!("unknown family {s:?}")))
    }
}

/// Parameters of one verification point. Unused fields stay `None`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub family: Family,
    pub n: Option<u32>,
    pub a: Option<f64>,
    pub k: Option<u32>,
    /// Elliptic modulus, IV only.
    pub modulus: Option<f64>,
    /// Root index, LEMMA2 only.
    pub j: Option<u32>,
}

impl FamilyParams {
    fn bare(family: Family) -> Self {
        FamilyParams { family, n: None, a: None, k: None, modulus: None, j: None }
    }

    pub fn th1(n: u32, a: f64) -> Self {
        FamilyParams { n: Some(n), a: Some(a), ..Self::bare(Family::Th1) }
    }

    pub fn th2(n: u32) -> Self {
        FamilyParams { n: Some(n), ..Self::bare(Family::Th2) }
    }

    pub fn th2_general(n: u32, a: f64) -> Self {
        FamilyParams { n: Some(n), a: Some(a), ..Self::bare(Family::Th2GeneralA) }
    }

    pub fn th3(n: u32, k: u32) -> Self {
        FamilyParams { n: Some(n), k: Some(k), ..Self::bare(Family::Th3) }
    }

    pub fn glaisher1(a: f64) -> Self {
        FamilyParams { a: Some(a), ..Self::bare(Family::Glaisher1) }
    }

    pub fn glaisher2() -> Self {
        Self::bare(Family::Glaisher2)
    }

    pub fn lemma2(n: u32, j: u32, a: f64) -> Self {
        FamilyParams { n: Some(n), a: Some(a), j: Some(j), ..Self::bare(Family::Lemma2) }
    }

    pub fn iv(modulus: f64) -> Self {
        FamilyParams { modulus: Some(modulus), ..Self::bare(Family::Iv) }
    }

    fn need_n(&self) -> Result<u32> {
        match self.n {
            Some(n) if n > 0 => Ok(n),
            _ => Err(invalid(format!("{} needs a positive n", self.family))),
        }
    }

    fn need_a(&self) -> Result<f64> {
        match self.a {
            Some(a) if a.is_finite() && a > 0.0 => Ok(a),
            Some(a) => Err(invalid(format!("{} needs a > 0, got {a}", self.family))),
            None => Err(invalid(format!("{} needs a", self.family))),
        }
    }

    fn need_k(&self) -> Result<u32> {
        self.k.ok_or_else(|| invalid(format!("{} needs k", self.family)))
    }

    /// Checks parity and range constraints. Odd-`n` TH3 is accepted here;
    /// callers decide whether it belongs to an exploratory run.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Th1 => {
                let n = self.need_n()?;
                self.need_a()?;
                if n % 2 == 0 {
                    return Err(invalid(format!("TH1 needs odd n, got {n}")));
                }
            }
            Family::Th2 | Family::Th2GeneralA => {
                let n = self.need_n()?;
                if self.family == Family::Th2GeneralA {
                    self.need_a()?;
                }
                if n % 2 == 1 {
                    return Err(invalid(format!("{} needs even n, got {n}", self.family)));
                }
            }
            Family::Th3 => {
                let n = self.need_n()?;
                let k = self.need_k()?;
                if k >= n / 2 {
                    return Err(invalid(format!("TH3 needs 0 <= k < floor(n/2) = {}, got k={k}", n / 2)));
                }
            }
            Family::Glaisher1 => {
                self.need_a()?;
            }
            Family::Glaisher2 => {}
            Family::Lemma2 => {
                let n = self.need_n()?;
                self.need_a()?;
                let j = self.j.ok_or_else(|| invalid("LEMMA2 needs j"))?;
                if j == 0 || j > n {
                    return Err(Error::IndexOutOfRange { j: j as usize, max: n as usize });
                }
            }
            Family::Iv => {
                let m = self.modulus.ok_or_else(|| invalid("IV needs a modulus"))?;
                if !(m > 0.0 && m < 1.0) {
                    return Err(invalid(format!("modulus must lie in (0, 1), got {m}")));
                }
            }
        }
        Ok(())
    }
}

/// One identity check, ready for serialization.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub family: String,
    pub n: Option<u32>,
    /// `a`, or the elliptic modulus for IV.
    pub a: Option<f64>,
    pub k: Option<u32>,
    pub lhs: Cx,
    pub rhs: Cx,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub evaluations: u64,
    pub runtime_ms: f64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>, n: Option<u32>, a: Option<f64>, k: Option<u32>) -> Self {
        VerificationReport {
            family: family.into(),
            n,
            a,
            k,
            lhs: Cx::zero(),
            rhs: Cx::zero(),
            abs_err: f64::NAN,
            tol: 0.0,
            pass: false,
            evaluations: 0,
            runtime_ms: 0.0,
            notes: Vec::new(),
        }
    }

    fn for_params(p: &FamilyParams) -> Self {
        Self::new(p.family.name(), p.n, p.a.or(p.modulus), p.k)
    }

    /// Fills `lhs`, `rhs`, `abs_err`, `tol` and `pass` from quadrature
    /// results; every quadrature must have converged for a pass.
    pub(crate) fn settle(&mut self, lhs: Cx, rhs: Cx, tol: f64, quads: &[QuadResult]) {
        self.lhs = lhs;
        self.rhs = rhs;
        self.abs_err = (lhs - rhs).norm();
        self.tol = tol;
        self.evaluations += quads.iter().map(|q| q.evaluations).sum::<u64>();
        let converged = quads.iter().all(|q| q.converged);
        if !converged {
            let worst = quads.iter().map(|q| q.error_estimate).fold(0.0, f64::max);
            self.notes.push(format!("quadrature did not converge (error estimate {worst:.3e})"));
        }
        self.pass = converged && self.abs_err <= tol;
    }

    /// Ordering by `(family, n, a, k)`, missing values first.
    pub fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.family
            .cmp(&other.family)
            .then(self.n.cmp(&other.n))
            .then(match (self.a, other.a) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                (x, y) => x.is_some().cmp(&y.is_some()),
            })
            .then(self.k.cmp(&other.k))
    }
}

/// Sorts reports into emission order.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.sort_key_cmp(b));
}

/// Theorem 1 integrand without the `1/sqrt(1-t^2)` weight; the limit at
/// `t = 0` is 0.
pub(super) fn th1_integrand(n: u32, a: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    let (u, v) = (t.asin(), (t / a).asinh());
    let den = (2.0 * nf * u).cos() + (2.0 * nf * v).cosh();
    (nf * u).sin() * (nf * v).sinh() / (den * t * (1.0 + t * t / (a * a)).sqrt())
}

fn th2_integrand(n: u32, a: f64, t: f64) -> f64 {
    let nf = n as f64;
    let (u, v) = (t.asin(), (t / a).asinh());
    let den = (2.0 * nf * u).cos() + (2.0 * nf * v).cosh();
    (nf * u).cos() * (nf * v).cosh() / den * t / (1.0 + t * t / (a * a)).sqrt()
}

fn th3_integrand(n: u32, k: u32, t: f64) -> f64 {
    let nf = n as f64;
    let r = t.sqrt();
    t.powi(2 * k as i32) / ((2.0 * nf * r.asin()).cos() + (2.0 * nf * r.asinh()).cosh())
}

pub(super) fn glaisher1_integrand(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x.sin() * (x / a).sinh() / (((2.0 * x).cos() + (2.0 * x / a).cosh()) * x)
}

fn glaisher2_integrand(x: f64) -> f64 {
    x * x.cos() * x.cosh() / ((2.0 * x).cos() + (2.0 * x).cosh())
}

/// Quadrature weight that [`integrand`] leaves out.
pub fn weight_mode(family: Family) -> Option<WeightMode> {
    match family {
        Family::Th1 | Family::Th2 | Family::Th2GeneralA | Family::Th3 | Family::Lemma2 => {
            Some(WeightMode::InvSqrt1mt2)
        }
        Family::Glaisher1 | Family::Glaisher2 | Family::Iv => None,
    }
}

/// Pointwise integrand of a real family, without the factor reported by
/// [`weight_mode`]. For the semi-infinite families `t` is the variable on
/// `[0, inf)`.
pub fn integrand(p: &FamilyParams, t: f64) -> Result<f64> {
    p.validate()?;
    let v = match p.family {
        Family::Th1 => th1_integrand(p.need_n()?, p.need_a()?, t),
        Family::Th2 => th2_integrand(p.need_n()?, 1.0, t),
        Family::Th2GeneralA => th2_integrand(p.need_n()?, p.need_a()?, t),
        Family::Th3 => th3_integrand(p.need_n()?, p.need_k()?, t),
        Family::Glaisher1 => glaisher1_integrand(p.need_a()?, t),
        Family::Glaisher2 => glaisher2_integrand(t),
        Family::Lemma2 | Family::Iv => {
            return Err(invalid(format!("{} has no real pointwise integrand", p.family)));
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("integrand"))
    }
}

/// [`integrand`] times its weight.
pub fn full_integrand(p: &FamilyParams, t: f64) -> Result<f64> {
    let v = integrand(p, t)?;
    Ok(match weight_mode(p.family) {
        Some(WeightMode::InvSqrt1mt2) => v / (1.0 - t * t).sqrt(),
        _ => v,
    })
}

/// `pi (-1)^k / (2^(2k+1) n) sum_{j <= floor(n/2)} ...`
pub fn th3_rhs(n: u32, k: u32) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    PI * sign / (2f64.powi(2 * k as i32 + 1) * n as f64) * sums::th3_sum(n, k)
}

/// The two-part right-hand side for general `a`; complex terms whose
/// imaginary parts must cancel.
pub fn th2_general_rhs(n: u32, a: f64) -> Cx {
    let nf = n as f64;
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let head = 0.5 * sign / (a.powi(-(n as i32) - 1) + a.powi(n as i32 - 1)) * (1.0 / a).atan();
    let tail: Cx = (1..=n)
        .map(|j| {
            let (s, c) = theta(n, j).sin_cos();
            let d = a * a - 1.0 + 2.0 * I * a * c;
            let sj = if j % 2 == 0 { 1.0 } else { -1.0 };
            sj * (c.atanh() - I * a.atan()) * s / (2.0 * nf * d)
        })
        .sum();
    Cx::new(head, 0.0) + a * a * tail
}

/// Right-hand side of a family's identity.
pub fn rhs_closed_form(p: &FamilyParams) -> Result<Cx> {
    p.validate()?;
    Ok(match p.family {
        Family::Th1 | Family::Glaisher1 => Cx::new(p.need_a()?.atan() / 2.0, 0.0),
        Family::Th2 | Family::Glaisher2 => Cx::zero(),
        Family::Th2GeneralA => th2_general_rhs(p.need_n()?, p.need_a()?),
        Family::Th3 => Cx::new(th3_rhs(p.need_n()?, p.need_k()?), 0.0),
        Family::Lemma2 => {
            let n = p.need_n()?;
            lemma2_closed_form(p.need_a()?, theta(n, p.j.unwrap_or(1)))?
        }
        Family::Iv => Cx::new(1.0, 0.0),
    })
}

fn quad_01(p: &FamilyParams, cfg: &QuadConfig) -> Result<QuadResult> {
    let pp = *p;
    integrate_01_weighted(
        move |t| Cx::new(integrand(&pp, t).unwrap_or(f64::NAN), 0.0),
        WeightMode::InvSqrt1mt2,
        cfg,
    )
}

/// Integrates the left-hand side and compares it with [`rhs_closed_form`].
///
/// Non-convergence yields a failing report; invalid parameters and
/// non-finite samples are errors.
pub fn verify(p: &FamilyParams, cfg: &QuadConfig) -> Result<VerificationReport> {
    p.validate()?;
    let start = Instant::now();
    let mut report = match p.family {
        Family::Lemma2 => {
            let n = p.need_n()?;
            verify_lemma2(p.need_a()?, theta(n, p.j.unwrap_or(1)), cfg).map(|mut r| {
                r.n = Some(n);
                r
            })?
        }
        Family::Iv => ismail_valent_check(p.modulus.unwrap_or(f64::NAN), cfg)?,
        family => {
            let mut r = VerificationReport::for_params(p);
            let rhs = rhs_closed_form(p)?;
            let q = match family {
                Family::Glaisher1 => {
                    let a = p.need_a()?;
                    integrate_semi_infinite(|x| glaisher1_integrand(a, x), 1.0 / a, cfg)?
                }
                Family::Glaisher2 => integrate_semi_infinite(glaisher2_integrand, 1.0, cfg)?,
                _ => quad_01(p, cfg)?,
            };
            let tol = family.default_tol();
            if family == Family::Th2GeneralA {
                r.settle(q.value, Cx::new(rhs.re, 0.0), tol, &[q]);
                r.rhs = rhs;
                r.notes.push(format!("Im RHS = {:.3e}", rhs.im));
                if rhs.im.abs() > tol {
                    r.pass = false;
                    r.notes.push("right-hand side is not real".into());
                }
            } else {
                r.settle(q.value, rhs, tol, &[q]);
            }
            if family == Family::Th3 && p.n.is_some_and(|n| n % 2 == 1) {
                r.notes.push("exploratory: odd n".into());
            }
            r
        }
    };
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    #[test]
    fn integrand_examples() {
        let p = FamilyParams::th1(1, 1.0);
        let full = full_integrand(&p, 0.5).unwrap();
        assert!((full - 0.5 / (2.0 * 0.9375f64.sqrt())).abs() <= 1e-15);
        assert!((full - 0.258_198_9).abs() <= 1e-7);
        for n in [1, 3, 9] {
            assert_eq!(integrand(&FamilyParams::th1(n, 2.0), 0.0).unwrap(), 0.0);
        }
        let v = integrand(&FamilyParams::th3(2, 0), 0.5).unwrap();
        assert!((v - 1.0 / 6.0).abs() <= 1e-15);
        assert!(integrand(&FamilyParams::th1(2, 1.0), 0.5).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let v = rhs_closed_form(&FamilyParams::th1(3, 1.0)).unwrap();
        assert!((v.re - PI / 8.0).abs() <= 1e-16 && (v.re - 0.392_699_1).abs() <= 1e-7);
        let v = rhs_closed_form(&FamilyParams::th3(2, 0)).unwrap();
        assert!((v.re - PI / 12.0).abs() <= 1e-15 && (v.re - 0.261_799_4).abs() <= 1e-7);
        assert_eq!(rhs_closed_form(&FamilyParams::th2(4)).unwrap(), Cx::zero());
        assert_eq!(rhs_closed_form(&FamilyParams::iv(0.5)).unwrap(), Cx::new(1.0, 0.0));
    }

    #[test]
    fn general_a_reduces_at_one() {
        // a = 1 gives pi/(16n) ((-1)^(n/2) n - sum (-1)^j tan) = 0
        for n in [2u32, 4, 6] {
            let v = th2_general_rhs(n, 1.0);
            assert!(v.norm() <= 1e-14, "n={n}: {v}");
        }
    }

    #[test]
    fn validation() {
        assert!(FamilyParams::th1(2, 1.0).validate().is_err());
        assert!(FamilyParams::th1(3, 0.0).validate().is_err());
        assert!(FamilyParams::th1(3, -1.0).validate().is_err());
        assert!(FamilyParams::th2(3).validate().is_err());
        assert!(FamilyParams::th3(4, 2).validate().is_err());
        assert!(FamilyParams::th3(5, 1).validate().is_ok());
        assert!(FamilyParams::iv(1.0).validate().is_err());
        assert!(FamilyParams::lemma2(3, 4, 1.0).validate().is_err());
        assert_eq!("th2_general_a".parse::<Family>().unwrap(), Family::Th2GeneralA);
    }

    #[test]
    fn verify_examples() {
        let cfg = QuadConfig::default();
        let r = verify(&FamilyParams::th1(1, 1.0), &cfg).unwrap();
        assert!(r.pass && (r.lhs.re - PI / 8.0).abs() <= 1e-10, "{r:?}");
        let r = verify(&FamilyParams::th3(2, 0), &cfg).unwrap();
        assert!(r.pass && (r.lhs.re - PI / 12.0).abs() <= 1e-12, "{r:?}");
        let r = verify(&FamilyParams::th2(2), &cfg).unwrap();
        assert!(r.pass && r.lhs.norm() <= 1e-10);
    }

    #[test]
    fn report_ordering() {
        let mut v = vec![
            VerificationReport::new("TH3", Some(4), None, Some(1)),
            VerificationReport::new("TH1", Some(3), Some(2.0), None),
            VerificationReport::new("TH1", Some(3), Some(0.5), None),
            VerificationReport::new("TH1", Some(1), Some(10.0), None),
            VerificationReport::new("TH3", Some(4), None, Some(0)),
        ];
        sort_reports(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.family.as_str(), r.n, r.a, r.k)).collect();
        assert_eq!(
            keys,
            [
                ("TH1", Some(1), Some(10.0), None),
                ("TH1", Some(3), Some(0.5), None),
                ("TH1", Some(3), Some(2.0), None),
                ("TH3", Some(4), None, Some(0)),
                ("TH3", Some(4), None, Some(1)),
            ]
        );
    }
}
