use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::specfrac::theta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumKind {
    /// `sum (-1)^(j-1) / sin theta_j = n`, odd `n`.
    Lemma3,
    /// `sum (-1)^(j-1) atanh(cos theta_j) / sin theta_j = 0`, odd `n`.
    AtanhCancel,
    /// `sum (-1)^j tan theta_j = (-1)^(n/2) n`, even `n`.
    TanEven,
    /// The Theorem 3 sum; a plain evaluation with nothing to compare.
    Th3Sum(u32),
    /// The `k = 0` Theorem 3 sum against its coth representation, `n >= 2`.
    Th3Alt,
}

impl SumKind {
    pub fn name(self) -> String {
        match self {
            SumKind::Lemma3 => "LEMMA3".into(),
            SumKind::AtanhCancel => "ATANH_CANCEL".into(),
            SumKind::TanEven => "TAN_EVEN".into(),
            SumKind::Th3Sum(k) => format!("TH3_SUM({k})"),
            SumKind::Th3Alt => "TH3_ALT".into(),
        }
    }

    /// Whether `n` satisfies the kind's parity or range constraint.
    pub fn accepts(self, n: u32) -> bool {
        match self {
            SumKind::Lemma3 | SumKind::AtanhCancel => n % 2 == 1,
            SumKind::TanEven => n > 0 && n % 2 == 0,
            SumKind::Th3Sum(_) => n > 0,
            SumKind::Th3Alt => n >= 2,
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        match up.as_str() {
            "LEMMA3" => Ok(SumKind::Lemma3),
            "ATANH_CANCEL" => Ok(SumKind::AtanhCancel),
            "TAN_EVEN" => Ok(SumKind::TanEven),
            "TH3_ALT" => Ok(SumKind::Th3Alt),
            _ => up
                .strip_prefix("TH3_SUM(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(SumKind::Th3Sum)
                .ok_or_else(|| invalid(format!("unknown sum kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumResult {
    pub kind: SumKind,
    pub n: u32,
    pub value: f64,
    /// What the identity says `value` equals; `None` for plain evaluations.
    pub expected: Option<f64>,
}

impl SumResult {
    pub fn abs_err(&self) -> Option<f64> {
        self.expected.map(|e| (self.value - e).abs())
    }
}

fn sign(j: u32) -> f64 {
    if j % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn th3_sum(n: u32, k: u32) -> f64 {
    let nf = n as f64;
    (1..=n / 2)
        .map(|j| {
            let th = theta(n, j);
            let (s, c) = th.sin_cos();
            let tan = th.tan();
            sign(j) * tan / (nf * tan.asinh()).cosh() * (s * s / c).powi(2 * k as i32)
        })
        .sum()
}

fn th3_alt_coth_side(n: u32) -> f64 {
    let nf = n as f64;
    let total: f64 = (1..=n)
        .map(|y| {
            let s = theta(n, y).sin();
            let h = s.asinh();
            // coth(asinh s) = sqrt(1 + s^2) / s
            (nf * h).tanh().recip() * s / (1.0 + s * s).sqrt()
        })
        .sum();
    total - nf / 2.0
}

/// Evaluates a finite sum and, where there is one, the value the identity
/// assigns it.
pub fn finite_sum(kind: SumKind, n: u32) -> Result<SumResult> {
    if !kind.accepts(n) {
        return Err(invalid(format!("{kind} is not defined for n={n}")));
    }
    let nf = n as f64;
    let (value, expected) = match kind {
        SumKind::Lemma3 => ((1..=n).map(|j| sign(j) / theta(n, j).sin()).sum(), Some(nf)),
        SumKind::AtanhCancel => (
            (1..=n)
                .map(|j| {
                    let (s, c) = theta(n, j).sin_cos();
                    sign(j) * c.atanh() / s
                })
                .sum(),
            Some(0.0),
        ),
        SumKind::TanEven => {
            let want = if (n / 2) % 2 == 0 { nf } else { -nf };
            ((1..=n).map(|j| -sign(j) * theta(n, j).tan()).sum(), Some(want))
        }
        SumKind::Th3Sum(k) => (th3_sum(n, k), None),
        SumKind::Th3Alt => (th3_sum(n, 0), Some(th3_alt_coth_side(n))),
    };
    Ok(SumResult { kind, n, value, expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = finite_sum(SumKind::Lemma3, 3).unwrap();
        assert!((r.value - 3.0).abs() <= 1e-14);
        let r = finite_sum(SumKind::TanEven, 2).unwrap();
        assert!((r.value + 2.0).abs() <= 1e-14 && r.expected == Some(-2.0));
        let r = finite_sum(SumKind::Th3Alt, 2).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() <= 1e-14);
        assert!((r.expected.unwrap() - 1.0 / 3.0).abs() <= 1e-14);
    }

    #[test]
    fn all_identities_to_25() {
        for kind in [SumKind::Lemma3, SumKind::AtanhCancel, SumKind::TanEven, SumKind::Th3Alt] {
            for n in 1..=25 {
                if let Ok(r) = finite_sum(kind, n) {
                    assert!(r.abs_err().unwrap() <= 1e-12, "{kind} n={n}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn parity_violations() {
        assert!(finite_sum(SumKind::Lemma3, 4).is_err());
        assert!(finite_sum(SumKind::AtanhCancel, 2).is_err());
        assert!(finite_sum(SumKind::TanEven, 3).is_err());
        assert!(finite_sum(SumKind::Th3Alt, 1).is_err());
    }

    #[test]
    fn names_round_trip() {
        for kind in [SumKind::Lemma3, SumKind::AtanhCancel, SumKind::TanEven, SumKind::Th3Sum(2), SumKind::Th3Alt] {
            assert_eq!(kind.name().parse::<SumKind>().unwrap(), kind);
        }
    }
}
