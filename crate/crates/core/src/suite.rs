//! The acceptance battery: every numbered criterion as a pass/fail outcome
//! with the reports behind it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cxmath::Cx;
use crate::error::Result;
use crate::identities::{
    finite_sum, ismail_valent_check, CHAIN_TOL, large_n_limit_check, sort_reports, symmetry_check, verify, FamilyParams,
    SumKind, SymFamily, VerificationReport,
};
use crate::parallel::{map_points, map_sequential};
use crate::polyexact::{build_q_lemma1, build_q_scaled, f64_to_rat};
use crate::quad::QuadConfig;
use crate::report::sum_report;
use crate::specfrac::{
    defining_lhs, expansion_lemma1, expansion_lemma4, expansion_lemma5, max_reassembly_error, root_residual,
    PFExpansion,
};

pub const TH1_N: [u32; 6] = [1, 3, 5, 7, 9, 15];
pub const TH1_A: [f64; 4] = [0.5, 1.0, 2.0, 10.0];
pub const TH2_N: [u32; 5] = [2, 4, 6, 8, 10];
pub const TH3_CASES: [(u32, u32); 6] = [(2, 0), (4, 0), (4, 1), (6, 0), (6, 2), (8, 3)];
pub const TH3_ODD_CASES: [(u32, u32); 5] = [(3, 0), (5, 0), (5, 1), (7, 0), (7, 2)];
pub const REASSEMBLY_TOL: f64 = 1e-9;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const TWO_ROUTE_TOL: f64 = 1e-10;
pub const SWEEP_SECONDS: f64 = 10.0;
const SAMPLE_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    pub cfg: QuadConfig,
    pub parallel: bool,
    /// Adds the non-gating criterion 9.
    pub exploratory: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { cfg: QuadConfig::default(), parallel: cfg!(feature = "parallel"), exploratory: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    /// Non-gating outcomes never change the suite verdict.
    pub gating: bool,
    pub detail: String,
    pub reports: Vec<VerificationReport>,
    pub elapsed_ms: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<4} {}{}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            if self.gating { "" } else { " (non-gating)" },
            self.detail
        )
    }
}

/// Maps over points on the configured executor, preserving order.
pub fn run_points<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel {
        map_points(items, f)
    } else {
        map_sequential(items, f)
    }
}

/// Verifies every point and returns the reports in `(family, n, a, k)` order.
pub fn verify_many(points: &[FamilyParams], cfg: &QuadConfig, parallel: bool) -> Result<Vec<VerificationReport>> {
    let mut out = run_points(points, parallel, |p| verify(p, cfg)).into_iter().collect::<Result<Vec<_>>>()?;
    sort_reports(&mut out);
    Ok(out)
}

fn outcome(id: u32, name: &'static str, gating: bool, start: Instant) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        pass: false,
        gating,
        detail: String::new(),
        reports: Vec::new(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn failed_setup(id: u32, name: &'static str, gating: bool, start: Instant, err: crate::Error) -> CriterionOutcome {
    let mut o = outcome(id, name, gating, start);
    o.detail = format!("error: {err}");
    o
}

fn summarize(reports: &[VerificationReport]) -> (bool, usize, f64) {
    let failed = reports.iter().filter(|r| !r.pass).count();
    let worst = reports.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    (failed == 0, failed, worst)
}

fn theorem_sweep(id: u32, name: &'static str, points: Vec<FamilyParams>, opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    match verify_many(&points, &opts.cfg, opts.parallel) {
        Ok(reports) => {
            let (pass, failed, worst) = summarize(&reports);
            let mut o = outcome(id, name, true, start);
            o.pass = pass;
            o.detail = format!("{} points, {failed} failed, max |err| {worst:.2e}", reports.len());
            o.reports = reports;
            o
        }
        Err(e) => failed_setup(id, name, true, start, e),
    }
}

pub fn criterion_1(opts: &SuiteOptions) -> CriterionOutcome {
    let points: Vec<_> = TH1_N.iter().flat_map(|&n| TH1_A.map(|a| FamilyParams::th1(n, a))).collect();
    let mut o = theorem_sweep(1, "Theorem 1 sweep", points, opts);
    let secs = o.elapsed_ms / 1e3;
    o.detail.push_str(&format!(", {secs:.2} s (limit {SWEEP_SECONDS} s)"));
    o.pass &= secs < SWEEP_SECONDS;
    o
}

pub fn criterion_2(opts: &SuiteOptions) -> CriterionOutcome {
    let mut points: Vec<_> = TH2_N.iter().map(|&n| FamilyParams::th2(n)).collect();
    for n in [2, 4] {
        for a in [0.5, 2.0] {
            points.push(FamilyParams::th2_general(n, a));
        }
    }
    theorem_sweep(2, "Theorem 2 and general-a variant", points, opts)
}

pub fn criterion_3(opts: &SuiteOptions) -> CriterionOutcome {
    let points: Vec<_> = TH3_CASES.iter().map(|&(n, k)| FamilyParams::th3(n, k)).collect();
    let mut o = theorem_sweep(3, "Theorem 3", points, opts);
    if let Some(r) = o.reports.iter().find(|r| r.n == Some(2) && r.k == Some(0)) {
        let closed = (r.lhs.re - PI / 12.0).abs();
        o.detail.push_str(&format!(", (2,0) vs pi/12 {closed:.2e}"));
        o.pass &= closed <= 1e-12;
    }
    o
}

/// The 100 seeded sample points of `(0.01, 0.99)` used for reassembly.
pub fn reassembly_samples() -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..100).map(|_| rng.random_range(0.01..0.99)).collect()
}

/// Reassembly error and worst scaled pole residual of one expansion, as a report.
pub fn expansion_report(e: &PFExpansion, samples: &[f64]) -> Result<VerificationReport> {
    let q = match e.family {
        crate::specfrac::ExpansionFamily::Lemma5 => build_q_scaled(e.n)?,
        _ => {
            let a = f64_to_rat(e.a.re).ok_or_else(|| crate::error::invalid("a is not finite"))?;
            build_q_lemma1(e.n, &a)?
        }
    };
    let reassembly = max_reassembly_error(e, samples, |t| defining_lhs(e, t));
    let residual = e.poles().map(|p| root_residual(&q, p)).fold(0.0, f64::max);
    let a = (e.family != crate::specfrac::ExpansionFamily::Lemma5).then_some(e.a.re);
    let mut r = VerificationReport::new(e.family.name(), Some(e.n), a, e.k);
    r.lhs = Cx::new(reassembly, 0.0);
    r.rhs = Cx::new(0.0, 0.0);
    r.abs_err = reassembly;
    r.tol = REASSEMBLY_TOL;
    r.pass = reassembly <= REASSEMBLY_TOL && residual <= RESIDUAL_TOL;
    r.evaluations = samples.len() as u64;
    r.notes.push(format!("max reassembly error over {} points; max scaled pole residual {residual:.2e}", samples.len()));
    r.notes.extend(e.notes.iter().cloned());
    Ok(r)
}

pub fn criterion_4(opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let name = "Partial fractions";
    let samples = reassembly_samples();
    let mut expansions = Vec::new();
    let mut collect = || -> Result<()> {
        for n in [1, 3, 5, 7] {
            for a in [0.5, 1.0, 2.0] {
                expansions.push(expansion_lemma1(n, Cx::new(a, 0.0))?);
            }
        }
        for n in [2, 4, 6] {
            for a in [0.5, 1.0, 2.0] {
                expansions.push(expansion_lemma4(n, a)?);
            }
        }
        for n in 2..=12 {
            for k in 0..n / 2 {
                expansions.push(expansion_lemma5(n, k)?.expansion);
            }
        }
        Ok(())
    };
    if let Err(e) = collect() {
        return failed_setup(4, name, true, start, e);
    }
    let reports = run_points(&expansions, opts.parallel, |e| expansion_report(e, &samples));
    let mut reports = match reports.into_iter().collect::<Result<Vec<_>>>() {
        Ok(r) => r,
        Err(e) => return failed_setup(4, name, true, start, e),
    };
    sort_reports(&mut reports);
    let (pass, failed, worst) = summarize(&reports);
    let mut o = outcome(4, name, true, start);
    o.pass = pass;
    o.detail = format!("{} expansions, {failed} failed, max reassembly error {worst:.2e}", reports.len());
    o.reports = reports;
    o
}

pub fn criterion_5(_: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let name = "Lemma 5 residue two-route agreement";
    let mut reports = Vec::new();
    let mut typo_noted = true;
    for n in 2..=12u32 {
        for k in 0..n / 2 {
            let l5 = match expansion_lemma5(n, k) {
                Ok(l5) => l5,
                Err(e) => return failed_setup(5, name, true, start, e),
            };
            let mut r = VerificationReport::new("LEMMA5_RESIDUES", Some(n), None, Some(k));
            r.lhs = Cx::new(l5.residue_rel_diff, 0.0);
            r.abs_err = l5.residue_rel_diff;
            r.tol = TWO_ROUTE_TOL;
            r.pass = l5.residue_rel_diff <= TWO_ROUTE_TOL;
            r.notes.push("relative difference, statement residues vs exact derivative".into());
            typo_noted &= l5.notes.iter().any(|m| m.starts_with("typo:"));
            r.notes.extend(l5.notes);
            reports.push(r);
        }
    }
    let (pass, failed, worst) = summarize(&reports);
    let mut o = outcome(5, name, true, start);
    o.pass = pass && typo_noted;
    o.detail = format!(
        "{} cases, {failed} failed, max rel diff {worst:.2e}, typo note {}",
        reports.len(),
        if typo_noted { "present" } else { "MISSING" }
    );
    o.reports = reports;
    o
}

pub fn criterion_6(_: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for kind in [SumKind::Lemma3, SumKind::AtanhCancel, SumKind::TanEven, SumKind::Th3Alt] {
        for n in (1..=25).filter(|&n| kind.accepts(n)) {
            match finite_sum(kind, n) {
                Ok(s) => reports.push(sum_report(&s)),
                Err(e) => return failed_setup(6, "Finite sums", true, start, e),
            }
        }
    }
    let (pass, failed, worst) = summarize(&reports);
    let mut o = outcome(6, "Finite sums", true, start);
    o.pass = pass;
    o.detail = format!("{} sums, {failed} failed, max |err| {worst:.2e}", reports.len());
    o.reports = reports;
    o
}

pub fn criterion_7(opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let name = "Symmetry";
    let cases = [
        (SymFamily::Th1Sym, 1, 0),
        (SymFamily::Th1Sym, 3, 0),
        (SymFamily::Th1Sym, 5, 0),
        (SymFamily::Th3Sym, 2, 0),
        (SymFamily::Th3Sym, 4, 1),
    ];
    let results = run_points(&cases, opts.parallel, |&(f, n, k)| symmetry_check(f, n, k, &opts.cfg));
    let results = match results.into_iter().collect::<Result<Vec<_>>>() {
        Ok(r) => r,
        Err(e) => return failed_setup(7, name, true, start, e),
    };
    let sym_ok = results.iter().all(|r| r.report.pass);
    let jac = results.iter().map(|r| r.jacobian.max_rel_err).fold(0.0, f64::max);
    let sym = results.iter().map(|r| r.report.abs_err).fold(0.0, f64::max);
    let chain_fail: Vec<String> = results
        .iter()
        .filter(|r| r.chain_err > CHAIN_TOL)
        .map(|r| {
            format!(
                "{} n={} (theorem/((pi/n) J_real) = {:.6})",
                r.report.family,
                r.report.n.unwrap_or(0),
                r.theorem_lhs / r.scaled_real
            )
        })
        .collect();
    let mut o = outcome(7, name, true, start);
    o.pass = sym_ok && chain_fail.is_empty();
    o.detail = format!("max |J_imag - J_real| {sym:.2e}, max jacobian rel err {jac:.2e}, chain ");
    if chain_fail.is_empty() {
        o.detail.push_str("ok");
    } else {
        o.detail.push_str(&format!("mismatch for {}", chain_fail.join(", ")));
    }
    o.reports = results.into_iter().map(|r| r.report).collect();
    sort_reports(&mut o.reports);
    o
}

pub fn criterion_8(opts: &SuiteOptions) -> CriterionOutcome {
    let mut points: Vec<_> = [0.5, 1.0, 2.0].map(FamilyParams::glaisher1).to_vec();
    points.push(FamilyParams::glaisher2());
    theorem_sweep(8, "Classical Glaisher integrals", points, opts)
}

/// Points of `(0, 3]` at which the large-`n` deviation is sampled.
pub fn large_n_points() -> Vec<f64> {
    (1..=30).map(|i| 0.1 * i as f64).collect()
}

pub fn criterion_9(opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let name = "Exploratory: Ismail-Valent and large-n limit";
    let moduli = [0.5, FRAC_1_SQRT_2];
    let iv = run_points(&moduli, opts.parallel, |&m| ismail_valent_check(m, &opts.cfg));
    let mut reports = match iv.into_iter().collect::<Result<Vec<_>>>() {
        Ok(r) => r,
        Err(e) => return failed_setup(9, name, false, start, e),
    };
    let iv_pass = reports.iter().all(|r| r.pass);
    let iv_values: Vec<String> = reports.iter().map(|r| format!("{:.9}", r.lhs.re)).collect();

    let mut limit_ok = true;
    let mut limit_detail = Vec::new();
    for a in [1.0, 2.0] {
        match large_n_limit_check(101, a, &large_n_points()) {
            Ok(dev) => {
                let mut r = VerificationReport::new("LARGE_N", Some(101), Some(a), None);
                r.lhs = Cx::new(dev, 0.0);
                r.abs_err = dev;
                r.tol = 0.05;
                r.pass = dev <= 0.05;
                r.notes.push("max pointwise relative deviation over x in (0, 3]".into());
                limit_ok &= r.pass;
                limit_detail.push(format!("a={a}: {dev:.2e}"));
                reports.push(r);
            }
            Err(e) => return failed_setup(9, name, false, start, e),
        }
    }
    sort_reports(&mut reports);
    let mut o = outcome(9, name, false, start);
    o.pass = iv_pass && limit_ok;
    o.detail = format!(
        "IV integral = [{}] (target 1 +- 1e-6) {}; large-n deviation at n=101 {} {}",
        iv_values.join(", "),
        if iv_pass { "ok" } else { "FAIL" },
        limit_detail.join(", "),
        if limit_ok { "ok" } else { "FAIL" }
    );
    o.reports = reports;
    o
}

/// Odd-`n` Theorem 3 cases; informative only.
pub fn exploratory_th3(opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let points: Vec<_> = TH3_ODD_CASES.iter().map(|&(n, k)| FamilyParams::th3(n, k)).collect();
    verify_many(&points, &opts.cfg, opts.parallel)
}

/// Criteria 1 to 8, plus 9 when `opts.exploratory` is set.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CriterionOutcome> {
    let mut out = vec![
        criterion_1(opts),
        criterion_2(opts),
        criterion_3(opts),
        criterion_4(opts),
        criterion_5(opts),
        criterion_6(opts),
        criterion_7(opts),
        criterion_8(opts),
    ];
    if opts.exploratory {
        out.push(criterion_9(opts));
    }
    out
}

/// True when every gating criterion passed.
pub fn verdict(outcomes: &[CriterionOutcome]) -> bool {
    outcomes.iter().filter(|o| o.gating).all(|o| o.pass)
}
