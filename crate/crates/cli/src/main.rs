use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use glaisher_core::identities::{finite_sum, symmetry_check, verify, SumKind, SymFamily};
use glaisher_core::parallel;
use glaisher_core::polyexact::{build_p_lemma1, build_q_lemma1, build_q_scaled, build_r_lemma4, parse_rat, rat_to_string, PolyRat, Variable};
use glaisher_core::report::{fmt_sig17, sum_report, to_csv, to_json, to_json_array, to_text_all};
use glaisher_core::specfrac::{expansion_lemma1, expansion_lemma4, expansion_lemma5, fmt_cx, PFExpansion};
use glaisher_core::suite::{exploratory_th3, expansion_report, reassembly_samples, run_suite, verdict, verify_many, SuiteOptions};
use glaisher_core::{Cx, Error, Family, FamilyParams, QuadConfig, Scheme, VerificationReport};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "glaisher-lab", version)]
#[command(about = "Numerical verification of Glaisher-type integral identities")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Quadrature tolerance, absolute and relative
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Integrand evaluation budget per integral
    #[arg(long, global = true)]
    max_evals: Option<u64>,

    /// Quadrature scheme: subst_gauss | double_exp
    #[arg(long, global = true)]
    scheme: Option<String>,

    /// Include odd-n Theorem 3 and elliptic checks; they never change the exit code
    #[arg(long, global = true)]
    exploratory: bool,

    /// Include wall-clock runtimes in the output
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity at one parameter point
    Verify(VerifyArgs),
    /// Verify one family over lists of parameters
    Sweep(SweepArgs),
    /// Print a partial-fraction expansion
    Expand(ExpandArgs),
    /// Print an exact polynomial
    Poly(PolyArgs),
    /// Evaluate the finite-sum identities for one n
    Sums(SumsArgs),
    /// Compare the real-axis and imaginary-axis integrals
    Symmetry(SymmetryArgs),
    /// Run the whole acceptance battery
    All,
}

#[derive(Args)]
struct Selector {
    /// Theorem number; theorem 2 with --a selects the general-a variant
    #[arg(long, conflicts_with = "family")]
    theorem: Option<u8>,

    /// Family name, e.g. TH1, GLAISHER1, LEMMA2, IV
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    select: Selector,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    /// Elliptic modulus (IV)
    #[arg(long)]
    modulus: Option<f64>,
    /// Root index (LEMMA2)
    #[arg(long)]
    j: Option<u32>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    select: Selector,
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    a_list: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    k_list: Vec<u32>,
    /// Run the points one at a time
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct ExpandArgs {
    /// 1, 4 or 5
    #[arg(long)]
    lemma: u8,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Imaginary part of a (lemma 1 only)
    #[arg(long, default_value_t = 0.0)]
    a_im: f64,
    #[arg(long, default_value_t = 0)]
    k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    /// Denominator of lemma 1 in x = t^2
    Q,
    /// Numerator of lemma 1, odd n
    P,
    /// Remainder of lemma 4, even n
    R,
    /// Scaled denominator in t
    QScaled,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long, value_enum, default_value_t = PolyKind::Q)]
    which: PolyKind,
    #[arg(long)]
    n: u32,
    /// Rational a, as p, p/q or a finite decimal
    #[arg(long, default_value = "1")]
    a: String,
}

#[derive(Args)]
struct SumsArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct SymmetryArgs {
    /// th1 or th3
    #[arg(long, default_value = "th1")]
    family: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
}

/// Failure that ends the run with a specific exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParam(_) | Error::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
            Error::NonFinite(_) | Error::IdentityFailed(_) => Failure::Numeric(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    cfg: QuadConfig,
    format: Format,
    exploratory: bool,
    timing: bool,
}

fn quad_config(cli: &Cli) -> Result<QuadConfig, Failure> {
    let mut cfg = QuadConfig::default();
    if let Some(t) = cli.tol {
        cfg = cfg.with_tol(t);
    }
    if let Some(m) = cli.max_evals {
        cfg.max_evals = m;
    }
    if let Some(s) = &cli.scheme {
        cfg.scheme = s.parse::<Scheme>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit_reports(ctx: &Ctx, reports: &[VerificationReport], single: bool) {
    let out = match ctx.format {
        Format::Text => to_text_all(reports, ctx.timing),
        Format::Json if single && reports.len() == 1 => format!("{}\n", to_json(&reports[0], ctx.timing)),
        Format::Json => to_json_array(reports, ctx.timing),
        Format::Csv => to_csv(reports, ctx.timing),
    };
    print!("{out}");
}

fn code_for(reports: &[VerificationReport]) -> u8 {
    if reports.iter().all(|r| r.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn resolve_family(sel: &Selector, has_a: bool) -> Result<Family, Failure> {
    match (sel.theorem, &sel.family) {
        (Some(1), _) => Ok(Family::Th1),
        (Some(2), _) if has_a => Ok(Family::Th2GeneralA),
        (Some(2), _) => Ok(Family::Th2),
        (Some(3), _) => Ok(Family::Th3),
        (Some(t), _) => Err(Failure::Usage(format!("--theorem must be 1, 2 or 3, got {t}"))),
        (None, Some(f)) => Ok(f.parse()?),
        (None, None) => Err(Failure::Usage("one of --theorem or --family is required".into())),
    }
}

fn is_exploratory(p: &FamilyParams) -> bool {
    p.family == Family::Iv || (p.family == Family::Th3 && p.n.is_some_and(|n| n % 2 == 1))
}

fn gate_exploratory(ctx: &Ctx, p: &FamilyParams) -> Result<(), Failure> {
    if is_exploratory(p) && !ctx.exploratory {
        return Err(Failure::Usage(format!("{} at these parameters needs --exploratory", p.family)));
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let family = resolve_family(&args.select, args.a.is_some())?;
    let p = FamilyParams { family, n: args.n, a: args.a, k: args.k, modulus: args.modulus, j: args.j };
    p.validate()?;
    gate_exploratory(ctx, &p)?;
    let r = verify(&p, &ctx.cfg)?;
    emit_reports(ctx, std::slice::from_ref(&r), true);
    if is_exploratory(&p) {
        return Ok(EXIT_PASS);
    }
    Ok(code_for(&[r]))
}

fn sweep_points(family: Family, args: &SweepArgs) -> Result<Vec<FamilyParams>, Failure> {
    let ns: Vec<Option<u32>> = if args.n_list.is_empty() { vec![None] } else { args.n_list.iter().map(|&n| Some(n)).collect() };
    let as_: Vec<Option<f64>> = if args.a_list.is_empty() { vec![None] } else { args.a_list.iter().map(|&a| Some(a)).collect() };
    let ks: Vec<Option<u32>> = if args.k_list.is_empty() { vec![None] } else { args.k_list.iter().map(|&k| Some(k)).collect() };
    let mut points = Vec::new();
    for &n in &ns {
        for &a in &as_ {
            for &k in &ks {
                let mut p = FamilyParams { family, n, a, k, modulus: None, j: None };
                if family == Family::Iv {
                    p.modulus = a;
                    p.a = None;
                }
                if family == Family::Th3 {
                    if let (Some(n), Some(k)) = (n, k) {
                        if k >= n / 2 {
                            eprintln!("skipping TH3 n={n} k={k}: needs k < {}", n / 2);
                            continue;
                        }
                    }
                }
                p.validate()?;
                points.push(p);
            }
        }
    }
    Ok(points)
}

fn cmd_sweep(ctx: &Ctx, args: &SweepArgs) -> Outcome {
    let family = resolve_family(&args.select, !args.a_list.is_empty())?;
    let points = sweep_points(family, args)?;
    for p in &points {
        gate_exploratory(ctx, p)?;
    }
    let reports = verify_many(&points, &ctx.cfg, !args.sequential)?;
    emit_reports(ctx, &reports, false);
    // reports come back sorted, so exploratory ones are recognized by content
    let gating_ok = reports
        .iter()
        .filter(|r| !(r.family == "IV" || r.notes.iter().any(|m| m == "exploratory: odd n")))
        .all(|r| r.pass);
    Ok(if gating_ok { EXIT_PASS } else { EXIT_FAIL })
}

fn json_cx(z: Cx) -> String {
    let num = |x: f64| fmt_sig17(x).unwrap_or_else(|| "null".into());
    format!("[{},{}]", num(z.re), num(z.im))
}

fn render_expansion(ctx: &Ctx, e: &PFExpansion, check: &VerificationReport) -> String {
    let mut out = String::new();
    match ctx.format {
        Format::Text => {
            let _ = writeln!(out, "{} n={} a={}{}", e.family.name(), e.n, fmt_cx(e.a), e.k.map(|k| format!(" k={k}")).unwrap_or_default());
            let _ = writeln!(out, "constant {}", fmt_cx(e.constant));
            for t in &e.terms {
                let _ = writeln!(out, "pole {} residue {}", fmt_cx(t.pole), fmt_cx(t.residue));
            }
            out.push_str(&to_text_all(std::slice::from_ref(check), ctx.timing));
        }
        Format::Json => {
            let terms: Vec<String> = e
                .terms
                .iter()
                .map(|t| format!("{{\"pole\":{},\"residue\":{}}}", json_cx(t.pole), json_cx(t.residue)))
                .collect();
            let _ = writeln!(
                out,
                "{{\"family\":\"{}\",\"n\":{},\"a\":{},\"k\":{},\"constant\":{},\"terms\":[{}],\"check\":{}}}",
                e.family.name(),
                e.n,
                json_cx(e.a),
                e.k.map_or("null".into(), |k| k.to_string()),
                json_cx(e.constant),
                terms.join(","),
                to_json(check, ctx.timing)
            );
        }
        Format::Csv => {
            let num = |x: f64| fmt_sig17(x).unwrap_or_default();
            out.push_str("kind,re,im,residue_re,residue_im\n");
            let _ = writeln!(out, "constant,{},{},,", num(e.constant.re), num(e.constant.im));
            for t in &e.terms {
                let _ = writeln!(out, "pole,{},{},{},{}", num(t.pole.re), num(t.pole.im), num(t.residue.re), num(t.residue.im));
            }
        }
    }
    out
}

fn cmd_expand(ctx: &Ctx, args: &ExpandArgs) -> Outcome {
    let e = match args.lemma {
        1 => expansion_lemma1(args.n, Cx::new(args.a, args.a_im))?,
        4 => expansion_lemma4(args.n, args.a)?,
        5 => expansion_lemma5(args.n, args.k)?.expansion,
        l => return Err(Failure::Usage(format!("--lemma must be 1, 4 or 5, got {l}"))),
    };
    if args.lemma != 1 && args.a_im != 0.0 {
        return Err(Failure::Usage("--a-im applies to lemma 1 only".into()));
    }
    // the exact residual check needs a rational a; complex a is shown unchecked
    if args.a_im != 0.0 {
        let mut out = String::new();
        let _ = writeln!(out, "constant {}", fmt_cx(e.constant));
        for t in &e.terms {
            let _ = writeln!(out, "pole {} residue {}", fmt_cx(t.pole), fmt_cx(t.residue));
        }
        print!("{out}");
        return Ok(EXIT_PASS);
    }
    let check = expansion_report(&e, &reassembly_samples())?;
    print!("{}", render_expansion(ctx, &e, &check));
    Ok(code_for(&[check]))
}

fn var_name(v: Variable) -> &'static str {
    match v {
        Variable::XEqualsTSquared => "x",
        Variable::TDirect => "t",
    }
}

fn cmd_poly(ctx: &Ctx, args: &PolyArgs) -> Outcome {
    let a = parse_rat(&args.a)?;
    let (name, constant, poly): (&str, Option<String>, PolyRat) = match args.which {
        PolyKind::Q => ("Q", None, build_q_lemma1(args.n, &a)?),
        PolyKind::P => ("P", None, build_p_lemma1(args.n, &a)?),
        PolyKind::R => {
            let (c, r) = build_r_lemma4(args.n, &a)?;
            ("R", Some(rat_to_string(&c)), r)
        }
        PolyKind::QScaled => ("Q_SCALED", None, build_q_scaled(args.n)?),
    };
    let coeffs = poly.coeff_strings();
    let var = var_name(poly.var());
    let a_str = rat_to_string(&a);
    let mut out = String::new();
    match ctx.format {
        Format::Text => {
            let _ = writeln!(out, "{name} n={} a={a_str} variable={var} degree={}", args.n, coeffs.len().saturating_sub(1));
            if let Some(c) = &constant {
                let _ = writeln!(out, "constant {c}");
            }
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{var}^{i} {c}");
            }
        }
        Format::Json => {
            let quoted: Vec<String> = coeffs.iter().map(|c| format!("\"{c}\"")).collect();
            let _ = writeln!(
                out,
                "{{\"poly\":\"{name}\",\"n\":{},\"a\":\"{a_str}\",\"variable\":\"{var}\",\"constant\":{},\"coeffs\":[{}]}}",
                args.n,
                constant.map_or("null".into(), |c| format!("\"{c}\"")),
                quoted.join(",")
            );
        }
        Format::Csv => {
            out.push_str("power,coeff\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{i},{c}");
            }
        }
    }
    print!("{out}");
    Ok(EXIT_PASS)
}

fn cmd_sums(ctx: &Ctx, args: &SumsArgs) -> Outcome {
    let n = args.n;
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let mut kinds = vec![SumKind::Lemma3, SumKind::AtanhCancel, SumKind::TanEven];
    kinds.extend((0..n / 2).map(SumKind::Th3Sum));
    kinds.push(SumKind::Th3Alt);
    let mut reports = Vec::new();
    for kind in kinds.into_iter().filter(|k| k.accepts(n)) {
        reports.push(sum_report(&finite_sum(kind, n)?));
    }
    emit_reports(ctx, &reports, false);
    Ok(code_for(&reports))
}

fn cmd_symmetry(ctx: &Ctx, args: &SymmetryArgs) -> Outcome {
    let fam = match args.family.to_ascii_lowercase().as_str() {
        "th1" | "th1_sym" => SymFamily::Th1Sym,
        "th3" | "th3_sym" => SymFamily::Th3Sym,
        f => return Err(Failure::Usage(format!("--family must be th1 or th3, got {f:?}"))),
    };
    let r = symmetry_check(fam, args.n, args.k, &ctx.cfg)?;
    emit_reports(ctx, std::slice::from_ref(&r.report), true);
    Ok(code_for(&[r.report]))
}

fn cmd_all(ctx: &Ctx) -> Outcome {
    let opts = SuiteOptions { cfg: ctx.cfg, exploratory: ctx.exploratory, ..SuiteOptions::default() };
    let outcomes = run_suite(&opts);
    let odd_th3 = if ctx.exploratory { exploratory_th3(&opts)? } else { Vec::new() };
    match ctx.format {
        Format::Text => {
            for o in &outcomes {
                println!("{}", o.line());
                if ctx.timing {
                    println!("             {:.1} ms", o.elapsed_ms);
                }
            }
            if !odd_th3.is_empty() {
                println!("exploratory: odd-n Theorem 3");
                print!("{}", to_text_all(&odd_th3, ctx.timing));
            }
        }
        Format::Json | Format::Csv => {
            let mut reports: Vec<VerificationReport> = outcomes.iter().flat_map(|o| o.reports.iter().cloned()).collect();
            reports.extend(odd_th3);
            emit_reports(ctx, &reports, false);
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
        }
    }
    Ok(if verdict(&outcomes) { EXIT_PASS } else { EXIT_FAIL })
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { cfg: quad_config(&cli)?, format: cli.format, exploratory: cli.exploratory, timing: cli.timing };
    match &cli.command {
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Sweep(a) => cmd_sweep(&ctx, a),
        Command::Expand(a) => cmd_expand(&ctx, a),
        Command::Poly(a) => cmd_poly(&ctx, a),
        Command::Sums(a) => cmd_sums(&ctx, a),
        Command::Symmetry(a) => cmd_symmetry(&ctx, a),
        Command::All => cmd_all(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = parallel::init_from_env() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
