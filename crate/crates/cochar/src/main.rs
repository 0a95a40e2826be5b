//! Command-line front end: compute truncated Hilbert series, cocharacter
//! decompositions, SL(n)-invariant series, and run verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 work
//! limit exceeded.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cochar::freealg::{
    berele_drensky_crosscheck, ideal_inclusion_witnesses, multilinear_quotient, relfree_dims,
    FreeAlgError, GradedDims, WorkLimits,
};
use cochar::series::{formanek_product_many, IdealSpec, SeriesKind};
use cochar::symfunc::{schur_expand, sm_decompose};
use cochar::verify::{
    check_bounds_for_spec, check_formanek, check_product_additivity, check_sl_degree_bounds,
    profile_for_spec, sl_invariant_series, Verdict, VerificationReport, VerifyError,
};

#[derive(Parser)]
#[command(name = "cochar", about = "Exact cocharacter and Hilbert-series computations \
for relatively free algebras of products of commutator T-ideals", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Lift the default n/degree/m work caps
    #[arg(long)]
    force: bool,
    /// Cap on the word-space size n^D (default 65536, or COCHAR_MAX_WORDS)
    #[arg(long, value_name = "N")]
    limit_words: Option<u64>,
}

impl CommonOpts {
    fn limits(&self) -> WorkLimits {
        let mut limits = WorkLimits::from_env();
        if let Some(w) = self.limit_words {
            limits.max_words = w;
        }
        if self.force {
            limits.max_n = usize::MAX;
            limits.max_degree = u32::MAX;
            limits.max_m = u32::MAX;
            if self.limit_words.is_none() {
                limits.max_words = u64::MAX;
            }
        }
        limits
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multigraded Hilbert series of the relatively free algebra (brute
    /// force; for k ≥ 2 factors also the product-formula route side by side)
    Hilbert {
        /// Comma-separated factor list p1,p2,…: the ideal I_{p1+1}⋯I_{pk+1}
        #[arg(long, value_parser = parse_spec)]
        spec: IdealSpec,
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// Truncation: all multidegrees of total degree ≤ D
        #[arg(long = "D")]
        d: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Codimension c_m and the S_m cocharacter decomposition
    Cocharacter {
        #[arg(long, value_parser = parse_spec)]
        spec: IdealSpec,
        /// Multilinear degree
        #[arg(long)]
        m: u32,
        /// Also verify the character route against the series route
        #[arg(long)]
        crosscheck: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a verification suite; exit 0 iff every claim passes
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_parser = parse_spec)]
        spec: Option<IdealSpec>,
        /// Left ideal for inclusion/additivity suites
        #[arg(long = "specA", value_parser = parse_spec)]
        spec_a: Option<IdealSpec>,
        /// Right ideal for inclusion/additivity suites
        #[arg(long = "specB", value_parser = parse_spec)]
        spec_b: Option<IdealSpec>,
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        d: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// SL(n)-invariant Hilbert polynomial from truncated data, with bounds
    Invariants {
        #[arg(long, value_parser = parse_spec)]
        spec: IdealSpec,
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        d: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bounds,
    Formanek,
    Inclusion,
    SlInvariants,
    Additivity,
    All,
}

fn parse_spec(s: &str) -> Result<IdealSpec, String> {
    IdealSpec::parse(s).map_err(|e| e.to_string())
}

fn emit(common: &CommonOpts, text: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CmdError::Limit(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

enum CmdError {
    Limit(FreeAlgError),
    Usage(String),
    Io(std::io::Error),
}

impl From<FreeAlgError> for CmdError {
    fn from(e: FreeAlgError) -> Self {
        CmdError::Limit(e)
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

impl From<VerifyError> for CmdError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::FreeAlg(e) => CmdError::Limit(e),
            VerifyError::InsufficientTruncation(msg) => CmdError::Usage(msg),
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CmdError> {
    match command {
        Command::Hilbert { spec, n, d, common } => cmd_hilbert(&spec, n, d, &common),
        Command::Cocharacter { spec, m, crosscheck, common } => {
            cmd_cocharacter(&spec, m, crosscheck, &common)
        }
        Command::Verify { suite, spec, spec_a, spec_b, n, d, common } => {
            cmd_verify(suite, spec, spec_a, spec_b, n, d, &common)
        }
        Command::Invariants { spec, n, d, common } => cmd_invariants(&spec, n, d, &common),
    }
}

fn cmd_hilbert(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    common: &CommonOpts,
) -> Result<ExitCode, CmdError> {
    let limits = common.limits();
    let dims = relfree_dims(spec, n, d, &limits)?;
    let formula = if spec.k() >= 2 {
        let components: Result<Vec<_>, FreeAlgError> = spec
            .factors()
            .iter()
            .map(|&p| Ok(relfree_dims(&IdealSpec::single(p), n, d, &limits)?
                .to_series(SeriesKind::Full)))
            .collect();
        Some(formanek_product_many(&components?, n, d).expect("nonempty factor list"))
    } else {
        None
    };

    let text = match common.format {
        Format::Json => {
            let mut obj = json!({
                "spec": spec.factors(),
                "n": n,
                "D": d,
                "series": dims.to_sym_poly().to_json(),
            });
            if let Some(f) = &formula {
                obj["formula_series"] = f.to_json();
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
        }
        Format::Csv => hilbert_csv(&dims, formula.as_ref()),
        Format::Table => hilbert_table(spec, &dims, formula.as_ref()),
    };
    emit(common, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn hilbert_csv(dims: &GradedDims, formula: Option<&cochar::series::HilbertSeries>) -> String {
    match formula {
        None => dims.to_csv(),
        Some(f) => {
            let header: Vec<String> = (1..=dims.n).map(|i| format!("e{i}")).collect();
            let mut out = format!("{},dim,formula\n", header.join(","));
            for (mu, d) in &dims.dims {
                let es: Vec<String> = mu.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("{},{},{}\n", es.join(","), d, f.coeff(mu)));
            }
            out
        }
    }
}

fn hilbert_table(
    spec: &IdealSpec,
    dims: &GradedDims,
    formula: Option<&cochar::series::HilbertSeries>,
) -> String {
    let mut out = format!("Hilbert series of F_{}({}), total degree <= {}\n", dims.n, spec,
        dims.max_degree);
    match formula {
        None => out.push_str("multidegree  dim\n"),
        Some(_) => out.push_str("multidegree  dim  formula\n"),
    }
    for (mu, d) in &dims.dims {
        let es: Vec<String> = mu.iter().map(|e| e.to_string()).collect();
        let mu_text = format!("({})", es.join(","));
        match formula {
            None => out.push_str(&format!("{mu_text:<12} {d}\n")),
            Some(f) => out.push_str(&format!("{mu_text:<12} {d}  {}\n", f.coeff(mu))),
        }
    }
    out
}

fn cmd_cocharacter(
    spec: &IdealSpec,
    m: u32,
    crosscheck: bool,
    common: &CommonOpts,
) -> Result<ExitCode, CmdError> {
    let limits = common.limits();
    let (codim, chi) = multilinear_quotient(spec, m, &limits)?;
    let decomposition = sm_decompose(&chi)
        .map_err(|e| CmdError::Usage(format!("quotient trace is not a character: {e}")))?;

    let crosscheck_ok = if crosscheck {
        Some(berele_drensky_crosscheck(spec, m, &limits)?)
    } else {
        None
    };

    let text = match common.format {
        Format::Json => {
            let mut obj = json!({
                "spec": spec.factors(),
                "m": m,
                "codim": codim,
                "multiplicities": decomposition.to_json()["terms"],
            });
            if let Some(ok) = crosscheck_ok {
                obj["crosscheck"] = json!(if ok { "OK" } else { "MISMATCH" });
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
        }
        Format::Csv => {
            let mut out = String::from("partition,mult\n");
            for (lam, c) in decomposition.iter() {
                let parts: Vec<String> = lam.parts().iter().map(|p| p.to_string()).collect();
                out.push_str(&format!("{},{}\n", parts.join("+"), c));
            }
            if let Some(ok) = crosscheck_ok {
                out.push_str(&format!("crosscheck,{}\n", if ok { "OK" } else { "MISMATCH" }));
            }
            out
        }
        Format::Table => {
            let mut out = format!("c_{m}({}) = {codim}\n", spec);
            for (lam, c) in decomposition.iter() {
                out.push_str(&format!("{lam}: {c}\n"));
            }
            if let Some(ok) = crosscheck_ok {
                out.push_str(&format!("crosscheck: {}\n", if ok { "OK" } else { "MISMATCH" }));
            }
            out
        }
    };
    emit(common, &text)?;
    match crosscheck_ok {
        Some(false) => Ok(ExitCode::from(1)),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn cmd_verify(
    suite: Suite,
    spec: Option<IdealSpec>,
    spec_a: Option<IdealSpec>,
    spec_b: Option<IdealSpec>,
    n: usize,
    d: u32,
    common: &CommonOpts,
) -> Result<ExitCode, CmdError> {
    let limits = common.limits();
    let mut reports: Vec<VerificationReport> = Vec::new();

    let need_spec = |s: &Option<IdealSpec>| -> Result<IdealSpec, CmdError> {
        s.clone().ok_or_else(|| CmdError::Usage("this suite requires --spec".into()))
    };
    let need_pair = |a: &Option<IdealSpec>, b: &Option<IdealSpec>| -> Result<(IdealSpec, IdealSpec), CmdError> {
        match (a, b) {
            (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
            _ => Err(CmdError::Usage("this suite requires --specA and --specB".into())),
        }
    };

    let run_bounds = matches!(suite, Suite::Bounds | Suite::All);
    let run_formanek = matches!(suite, Suite::Formanek | Suite::All);
    let run_sl = matches!(suite, Suite::SlInvariants | Suite::All);
    let run_inclusion = matches!(suite, Suite::Inclusion)
        || (suite == Suite::All && spec_a.is_some() && spec_b.is_some());
    let run_additivity = matches!(suite, Suite::Additivity)
        || (suite == Suite::All && spec_a.is_some() && spec_b.is_some());

    if run_bounds {
        reports.push(check_bounds_for_spec(&need_spec(&spec)?, n, d, &limits)?);
    }
    if run_formanek {
        reports.push(check_formanek(&need_spec(&spec)?, n, d, &limits)?);
    }
    if run_sl {
        match check_sl_degree_bounds(&need_spec(&spec)?, n, d, &limits) {
            Ok(r) => reports.push(r),
            Err(VerifyError::InsufficientTruncation(msg)) => {
                reports.push(VerificationReport::new(
                    "invariant-degree-bound",
                    json!({ "note": msg }),
                    Verdict::Skipped,
                    vec![],
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if run_inclusion {
        let (a, b) = need_pair(&spec_a, &spec_b)?;
        let witnesses = ideal_inclusion_witnesses(&a, &b, n, d, &limits)?;
        let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        reports.push(VerificationReport::new(
            "ideal-inclusion",
            json!({ "specA": a.factors(), "specB": b.factors(), "n": n, "D": d }),
            verdict,
            witnesses.iter().map(|mu| format!("{mu:?}")).collect(),
        ));
    }
    if run_additivity {
        let (a, b) = need_pair(&spec_a, &spec_b)?;
        reports.push(check_product_additivity(&a, &b, n, d, &limits)?);
    }

    let text = match common.format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).expect("serializable"))
        }
        _ => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.to_text());
                out.push('\n');
            }
            out
        }
    };
    emit(common, &text)?;
    let all_ok = reports.iter().all(|r| r.verdict != Verdict::Fail);
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn poly_text(coeffs: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cmd_invariants(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    common: &CommonOpts,
) -> Result<ExitCode, CmdError> {
    let limits = common.limits();
    let series = cochar::freealg::relfree_hilbert(spec, n, d, &limits)?;
    let expansion = schur_expand(&series.poly)
        .map_err(|e| CmdError::Usage(format!("series is not Schur-positive: {e}")))?;
    let inv = sl_invariant_series(&expansion, n);

    let profile = profile_for_spec(spec);
    let bound = n as u32 * profile.s2;
    let certified = d >= bound;

    let text = match common.format {
        Format::Json => {
            let obj = json!({
                "spec": spec.factors(),
                "n": n,
                "D": d,
                "invariant_series": inv,
                "degree_bound": bound,
                "certified": certified,
            });
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
        }
        Format::Csv => {
            let mut out = String::from("degree,coeff\n");
            for (i, c) in inv.iter().enumerate() {
                out.push_str(&format!("{i},{c}\n"));
            }
            out.push_str(&format!("bound,{bound}\n"));
            out.push_str(&format!("certified,{certified}\n"));
            out
        }
        Format::Table => {
            let status = if certified {
                "certified".to_string()
            } else {
                format!("InsufficientTruncation (bound {bound} > D = {d})")
            };
            format!("{}; bound n*s2 = {}: {}\n", poly_text(&inv), bound, status)
        }
    };
    emit(common, &text)?;
    Ok(ExitCode::SUCCESS)
}
