//! `apolar`: batch CLI over the apolarity library. Results go to standard
//! output (JSON/CSV/Markdown), progress to standard error. Exit codes:
//! 0 success/pass, 1 usage error, 2 resource ceiling, 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use apolar::bounds::{table_row, BoundsReport, CertifiedDegree};
use apolar::groebner::{
    buchberger_check_opts, laubenbacher_swanson_basis, verify_degree2_generation_via_groebner,
};
use apolar::invariants::{build_invariant, degree2_candidates};
use apolar::linalg::DEFAULT_PRIME;
use apolar::report::{table_csv, table_json, table_markdown, HilbertRecord};
use apolar::{
    hilbert_function, minimal_generator_degrees, verify_degree2_generation_direct, waring_solve,
    waring_verify, InvariantKind, Limits, Mode, Polynomial, Side, TermOrder, VariableGrid,
};

#[derive(Parser)]
#[command(
    name = "apolar",
    version,
    about = "Apolar ideals of matrix invariants: Hilbert functions, degree-2 \
             generation checks, Groebner verification, and rank bounds"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Coefficient mode for rank computations
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Word prime for mod-p mode
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Maximum ambient monomial-space dimension
    #[arg(long, global = true)]
    ceiling: Option<usize>,
    /// Maximum pivot count per elimination
    #[arg(long, global = true)]
    max_pivots: Option<usize>,
    /// Seed for randomized checks (reserved; all outputs are deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (reserved; computations are currently serial)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rational,
    ModP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Direct,
    Groebner,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// degree2_candidates of the invariant
    Candidates,
    /// Laubenbacher-Swanson basis of the 2x2 permanent ideal
    Ls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function and length of S/Ann(F)
    Hilbert {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        n: usize,
        /// Also report minimal generator counts up to deg F + 1
        #[arg(long)]
        with_mu: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Verify degree-2 generation of Ann(F)
    Verify {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
        /// Largest degree checked (default: deg F + 1)
        #[arg(long)]
        k_max: Option<usize>,
        /// Remove one candidate before verifying (negative control)
        #[arg(long)]
        drop_candidate: Option<usize>,
    },
    /// Buchberger check of a proposed basis
    Groebner {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BasisArg::Candidates)]
        basis: BasisArg,
        /// Examine coprime-leading-term pairs too
        #[arg(long)]
        no_coprime_skip: bool,
    },
    /// Rank bound values for one invariant
    Bounds {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        n: usize,
        /// Refuse an uncertified generating degree
        #[arg(long)]
        strict: bool,
        /// Certify the generating degree by a full generator scan
        #[arg(long)]
        certify: bool,
    },
    /// Determinant bounds table over a range of n
    Table {
        /// Range, e.g. 2..6 (inclusive)
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Compare the CSV form against a golden file
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Evaluate a contraction h ∘ F
    Contract {
        /// Grid spec: generic:RxC, skew:N, or sym:N
        #[arg(long)]
        grid: String,
        /// Operator polynomial (dual side, canonical text)
        #[arg(long)]
        h: String,
        /// Target polynomial (base side, canonical text)
        #[arg(long)]
        f: String,
    },
    /// Verify or solve a Waring decomposition F = sum c_i l_i^d
    Waring {
        /// Grid spec: generic:RxC, skew:N, or sym:N
        #[arg(long)]
        grid: String,
        #[arg(long)]
        f: String,
        /// Linear forms, separated by ';'
        #[arg(long)]
        forms: String,
        /// Coefficients, separated by ';' (omit to solve)
        #[arg(long)]
        coeffs: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Ceiling(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Ceiling(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Ceiling(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<apolar::Error> for Failure {
    fn from(e: apolar::Error) -> Self {
        match e {
            apolar::Error::Ceiling(_) => Failure::Ceiling(e.to_string()),
            apolar::Error::CandidateNotApolar { .. } | apolar::Error::UncertifiedDegree(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Config {
    mode: Mode,
    limits: Limits,
}

fn env_var(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|s| !s.is_empty())
}

fn resolve_config(cli: &Cli) -> Result<Config, Failure> {
    let prime = cli.prime.unwrap_or(DEFAULT_PRIME);
    let mode_name = match cli.mode {
        Some(ModeArg::Rational) => "rational".to_string(),
        Some(ModeArg::ModP) => "mod-p".to_string(),
        None => env_var("APOLAR_MODE").unwrap_or_else(|| "rational".to_string()),
    };
    let mode = match mode_name.as_str() {
        "rational" => Mode::Rational,
        "mod-p" => Mode::ModP(prime),
        other => return Err(usage(format!("unknown mode '{other}'"))),
    };
    let mut limits = Limits::default();
    if let Some(c) = cli.ceiling.or_else(|| env_var("APOLAR_CEILING").and_then(|s| s.parse().ok()))
    {
        if c == 0 {
            return Err(usage("ceiling must be positive"));
        }
        limits.max_ambient = c;
    }
    if let Some(p) = cli.max_pivots {
        if p == 0 {
            return Err(usage("max pivot count must be positive"));
        }
        limits.max_pivots = p;
    }
    if let Some(t) = cli.threads.or_else(|| env_var("APOLAR_THREADS").and_then(|s| s.parse().ok()))
    {
        if t == 0 {
            return Err(usage("thread count must be positive"));
        }
    }
    Ok(Config { mode, limits })
}

fn parse_invariant(s: &str, n: usize, mode: Mode) -> Result<InvariantKind, Failure> {
    let kind = InvariantKind::from_cli_name(s)
        .ok_or_else(|| usage(format!("unknown invariant '{s}' (expected det/perm/pf/hf)")))?;
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    if let Mode::ModP(p) = mode {
        let size = match kind {
            InvariantKind::Determinant | InvariantKind::Permanent => n,
            _ => 2 * n,
        };
        if p <= 2 * size as u64 {
            return Err(usage(format!("prime {p} must exceed 2*{size}")));
        }
    }
    Ok(kind)
}

fn parse_grid(s: &str) -> Result<VariableGrid, Failure> {
    let (kind, dims) = s
        .split_once(':')
        .ok_or_else(|| usage("grid spec must be kind:size, e.g. generic:3x3 or skew:6"))?;
    let grid = match kind {
        "generic" => {
            let (r, c) = match dims.split_once('x') {
                Some((r, c)) => (
                    r.parse().map_err(|_| usage("bad row count"))?,
                    c.parse().map_err(|_| usage("bad column count"))?,
                ),
                None => {
                    let n: usize = dims.parse().map_err(|_| usage("bad grid size"))?;
                    (n, n)
                }
            };
            VariableGrid::generic(r, c)?
        }
        "skew" => VariableGrid::skew_symmetric(dims.parse().map_err(|_| usage("bad grid size"))?)?,
        "sym" => VariableGrid::zero_diagonal_symmetric(
            dims.parse().map_err(|_| usage("bad grid size"))?,
        )?,
        other => return Err(usage(format!("unknown grid kind '{other}'"))),
    };
    Ok(grid)
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.parse().map_err(|_| usage("bad range start"))?;
        let hi: usize = b.parse().map_err(|_| usage("bad range end"))?;
        if lo == 0 || hi < lo {
            return Err(usage("range must be nonempty with positive start"));
        }
        Ok((lo, hi))
    } else {
        let n: usize = s.parse().map_err(|_| usage("bad range"))?;
        if n == 0 {
            return Err(usage("n must be positive"));
        }
        Ok((n, n))
    }
}

fn cmd_hilbert(
    cfg: &Config,
    invariant: &str,
    n: usize,
    with_mu: bool,
    format: FormatArg,
) -> Result<(), Failure> {
    let kind = parse_invariant(invariant, n, cfg.mode)?;
    eprintln!("hilbert: invariant={} n={n} mode={}", kind.cli_name(), cfg.mode.label());
    let f = build_invariant(kind, n)?;
    let h = hilbert_function(&f, cfg.mode, &cfg.limits)?;
    let gens = if with_mu {
        let d = f.degree().unwrap();
        Some(minimal_generator_degrees(&f, d + 1, &cfg.limits)?)
    } else {
        None
    };
    let rec = HilbertRecord::new(kind, n, &h, gens.as_ref(), cfg.mode);
    match format {
        FormatArg::Json => println!("{}", rec.to_json()),
        FormatArg::Csv => println!("{}", rec.to_csv_row()),
        FormatArg::Markdown => return Err(usage("hilbert supports json or csv output")),
    }
    Ok(())
}

fn cmd_verify(
    cfg: &Config,
    invariant: &str,
    n: usize,
    route: RouteArg,
    k_max: Option<usize>,
    drop_candidate: Option<usize>,
) -> Result<(), Failure> {
    let kind = parse_invariant(invariant, n, cfg.mode)?;
    let f = build_invariant(kind, n)?;
    let mut candidates = degree2_candidates(kind, n)?;
    if let Some(i) = drop_candidate {
        if i >= candidates.len() {
            return Err(usage(format!(
                "candidate index {i} out of range (have {})",
                candidates.len()
            )));
        }
        candidates.remove(i);
    }
    let d = f.degree().unwrap();
    let k_max = k_max.unwrap_or(d + 1);
    let mut out = json!({
        "invariant": kind.cli_name(),
        "n": n,
        "kMax": k_max,
        "candidates": candidates.len(),
    });
    let mut pass = true;
    if matches!(route, RouteArg::Direct | RouteArg::Both) {
        eprintln!("verify: direct route, k_max={k_max}");
        let v = verify_degree2_generation_direct(&f, &candidates, k_max, &cfg.limits)?;
        pass &= v.all_equal;
        out["direct"] = serde_json::to_value(&v).expect("serializable");
    }
    if matches!(route, RouteArg::Groebner | RouteArg::Both) {
        eprintln!("verify: groebner route");
        let v = verify_degree2_generation_via_groebner(
            &f,
            &candidates,
            TermOrder::DiagonalLex,
            cfg.mode,
            &cfg.limits,
        )?;
        pass &= v.route_available && v.all_equal;
        out["groebner"] = serde_json::to_value(&v).expect("serializable");
    }
    out["pass"] = json!(pass);
    println!("{out}");
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification("degree-2 generation check failed".into()))
    }
}

fn cmd_groebner(
    cfg: &Config,
    invariant: &str,
    n: usize,
    basis: BasisArg,
    no_coprime_skip: bool,
) -> Result<(), Failure> {
    let kind = parse_invariant(invariant, n, cfg.mode)?;
    let gens = match basis {
        BasisArg::Candidates => degree2_candidates(kind, n)?,
        BasisArg::Ls => laubenbacher_swanson_basis(VariableGrid::generic(n, n)?)?,
    };
    eprintln!("groebner: {} generators", gens.len());
    let rep = buchberger_check_opts(&gens, TermOrder::DiagonalLex, !no_coprime_skip)?;
    println!("{}", serde_json::to_string(&rep).expect("serializable"));
    if rep.is_groebner {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} S-pairs failed to reduce", rep.failures.len())))
    }
}

fn cmd_bounds(
    cfg: &Config,
    invariant: &str,
    n: usize,
    strict: bool,
    certify: bool,
) -> Result<(), Failure> {
    let kind = parse_invariant(invariant, n, cfg.mode)?;
    let f = build_invariant(kind, n)?;
    let d = f.degree().unwrap();
    eprintln!("bounds: invariant={} n={n}", kind.cli_name());
    let h = hilbert_function(&f, cfg.mode, &cfg.limits)?;
    let degree = if certify {
        minimal_generator_degrees(&f, d + 1, &cfg.limits)?.certified_degree()
    } else {
        // cheap scan: enough to find the degree-2 generators, not to rule
        // out later ones
        let scan = minimal_generator_degrees(&f, 2.min(d + 1), &cfg.limits)?;
        let found = scan.max_generating_degree().max(1);
        if scan.k_max > d {
            CertifiedDegree::certified(found)
        } else {
            CertifiedDegree::asserted(found)
        }
    };
    let mut report = BoundsReport::new(kind.cli_name(), n, degree, &h.values, strict)?;
    if !degree.is_certified() {
        report
            .notes
            .push("generating degree asserted from a partial scan; pass --certify".to_string());
    }
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(())
}

fn cmd_table(
    cfg: &Config,
    range: &str,
    format: FormatArg,
    golden: Option<&PathBuf>,
) -> Result<(), Failure> {
    let (lo, hi) = parse_range(range)?;
    if lo < 2 {
        return Err(usage("table needs n >= 2 (Landsberg-Teitler bound)"));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        eprintln!("table: det n={n}");
        let f = build_invariant(InvariantKind::Determinant, n)?;
        let h = hilbert_function(&f, cfg.mode, &cfg.limits)?;
        let d = CertifiedDegree::asserted(2);
        rows.push(table_row(n, &h.values, d, false)?);
    }
    match format {
        FormatArg::Csv => print!("{}", table_csv(&rows)),
        FormatArg::Markdown => print!("{}", table_markdown(&rows)),
        FormatArg::Json => println!("{}", table_json(&rows)),
    }
    if let Some(path) = golden {
        let expected = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read golden file {}: {e}", path.display())))?;
        if expected.trim() != table_csv(&rows).trim() {
            return Err(Failure::Verification("table differs from the golden file".into()));
        }
        eprintln!("table: golden match");
    }
    Ok(())
}

fn cmd_contract(grid: &str, h: &str, f: &str) -> Result<(), Failure> {
    let grid = parse_grid(grid)?;
    let h = Polynomial::parse(Side::Dual, grid, h)?;
    let f = Polynomial::parse(Side::Base, grid, f)?;
    println!("{}", h.contract(&f)?.canonical_text());
    Ok(())
}

fn cmd_waring(
    cfg: &Config,
    grid: &str,
    f: &str,
    forms: &str,
    coeffs: Option<&str>,
) -> Result<(), Failure> {
    let grid = parse_grid(grid)?;
    let f = Polynomial::parse(Side::Base, grid, f)?;
    let forms: Vec<Polynomial> = forms
        .split(';')
        .map(|s| Polynomial::parse(Side::Base, grid, s.trim()))
        .collect::<apolar::Result<_>>()?;
    match coeffs {
        Some(cs) => {
            let coeffs: Vec<BigRational> = cs
                .split(';')
                .map(|s| {
                    BigRational::from_str(s.trim())
                        .map_err(|e| usage(format!("bad coefficient '{}': {e}", s.trim())))
                })
                .collect::<Result<_, Failure>>()?;
            let ok = waring_verify(&f, &forms, &coeffs)?;
            println!("{}", json!({ "verified": ok }));
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification("decomposition does not reproduce F".into()))
            }
        }
        None => match waring_solve(&f, &forms, &cfg.limits)? {
            Some(solution) => {
                let strings: Vec<String> = solution.iter().map(|c| c.to_string()).collect();
                println!("{}", json!({ "representable": true, "coefficients": strings }));
                Ok(())
            }
            None => {
                println!("{}", json!({ "representable": false }));
                Err(Failure::Verification("F is not in the span of the given powers".into()))
            }
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve_config(&cli)?;
    match &cli.cmd {
        Cmd::Hilbert { invariant, n, with_mu, format } => {
            cmd_hilbert(&cfg, invariant, *n, *with_mu, *format)
        }
        Cmd::Verify { invariant, n, route, k_max, drop_candidate } => {
            cmd_verify(&cfg, invariant, *n, *route, *k_max, *drop_candidate)
        }
        Cmd::Groebner { invariant, n, basis, no_coprime_skip } => {
            cmd_groebner(&cfg, invariant, *n, *basis, *no_coprime_skip)
        }
        Cmd::Bounds { invariant, n, strict, certify } => {
            cmd_bounds(&cfg, invariant, *n, *strict, *certify)
        }
        Cmd::Table { n, format, golden } => cmd_table(&cfg, n, *format, golden.as_ref()),
        Cmd::Contract { grid, h, f } => cmd_contract(grid, h, f),
        Cmd::Waring { grid, f, forms, coeffs } => {
            cmd_waring(&cfg, grid, f, forms, coeffs.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
