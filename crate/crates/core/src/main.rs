use std::fmt::Display;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperdeg::experiment::{gen_instance, rows_to_csv, run_scan, ScanOptions, ScanPoint};
use hyperdeg::io::{
    parse_hypergraph, parse_instance, write_hypergraph, write_instance_json, write_instance_text,
    InstanceFile,
};
use hyperdeg::lbds::{lbds_construct, perturbation_series, LbdsSpec};
use hyperdeg::linear::{certified_threshold, decide_linear, LinearDecision};
use hyperdeg::oracle::{
    all_realizable_sequences, cross_validate, decide_exact, ExactOutcome, SearchBudget,
};
use hyperdeg::params::BoundKind;
use hyperdeg::realize::{realize_sparse, RealizeOutcome};
use hyperdeg::reduction::{
    build_gadget, gadget_reduce_padded, lift, lift_realization, ReductionCertificate,
};
use hyperdeg::{
    classify_regime, degrees_of, validate_instance, DegreeSequence, Exponent, RegimeLabel,
    SparseParams, UniformHypergraph,
};

macro_rules! say {
    ($($arg:tt)*) => {{
        let mut line = format!($($arg)*);
        line.push('\n');
        emit(&line);
    }};
}

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_DOMAIN: u8 = 5;
const EXIT_INTERNAL: u8 = 6;

#[derive(Parser)]
#[command(
    name = "hyperdeg",
    version,
    about = "Degree sequences of sparse uniform hypergraphs",
    after_help = "Exit codes: 0 yes/success, 1 no, 2 indeterminate, 3 usage, 4 unreadable input, \
                  5 invalid parameters or instance, 6 internal failure.\n\
                  HYPERDEG_BUDGET overrides the exact-search node budget."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// Exponent of the minimum degree, as "p/q"
    #[arg(long)]
    alpha_prime: Option<Exponent>,
    /// Exponent of the maximum degree, as "p/q"
    #[arg(long)]
    alpha: Option<Exponent>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance against its degree bounds and report the regime
    Validate {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide realizability (exit 0 yes, 1 no, 2 indeterminate)
    Decide {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Largest length handed to the exact search
        #[arg(long, default_value_t = 12)]
        oracle_max_n: usize,
    },
    /// Build a realization and write it in hypergraph format
    Realize {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Largest length handed to the exact search
        #[arg(long, default_value_t = 12)]
        oracle_max_n: usize,
    },
    /// Check that a hypergraph realizes a degree sequence
    Verify { hypergraph: PathBuf, input: PathBuf },
    /// Least balanced sequence of an instance, or of explicit parameters
    Lbds {
        input: Option<PathBuf>,
        #[arg(long, requires_all = ["delta", "max_degree", "sigma"], conflicts_with = "input")]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long)]
        sigma: Option<u64>,
    },
    /// Gadget reduction of a hard-regime instance
    Reduce {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Keep padding until every gadget degree is within the bounds
        #[arg(long)]
        require_bounds: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the reduction certificate (JSON)
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Lift an instance (or, with --hypergraph, a realization) from t to t + 1
    Lift {
        input: PathBuf,
        #[arg(long)]
        hypergraph: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the fixed gadget hypergraph of a reduction certificate
    Gadget {
        certificate: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact search and exhaustive enumeration for small instances
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Generate a seeded random instance
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        alpha_prime: Exponent,
        #[arg(long)]
        alpha: Exponent,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leave the degree sum as drawn
        #[arg(long)]
        no_fix: bool,
        /// Write JSON including the parameters
        #[arg(long)]
        json: bool,
    },
    /// Run seeded trials over a parameter grid and write CSV
    Scan {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha_prime: Vec<Exponent>,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<Exponent>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_fix: bool,
        /// Fill elapsed_ms (output is then no longer reproducible)
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = 200)]
        realize_max_n: usize,
        #[arg(long, default_value_t = 10)]
        oracle_max_n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact decision by backtracking
    Decide {
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the realization here when one is found
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print every realizable labelled sequence on n vertices
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Compare exact search with enumeration on all sequences in [0, cap]^n
    CrossValidate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        cap: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

fn input_err(e: impl Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn domain_err(e: impl Display) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: e.to_string(),
    }
}

fn internal_err(e: impl Display) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        std::process::exit(EXIT_INPUT as i32);
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_err(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input_err(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = read_text(path)?;
    parse_instance(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<UniformHypergraph, Failure> {
    let text = read_text(path)?;
    parse_hypergraph(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// Command-line exponents override those in the file.
fn resolve_params(inst: &InstanceFile, args: ParamArgs) -> Result<Option<SparseParams>, Failure> {
    let file = inst.params;
    let ap = args.alpha_prime.or(file.map(|p| p.alpha_prime()));
    let a = args.alpha.or(file.map(|p| p.alpha()));
    match (ap, a) {
        (Some(ap), Some(a)) => SparseParams::new(inst.t, ap, a)
            .map(Some)
            .map_err(domain_err),
        (None, None) => Ok(None),
        _ => Err(domain_err("alpha-prime and alpha must be given together")),
    }
}

fn require_params(inst: &InstanceFile, args: ParamArgs) -> Result<SparseParams, Failure> {
    resolve_params(inst, args)?.ok_or_else(|| {
        domain_err(
            "this command needs --alpha-prime and --alpha (or a JSON instance carrying them)",
        )
    })
}

fn side(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::BelowMin => "below",
        BoundKind::AboveMax => "above",
    }
}

fn ensure_valid(d: &DegreeSequence, params: &SparseParams) -> Result<(), Failure> {
    validate_instance(d, params).map_err(|violations| {
        let first = violations[0];
        domain_err(format!(
            "{} degree(s) outside the bounds; first: vertex {} has degree {} {} bound {}",
            violations.len(),
            first.vertex,
            first.degree,
            side(first.kind),
            first.bound
        ))
    })
}

fn budget_or_env(budget: Option<u64>) -> SearchBudget {
    budget
        .map(SearchBudget::nodes)
        .unwrap_or_else(SearchBudget::from_env)
}

fn exact(d: &DegreeSequence, t: usize, max_n: usize) -> Result<Option<ExactOutcome>, Failure> {
    if d.len() > max_n {
        return Ok(None);
    }
    decide_exact(d, t, SearchBudget::from_env())
        .map(Some)
        .map_err(domain_err)
}

fn report(outcome: &str, detail: Option<String>) -> u8 {
    match detail {
        Some(d) => say!("{outcome}: {d}"),
        None => say!("{outcome}"),
    }
    match outcome {
        "yes" => EXIT_YES,
        "no" => EXIT_NO,
        _ => EXIT_INDETERMINATE,
    }
}

fn cmd_validate(input: &Path, args: ParamArgs) -> CmdResult {
    let inst = load_instance(input)?;
    let params = require_params(&inst, args)?;
    let n = inst.degrees.len() as u64;
    say!("regime: {}", classify_regime(&params).as_str());
    say!(
        "bounds: [{}, {}]",
        params.min_degree(n),
        params.max_degree(n)
    );
    match validate_instance(&inst.degrees, &params) {
        Ok(()) => {
            say!("valid");
            Ok(EXIT_YES)
        }
        Err(violations) => {
            for v in &violations {
                say!(
                    "vertex {}: degree {} {} bound {}",
                    v.vertex,
                    v.degree,
                    side(v.kind),
                    v.bound
                );
            }
            Ok(EXIT_NO)
        }
    }
}

fn cmd_decide(input: &Path, args: ParamArgs, oracle_max_n: usize) -> CmdResult {
    let inst = load_instance(input)?;
    let d = &inst.degrees;
    let Some(params) = resolve_params(&inst, args)? else {
        return Ok(match exact(d, inst.t, oracle_max_n)? {
            Some(o) => report(o.label(), None),
            None => report(
                "indeterminate",
                Some(format!("exact search limited to n <= {oracle_max_n}")),
            ),
        });
    };
    ensure_valid(d, &params)?;
    if classify_regime(&params) == RegimeLabel::Hard {
        if d.sum() % inst.t as u128 != 0 {
            return Ok(report("no", Some("degree sum not divisible by t".into())));
        }
        return Ok(match exact(d, inst.t, oracle_max_n)? {
            Some(o) => report(o.label(), None),
            None => report(
                "indeterminate",
                Some(format!(
                    "hard regime; exact search limited to n <= {oracle_max_n}"
                )),
            ),
        });
    }
    match decide_linear(d, &params).map_err(domain_err)? {
        LinearDecision::Yes => return Ok(report("yes", None)),
        LinearDecision::No => {
            return Ok(report("no", Some("degree sum not divisible by t".into())))
        }
        LinearDecision::Indeterminate => {}
    }
    match realize_sparse(d, &params).map_err(internal_err)? {
        RealizeOutcome::Yes(_) => Ok(report("yes", Some("realized".into()))),
        RealizeOutcome::No(_) => Ok(report("no", Some("degree sum not divisible by t".into()))),
        RealizeOutcome::Indeterminate(failures) => Ok(match exact(d, inst.t, oracle_max_n)? {
            Some(o) => report(o.label(), None),
            None => {
                let n0 = certified_threshold(&params)
                    .n0
                    .map_or("uncertified".to_string(), |n0| n0.to_string());
                report(
                    "indeterminate",
                    Some(format!("below n0 ({n0}); {}", failures[0])),
                )
            }
        }),
    }
}

fn cmd_realize(
    input: &Path,
    args: ParamArgs,
    output: Option<&Path>,
    oracle_max_n: usize,
) -> CmdResult {
    let inst = load_instance(input)?;
    let d = &inst.degrees;
    let params = resolve_params(&inst, args)?;
    if let Some(p) = &params {
        ensure_valid(d, p)?;
        if classify_regime(p) == RegimeLabel::Tractable {
            match realize_sparse(d, p).map_err(internal_err)? {
                RealizeOutcome::Yes(r) => {
                    write_out(output, &write_hypergraph(&r.hypergraph))?;
                    eprintln!("realized with {} flips ({} construction)", r.flips, r.case);
                    return Ok(EXIT_YES);
                }
                RealizeOutcome::No(_) => {
                    eprintln!("no: degree sum not divisible by t");
                    return Ok(EXIT_NO);
                }
                RealizeOutcome::Indeterminate(failures) => {
                    for f in &failures {
                        eprintln!("precondition failed: {f}");
                    }
                }
            }
        }
    }
    match exact(d, inst.t, oracle_max_n)? {
        Some(ExactOutcome::Some(h)) => {
            write_out(output, &write_hypergraph(&h))?;
            Ok(EXIT_YES)
        }
        Some(ExactOutcome::None) => {
            eprintln!("no: not realizable");
            Ok(EXIT_NO)
        }
        Some(ExactOutcome::BudgetExceeded) => {
            eprintln!("indeterminate: search budget exceeded");
            Ok(EXIT_INDETERMINATE)
        }
        None => {
            eprintln!("indeterminate: exact search limited to n <= {oracle_max_n}");
            Ok(EXIT_INDETERMINATE)
        }
    }
}

fn cmd_verify(hypergraph: &Path, input: &Path) -> CmdResult {
    let h = load_hypergraph(hypergraph)?;
    let inst = load_instance(input)?;
    if h.t() != inst.t {
        say!(
            "mismatch: hypergraph is {}-uniform, instance has t = {}",
            h.t(),
            inst.t
        );
        return Ok(EXIT_NO);
    }
    let got = degrees_of(&h);
    if got.len() != inst.degrees.len() {
        say!(
            "mismatch: {} vertices, instance has {}",
            got.len(),
            inst.degrees.len()
        );
        return Ok(EXIT_NO);
    }
    match (0..got.len()).find(|&v| got[v] != inst.degrees[v]) {
        None => {
            say!("ok");
            Ok(EXIT_YES)
        }
        Some(v) => {
            say!(
                "mismatch: vertex {v} has degree {}, expected {}",
                got[v],
                inst.degrees[v]
            );
            Ok(EXIT_NO)
        }
    }
}

fn cmd_lbds(
    input: Option<&Path>,
    n: Option<usize>,
    delta: Option<u64>,
    max_degree: Option<u64>,
    sigma: Option<u64>,
) -> CmdResult {
    if let Some(path) = input {
        let inst = load_instance(path)?;
        let series = perturbation_series(&inst.degrees);
        say!("sorted: {}", lbds_construct(&series.spec()));
        say!("labelled: {}", series.lbds);
        say!("steps: {}", series.steps.len());
        return Ok(EXIT_YES);
    }
    let (Some(n), Some(delta), Some(big), Some(sigma)) = (n, delta, max_degree, sigma) else {
        return Err(Failure {
            code: EXIT_USAGE,
            message: "give an instance file or all of --n, --delta, --max-degree, --sigma".into(),
        });
    };
    let spec = LbdsSpec::new(n, delta, big, sigma).map_err(domain_err)?;
    say!("{}", lbds_construct(&spec));
    Ok(EXIT_YES)
}

fn cmd_reduce(
    input: &Path,
    args: ParamArgs,
    require_bounds: bool,
    output: Option<&Path>,
    certificate: Option<&Path>,
) -> CmdResult {
    let inst = load_instance(input)?;
    let params = require_params(&inst, args)?;
    let (target, cert) =
        gadget_reduce_padded(&inst.degrees, &params, require_bounds).map_err(domain_err)?;
    write_out(output, &write_instance_text(inst.t, &target))?;
    if let Some(p) = certificate {
        let json = serde_json::to_string_pretty(&cert).map_err(internal_err)?;
        std::fs::write(p, json + "\n").map_err(|e| input_err(format!("{}: {e}", p.display())))?;
    }
    eprintln!(
        "m = {}, n = {}, d = {}, padding = {}, bounds hold: {}",
        cert.m, cert.n, cert.d, cert.padding, cert.bounds_hold
    );
    Ok(EXIT_YES)
}

fn cmd_lift(input: &Path, hypergraph: bool, output: Option<&Path>) -> CmdResult {
    if hypergraph {
        let h = load_hypergraph(input)?;
        write_out(output, &write_hypergraph(&lift_realization(&h)))?;
        return Ok(EXIT_YES);
    }
    let inst = load_instance(input)?;
    let lifted = lift(&inst.degrees, inst.t).map_err(domain_err)?;
    write_out(output, &write_instance_text(inst.t + 1, &lifted))?;
    Ok(EXIT_YES)
}

fn cmd_gadget(certificate: &Path, output: Option<&Path>) -> CmdResult {
    let text = read_text(certificate)?;
    let cert: ReductionCertificate = serde_json::from_str(&text)
        .map_err(|e| input_err(format!("{}: {e}", certificate.display())))?;
    let g = build_gadget(&cert).map_err(domain_err)?;
    write_out(output, &write_hypergraph(&g))?;
    Ok(EXIT_YES)
}

fn cmd_oracle(command: OracleCommand) -> CmdResult {
    match command {
        OracleCommand::Decide {
            input,
            budget,
            output,
        } => {
            let inst = load_instance(&input)?;
            let outcome =
                decide_exact(&inst.degrees, inst.t, budget_or_env(budget)).map_err(domain_err)?;
            if let (ExactOutcome::Some(h), Some(p)) = (&outcome, output.as_deref()) {
                write_out(Some(p), &write_hypergraph(h))?;
            }
            Ok(report(outcome.label(), None))
        }
        OracleCommand::Enumerate { n, t } => {
            let mut all: Vec<Vec<u64>> = all_realizable_sequences(n, t)
                .map_err(domain_err)?
                .into_iter()
                .collect();
            all.sort();
            let mut out = String::new();
            for d in &all {
                let row: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            write_out(None, &out)?;
            eprintln!("{} sequences", all.len());
            Ok(EXIT_YES)
        }
        OracleCommand::CrossValidate { n, t, cap, budget } => {
            let r = cross_validate(n, t, cap, budget_or_env(budget)).map_err(domain_err)?;
            say!(
                "candidates {}, realizable {}, budget exceeded {}, disagreements {}",
                r.candidates,
                r.realizable,
                r.budget_exceeded,
                r.disagreements.len()
            );
            for dis in &r.disagreements {
                say!(
                    "  {:?}: search says {}, enumeration says {}",
                    dis.degrees,
                    dis.exact,
                    dis.enumerated
                );
            }
            Ok(if r.clean() { EXIT_YES } else { EXIT_NO })
        }
    }
}

fn cmd_gen(
    n: usize,
    t: usize,
    alpha_prime: Exponent,
    alpha: Exponent,
    seed: u64,
    no_fix: bool,
    json: bool,
) -> CmdResult {
    let params = SparseParams::new(t, alpha_prime, alpha).map_err(domain_err)?;
    let d = gen_instance(n, &params, seed, !no_fix).map_err(domain_err)?;
    let text = if json {
        write_instance_json(t, &d, Some(&params))
    } else {
        write_instance_text(t, &d)
    };
    write_out(None, &text)?;
    Ok(EXIT_YES)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { input, params } => cmd_validate(&input, params),
        Command::Decide {
            input,
            params,
            oracle_max_n,
        } => cmd_decide(&input, params, oracle_max_n),
        Command::Realize {
            input,
            params,
            output,
            oracle_max_n,
        } => cmd_realize(&input, params, output.as_deref(), oracle_max_n),
        Command::Verify { hypergraph, input } => cmd_verify(&hypergraph, &input),
        Command::Lbds {
            input,
            n,
            delta,
            max_degree,
            sigma,
        } => cmd_lbds(input.as_deref(), n, delta, max_degree, sigma),
        Command::Reduce {
            input,
            params,
            require_bounds,
            output,
            certificate,
        } => cmd_reduce(
            &input,
            params,
            require_bounds,
            output.as_deref(),
            certificate.as_deref(),
        ),
        Command::Lift {
            input,
            hypergraph,
            output,
        } => cmd_lift(&input, hypergraph, output.as_deref()),
        Command::Gadget {
            certificate,
            output,
        } => cmd_gadget(&certificate, output.as_deref()),
        Command::Oracle { command } => cmd_oracle(command),
        Command::Gen {
            n,
            t,
            alpha_prime,
            alpha,
            seed,
            no_fix,
            json,
        } => cmd_gen(n, t, alpha_prime, alpha, seed, no_fix, json),
        Command::Scan {
            t,
            n,
            alpha_prime,
            alpha,
            trials,
            seed,
            no_fix,
            timing,
            realize_max_n,
            oracle_max_n,
            output,
        } => {
            let mut grid = Vec::new();
            for &tt in &t {
                for &a in &alpha {
                    for &ap in &alpha_prime {
                        let params = SparseParams::new(tt, ap, a).map_err(domain_err)?;
                        grid.extend(n.iter().map(|&nn| ScanPoint { n: nn, params }));
                    }
                }
            }
            let opts = ScanOptions {
                fix_divisibility: !no_fix,
                timing,
                realize_max_n,
                oracle_max_n,
                budget: SearchBudget::from_env(),
            };
            let rows = run_scan(&grid, trials, seed, &opts);
            write_out(output.as_deref(), &rows_to_csv(&rows))?;
            Ok(EXIT_YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
