use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use syzygies::blocks::{block_structure, f_delta, lifted_f, order_filter_of, parse_density, squarefree_partition, sqfree_lower_bound};
use syzygies::complexes::{
    check_exactness_on_box, eliahou_kervaire, koszul_complex, minimize, taylor_complex, FreeComplex,
};
use syzygies::groebner::{initial_module, leading_term_module, InitialModule};
use syzygies::instances::{Caps, IdealFile};
use syzygies::module::{DegreeBox, ModuleVector, TermOrder};
use syzygies::stanley::{
    char_poset, exact_sdepth_with_limit, filtration_lower_bound_with_limit, partition_to_decomposition,
    verify_decomposition, DEFAULT_POINT_LIMIT,
};
use syzygies::syzygy::boundary_generators;
use syzygies::verify::{lex_refined_initial, run_instance, run_job, Instance, JobKind, VerifyJob};
use syzygies::{Field, MonomialIdeal, MonomialOrder, Multidegree, Q};

/// Syzygies of monomial ideals: resolutions, initial modules, Stanley depth.
#[derive(Parser)]
#[command(name = "syzygies", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a free resolution of S/I.
    Resolve(ResolveArgs),
    /// Initial module of the p-th syzygy module.
    Initial(InitialArgs),
    /// Stanley depth: exact value, filtration bound, or squarefree construction.
    Sdepth(SdepthArgs),
    /// Circular block structure of a subset A of [n].
    Partition(PartitionArgs),
    /// Run a seeded verification job.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Taylor,
    Koszul,
    Ek,
}

#[derive(Args)]
struct Common {
    /// Ideal file: {"n": 3, "generators": [[1,1,0], ...]}
    #[arg(long)]
    input: PathBuf,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "taylor")]
    method: Method,
    #[arg(long)]
    minimize: bool,
    /// Check exactness on the box [0, a]; comma-separated upper corner.
    #[arg(long = "box")]
    degree_box: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisChoice {
    Lex,
    Boundary,
}

#[derive(Args)]
struct InitialArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "taylor")]
    method: Method,
    #[arg(long)]
    p: usize,
    #[arg(long, value_enum, default_value = "boundary")]
    basis: BasisChoice,
    /// Cross-check against an independent Buchberger run.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    minimize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SdepthMode {
    Exact,
    FiltrationBound,
    SqfreeConstruct,
}

#[derive(Args)]
struct SdepthArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "exact")]
    mode: SdepthMode,
    /// Use S/I instead of I.
    #[arg(long)]
    quotient: bool,
    /// Syzygy index for the filtration bound.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, value_enum, default_value = "taylor")]
    method: Method,
    /// Refuse exact searches above this many poset points.
    #[arg(long, default_value_t = DEFAULT_POINT_LIMIT)]
    limit: usize,
    /// Verify the decomposition on the box [0, a] (default [0, g+1]).
    #[arg(long = "box")]
    degree_box: Option<String>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated 1-based elements of A.
    #[arg(long)]
    a: String,
    /// Density as p/q.
    #[arg(long, default_value = "1")]
    delta: String,
    /// Report lifted_f(n, A, s) instead of using --delta.
    #[arg(long)]
    lift: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_job)]
    job: JobKind,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    n_cap: usize,
    #[arg(long, default_value_t = 5)]
    m_cap: usize,
    #[arg(long, default_value_t = 3)]
    exp_cap: i32,
    /// Rerun the instance embedded in a report instead of drawing trials.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_job(s: &str) -> Result<JobKind, String> {
    s.parse().map_err(|e: syzygies::Error| e.to_string())
}

/// An error with its exit code: 1 for a failed check, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl From<syzygies::Error> for Failure {
    fn from(e: syzygies::Error) -> Self {
        use syzygies::Error::*;
        let code = match e {
            Internal(_) | LiftFailure(_) | NotAChainMap { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult = Result<u8, Failure>;

fn read_ideal(path: &PathBuf) -> Result<MonomialIdeal, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let file: IdealFile =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(file.to_ideal()?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => match writeln!(std::io::stdout(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(input_error(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn emit_json(output: &Option<PathBuf>, value: &Value) -> Result<(), Failure> {
    emit(output, &serde_json::to_string_pretty(value).expect("json"))
}

fn parse_box(spec: &str, n: usize) -> Result<DegreeBox, Failure> {
    let upper: Vec<i32> = spec
        .split(',')
        .map(|t| t.trim().parse::<i32>())
        .collect::<Result<_, _>>()
        .map_err(|_| input_error(format!("cannot parse box {spec:?}")))?;
    if upper.len() != n || upper.iter().any(|&e| e < 0) {
        return Err(input_error(format!("the box needs {n} nonnegative entries")));
    }
    Ok(DegreeBox::up_to(Multidegree::new(upper)))
}

fn build(ideal: &MonomialIdeal, method: Method) -> Result<FreeComplex, Failure> {
    let gens = ideal.generators();
    Ok(match method {
        Method::Taylor => taylor_complex(gens)?,
        Method::Koszul => {
            let k = koszul_complex(gens)?;
            if !k.regular {
                eprintln!("warning: the generators are not a regular sequence; returning the Taylor complex");
            }
            k.complex
        }
        Method::Ek => eliahou_kervaire(ideal)?.complex,
    })
}

fn ideal_vectors(ideal: &MonomialIdeal) -> Vec<ModuleVector<Q>> {
    ideal.generators().iter().map(|g| ModuleVector::term(Q::one(), g.clone(), 0)).collect()
}

fn components_json(ini: &InitialModule) -> Value {
    Value::Array(
        ini.components
            .iter()
            .map(|c| Value::Array(c.generators().iter().map(|g| json!(g.exponents())).collect()))
            .collect(),
    )
}

fn resolve(args: ResolveArgs) -> CliResult {
    let ideal = read_ideal(&args.common.input)?;
    let mut c = build(&ideal, args.method)?;
    if args.minimize {
        c = minimize(&c);
    }
    let mut out = json!({"ranks": c.ranks(), "minimized": args.minimize, "minimal": c.is_minimal(), "complex": c.to_json()});
    let mut code = 0;
    if let Some(spec) = &args.degree_box {
        let report = check_exactness_on_box(&c, &ideal_vectors(&ideal), &parse_box(spec, ideal.n())?);
        if !report.passed() {
            code = 1;
        }
        out["exactness"] = serde_json::to_value(report).expect("json");
    }
    emit_json(&args.common.output, &out)?;
    Ok(code)
}

fn initial(args: InitialArgs) -> CliResult {
    let ideal = read_ideal(&args.common.input)?;
    let mut c = build(&ideal, args.method)?;
    if args.minimize {
        c = minimize(&c);
    }
    let (components, basis, labels, check) = match args.basis {
        BasisChoice::Boundary => {
            let order = TermOrder::new(c.basis(args.p), MonomialOrder::Lex);
            let gens = boundary_generators(&c, args.p);
            let leading = leading_term_module(&gens, &order);
            let check = args.oracle.then(|| initial_module(&gens, &order));
            (leading, order.basis, c.labels(args.p).to_vec(), check)
        }
        BasisChoice::Lex => {
            let sorted = c.lex_refined();
            let (ini, basis) = lex_refined_initial(&c, args.p);
            let check = args.oracle.then(|| {
                initial_module(&boundary_generators(&sorted, args.p), &TermOrder::new(basis.clone(), MonomialOrder::DegRevLex))
            });
            (ini, basis, sorted.labels(args.p).to_vec(), check)
        }
    };
    let mut out = json!({
        "p": args.p,
        "basis": match args.basis { BasisChoice::Lex => "lex", BasisChoice::Boundary => "boundary" },
        "labels": labels.iter().map(|l| format!("{l:?}")).collect::<Vec<_>>(),
        "degrees": basis.degrees(),
        "components": components_json(&components),
    });
    let mut code = 0;
    if let Some(oracle) = check {
        let equal = oracle == components;
        out["oracle"] = components_json(&oracle);
        out["equal"] = json!(equal);
        if !equal {
            code = 1;
        }
    }
    emit_json(&args.common.output, &out)?;
    Ok(code)
}

fn sdepth(args: SdepthArgs) -> CliResult {
    let ideal = read_ideal(&args.common.input)?;
    let n = ideal.n();
    match args.mode {
        SdepthMode::Exact => {
            let unit = MonomialIdeal::unit(n);
            let (i, j) = if args.quotient { (&unit, Some(&ideal)) } else { (&ideal, None) };
            let poset = char_poset(i, j, None)?;
            let result = exact_sdepth_with_limit(&poset, args.limit)?;
            let dec = partition_to_decomposition(&poset, &result.partition);
            let degree_box = match &args.degree_box {
                Some(spec) => parse_box(spec, n)?,
                None => DegreeBox::around(&poset.g),
            };
            let verified = verify_decomposition(&dec, i, j, &degree_box);
            let mut out = serde_json::to_value(result.certificate()).expect("json");
            out["decomposition_verified"] = json!(verified.is_ok());
            emit_json(&args.common.output, &out)?;
            Ok(if verified.is_ok() { 0 } else { 1 })
        }
        SdepthMode::FiltrationBound => {
            let p = args.p.unwrap_or(0);
            let ini = if p == 0 {
                InitialModule { n, components: vec![ideal.minimalized()] }
            } else {
                lex_refined_initial(&build(&ideal, args.method)?, p).0
            };
            let b = filtration_lower_bound_with_limit(&ini, args.limit)?;
            let out = json!({
                "p": p,
                "bound": b.bound,
                "all_zero": b.all_zero,
                "per_component": b.per_component,
                "components": components_json(&ini),
            });
            emit_json(&args.common.output, &out)?;
            Ok(0)
        }
        SdepthMode::SqfreeConstruct => {
            let family = order_filter_of(&ideal)?;
            let part = squarefree_partition(n, &family)?;
            let out = json!({
                "value": part.value(),
                "bound": sqfree_lower_bound(n),
                "s": part.s,
                "r": part.r,
                "intervals": part.intervals.iter().map(|(a, b)| json!({"A": a, "B": b})).collect::<Vec<_>>(),
            });
            emit_json(&args.common.output, &out)?;
            Ok(0)
        }
    }
}

fn partition(args: PartitionArgs) -> CliResult {
    let a: Vec<usize> = args
        .a
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| input_error(format!("cannot parse A = {:?}", args.a)))?;
    let out = match args.lift {
        Some(s) => json!({"n": args.n, "A": a, "s": s, "lifted": lifted_f(args.n, &a, s)?}),
        None => {
            let delta = parse_density(&args.delta)?;
            let structure = block_structure(args.n, &a, delta)?;
            let mut v = serde_json::to_value(structure.to_json()).expect("json");
            v["f"] = json!(f_delta(args.n, &a, delta)?);
            v
        }
    };
    emit_json(&args.output, &out)?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> CliResult {
    let reports = match &args.replay {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| input_error(e.to_string()))?;
            let inst: Instance = serde_json::from_value(value.get("instance").cloned().unwrap_or(value))
                .map_err(|e| input_error(format!("not an instance: {e}")))?;
            run_instance(&inst)?
        }
        None => {
            let caps = Caps { n: args.n_cap, m: args.m_cap, exponent: args.exp_cap };
            run_job(&VerifyJob { kind: args.job, trials: args.trials, seed: args.seed, caps })?
        }
    };
    let lines: Vec<String> = reports.iter().map(|r| serde_json::to_string(r).expect("json")).collect();
    emit(&args.output, &lines.join("\n"))?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{}: {} reports, {} failed", args.job, reports.len(), failed);
    Ok(if failed == 0 { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Resolve(a) => resolve(a),
        Command::Initial(a) => initial(a),
        Command::Sdepth(a) => sdepth(a),
        Command::Partition(a) => partition(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
