//! `dcc`: build and verify doubled color codes, replay decoder traces and
//! estimate logical error rates of the Clifford+T protocol.

mod artifact;
mod trace;
mod verify;

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dcc::codefamily::{CodeFamily, FamilyError, FamilyRecord, Stage};
use dcc::csscode::CodeError;
use dcc::decoder::{DecoderError, DenseLikelihood, EngineKind, LabelLayout, Likelihood, SparseLikelihood};
use dcc::protocol::{estimate_pl, Estimate, LogicalTest, ProtocolCodes, ProtocolConfig, ProtocolError};
use serde::{Deserialize, Serialize};

use artifact::Meta;

const EXIT_VERIFY: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "dcc", version, about = "Doubled color codes: construction, verification, decoding and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the code family at level t and write it as JSON.
    Build {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "final")]
        stage: Stage,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a code file written by `build`.
    Verify {
        code: PathBuf,
        /// Largest weight searched when computing the distance (default 2t+1).
        #[arg(long)]
        distance_budget: Option<usize>,
    },
    /// Replay a JSON-lines stream of decoder events ("-" reads stdin).
    DecodeTrace {
        events: PathBuf,
        #[arg(long, default_value = "sparse")]
        decoder: EngineKind,
        /// Sparse truncation threshold.
        #[arg(long, default_value_t = dcc::decoder::DEFAULT_CUTOFF)]
        epsilon: f64,
        /// Code holding the logical qubit at the start (c or t).
        #[arg(long, default_value = "t")]
        start: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate p_L at one physical error rate.
    Simulate {
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Estimate p_L over a comma-separated list of error rates.
    Sweep {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        p_list: Vec<f64>,
        /// Also write "p p_L" pairs (one per line) for a log-log plot.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 400)]
    trials: usize,
    #[arg(long, default_value = "sparse")]
    decoder: EngineKind,
    #[arg(long, env = "DCC_SEED", default_value_t = 0)]
    seed: u64,
    /// Results CSV; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    max_gates: u64,
    #[arg(long, default_value_t = dcc::decoder::DEFAULT_CUTOFF)]
    epsilon: f64,
    #[arg(long, default_value_t = 100)]
    max_retry_rounds: u32,
    #[arg(long, default_value = "logical_class")]
    logical_test: LogicalTest,
}

impl RunArgs {
    fn config(&self, p: f64) -> ProtocolConfig {
        ProtocolConfig {
            t: 1,
            p,
            trials: self.trials,
            max_gates: self.max_gates,
            decoder: self.decoder,
            epsilon: self.epsilon,
            seed: self.seed,
            max_retry_rounds: self.max_retry_rounds,
            logical_test: self.logical_test,
        }
    }
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 1,
            msg: e.to_string(),
        }
    }
}

fn is_capacity(e: &ProtocolError) -> bool {
    matches!(
        e,
        ProtocolError::Decoder(DecoderError::Capacity(_))
            | ProtocolError::Code(CodeError::Capacity(_))
            | ProtocolError::Family(FamilyError::Code(CodeError::Capacity(_)))
    )
}

impl From<ProtocolError> for Failure {
    fn from(e: ProtocolError) -> Self {
        let code = match &e {
            ProtocolError::Config(_) | ProtocolError::Unsupported(_) => EXIT_USAGE,
            e if is_capacity(e) => EXIT_CAPACITY,
            _ => 1,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::BadLevel(_) | FamilyError::BadStage(_) => EXIT_USAGE,
            FamilyError::Code(CodeError::Capacity(_)) => EXIT_CAPACITY,
            _ => 1,
        };
        Self { code, msg: e.to_string() }
    }
}

/// Every run reports what it resolved to on stderr.
fn announce<T: Serialize>(what: &str, config: &T, seed: Option<u64>) {
    let json = serde_json::to_string(config).unwrap_or_default();
    match seed {
        Some(s) => eprintln!("dcc {what}: config {json} seed {s}"),
        None => eprintln!("dcc {what}: config {json}"),
    }
}

#[derive(Serialize, Deserialize)]
struct BuildConfig {
    t: usize,
    stage: Stage,
}

#[derive(Serialize, Deserialize)]
struct CodeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
    #[serde(flatten)]
    family: FamilyRecord,
}

fn build(t: usize, stage: Stage, out: Option<&Path>) -> Result<(), Failure> {
    let config = BuildConfig { t, stage };
    announce("build", &config, None);
    let family = CodeFamily::build(t, stage)?.to_record()?;
    eprintln!("n = {}, {} generators", family.qubit_counts.n, family.generators.len());
    let file = CodeFile {
        meta: Some(Meta::new(&config, None)),
        family,
    };
    let mut w = artifact::open_output(out)?;
    serde_json::to_writer_pretty(&mut w, &file).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn verify_file(path: &Path, budget: Option<usize>) -> Result<(), Failure> {
    let text = fs::read_to_string(path)?;
    let file: CodeFile =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    announce(
        "verify",
        &serde_json::json!({"file": path, "t": file.family.t, "stage": file.family.stage, "distance_budget": budget}),
        None,
    );
    let checks = verify::verify(&file.family, budget);
    let mut stdout = io::stdout().lock();
    for c in &checks {
        let tag = if c.passed { "pass" } else { "FAIL" };
        writeln!(stdout, "{tag}  {:<24} {}", c.name, c.detail)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        writeln!(stdout, "all {} checks passed", checks.len())?;
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            msg: format!("verification failed: {}", failed.join(", ")),
        })
    }
}

fn decode_trace(
    events: &Path,
    decoder: EngineKind,
    epsilon: f64,
    start: &str,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Failure::usage(format!("epsilon = {epsilon} outside [0, 1)")));
    }
    announce(
        "decode-trace",
        &serde_json::json!({"events": events, "decoder": decoder, "epsilon": epsilon, "start": start}),
        None,
    );
    let codes = ProtocolCodes::build(1)?;
    let code = match start {
        "t" => codes.t_code(),
        "c" => codes.c_code(),
        other => return Err(Failure::usage(format!("unknown start code '{other}' (expected c or t)"))),
    };
    let layout = LabelLayout::of(code);
    let input: Box<dyn io::BufRead> = if events.as_os_str() == "-" {
        Box::new(io::stdin().lock())
    } else {
        Box::new(BufReader::new(fs::File::open(events)?))
    };
    let mut w = artifact::open_output(out)?;
    let sparse = decoder == EngineKind::Sparse;
    let result = match decoder {
        EngineKind::Exact => {
            let rho = DenseLikelihood::init(layout).map_err(ProtocolError::from)?;
            trace::run(&codes, rho, sparse, input, &mut w)
        }
        EngineKind::Sparse => {
            let rho = SparseLikelihood::with_cutoff(layout, epsilon).map_err(ProtocolError::from)?;
            trace::run(&codes, rho, sparse, input, &mut w)
        }
    };
    w.flush()?;
    match result {
        Ok(steps) => {
            eprintln!("{steps} events");
            Ok(())
        }
        Err(trace::TraceError::Io(e)) => Err(e.into()),
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

fn simulate(ps: &[f64], run: &RunArgs, pairs: Option<&Path>, what: &str) -> Result<(), Failure> {
    if ps.is_empty() {
        return Err(Failure::usage("--p-list is empty"));
    }
    let configs: Vec<ProtocolConfig> = ps.iter().map(|&p| run.config(p)).collect();
    for c in &configs {
        c.validate()?;
    }
    let hashed = if configs.len() == 1 {
        serde_json::to_value(&configs[0])
    } else {
        serde_json::to_value(&configs)
    }
    .map_err(io::Error::from)?;
    announce(what, &hashed, Some(run.seed));
    set_threads(run.threads)?;
    let codes = ProtocolCodes::build(1)?;
    let mut rows: Vec<Estimate> = Vec::new();
    for config in &configs {
        let est = estimate_pl(&codes, config)?;
        match est.p_l {
            Some(pl) => eprintln!("p = {}: p_L = {pl:.5} +- {:.5}", est.p, est.stderr.unwrap_or(f64::NAN)),
            None => eprintln!(
                "p = {}: no failures in {} trials, p_L <= {:.3e}",
                est.p,
                est.trials,
                est.p_l_upper_bound.unwrap_or(f64::NAN)
            ),
        }
        rows.push(est);
    }
    let meta = Meta::new(&hashed, Some(run.seed));
    let mut w = artifact::open_output(run.out.as_deref())?;
    artifact::write_csv(&mut w, &meta, &configs[0], &rows)?;
    w.flush()?;
    if let Some(path) = pairs {
        let mut w = artifact::open_output(Some(path))?;
        writeln!(w, "# tool: {} {}", meta.tool, meta.version)?;
        writeln!(w, "# seed: {}", run.seed)?;
        writeln!(w, "# config_hash: {}", meta.config_hash)?;
        for e in &rows {
            if let Some(pl) = e.p_l {
                writeln!(w, "{} {pl}", e.p)?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { t, stage, out } => build(t, stage, out.as_deref()),
        Command::Verify { code, distance_budget } => verify_file(&code, distance_budget),
        Command::DecodeTrace {
            events,
            decoder,
            epsilon,
            start,
            out,
        } => decode_trace(&events, decoder, epsilon, &start, out.as_deref()),
        Command::Simulate { p, run } => simulate(&[p], &run, None, "simulate"),
        Command::Sweep { p_list, pairs, run } => simulate(&p_list, &run, pairs.as_deref(), "sweep"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
