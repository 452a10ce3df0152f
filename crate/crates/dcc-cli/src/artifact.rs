use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use dcc::protocol::{Estimate, ProtocolConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance block embedded in every artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub config_hash: String,
}

impl Meta {
    pub fn new<T: Serialize>(config: &T, seed: Option<u64>) -> Self {
        Self {
            tool: "dcc".into(),
            version: VERSION.into(),
            seed,
            config_hash: config_hash(config),
        }
    }
}

/// SHA-256 of the compact JSON form, hex encoded.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let json = serde_json::to_vec(config).expect("config serializes");
    Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
}

/// Opens `path`, or stdout when it is absent or "-".
pub fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

#[derive(Serialize)]
struct Row<'a> {
    p: f64,
    trials: usize,
    mean_gates: Option<f64>,
    #[serde(rename = "p_L")]
    p_l: Option<f64>,
    stderr: Option<f64>,
    n_logical_failures: usize,
    n_cleanability_failures: usize,
    n_censored: usize,
    mean_retries: f64,
    wall_seconds: f64,
    n_decoder_failures: usize,
    n_retry_capped: usize,
    #[serde(rename = "p_L_upper_bound")]
    p_l_upper_bound: Option<f64>,
    mean_rounds: f64,
    decoder: &'a str,
    epsilon: f64,
    seed: u64,
}

/// Results CSV: provenance as `#` comment lines, then a header and one row per estimate.
pub fn write_csv(
    out: &mut dyn Write,
    meta: &Meta,
    config: &ProtocolConfig,
    rows: &[Estimate],
) -> io::Result<()> {
    writeln!(out, "# tool: {} {}", meta.tool, meta.version)?;
    writeln!(out, "# seed: {}", config.seed)?;
    writeln!(out, "# config_hash: {}", meta.config_hash)?;
    let decoder = serde_json::to_value(config.decoder)?;
    let decoder = decoder.as_str().unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    for e in rows {
        w.serialize(Row {
            p: e.p,
            trials: e.trials,
            mean_gates: e.mean_gates,
            p_l: e.p_l,
            stderr: e.stderr,
            n_logical_failures: e.n_logical_failures,
            n_cleanability_failures: e.n_cleanability_failures,
            n_censored: e.n_censored,
            mean_retries: e.mean_retries,
            wall_seconds: e.wall_seconds,
            n_decoder_failures: e.n_decoder_failures,
            n_retry_capped: e.n_retry_capped,
            p_l_upper_bound: e.p_l_upper_bound,
            mean_rounds: e.mean_rounds,
            decoder,
            epsilon: config.epsilon,
            seed: config.seed,
        })?;
    }
    w.flush()
}
