use std::collections::hash_map::{Entry, HashMap};
use std::io::{BufRead, Write};

use dcc::decoder::{DecoderError, LabelLayout, Likelihood, MemoryKernel};
use dcc::noise::{Clifford, CLIFFORD_COUNT};
use dcc::protocol::{ProtocolCodes, RoundKind};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Round {
    C,
    T,
}

impl From<Round> for RoundKind {
    fn from(r: Round) -> Self {
        match r {
            Round::C => RoundKind::C,
            Round::T => RoundKind::T,
        }
    }
}

/// One line of a decoder trace. Events act on the 15-qubit protocol codes.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Event {
    /// Depolarizing memory error in the code of `round`.
    Memory { round: Round, p: f64 },
    /// Noisy syndrome bits of `round` with flip probability q.
    Syndrome { round: Round, bits: u64, q: f64 },
    /// Deformation into the code of `into`.
    Deform { into: Round },
    /// Transversal Clifford, index in 0..24.
    Clifford { index: usize },
    /// Recovery: shifts the X part of the argmax to zero.
    Recover,
    #[serde(rename = "T")]
    T,
    EndRound,
}

#[derive(Serialize)]
struct Step {
    step: usize,
    event: &'static str,
    label_bits: usize,
    argmax: u64,
    entropy: f64,
    support: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    recovery: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Input { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Decoder { line: usize, source: DecoderError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn name(e: &Event) -> &'static str {
    match e {
        Event::Memory { .. } => "memory",
        Event::Syndrome { .. } => "syndrome",
        Event::Deform { .. } => "deform",
        Event::Clifford { .. } => "clifford",
        Event::Recover => "recover",
        Event::T => "T",
        Event::EndRound => "end_round",
    }
}

/// Replays the events on `rho` and writes one JSON line per event.
pub fn run<L: Likelihood>(
    codes: &ProtocolCodes,
    mut rho: L,
    sparse: bool,
    input: impl BufRead,
    out: &mut dyn Write,
) -> Result<usize, TraceError> {
    let mut kernels: HashMap<u64, [MemoryKernel; 2]> = HashMap::new();
    let mut steps = 0;
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| TraceError::Input { line: line_no, msg };
        let dec = |source| TraceError::Decoder { line: line_no, source };
        let event: Event = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let mut recovery = None;
        match &event {
            Event::Memory { round, p } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(bad(format!("p = {p} outside [0, 1]")));
                }
                let k = match kernels.entry(p.to_bits()) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(codes.memory_kernels(*p, sparse).map_err(|e| bad(e.to_string()))?),
                };
                let k = &k[match round {
                    Round::C => 0,
                    Round::T => 1,
                }];
                rho.apply_memory(k).map_err(dec)?;
            }
            Event::Syndrome { round, bits, q } => {
                if !(0.0..=1.0).contains(q) {
                    return Err(bad(format!("q = {q} outside [0, 1]")));
                }
                rho.apply_syndrome(codes.syndrome_map((*round).into()), *bits, *q).map_err(dec)?;
            }
            Event::Deform { into } => {
                for map in codes.deformations_into((*into).into()) {
                    rho.deform(map).map_err(dec)?;
                }
            }
            Event::Clifford { index } => {
                if *index >= CLIFFORD_COUNT {
                    return Err(bad(format!("Clifford index {index} outside 0..{CLIFFORD_COUNT}")));
                }
                rho.apply_clifford(codes.clifford_map(Clifford::from_index(*index))).map_err(dec)?;
            }
            Event::Recover => recovery = Some(rho.choose_recovery()),
            Event::T => rho.apply_t(codes.t_propagator()).map_err(dec)?,
            Event::EndRound => rho.end_round(),
        }
        let layout: LabelLayout = rho.layout();
        let step = Step {
            step: steps,
            event: name(&event),
            label_bits: layout.c(),
            argmax: rho.final_coset(),
            entropy: rho.entropy(),
            support: rho.support_size(),
            recovery,
        };
        serde_json::to_writer(&mut *out, &step).map_err(std::io::Error::from)?;
        writeln!(out)?;
        steps += 1;
    }
    Ok(steps)
}
