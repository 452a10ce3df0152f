use rand::Rng;
use serde::{Deserialize, Serialize};

use super::codes::{ProtocolCodes, RoundKind, C_FACES};
use super::ProtocolError;
use crate::csscode::SubsystemCode;
use crate::decoder::{DecoderError, DenseLikelihood, EngineKind, Likelihood, MemoryKernel, SparseLikelihood};
use crate::noise::{
    flip_syndrome, frame_through_clifford, random_element, sample_memory_error, Clifford, ErrorModel, PauliFrame,
};

/// How the end-of-round logical-error test reads the posterior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalTest {
    /// Among the four cosets that differ from the true one by a logical
    /// operator, the true coset must be the most likely.
    LogicalClass,
    /// The global argmax of ρ must equal the true coset.
    GlobalArgmax,
}

impl std::str::FromStr for LogicalTest {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "logical_class" | "logical-class" => Ok(Self::LogicalClass),
            "global_argmax" | "global-argmax" => Ok(Self::GlobalArgmax),
            other => Err(format!("unknown logical test '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub t: usize,
    pub p: f64,
    pub trials: usize,
    pub max_gates: u64,
    pub decoder: EngineKind,
    pub epsilon: f64,
    pub seed: u64,
    pub max_retry_rounds: u32,
    pub logical_test: LogicalTest,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            t: 1,
            p: 0.01,
            trials: 400,
            max_gates: 100_000,
            decoder: EngineKind::Sparse,
            epsilon: 1e-6,
            seed: 0,
            max_retry_rounds: 100,
            logical_test: LogicalTest::LogicalClass,
        }
    }
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(ProtocolError::Config(format!("p = {} outside [0, 1]", self.p)));
        }
        if self.trials < 2 {
            return Err(ProtocolError::Config("trials must be at least 2".into()));
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(ProtocolError::Config(format!("epsilon = {} outside [0, 1)", self.epsilon)));
        }
        if self.t != 1 {
            return Err(ProtocolError::Unsupported(format!("protocol runs at t = 1 only, got {}", self.t)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    LogicalError,
    CleanabilityFailure,
    MaxGatesReached,
    RetryCapReached,
    /// The decoder lost all mass; counted as a decoding failure.
    DecoderFailure,
}

impl Termination {
    /// Whether the trial ended on a failed test (and so counts toward p_L).
    #[must_use]
    pub fn is_failure(self) -> bool {
        matches!(self, Self::LogicalError | Self::CleanabilityFailure | Self::DecoderFailure)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub gates_implemented: u64,
    pub termination: Termination,
    /// Failed syndrome tests over the whole trial.
    pub retries: u64,
    pub rounds: u64,
}

/// Noisy syndromes of one C-round (7 ξ then 7 ζ) or T-round (9 edge ζ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeRecord {
    pub kind: RoundKind,
    pub bits: u64,
}

/// ζ_U(f) for C-round face `i`: the Z(f) outcome the frame after U would give,
/// a'·f = m00·ζ(f) + m01·ξ(f) where a' = m00·a + m01·b.
#[must_use]
pub fn zeta_u(c_bits: u64, face: usize, gate: Clifford) -> bool {
    let xi = c_bits >> face & 1 == 1;
    let zeta = c_bits >> (C_FACES + face) & 1 == 1;
    let m = gate.matrix();
    (m[0][0] && zeta) ^ (m[0][1] && xi)
}

/// The consistency test between a C-round and the following T-round: for each
/// square face f^i and each of its two opposite-edge pairs (l, l'),
/// ζ(l[A]+l[B]) + ζ(l'[A]+l'[B]) + ζ_U(f^i[A]) + ζ_U(f^i[B]) = 0.
#[must_use]
pub fn syndrome_test(codes: &ProtocolCodes, c_bits: u64, t_bits: u64, gate: Clifford) -> bool {
    let square = codes.opposite_pairs().len();
    codes.opposite_pairs().iter().enumerate().all(|(i, pairs)| {
        let faces = zeta_u(c_bits, i, gate) ^ zeta_u(c_bits, square + i, gate);
        pairs
            .iter()
            .all(|&(l, l2)| !((t_bits >> l & 1 == 1) ^ (t_bits >> l2 & 1 == 1) ^ faces))
    })
}

/// Whether the decoder's posterior points at the coset of the actual error.
pub fn logical_error_test<L: Likelihood>(rho: &L, frame: &PauliFrame, code: &SubsystemCode, mode: LogicalTest) -> bool {
    let truth = code.coset_label(&frame.a, &frame.b);
    match mode {
        LogicalTest::GlobalArgmax => rho.final_coset() == truth,
        LogicalTest::LogicalClass => {
            let (lx, lz) = code.logical_labels();
            let best = [0, lx, lz, lx ^ lz]
                .into_iter()
                .map(|l| truth ^ l)
                .map(|f| (f, rho.weight(f)))
                .fold((u64::MAX, f64::NEG_INFINITY), |best, (f, w)| {
                    if w > best.1 || (w == best.1 && f < best.0) {
                        (f, w)
                    } else {
                        best
                    }
                });
            best.0 == truth
        }
    }
}

/// Simulator state of one trial.
pub struct TrialState<'a, L: Likelihood> {
    codes: &'a ProtocolCodes,
    model: ErrorModel,
    kernels: &'a [MemoryKernel; 2],
    pub decoder: L,
    pub frame: PauliFrame,
    pub gates: u64,
    pub retries: u64,
    pub rounds: u64,
    consecutive_failures: u32,
    last_test_passed: bool,
    last_c: (u64, Clifford),
    mode: LogicalTest,
}

impl<'a, L: Likelihood> TrialState<'a, L> {
    pub fn new(
        codes: &'a ProtocolCodes,
        model: ErrorModel,
        kernels: &'a [MemoryKernel; 2],
        decoder: L,
        mode: LogicalTest,
    ) -> Self {
        Self {
            codes,
            model,
            kernels,
            decoder,
            frame: PauliFrame::identity(codes.n()),
            gates: 0,
            retries: 0,
            rounds: 0,
            consecutive_failures: 0,
            last_test_passed: true,
            last_c: (0, Clifford::IDENTITY),
            mode,
        }
    }

    /// Moves the logical qubit into the code of `kind`; the split randomizes the gauge.
    pub fn deform<R: Rng + ?Sized>(&mut self, kind: RoundKind, rng: &mut R) -> Result<(), DecoderError> {
        for map in self.codes.deformations_into(kind) {
            self.decoder.deform(map)?;
        }
        let g = random_element(self.codes.split_gauge(kind), rng);
        match kind {
            RoundKind::C => self.frame.b.xor_assign(&g),
            RoundKind::T => self.frame.a.xor_assign(&g),
        }
        Ok(())
    }

    /// Memory error, noisy measurement and decoder update. Returns the measured bits.
    pub fn measure<R: Rng + ?Sized>(&mut self, kind: RoundKind, rng: &mut R) -> Result<u64, DecoderError> {
        let error = sample_memory_error(&self.model, self.codes.n(), rng);
        self.frame.compose(&error);
        let code = self.codes.code(kind);
        let map = self.codes.syndrome_map(kind);
        let ideal = map.syndrome(code.coset_label(&self.frame.a, &self.frame.b));
        let observed = flip_syndrome(&self.model, ideal, map.bits(), rng);
        let kernel = &self.kernels[match kind {
            RoundKind::C => 0,
            RoundKind::T => 1,
        }];
        self.decoder.apply_memory(kernel)?;
        self.decoder.apply_syndrome(map, observed, self.model.p_meas)?;
        Ok(observed)
    }

    #[must_use]
    pub fn logical_ok(&self, kind: RoundKind) -> bool {
        logical_error_test(&self.decoder, &self.frame, self.codes.code(kind), self.mode)
    }

    /// One C-round. Returns a termination if the trial ends here.
    pub fn c_round<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Option<Termination>, DecoderError> {
        self.rounds += 1;
        self.deform(RoundKind::C, rng)?;
        let bits = self.measure(RoundKind::C, rng)?;
        if !self.logical_ok(RoundKind::C) {
            return Ok(Some(Termination::LogicalError));
        }
        let gate = if self.last_test_passed {
            let u = Clifford::random(rng);
            self.decoder.apply_clifford(self.codes.clifford_map(u))?;
            self.frame = frame_through_clifford(&self.frame, u);
            self.gates += 1;
            u
        } else {
            Clifford::IDENTITY
        };
        self.last_c = (bits, gate);
        self.decoder.end_round();
        Ok(None)
    }

    /// One T-round, including the syndrome test, recovery and T gate.
    pub fn t_round<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        max_retry_rounds: u32,
    ) -> Result<Option<Termination>, DecoderError> {
        self.rounds += 1;
        self.deform(RoundKind::T, rng)?;
        let bits = self.measure(RoundKind::T, rng)?;
        if !self.logical_ok(RoundKind::T) {
            return Ok(Some(Termination::LogicalError));
        }
        let (c_bits, gate) = self.last_c;
        if !syndrome_test(self.codes, c_bits, bits, gate) {
            self.retries += 1;
            self.consecutive_failures += 1;
            self.last_test_passed = false;
            if self.consecutive_failures >= max_retry_rounds {
                return Ok(Some(Termination::RetryCapReached));
            }
            self.decoder.end_round();
            return Ok(None);
        }
        self.consecutive_failures = 0;
        self.last_test_passed = true;

        let t_code = self.codes.t_code();
        let alpha = self.decoder.choose_recovery();
        self.frame.a.xor_assign(&t_code.coset_map().x_preimage(alpha));
        if !self.codes.cleanability().is_cleanable(t_code.coset_map().x_label(&self.frame.a)) {
            return Ok(Some(Termination::CleanabilityFailure));
        }
        self.decoder.apply_t(self.codes.t_propagator())?;
        self.frame = self.codes.t_propagator().propagate(&self.frame, rng)?;
        let twirl = random_element(t_code.a(), rng);
        self.frame.a.xor_assign(&twirl);
        self.gates += 1;
        self.decoder.end_round();
        Ok(None)
    }
}

/// Runs one trial with an explicit decoder engine.
pub fn run_trial_with<L: Likelihood, R: Rng + ?Sized>(
    codes: &ProtocolCodes,
    config: &ProtocolConfig,
    kernels: &[MemoryKernel; 2],
    decoder: L,
    rng: &mut R,
) -> Result<TrialResult, ProtocolError> {
    let model = ErrorModel::uniform(config.p)?;
    let mut st = TrialState::new(codes, model, kernels, decoder, config.logical_test);
    let finish = |st: &TrialState<'_, L>, termination| TrialResult {
        gates_implemented: st.gates,
        termination,
        retries: st.retries,
        rounds: st.rounds,
    };
    for kind in [RoundKind::C, RoundKind::T].into_iter().cycle() {
        if st.gates >= config.max_gates {
            return Ok(finish(&st, Termination::MaxGatesReached));
        }
        let step = match kind {
            RoundKind::C => st.c_round(rng),
            RoundKind::T => st.t_round(rng, config.max_retry_rounds),
        };
        match step {
            Ok(None) => {}
            Ok(Some(end)) => return Ok(finish(&st, end)),
            Err(DecoderError::Degenerate | DecoderError::ZeroMass) => {
                return Ok(finish(&st, Termination::DecoderFailure))
            }
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!("the round cycle never ends")
}

/// Runs one trial with the engine named in the config.
pub fn run_trial<R: Rng + ?Sized>(
    codes: &ProtocolCodes,
    config: &ProtocolConfig,
    kernels: &[MemoryKernel; 2],
    rng: &mut R,
) -> Result<TrialResult, ProtocolError> {
    let layout = crate::decoder::LabelLayout::of(codes.t_code());
    match config.decoder {
        EngineKind::Exact => run_trial_with(codes, config, kernels, DenseLikelihood::init(layout)?, rng),
        EngineKind::Sparse => run_trial_with(
            codes,
            config,
            kernels,
            SparseLikelihood::with_cutoff(layout, config.epsilon)?,
            rng,
        ),
    }
}
