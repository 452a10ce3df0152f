use dcc::decoder::*;
use dcc::f2core::BitVector;
use dcc::noise::{Clifford, ErrorModel, PauliFrame};
use dcc::protocol::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn codes() -> ProtocolCodes {
    ProtocolCodes::build(1).unwrap()
}

#[test]
fn only_level_one_has_a_protocol() {
    assert!(matches!(ProtocolCodes::build(2), Err(ProtocolError::Unsupported(_))));
}

#[test]
fn label_layouts() {
    let c = codes();
    assert_eq!(LabelLayout::of(c.c_code()).c(), 16);
    assert_eq!(LabelLayout::of(c.base()).c(), 13);
    assert_eq!(LabelLayout::of(c.t_code()).c(), 16);
    assert_eq!(c.faces().len(), C_FACES);
    assert_eq!(c.edges().len(), 9);
    for (i, pairs) in c.opposite_pairs().iter().enumerate() {
        for &(l, l2) in pairs {
            let sum = c.edges()[l].xor(&c.edges()[l2]);
            assert_eq!(sum, c.faces()[i].xor(&c.faces()[3 + i]), "face {i}");
        }
    }
}

#[test]
fn noiseless_frames_are_tracked_exactly() {
    let codes = codes();
    let kernels = codes.memory_kernels(0.0, true).unwrap();
    let layout = LabelLayout::of(codes.t_code());
    let model = ErrorModel::uniform(0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let decoder = SparseLikelihood::init(layout).unwrap();
    let mut st = TrialState::new(&codes, model, &kernels, decoder, LogicalTest::GlobalArgmax);
    for _ in 0..300 {
        assert_eq!(st.c_round(&mut rng).unwrap(), None);
        assert!(st.logical_ok(RoundKind::C));
        assert_eq!(st.t_round(&mut rng, 100).unwrap(), None);
        // The frame carries random gauge, so the exact coset must be tracked.
        let truth = codes.t_code().coset_label(&st.frame.a, &st.frame.b);
        assert_eq!(st.decoder.final_coset(), truth);
    }
    assert_eq!(st.gates, 600);
    assert_eq!(st.retries, 0);
}

#[test]
fn noiseless_trials_are_censored() {
    let codes = codes();
    for decoder in [EngineKind::Exact, EngineKind::Sparse] {
        let config = ProtocolConfig {
            p: 0.0,
            trials: 5,
            max_gates: 200,
            decoder,
            ..Default::default()
        };
        let est = estimate_pl(&codes, &config).unwrap();
        assert_eq!(est.n_censored, 5);
        assert_eq!(est.p_l, None);
        assert_eq!(est.p_l_upper_bound, Some(1.0 / 200.0));
        assert_eq!(est.mean_retries, 0.0);
    }
}

#[test]
fn trials_are_reproducible_across_thread_counts() {
    let codes = codes();
    let config = ProtocolConfig {
        p: 0.02,
        trials: 12,
        seed: 9,
        ..Default::default()
    };
    let a = run_trials(&codes, &config).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| run_trials(&codes, &config).unwrap());
    assert_eq!(a, b);
    let other = run_trials(&codes, &ProtocolConfig { seed: 10, ..config }).unwrap();
    assert_ne!(a, other);
}

#[test]
fn gates_per_round_at_low_noise() {
    let codes = codes();
    let config = ProtocolConfig {
        p: 1e-3,
        trials: 8,
        max_gates: 400,
        seed: 3,
        ..Default::default()
    };
    let results = run_trials(&codes, &config).unwrap();
    let gates: u64 = results.iter().map(|r| r.gates_implemented).sum();
    let rounds: u64 = results.iter().map(|r| r.rounds).sum();
    assert!(gates as f64 / rounds as f64 >= 0.9, "{gates} gates in {rounds} rounds");
}

#[test]
fn syndrome_test_examples() {
    let codes = codes();
    assert!(syndrome_test(&codes, 0, 0, Clifford::IDENTITY));
    for edge in 0..9 {
        assert!(!syndrome_test(&codes, 0, 1 << edge, Clifford::IDENTITY), "edge {edge}");
    }
    // H: the updated syndrome reads ξ instead of ζ.
    let xi_f1a = 1u64;
    assert!(zeta_u(xi_f1a, 0, Clifford::H));
    assert!((1..C_FACES).all(|f| !zeta_u(xi_f1a, f, Clifford::H)));
    assert!(!zeta_u(xi_f1a, 0, Clifford::IDENTITY));
    assert!(!syndrome_test(&codes, xi_f1a, 0, Clifford::H));
    assert!(syndrome_test(&codes, xi_f1a, 0, Clifford::IDENTITY));
    // ζ(f¹[A]) alone breaks both constraints of face 1; together with ζ(f¹[B]) it cancels.
    let zeta = |face: usize| 1u64 << (C_FACES + face);
    assert!(!syndrome_test(&codes, zeta(0), 0, Clifford::IDENTITY));
    assert!(syndrome_test(&codes, zeta(0) | zeta(3), 0, Clifford::IDENTITY));
    // The ω face never enters the test.
    assert!(syndrome_test(&codes, zeta(6) | 1 << 6, 0, Clifford::H));
}

#[test]
fn logical_error_test_examples() {
    let codes = codes();
    let code = codes.c_code();
    let layout = LabelLayout::of(code);
    let rho = SparseLikelihood::init(layout).unwrap();
    let n = codes.n();
    for mode in [LogicalTest::LogicalClass, LogicalTest::GlobalArgmax] {
        assert!(logical_error_test(&rho, &PauliFrame::identity(n), code, mode));
        let gauge = PauliFrame::new(codes.faces()[0].clone(), codes.faces()[4].clone());
        assert!(logical_error_test(&rho, &gauge, code, mode));
        let xl = PauliFrame::new(BitVector::ones(n), BitVector::zeros(n));
        assert!(!logical_error_test(&rho, &xl, code, mode));
    }
}

#[test]
fn jackknife_of_identical_failures() {
    let results: Vec<TrialResult> = (0..10)
        .map(|_| TrialResult {
            gates_implemented: 50,
            termination: Termination::LogicalError,
            retries: 0,
            rounds: 100,
        })
        .collect();
    let est = summarize(0.01, &results, 0.0);
    assert_eq!(est.p_l, Some(0.02));
    assert!(est.stderr.unwrap().abs() < 1e-15);
    assert_eq!(est.n_logical_failures, 10);
}

#[test]
fn censored_trials_are_excluded_from_the_mean() {
    let mk = |g, termination| TrialResult {
        gates_implemented: g,
        termination,
        retries: 0,
        rounds: 2 * g,
    };
    let results = vec![
        mk(10, Termination::LogicalError),
        mk(30, Termination::CleanabilityFailure),
        mk(1000, Termination::MaxGatesReached),
        mk(7, Termination::RetryCapReached),
    ];
    let est = summarize(0.01, &results, 0.0);
    assert_eq!(est.mean_gates, Some(20.0));
    assert_eq!(est.n_censored, 1);
    assert_eq!(est.n_retry_capped, 1);
    // Leave-one-out estimates 1/30 and 1/10 around their mean 1/15.
    let loo = [1.0 / 30.0, 1.0 / 10.0];
    let mean = (loo[0] + loo[1]) / 2.0;
    let want = (0.5 * loo.iter().map(|x: &f64| (x - mean).powi(2)).sum::<f64>()).sqrt();
    assert!((est.stderr.unwrap() - want).abs() < 1e-15);
}

#[test]
fn config_validation() {
    let bad = ProtocolConfig {
        p: 1.5,
        ..Default::default()
    };
    assert!(bad.validate().is_err());
    let bad = ProtocolConfig {
        trials: 1,
        ..Default::default()
    };
    assert!(bad.validate().is_err());
    assert!(ProtocolConfig::default().validate().is_ok());
    let json = serde_json::to_string(&ProtocolConfig::default()).unwrap();
    let back: ProtocolConfig = serde_json::from_str(&json).unwrap();
    assert_eq!(back, ProtocolConfig::default());
}
