use std::collections::HashMap;

use dcc::codefamily::{build_lattice, face_space};
use dcc::csscode::make_code;
use dcc::decoder::*;
use dcc::f2core::BitVector;
use dcc::noise::{Clifford, ErrorModel};
use dcc::protocol::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pack(rows: &[u64], v: u64) -> u64 {
    rows.iter()
        .enumerate()
        .fold(0, |acc, (i, r)| acc | u64::from((r & v).count_ones() & 1) << i)
}

#[test]
fn depolarizing_kernel_matches_full_enumeration() {
    let s = face_space(&build_lattice(1).unwrap());
    let code = make_code("steane", s.clone(), s).unwrap();
    let map = code.coset_map();
    let xr: Vec<u64> = map.x_rows().rows().iter().map(BitVector::to_u64).collect();
    let zr: Vec<u64> = map.z_rows().rows().iter().map(BitVector::to_u64).collect();
    let p = 0.07f64;
    let mut oracle: HashMap<u64, f64> = HashMap::new();
    for a in 0u64..1 << 7 {
        for b in 0u64..1 << 7 {
            let w = (a | b).count_ones() as i32;
            let prob = (1.0 - p).powi(7 - w) * (p / 3.0).powi(w);
            *oracle.entry(pack(&xr, a) | pack(&zr, b) << xr.len()).or_default() += prob;
        }
    }
    let layout = LabelLayout::of(&code);
    let mut rho = DenseLikelihood::init(layout).unwrap();
    rho.apply_memory(&MemoryKernel::depolarizing_dense(&code, p).unwrap()).unwrap();
    for f in 0..1u64 << layout.c() {
        let want = oracle.get(&f).copied().unwrap_or(0.0);
        assert!((rho.weight(f) - want).abs() < 1e-12, "label {f}");
    }
}

#[test]
fn sparse_kernel_is_weight_at_most_one() {
    let codes = ProtocolCodes::build(1).unwrap();
    let code = codes.t_code();
    let MemoryKernel::Sparse { entries, .. } = MemoryKernel::depolarizing_sparse(code, 0.03).unwrap() else {
        panic!("expected explicit entries");
    };
    let total: f64 = entries.iter().map(|e| e.1).sum();
    assert!((total - (1.0 + 14.0 * 0.03)).abs() < 1e-12);
    let identity = entries.iter().find(|e| e.0 == 0).unwrap().1;
    assert!((identity - 0.97).abs() < 1e-12);
    assert!(entries.len() <= 1 + 3 * 15);
}

/// Same seeds, dense with the weight-one kernel and sparse without a cutoff:
/// the two engines must produce identical posteriors at every round.
#[test]
fn engines_agree_without_truncation() {
    let codes = ProtocolCodes::build(1).unwrap();
    let kernels = codes.memory_kernels(0.02, true).unwrap();
    let model = ErrorModel::uniform(0.02).unwrap();
    let layout = LabelLayout::of(codes.t_code());
    for seed in 0..4 {
        let mut r1 = ChaCha8Rng::seed_from_u64(seed);
        let mut r2 = ChaCha8Rng::seed_from_u64(seed);
        let dense = DenseLikelihood::init(layout).unwrap();
        let sparse = SparseLikelihood::with_cutoff(layout, 0.0).unwrap();
        let mut a = TrialState::new(&codes, model, &kernels, dense, LogicalTest::LogicalClass);
        let mut b = TrialState::new(&codes, model, &kernels, sparse, LogicalTest::LogicalClass);
        for round in 0..40 {
            let (ea, eb) = if round % 2 == 0 {
                (a.c_round(&mut r1).unwrap(), b.c_round(&mut r2).unwrap())
            } else {
                (a.t_round(&mut r1, 100).unwrap(), b.t_round(&mut r2, 100).unwrap())
            };
            assert_eq!(ea, eb);
            assert_eq!(a.frame, b.frame);
            let da: HashMap<u64, f64> = a.decoder.distribution().into_iter().collect();
            for (f, w) in b.decoder.distribution() {
                assert!((da.get(&f).copied().unwrap_or(0.0) - w).abs() < 1e-9, "seed {seed} round {round}");
            }
            let total: f64 = a.decoder.distribution().iter().map(|e| e.1).sum();
            assert!((total - 1.0).abs() < 1e-9);
            if ea.is_some() {
                break;
            }
        }
    }
}

#[test]
fn truncation_keeps_the_maximum() {
    let layout = LabelLayout::new(2, 2);
    let mut s = SparseLikelihood::from_entries(layout, vec![(3, 0.5), (1, 0.3), (2, 0.2)], 0.6).unwrap();
    s.truncate();
    assert_eq!(s.entries(), &[(3, 1.0)]);
    let mut s = SparseLikelihood::from_entries(layout, vec![(0, 1.0), (5, 1e-7)], DEFAULT_CUTOFF).unwrap();
    s.end_round();
    assert_eq!(s.support_size(), 1);
    assert!(SparseLikelihood::with_cutoff(layout, 1.5).is_err());
}

#[test]
fn recovery_moves_the_x_marginal_to_zero() {
    let layout = LabelLayout::new(3, 2);
    let pairs = vec![(layout.join(5, 1), 0.4), (layout.join(5, 2), 0.3), (layout.join(2, 0), 0.3)];
    let mut s = SparseLikelihood::from_entries(layout, pairs.clone(), 0.0).unwrap();
    assert_eq!(s.choose_recovery(), 5);
    assert!((s.weight(layout.join(0, 1)) - 0.4).abs() < 1e-12);
    assert!((s.weight(layout.join(7, 0)) - 0.3).abs() < 1e-12);

    let mut rho = vec![0.0; 32];
    for (f, w) in pairs {
        rho[f as usize] = w;
    }
    let mut d = DenseLikelihood::from_weights(layout, rho).unwrap();
    assert_eq!(d.choose_recovery(), 5);
    assert!((d.weight(layout.join(0, 2)) - 0.3).abs() < 1e-12);
}

#[test]
fn ties_break_to_the_smallest_label() {
    let layout = LabelLayout::new(2, 1);
    let s = SparseLikelihood::from_entries(layout, vec![(6, 0.5), (3, 0.5)], 0.0).unwrap();
    assert_eq!(s.final_coset(), 3);
    let d = DenseLikelihood::from_weights(layout, vec![0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0]).unwrap();
    assert_eq!(d.final_coset(), 3);
}

#[test]
fn inconsistent_syndrome_is_degenerate() {
    let layout = LabelLayout::new(1, 1);
    let map = SyndromeMap::new(layout, vec![0b01]).unwrap();
    let mut s = SparseLikelihood::init(layout).unwrap();
    assert_eq!(s.apply_syndrome(&map, 1, 0.0), Err(DecoderError::Degenerate));
    let mut d = DenseLikelihood::init(layout).unwrap();
    assert_eq!(d.apply_syndrome(&map, 1, 0.0), Err(DecoderError::Degenerate));
}

#[test]
fn clifford_label_maps() {
    let codes = ProtocolCodes::build(1).unwrap();
    let c = codes.c_code();
    let layout = LabelLayout::of(c);
    for k in 0..24 {
        let g = Clifford::from_index(k);
        let m = codes.clifford_map(g);
        assert!(m.is_invertible());
        let inv = codes.clifford_map(g.inverse());
        for f in 0..1u64 << layout.c() {
            assert_eq!(inv.apply(m.apply(f)), f, "class {}", g.class());
        }
    }
    let (lx, lz) = c.logical_labels();
    let h = codes.clifford_map(Clifford::H);
    assert_eq!(h.apply(lx), lz);
    assert_eq!(h.apply(lz), lx);
}

#[test]
fn deformation_cycle_conserves_mass() {
    let codes = ProtocolCodes::build(1).unwrap();
    let layout = LabelLayout::of(codes.t_code());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs: Vec<(u64, f64)> = (0..40).map(|_| (rng.gen::<u64>() & ((1 << layout.c()) - 1), rng.gen())).collect();
    let mut s = SparseLikelihood::from_entries(layout, pairs, 0.0).unwrap();
    let mut rho = vec![0.0; 1 << layout.c()];
    for &(f, w) in s.entries() {
        rho[f as usize] = w;
    }
    let mut d = DenseLikelihood::from_weights(layout, rho).unwrap();
    for kind in [RoundKind::C, RoundKind::T] {
        for map in codes.deformations_into(kind) {
            s.deform(map).unwrap();
            d.deform(map).unwrap();
            let ts: f64 = s.distribution().iter().map(|e| e.1).sum();
            assert!((ts - 1.0).abs() < 1e-12);
            for (f, w) in s.distribution() {
                assert!((d.weight(f) - w).abs() < 1e-12);
            }
        }
    }
    assert_eq!(s.layout(), layout);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn memory_update_is_a_convolution(seed in any::<u64>(), xb in 1usize..5, zb in 1usize..5) {
        let layout = LabelLayout::new(xb, zb);
        let size = 1usize << layout.c();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho: Vec<f64> = (0..size).map(|_| rng.gen()).collect();
        let kernel: Vec<(u64, f64)> = (0..4).map(|_| (rng.gen_range(0..size as u64), rng.gen())).collect();
        let k = MemoryKernel::from_distribution(layout, kernel.clone()).unwrap();
        let mut d = DenseLikelihood::from_weights(layout, rho.clone()).unwrap();
        d.apply_memory(&k.to_dense().unwrap()).unwrap();
        let mut s = SparseLikelihood::from_entries(layout, rho.iter().enumerate().map(|(f, &w)| (f as u64, w)).collect(), 0.0).unwrap();
        s.apply_memory(&k).unwrap();
        let kt: f64 = kernel.iter().map(|e| e.1).sum();
        let rt: f64 = rho.iter().sum();
        for f in 0..size {
            let direct: f64 = kernel.iter().map(|&(e, p)| p * rho[f ^ e as usize]).sum::<f64>() / (kt * rt);
            prop_assert!((d.weight(f as u64) - direct).abs() < 1e-10);
            prop_assert!((s.weight(f as u64) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn syndrome_update_is_bayes(seed in any::<u64>(), q in 0.0f64..0.5) {
        let layout = LabelLayout::new(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<u64> = (0..4).map(|_| rng.gen_range(0..64)).collect();
        let map = SyndromeMap::new(layout, rows.clone()).unwrap();
        let rho: Vec<f64> = (0..64).map(|_| rng.gen::<f64>() + 0.01).collect();
        let s = rng.gen_range(0..16u64);
        let mut d = DenseLikelihood::from_weights(layout, rho.clone()).unwrap();
        d.apply_syndrome(&map, s, q).unwrap();
        let lik = |f: u64| {
            let flips = (pack(&rows, f) ^ s).count_ones() as i32;
            q.powi(flips) * (1.0 - q).powi(4 - flips)
        };
        let total: f64 = (0..64u64).map(|f| rho[f as usize] * lik(f)).sum();
        for f in 0..64u64 {
            prop_assert!((d.weight(f) - rho[f as usize] * lik(f) / total).abs() < 1e-10);
        }
    }
}
