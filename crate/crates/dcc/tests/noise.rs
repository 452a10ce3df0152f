use std::collections::HashMap;

use dcc::codefamily::build_doubled;
use dcc::csscode::CleanabilityTable;
use dcc::f2core::BitVector;
use dcc::noise::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// R_e by brute force: elements of B inside e that are orthogonal to every other such element.
fn brute_r(b_elems: &[BitVector], e: &BitVector) -> Vec<BitVector> {
    let inside: Vec<&BitVector> = b_elems.iter().filter(|g| g.is_subset_of(e)).collect();
    inside
        .iter()
        .filter(|g| inside.iter().all(|h| !g.dot(h)))
        .map(|g| (*g).clone())
        .collect()
}

#[test]
fn t_channel_matches_brute_force() {
    let fam = build_doubled(1).unwrap();
    let code = fam.t_code().unwrap();
    let table = CleanabilityTable::build(&code).unwrap();
    let prop = TPropagator::new(&code, &table).unwrap();
    let b_elems = code.b().elements();
    let map = code.coset_map();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for alpha in table.cleanable().step_by(37) {
        let entry = prop.entry(alpha).unwrap();
        let r = brute_r(&b_elems, &entry.e);
        assert_eq!(r.len(), 1 << entry.r_basis.len());

        let dist = entry.distribution();
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);

        let mut by_label: HashMap<u64, f64> = HashMap::new();
        for (f, p) in &dist {
            let oracle: f64 = r
                .iter()
                .map(|g| if f.dot(g) ^ (g.weight() / 2 % 2 == 1) { -1.0 } else { 1.0 })
                .sum::<f64>()
                * 0.5f64.powi(entry.e.weight() as i32);
            assert!((oracle - p).abs() < 1e-12);
            assert!((entry.probability_character_sum(f) - p).abs() < 1e-12);
            *by_label.entry(map.z_label(f)).or_default() += p;
        }
        for &(beta, q) in &entry.q {
            assert!(q > 0.0);
            assert!((by_label.get(&beta).copied().unwrap_or(0.0) - q).abs() < 1e-12);
        }
        assert_eq!(entry.q.len(), by_label.values().filter(|&&p| p > 1e-12).count());

        for _ in 0..20 {
            let f = entry.sample(&mut rng);
            assert!(entry.probability(&f) > 0.0);
        }
    }
}

#[test]
fn non_cleanable_coset_is_rejected() {
    let fam = build_doubled(1).unwrap();
    let code = fam.t_code().unwrap();
    let table = CleanabilityTable::build(&code).unwrap();
    let prop = TPropagator::new(&code, &table).unwrap();
    let bad = (0..1u64 << code.coset_map().x_bits()).find(|&a| !table.is_cleanable(a)).unwrap();
    assert_eq!(prop.entry(bad).unwrap_err(), NoiseError::NotCleanable(bad));
}

#[test]
fn depolarizing_marginals() {
    let model = ErrorModel::uniform(0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut x, mut y, mut z) = (0usize, 0usize, 0usize);
    let trials = 20_000;
    for _ in 0..trials {
        let f = sample_memory_error(&model, 1, &mut rng);
        match (f.a.get(0), f.b.get(0)) {
            (true, false) => x += 1,
            (true, true) => y += 1,
            (false, true) => z += 1,
            _ => {}
        }
    }
    for c in [x, y, z] {
        let frac = c as f64 / trials as f64;
        assert!((frac - 0.1).abs() < 0.01, "{frac}");
    }
}
