mod common;

use common::*;
use dcc::f2core::*;
use proptest::prelude::*;

fn vectors(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..(1u64 << n), 0..=max_rows)
}

fn evenize(rows: &[u64]) -> Vec<u64> {
    rows.iter().map(|&r| if r.count_ones() % 2 == 1 { r ^ 1 } else { r }).collect()
}

fn matrix(n: usize, rows: &[u64]) -> BitMatrix {
    BitMatrix::from_rows(n, rows.iter().map(|&r| BitVector::from_u64(n, r)).collect()).unwrap()
}

proptest! {
    #[test]
    fn rank_nullity(n in 1usize..14, rows in vectors(13, 10)) {
        let rows: Vec<u64> = rows.iter().map(|r| r & ((1 << n) - 1)).collect();
        let m = matrix(n, &rows);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.nrows(), n);
        for v in k.rows() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(span_of(n, &rows), span_of(n, &r.rows().iter().map(BitVector::to_u64).collect::<Vec<_>>()));
    }

    #[test]
    fn complement_and_dot_are_involutions(half in 0usize..6, rows in vectors(11, 6)) {
        let n = 2 * half + 1;
        let rows = evenize(&rows.iter().map(|r| r & ((1 << n) - 1)).collect::<Vec<_>>());
        let s = span_of(n, &rows);
        let perp = s.orthogonal_complement();
        prop_assert_eq!(s.dim() + perp.dim(), n);
        prop_assert_eq!(&perp.orthogonal_complement(), &s);
        let dot = s.dot();
        prop_assert!(dot.is_even());
        prop_assert_eq!(dot.dot(), s);
    }

    #[test]
    fn sum_and_intersection_dimensions(n in 1usize..12, a in vectors(11, 6), b in vectors(11, 6)) {
        let mask = (1u64 << n) - 1;
        let a = span_of(n, &a.iter().map(|r| r & mask).collect::<Vec<_>>());
        let b = span_of(n, &b.iter().map(|r| r & mask).collect::<Vec<_>>());
        let sum = a.sum(&b).unwrap();
        let cap = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
        let ea: std::collections::HashSet<u64> = all_sums(&masks(&a)).into_iter().collect();
        let both = all_sums(&masks(&b)).into_iter().filter(|x| ea.contains(x)).count();
        prop_assert_eq!(both, 1usize << cap.dim());
    }

    #[test]
    fn min_odd_weight_matches_naive(n in 1usize..12, rows in vectors(11, 8)) {
        let rows: Vec<u64> = rows.iter().map(|r| r & ((1 << n) - 1)).collect();
        let s = span_of(n, &rows);
        let naive = (0u64..1 << n)
            .filter(|x| x.count_ones() % 2 == 1 && rows.iter().all(|r| (x & r).count_ones() % 2 == 0))
            .map(|x| x.count_ones() as usize)
            .min();
        prop_assert_eq!(s.min_odd_weight(None).ok().and_then(OddWeight::exact), naive);
        prop_assert_eq!(s.min_odd_weight(Some(n)).ok().and_then(OddWeight::exact), naive);
        match s.min_odd_vector(None) {
            Ok(Some(v)) => {
                prop_assert_eq!(Some(v.weight()), naive);
                prop_assert!(s.basis().rows().iter().all(|r| !r.dot(&v)));
            }
            Ok(None) => prop_assert!(false, "unbounded search returned nothing"),
            Err(e) => {
                prop_assert_eq!(e, F2Error::NoOddVectors);
                prop_assert_eq!(naive, None);
            }
        }
    }

    #[test]
    fn coordinates_reconstruct(n in 1usize..14, rows in vectors(13, 8), pick in any::<u64>()) {
        let rows: Vec<u64> = rows.iter().map(|r| r & ((1 << n) - 1)).collect();
        let s = span_of(n, &rows);
        let coeffs = BitVector::from_u64(s.dim(), pick & ((1u64 << s.dim()) - 1));
        let v = s.basis().combine(&coeffs);
        prop_assert!(s.contains(&v));
        prop_assert_eq!(s.coordinates(&v), Some(coeffs));
    }

    #[test]
    fn fwht_twice_scales_by_length(k in 0u32..8, seed in any::<u64>()) {
        let len = 1usize << k;
        let values: Vec<f64> = (0..len).map(|i| ((seed >> (i % 64)) & 7) as f64 - 3.5).collect();
        let mut w = values.clone();
        fwht(&mut w).unwrap();
        for (s, &ws) in w.iter().enumerate() {
            let direct: f64 = values
                .iter()
                .enumerate()
                .map(|(x, v)| if (s & x).count_ones() % 2 == 1 { -v } else { *v })
                .sum();
            prop_assert!((direct - ws).abs() < 1e-9);
        }
        fwht(&mut w).unwrap();
        for (a, b) in w.iter().zip(&values) {
            prop_assert!((a / len as f64 - b).abs() < 1e-9);
        }
    }

    #[test]
    fn hex_round_trip(len in 1usize..130, seed in any::<u64>()) {
        let bits: Vec<bool> = (0..len).map(|i| (seed.rotate_left(i as u32 * 7) ^ i as u64) & 1 == 1).collect();
        let v = BitVector::from_bools(&bits);
        prop_assert_eq!(BitVector::from_hex(len, &v.to_hex()).unwrap(), v.clone());
        prop_assert_eq!(v.weight(), bits.iter().filter(|&&b| b).count());
    }
}

#[test]
fn zero_subspace_has_distance_one() {
    assert_eq!(Subspace::zero(5).min_odd_weight(None).unwrap(), OddWeight::Exact(1));
}

#[test]
fn fwht_rejects_odd_lengths() {
    assert!(fwht(&mut [1.0, 2.0, 3.0]).is_err());
}
