//! Brute-force oracles shared by the integration tests. Everything here works
//! on plain u64 bit masks so it shares no code with the library.
#![allow(dead_code)]

use dcc::f2core::{BitVector, Subspace};
use rand::Rng;

pub fn masks(s: &Subspace) -> Vec<u64> {
    s.basis().rows().iter().map(BitVector::to_u64).collect()
}

pub fn span_of(n: usize, rows: &[u64]) -> Subspace {
    let v: Vec<BitVector> = rows.iter().map(|&r| BitVector::from_u64(n, r)).collect();
    Subspace::span(n, &v).unwrap()
}

/// All 2^k sums of the given rows (duplicates if dependent).
pub fn all_sums(rows: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &r in rows {
        let more: Vec<u64> = out.iter().map(|x| x ^ r).collect();
        out.extend(more);
    }
    out
}

fn orthogonal(x: u64, rows: &[u64]) -> bool {
    rows.iter().all(|r| (x & r).count_ones() % 2 == 0)
}

/// Next integer with the same popcount.
fn gosper(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Calls `f` on every n-bit mask of weight w until it returns true.
pub fn any_of_weight(n: usize, w: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if w > n {
        return false;
    }
    if w == 0 {
        return f(0);
    }
    let mut x = (1u64 << w) - 1;
    while x < 1u64 << n {
        if f(x) {
            return true;
        }
        x = gosper(x);
    }
    false
}

/// Smallest odd weight of a vector orthogonal to every row.
pub fn min_odd_orthogonal(n: usize, rows: &[u64]) -> Option<usize> {
    (1..=n).step_by(2).find(|&w| any_of_weight(n, w, |x| orthogonal(x, rows)))
}

pub fn brute_distance(s: &Subspace) -> Option<usize> {
    min_odd_orthogonal(s.ambient(), &masks(s))
}

/// Random even vectors spanning a subspace of F2^n (dimension at most `k`).
pub fn random_even_subspace<R: Rng>(rng: &mut R, n: usize, k: usize) -> Subspace {
    let rows: Vec<u64> = (0..k)
        .map(|_| {
            let mut x = rng.gen::<u64>() & ((1u64 << n) - 1);
            if x.count_ones() % 2 == 1 {
                x ^= 1 << rng.gen_range(0..n);
            }
            x
        })
        .collect();
    span_of(n, &rows)
}

/// |f ∩ plus| − |f ∩ minus| ≡ 0 (mod order) for every element of the span.
pub fn brute_even(rows: &[u64], plus: u64, minus: u64, order: i64) -> bool {
    all_sums(rows)
        .into_iter()
        .all(|f| ((f & plus).count_ones() as i64 - (f & minus).count_ones() as i64).rem_euclid(order) == 0)
}

pub fn set_mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |acc, &i| acc | 1 << i)
}
