use rand::Rng;

use super::{NoiseError, PauliFrame};
use crate::csscode::{CleanabilityTable, CodeError, CosetMap, SubsystemCode};
use crate::f2core::{fwht, BitMatrix, BitVector, Subspace};

/// Data for one cleanable X-coset α: the representative e = e(α), a basis
/// g^1..g^k of R_e = B(e) ∩ B(e)^⊥ and fixers d^a ⊆ e with g^b·d^a = δ_ab.
#[derive(Clone, Debug)]
pub struct TEntry {
    pub alpha: u64,
    pub e: BitVector,
    pub r_basis: Vec<BitVector>,
    fixers: Vec<BitVector>,
    /// Bit a holds |g^a|/2 mod 2.
    targets: u64,
    /// Γ̂_α over Z-labels.
    pub gamma_hat: Vec<f64>,
    /// Induced distribution of the Z-label of f, as (β, probability).
    pub q: Vec<(u64, f64)>,
}

impl TEntry {
    /// P(f|e) = 2^{-|e|} Π_a [1 + (−1)^{f·g^a + |g^a|/2}] for f ⊆ e, else 0.
    #[must_use]
    pub fn probability(&self, f: &BitVector) -> f64 {
        if !f.is_subset_of(&self.e) {
            return 0.0;
        }
        let mut p = 0.5f64.powi(self.e.weight() as i32);
        for (a, g) in self.r_basis.iter().enumerate() {
            let sign = f.dot(g) ^ (self.targets >> a & 1 == 1);
            p *= if sign { 0.0 } else { 2.0 };
        }
        p
    }

    /// The same probability as a character sum over all of R_e.
    #[must_use]
    pub fn probability_character_sum(&self, f: &BitVector) -> f64 {
        if !f.is_subset_of(&self.e) {
            return 0.0;
        }
        let r = Subspace::span(self.e.len(), &self.r_basis).expect("basis rows share a length");
        let total: f64 = r
            .elements()
            .iter()
            .map(|g| {
                let odd = f.dot(g) ^ ((g.weight() / 2) % 2 == 1);
                if odd {
                    -1.0
                } else {
                    1.0
                }
            })
            .sum();
        total * 0.5f64.powi(self.e.weight() as i32)
    }

    /// Uniform f ⊆ e, then corrected onto the support of P(·|e).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVector {
        let mut f = BitVector::zeros(self.e.len());
        for j in self.e.iter_ones() {
            if rng.gen::<bool>() {
                f.set(j, true);
            }
        }
        for (a, (g, d)) in self.r_basis.iter().zip(&self.fixers).enumerate() {
            if f.dot(g) != (self.targets >> a & 1 == 1) {
                f.xor_assign(d);
            }
        }
        f
    }

    /// Every f ⊆ e with positive probability. Intended for small e.
    #[must_use]
    pub fn distribution(&self) -> Vec<(BitVector, f64)> {
        let coords = self.e.support();
        let n = self.e.len();
        (0u64..1 << coords.len())
            .filter_map(|bits| {
                let f = BitVector::from_u64(coords.len(), bits).embed(n, &coords);
                let p = self.probability(&f);
                (p > 0.0).then_some((f, p))
            })
            .collect()
    }
}

/// The Z-error channel left behind by transversal T acting on X(e(α)).
#[derive(Clone, Debug)]
pub struct TPropagator {
    map: CosetMap,
    entries: Vec<Option<TEntry>>,
}

impl TPropagator {
    /// `code` must be regular; B is the Z-gauge space used to build R_e.
    pub fn new(code: &SubsystemCode, table: &CleanabilityTable) -> Result<Self, NoiseError> {
        if !code.is_regular() {
            return Err(CodeError::NotRegular.into());
        }
        let map = code.coset_map().clone();
        let n = code.n();
        let z_bits = map.z_bits();
        let z_rows = map.z_rows();
        let mut entries = vec![None; 1usize << map.x_bits()];
        for alpha in table.cleanable() {
            let e = table.representative(alpha).expect("cleanable cosets have representatives").clone();
            entries[alpha as usize] = Some(build_entry(code.b(), z_rows, z_bits, n, alpha, e));
        }
        Ok(Self { map, entries })
    }

    #[must_use]
    pub fn coset_map(&self) -> &CosetMap {
        &self.map
    }

    pub fn entry(&self, alpha: u64) -> Result<&TEntry, NoiseError> {
        self.entries
            .get(alpha as usize)
            .and_then(Option::as_ref)
            .ok_or(NoiseError::NotCleanable(alpha))
    }

    /// Replaces the X part of the frame by e(α) for α = x_label(a) and adds
    /// a Z error f drawn from P(f|e).
    pub fn propagate<R: Rng + ?Sized>(&self, frame: &PauliFrame, rng: &mut R) -> Result<PauliFrame, NoiseError> {
        let alpha = self.map.x_label(&frame.a);
        let entry = self.entry(alpha)?;
        let f = entry.sample(rng);
        Ok(PauliFrame {
            a: entry.e.clone(),
            b: frame.b.xor(&f),
        })
    }
}

fn build_entry(b: &Subspace, z_rows: &BitMatrix, z_bits: usize, n: usize, alpha: u64, e: BitVector) -> TEntry {
    let coords = e.support();
    let inside: Vec<BitVector> = coords.iter().map(|&j| BitVector::unit(n, j)).collect();
    let b_e = b
        .intersect(&Subspace::span_unchecked(n, inside))
        .expect("same ambient space");
    let r = b_e
        .intersect(&b_e.orthogonal_complement())
        .expect("same ambient space");
    let r_basis: Vec<BitVector> = r.basis().rows().to_vec();

    let fixers = if r_basis.is_empty() {
        Vec::new()
    } else {
        let restricted: Vec<BitVector> = r_basis.iter().map(|g| g.restrict(&coords)).collect();
        BitMatrix::from_rows(coords.len(), restricted)
            .expect("rows share a length")
            .right_inverse()
            .expect("basis restricted to its own support stays independent")
            .into_iter()
            .map(|d| d.embed(n, &coords))
            .collect()
    };
    let targets = r_basis
        .iter()
        .enumerate()
        .fold(0u64, |acc, (a, g)| acc | (((g.weight() / 2) % 2) as u64) << a);

    let size = 1usize << z_bits;
    let mut gamma_hat = vec![0.0; size];
    for (s, slot) in gamma_hat.iter_mut().enumerate() {
        let y = z_rows.combine(&BitVector::from_u64(z_bits, s as u64)).and(&e);
        if r.contains(&y) {
            *slot = if (y.weight() / 2) % 2 == 1 { -1.0 } else { 1.0 };
        }
    }
    let mut q_dense = gamma_hat.clone();
    fwht(&mut q_dense).expect("power-of-two length");
    let q = q_dense
        .iter()
        .enumerate()
        .filter_map(|(beta, &v)| {
            let p = v / size as f64;
            (p.abs() > 1e-12).then_some((beta as u64, p))
        })
        .collect();
    TEntry {
        alpha,
        e,
        r_basis,
        fixers,
        targets,
        gamma_hat,
        q,
    }
}
