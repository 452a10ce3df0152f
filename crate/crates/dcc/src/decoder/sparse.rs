use std::collections::HashMap;

use super::{
    argmax_smallest, flip_powers, DecoderError, DeformKind, DeformationMap, LabelLayout, LabelMap, Likelihood,
    MemoryKernel, SyndromeMap,
};
use crate::noise::TPropagator;

/// Default cutoff for dropping small weights.
pub const DEFAULT_CUTOFF: f64 = 1e-6;

/// Weights on a sparse set of labels, sum-normalized after every update and
/// truncated at a cutoff by [`Likelihood::end_round`].
#[derive(Clone, Debug)]
pub struct SparseLikelihood {
    layout: LabelLayout,
    /// Sorted by label, weights positive.
    entries: Vec<(u64, f64)>,
    cutoff: f64,
}

impl SparseLikelihood {
    pub fn with_cutoff(layout: LabelLayout, cutoff: f64) -> Result<Self, DecoderError> {
        if !(0.0..1.0).contains(&cutoff) {
            return Err(DecoderError::Numeric(format!("cutoff {cutoff} outside [0, 1)")));
        }
        Ok(Self {
            layout,
            entries: vec![(0, 1.0)],
            cutoff,
        })
    }

    /// Builds from explicit (label, weight) pairs; repeated labels are summed.
    pub fn from_entries(layout: LabelLayout, pairs: Vec<(u64, f64)>, cutoff: f64) -> Result<Self, DecoderError> {
        let mut out = Self::with_cutoff(layout, cutoff)?;
        if pairs.iter().any(|&(_, w)| w.is_nan() || w < 0.0) {
            return Err(DecoderError::Numeric("weights must be nonnegative".into()));
        }
        out.entries = collect(pairs);
        if out.entries.is_empty() {
            return Err(DecoderError::Numeric("no positive weight".into()));
        }
        out.normalize();
        Ok(out)
    }

    #[must_use]
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    #[must_use]
    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    fn normalize(&mut self) -> bool {
        let total: f64 = self.entries.iter().map(|e| e.1).sum();
        if total <= 0.0 || !total.is_finite() {
            return false;
        }
        self.entries.iter_mut().for_each(|e| e.1 /= total);
        true
    }

    /// Normalize, drop entries below the cutoff (never the largest), renormalize.
    pub fn truncate(&mut self) {
        if !self.normalize() {
            return;
        }
        let keep = self.final_coset();
        let eps = self.cutoff;
        self.entries.retain(|&(l, w)| l == keep || (w >= eps && w > 0.0));
        self.normalize();
    }

    fn check_layout(&self, layout: LabelLayout) -> Result<(), DecoderError> {
        if layout == self.layout {
            Ok(())
        } else {
            Err(DecoderError::Shape(format!("expected layout {:?}, got {layout:?}", self.layout)))
        }
    }
}

/// Sums weights per label and returns the positive ones sorted by label.
fn collect<I: IntoIterator<Item = (u64, f64)>>(pairs: I) -> Vec<(u64, f64)> {
    let mut acc: HashMap<u64, f64> = HashMap::new();
    for (l, w) in pairs {
        *acc.entry(l).or_default() += w;
    }
    let mut out: Vec<(u64, f64)> = acc.into_iter().filter(|&(_, w)| w > 0.0).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

impl Likelihood for SparseLikelihood {
    fn init(layout: LabelLayout) -> Result<Self, DecoderError> {
        Self::with_cutoff(layout, DEFAULT_CUTOFF)
    }

    fn layout(&self) -> LabelLayout {
        self.layout
    }

    fn apply_memory(&mut self, kernel: &MemoryKernel) -> Result<(), DecoderError> {
        self.check_layout(kernel.layout())?;
        let MemoryKernel::Sparse { entries: k, .. } = kernel else {
            return Err(DecoderError::Shape("sparse decoder needs an explicit memory distribution".into()));
        };
        self.entries = collect(
            self.entries
                .iter()
                .flat_map(|&(g, w)| k.iter().map(move |&(e, p)| (g ^ e, w * p))),
        );
        if self.entries.is_empty() {
            return Err(DecoderError::Degenerate);
        }
        self.normalize();
        Ok(())
    }

    fn apply_syndrome(&mut self, map: &SyndromeMap, s: u64, q: f64) -> Result<(), DecoderError> {
        self.check_layout(map.layout())?;
        let powers = flip_powers(map.bits(), q)?;
        for e in &mut self.entries {
            e.1 *= powers[(map.syndrome(e.0) ^ s).count_ones() as usize];
        }
        self.entries.retain(|e| e.1 > 0.0);
        if self.entries.is_empty() {
            return Err(DecoderError::Degenerate);
        }
        self.normalize();
        Ok(())
    }

    fn deform(&mut self, map: &DeformationMap) -> Result<(), DecoderError> {
        self.check_layout(map.source())?;
        let target = map.target();
        match map.kind() {
            DeformKind::Merge => {
                let d = map.d();
                self.entries = collect(self.entries.iter().map(|&(f, w)| (d.apply(f), w)));
            }
            DeformKind::Split => {
                let (r, kernel) = map.lift().expect("split maps carry a lift");
                let offsets: Vec<u64> = (0u64..1 << kernel.len())
                    .map(|bits| {
                        (0..kernel.len())
                            .filter(|i| bits >> i & 1 == 1)
                            .fold(0, |acc, i| acc ^ kernel[i])
                    })
                    .collect();
                let scale = 1.0 / offsets.len() as f64;
                self.entries = collect(self.entries.iter().flat_map(|&(g, w)| {
                    let base = r.apply(g);
                    offsets.iter().map(move |&o| (base ^ o, w * scale))
                }));
            }
        }
        self.layout = target;
        self.normalize();
        Ok(())
    }

    fn apply_clifford(&mut self, v: &LabelMap) -> Result<(), DecoderError> {
        self.check_layout(v.input())?;
        if !v.is_invertible() || v.output() != self.layout {
            return Err(DecoderError::Shape("Clifford label map must be an automorphism".into()));
        }
        let mut out: Vec<(u64, f64)> = self.entries.iter().map(|&(f, w)| (v.apply(f), w)).collect();
        out.sort_unstable_by_key(|e| e.0);
        self.entries = out;
        Ok(())
    }

    fn choose_recovery(&mut self) -> u64 {
        let mask = self.layout.x_mask();
        let marginal = collect(self.entries.iter().map(|&(f, w)| (f & mask, w)));
        let alpha = argmax_smallest(marginal);
        if alpha != 0 {
            let mut out: Vec<(u64, f64)> = self.entries.iter().map(|&(f, w)| (f ^ alpha, w)).collect();
            out.sort_unstable_by_key(|e| e.0);
            self.entries = out;
        }
        alpha
    }

    fn apply_t(&mut self, prop: &TPropagator) -> Result<(), DecoderError> {
        let layout = self.layout;
        if prop.coset_map().x_bits() != layout.x_bits || prop.coset_map().z_bits() != layout.z_bits {
            return Err(DecoderError::Shape("T propagator built for another label layout".into()));
        }
        let mut pairs = Vec::new();
        for &(f, w) in &self.entries {
            let (alpha, beta) = layout.split(f);
            if let Ok(entry) = prop.entry(alpha) {
                pairs.extend(entry.q.iter().map(|&(b, q)| (layout.join(alpha, beta ^ b), w * q)));
            }
        }
        self.entries = collect(pairs);
        if self.entries.is_empty() {
            return Err(DecoderError::ZeroMass);
        }
        self.normalize();
        Ok(())
    }

    fn end_round(&mut self) {
        self.truncate();
    }

    fn final_coset(&self) -> u64 {
        argmax_smallest(self.entries.iter().copied())
    }

    fn weight(&self, label: u64) -> f64 {
        let total: f64 = self.entries.iter().map(|e| e.1).sum();
        self.entries
            .binary_search_by_key(&label, |e| e.0)
            .map_or(0.0, |i| self.entries[i].1 / total)
    }

    fn distribution(&self) -> Vec<(u64, f64)> {
        let total: f64 = self.entries.iter().map(|e| e.1).sum();
        self.entries.iter().map(|&(f, w)| (f, w / total)).collect()
    }

    fn support_size(&self) -> usize {
        self.entries.len()
    }
}
