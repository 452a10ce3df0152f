use super::maps::linear_table;
use super::{
    argmax_smallest, flip_powers, DecoderError, DeformKind, DeformationMap, LabelLayout, LabelMap, Likelihood,
    MemoryKernel, SyndromeMap, MAX_DENSE_BITS,
};
use crate::f2core::fwht;
use crate::noise::TPropagator;

/// All 2^c weights, rescaled so the largest is 1 after every update.
#[derive(Clone, Debug)]
pub struct DenseLikelihood {
    layout: LabelLayout,
    rho: Vec<f64>,
}

impl DenseLikelihood {
    /// Raw weights, indexed by label.
    #[must_use]
    pub fn weights(&self) -> &[f64] {
        &self.rho
    }

    /// Replaces the weights; they must be nonnegative with positive mass.
    pub fn from_weights(layout: LabelLayout, rho: Vec<f64>) -> Result<Self, DecoderError> {
        if rho.len() != 1usize << layout.c() {
            return Err(DecoderError::Shape(format!("{} weights for {} label bits", rho.len(), layout.c())));
        }
        if rho.iter().any(|&w| w.is_nan() || w < 0.0) || rho.iter().all(|&w| w == 0.0) {
            return Err(DecoderError::Numeric("weights must be nonnegative with positive mass".into()));
        }
        let mut out = Self { layout, rho };
        out.rescale();
        Ok(out)
    }

    fn total(&self) -> f64 {
        self.rho.iter().sum()
    }

    /// Max-normalizes; returns false if no mass is left.
    fn rescale(&mut self) -> bool {
        let max = self.rho.iter().copied().fold(0.0, f64::max);
        if max <= 0.0 || !max.is_finite() {
            return false;
        }
        let inv = 1.0 / max;
        self.rho.iter_mut().for_each(|w| *w *= inv);
        true
    }

    /// Clears tiny negative round-off left by the transforms.
    fn clean_negatives(&mut self) -> Result<(), DecoderError> {
        let max = self.rho.iter().copied().fold(0.0, f64::max);
        for w in &mut self.rho {
            if *w < 0.0 {
                if *w < -1e-12 * max.max(1e-300) {
                    return Err(DecoderError::Numeric(format!("weight {w} after transform")));
                }
                *w = 0.0;
            }
        }
        Ok(())
    }

    fn check_layout(&self, layout: LabelLayout) -> Result<(), DecoderError> {
        if layout == self.layout {
            Ok(())
        } else {
            Err(DecoderError::Shape(format!("expected layout {:?}, got {layout:?}", self.layout)))
        }
    }
}

impl Likelihood for DenseLikelihood {
    fn init(layout: LabelLayout) -> Result<Self, DecoderError> {
        if layout.c() > MAX_DENSE_BITS {
            return Err(DecoderError::Capacity(format!(
                "dense decoder limited to {MAX_DENSE_BITS} label bits, got {}",
                layout.c()
            )));
        }
        let mut rho = vec![0.0; 1usize << layout.c()];
        rho[0] = 1.0;
        Ok(Self { layout, rho })
    }

    fn layout(&self) -> LabelLayout {
        self.layout
    }

    fn apply_memory(&mut self, kernel: &MemoryKernel) -> Result<(), DecoderError> {
        self.check_layout(kernel.layout())?;
        let owned;
        let p_hat = match kernel {
            MemoryKernel::Dense { p_hat, .. } => p_hat,
            MemoryKernel::Sparse { .. } => {
                owned = kernel.to_dense()?;
                match &owned {
                    MemoryKernel::Dense { p_hat, .. } => p_hat,
                    MemoryKernel::Sparse { .. } => unreachable!("to_dense returns the dense form"),
                }
            }
        };
        fwht(&mut self.rho)?;
        let scale = 1.0 / self.rho.len() as f64;
        for (w, p) in self.rho.iter_mut().zip(p_hat) {
            *w *= p * scale;
        }
        fwht(&mut self.rho)?;
        self.clean_negatives()?;
        if !self.rescale() {
            return Err(DecoderError::Degenerate);
        }
        Ok(())
    }

    fn apply_syndrome(&mut self, map: &SyndromeMap, s: u64, q: f64) -> Result<(), DecoderError> {
        self.check_layout(map.layout())?;
        let powers = flip_powers(map.bits(), q)?;
        let syndromes = linear_table(&map.columns());
        for (w, sy) in self.rho.iter_mut().zip(syndromes) {
            *w *= powers[(sy ^ s).count_ones() as usize];
        }
        if self.rescale() {
            Ok(())
        } else {
            Err(DecoderError::Degenerate)
        }
    }

    fn deform(&mut self, map: &DeformationMap) -> Result<(), DecoderError> {
        self.check_layout(map.source())?;
        let target = map.target();
        let table = map.d().table();
        let mut out = vec![0.0; 1usize << target.c()];
        match map.kind() {
            DeformKind::Merge => {
                for (w, &g) in self.rho.iter().zip(&table) {
                    out[g as usize] += w;
                }
            }
            DeformKind::Split => {
                let scale = 0.5f64.powi((target.c() - self.layout.c()) as i32);
                for (o, &g) in out.iter_mut().zip(&table) {
                    *o = self.rho[g as usize] * scale;
                }
            }
        }
        self.layout = target;
        self.rho = out;
        self.rescale();
        Ok(())
    }

    fn apply_clifford(&mut self, v: &LabelMap) -> Result<(), DecoderError> {
        self.check_layout(v.input())?;
        if !v.is_invertible() || v.output() != self.layout {
            return Err(DecoderError::Shape("Clifford label map must be an automorphism".into()));
        }
        let mut out = vec![0.0; self.rho.len()];
        for (w, g) in self.rho.iter().zip(v.table()) {
            out[g as usize] = *w;
        }
        self.rho = out;
        Ok(())
    }

    fn choose_recovery(&mut self) -> u64 {
        let mask = self.layout.x_mask();
        let mut marginal = vec![0.0; 1usize << self.layout.x_bits];
        for (f, w) in self.rho.iter().enumerate() {
            marginal[f & mask as usize] += w;
        }
        let alpha = argmax_smallest(marginal.iter().enumerate().map(|(a, &w)| (a as u64, w)));
        if alpha != 0 {
            let old = std::mem::take(&mut self.rho);
            self.rho = (0..old.len()).map(|f| old[f ^ alpha as usize]).collect();
        }
        alpha
    }

    fn apply_t(&mut self, prop: &TPropagator) -> Result<(), DecoderError> {
        let LabelLayout { x_bits, z_bits } = self.layout;
        if prop.coset_map().x_bits() != x_bits || prop.coset_map().z_bits() != z_bits {
            return Err(DecoderError::Shape("T propagator built for another label layout".into()));
        }
        let size = 1usize << z_bits;
        let mut block = vec![0.0; size];
        for alpha in 0..1u64 << x_bits {
            let idx = |beta: usize| (alpha as usize) | beta << x_bits;
            match prop.entry(alpha) {
                Err(_) => (0..size).for_each(|b| self.rho[idx(b)] = 0.0),
                Ok(entry) => {
                    for (b, slot) in block.iter_mut().enumerate() {
                        *slot = self.rho[idx(b)];
                    }
                    if block.iter().all(|&w| w == 0.0) {
                        continue;
                    }
                    fwht(&mut block)?;
                    for (slot, g) in block.iter_mut().zip(&entry.gamma_hat) {
                        *slot *= g / size as f64;
                    }
                    fwht(&mut block)?;
                    for (b, &w) in block.iter().enumerate() {
                        self.rho[idx(b)] = w;
                    }
                }
            }
        }
        self.clean_negatives()?;
        if self.rescale() {
            Ok(())
        } else {
            Err(DecoderError::ZeroMass)
        }
    }

    fn final_coset(&self) -> u64 {
        argmax_smallest(self.rho.iter().enumerate().map(|(f, &w)| (f as u64, w)))
    }

    fn weight(&self, label: u64) -> f64 {
        self.rho.get(label as usize).map_or(0.0, |w| w / self.total())
    }

    fn distribution(&self) -> Vec<(u64, f64)> {
        let total = self.total();
        self.rho
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(f, &w)| (f as u64, w / total))
            .collect()
    }

    fn support_size(&self) -> usize {
        self.rho.iter().filter(|&&w| w > 0.0).count()
    }
}
