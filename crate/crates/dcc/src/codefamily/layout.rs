use serde::Serialize;

/// Block kind in the qubit layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    A,
    B,
    /// Gadget ancillas of one level.
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub level: usize,
    pub start: usize,
    pub len: usize,
}

/// Ordered partition A_t B_t (D_t) … A_1 B_1 (D_1) A_0 of the qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QubitLayout {
    t: usize,
    blocks: Vec<Block>,
    n: usize,
}

impl QubitLayout {
    /// `site_counts[r]` = |Λ_r|; `d_sizes[r]` = size of D_r (0 for none).
    pub(crate) fn new(t: usize, site_counts: &[usize], d_sizes: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let mut n = 0;
        let mut push = |kind, level, len: usize, blocks: &mut Vec<Block>| {
            blocks.push(Block { kind, level, start: n, len });
            n += len;
        };
        for r in (1..=t).rev() {
            push(BlockKind::A, r, site_counts[r], &mut blocks);
            push(BlockKind::B, r, site_counts[r], &mut blocks);
            if d_sizes[r] > 0 {
                push(BlockKind::D, r, d_sizes[r], &mut blocks);
            }
        }
        push(BlockKind::A, 0, site_counts[0], &mut blocks);
        Self { t, blocks, n }
    }

    #[must_use]
    pub fn t(&self) -> usize {
        self.t
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    #[must_use]
    pub fn block(&self, kind: BlockKind, level: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.kind == kind && b.level == level)
    }

    /// First qubit of a block. Panics if the block does not exist.
    #[must_use]
    pub fn offset(&self, kind: BlockKind, level: usize) -> usize {
        self.block(kind, level)
            .unwrap_or_else(|| panic!("no {kind:?} block at level {level}"))
            .start
    }

    /// Block containing qubit `q`.
    #[must_use]
    pub fn locate(&self, q: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| (b.start..b.start + b.len).contains(&q))
    }
}

/// n_t = 2t³+6t²+6t+1.
#[must_use]
pub fn doubled_qubits(t: usize) -> usize {
    2 * t.pow(3) + 6 * t.pow(2) + 6 * t + 1
}

/// N_t = 2t³+7t²+7t+1: doubled code plus 2r gadget qubits per level.
#[must_use]
pub fn gadget_qubits(t: usize) -> usize {
    2 * t.pow(3) + 7 * t.pow(2) + 7 * t + 1
}

/// K_t = 2t³+8t²+6t+1: gadget code after subdividing every level r ≥ 2.
#[must_use]
pub fn subdivided_qubits(t: usize) -> usize {
    2 * t.pow(3) + 8 * t.pow(2) + 6 * t + 1
}

/// K_t − 2 = 2t³+8t²+6t−1: level 1 keeps its local ω link and needs no ancillas.
#[must_use]
pub fn final_qubits(t: usize) -> usize {
    subdivided_qubits(t) - 2
}
