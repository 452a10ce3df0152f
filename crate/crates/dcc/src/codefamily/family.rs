use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lattice::ColorLattice;
use super::layout::{BlockKind, QubitLayout};
use super::FamilyError;
use crate::csscode::EvennessWitness;
use crate::f2core::{BitVector, Subspace};

/// Highest supported level.
pub const MAX_LEVEL: usize = 4;

/// Construction stage of the code family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Recursive doubled codes T_t, C_t on n_t qubits.
    Doubled,
    /// Every ω link replaced by gadget generators g, h (U_t, D_t on N_t qubits).
    Gadget,
    /// Gadget codes with g_r^r subdivided for r ≥ 2 (K_t qubits).
    Subdivided,
    /// As `Subdivided` but level 1 keeps its ω link and has no ancillas (K_t − 2 qubits).
    Final,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Doubled, Stage::Gadget, Stage::Subdivided, Stage::Final];

    #[must_use]
    pub fn has_gadget(self, r: usize) -> bool {
        match self {
            Stage::Doubled => false,
            Stage::Gadget | Stage::Subdivided => true,
            Stage::Final => r >= 2,
        }
    }

    #[must_use]
    pub fn is_subdivided(self, r: usize) -> bool {
        matches!(self, Stage::Subdivided | Stage::Final) && r >= 2
    }

    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Doubled => "doubled",
            Stage::Gadget => "gadget",
            Stage::Subdivided => "subdivided",
            Stage::Final => "final",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| FamilyError::BadStage(s.to_string()))
    }
}

/// Type tag of a gauge generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    FaceA,
    FaceB,
    EdgeDouble,
    OmegaLink,
    GadgetG,
    GadgetH,
    Subdivision,
}

impl GeneratorKind {
    /// Whether the generator also belongs to the C-type gauge space (all but edges).
    #[must_use]
    pub fn in_c_gauge(self) -> bool {
        self != GeneratorKind::EdgeDouble
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub level: usize,
    pub vector: BitVector,
}

/// Gadget data of one level r. All indices are qubit positions.
#[derive(Clone, Debug)]
pub struct GadgetLevel {
    pub r: usize,
    /// u^1..u^{2r+1}: side 0 of Λ_r inside B_r; u^{2r+1} is the twisted corner.
    pub u: Vec<usize>,
    /// v^1..v^{2r−1}: side 2 of Λ_{r−1} inside A_{r−1}.
    pub v: Vec<usize>,
    /// w^1..w^{2r}.
    pub w: Vec<usize>,
    /// w̄^2..w̄^{2r−1}; empty unless subdivided.
    pub wbar: Vec<usize>,
    /// b^1..b^{r−1} as face indices of Λ_r.
    pub special_b: Vec<usize>,
    /// c^1..c^{r−1} as face indices of Λ_{r−1}.
    pub special_c: Vec<usize>,
    /// g_r^1..g_r^r (g_r^r = w^1 + w^{2r} even when subdivided).
    pub g: Vec<BitVector>,
    pub h: Vec<BitVector>,
}

/// All codes of one level t at one construction stage.
///
/// `t_stabilizer` is T_t / U_t / V_t, `t_gauge` its dot; `c_gauge` is
/// Ċ_t / Ḋ_t / Ḟ_t and `c_stabilizer` its dot. The T-code is
/// CSS(t_stabilizer, t_gauge), the C-code CSS(c_stabilizer, c_stabilizer) and
/// the base code CSS(t_stabilizer, c_stabilizer).
#[derive(Clone, Debug)]
pub struct CodeFamily {
    t: usize,
    stage: Stage,
    layout: QubitLayout,
    lattices: Vec<ColorLattice>,
    gadgets: Vec<Option<GadgetLevel>>,
    generators: Vec<Generator>,
    t_stabilizer: Subspace,
    t_gauge: Subspace,
    c_stabilizer: Subspace,
    c_gauge: Subspace,
    t_witness: EvennessWitness,
    c_witness: EvennessWitness,
}

/// Recursive doubled codes T_t, Ṫ_t, C_t on n_t qubits.
pub fn build_doubled(t: usize) -> Result<CodeFamily, FamilyError> {
    CodeFamily::build(t, Stage::Doubled)
}

/// The gadget-extended codes at every stage past doubling.
#[derive(Clone, Debug)]
pub struct GadgetCodes {
    /// U_t, D_t.
    pub extended: CodeFamily,
    /// V_t, F_t on K_t qubits.
    pub subdivided: CodeFamily,
    /// V_t, F_t with level 1 left local, K_t − 2 qubits.
    pub final_codes: CodeFamily,
}

pub fn build_gadget_codes(t: usize) -> Result<GadgetCodes, FamilyError> {
    Ok(GadgetCodes {
        extended: CodeFamily::build(t, Stage::Gadget)?,
        subdivided: CodeFamily::build(t, Stage::Subdivided)?,
        final_codes: CodeFamily::build(t, Stage::Final)?,
    })
}

fn embed(n: usize, offset: usize, sites: &[usize]) -> BitVector {
    let idx: Vec<usize> = sites.iter().map(|&s| s + offset).collect();
    BitVector::from_indices(n, &idx).expect("sites fit in their block")
}

fn qubits(n: usize, idx: &[usize]) -> BitVector {
    BitVector::from_indices(n, idx).expect("qubit index in range")
}

impl CodeFamily {
    pub fn build(t: usize, stage: Stage) -> Result<Self, FamilyError> {
        if !(1..=MAX_LEVEL).contains(&t) {
            return Err(FamilyError::BadLevel(t));
        }
        let lattices: Vec<ColorLattice> = (0..=t).map(ColorLattice::level).collect();
        let counts: Vec<usize> = lattices.iter().map(ColorLattice::num_sites).collect();
        let d_sizes: Vec<usize> = (0..=t)
            .map(|r| match r {
                0 => 0,
                r if stage.is_subdivided(r) => 4 * r - 2,
                r if stage.has_gadget(r) => 2 * r,
                _ => 0,
            })
            .collect();
        let layout = QubitLayout::new(t, &counts, &d_sizes);
        let n = layout.n();

        let mut generators = Vec::new();
        let mut gadgets = vec![None; t + 1];
        for r in (1..=t).rev() {
            let lat = &lattices[r];
            let (oa, ob) = (layout.offset(BlockKind::A, r), layout.offset(BlockKind::B, r));
            for k in 0..lat.num_faces() {
                let f = lat.face(k);
                generators.push(Generator {
                    kind: GeneratorKind::FaceA,
                    level: r,
                    vector: embed(n, oa, &f),
                });
                generators.push(Generator {
                    kind: GeneratorKind::FaceB,
                    level: r,
                    vector: embed(n, ob, &f),
                });
            }
            for &(x, y) in lat.edges() {
                generators.push(Generator {
                    kind: GeneratorKind::EdgeDouble,
                    level: r,
                    vector: embed(n, oa, &[x, y]).xor(&embed(n, ob, &[x, y])),
                });
            }
            let below = layout.offset(BlockKind::A, r - 1);
            if stage.has_gadget(r) {
                let level = gadget_level(&layout, &lattices, r, stage.is_subdivided(r))?;
                for (i, g) in level.g.iter().enumerate() {
                    if i + 1 == r && !level.wbar.is_empty() {
                        continue;
                    }
                    generators.push(Generator {
                        kind: GeneratorKind::GadgetG,
                        level: r,
                        vector: g.clone(),
                    });
                }
                for h in &level.h {
                    generators.push(Generator {
                        kind: GeneratorKind::GadgetH,
                        level: r,
                        vector: h.clone(),
                    });
                }
                if !level.wbar.is_empty() {
                    let mut chain = vec![level.w[0]];
                    chain.extend(&level.wbar);
                    chain.push(level.w[2 * r - 1]);
                    for pair in chain.windows(2) {
                        generators.push(Generator {
                            kind: GeneratorKind::Subdivision,
                            level: r,
                            vector: qubits(n, pair),
                        });
                    }
                }
                gadgets[r] = Some(level);
            } else {
                let omega = embed(n, ob, &lat.side(0)).xor(&embed(n, below, &lattices[r - 1].side(2)));
                generators.push(Generator {
                    kind: GeneratorKind::OmegaLink,
                    level: r,
                    vector: omega,
                });
            }
        }

        let all: Vec<BitVector> = generators.iter().map(|g| g.vector.clone()).collect();
        let c_rows: Vec<BitVector> = generators
            .iter()
            .filter(|g| g.kind.in_c_gauge())
            .map(|g| g.vector.clone())
            .collect();
        let t_gauge = Subspace::span(n, &all)?;
        let c_gauge = Subspace::span(n, &c_rows)?;
        let t_stabilizer = t_gauge.dot();
        let c_stabilizer = c_gauge.dot();

        let (t_witness, c_witness) = witnesses(&layout, &lattices)?;
        Ok(Self {
            t,
            stage,
            layout,
            lattices,
            gadgets,
            generators,
            t_stabilizer,
            t_gauge,
            c_stabilizer,
            c_gauge,
            t_witness,
            c_witness,
        })
    }

    #[must_use]
    pub fn t(&self) -> usize {
        self.t
    }

    #[must_use]
    pub fn stage(&self) -> Stage {
        self.stage
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.layout.n()
    }

    #[must_use]
    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    /// Λ_r for r = 0..=t.
    #[must_use]
    pub fn lattice(&self, r: usize) -> &ColorLattice {
        &self.lattices[r]
    }

    #[must_use]
    pub fn gadget(&self, r: usize) -> Option<&GadgetLevel> {
        self.gadgets.get(r).and_then(Option::as_ref)
    }

    #[must_use]
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// T_t, U_t or V_t.
    #[must_use]
    pub fn t_stabilizer(&self) -> &Subspace {
        &self.t_stabilizer
    }

    /// Its dot: Ṫ_t, U̇_t or V̇_t.
    #[must_use]
    pub fn t_gauge(&self) -> &Subspace {
        &self.t_gauge
    }

    /// C_t, D_t or F_t.
    #[must_use]
    pub fn c_stabilizer(&self) -> &Subspace {
        &self.c_stabilizer
    }

    /// Ċ_t, Ḋ_t or Ḟ_t.
    #[must_use]
    pub fn c_gauge(&self) -> &Subspace {
        &self.c_gauge
    }

    /// N^±_t, order 8.
    #[must_use]
    pub fn t_witness(&self) -> &EvennessWitness {
        &self.t_witness
    }

    /// Δ^0_t / Δ^2_t on A_t, order 4.
    #[must_use]
    pub fn c_witness(&self) -> &EvennessWitness {
        &self.c_witness
    }

    /// f[A_r] + f[B_r] for every face and B_r A_{r−1} for every level.
    /// These span T_t in the doubled stage.
    #[must_use]
    pub fn doubling_rows(&self) -> Vec<BitVector> {
        let n = self.n();
        let mut rows = Vec::new();
        for r in (1..=self.t).rev() {
            let lat = &self.lattices[r];
            let (oa, ob) = (self.layout.offset(BlockKind::A, r), self.layout.offset(BlockKind::B, r));
            for f in lat.faces() {
                rows.push(embed(n, oa, &f).xor(&embed(n, ob, &f)));
            }
            rows.push(self.b_link(r));
        }
        rows
    }

    /// B_r A_{r−1}: all ones on B_r and A_{r−1}.
    #[must_use]
    pub fn b_link(&self, r: usize) -> BitVector {
        let n = self.n();
        let ob = self.layout.offset(BlockKind::B, r);
        let below = self.layout.offset(BlockKind::A, r - 1);
        let all_r: Vec<usize> = (0..self.lattices[r].num_sites()).collect();
        let all_below: Vec<usize> = (0..self.lattices[r - 1].num_sites()).collect();
        embed(n, ob, &all_r).xor(&embed(n, below, &all_below))
    }

    /// Face `k` of Λ_r placed on block `kind`.
    #[must_use]
    pub fn face_on(&self, kind: BlockKind, r: usize, k: usize) -> BitVector {
        embed(self.n(), self.layout.offset(kind, r), &self.lattices[r].face(k))
    }

    /// Sites of Λ_r placed on block `kind`.
    #[must_use]
    pub fn sites_on(&self, kind: BlockKind, r: usize, sites: &[usize]) -> BitVector {
        embed(self.n(), self.layout.offset(kind, r), sites)
    }

    /// Sets the w̄ qubits of every subdivided level to the value of w^1, the
    /// unique extension of a vector from the unsubdivided code.
    #[must_use]
    pub fn lift(&self, x: &BitVector) -> BitVector {
        let mut out = x.clone();
        for level in self.gadgets.iter().flatten() {
            let bit = x.get(level.w[0]);
            for &q in &level.wbar {
                out.set(q, bit);
            }
        }
        out
    }

    /// An odd vector x_t = Σ_r (e^i[A_r] + e^i[B_r]) + e[A_0] of weight 2t+1
    /// orthogonal to the T-type stabilizer, if one exists.
    #[must_use]
    pub fn x_logical(&self) -> Option<BitVector> {
        self.search_ladder(&self.t_stabilizer)
    }

    /// A weight-(2t+1) odd vector orthogonal to the C-type stabilizer, if one is found.
    #[must_use]
    pub fn c_logical(&self) -> Option<BitVector> {
        let n = self.n();
        let oa = self.layout.offset(BlockKind::A, self.t);
        (0..3)
            .map(|a| embed(n, oa, &self.lattices[self.t].side(a)))
            .find(|x| orthogonal_to(&self.c_stabilizer, x))
            .or_else(|| self.search_ladder(&self.c_stabilizer))
    }

    fn search_ladder(&self, space: &Subspace) -> Option<BitVector> {
        let n = self.n();
        let t = self.t;
        let mut choice = vec![0usize; t + 1];
        loop {
            let mut x = qubits(n, &[self.layout.offset(BlockKind::A, 0)]);
            for r in 1..=t {
                x.xor_assign(&self.sites_on(BlockKind::A, r, &[choice[r]]));
                x.xor_assign(&self.sites_on(BlockKind::B, r, &[choice[r]]));
            }
            if orthogonal_to(space, &x) {
                return Some(x);
            }
            let r = (1..=t).find(|&r| choice[r] + 1 < self.lattices[r].num_sites())?;
            choice[r] += 1;
            for c in &mut choice[1..r] {
                *c = 0;
            }
        }
    }
}

fn orthogonal_to(space: &Subspace, x: &BitVector) -> bool {
    space.basis().rows().iter().all(|r| !r.dot(x))
}

fn gadget_level(
    layout: &QubitLayout,
    lattices: &[ColorLattice],
    r: usize,
    subdivided: bool,
) -> Result<GadgetLevel, FamilyError> {
    let n = layout.n();
    let ob = layout.offset(BlockKind::B, r);
    let below = layout.offset(BlockKind::A, r - 1);
    let od = layout.offset(BlockKind::D, r);
    let u_sites = lattices[r].side(0);
    let v_sites = lattices[r - 1].side(2);
    let u: Vec<usize> = u_sites.iter().map(|s| s + ob).collect();
    let v: Vec<usize> = v_sites.iter().map(|s| s + below).collect();
    let w: Vec<usize> = (od..od + 2 * r).collect();
    let wbar: Vec<usize> = if subdivided { (od + 2 * r..od + 4 * r - 2).collect() } else { Vec::new() };

    // 1-based accessors matching the usual superscripts.
    let (wq, uq, vq) = (|i: usize| w[i - 1], |i: usize| u[i - 1], |i: usize| v[i - 1]);
    let mut g = Vec::with_capacity(r);
    let mut h = Vec::with_capacity(r);
    for i in 1..r {
        g.push(qubits(n, &[wq(2 * i), wq(2 * i + 1)]));
        h.push(qubits(
            n,
            &[wq(2 * i - 1), wq(2 * i), uq(2 * i - 1), uq(2 * i), vq(2 * i - 1), vq(2 * i)],
        ));
    }
    g.push(qubits(n, &[wq(1), wq(2 * r)]));
    h.push(qubits(
        n,
        &[wq(2 * r - 1), wq(2 * r), uq(2 * r - 1), uq(2 * r), uq(2 * r + 1), vq(2 * r - 1)],
    ));

    let mut special_b = Vec::new();
    let mut special_c = Vec::new();
    for i in 1..r {
        let fb = lattices[r].faces_containing(u_sites[2 * i - 1], u_sites[2 * i]);
        let fc = lattices[r - 1].faces_containing(v_sites[2 * i - 1], v_sites[2 * i]);
        match (fb.as_slice(), fc.as_slice()) {
            ([b], [c]) => {
                special_b.push(*b);
                special_c.push(*c);
            }
            _ => return Err(FamilyError::SpecialFace { r, i }),
        }
    }
    Ok(GadgetLevel {
        r,
        u,
        v,
        w,
        wbar,
        special_b,
        special_c,
        g,
        h,
    })
}

fn witnesses(layout: &QubitLayout, lattices: &[ColorLattice]) -> Result<(EvennessWitness, EvennessWitness), FamilyError> {
    let t = layout.t();
    let mut plus = vec![layout.offset(BlockKind::A, 0)];
    let mut minus = Vec::new();
    for (r, lat) in lattices.iter().enumerate().skip(1) {
        let (oa, ob) = (layout.offset(BlockKind::A, r), layout.offset(BlockKind::B, r));
        let place = |sites: &[usize]| -> Vec<usize> {
            sites.iter().map(|s| s + oa).chain(sites.iter().map(|s| s + ob)).collect()
        };
        let mut next_plus = place(lat.delta0());
        next_plus.extend(&minus);
        let mut next_minus = place(lat.delta2());
        next_minus.extend(&plus);
        plus = next_plus;
        minus = next_minus;
    }
    let t_witness = EvennessWitness::new(plus, minus, 8)?;
    let oa = layout.offset(BlockKind::A, t);
    let c_witness = EvennessWitness::new(
        lattices[t].delta0().iter().map(|s| s + oa).collect(),
        lattices[t].delta2().iter().map(|s| s + oa).collect(),
        4,
    )?;
    Ok((t_witness, c_witness))
}
