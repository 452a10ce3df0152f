use serde::{Deserialize, Serialize};

use super::ProtocolError;
use crate::codefamily::{build_doubled, BlockKind, CodeFamily, GeneratorKind};
use crate::csscode::{make_code, CleanabilityTable, SubsystemCode};
use crate::decoder::{CheckKind, DeformationMap, LabelMap, MemoryKernel, SyndromeMap};
use crate::f2core::{BitVector, Subspace};
use crate::noise::{Clifford, TPropagator};

/// Number of faces measured in a C-round: three on A, three on B and ω[B]+C.
pub const C_FACES: usize = 7;

/// Which of the two codes holds the logical qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundKind {
    C,
    T,
}

/// The 15-qubit T-code, C-code and base code with nested label rows, plus
/// everything the decoder and the simulator need to move between them.
#[derive(Clone, Debug)]
pub struct ProtocolCodes {
    family: CodeFamily,
    t_code: SubsystemCode,
    c_code: SubsystemCode,
    base: SubsystemCode,
    table: CleanabilityTable,
    prop: TPropagator,
    /// f^1[A], f^2[A], f^3[A], f^1[B], f^2[B], f^3[B], ω[B]+C.
    faces: Vec<BitVector>,
    /// l[A]+l[B] in lattice edge order.
    edges: Vec<BitVector>,
    /// Per square face: its two pairs of opposite edges, as edge indices.
    opposite_pairs: Vec<[(usize, usize); 2]>,
    t_to_base: DeformationMap,
    base_to_c: DeformationMap,
    c_to_base: DeformationMap,
    base_to_t: DeformationMap,
    c_syndrome: SyndromeMap,
    t_syndrome: SyndromeMap,
    /// Label action of each Clifford class on the C-code.
    clifford_maps: Vec<LabelMap>,
}

impl ProtocolCodes {
    /// Builds the t = 1 triple. Only this level has an end-to-end protocol.
    pub fn build(t: usize) -> Result<Self, ProtocolError> {
        if t != 1 {
            return Err(ProtocolError::Unsupported(format!(
                "the Clifford+T protocol is only defined for t = 1, got t = {t}"
            )));
        }
        let family = build_doubled(1)?;
        let n = family.n();
        let lat = family.lattice(1);

        let mut faces: Vec<BitVector> = Vec::with_capacity(C_FACES);
        for kind in [BlockKind::A, BlockKind::B] {
            faces.extend((0..lat.num_faces()).map(|k| family.face_on(kind, 1, k)));
        }
        let omega = family
            .generators()
            .iter()
            .find(|g| g.kind == GeneratorKind::OmegaLink)
            .ok_or_else(|| ProtocolError::Setup("no omega link generator".into()))?;
        faces.push(omega.vector.clone());

        let edges: Vec<BitVector> = lat
            .edges()
            .iter()
            .map(|&(i, j)| family.sites_on(BlockKind::A, 1, &[i, j]).xor(&family.sites_on(BlockKind::B, 1, &[i, j])))
            .collect();
        let edge_index = |e: (usize, usize)| lat.edges().iter().position(|&x| x == e).expect("face edge is an edge");
        let opposite_pairs = (0..lat.num_faces())
            .map(|k| {
                let ring: Vec<usize> = lat.face_edges(k).into_iter().map(edge_index).collect();
                if ring.len() == 4 {
                    Ok([(ring[0], ring[2]), (ring[1], ring[3])])
                } else {
                    Err(ProtocolError::Setup(format!("face {k} is not a square")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        let ones = BitVector::ones(n);
        let t_space = family.t_stabilizer().clone();
        let t_dot = family.t_gauge().clone();
        let c_space = family.c_stabilizer().clone();

        // X-label rows: C-code faces then 1̄, then edges completing T^⊥.
        let mut x_c = faces.clone();
        x_c.push(ones.clone());
        let mut x_t = x_c.clone();
        for e in &edges {
            let mut trial = x_t.clone();
            trial.push(e.clone());
            if Subspace::span(n, &trial)?.dim() == trial.len() {
                x_t = trial;
            }
        }
        // Z-label rows: T generators and 1̄, then A-faces completing C+1̄.
        let mut z_t = family.doubling_rows();
        z_t.push(ones);
        let mut z_c = z_t.clone();
        z_c.extend(faces[..3].iter().cloned());

        let t_code = make_code("T", t_space.clone(), t_dot.clone())?.with_coset_rows(x_t, z_t.clone())?;
        let c_code = make_code("C", c_space.clone(), c_space.clone())?.with_coset_rows(x_c.clone(), z_c.clone())?;
        let base = make_code("base", t_space, c_space)?.with_coset_rows(x_c, z_t)?;

        let table = CleanabilityTable::build(&t_code)?;
        let prop = TPropagator::new(&t_code, &table)?;

        let mut c_checks: Vec<(CheckKind, BitVector)> = faces.iter().map(|f| (CheckKind::X, f.clone())).collect();
        c_checks.extend(faces.iter().map(|f| (CheckKind::Z, f.clone())));
        let c_syndrome = SyndromeMap::from_checks(&c_code, &c_checks)?;
        let t_checks: Vec<(CheckKind, BitVector)> = edges.iter().map(|e| (CheckKind::Z, e.clone())).collect();
        let t_syndrome = SyndromeMap::from_checks(&t_code, &t_checks)?;

        let clifford_maps = (0..6)
            .map(|class| LabelMap::from_clifford(&c_code, Clifford::from_index(4 * class)))
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Self {
            t_to_base: DeformationMap::merge(&t_code, &base)?,
            base_to_c: DeformationMap::split(&base, &c_code)?,
            c_to_base: DeformationMap::merge(&c_code, &base)?,
            base_to_t: DeformationMap::split(&base, &t_code)?,
            family,
            t_code,
            c_code,
            base,
            table,
            prop,
            faces,
            edges,
            opposite_pairs,
            c_syndrome,
            t_syndrome,
            clifford_maps,
        })
    }

    #[must_use]
    pub fn family(&self) -> &CodeFamily {
        &self.family
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.family.n()
    }

    #[must_use]
    pub fn t_code(&self) -> &SubsystemCode {
        &self.t_code
    }

    #[must_use]
    pub fn c_code(&self) -> &SubsystemCode {
        &self.c_code
    }

    #[must_use]
    pub fn base(&self) -> &SubsystemCode {
        &self.base
    }

    #[must_use]
    pub fn code(&self, kind: RoundKind) -> &SubsystemCode {
        match kind {
            RoundKind::C => &self.c_code,
            RoundKind::T => &self.t_code,
        }
    }

    #[must_use]
    pub fn cleanability(&self) -> &CleanabilityTable {
        &self.table
    }

    #[must_use]
    pub fn t_propagator(&self) -> &TPropagator {
        &self.prop
    }

    #[must_use]
    pub fn faces(&self) -> &[BitVector] {
        &self.faces
    }

    #[must_use]
    pub fn edges(&self) -> &[BitVector] {
        &self.edges
    }

    #[must_use]
    pub fn opposite_pairs(&self) -> &[[(usize, usize); 2]] {
        &self.opposite_pairs
    }

    /// The two deformations taking the logical qubit into the code of `kind`.
    #[must_use]
    pub fn deformations_into(&self, kind: RoundKind) -> [&DeformationMap; 2] {
        match kind {
            RoundKind::C => [&self.t_to_base, &self.base_to_c],
            RoundKind::T => [&self.c_to_base, &self.base_to_t],
        }
    }

    /// Face checks (7 X-type then 7 Z-type) in a C-round, edge checks in a T-round.
    #[must_use]
    pub fn syndrome_map(&self, kind: RoundKind) -> &SyndromeMap {
        match kind {
            RoundKind::C => &self.c_syndrome,
            RoundKind::T => &self.t_syndrome,
        }
    }

    #[must_use]
    pub fn clifford_map(&self, gate: Clifford) -> &LabelMap {
        &self.clifford_maps[gate.class()]
    }

    /// The gauge randomization a split into `kind` applies: the X-gauge of the
    /// base code for T, its Z-gauge for C.
    #[must_use]
    pub fn split_gauge(&self, kind: RoundKind) -> &Subspace {
        match kind {
            RoundKind::C => self.t_code.b(),
            RoundKind::T => self.c_code.a(),
        }
    }

    /// Memory kernels for (C-code, T-code) at depolarizing rate `p`.
    pub fn memory_kernels(&self, p: f64, sparse: bool) -> Result<[MemoryKernel; 2], ProtocolError> {
        let make = |code: &SubsystemCode| {
            if sparse {
                MemoryKernel::depolarizing_sparse(code, p)
            } else {
                MemoryKernel::depolarizing_dense(code, p)
            }
        };
        Ok([make(&self.c_code)?, make(&self.t_code)?])
    }
}
