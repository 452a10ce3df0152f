use std::collections::{BTreeSet, HashMap};

use super::FamilyError;
use crate::f2core::{BitVector, Subspace};

/// Neighbour offsets of a face center, in cyclic order around the hexagon.
const DIRS: [[i64; 3]; 6] = [[1, -1, 0], [1, 0, -1], [0, 1, -1], [-1, 1, 0], [-1, 0, 1], [0, -1, 1]];

/// Triangular patch Λ_t of the hexagonal color-code lattice.
///
/// Sites are triples (j1, j2, j3) of non-negative integers with
/// j1+j2+j3 = 3t and j2−j1 ≢ 1 (mod 3), sorted lexicographically. The
/// excluded class (j2−j1 ≡ 1) are the face centers. Level 0 is a single site
/// with no faces.
#[derive(Clone, Debug)]
pub struct ColorLattice {
    t: usize,
    sites: Vec<[usize; 3]>,
    /// Sites of each face in cyclic order (partial faces start at one end of the run).
    rings: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    delta0: Vec<usize>,
    delta2: Vec<usize>,
}

/// Builds Λ_t for t ≥ 1.
pub fn build_lattice(t: usize) -> Result<ColorLattice, FamilyError> {
    if t < 1 {
        return Err(FamilyError::BadLevel(t));
    }
    Ok(ColorLattice::level(t))
}

impl ColorLattice {
    /// Λ_t including the degenerate level t = 0.
    pub(crate) fn level(t: usize) -> Self {
        let s = 3 * t;
        let mut sites = Vec::new();
        let mut centers = Vec::new();
        for j1 in 0..=s {
            for j2 in 0..=s - j1 {
                let p = [j1, j2, s - j1 - j2];
                if (j2 + 3 * s - j1) % 3 == 1 {
                    centers.push(p);
                } else {
                    sites.push(p);
                }
            }
        }
        let index: HashMap<[usize; 3], usize> = sites.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let mut rings = Vec::with_capacity(centers.len());
        let mut edges = BTreeSet::new();
        for c in &centers {
            let present: Vec<Option<usize>> = DIRS
                .iter()
                .map(|d| {
                    let q: Option<Vec<usize>> = (0..3)
                        .map(|k| usize::try_from(c[k] as i64 + d[k]).ok())
                        .collect();
                    q.and_then(|q| index.get(&[q[0], q[1], q[2]]).copied())
                })
                .collect();
            // Rotate so the present sites form one contiguous run.
            let start = match present.iter().position(Option::is_none) {
                None => 0,
                Some(gap) => (gap..gap + 6).map(|k| k % 6).find(|&k| present[k].is_some()).unwrap_or(0),
            };
            let ring: Vec<usize> = (start..start + 6).map_while(|k| present[k % 6]).collect();
            for (k, &a) in ring.iter().enumerate() {
                let b = ring[(k + 1) % ring.len()];
                edges.insert((a.min(b), a.max(b)));
            }
            rings.push(ring);
        }

        let class = |p: &[usize; 3]| (p[1] + 3 * s - p[0]) % 3;
        let delta0 = (0..sites.len()).filter(|&i| class(&sites[i]) == 0).collect();
        let delta2 = (0..sites.len()).filter(|&i| class(&sites[i]) == 2).collect();
        Self {
            t,
            sites,
            rings,
            edges: edges.into_iter().collect(),
            delta0,
            delta2,
        }
    }

    #[must_use]
    pub fn t(&self) -> usize {
        self.t
    }

    /// m_t = 3t²+3t+1.
    #[must_use]
    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    #[must_use]
    pub fn sites(&self) -> &[[usize; 3]] {
        &self.sites
    }

    #[must_use]
    pub fn num_faces(&self) -> usize {
        self.rings.len()
    }

    /// Sites of face `k`, sorted.
    #[must_use]
    pub fn face(&self, k: usize) -> Vec<usize> {
        let mut f = self.rings[k].clone();
        f.sort_unstable();
        f
    }

    /// Sites of face `k` in cyclic order.
    #[must_use]
    pub fn face_ring(&self, k: usize) -> &[usize] {
        &self.rings[k]
    }

    pub fn faces(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.num_faces()).map(|k| self.face(k))
    }

    #[must_use]
    pub fn face_vector(&self, k: usize) -> BitVector {
        BitVector::from_indices(self.num_sites(), &self.rings[k]).expect("face sites are in range")
    }

    /// Edges (i < j), sorted.
    #[must_use]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges of face `k` in cyclic order around it.
    #[must_use]
    pub fn face_edges(&self, k: usize) -> Vec<(usize, usize)> {
        let ring = &self.rings[k];
        (0..ring.len())
            .map(|i| {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    #[must_use]
    pub fn delta0(&self) -> &[usize] {
        &self.delta0
    }

    #[must_use]
    pub fn delta2(&self) -> &[usize] {
        &self.delta2
    }

    /// Boundary side `a` ∈ {0,1,2}: the sites with j_a = 0, ordered by coordinate (a+1) mod 3.
    #[must_use]
    pub fn side(&self, a: usize) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.num_sites()).filter(|&i| self.sites[i][a] == 0).collect();
        s.sort_by_key(|&i| self.sites[i][(a + 1) % 3]);
        s
    }

    /// ω^{a+1}: indicator of side `a`.
    #[must_use]
    pub fn omega(&self, a: usize) -> BitVector {
        BitVector::from_indices(self.num_sites(), &self.side(a)).expect("side sites are in range")
    }

    /// Faces containing both sites.
    #[must_use]
    pub fn faces_containing(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.num_faces())
            .filter(|&k| self.rings[k].contains(&x) && self.rings[k].contains(&y))
            .collect()
    }
}

/// S_t, the span of all faces.
#[must_use]
pub fn face_space(lattice: &ColorLattice) -> Subspace {
    let faces: Vec<BitVector> = (0..lattice.num_faces()).map(|k| lattice.face_vector(k)).collect();
    Subspace::span(lattice.num_sites(), &faces).expect("face vectors share a length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_layout() {
        let l = build_lattice(1).unwrap();
        assert_eq!(l.num_sites(), 7);
        assert_eq!(l.faces().collect::<Vec<_>>(), vec![vec![0, 1, 3, 4], vec![1, 2, 4, 5], vec![3, 4, 5, 6]]);
        assert_eq!(l.edges().len(), 9);
        assert_eq!(l.delta0(), &[0, 2, 4, 6]);
        assert_eq!(l.delta2(), &[1, 3, 5]);
        assert_eq!(l.side(0), vec![0, 1, 2]);
    }

    #[test]
    fn level_zero_is_a_point() {
        let l = ColorLattice::level(0);
        assert_eq!(l.num_sites(), 1);
        assert_eq!(l.num_faces(), 0);
        assert_eq!(l.side(2), vec![0]);
        assert!(build_lattice(0).is_err());
    }

    #[test]
    fn counts_follow_closed_forms() {
        for t in 1..=4 {
            let l = build_lattice(t).unwrap();
            let m = 3 * t * t + 3 * t + 1;
            assert_eq!(l.num_sites(), m);
            assert_eq!(l.num_faces(), (m - 1) / 2);
            assert_eq!(l.delta0().len(), l.delta2().len() + 1);
            // Euler: V − E + F = 1 for a disk.
            assert_eq!(l.num_sites() + l.num_faces(), l.edges().len() + 1);
        }
    }
}
