use serde::{Deserialize, Serialize};

use super::family::CodeFamily;
use super::layout::BlockKind;
use crate::f2core::{BitVector, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub checks: Vec<Certificate>,
}

impl CertificateReport {
    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Membership of g_r, β_r^i and γ_r^i in the T-type stabilizer, and the
/// reconstruction of that stabilizer from non-special faces, B_r A_{r−1},
/// g_r, β and γ. Levels without a gadget contribute all faces and B_r A_{r−1}.
#[must_use]
pub fn membership_certificates(fam: &CodeFamily) -> CertificateReport {
    let u = fam.t_stabilizer();
    let mut checks = Vec::new();
    let mut span_rows: Vec<BitVector> = Vec::new();
    let check = |name: String, v: &BitVector, checks: &mut Vec<Certificate>| {
        checks.push(Certificate {
            name,
            passed: u.contains(v),
        });
    };

    for r in 1..=fam.t() {
        let lat = fam.lattice(r);
        let special: &[usize] = fam.gadget(r).map_or(&[], |g| &g.special_b);
        // Faces of Λ_r that are special at level r+1 (c^i of the gadget above) are also excluded.
        let special_above: &[usize] = fam.gadget(r + 1).map_or(&[], |g| &g.special_c);
        for k in 0..lat.num_faces() {
            if special.contains(&k) || special_above.contains(&k) {
                continue;
            }
            span_rows.push(fam.face_on(BlockKind::A, r, k).xor(&fam.face_on(BlockKind::B, r, k)));
        }
        span_rows.push(fam.b_link(r));

        let Some(level) = fam.gadget(r) else { continue };
        let mut g_sum = BitVector::zeros(fam.n());
        for g in &level.g {
            g_sum.xor_assign(g);
        }
        let g_sum = fam.lift(&g_sum);
        check(format!("g_{r} in U"), &g_sum, &mut checks);
        span_rows.push(g_sum);
        for i in 1..r {
            let gi = &level.g[i - 1];
            let b = level.special_b[i - 1];
            let c = level.special_c[i - 1];
            let beta = gi
                .xor(&fam.face_on(BlockKind::A, r, b))
                .xor(&fam.face_on(BlockKind::B, r, b));
            let gamma = gi
                .xor(&fam.face_on(BlockKind::A, r - 1, c))
                .xor(&fam.face_on(BlockKind::B, r - 1, c));
            check(format!("beta_{r}^{i} in U"), &beta, &mut checks);
            check(format!("gamma_{r}^{i} in U"), &gamma, &mut checks);
            span_rows.push(beta);
            span_rows.push(gamma);
        }
    }

    let spanned = Subspace::span(fam.n(), &span_rows).expect("rows share a length");
    checks.push(Certificate {
        name: "faces, links, g, beta, gamma span U".into(),
        passed: &spanned == u,
    });
    CertificateReport { checks }
}
