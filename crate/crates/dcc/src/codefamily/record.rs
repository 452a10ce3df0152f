use serde::{Deserialize, Serialize};

use super::certificates::{membership_certificates, Certificate};
use super::family::{CodeFamily, GeneratorKind, Stage};
use super::layout::{doubled_qubits, final_qubits, gadget_qubits, subdivided_qubits};
use super::FamilyError;
use crate::csscode::{make_code, CodeRecord, SubsystemCode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitCounts {
    /// Qubits in this file.
    pub n: usize,
    pub doubled: usize,
    pub gadget: usize,
    pub subdivided: usize,
    #[serde(rename = "final")]
    pub final_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub kind: GeneratorKind,
    pub level: usize,
    pub support: Vec<usize>,
}

/// JSON form of a [`CodeFamily`]: the T-, C- and base codes plus the gauge
/// generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub t: usize,
    pub stage: Stage,
    pub qubit_counts: QubitCounts,
    /// T-code, C-code, base code in that order.
    pub codes: Vec<CodeRecord>,
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub x_logical: Option<Vec<usize>>,
    #[serde(default)]
    pub c_logical: Option<Vec<usize>>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
}

impl CodeFamily {
    /// CSS(T, Ṫ) with the triply-even witness.
    pub fn t_code(&self) -> Result<SubsystemCode, FamilyError> {
        Ok(make_code(
            &format!("T{}-{}", self.t(), self.stage()),
            self.t_stabilizer().clone(),
            self.t_gauge().clone(),
        )?)
    }

    /// CSS(C, C).
    pub fn c_code(&self) -> Result<SubsystemCode, FamilyError> {
        Ok(make_code(
            &format!("C{}-{}", self.t(), self.stage()),
            self.c_stabilizer().clone(),
            self.c_stabilizer().clone(),
        )?)
    }

    /// CSS(T, C).
    pub fn base_code(&self) -> Result<SubsystemCode, FamilyError> {
        Ok(make_code(
            &format!("base{}-{}", self.t(), self.stage()),
            self.t_stabilizer().clone(),
            self.c_stabilizer().clone(),
        )?)
    }

    pub fn to_record(&self) -> Result<FamilyRecord, FamilyError> {
        let t = self.t();
        Ok(FamilyRecord {
            t,
            stage: self.stage(),
            qubit_counts: QubitCounts {
                n: self.n(),
                doubled: doubled_qubits(t),
                gadget: gadget_qubits(t),
                subdivided: subdivided_qubits(t),
                final_count: final_qubits(t),
            },
            codes: vec![
                CodeRecord::from_subspaces(
                    &format!("T{t}-{}", self.stage()),
                    self.t_stabilizer(),
                    self.t_gauge(),
                    Some(self.t_witness().clone()),
                ),
                CodeRecord::from_subspaces(
                    &format!("C{t}-{}", self.stage()),
                    self.c_stabilizer(),
                    self.c_stabilizer(),
                    Some(self.c_witness().clone()),
                ),
                CodeRecord::from_subspaces(&format!("base{t}-{}", self.stage()), self.t_stabilizer(), self.c_stabilizer(), None),
            ],
            generators: self
                .generators()
                .iter()
                .map(|g| GeneratorRecord {
                    kind: g.kind,
                    level: g.level,
                    support: g.vector.support(),
                })
                .collect(),
            x_logical: self.x_logical().map(|x| x.support()),
            c_logical: self.c_logical().map(|x| x.support()),
            certificates: membership_certificates(self).checks,
        })
    }
}
