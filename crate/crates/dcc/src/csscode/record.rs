use serde::{Deserialize, Serialize};

use super::{make_code, CodeError, EvennessWitness, SubsystemCode};
use crate::f2core::{BitMatrix, Subspace};

/// Serialized form of a code: reduced bases of A and B as hex rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub n: usize,
    pub name: String,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<EvennessWitness>,
}

impl CodeRecord {
    #[must_use]
    pub fn from_code(code: &SubsystemCode, witness: Option<EvennessWitness>) -> Self {
        Self {
            n: code.n(),
            name: code.name().to_string(),
            a: code.a().basis().to_hex_rows(),
            b: code.b().basis().to_hex_rows(),
            witness,
        }
    }

    /// Record of CSS(a, b) without building its coset map, so it works past
    /// the label-width limit.
    #[must_use]
    pub fn from_subspaces(name: &str, a: &Subspace, b: &Subspace, witness: Option<EvennessWitness>) -> Self {
        Self {
            n: a.ambient(),
            name: name.to_string(),
            a: a.basis().to_hex_rows(),
            b: b.basis().to_hex_rows(),
            witness,
        }
    }

    pub fn subspaces(&self) -> Result<(Subspace, Subspace), CodeError> {
        let a = BitMatrix::from_hex_rows(self.n, &self.a)?;
        let b = BitMatrix::from_hex_rows(self.n, &self.b)?;
        Ok((
            Subspace::span(self.n, a.rows())?,
            Subspace::span(self.n, b.rows())?,
        ))
    }

    pub fn to_code(&self) -> Result<SubsystemCode, CodeError> {
        if let Some(w) = &self.witness {
            w.validate(Some(self.n))?;
        }
        let (a, b) = self.subspaces()?;
        make_code(&self.name, a, b)
    }
}
