//! Codes and code sets.

use serde::{Deserialize, Serialize};

use crate::construct::{Lemma1Params, Lemma2Params, Theorem1Params, Theorem2Params};
use crate::error::{Error, Result};
use crate::gbf::PhaseSequence;

/// `(M, N, L, Z)`: set size, sequences per code, sequence length, zone width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimensions {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "Z")]
    pub z: usize,
}

impl Dimensions {
    pub fn new(m: usize, n: usize, l: usize, z: usize) -> Self {
        Dimensions { m, n, l, z }
    }
}

impl std::fmt::Display for Dimensions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.m, self.n, self.l, self.z)
    }
}

/// Which generator produced a code set, with its full parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", content = "parameters")]
pub enum Provenance {
    #[serde(rename = "lemma1")]
    Lemma1(Lemma1Params),
    #[serde(rename = "thm1")]
    Theorem1(Theorem1Params),
    #[serde(rename = "lemma2")]
    Lemma2(Lemma2Params),
    #[serde(rename = "thm2")]
    Theorem2(Theorem2Params),
    #[serde(rename = "thm3")]
    Theorem3(Lemma1Params),
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Lemma1(_) => "lemma1",
            Provenance::Theorem1(_) => "thm1",
            Provenance::Lemma2(_) => "lemma2",
            Provenance::Theorem2(_) => "thm2",
            Provenance::Theorem3(_) => "thm3",
        }
    }
}

/// An ordered set of `N` sequences of common length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Code {
    rows: Vec<PhaseSequence>,
}

impl Code {
    pub fn new(rows: Vec<PhaseSequence>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidParams("a code needs at least one sequence".into()))?;
        for r in &rows[1..] {
            if r.len() != first.len() {
                return Err(Error::LengthMismatch(first.len(), r.len()));
            }
            if r.q() != first.q() {
                return Err(Error::ModulusMismatch(first.q(), r.q()));
            }
        }
        Ok(Code { rows })
    }

    pub fn rows(&self) -> &[PhaseSequence] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q(&self) -> u32 {
        self.rows[0].q()
    }
}

/// `M` codes of `N` sequences of length `L` over `Z_q`, with a declared
/// zone width and the construction that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    q: u32,
    dims: Dimensions,
    codes: Vec<Code>,
    provenance: Option<Provenance>,
}

impl CodeSet {
    pub fn new(q: u32, declared_z: usize, codes: Vec<Code>, provenance: Option<Provenance>) -> Result<Self> {
        let first = codes
            .first()
            .ok_or_else(|| Error::InvalidParams("a code set needs at least one code".into()))?;
        let (n, l) = (first.n(), first.len());
        for c in &codes {
            if c.q() != q {
                return Err(Error::ModulusMismatch(q, c.q()));
            }
            if c.n() != n || c.len() != l {
                return Err(Error::ShapeMismatch(n, l, c.n(), c.len()));
            }
        }
        if declared_z == 0 || declared_z > l {
            return Err(crate::error::out_of_range("Z", declared_z, format!("1 <= Z <= L = {l}")));
        }
        Ok(CodeSet {
            q,
            dims: Dimensions::new(codes.len(), n, l, declared_z),
            codes,
            provenance,
        })
    }

    /// Builds a set from a raw `M x N x L` phase array.
    pub fn from_phases(
        q: u32,
        declared_z: usize,
        phases: Vec<Vec<Vec<u32>>>,
        provenance: Option<Provenance>,
    ) -> Result<Self> {
        let codes = phases
            .into_iter()
            .map(|rows| {
                Code::new(
                    rows.into_iter()
                        .map(|p| PhaseSequence::new(q, p))
                        .collect::<Result<Vec<_>>>()?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        CodeSet::new(q, declared_z, codes, provenance)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dims(&self) -> Dimensions {
        self.dims
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    /// The raw `M x N x L` phase array.
    pub fn to_phases(&self) -> Vec<Vec<Vec<u32>>> {
        self.codes
            .iter()
            .map(|c| c.rows().iter().map(|r| r.phases().to_vec()).collect())
            .collect()
    }

    /// Copy with one phase replaced.
    pub fn with_phase(&self, code: usize, row: usize, t: usize, phase: u32) -> Result<CodeSet> {
        let mut phases = self.to_phases();
        *phases
            .get_mut(code)
            .and_then(|c| c.get_mut(row))
            .and_then(|r| r.get_mut(t))
            .ok_or_else(|| Error::InvalidParams(format!("no entry ({code}, {row}, {t})")))? = phase;
        CodeSet::from_phases(self.q, self.dims.z, phases, self.provenance.clone())
    }
}
