//! On-disk JSON representation of a built code, with the run manifest that
//! makes every output reproducible.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fqlinalg::{MatrixFq, Subspace};
use crate::netcode::{Code, CodeSpec, Measured, ParamReport};
use crate::rrspace::{AmbientJson, AmbientSpace, CodewordJson, SubsetS};

pub const SCHEMA_VERSION: u32 = 1;

/// Documented fixed default for runs that do not pass `--seed`; never
/// time-based, so repeated runs are identical.
pub const DEFAULT_SEED: u64 = 0xC0DE;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: Vec<String>,
    pub seed: u64,
    /// Modulus coefficients of the field in use, so the element encoding is
    /// pinned down.
    pub field_modulus: Vec<u64>,
}

impl RunManifest {
    pub fn new(command: Vec<String>, seed: u64, field_modulus: Vec<u64>) -> RunManifest {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            field_modulus,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct CodeFile {
    pub schema_version: u32,
    pub manifest: RunManifest,
    pub spec: CodeSpec,
    pub ambient: AmbientJson,
    pub codewords: Vec<CodewordJson>,
    pub measured: Measured,
    pub theory: ParamReport,
}

impl CodeFile {
    pub fn encode(code: &Code, manifest: RunManifest) -> CodeFile {
        CodeFile {
            schema_version: SCHEMA_VERSION,
            manifest,
            spec: code.spec.clone(),
            ambient: AmbientJson::encode(&code.ambient),
            codewords: code
                .codewords
                .iter()
                .map(|(s, v)| CodewordJson {
                    subset: s.indices().to_vec(),
                    dim: v.dim(),
                    basis: v.basis().row_vecs(),
                })
                .collect(),
            measured: code.measured.clone(),
            theory: code.theory.clone(),
        }
    }

    /// Rebuild a working [`Code`] from the file: the ambient space is
    /// reconstructed from the stored CodeSpec and the stored bases are re-canonicalized.
    pub fn decode(&self) -> Result<Code, Error> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let curve = crate::curve::CurveModel::new(self.spec.family, self.spec.q)?;
        let n = curve.n_points();
        let ambient = AmbientSpace::build(curve, self.spec.k)?;
        let field = ambient.curve().field().clone();
        let mut codewords = Vec::with_capacity(self.codewords.len());
        for cw in &self.codewords {
            let subset = SubsetS::new(cw.subset.clone(), n)?;
            let sub = if cw.basis.is_empty() {
                Subspace::zero(field.clone(), ambient.dim())
            } else {
                Subspace::from_rows(&MatrixFq::from_rows(field.clone(), &cw.basis)?)
            };
            if sub.dim() != cw.dim {
                return Err(Error::InvalidInput("stored basis rank mismatch".into()));
            }
            codewords.push((subset, sub));
        }
        Ok(Code {
            spec: self.spec.clone(),
            ambient,
            codewords,
            measured: self.measured.clone(),
            theory: self.theory.clone(),
        })
    }
}
