//! JSON specification files.
//!
//! ```json
//! {
//!   "inputs": ["r"],
//!   "outputs": ["g"],
//!   "assumptions": [{"ltl": "GF r"}],
//!   "guarantees": [{"ltl": "GF g"}, {"hoa_file": "extra.hoa"}]
//! }
//! ```
//!
//! A conjunct is an LTL pattern (`ltl`), inline HOA text (`hoa`) or a HOA
//! file (`hoa_file`, relative to the spec file). HOA propositions are
//! matched to the spec's by name.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::ap::{ApError, ApTable};
use crate::automaton::DeterministicOmegaAutomaton;
use crate::hoa::{parse_hoa, HoaError};
use crate::ltl::{compile_pattern, normalize, parse_ltl, LtlError, NormalizeError, Role};
use crate::product::{NormalizedSpec, SpecError};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConjunctSource {
    Ltl(String),
    Hoa(String),
    HoaFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecProblem {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(default)]
    pub assumptions: Vec<ConjunctSource>,
    #[serde(default)]
    pub guarantees: Vec<ConjunctSource>,
    /// Directory that `hoa_file` paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// Position of a conjunct in the spec, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjunctRef {
    pub role: Role,
    pub index: usize,
}

impl fmt::Display for ConjunctRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Assumption => "assumption",
            Role::Guarantee => "guarantee",
        };
        write!(f, "{role} {}", self.index + 1)
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ap(#[from] ApError),
    #[error("{at}: {source}")]
    Ltl { at: ConjunctRef, source: LtlError },
    #[error("{at}: {source}")]
    Hoa { at: ConjunctRef, source: HoaError },
    #[error("{at}: HOA proposition {name:?} is not a declared input or output")]
    UnknownHoaProposition { at: ConjunctRef, name: String },
    #[error("{at}: {source}")]
    Normalize {
        at: ConjunctRef,
        source: NormalizeError,
    },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

impl SpecProblem {
    /// Parses spec JSON; `hoa_file` entries resolve against `base_dir`.
    pub fn from_json(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, LoadError> {
        let mut spec: SpecProblem = serde_json::from_str(text)?;
        spec.base_dir = base_dir.into();
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_owned(),
            source,
        })?;
        let base = path.parent().map(Path::to_owned).unwrap_or_default();
        SpecProblem::from_json(&text, base)
    }

    /// Compiles and classifies every conjunct over `inputs ++ outputs`.
    pub fn normalize(&self) -> Result<NormalizedSpec, LoadError> {
        let inputs = ApTable::new(self.inputs.iter().cloned())?;
        let outputs = ApTable::new(self.outputs.iter().cloned())?;
        let aps = inputs.concat(&outputs)?;
        let mut conjuncts = Vec::new();
        for (role, sources) in [
            (Role::Assumption, &self.assumptions),
            (Role::Guarantee, &self.guarantees),
        ] {
            for (index, source) in sources.iter().enumerate() {
                let at = ConjunctRef { role, index };
                for aut in self.automata(source, &aps, at)? {
                    conjuncts.extend(
                        normalize(&aut, role)
                            .map_err(|source| LoadError::Normalize { at, source })?,
                    );
                }
            }
        }
        Ok(NormalizedSpec::new(inputs, outputs, conjuncts)?)
    }

    fn automata(
        &self,
        source: &ConjunctSource,
        aps: &ApTable,
        at: ConjunctRef,
    ) -> Result<Vec<DeterministicOmegaAutomaton>, LoadError> {
        let hoa_text;
        let text = match source {
            ConjunctSource::Ltl(text) => {
                let patterns =
                    parse_ltl(text, aps).map_err(|source| LoadError::Ltl { at, source })?;
                return Ok(patterns
                    .iter()
                    .map(|p| compile_pattern(p, aps.len()))
                    .collect());
            }
            ConjunctSource::Hoa(text) => text,
            ConjunctSource::HoaFile(file) => {
                let path = self.base_dir.join(file);
                hoa_text = std::fs::read_to_string(&path)
                    .map_err(|source| LoadError::Io { path, source })?;
                &hoa_text
            }
        };
        let (aut, own) = parse_hoa(text).map_err(|source| LoadError::Hoa { at, source })?;
        let mapping = own
            .names()
            .iter()
            .map(|name| {
                aps.index_of(name)
                    .ok_or_else(|| LoadError::UnknownHoaProposition {
                        at,
                        name: name.clone(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let aut = aut
            .remap_aps(&mapping, aps.len())
            .map_err(|e| LoadError::Hoa {
                at,
                source: HoaError::Validation(e),
            })?;
        Ok(vec![aut])
    }
}
