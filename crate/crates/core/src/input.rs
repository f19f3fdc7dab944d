//! The presentation file format: a JSON document with the coefficient ring,
//! constants, variables, relation expressions, and an optional nested tower
//! presentation for the relative setting.
//!
//! ```json
//! {
//!   "ring": "QQ",
//!   "variables": ["y"],
//!   "relations": ["y^2 - x^3"],
//!   "tower": { "ring": "QQ", "variables": ["x"] }
//! }
//! ```
//!
//! describes k -> k[x] -> k[x,y]/(y^2 - x^3). Unknown fields are rejected.

use crate::coeff::{CoeffError, CoefficientRing};
use crate::monomial::JetVariable;
use crate::parse::{parse_poly, ParseError, VariableScope};
use crate::poly::Polynomial;
use crate::presentation::{JetError, Presentation, Tower};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid presentation document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown ring `{0}` (expected \"QQ\", \"ZZ\", or {{\"Fp\": p}})")]
    UnknownRing(String),
    #[error("in relation `{relation}`: {source}")]
    Relation {
        relation: String,
        #[source]
        source: ParseError,
    },
    #[error("towers inside towers are not supported")]
    NestedTower,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Name(String),
    Fp { #[serde(rename = "Fp")] p: u64 },
}

impl RingSpec {
    pub fn resolve(&self) -> Result<CoefficientRing, InputError> {
        match self {
            RingSpec::Name(name) => match name.as_str() {
                "QQ" => Ok(CoefficientRing::Rationals),
                "ZZ" => Ok(CoefficientRing::Integers),
                other => Err(InputError::UnknownRing(other.to_string())),
            },
            RingSpec::Fp { p } => Ok(CoefficientRing::prime_field(*p)?),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub ring: RingSpec,
    #[serde(default)]
    pub constants: Vec<String>,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub tower: Option<Box<PresentationDoc>>,
}

/// A loaded input: the absolute presentation (all variables and relations),
/// plus the tower split when the document had one.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub presentation: Presentation,
    pub tower: Option<Tower>,
}

fn parse_relations(
    texts: &[String],
    scope: &VariableScope,
    ring: CoefficientRing,
) -> Result<Vec<Polynomial>, InputError> {
    texts
        .iter()
        .map(|text| {
            parse_poly(text, scope, ring)
                .map_err(|source| InputError::Relation { relation: text.clone(), source })
        })
        .collect()
}

pub fn resolve_doc(doc: &PresentationDoc) -> Result<LoadedInput, InputError> {
    let ring = doc.ring.resolve()?;
    match &doc.tower {
        None => {
            let generators: Vec<JetVariable> =
                doc.variables.iter().map(JetVariable::base_var).collect();
            let scope = VariableScope::new(generators.iter().cloned(), doc.constants.clone());
            let relations = parse_relations(&doc.relations, &scope, ring)?;
            let presentation =
                Presentation::new(ring, doc.constants.clone(), generators, relations, 0)?;
            Ok(LoadedInput { presentation, tower: None })
        }
        Some(inner_doc) => {
            if inner_doc.tower.is_some() {
                return Err(InputError::NestedTower);
            }
            let inner_ring = inner_doc.ring.resolve()?;
            let inner_gens: Vec<JetVariable> =
                inner_doc.variables.iter().map(JetVariable::base_var).collect();
            let inner_scope =
                VariableScope::new(inner_gens.iter().cloned(), inner_doc.constants.clone());
            let inner_relations = parse_relations(&inner_doc.relations, &inner_scope, inner_ring)?;
            let inner = Presentation::new(
                inner_ring,
                inner_doc.constants.clone(),
                inner_gens.clone(),
                inner_relations,
                0,
            )?;

            let outer_gens: Vec<JetVariable> =
                doc.variables.iter().map(JetVariable::base_var).collect();
            let mut constants = doc.constants.clone();
            constants.extend(inner_doc.constants.clone());
            let scope = VariableScope::new(
                inner_gens.iter().cloned().chain(outer_gens.iter().cloned()),
                constants,
            );
            let outer_relations = parse_relations(&doc.relations, &scope, ring)?;
            let tower = Tower::new(inner, outer_gens, outer_relations)?;
            Ok(LoadedInput { presentation: tower.full().clone(), tower: Some(tower) })
        }
    }
}

pub fn load_from_str(text: &str) -> Result<LoadedInput, InputError> {
    let doc: PresentationDoc = serde_json::from_str(text)?;
    resolve_doc(&doc)
}

pub fn load_from_path(path: &Path) -> Result<LoadedInput, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_from_str(&text)
}
