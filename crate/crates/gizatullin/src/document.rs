//! JSON surface documents with rationals written as strings.
//!
//! ```json
//! { "weights": [0, 0, -2, -3, -2, -2, -3],
//!   "feathers": [ { "component": 4, "bridge": -1, "tail": [],
//!                   "point": { "r": "1", "theta": "0" } } ] }
//! ```

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configinv::{fmt_q, CStarPoint, PointError};
use crate::extdiv::{ExtendedDivisor, Feather};
use crate::zigzag::WeightedChain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub r: String,
    pub theta: String,
}

fn default_bridge() -> i64 {
    -1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatherDoc {
    pub component: usize,
    #[serde(default = "default_bridge")]
    pub bridge: i64,
    #[serde(default)]
    pub tail: Vec<i64>,
    pub point: PointDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mother: Option<usize>,
}

/// Expectations a document may assert about itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_star: Option<bool>,
}

impl Flags {
    pub fn is_empty(&self) -> bool {
        self.smooth.is_none() && self.condition_star.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub weights: Vec<i64>,
    #[serde(default)]
    pub feathers: Vec<FeatherDoc>,
    #[serde(default, skip_serializing_if = "Flags::is_empty")]
    pub flags: Flags,
}

fn parse_rational(field: &str, text: &str) -> Result<BigRational, DocumentError> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| DocumentError::Field {
            field: field.to_string(),
            message: format!("{text:?} is not a rational number p/q"),
        })
}

pub fn parse_document(text: &str) -> Result<SurfaceDocument, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl SurfaceDocument {
    pub fn to_divisor(&self) -> Result<ExtendedDivisor, DocumentError> {
        let chain = WeightedChain::new(self.weights.clone()).map_err(|e| DocumentError::Field {
            field: "weights".into(),
            message: e.to_string(),
        })?;
        let mut feathers = Vec::with_capacity(self.feathers.len());
        for (k, f) in self.feathers.iter().enumerate() {
            let field = |name: &str| format!("feathers[{k}].point.{name}");
            let r = parse_rational(&field("r"), &f.point.r)?;
            let theta = parse_rational(&field("theta"), &f.point.theta)?;
            let point = CStarPoint::new(r, theta).map_err(|e| DocumentError::Field {
                field: match e {
                    PointError::NonPositiveModulus(_) => field("r"),
                    _ => field("theta"),
                },
                message: e.to_string(),
            })?;
            feathers.push(Feather {
                component: f.component,
                point,
                bridge: f.bridge,
                tail: f.tail.clone(),
                mother: f.mother,
            });
        }
        Ok(ExtendedDivisor::new(chain, feathers))
    }

    pub fn from_divisor(div: &ExtendedDivisor, flags: Flags) -> Self {
        Self {
            weights: div.chain().weights().to_vec(),
            feathers: div
                .feathers()
                .iter()
                .map(|f| FeatherDoc {
                    component: f.component,
                    bridge: f.bridge,
                    tail: f.tail.clone(),
                    point: PointDoc {
                        r: fmt_q(f.point.modulus()),
                        theta: fmt_q(f.point.angle()),
                    },
                    mother: f.mother,
                })
                .collect(),
            flags,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub fn parse_surface(text: &str) -> Result<ExtendedDivisor, DocumentError> {
    parse_document(text)?.to_divisor()
}

pub fn emit_surface(div: &ExtendedDivisor) -> String {
    SurfaceDocument::from_divisor(div, Flags::default()).to_json()
}
