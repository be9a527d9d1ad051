//! JSON shapes for results. Vertex ids are 1-based; rationals are `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::covering::IndexReport;
use crate::exact::NormResult;
use crate::graph::{Ball, Graph, GraphJson};
use crate::number::format_ratio;
use crate::numeric::OptimizerMeta;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub schema_version: u32,
    pub seed: u64,
    pub graph: GraphJson,
    pub norm: String,
    pub p: String,
    pub kind: String,
    pub value: String,
    pub value_f64: f64,
    pub exact: bool,
    pub witness: Option<Vec<String>>,
    pub bounds: Option<[f64; 2]>,
    pub optimizer: Option<OptimizerMeta>,
    pub notes: Vec<String>,
}

impl NormReport {
    pub fn new(g: &Graph, r: &NormResult, seed: u64) -> Self {
        NormReport {
            schema_version: SCHEMA_VERSION,
            seed,
            graph: GraphJson::from(g),
            norm: r.norm.to_string(),
            p: r.p.to_string(),
            kind: r.kind.to_string(),
            value: r.value.to_string(),
            value_f64: r.to_f64(),
            exact: r.value.is_exact(),
            witness: r.witness.as_ref().map(|w| w.to_strings()),
            bounds: r.bounds.map(|(lo, hi)| [lo, hi]),
            optimizer: r.optimizer.clone(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub center: usize,
    pub radius: usize,
    pub members: Vec<usize>,
}

impl From<&Ball> for BallJson {
    fn from(b: &Ball) -> Self {
        BallJson { center: b.center + 1, radius: b.radius, members: b.members.iter().map(|v| v + 1).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationJson {
    pub value: String,
    pub vertex: usize,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlappingJson {
    pub value: usize,
    pub lower_bound_only: bool,
    pub witness: Vec<BallJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexJson {
    pub schema_version: u32,
    pub graph: GraphJson,
    pub dilation: DilationJson,
    pub overlapping: Option<OverlappingJson>,
    pub weak11_upper: String,
}

impl IndexJson {
    pub fn new(g: &Graph, r: &IndexReport) -> Self {
        IndexJson {
            schema_version: SCHEMA_VERSION,
            graph: GraphJson::from(g),
            dilation: DilationJson {
                value: format_ratio(&r.dilation.value),
                vertex: r.dilation.vertex + 1,
                radius: r.dilation.radius,
            },
            overlapping: r.overlapping.as_ref().map(|o| OverlappingJson {
                value: o.value,
                lower_bound_only: o.lower_bound_only,
                witness: o.witness.iter().map(BallJson::from).collect(),
            }),
            weak11_upper: format_ratio(&r.weak11_upper),
        }
    }
}
