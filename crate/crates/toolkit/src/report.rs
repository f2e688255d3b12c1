//! JSON report shapes. Every document carries `"schema": 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::error::ToolError;
use crate::formats::LabeledGraph;
use crate::suites::SuiteReport;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub cyclomatic_number: usize,
}

impl GraphInfo {
    pub fn of(lg: &LabeledGraph, source: &str) -> Self {
        let g = &lg.graph;
        GraphInfo {
            source: source.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            components: g.component_count(),
            cyclomatic_number: g.cyclomatic_number(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Document<T: Serialize> {
    pub schema: u32,
    pub command: String,
    pub graph: GraphInfo,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorDocument {
    pub schema: u32,
    pub error: ErrorBody,
}

impl ErrorDocument {
    pub fn of(e: &ToolError) -> Self {
        ErrorDocument {
            schema: SCHEMA,
            error: ErrorBody {
                kind: e.kind(),
                message: e.to_string(),
                exit_code: e.exit_code(),
            },
        }
    }
}

/// Numbers when they fit in 64 bits, decimal strings otherwise.
pub fn bigint_value(d: &BigInt) -> Value {
    match d.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(d.to_string()),
    }
}

pub fn bigint_values(v: &[BigInt]) -> Vec<Value> {
    v.iter().map(bigint_value).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexCurvature {
    pub vertex: String,
    pub degree: usize,
    pub curvature: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureBody {
    pub dimension: Option<f64>,
    pub tolerance: f64,
    pub per_vertex: Vec<VertexCurvature>,
    pub min: Option<f64>,
    pub argmin: Option<String>,
    /// `min >= -tolerance`.
    pub nonnegative: bool,
    /// `min > tolerance`.
    pub positive: bool,
    pub max_degree: usize,
    pub diameter: Option<usize>,
    pub diameter_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyBody {
    pub field: String,
    pub h0: usize,
    pub h1: usize,
    pub ker_d1: usize,
    pub im_d2: usize,
    pub invariant_factors: Option<Vec<Value>>,
    /// `dim C / TS`; absent in characteristic 2.
    pub h1_cycle_quotient: Option<usize>,
    pub h1_clique: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub circuits: Vec<Vec<String>>,
    pub det: Value,
    pub basis_over: BTreeMap<String, bool>,
    pub integral: bool,
    /// `null` when the set is too large for the minor enumeration.
    pub totally_unimodular: Option<bool>,
    pub weakly_fundamental: bool,
    pub strictly_fundamental: bool,
    /// `null` when circuits longer than the length bound exist.
    pub combinatorial_generator: Option<bool>,
    pub abelian_generator: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclesBody {
    pub max_len: usize,
    pub circuit_count: usize,
    pub circuits: Vec<Vec<String>>,
    pub fundamental_basis: Vec<Vec<String>>,
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CircuitLift {
    pub circuit: Vec<String>,
    pub gain: String,
    /// Order of the circuit gain, or `"infinite"`.
    pub order: Value,
    pub balanced: bool,
    pub lift_lengths: Option<Vec<usize>>,
    pub preserved: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverBody {
    pub group: String,
    pub relator_set: String,
    /// Derived graph statistics; `null` for infinite groups, whose covers are
    /// never built.
    pub sheets: Option<usize>,
    pub total_vertices: Option<usize>,
    pub total_edges: Option<usize>,
    pub trivial: Option<bool>,
    pub circuits: Vec<CircuitLift>,
    pub balanced_on_all: bool,
    pub preserves_all: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Relator {
    pub word: Vec<i32>,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<Value>,
    pub invariant_factors: Vec<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FinitenessBody {
    /// `"finite"` or `"unknown"`.
    pub status: &'static str,
    pub order: Option<u64>,
    pub coset_cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopBody {
    pub input: Vec<String>,
    pub reduced: Vec<String>,
    pub moves: usize,
    pub trivial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Pi1Body {
    pub relator_set: String,
    pub generators: usize,
    /// The edge each generator stands for, as `[tail, head]`.
    pub generator_arcs: Vec<[String; 2]>,
    pub presentation: String,
    pub relators: Vec<Relator>,
    pub abelianization: Abelianization,
    pub finiteness: FinitenessBody,
    #[serde(rename = "loop")]
    pub loop_word: Option<LoopBody>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyBody {
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}
