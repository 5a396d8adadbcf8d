//! Line-oriented JSON records. Field order is fixed by declaration order.

use std::collections::BTreeMap;

use gf2dav_core::{Elem, Seq};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerConstant<T> {
    #[serde(rename = "D_U")]
    pub d_u: T,
    #[serde(rename = "D_S")]
    pub d_s: T,
}

/// Search effort as DFS node counts, which unlike wall time are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    #[serde(rename = "D_U_nodes")]
    pub d_u_nodes: u64,
    #[serde(rename = "D_S_nodes")]
    pub d_s_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub f: String,
    pub degree: usize,
    pub factorization: String,
    pub unit_count: usize,
    #[serde(rename = "D_U")]
    pub d_u: usize,
    #[serde(rename = "D_S")]
    pub d_s: usize,
    pub delta: u8,
    pub bound_ok: bool,
    pub gap: i64,
    pub provenance: PerConstant<String>,
    pub extremal: PerConstant<Vec<String>>,
    pub timings: Timings,
}

impl VerifyRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub records: usize,
    pub budget_exhausted: usize,
    pub all_bound_ok: bool,
    pub symmetry_ok: bool,
    /// delta -> gap -> number of moduli.
    pub gaps_by_delta: BTreeMap<u8, BTreeMap<i64, usize>>,
}

#[derive(Debug, Serialize)]
pub struct SummaryLine {
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_path: Option<usize>,
    /// `[sampled, reducible]` for lengths strictly between `D_U - 1` and `D_U + delta`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub f: String,
    pub input: Vec<String>,
    pub sigma: String,
    pub delta: u8,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    pub chain_sizes: Vec<usize>,
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    pub counting_holds: bool,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub lifted: Vec<[String; 2]>,
    #[serde(rename = "W")]
    pub w: Vec<String>,
    pub result: Vec<String>,
    pub path: String,
}

#[derive(Debug, Serialize)]
pub struct IrreducibleReport {
    pub f: String,
    pub irreducible: bool,
    pub sequence: Vec<String>,
    pub sigma: String,
    pub proper_products: Vec<String>,
}

pub fn texts(s: &Seq) -> Vec<String> {
    s.iter().map(|e| e.to_string()).collect()
}

pub fn elem_texts(es: impl IntoIterator<Item = Elem>) -> Vec<String> {
    es.into_iter().map(|e| e.to_string()).collect()
}
