//! Machine-readable report schema (`schema: 1`). Big integers are rendered
//! as decimal strings so consumers never overflow; every structure
//! round-trips through serde.

use galois_core::check::{GaloisStatus, GaloisVerdict};
use galois_core::oracle::OracleResult;
use galois_core::poly::Irreducibility;
use galois_core::transfer::TransferReport;
use galois_core::LinearChange;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub field: String,
    pub poly: String,
    pub point: Vec<String>,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer: Option<TransferJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolvent: Option<ResolventJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content: Option<ContentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct VerdictJson {
    pub status: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub assumed_irreducible: bool,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct WitnessJson {
    pub field: String,
    pub substitution: Vec<Vec<String>>,
    pub normal_form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic_roots: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_scalar: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct TransferJson {
    pub kind: String,
    pub source: String,
    pub bound: String,
    pub bound_satisfied: bool,
    pub eligibility_modulus: String,
    pub source_verdict: VerdictJson,
    pub tested_targets: Vec<TargetJson>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct TargetJson {
    pub q: String,
    pub predicted_eligible: bool,
    pub status: String,
    pub irreducibility: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct OracleJson {
    pub order: usize,
    pub structure: String,
    pub search_field: String,
    pub element_orders: Vec<(u64, usize)>,
    pub first_rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_galois: Option<bool>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ResolventJson {
    pub degree: u32,
    pub b1: String,
    pub b2: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b3: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depressed_char2: Option<(String, String)>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ContentJson {
    pub content: String,
    pub primitive: String,
    pub height: String,
    pub part_contents: Vec<String>,
}

pub fn status_string(status: GaloisStatus) -> String {
    match status {
        GaloisStatus::ExtendableGalois => "extendable-galois",
        GaloisStatus::NotGalois => "not-galois",
        GaloisStatus::PreconditionFailed => "precondition-failed",
        GaloisStatus::ExtensionRequired => "extension-required",
        GaloisStatus::Unknown => "unknown",
    }
    .to_string()
}

pub fn exit_code_for(status: GaloisStatus) -> i32 {
    match status {
        GaloisStatus::ExtendableGalois | GaloisStatus::NotGalois => 0,
        GaloisStatus::PreconditionFailed => 2,
        GaloisStatus::ExtensionRequired | GaloisStatus::Unknown => 3,
    }
}

fn matrix_rows(m: &LinearChange) -> Vec<Vec<String>> {
    (0..m.size())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect())
        .collect()
}

pub fn verdict_json(v: &GaloisVerdict) -> VerdictJson {
    VerdictJson {
        status: status_string(v.status),
        kind: v.kind.to_string(),
        group: v.group.as_ref().map(|g| g.to_string()),
        assumed_irreducible: v.assumed_irreducible,
        notes: v.notes.clone(),
        witness: v.witness.as_ref().map(|w| WitnessJson {
            field: w.field.to_string(),
            substitution: matrix_rows(&w.substitution),
            normal_form: w.normal_form.to_string(),
            scaling: w.scaling.as_ref().map(|s| s.to_string()),
            square_root: w.square_root.as_ref().map(|g| g.to_string()),
            cubic_roots: w
                .cubic_roots
                .as_ref()
                .map(|roots| roots.iter().map(|b| b.to_string()).collect()),
            generator: w.generator.as_ref().map(matrix_rows),
            generator_scalar: w.generator_scalar.as_ref().map(|t| t.to_string()),
        }),
    }
}

pub fn irreducibility_string(i: &Irreducibility) -> String {
    match i {
        Irreducibility::Reducible(factor) => format!("reducible: {factor}"),
        Irreducibility::ProbablyIrreducible => "probably-irreducible".to_string(),
        Irreducibility::Unknown => "unknown".to_string(),
    }
}

pub fn transfer_json(r: &TransferReport) -> TransferJson {
    TransferJson {
        kind: r.kind.to_string(),
        source: r.source.to_string(),
        bound: r.bound.to_string(),
        bound_satisfied: r.bound_satisfied,
        eligibility_modulus: r.eligibility_modulus.to_string(),
        source_verdict: verdict_json(&r.source_verdict),
        tested_targets: r
            .tested_targets
            .iter()
            .map(|t| TargetJson {
                q: t.q.to_string(),
                predicted_eligible: t.predicted_eligible,
                status: status_string(t.verdict.status),
                irreducibility: irreducibility_string(&t.irreducibility),
            })
            .collect(),
    }
}

pub fn oracle_json(r: &OracleResult, is_galois: Option<bool>) -> OracleJson {
    OracleJson {
        order: r.order,
        structure: r.structure.to_string(),
        search_field: r.search_field.to_string(),
        element_orders: r.element_order_multiset(),
        first_rows: r
            .elements
            .iter()
            .map(|e| e.matrix.row(0).iter().map(|c| c.to_string()).collect())
            .collect(),
        is_galois,
    }
}
