//! JSON report schema, version "1".
//!
//! Indices are 0-based. Exact values are written as rational strings such as
//! `"3/2"`, never as floats.

use serde::{Deserialize, Serialize};
use ssprop_core::oracle::OracleReport;
use ssprop_core::rank::{Refutation, Strategy};
use ssprop_core::systems::RegularitySample;
use ssprop_core::{
    AnalysisReport, IsoWitness, PatternMatrix, PencilWitness, RankKind, RankVerdict, RationalMatrix,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub schema_version: String,
    pub command: CommandEcho,
    pub result: ResultJson,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_grid: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultJson {
    Pattern {
        rows: usize,
        cols: usize,
        pattern: Vec<String>,
    },
    Rank(RankJson),
    Analysis(AnalysisJson),
    Oracle(OracleJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankJson {
    /// `"row"` or `"column"`.
    pub rank: String,
    pub full_rank: bool,
    pub pivots: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stall: Option<StallJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<RefutationJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StallJson {
    pub reason: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Independent search for a deficient member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationJson {
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub property: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_conditions_hold: Option<bool>,
    pub conditions: Vec<ConditionJson>,
    pub notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SystemWitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegularityJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub name: String,
    pub shape: [usize; 2],
    pub result: RankJson,
}

/// Member blocks and a scalar exhibiting a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemWitnessJson {
    pub lambda: String,
    pub blocks: Vec<NamedMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityJson {
    pub trials: usize,
    pub shown_regular: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    pub oracle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<bool>,
    pub trials: usize,
    pub passed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SystemWitnessJson>,
}

pub fn matrix_json(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

pub fn pattern_json(p: &PatternMatrix) -> ResultJson {
    ResultJson::Pattern {
        rows: p.rows(),
        cols: p.cols(),
        pattern: (0..p.rows())
            .map(|i| p.row(i).iter().map(|s| s.as_char().to_string()).collect::<Vec<_>>().join(" "))
            .collect(),
    }
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Shape => "shape",
        Strategy::EqualRows => "equal_rows",
        Strategy::Grid => "grid",
        Strategy::Descent => "descent",
        Strategy::Support => "support",
    }
}

impl From<&RankVerdict> for RankJson {
    fn from(v: &RankVerdict) -> Self {
        RankJson {
            rank: match v.kind {
                RankKind::Row => "row".into(),
                RankKind::Column => "column".into(),
            },
            full_rank: v.full_rank,
            pivots: v.pivots.iter().map(|&(r, c)| [r, c]).collect(),
            stall: v.stall.as_ref().map(|s| StallJson {
                reason: s.reason.clone(),
                rows: s.rows.clone(),
                cols: s.cols.clone(),
            }),
            witness: v.witness.as_ref().map(matrix_json),
            refutation: None,
        }
    }
}

impl RefutationJson {
    pub fn new(r: Option<&Refutation>) -> Self {
        RefutationJson {
            found: r.is_some(),
            strategy: r.map(|r| strategy_name(r.strategy).to_string()),
            witness: r.map(|r| matrix_json(&r.witness)),
        }
    }
}

impl From<&AnalysisReport> for AnalysisJson {
    fn from(r: &AnalysisReport) -> Self {
        AnalysisJson {
            property: r.property.name().into(),
            verdict: r.verdict.name().into(),
            rank_conditions_hold: r.rank_conditions_hold,
            conditions: r
                .conditions
                .iter()
                .map(|c| ConditionJson {
                    name: c.name.clone(),
                    shape: [c.shape().0, c.shape().1],
                    result: (&c.verdict).into(),
                })
                .collect(),
            notes: r.notes.clone(),
            witness: None,
            regularity: None,
            warnings: Vec::new(),
        }
    }
}

impl From<&IsoWitness> for SystemWitnessJson {
    fn from(w: &IsoWitness) -> Self {
        let named = |name: &str, m: &RationalMatrix| NamedMatrix {
            name: name.into(),
            matrix: matrix_json(m),
        };
        SystemWitnessJson {
            lambda: w.lambda.to_string(),
            blocks: vec![named("A", &w.a), named("B", &w.b), named("C", &w.c), named("D", &w.d)],
        }
    }
}

impl From<&PencilWitness> for SystemWitnessJson {
    fn from(w: &PencilWitness) -> Self {
        SystemWitnessJson {
            lambda: w.lambda.to_string(),
            blocks: vec![
                NamedMatrix {
                    name: "A".into(),
                    matrix: matrix_json(&w.a),
                },
                NamedMatrix {
                    name: "B".into(),
                    matrix: matrix_json(&w.b),
                },
            ],
        }
    }
}

impl From<RegularitySample> for RegularityJson {
    fn from(s: RegularitySample) -> Self {
        RegularityJson {
            trials: s.trials,
            shown_regular: s.regular,
        }
    }
}

impl From<&OracleReport> for OracleJson {
    fn from(r: &OracleReport) -> Self {
        OracleJson {
            oracle: r.oracle.into(),
            decision: r.decision,
            trials: r.trials,
            passed: r.passed,
            counterexample: r.counterexample.clone(),
            witness: None,
        }
    }
}
