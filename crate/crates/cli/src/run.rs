use std::fmt::Write as _;
use std::path::Path;

use ssprop_core::oracle::{minkowski_oracle, pencil_oracle, rank_oracle, OracleReport};
use ssprop_core::rank::refute_with_strategy;
use ssprop_core::systems::sample_regularity;
use ssprop_core::{
    check_descriptor, check_iso, check_output_controllability, check_ssc, check_target_controllability,
    full_column_rank, full_row_rank, iso_witness, parse_graph, parse_rational, parse_vertex_list, pattern_add,
    pattern_mul, pencil_witness, AnalysisReport, NetworkProblem, PatternMatrix, RankVerdict, RefutationBudget,
    StructuredDescriptorSystem, StructuredIOSystem, Verdict,
};

use crate::args::{Command, OracleCommand, Options};
use crate::error::CliError;
use crate::report::{pattern_json, AnalysisJson, OracleJson, RankJson, RefutationJson, ResultJson};

/// Lambdas sampled per member pair in the pencil oracle.
const PENCIL_LAMBDAS: usize = 20;

/// Process exit status for a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => Status::Holds,
            Verdict::Fails => Status::Fails,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub result: ResultJson,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_pattern(path: &Path) -> Result<PatternMatrix, CliError> {
    read(path)?.parse().map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_budget(opts: &Options) -> Result<RefutationBudget, CliError> {
    let mut budget = match &opts.budget_grid {
        Some(list) => {
            let values = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            RefutationBudget::with_grid(values)?
        }
        None => RefutationBudget::default(),
    };
    budget.seed = opts.seed;
    Ok(budget)
}

pub fn run(cmd: &Command, opts: &Options) -> Result<Outcome, CliError> {
    match cmd {
        Command::Add { a, b } => {
            let sum = pattern_add(&load_pattern(a)?, &load_pattern(b)?)?;
            Ok(pattern_outcome(&sum))
        }
        Command::Mul { a, b } => {
            let prod = pattern_mul(&load_pattern(a)?, &load_pattern(b)?)?;
            Ok(pattern_outcome(&prod))
        }
        Command::Rank { pattern, column } => {
            let p = load_pattern(pattern)?;
            let verdict = if *column { full_column_rank(&p) } else { full_row_rank(&p) };
            let mut json = RankJson::from(&verdict);
            if !verdict.full_rank {
                let budget = parse_budget(opts)?;
                let target = if *column { p.transpose() } else { p.clone() };
                let mut found = refute_with_strategy(&target, &budget);
                if *column {
                    if let Some(r) = found.as_mut() {
                        r.witness = r.witness.transpose();
                    }
                }
                json.refutation = Some(RefutationJson::new(found.as_ref()));
            }
            Ok(Outcome {
                status: verdict.full_rank.into(),
                text: rank_text(&verdict),
                result: ResultJson::Rank(json),
            })
        }
        Command::Ssc { a, b } => {
            let report = check_ssc(&load_pattern(a)?, &load_pattern(b)?)?;
            Ok(analysis_outcome(&report, AnalysisJson::from(&report)))
        }
        Command::Descriptor { e, a, b } => {
            let sys = StructuredDescriptorSystem::new(load_pattern(e)?, load_pattern(a)?, load_pattern(b)?)?;
            let report = check_descriptor(&sys)?;
            let sample = sample_regularity(&sys, opts.trials, opts.seed);
            let mut json = AnalysisJson::from(&report);
            json.regularity = Some(sample.into());
            let mut out = analysis_outcome(&report, json);
            let _ = writeln!(
                out.text,
                "regularity: {}/{} sampled members shown regular",
                sample.regular, sample.trials
            );
            Ok(out)
        }
        Command::Iso { a, b, c, d } => {
            let sys = load_io(a, b, c, d)?;
            let report = check_iso(&sys)?;
            let mut json = AnalysisJson::from(&report);
            let mut extra = String::new();
            if report.verdict != Verdict::Holds {
                if let Some(w) = iso_witness(&sys)? {
                    let _ = writeln!(extra, "witness (lambda = {}):", w.lambda);
                    for (name, m) in [("A", &w.a), ("B", &w.b), ("C", &w.c), ("D", &w.d)] {
                        let _ = write!(extra, "{name} =\n{m}");
                    }
                    json.witness = Some((&w).into());
                }
            }
            let mut out = analysis_outcome(&report, json);
            out.text.push_str(&extra);
            Ok(out)
        }
        Command::OutputCtrl { a, b, c, d } => {
            let report = check_output_controllability(&load_io(a, b, c, d)?)?;
            Ok(analysis_outcome(&report, AnalysisJson::from(&report)))
        }
        Command::Target {
            graph,
            leaders,
            targets,
        } => {
            let (g, warnings) = parse_graph(&read(graph)?).map_err(|source| CliError::Input {
                path: graph.clone(),
                source,
            })?;
            let prob = NetworkProblem::new(g, &parse_vertex_list(leaders)?, &parse_vertex_list(targets)?)?;
            let report = check_target_controllability(&prob)?;
            let mut json = AnalysisJson::from(&report);
            json.warnings = warnings.clone();
            let mut out = analysis_outcome(&report, json);
            for w in warnings {
                let _ = writeln!(out.text, "warning: {w}");
            }
            Ok(out)
        }
        Command::Oracle(sub) => run_oracle(sub, opts),
    }
}

fn run_oracle(cmd: &OracleCommand, opts: &Options) -> Result<Outcome, CliError> {
    let (report, witness) = match cmd {
        OracleCommand::Minkowski { a, b } => {
            (minkowski_oracle(&load_pattern(a)?, &load_pattern(b)?, opts.trials, opts.seed)?, None)
        }
        OracleCommand::Pencil { a, b } => {
            let (a, b) = (load_pattern(a)?, load_pattern(b)?);
            let report = pencil_oracle(&a, &b, opts.trials, PENCIL_LAMBDAS, opts.seed, opts.tol)?;
            let witness = pencil_witness(&a, &b)?.map(|w| (&w).into());
            (report, witness)
        }
        OracleCommand::Rank { pattern } => (rank_oracle(&load_pattern(pattern)?, opts.trials, opts.seed)?, None),
    };
    let mut json = OracleJson::from(&report);
    json.witness = witness;
    Ok(Outcome {
        status: report.all_passed().into(),
        text: oracle_text(&report),
        result: ResultJson::Oracle(json),
    })
}

fn load_io(a: &Path, b: &Path, c: &Path, d: &Path) -> Result<StructuredIOSystem, CliError> {
    Ok(StructuredIOSystem::new(
        load_pattern(a)?,
        load_pattern(b)?,
        load_pattern(c)?,
        load_pattern(d)?,
    )?)
}

fn pattern_outcome(p: &PatternMatrix) -> Outcome {
    Outcome {
        status: Status::Holds,
        text: p.to_string(),
        result: pattern_json(p),
    }
}

fn analysis_outcome(report: &AnalysisReport, json: AnalysisJson) -> Outcome {
    let mut text = format!("{}: {}\n", report.property, report.verdict);
    if let Some(hold) = report.rank_conditions_hold {
        let _ = writeln!(text, "rank conditions hold: {}", yes_no(hold));
    }
    for c in &report.conditions {
        let (r, k) = c.shape();
        let _ = writeln!(text, "  {} ({r}x{k}): {}", c.name, if c.passed() { "pass" } else { "fail" });
    }
    if !report.notes.is_empty() {
        let _ = writeln!(text, "note: {}", report.notes);
    }
    Outcome {
        status: report.verdict.into(),
        text,
        result: ResultJson::Analysis(json),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rank_text(v: &RankVerdict) -> String {
    let kind = match v.kind {
        ssprop_core::RankKind::Row => "row",
        ssprop_core::RankKind::Column => "column",
    };
    let mut text = format!("full {kind} rank: {}\n", yes_no(v.full_rank));
    if v.full_rank {
        let pivots: Vec<String> = v.pivots.iter().map(|(r, c)| format!("({r},{c})")).collect();
        let _ = writeln!(text, "pivots: {}", pivots.join(" "));
    }
    if let Some(s) = &v.stall {
        let _ = writeln!(text, "stalled: {} (rows {:?}, columns {:?})", s.reason, s.rows, s.cols);
    }
    if let Some(w) = &v.witness {
        let _ = write!(text, "witness:\n{w}");
    }
    text
}

fn oracle_text(r: &OracleReport) -> String {
    let mut text = format!("{} oracle: {}/{} trials passed\n", r.oracle, r.passed, r.trials);
    if let Some(d) = r.decision {
        let _ = writeln!(text, "decision: {}", if d { "full rank" } else { "not full rank" });
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(text, "counterexample: {c}");
    }
    text
}
