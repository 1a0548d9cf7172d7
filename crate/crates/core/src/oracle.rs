//! Sampling cross-checks of the structural decisions against random members.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::decompose_sum;
use crate::error::Result;
use crate::matrix::{exact_rank, numeric_rank, RationalMatrix};
use crate::pattern::{pattern_add, PatternMatrix};
use crate::rank::{full_row_rank, pencil_full_rank, pencil_witness, verify_certificate};
use crate::sampling::{sample_member_with_rng, ValueDistribution};

/// Outcome of a sampling cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub oracle: &'static str,
    /// The structural decision being checked, if any.
    pub decision: Option<bool>,
    pub trials: usize,
    pub passed: usize,
    /// Description of the first failing trial.
    pub counterexample: Option<String>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

/// Samples `C` from `P(A + B)` and checks that [`decompose_sum`] splits it
/// into exact members of `P(A)` and `P(B)`.
pub fn minkowski_oracle(a: &PatternMatrix, b: &PatternMatrix, trials: usize, seed: u64) -> Result<OracleReport> {
    let sum = pattern_add(a, b)?;
    let dist = ValueDistribution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport {
        oracle: "minkowski",
        decision: None,
        trials: 0,
        passed: 0,
        counterexample: None,
    };
    for t in 0..trials {
        let c = sample_member_with_rng(&sum, &dist, &mut rng);
        let ok = match decompose_sum(&c, a, b) {
            Ok((x, y)) => {
                a.contains(&x, 0.0)? && b.contains(&y, 0.0)? && (&x + &y) == c
            }
            Err(_) => false,
        };
        report.record(ok, || format!("trial {t}: decomposition of\n{c}failed"));
    }
    Ok(report)
}

/// Nonzero complex `lambda` with a uniform angle and magnitude in
/// `{0.5, 1, 2}`.
pub fn sample_lambda<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let mag = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
    Complex64::from_polar(mag, angle)
}

/// Checks the pencil decision. When it says full rank, sampled members and
/// sampled `lambda` must give full numeric rank; otherwise the exact witness
/// must be a deficient pencil.
pub fn pencil_oracle(
    a: &PatternMatrix,
    b: &PatternMatrix,
    trials: usize,
    lambdas: usize,
    seed: u64,
    tol: f64,
) -> Result<OracleReport> {
    let verdict = pencil_full_rank(a, b)?;
    let mut report = OracleReport {
        oracle: "pencil",
        decision: Some(verdict.full_rank),
        trials: 0,
        passed: 0,
        counterexample: None,
    };
    let target = a.rows().min(a.cols());
    if !verdict.full_rank {
        let ok = match pencil_witness(a, b)? {
            Some(w) => {
                let pencil = &w.a - &w.b.scale(&w.lambda);
                a.contains(&w.a, 0.0)? && b.contains(&w.b, 0.0)? && exact_rank(&pencil) < target
            }
            None => false,
        };
        report.record(ok, || "pencil witness is not deficient".into());
        return Ok(report);
    }
    let dist = ValueDistribution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let ar = sample_member_with_rng(a, &dist, &mut rng).to_complex();
        let br = sample_member_with_rng(b, &dist, &mut rng).to_complex();
        for _ in 0..lambdas {
            let lambda = sample_lambda(&mut rng);
            let pencil = &ar - &br.map(|x| x * lambda);
            let rank = numeric_rank(&pencil, tol);
            report.record(rank == target, || format!("trial {t}: rank {rank} at lambda {lambda}"));
        }
    }
    Ok(report)
}

/// Checks the full row rank decision: sampled members must have full rank
/// when it holds, and the witness must be exact when it does not.
pub fn rank_oracle(p: &PatternMatrix, trials: usize, seed: u64) -> Result<OracleReport> {
    let verdict = full_row_rank(p);
    let mut report = OracleReport {
        oracle: "rank",
        decision: Some(verdict.full_rank),
        trials: 0,
        passed: 0,
        counterexample: None,
    };
    if !verdict.full_rank {
        let ok = verify_certificate(p, &verdict).is_ok();
        report.record(ok, || "witness is not a deficient member".into());
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let q = [0.0, 0.25, 1.0][t % 3];
        let dist = ValueDistribution::default().with_quest_zero_probability(q)?;
        let m: RationalMatrix = sample_member_with_rng(p, &dist, &mut rng);
        let rank = exact_rank(&m);
        report.record(rank == p.rows(), || format!("trial {t}: member of rank {rank}\n{m}"));
    }
    Ok(report)
}
