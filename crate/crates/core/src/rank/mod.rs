//! Strong full rank of pattern matrices.
//!
//! [`full_row_rank`] decides whether every member of a pattern class has full
//! row rank. Success carries a pivot certificate that can be replayed with
//! [`verify_certificate`]; failure carries an exact rank-deficient member.

mod elimination;
mod matching;
mod refute;

pub use elimination::{
    eliminate_rows, eliminate_rows_with, is_row_witness, verify_row_pivots, CertificateError, Elimination,
};
pub use matching::{maximum_matching, strongly_nonsingular_square};
pub use refute::{
    refute_by_descent, refute_by_equal_rows, refute_by_grid, refute_by_support, refute_full_rank, refute_with_strategy, GridOutcome,
    Refutation, RefutationBudget, Strategy, MAX_GRID_FREE, MAX_GRID_POINTS, MAX_SUPPORT_ROWS,
};

use crate::decompose::decompose_sum;
use crate::error::{Error, Result};
use crate::matrix::{rat, Rational, RationalMatrix};
use crate::pattern::{pattern_add, PatternMatrix};

const TALL: &str = "more rows than columns";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankKind {
    Row,
    Column,
}

/// Where elimination got stuck, in the coordinates of the input pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stall {
    pub reason: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankVerdict {
    pub kind: RankKind,
    pub full_rank: bool,
    /// `(row, col)` pivots in elimination order. For column rank each pivot
    /// is still reported as `(row, col)` of the input pattern.
    pub pivots: Vec<(usize, usize)>,
    pub stall: Option<Stall>,
    /// Exact member of the pattern class without full rank.
    pub witness: Option<RationalMatrix>,
}

/// Decides whether every member of `p` has full row rank.
pub fn full_row_rank(p: &PatternMatrix) -> RankVerdict {
    if p.rows() > p.cols() {
        return RankVerdict {
            kind: RankKind::Row,
            full_rank: false,
            pivots: Vec::new(),
            stall: Some(Stall {
                reason: TALL.into(),
                rows: (0..p.rows()).collect(),
                cols: (0..p.cols()).collect(),
            }),
            witness: elimination::stall_witness(p, &[]),
        };
    }
    let e = eliminate_rows(p);
    if e.succeeded() {
        return RankVerdict {
            kind: RankKind::Row,
            full_rank: true,
            pivots: e.pivots,
            stall: None,
            witness: None,
        };
    }
    let witness = elimination::stall_witness(p, &e.remaining_rows);
    debug_assert!(witness.is_some(), "a stall always admits a deficient member");
    RankVerdict {
        kind: RankKind::Row,
        full_rank: false,
        pivots: e.pivots,
        stall: Some(Stall {
            reason: "no column with a single * among the remaining rows".into(),
            rows: e.remaining_rows,
            cols: e.remaining_cols,
        }),
        witness,
    }
}

/// Decides whether every member of `p` has full column rank.
pub fn full_column_rank(p: &PatternMatrix) -> RankVerdict {
    let t = full_row_rank(&p.transpose());
    RankVerdict {
        kind: RankKind::Column,
        full_rank: t.full_rank,
        pivots: t.pivots.into_iter().map(|(r, c)| (c, r)).collect(),
        stall: t.stall.map(|s| Stall {
            reason: if s.reason == TALL {
                "more columns than rows".into()
            } else {
                "no row with a single * among the remaining columns".into()
            },
            rows: s.cols,
            cols: s.rows,
        }),
        witness: t.witness.map(|w| w.transpose()),
    }
}

/// Full row rank when `p` is wide or square, full column rank when tall.
pub fn full_rank(p: &PatternMatrix) -> RankVerdict {
    if p.rows() <= p.cols() {
        full_row_rank(p)
    } else {
        full_column_rank(p)
    }
}

/// Replays the certificate or checks the witness of `verdict` against `p`.
pub fn verify_certificate(p: &PatternMatrix, verdict: &RankVerdict) -> Result<(), CertificateError> {
    if verdict.full_rank {
        match verdict.kind {
            RankKind::Row => verify_row_pivots(p, &verdict.pivots),
            RankKind::Column => {
                let swapped: Vec<(usize, usize)> = verdict.pivots.iter().map(|&(r, c)| (c, r)).collect();
                verify_row_pivots(&p.transpose(), &swapped)
            }
        }
    } else {
        let ok = verdict.witness.as_ref().is_some_and(|w| match verdict.kind {
            RankKind::Row => is_row_witness(p, w),
            RankKind::Column => is_row_witness(&p.transpose(), &w.transpose()),
        });
        if ok {
            Ok(())
        } else {
            Err(CertificateError::BadWitness)
        }
    }
}

/// Decides whether `A_r - lambda B_r` has full rank for all members and every
/// nonzero complex `lambda`, by testing `A + B`.
pub fn pencil_full_rank(a: &PatternMatrix, b: &PatternMatrix) -> Result<RankVerdict> {
    Ok(full_rank(&pattern_add(a, b)?))
}

/// Members `a` of `P(A)`, `b` of `P(B)` and a nonzero `lambda` such that
/// `a - lambda b` is rank deficient.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilWitness {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub lambda: Rational,
}

/// Witness for a failing pencil, or `None` when the pencil has full rank.
pub fn pencil_witness(a: &PatternMatrix, b: &PatternMatrix) -> Result<Option<PencilWitness>> {
    let sum = pattern_add(a, b)?;
    let verdict = full_rank(&sum);
    if verdict.full_rank {
        return Ok(None);
    }
    let c = verdict
        .witness
        .ok_or_else(|| Error::Input("no rank-deficient member found for the pencil".into()))?;
    let (ar, br) = decompose_sum(&c, a, b)?;
    Ok(Some(PencilWitness {
        a: ar,
        b: br,
        lambda: rat(-1),
    }))
}
