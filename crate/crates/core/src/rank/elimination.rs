//! Pivot elimination for strong full row rank.
//!
//! A column whose only possibly-nonzero entry among the remaining rows is a
//! `*` forces the matching coordinate of every left null vector to zero, so
//! its row and column can be deleted. If every row is deleted the pattern has
//! full row rank for all members. If elimination stalls on a row set `R`,
//! each remaining column meets `R` in zero entries, a lone `?`, or at least
//! two free entries; choosing values so that the rows in `R` sum to zero
//! yields a rank-deficient member.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{exact_rank, rat, Matrix, Rational, RationalMatrix};
use crate::pattern::PatternMatrix;
use crate::symbol::Symbol;

/// Result of running elimination on the rows of a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    /// `(row, col)` pivots in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// Rows left when elimination stopped (empty on success).
    pub remaining_rows: Vec<usize>,
    /// Columns never used as pivots.
    pub remaining_cols: Vec<usize>,
}

impl Elimination {
    pub fn succeeded(&self) -> bool {
        self.remaining_rows.is_empty()
    }
}

/// Runs elimination, letting `choose` pick among the eligible pivots at every
/// step. Eligible pivots are passed sorted by column.
pub fn eliminate_rows_with<F>(p: &PatternMatrix, mut choose: F) -> Elimination
where
    F: FnMut(&[(usize, usize)]) -> usize,
{
    let (rows, cols) = p.shape();
    let mut row_alive = vec![true; rows];
    let mut col_alive = vec![true; cols];
    // number of possibly-nonzero entries per column among alive rows
    let mut count: Vec<usize> = (0..cols)
        .map(|j| (0..rows).filter(|&i| p.get(i, j).may_be_nonzero()).count())
        .collect();
    let mut pivots = Vec::with_capacity(rows);
    let mut eligible = Vec::new();

    while pivots.len() < rows {
        eligible.clear();
        for j in (0..cols).filter(|&j| col_alive[j] && count[j] == 1) {
            let i = (0..rows)
                .find(|&i| row_alive[i] && p.get(i, j).may_be_nonzero())
                .expect("count tracks alive rows");
            if p.get(i, j) == Symbol::Star {
                eligible.push((i, j));
            }
        }
        if eligible.is_empty() {
            break;
        }
        let (r, c) = eligible[choose(&eligible)];
        row_alive[r] = false;
        col_alive[c] = false;
        for j in 0..cols {
            if p.get(r, j).may_be_nonzero() {
                count[j] -= 1;
            }
        }
        pivots.push((r, c));
    }

    Elimination {
        pivots,
        remaining_rows: (0..rows).filter(|&i| row_alive[i]).collect(),
        remaining_cols: (0..cols).filter(|&j| col_alive[j]).collect(),
    }
}

/// Elimination with the default rule: lowest eligible column first.
pub fn eliminate_rows(p: &PatternMatrix) -> Elimination {
    eliminate_rows_with(p, |_| 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate has {found} pivots, pattern has {expected} rows")]
    Count { expected: usize, found: usize },
    #[error("pivot {index} at ({row}, {col}) is out of range")]
    OutOfRange { index: usize, row: usize, col: usize },
    #[error("pivot {index} reuses row {row} or column {col}")]
    Reused { index: usize, row: usize, col: usize },
    #[error("pivot {index} at ({row}, {col}) is not a * entry")]
    NotStar { index: usize, row: usize, col: usize },
    #[error("pivot {index}: column {col} has another possibly-nonzero entry in row {other}")]
    NotAlone { index: usize, col: usize, other: usize },
    #[error("witness is missing, not a member, or of full rank")]
    BadWitness,
}

/// Replays a row-elimination certificate against `p`.
pub fn verify_row_pivots(p: &PatternMatrix, pivots: &[(usize, usize)]) -> Result<(), CertificateError> {
    let (rows, cols) = p.shape();
    if pivots.len() != rows {
        return Err(CertificateError::Count {
            expected: rows,
            found: pivots.len(),
        });
    }
    let mut row_used = vec![false; rows];
    let mut col_used = vec![false; cols];
    for (index, &(row, col)) in pivots.iter().enumerate() {
        if row >= rows || col >= cols {
            return Err(CertificateError::OutOfRange { index, row, col });
        }
        if row_used[row] || col_used[col] {
            return Err(CertificateError::Reused { index, row, col });
        }
        if p.get(row, col) != Symbol::Star {
            return Err(CertificateError::NotStar { index, row, col });
        }
        if let Some(other) =
            (0..rows).find(|&i| i != row && !row_used[i] && p.get(i, col).may_be_nonzero())
        {
            return Err(CertificateError::NotAlone { index, col, other });
        }
        row_used[row] = true;
        col_used[col] = true;
    }
    Ok(())
}

/// Member with `*` set to 1 and `?` set to 0.
pub(crate) fn base_member(p: &PatternMatrix) -> RationalMatrix {
    Matrix::from_fn(p.rows(), p.cols(), |i, j| match p.get(i, j) {
        Symbol::Star => Rational::one(),
        _ => Rational::zero(),
    })
}

/// Member in which the rows listed in `subset` are identical (or, for a single
/// row, zero). `None` when the pattern forbids it.
pub(crate) fn identical_rows_member(p: &PatternMatrix, subset: &[usize]) -> Option<RationalMatrix> {
    let mut values = Vec::with_capacity(p.cols());
    for j in 0..p.cols() {
        let syms = subset.iter().map(|&i| p.get(i, j));
        let has_zero = syms.clone().any(|s| s == Symbol::Zero);
        let has_star = syms.clone().any(|s| s == Symbol::Star);
        if (subset.len() == 1 || has_zero) && has_star {
            return None;
        }
        values.push(subset.len() > 1 && !has_zero && has_star);
    }
    let mut m = base_member(p);
    for (j, one) in values.into_iter().enumerate() {
        let value = if one { Rational::one() } else { Rational::zero() };
        for &i in subset {
            m[(i, j)] = value.clone();
        }
    }
    Some(m)
}

/// Member whose rows in `stall_rows` sum to zero. Requires that `stall_rows`
/// is a set on which elimination stalled.
fn zero_sum_member(p: &PatternMatrix, stall_rows: &[usize]) -> RationalMatrix {
    let mut m = base_member(p);
    for j in 0..p.cols() {
        let stars: Vec<usize> = stall_rows
            .iter()
            .copied()
            .filter(|&i| p.get(i, j) == Symbol::Star)
            .collect();
        let quests: Vec<usize> = stall_rows
            .iter()
            .copied()
            .filter(|&i| p.get(i, j) == Symbol::Quest)
            .collect();
        // quests already 0 in the base member
        match stars.len() {
            0 => {}
            1 => {
                if let Some(&q) = quests.first() {
                    m[(q, j)] = -Rational::one();
                }
            }
            s => {
                let last = stars[s - 1];
                m[(last, j)] = rat(1 - s as i64);
            }
        }
    }
    m
}

/// Exact rank-deficient member explaining a stall on `stall_rows`.
///
/// Pairs of identical rows are tried first because they make the smallest,
/// most readable witnesses; the zero-sum construction always succeeds.
pub(crate) fn stall_witness(p: &PatternMatrix, stall_rows: &[usize]) -> Option<RationalMatrix> {
    if p.rows() > p.cols() {
        return Some(base_member(p));
    }
    let singles = stall_rows.iter().map(|&i| vec![i]);
    let pairs = stall_rows
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| stall_rows[a + 1..].iter().map(move |&k| vec![i, k]));
    let (m, dependent) = match singles.chain(pairs).find_map(|s| identical_rows_member(p, &s).map(|m| (s, m))) {
        Some((rows, m)) => {
            let ok = match rows[..] {
                [i] => (0..m.cols()).all(|j| m[(i, j)].is_zero()),
                [i, k] => (0..m.cols()).all(|j| m[(i, j)] == m[(k, j)]),
                _ => false,
            };
            (m, ok)
        }
        None => {
            let m = zero_sum_member(p, stall_rows);
            let ok = !stall_rows.is_empty()
                && (0..m.cols()).all(|j| stall_rows.iter().map(|&i| &m[(i, j)]).sum::<Rational>().is_zero());
            (m, ok)
        }
    };
    (dependent && p.contains(&m, 0.0).unwrap_or(false)).then_some(m)
}

/// `m` is an exact member of `p` with rank below the row count.
pub fn is_row_witness(p: &PatternMatrix, m: &RationalMatrix) -> bool {
    p.contains(m, 0.0).unwrap_or(false) && exact_rank(m) < p.rows()
}
