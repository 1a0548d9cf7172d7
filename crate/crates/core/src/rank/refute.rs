//! Searching for rank-deficient members, independently of elimination.
//!
//! Every witness returned here has been checked with exact rational
//! arithmetic: it is a member of the pattern class and its rank is below the
//! row count.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::elimination::{base_member, identical_rows_member, is_row_witness};
use crate::error::{Error, Result};
use crate::matrix::{rat, Matrix, Rational, RationalMatrix};
use crate::pattern::PatternMatrix;
use crate::symbol::Symbol;

/// Grid search is attempted only up to this many `*`/`?` entries.
pub const MAX_GRID_FREE: usize = 10;
/// ... and only if the grid has at most this many points.
pub const MAX_GRID_POINTS: u64 = 4_000_000;
/// Subsets of more than two rows are tried only for patterns this small.
const MAX_SUBSET_ROWS: usize = 10;
/// Support search is attempted only up to this many rows.
pub const MAX_SUPPORT_ROWS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct RefutationBudget {
    grid: Vec<Rational>,
    pub max_random_restarts: usize,
    pub descent_iterations: usize,
    pub seed: u64,
}

impl Default for RefutationBudget {
    fn default() -> Self {
        RefutationBudget {
            grid: [0, 1, -1, 2, -2].into_iter().map(rat).collect(),
            max_random_restarts: 16,
            descent_iterations: 40,
            seed: 0,
        }
    }
}

impl RefutationBudget {
    /// Budget with a custom grid. Grid order is search order; duplicates are
    /// dropped. The grid must contain at least one nonzero value.
    pub fn with_grid(grid: Vec<Rational>) -> Result<Self> {
        let mut dedup: Vec<Rational> = Vec::new();
        for v in grid {
            if !dedup.contains(&v) {
                dedup.push(v);
            }
        }
        if dedup.iter().all(Zero::is_zero) {
            return Err(Error::Input("refutation grid needs a nonzero value".into()));
        }
        Ok(RefutationBudget {
            grid: dedup,
            ..Default::default()
        })
    }

    /// Values tried for `?` entries.
    pub fn quest_grid(&self) -> &[Rational] {
        &self.grid
    }

    /// Values tried for `*` entries: the nonzero part of the grid.
    pub fn star_grid(&self) -> Vec<Rational> {
        self.grid.iter().filter(|v| !v.is_zero()).cloned().collect()
    }
}

/// Which search produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// More rows than columns; any member is deficient.
    Shape,
    EqualRows,
    Grid,
    Descent,
    Support,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub witness: RationalMatrix,
    pub strategy: Strategy,
}

/// Outcome of the exhaustive grid search.
#[derive(Debug, Clone, PartialEq)]
pub enum GridOutcome {
    Found(RationalMatrix),
    /// Every grid point was checked; none is deficient.
    Exhausted,
    /// Too many free entries or grid points to enumerate.
    TooLarge,
}

/// Looks for a member of `p` with rank below its row count.
pub fn refute_full_rank(p: &PatternMatrix, budget: &RefutationBudget) -> Option<RationalMatrix> {
    refute_with_strategy(p, budget).map(|r| r.witness)
}

/// Tries, in order: the shape shortcut, identical rows, the exhaustive grid,
/// random restarts of coordinate descent, then the support search.
pub fn refute_with_strategy(p: &PatternMatrix, budget: &RefutationBudget) -> Option<Refutation> {
    let found = |witness, strategy| Some(Refutation { witness, strategy });
    if p.rows() > p.cols() {
        let m = base_member(p);
        return found(m, Strategy::Shape);
    }
    if let Some(m) = refute_by_equal_rows(p) {
        return found(m, Strategy::EqualRows);
    }
    if let GridOutcome::Found(m) = refute_by_grid(p, budget) {
        return found(m, Strategy::Grid);
    }
    if let Some(m) = refute_by_descent(p, budget) {
        return found(m, Strategy::Descent);
    }
    refute_by_support(p).and_then(|m| found(m, Strategy::Support))
}

/// Searches row subsets `S`, smallest first, for a member whose rows in `S`
/// sum to zero.
///
/// Such a member exists iff no column meets `S` in exactly one free entry
/// that is a `*`. Returns `None` for more than [`MAX_SUPPORT_ROWS`] rows.
pub fn refute_by_support(p: &PatternMatrix) -> Option<RationalMatrix> {
    let (rows, cols) = p.shape();
    if rows == 0 || rows > MAX_SUPPORT_ROWS {
        return None;
    }
    let mask_of = |j: usize, sym: Symbol| -> u32 {
        (0..rows).filter(|&i| p.get(i, j) == sym).fold(0, |m, i| m | 1 << i)
    };
    let stars: Vec<u32> = (0..cols).map(|j| mask_of(j, Symbol::Star)).collect();
    let quests: Vec<u32> = (0..cols).map(|j| mask_of(j, Symbol::Quest)).collect();
    let feasible = |s: u32| {
        (0..cols).all(|j| {
            let free = (stars[j] | quests[j]) & s;
            !(free.count_ones() == 1 && stars[j] & s != 0)
        })
    };
    let full: u64 = 1 << rows;
    for k in 1..=rows as u32 {
        // subsets of size k in increasing order (Gosper's hack)
        let mut s: u64 = (1 << k) - 1;
        while s < full {
            if feasible(s as u32) {
                return Some(zero_sum_on(p, s as u32)).filter(|m| is_row_witness(p, m));
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    None
}

/// Member with `*` = 1, `?` = 0 outside `s`, and the rows in `s` summing to
/// zero column by column.
fn zero_sum_on(p: &PatternMatrix, s: u32) -> RationalMatrix {
    let mut m = base_member(p);
    for j in 0..p.cols() {
        let in_s = |sym: Symbol| (0..p.rows()).filter(move |&i| s >> i & 1 == 1 && p.get(i, j) == sym);
        let stars: Vec<usize> = in_s(Symbol::Star).collect();
        match stars.len() {
            0 => {}
            1 => {
                if let Some(q) = in_s(Symbol::Quest).next() {
                    m[(q, j)] = rat(-1);
                }
            }
            k => m[(stars[k - 1], j)] = rat(1 - k as i64),
        }
    }
    m
}

/// Makes a subset of rows identical (or a single row zero).
pub fn refute_by_equal_rows(p: &PatternMatrix) -> Option<RationalMatrix> {
    let n = p.rows();
    if n == 0 {
        return None;
    }
    let singles = (0..n).map(|i| vec![i]);
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |k| vec![i, k]));
    let found = singles
        .chain(pairs)
        .find_map(|s| identical_rows_member(p, &s));
    if found.is_some() || n > MAX_SUBSET_ROWS {
        return found.filter(|m| is_row_witness(p, m));
    }
    // larger subsets, smallest first
    let mut subsets: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() >= 3).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    subsets
        .into_iter()
        .find_map(|mask| {
            let rows: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            identical_rows_member(p, &rows)
        })
        .filter(|m| is_row_witness(p, m))
}

/// Exhaustive search over the budget grid, first free entry varying slowest.
pub fn refute_by_grid(p: &PatternMatrix, budget: &RefutationBudget) -> GridOutcome {
    let free: Vec<(usize, usize)> = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j).may_be_nonzero())
        .collect();
    if free.len() > MAX_GRID_FREE {
        return GridOutcome::TooLarge;
    }
    let quest = budget.quest_grid().to_vec();
    let star = budget.star_grid();
    let choices: Vec<&[Rational]> = free
        .iter()
        .map(|&(i, j)| if p.get(i, j) == Symbol::Star { &star[..] } else { &quest[..] })
        .collect();
    let points = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match points {
        Some(n) if n <= MAX_GRID_POINTS => {}
        _ => return GridOutcome::TooLarge,
    }
    if choices.iter().any(|c| c.is_empty()) {
        return GridOutcome::Exhausted;
    }

    // Scale the grid to integers; a common nonzero factor does not change rank.
    let scale = budget
        .quest_grid()
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let Some(int_choices) = choices
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| (v.numer() * (&scale / v.denom())).to_i64())
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<Vec<_>>>()
    else {
        return GridOutcome::TooLarge;
    };

    let (rows, cols) = p.shape();
    let mut digits = vec![0usize; free.len()];
    let mut ints = vec![0i128; rows * cols];
    loop {
        for (k, &(i, j)) in free.iter().enumerate() {
            ints[i * cols + j] = int_choices[k][digits[k]] as i128;
        }
        if integer_rank(&ints, rows, cols) < rows {
            let mut m = Matrix::zeros(rows, cols);
            for (k, &(i, j)) in free.iter().enumerate() {
                m[(i, j)] = choices[k][digits[k]].clone();
            }
            if is_row_witness(p, &m) {
                return GridOutcome::Found(m);
            }
        }
        // odometer, last digit fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                return GridOutcome::Exhausted;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < choices[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Rank of a small integer matrix by fraction-free elimination with row gcd
/// reduction.
fn integer_rank(data: &[i128], rows: usize, cols: usize) -> usize {
    let mut a: Vec<Vec<i128>> = data.chunks(cols.max(1)).take(rows).map(<[i128]>::to_vec).collect();
    if cols == 0 {
        return 0;
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            let f = a[r][c];
            if f == 0 {
                continue;
            }
            let pv = a[rank][c];
            let mut g = 0i128;
            for k in 0..cols {
                a[r][k] = a[r][k] * pv - a[rank][k] * f;
                g = gcd(g, a[r][k]);
            }
            if g > 1 {
                for x in a[r].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Random restarts of coordinate descent on `sigma_min / sigma_max`, each
/// followed by exact rounding. Restarts run in parallel; the lowest successful
/// restart index wins, so the result is deterministic.
pub fn refute_by_descent(p: &PatternMatrix, budget: &RefutationBudget) -> Option<RationalMatrix> {
    if p.rows() == 0 || p.rows() > p.cols() {
        return None;
    }
    (0..budget.max_random_restarts)
        .into_par_iter()
        .find_map_first(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(budget.seed, k as u64));
            descend_once(p, budget.descent_iterations, &mut rng)
        })
}

fn restart_seed(seed: u64, k: u64) -> u64 {
    seed ^ (k.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

const STAR_FLOOR: f64 = 0.05;
const VALUE_CAP: f64 = 10.0;

fn descend_once<R: Rng>(p: &PatternMatrix, sweeps: usize, rng: &mut R) -> Option<RationalMatrix> {
    let (rows, cols) = p.shape();
    let free: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j).may_be_nonzero())
        .collect();
    let mut m = DMatrix::<f64>::zeros(rows, cols);
    for &(i, j) in &free {
        let mag = rng.gen_range(0.5..2.0);
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        m[(i, j)] = if p.get(i, j) == Symbol::Quest && rng.gen_bool(0.25) { 0.0 } else { sign * mag };
    }
    let mut best = conditioning(&m);
    let mut step = 0.5;
    for _ in 0..sweeps {
        if best < 1e-13 {
            break;
        }
        let mut improved = false;
        for &(i, j) in &free {
            let v = m[(i, j)];
            let mut candidates = vec![v * 0.5, v * 2.0, v + step, v - step, -v];
            if p.get(i, j) == Symbol::Quest {
                candidates.push(0.0);
            }
            for cand in candidates {
                let cand = clamp_entry(cand, p.get(i, j));
                m[(i, j)] = cand;
                let score = conditioning(&m);
                if score < best {
                    best = score;
                    improved = true;
                    break;
                }
                m[(i, j)] = v;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    round_to_witness(p, &m)
}

fn clamp_entry(v: f64, sym: Symbol) -> f64 {
    let v = v.clamp(-VALUE_CAP, VALUE_CAP);
    if sym == Symbol::Star && v.abs() < STAR_FLOOR {
        if v < 0.0 {
            -STAR_FLOOR
        } else {
            STAR_FLOOR
        }
    } else {
        v
    }
}

/// `sigma_min / sigma_max`; 0 for the zero matrix.
fn conditioning(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0.0;
    }
    // rows <= cols, so there are exactly `rows` singular values
    sv.min() / max
}

/// Rounds a nearly deficient float member to an exact one.
///
/// Takes the left singular vector of the smallest singular value, rounds it to
/// a sparse rational vector `z`, rounds the entries, then re-solves one free
/// entry per column so that `z^T M = 0` holds exactly.
fn round_to_witness(p: &PatternMatrix, m: &DMatrix<f64>) -> Option<RationalMatrix> {
    let (rows, cols) = p.shape();
    let svd = m.clone().svd(true, false);
    let u = svd.u?;
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)?;
    let z: Vec<f64> = (0..rows).map(|i| u[(i, k)]).collect();
    let zmax = z.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if zmax == 0.0 {
        return None;
    }
    let denom = BigInt::from(1000);
    let to_rat = |x: f64| Rational::new(BigInt::from((x * 1000.0).round() as i64), denom.clone());
    let z: Vec<Rational> = z
        .iter()
        .map(|&x| if x.abs() / zmax < 1e-6 { Rational::zero() } else { to_rat(x / zmax) })
        .collect();

    let mut w = Matrix::from_fn(rows, cols, |i, j| match p.get(i, j) {
        Symbol::Zero => Rational::zero(),
        sym => {
            let r = to_rat(m[(i, j)]);
            if sym == Symbol::Star && r.is_zero() {
                Rational::new(BigInt::one(), denom.clone())
            } else {
                r
            }
        }
    });

    for j in 0..cols {
        let residual = |w: &RationalMatrix| -> Rational {
            (0..rows).fold(Rational::zero(), |acc, i| acc + &z[i] * &w[(i, j)])
        };
        if residual(&w).is_zero() {
            continue;
        }
        let mut slots: Vec<usize> = (0..rows)
            .filter(|&i| p.get(i, j).may_be_nonzero() && !z[i].is_zero())
            .collect();
        slots.sort_by(|&a, &b| z[b].abs().cmp(&z[a].abs()));
        let mut fixed = false;
        for i in slots {
            let others = residual(&w) - &z[i] * &w[(i, j)];
            let value = -others / &z[i];
            if p.get(i, j) == Symbol::Star && value.is_zero() {
                continue;
            }
            w[(i, j)] = value;
            fixed = true;
            break;
        }
        if !fixed {
            return None;
        }
    }
    Some(w).filter(|w| is_row_witness(p, w))
}
