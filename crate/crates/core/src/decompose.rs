//! Splitting a member of `P(A + B)` into members of `P(A)` and `P(B)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Rational, RationalMatrix};
use crate::pattern::{pattern_add, PatternMatrix};
use crate::symbol::Symbol;

/// Returns `(a_r, b_r)` with `a_r` in `P(a)`, `b_r` in `P(b)` and
/// `a_r + b_r == c` exactly.
///
/// Entry rules, for `c_ij = 0`: both patterns `0` gives `(0, 0)`, both in
/// `{*, ?}` gives `(-1, 1)`, a `0`/`?` pair gives `(0, 0)`. For `c_ij != 0`:
/// a `*`/`0` pair puts `c_ij` on the `*` side, both in `{*, ?}` splits it in
/// halves, a `0`/`?` pair puts it on the `?` side.
pub fn decompose_sum(
    c: &RationalMatrix,
    a: &PatternMatrix,
    b: &PatternMatrix,
) -> Result<(RationalMatrix, RationalMatrix)> {
    let sum = pattern_add(a, b)?;
    if let Some((row, col)) = sum.first_violation(c, 0.0)? {
        return Err(Error::Membership {
            row,
            col,
            detail: format!(
                "value {} is not admitted by symbol {} of the sum pattern",
                c[(row, col)],
                sum.get(row, col)
            ),
        });
    }

    let (rows, cols) = c.shape();
    let mut ar = Matrix::zeros(rows, cols);
    let mut br = Matrix::zeros(rows, cols);
    let half = Rational::new(1.into(), 2.into());
    for i in 0..rows {
        for j in 0..cols {
            let (x, y) = split_entry(&c[(i, j)], a.get(i, j), b.get(i, j), &half);
            ar[(i, j)] = x;
            br[(i, j)] = y;
        }
    }
    Ok((ar, br))
}

fn split_entry(c: &Rational, a: Symbol, b: Symbol, half: &Rational) -> (Rational, Rational) {
    use Symbol::*;
    let zero = Rational::zero;
    let both_free = a != Zero && b != Zero;
    if c.is_zero() {
        if both_free {
            (-Rational::one(), Rational::one())
        } else {
            (zero(), zero())
        }
    } else if both_free {
        (c * half, c * half)
    } else if b == Zero {
        // (*, 0) or (?, 0)
        (c.clone(), zero())
    } else {
        // (0, *) or (0, ?)
        (zero(), c.clone())
    }
}
