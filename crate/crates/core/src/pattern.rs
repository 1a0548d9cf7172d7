//! Pattern matrices over `{0, *, ?}` and their algebra.
//!
//! Text format: one row per line, entries are the tokens `0`, `*`, `?`
//! separated by whitespace. Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};
use crate::symbol::{add_symbol, mul_symbol, Symbol};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Symbol>,
}

impl PatternMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Symbol>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Input(format!(
                "{} symbols cannot fill a {rows}x{cols} pattern",
                entries.len()
            )));
        }
        Ok(PatternMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn filled(rows: usize, cols: usize, sym: Symbol) -> Self {
        PatternMatrix {
            rows,
            cols,
            entries: vec![sym; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Symbol::Zero)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Symbol) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PatternMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a pattern from row strings such as `["* 0", "? *"]`.
    /// Whitespace between tokens is optional. Panics on malformed input;
    /// meant for literals in code and tests.
    pub fn from_strs(rows: &[&str]) -> Self {
        let text = rows
            .iter()
            .map(|r| r.chars().filter(|c| !c.is_whitespace()).map(String::from).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n");
        text.parse().expect("pattern literal")
    }

    /// Uniformly random pattern.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::random_weighted(rows, cols, [1.0, 1.0, 1.0], rng)
    }

    /// Random pattern with relative weights for `[0, *, ?]`.
    pub fn random_weighted<R: Rng + ?Sized>(
        rows: usize,
        cols: usize,
        weights: [f64; 3],
        rng: &mut R,
    ) -> Self {
        let total: f64 = weights.iter().sum();
        Self::from_fn(rows, cols, |_, _| {
            let x = rng.gen::<f64>() * total;
            if x < weights[0] {
                Symbol::Zero
            } else if x < weights[0] + weights[1] {
                Symbol::Star
            } else {
                Symbol::Quest
            }
        })
    }

    /// Pattern with index `code` in base-3 enumeration of all `rows x cols`
    /// patterns (entry 0 is the least significant digit).
    pub fn from_index(rows: usize, cols: usize, mut code: u64) -> Self {
        Self::from_fn(rows, cols, |_, _| {
            let s = Symbol::ALL[(code % 3) as usize];
            code /= 3;
            s
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, sym: Symbol) {
        self.entries[i * self.cols + j] = sym;
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Number of entries that are `*` or `?`.
    pub fn free_entries(&self) -> usize {
        self.entries.iter().filter(|s| s.may_be_nonzero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        self.select(row_perm, col_perm)
    }

    /// Does the real matrix `m` belong to the pattern class?
    ///
    /// `0` entries need `|m_ij| <= tol`, `*` entries need `|m_ij| > tol`, `?`
    /// entries are unconstrained. With `tol = 0` exact zero tests are used.
    pub fn contains<T: Scalar>(&self, m: &Matrix<T>, tol: f64) -> Result<bool> {
        Ok(self.first_violation(m, tol)?.is_none())
    }

    /// First entry of `m` that violates the pattern, if any.
    pub fn first_violation<T: Scalar>(&self, m: &Matrix<T>, tol: f64) -> Result<Option<(usize, usize)>> {
        if self.shape() != m.shape() {
            return Err(Error::dimension("contains", self.shape(), m.shape()));
        }
        let is_zero = |x: &T| {
            if tol == 0.0 {
                x.is_zero()
            } else {
                x.magnitude() <= tol
            }
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = match self.get(i, j) {
                    Symbol::Zero => is_zero(&m[(i, j)]),
                    Symbol::Star => !is_zero(&m[(i, j)]),
                    Symbol::Quest => true,
                };
                if !ok {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

/// Starred identity: `*` on the diagonal, `0` elsewhere.
pub fn identity_pattern(n: usize) -> PatternMatrix {
    PatternMatrix::from_fn(n, n, |i, j| if i == j { Symbol::Star } else { Symbol::Zero })
}

pub fn pattern_add(a: &PatternMatrix, b: &PatternMatrix) -> Result<PatternMatrix> {
    if a.shape() != b.shape() {
        return Err(Error::dimension("pattern_add", a.shape(), b.shape()));
    }
    Ok(PatternMatrix {
        rows: a.rows,
        cols: a.cols,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(&x, &y)| add_symbol(x, y))
            .collect(),
    })
}

pub fn pattern_mul(a: &PatternMatrix, b: &PatternMatrix) -> Result<PatternMatrix> {
    if a.cols != b.rows {
        return Err(Error::dimension("pattern_mul", a.shape(), b.shape()));
    }
    Ok(PatternMatrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = Symbol::Zero;
        for k in 0..a.cols {
            acc = add_symbol(acc, mul_symbol(a.get(i, k), b.get(k, j)));
            if acc == Symbol::Quest {
                break;
            }
        }
        acc
    }))
}

pub fn hstack(blocks: &[&PatternMatrix]) -> Result<PatternMatrix> {
    let Some(first) = blocks.first() else {
        return Err(Error::Input("hstack of no blocks".into()));
    };
    for b in blocks {
        if b.rows != first.rows {
            return Err(Error::dimension("hstack", first.shape(), b.shape()));
        }
    }
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut entries = Vec::with_capacity(first.rows * cols);
    for i in 0..first.rows {
        for b in blocks {
            entries.extend_from_slice(b.row(i));
        }
    }
    Ok(PatternMatrix {
        rows: first.rows,
        cols,
        entries,
    })
}

pub fn vstack(blocks: &[&PatternMatrix]) -> Result<PatternMatrix> {
    let Some(first) = blocks.first() else {
        return Err(Error::Input("vstack of no blocks".into()));
    };
    for b in blocks {
        if b.cols != first.cols {
            return Err(Error::dimension("vstack", first.shape(), b.shape()));
        }
    }
    let rows = blocks.iter().map(|b| b.rows).sum();
    let mut entries = Vec::with_capacity(rows * first.cols);
    for b in blocks {
        entries.extend_from_slice(&b.entries);
    }
    Ok(PatternMatrix {
        rows,
        cols: first.cols,
        entries,
    })
}

impl FromStr for PatternMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cols = None;
        let mut rows = 0;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut count = 0;
            for tok in line.split_whitespace() {
                let sym = tok
                    .parse::<Symbol>()
                    .map_err(|_| Error::parse(line_no, format!("invalid token {tok:?}, expected 0, * or ?")))?;
                entries.push(sym);
                count += 1;
            }
            match cols {
                None => cols = Some(count),
                Some(c) if c != count => {
                    return Err(Error::parse(line_no, format!("row has {count} entries, expected {c}")));
                }
                _ => {}
            }
            rows += 1;
        }
        let Some(cols) = cols else {
            return Err(Error::parse(0, "empty pattern"));
        };
        PatternMatrix::new(rows, cols, entries)
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, " | ")?;
            }
            for s in self.row(i) {
                write!(f, "{s}")?;
            }
        }
        write!(f, "]")
    }
}
