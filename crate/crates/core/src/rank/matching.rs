//! Square strong nonsingularity via bipartite matchings.
//!
//! A square pattern is nonsingular for every member iff its row/column
//! bipartite graph (one edge per `*` or `?` entry) has exactly one perfect
//! matching and every matched entry is `*`.

use crate::error::{Error, Result};
use crate::pattern::PatternMatrix;
use crate::symbol::Symbol;

/// Maximum matching by augmenting paths. Returns `row_to_col`.
pub fn maximum_matching(adj: &[Vec<usize>], n_cols: usize) -> Vec<Option<usize>> {
    let n_rows = adj.len();
    let mut row_to_col = vec![None; n_rows];
    let mut col_to_row: Vec<Option<usize>> = vec![None; n_cols];
    for r in 0..n_rows {
        let mut visited = vec![false; n_cols];
        augment(r, adj, &mut visited, &mut row_to_col, &mut col_to_row);
    }
    row_to_col
}

fn augment(
    r: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    row_to_col: &mut [Option<usize>],
    col_to_row: &mut [Option<usize>],
) -> bool {
    for &c in &adj[r] {
        if visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match col_to_row[c] {
            None => true,
            Some(r2) => augment(r2, adj, visited, row_to_col, col_to_row),
        };
        if free {
            row_to_col[r] = Some(c);
            col_to_row[c] = Some(r);
            return true;
        }
    }
    false
}

/// `true` iff every member of the square pattern `p` is nonsingular.
pub fn strongly_nonsingular_square(p: &PatternMatrix) -> Result<bool> {
    if !p.is_square() {
        return Err(Error::dimension("strongly_nonsingular_square", p.shape(), (p.rows(), p.rows())));
    }
    let n = p.rows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| p.get(i, j).may_be_nonzero()).collect())
        .collect();
    let matching = maximum_matching(&adj, n);
    let Some(row_to_col) = matching.into_iter().collect::<Option<Vec<usize>>>() else {
        return Ok(false);
    };
    if (0..n).any(|i| p.get(i, row_to_col[i]) != Symbol::Star) {
        return Ok(false);
    }
    let mut col_to_row = vec![0; n];
    for (i, &c) in row_to_col.iter().enumerate() {
        col_to_row[c] = i;
    }
    // A second perfect matching exists iff the digraph row i -> row k, for each
    // unmatched edge (i, c) with c matched to k, has a cycle.
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            adj[i]
                .iter()
                .filter(|&&c| c != row_to_col[i])
                .map(|&c| col_to_row[c])
                .collect()
        })
        .collect();
    Ok(!has_cycle(&succ))
}

fn has_cycle(succ: &[Vec<usize>]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = succ.len();
    let mut mark = vec![Mark::New; n];
    for start in 0..n {
        if mark[start] != Mark::New {
            continue;
        }
        // iterative DFS: (node, next successor index)
        let mut stack = vec![(start, 0usize)];
        mark[start] = Mark::Active;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*next) {
                *next += 1;
                match mark[w] {
                    Mark::Active => return true,
                    Mark::New => {
                        mark[w] = Mark::Active;
                        stack.push((w, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[&str]) -> PatternMatrix {
        PatternMatrix::from_strs(rows)
    }

    #[test]
    fn examples() {
        assert!(strongly_nonsingular_square(&p(&["*?", "0*"])).unwrap());
        assert!(!strongly_nonsingular_square(&p(&["**", "**"])).unwrap());
        assert!(!strongly_nonsingular_square(&p(&["?0", "0*"])).unwrap());
        assert!(!strongly_nonsingular_square(&p(&["*0", "*0"])).unwrap());
        assert!(strongly_nonsingular_square(&p(&["0*0", "00*", "*??"])).unwrap());
        assert!(strongly_nonsingular_square(&p(&["*"])).unwrap());
        assert!(!strongly_nonsingular_square(&p(&["0"])).unwrap());
    }

    #[test]
    fn rejects_non_square() {
        assert!(strongly_nonsingular_square(&p(&["**"])).is_err());
    }

    #[test]
    fn matching_size() {
        let adj = vec![vec![0, 1], vec![0], vec![0]];
        let m = maximum_matching(&adj, 2);
        assert_eq!(m.iter().filter(|x| x.is_some()).count(), 2);
    }
}
