//! Networks with leader and target vertices.
//!
//! Vertices are numbered from 1 in text input and output, from 0 internally.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pattern::PatternMatrix;
use crate::symbol::Symbol;
use crate::systems::{check_output_controllability, AnalysisReport, StructuredIOSystem};

/// Directed graph on vertices `0..n`. An edge `(u, v)` means `u -> v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Self {
        DirectedGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from 1-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = DirectedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the 1-based edge `u -> v`. Returns `false` if it was present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(Error::Input(format!("vertex {x} out of range 1..={}", self.n)));
            }
        }
        Ok(self.edges.insert((u - 1, v - 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Tests the 0-based edge `u -> v`.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }
}

/// A graph with leader (input) and target (output) vertices, stored 0-based
/// and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkProblem {
    graph: DirectedGraph,
    leaders: Vec<usize>,
    targets: Vec<usize>,
}

impl NetworkProblem {
    /// `leaders` and `targets` are 1-based vertex lists.
    pub fn new(graph: DirectedGraph, leaders: &[usize], targets: &[usize]) -> Result<Self> {
        let leaders = to_internal(&graph, leaders, "leader")?;
        let targets = to_internal(&graph, targets, "target")?;
        Ok(NetworkProblem {
            graph,
            leaders,
            targets,
        })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    /// 0-based, sorted.
    pub fn leaders(&self) -> &[usize] {
        &self.leaders
    }

    /// 0-based, sorted.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// The structured system `(A, B, C, 0)` of the network.
    pub fn system(&self) -> Result<StructuredIOSystem> {
        let n = self.graph.n();
        let all: Vec<usize> = (0..n).collect();
        let a = qualitative_pattern(&self.graph);
        let b = selector_pattern(&all, &self.leaders, n)?;
        let c = selector_pattern(&self.targets, &all, n)?;
        let d = PatternMatrix::zeros(self.targets.len(), self.leaders.len());
        StructuredIOSystem::new(a, b, c, d)
    }
}

fn to_internal(graph: &DirectedGraph, set: &[usize], what: &str) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::Input(format!("{what} set is empty")));
    }
    let mut out = BTreeSet::new();
    for &v in set {
        if v == 0 || v > graph.n() {
            return Err(Error::Input(format!("{what} vertex {v} out of range 1..={}", graph.n())));
        }
        out.insert(v - 1);
    }
    Ok(out.into_iter().collect())
}

/// Pattern of the qualitative class: `?` on the diagonal, `*` at `(i, j)`
/// exactly when `j -> i` is an edge.
pub fn qualitative_pattern(g: &DirectedGraph) -> PatternMatrix {
    PatternMatrix::from_fn(g.n(), g.n(), |i, j| {
        if i == j {
            Symbol::Quest
        } else if g.has_edge(j, i) {
            Symbol::Star
        } else {
            Symbol::Zero
        }
    })
}

/// `*` at `(a, b)` where `row_set[a] == col_set[b]`. Sets are 0-based.
pub fn selector_pattern(row_set: &[usize], col_set: &[usize], n: usize) -> Result<PatternMatrix> {
    if let Some(&v) = row_set.iter().chain(col_set).find(|&&v| v >= n) {
        return Err(Error::Input(format!("vertex {} out of range 1..={n}", v + 1)));
    }
    Ok(PatternMatrix::from_fn(row_set.len(), col_set.len(), |a, b| {
        if row_set[a] == col_set[b] {
            Symbol::Star
        } else {
            Symbol::Zero
        }
    }))
}

/// Strong structural target controllability via output controllability of
/// `(A, B, C, 0)`. `Holds` is conclusive, anything else is `Inconclusive`.
pub fn check_target_controllability(prob: &NetworkProblem) -> Result<AnalysisReport> {
    check_output_controllability(&prob.system()?)
}

/// Parses the edge-list format: a line `n <count>`, then one `u v` edge per
/// line, 1-based. `#` starts a comment.
///
/// Duplicate edges and self-loops are accepted and reported as warnings.
/// Self-loops are not stored, since diagonal entries are free anyway.
pub fn parse_graph(text: &str) -> Result<(DirectedGraph, Vec<String>)> {
    let mut graph: Option<DirectedGraph> = None;
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            match toks.as_slice() {
                ["n", count] => {
                    let n = count
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("invalid vertex count {count:?}")))?;
                    graph = Some(DirectedGraph::new(n));
                    continue;
                }
                _ => return Err(Error::parse(line_no, "expected header `n <count>`")),
            }
        };
        let [u, v] = toks.as_slice() else {
            return Err(Error::parse(line_no, "expected an edge `u v`"));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("invalid vertex {s:?}")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        for x in [u, v] {
            if x == 0 || x > g.n() {
                return Err(Error::parse(line_no, format!("vertex {x} out of range 1..={}", g.n())));
            }
        }
        if u == v {
            warnings.push(format!("line {line_no}: self-loop on {u} ignored"));
            continue;
        }
        if !g.add_edge(u, v)? {
            warnings.push(format!("line {line_no}: duplicate edge {u} {v} ignored"));
        }
    }
    let graph = graph.ok_or_else(|| Error::parse(1, "missing header `n <count>`"))?;
    Ok((graph, warnings))
}

/// Parses a 1-based vertex list such as `1,2` or `1-7` or `1,3-5`, sorted and
/// deduplicated.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    let bad = |s: &str| Error::Input(format!("invalid vertex list item {s:?}"));
    let mut out = BTreeSet::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad(item))?;
                let hi: usize = hi.trim().parse().map_err(|_| bad(item))?;
                if lo == 0 || lo > hi {
                    return Err(bad(item));
                }
                out.extend(lo..=hi);
            }
            None => {
                let v: usize = item.parse().map_err(|_| bad(item))?;
                if v == 0 {
                    return Err(bad(item));
                }
                out.insert(v);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Input("empty vertex list".into()));
    }
    Ok(out.into_iter().collect())
}
