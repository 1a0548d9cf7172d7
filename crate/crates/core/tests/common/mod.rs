#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use ssprop_core::{parse_graph, DirectedGraph, PatternMatrix, Symbol};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn nine_vertex_graph() -> DirectedGraph {
    let text = std::fs::read_to_string(fixture("nine_vertex.graph")).expect("fixture readable");
    let (g, warnings) = parse_graph(&text).expect("fixture parses");
    assert!(warnings.is_empty());
    g
}

/// Rows of the printed 7x9 prefix of the output-controllability matrix of the nine-vertex network.
pub const NINE_VERTEX_PREFIX: [&str; 7] = [
    "00*0?*???",
    "000**????",
    "0000**???",
    "00000*???",
    "000000*??",
    "0000000*?",
    "00000000*",
];

pub fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![Just(Symbol::Zero), Just(Symbol::Star), Just(Symbol::Quest)]
}

/// Symbols weighted towards `0` and `*`, which makes full-rank patterns common.
pub fn sparse_symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![4 => Just(Symbol::Zero), 3 => Just(Symbol::Star), 1 => Just(Symbol::Quest)]
}

pub fn pattern_of(rows: usize, cols: usize) -> impl Strategy<Value = PatternMatrix> {
    proptest::collection::vec(symbol(), rows * cols)
        .prop_map(move |e| PatternMatrix::new(rows, cols, e).unwrap())
}

pub fn sparse_pattern_of(rows: usize, cols: usize) -> impl Strategy<Value = PatternMatrix> {
    proptest::collection::vec(sparse_symbol(), rows * cols)
        .prop_map(move |e| PatternMatrix::new(rows, cols, e).unwrap())
}

pub fn pattern(max_rows: usize, max_cols: usize) -> impl Strategy<Value = PatternMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| pattern_of(r, c))
}

pub fn sparse_pattern(max_rows: usize, max_cols: usize) -> impl Strategy<Value = PatternMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| sparse_pattern_of(r, c))
}

/// Wide-or-square patterns weighted towards full row rank.
pub fn wide_pattern(max_rows: usize, max_cols: usize) -> impl Strategy<Value = PatternMatrix> {
    (1..=max_rows)
        .prop_flat_map(move |r| (Just(r), r..=max_cols.max(r)))
        .prop_flat_map(|(r, c)| sparse_pattern_of(r, c))
}
