//! Strong structural properties of linear systems described by pattern
//! matrices over `{0, *, ?}`.
//!
//! A pattern matrix describes the class of all real matrices with the given
//! zero/nonzero structure (`0` forces zero, `*` forces nonzero, `?` is free).
//! This crate provides the pattern algebra, an exact decision procedure for
//! "every member has full rank" with certificates and witnesses, and checks
//! for controllability-type properties of structured systems and networks.
//!
//! ```
//! use ssprop_core::{full_row_rank, PatternMatrix};
//!
//! let p: PatternMatrix = "* 0\n? *".parse().unwrap();
//! assert!(full_row_rank(&p).full_rank);
//!
//! let q: PatternMatrix = "* *\n* *".parse().unwrap();
//! let verdict = full_row_rank(&q);
//! assert!(!verdict.full_rank);
//! println!("{}", verdict.witness.unwrap());
//! ```

pub mod decompose;
pub mod error;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod pattern;
pub mod rank;
pub mod sampling;
pub mod symbol;
pub mod systems;

pub use decompose::decompose_sum;
pub use error::{Error, Result, Shape};
pub use matrix::{determinant, exact_rank, numeric_rank, parse_rational, rat, ratio, Matrix, Rational, RationalMatrix, Scalar};
pub use network::{
    check_target_controllability, parse_graph, parse_vertex_list, qualitative_pattern, selector_pattern,
    DirectedGraph, NetworkProblem,
};
pub use pattern::{hstack, identity_pattern, pattern_add, pattern_mul, vstack, PatternMatrix};
pub use rank::{
    full_column_rank, full_rank, full_row_rank, pencil_full_rank, pencil_witness, refute_full_rank,
    strongly_nonsingular_square, verify_certificate, CertificateError, PencilWitness, RankKind, RankVerdict,
    RefutationBudget, Stall,
};
pub use sampling::{sample_member, ValueDistribution};
pub use symbol::{add_symbol, mul_symbol, Symbol};
pub use systems::{
    build_output_ctrl_pattern, check_descriptor, check_iso, check_output_controllability, check_ssc, iso_witness,
    AnalysisReport, Condition, IsoWitness, Property, StructuredDescriptorSystem, StructuredIOSystem, Verdict,
};
