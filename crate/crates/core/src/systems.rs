//! Structured systems and their strong structural properties.
//!
//! Each check builds composite pattern matrices, decides their strong full
//! rank, and turns the rank verdicts into a three-valued [`Verdict`].

use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decompose::decompose_sum;
use crate::error::{Error, Result};
use crate::matrix::{determinant, exact_rank, rat, Matrix, Rational, RationalMatrix};
use crate::pattern::{hstack, identity_pattern, pattern_add, pattern_mul, vstack, PatternMatrix};
use crate::rank::{full_column_rank, full_row_rank, RankVerdict};
use crate::sampling::{sample_member_with_rng, ValueDistribution};

/// Structured descriptor system `E x' = A x + B u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredDescriptorSystem {
    e: PatternMatrix,
    a: PatternMatrix,
    b: PatternMatrix,
}

impl StructuredDescriptorSystem {
    pub fn new(e: PatternMatrix, a: PatternMatrix, b: PatternMatrix) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::dimension("descriptor E", e.shape(), (e.rows(), e.rows())));
        }
        if a.shape() != e.shape() {
            return Err(Error::dimension("descriptor A", a.shape(), e.shape()));
        }
        if b.rows() != e.rows() {
            return Err(Error::dimension("descriptor B", b.shape(), (e.rows(), b.cols())));
        }
        Ok(StructuredDescriptorSystem { e, a, b })
    }

    pub fn e(&self) -> &PatternMatrix {
        &self.e
    }

    pub fn a(&self) -> &PatternMatrix {
        &self.a
    }

    pub fn b(&self) -> &PatternMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.e.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }
}

/// Structured system `x' = A x + B u`, `y = C x + D u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredIOSystem {
    a: PatternMatrix,
    b: PatternMatrix,
    c: PatternMatrix,
    d: PatternMatrix,
}

impl StructuredIOSystem {
    pub fn new(a: PatternMatrix, b: PatternMatrix, c: PatternMatrix, d: PatternMatrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() {
            return Err(Error::dimension("system A", a.shape(), (n, n)));
        }
        if b.rows() != n {
            return Err(Error::dimension("system B", b.shape(), (n, b.cols())));
        }
        if c.cols() != n {
            return Err(Error::dimension("system C", c.shape(), (c.rows(), n)));
        }
        if d.shape() != (c.rows(), b.cols()) {
            return Err(Error::dimension("system D", d.shape(), (c.rows(), b.cols())));
        }
        Ok(StructuredIOSystem { a, b, c, d })
    }

    pub fn a(&self) -> &PatternMatrix {
        &self.a
    }

    pub fn b(&self) -> &PatternMatrix {
        &self.b
    }

    pub fn c(&self) -> &PatternMatrix {
        &self.c
    }

    pub fn d(&self) -> &PatternMatrix {
        &self.d
    }

    /// State dimension.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Input dimension.
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// Output dimension.
    pub fn p(&self) -> usize {
        self.c.rows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Ssc,
    RegularSsc,
    Iso,
    OutputControllability,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Ssc => "SSC",
            Property::RegularSsc => "RegularSSC",
            Property::Iso => "ISO",
            Property::OutputControllability => "OutputControllability",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// A sufficient-only test failed; the property may or may not hold.
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rank test that contributes to a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: String,
    pub pattern: PatternMatrix,
    pub verdict: RankVerdict,
}

impl Condition {
    pub fn shape(&self) -> (usize, usize) {
        self.pattern.shape()
    }

    pub fn passed(&self) -> bool {
        self.verdict.full_rank
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub property: Property,
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    /// For descriptor systems: whether the rank conditions hold at every
    /// member, independently of regularity.
    pub rank_conditions_hold: Option<bool>,
    pub notes: String,
}

impl AnalysisReport {
    fn all_pass(&self) -> bool {
        self.conditions.iter().all(Condition::passed)
    }
}

fn row_condition(name: &str, pattern: PatternMatrix) -> Condition {
    let verdict = full_row_rank(&pattern);
    Condition {
        name: name.to_string(),
        pattern,
        verdict,
    }
}

fn column_condition(name: &str, pattern: PatternMatrix) -> Condition {
    let verdict = full_column_rank(&pattern);
    Condition {
        name: name.to_string(),
        pattern,
        verdict,
    }
}

/// Strong structural controllability of `(A, B)`: `[A B]` and `[A+I B]` must
/// both have full row rank.
pub fn check_ssc(a: &PatternMatrix, b: &PatternMatrix) -> Result<AnalysisReport> {
    if !a.is_square() {
        return Err(Error::dimension("check_ssc A", a.shape(), (a.rows(), a.rows())));
    }
    let shifted = pattern_add(a, &identity_pattern(a.rows()))?;
    let conditions = vec![
        row_condition("[A B]", hstack(&[a, b])?),
        row_condition("[A+I B]", hstack(&[&shifted, b])?),
    ];
    let mut report = AnalysisReport {
        property: Property::Ssc,
        verdict: Verdict::Fails,
        conditions,
        rank_conditions_hold: None,
        notes: String::new(),
    };
    if report.all_pass() {
        report.verdict = Verdict::Holds;
    } else {
        report.notes = "a failing condition has a member without full row rank".into();
    }
    Ok(report)
}

/// Regular strong structural controllability of a descriptor system.
///
/// `rank_conditions_hold` is exact. The verdict is `Holds` when all three
/// conditions pass and `Inconclusive` otherwise, since the rank test is only
/// sufficient when some members are not regular.
pub fn check_descriptor(sys: &StructuredDescriptorSystem) -> Result<AnalysisReport> {
    let b = sys.b();
    let sum = pattern_add(sys.a(), sys.e())?;
    let patterns = vec![
        ("[E B]", hstack(&[sys.e(), b])?),
        ("[A B]", hstack(&[sys.a(), b])?),
        ("[A+E B]", hstack(&[&sum, b])?),
    ];
    let conditions: Vec<Condition> = patterns
        .into_par_iter()
        .map(|(name, p)| row_condition(name, p))
        .collect();
    let all = conditions.iter().all(Condition::passed);
    Ok(AnalysisReport {
        property: Property::RegularSsc,
        verdict: if all { Verdict::Holds } else { Verdict::Inconclusive },
        conditions,
        rank_conditions_hold: Some(all),
        notes: if all {
            String::new()
        } else {
            "rank conditions fail for some member; regular members may still be controllable".into()
        },
    })
}

fn iso_patterns(sys: &StructuredIOSystem) -> Result<(PatternMatrix, PatternMatrix)> {
    let shifted = pattern_add(sys.a(), &identity_pattern(sys.n()))?;
    let bottom = hstack(&[sys.c(), sys.d()])?;
    let first = vstack(&[&hstack(&[sys.a(), sys.b()])?, &bottom])?;
    let second = vstack(&[&hstack(&[&shifted, sys.b()])?, &bottom])?;
    Ok((first, second))
}

/// Strong structural input-state observability: `[[A B],[C D]]` and
/// `[[A+I B],[C D]]` must both have full column rank.
pub fn check_iso(sys: &StructuredIOSystem) -> Result<AnalysisReport> {
    let (first, second) = iso_patterns(sys)?;
    let conditions = vec![
        column_condition("[[A B],[C D]]", first),
        column_condition("[[A+I B],[C D]]", second),
    ];
    let mut report = AnalysisReport {
        property: Property::Iso,
        verdict: Verdict::Fails,
        conditions,
        rank_conditions_hold: None,
        notes: String::new(),
    };
    if report.all_pass() {
        report.verdict = Verdict::Holds;
    } else {
        report.notes = "some member and some lambda give a column-rank-deficient system matrix".into();
    }
    Ok(report)
}

/// Members of the four blocks and a scalar `lambda` for which
/// `[[A - lambda I, B],[C, D]]` does not have full column rank.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoWitness {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub c: RationalMatrix,
    pub d: RationalMatrix,
    pub lambda: Rational,
}

impl IsoWitness {
    /// The stacked matrix `[[A - lambda I, B],[C, D]]`.
    pub fn system_matrix(&self) -> RationalMatrix {
        let n = self.a.rows();
        let shifted = &self.a - &RationalMatrix::identity(n).scale(&self.lambda);
        let top = Matrix::hstack(&[&shifted, &self.b]).expect("validated blocks");
        let bottom = Matrix::hstack(&[&self.c, &self.d]).expect("validated blocks");
        Matrix::vstack(&[&top, &bottom]).expect("validated blocks")
    }

    /// Checks membership of every block and the rank deficiency, exactly.
    pub fn verify(&self, sys: &StructuredIOSystem) -> bool {
        let member = |p: &PatternMatrix, m: &RationalMatrix| p.contains(m, 0.0).unwrap_or(false);
        member(sys.a(), &self.a)
            && member(sys.b(), &self.b)
            && member(sys.c(), &self.c)
            && member(sys.d(), &self.d)
            && exact_rank(&self.system_matrix()) < sys.n() + sys.m()
    }
}

fn split_blocks(w: &RationalMatrix, n: usize, m: usize) -> [RationalMatrix; 4] {
    let p = w.rows() - n;
    [
        w.block(0, 0, n, n),
        w.block(0, n, n, m),
        w.block(n, 0, p, n),
        w.block(n, n, p, m),
    ]
}

/// Exact witness that the system is not strongly structurally input-state
/// observable, or `None` when it is.
pub fn iso_witness(sys: &StructuredIOSystem) -> Result<Option<IsoWitness>> {
    let (n, m) = (sys.n(), sys.m());
    let (first, second) = iso_patterns(sys)?;
    let missing = || Error::Input("no rank-deficient member found".into());

    let v = full_column_rank(&first);
    if !v.full_rank {
        let w = v.witness.ok_or_else(missing)?;
        let [a, b, c, d] = split_blocks(&w, n, m);
        return Ok(Some(IsoWitness {
            a,
            b,
            c,
            d,
            lambda: Rational::zero(),
        }));
    }
    let v = full_column_rank(&second);
    if v.full_rank {
        return Ok(None);
    }
    let w = v.witness.ok_or_else(missing)?;
    let [wa, wb, c, d] = split_blocks(&w, n, m);
    // wa = a_r + delta with delta diagonal and invertible; scaling the top
    // rows by delta^-1 turns wa into a_r / delta + I.
    let (ar, delta) = decompose_sum(&wa, sys.a(), &identity_pattern(n))?;
    let inv: Vec<Rational> = (0..n).map(|i| Rational::one() / &delta[(i, i)]).collect();
    let a = Matrix::from_fn(n, n, |i, j| &ar[(i, j)] * &inv[i]);
    let b = Matrix::from_fn(n, m, |i, j| &wb[(i, j)] * &inv[i]);
    Ok(Some(IsoWitness {
        a,
        b,
        c,
        d,
        lambda: rat(-1),
    }))
}

/// `[D, CB, CAB, ..., C A^max_power B]`.
pub fn build_output_ctrl_pattern(sys: &StructuredIOSystem, max_power: usize) -> Result<PatternMatrix> {
    let n = sys.n();
    if max_power >= n.max(1) {
        return Err(Error::Input(format!(
            "max_power {max_power} must be below the state dimension {n}"
        )));
    }
    let mut blocks = vec![sys.d().clone()];
    let mut ca = sys.c().clone();
    for k in 0..=max_power {
        if k > 0 {
            ca = pattern_mul(&ca, sys.a())?;
        }
        blocks.push(pattern_mul(&ca, sys.b())?);
    }
    let refs: Vec<&PatternMatrix> = blocks.iter().collect();
    hstack(&refs)
}

/// Strong structural output controllability, sufficient test.
///
/// Tests `[D]`, `[D CB]`, `[D CB CAB]`, ... and stops at the first prefix
/// with full row rank. Every tested prefix is recorded as a condition.
pub fn check_output_controllability(sys: &StructuredIOSystem) -> Result<AnalysisReport> {
    let mut conditions = Vec::new();
    let mut prefix = sys.d().clone();
    let mut ca = sys.c().clone();
    let mut name = String::from("[D");
    let mut power = 0;
    loop {
        let cond = row_condition(&format!("{name}]"), prefix.clone());
        let passed = cond.passed();
        conditions.push(cond);
        if passed || power == sys.n() {
            break;
        }
        if power > 0 {
            ca = pattern_mul(&ca, sys.a())?;
        }
        let block = pattern_mul(&ca, sys.b())?;
        prefix = hstack(&[&prefix, &block])?;
        name.push_str(&match power {
            0 => " CB".to_string(),
            1 => " CAB".to_string(),
            k => format!(" CA^{k}B"),
        });
        power += 1;
    }
    let holds = conditions.last().is_some_and(Condition::passed);
    Ok(AnalysisReport {
        property: Property::OutputControllability,
        verdict: if holds { Verdict::Holds } else { Verdict::Inconclusive },
        conditions,
        rank_conditions_hold: None,
        notes: if holds {
            String::new()
        } else {
            "the sufficient rank test failed; some members may still be output controllable".into()
        },
    })
}

/// Regularity of sampled members of a descriptor system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularitySample {
    pub trials: usize,
    /// Members with `det(lambda E - A) != 0` at one of the sampled `lambda`.
    pub regular: usize,
}

/// Samples members `(E, A)` and reports how many are shown regular by a
/// nonzero `det(lambda E - A)` at a few random rational `lambda`.
///
/// A zero determinant at every sampled `lambda` does not prove singularity,
/// so this is a diagnostic only.
pub fn sample_regularity(sys: &StructuredDescriptorSystem, trials: usize, seed: u64) -> RegularitySample {
    let dist = ValueDistribution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut regular = 0;
    for _ in 0..trials {
        let e = sample_member_with_rng(sys.e(), &dist, &mut rng);
        let a = sample_member_with_rng(sys.a(), &dist, &mut rng);
        let shown = (0..3).any(|_| {
            let lambda = dist.draw_nonzero(&mut rng);
            let pencil = &e.scale(&lambda) - &a;
            determinant(&pencil).is_some_and(|d| !d.is_zero())
        });
        if shown {
            regular += 1;
        }
    }
    RegularitySample { trials, regular }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[&str]) -> PatternMatrix {
        PatternMatrix::from_strs(rows)
    }

    fn io(a: &[&str], b: &[&str], c: &[&str], d: &[&str]) -> StructuredIOSystem {
        StructuredIOSystem::new(p(a), p(b), p(c), p(d)).unwrap()
    }

    #[test]
    fn ssc_examples() {
        let r = check_ssc(&p(&["00", "*0"]), &p(&["*", "0"])).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.conditions.len(), 2);

        let r = check_ssc(&identity_pattern(2), &PatternMatrix::zeros(2, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(!r.conditions[1].passed());
        assert!(r.conditions[1].verdict.witness.is_some());

        let a = p(&["?*?", "0??", "*0?"]);
        let r = check_ssc(&a, &identity_pattern(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);

        assert!(check_ssc(&p(&["0*"]), &p(&["*"])).is_err());
    }

    #[test]
    fn descriptor_examples() {
        let sys = StructuredDescriptorSystem::new(p(&["*0", "00"]), p(&["00", "0*"]), p(&["0", "0"])).unwrap();
        let r = check_descriptor(&sys).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.rank_conditions_hold, Some(false));
        assert!(!r.conditions[0].passed());

        let sys = StructuredDescriptorSystem::new(p(&["*0", "00"]), p(&["00", "0*"]), p(&["*", "*"])).unwrap();
        let r = check_descriptor(&sys).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.rank_conditions_hold, Some(true));

        let a = p(&["00", "*0"]);
        let b = p(&["*", "0"]);
        let sys = StructuredDescriptorSystem::new(identity_pattern(2), a.clone(), b.clone()).unwrap();
        let r = check_descriptor(&sys).unwrap();
        assert!(r.conditions[0].passed());
        assert_eq!(r.verdict, check_ssc(&a, &b).unwrap().verdict);

        assert!(StructuredDescriptorSystem::new(p(&["*0"]), p(&["*0"]), p(&["*"])).is_err());
    }

    #[test]
    fn iso_examples() {
        let sys = io(&["0"], &["0"], &["*"], &["*"]);
        assert_eq!(check_iso(&sys).unwrap().verdict, Verdict::Fails);
        let w = iso_witness(&sys).unwrap().unwrap();
        assert!(w.verify(&sys));

        let sys = io(&["0"], &["0"], &["*", "0"], &["0", "*"]);
        assert_eq!(check_iso(&sys).unwrap().verdict, Verdict::Holds);
        assert!(iso_witness(&sys).unwrap().is_none());

        let empty = StructuredIOSystem::new(
            PatternMatrix::zeros(0, 0),
            PatternMatrix::zeros(0, 0),
            PatternMatrix::zeros(1, 0),
            PatternMatrix::zeros(1, 0),
        )
        .unwrap();
        assert_eq!(check_iso(&empty).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn iso_witness_through_shifted_pattern() {
        // [[A B],[C D]] passes but A + I has a ? diagonal with nothing below
        let sys = io(&["*"], &["0"], &["0"], &["*"]);
        let r = check_iso(&sys).unwrap();
        assert!(r.conditions[0].passed());
        assert!(!r.conditions[1].passed());
        let w = iso_witness(&sys).unwrap().unwrap();
        assert_eq!(w.lambda, rat(-1));
        assert!(w.verify(&sys));
    }

    #[test]
    fn output_ctrl_pattern_blocks() {
        let sys = io(&["?*", "0?"], &["*", "0"], &["*0"], &["0"]);
        let full = build_output_ctrl_pattern(&sys, 1).unwrap();
        assert_eq!(full.shape(), (1, 3));
        assert_eq!(full, p(&["0*?"]));
        assert!(build_output_ctrl_pattern(&sys, 2).is_err());

        let sys = io(&["?*", "*?"], &["*0", "0*"], &["*0", "0*"], &["00", "00"]);
        let first = build_output_ctrl_pattern(&sys, 0).unwrap();
        assert_eq!(first, p(&["00*0", "000*"]));
    }

    #[test]
    fn output_ctrl_examples() {
        let sys = io(&["?"], &["0"], &["0"], &["*"]);
        let r = check_output_controllability(&sys).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.conditions.len(), 1);

        let sys = io(&["*0", "0*"], &["*", "*"], &["**"], &["0"]);
        let r = check_output_controllability(&sys).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.conditions.len(), 3);
        assert_eq!(r.conditions[2].pattern, p(&["0??"]));
    }

    #[test]
    fn regularity_diagnostic() {
        let sys = StructuredDescriptorSystem::new(identity_pattern(2), p(&["??", "??"]), p(&["*", "0"])).unwrap();
        let s = sample_regularity(&sys, 20, 1);
        assert_eq!(s.regular, 20);
        let sys = StructuredDescriptorSystem::new(PatternMatrix::zeros(2, 2), p(&["0*", "0*"]), p(&["*", "0"])).unwrap();
        assert_eq!(sample_regularity(&sys, 20, 1).regular, 0);
    }
}
