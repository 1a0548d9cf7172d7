//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{nine_vertex_graph, NINE_VERTEX_PREFIX};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssprop_core::oracle::{pencil_oracle, sample_lambda};
use ssprop_core::rank::{refute_by_grid, GridOutcome};
use ssprop_core::sampling::sample_member_with_rng;
use ssprop_core::{
    add_symbol, build_output_ctrl_pattern, check_descriptor, check_iso, check_ssc, check_target_controllability,
    decompose_sum, full_row_rank, identity_pattern, iso_witness, mul_symbol, numeric_rank, pattern_add,
    pattern_mul, strongly_nonsingular_square, verify_certificate, Matrix, NetworkProblem, PatternMatrix,
    RationalMatrix, RefutationBudget, StructuredDescriptorSystem, StructuredIOSystem, Symbol, ValueDistribution,
    Verdict,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn symbol_tables() -> Outcome {
    use Symbol::{Quest as Q, Star as S, Zero as Z};
    let add = [[Z, S, Q], [S, Q, Q], [Q, Q, Q]];
    let mul = [[Z, Z, Z], [Z, S, Q], [Z, Q, Q]];
    let mut checked = 0;
    for (i, &a) in [Z, S, Q].iter().enumerate() {
        for (j, &b) in [Z, S, Q].iter().enumerate() {
            ensure(add_symbol(a, b) == add[i][j], || format!("{a} + {b}"))?;
            ensure(mul_symbol(a, b) == mul[i][j], || format!("{a} * {b}"))?;
            checked += 2;
        }
    }
    Ok(format!("{checked}/18 entries"))
}

fn product_example() -> Outcome {
    let prod = pattern_mul(&PatternMatrix::from_strs(&["*", "*"]), &PatternMatrix::from_strs(&["**"]))
        .map_err(|e| e.to_string())?;
    ensure(prod == PatternMatrix::from_strs(&["**", "**"]), || format!("product {prod:?}"))?;
    let m = RationalMatrix::from_ints(&[[1, 1], [1, 2]]);
    ensure(prod.contains(&m, 0.0).unwrap(), || "[[1,1],[1,2]] not a member".into())?;
    let rank = numeric_rank(&m, 0.0);
    ensure(rank == 2, || format!("rank {rank}"))?;
    Ok("product is all-*, contains a rank-2 member".into())
}

fn minkowski() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let dist = ValueDistribution::default();
    let mut ok = 0;
    for t in 0..1000 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = PatternMatrix::random(r, c, &mut rng);
        let b = PatternMatrix::random(r, c, &mut rng);
        let cm = sample_member_with_rng(&pattern_add(&a, &b).unwrap(), &dist, &mut rng);
        let (x, y) = decompose_sum(&cm, &a, &b).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(
            a.contains(&x, 0.0).unwrap() && b.contains(&y, 0.0).unwrap() && &x + &y == cm,
            || format!("trial {t}: bad split"),
        )?;
        ok += 1;
    }
    Ok(format!("{ok}/1000 decompositions exact"))
}

fn rank_vs_brute_force() -> Outcome {
    let budget = RefutationBudget::default();
    let dist = ValueDistribution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut full = 0;
    for code in 0..729 {
        let p = PatternMatrix::from_index(2, 3, code);
        let v = full_row_rank(&p);
        ensure(verify_certificate(&p, &v).is_ok(), || format!("{p:?}: certificate"))?;
        let grid = refute_by_grid(&p, &budget);
        if v.full_rank {
            full += 1;
            ensure(grid == GridOutcome::Exhausted, || format!("{p:?}: grid found a witness"))?;
            for _ in 0..200 {
                let m = sample_member_with_rng(&p, &dist, &mut rng);
                ensure(numeric_rank(&m, 0.0) == 2, || format!("{p:?}: deficient sample"))?;
            }
        } else {
            ensure(matches!(grid, GridOutcome::Found(_)), || format!("{p:?}: grid found nothing"))?;
        }
    }
    for code in 0..19683 {
        let p = PatternMatrix::from_index(3, 3, code);
        ensure(
            full_row_rank(&p).full_rank == strongly_nonsingular_square(&p).unwrap(),
            || format!("{p:?}: square cross-check"),
        )?;
    }
    Ok(format!("729/729 agree ({full} full rank), 19683/19683 square agree"))
}

fn pencil() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut holds, mut fails) = (0, 0);
    for t in 0..200 {
        let w = [5.0, 3.0, 1.0];
        let a = PatternMatrix::random_weighted(3, 4, w, &mut rng);
        let b = PatternMatrix::random_weighted(3, 4, w, &mut rng);
        let r = pencil_oracle(&a, &b, 100, 20, rng.gen(), 1e-9).map_err(|e| e.to_string())?;
        ensure(r.all_passed(), || format!("pair {t}: {:?}", r.counterexample))?;
        if r.decision == Some(true) {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    Ok(format!("200/200 pairs agree ({holds} full rank x 2000 samples, {fails} exact witnesses)"))
}

fn descriptor_vs_ssc() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut holds = 0;
    for t in 0..200 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let a = PatternMatrix::random_weighted(n, n, [3.0, 2.0, 1.0], &mut rng);
        let b = PatternMatrix::random_weighted(n, m, [2.0, 3.0, 1.0], &mut rng);
        let sys = StructuredDescriptorSystem::new(identity_pattern(n), a.clone(), b.clone()).unwrap();
        let desc = check_descriptor(&sys).map_err(|e| e.to_string())?;
        let ssc = check_ssc(&a, &b).map_err(|e| e.to_string())?;
        ensure(desc.conditions[0].passed(), || format!("system {t}: [I B] failed"))?;
        ensure(
            (desc.verdict == Verdict::Holds) == (ssc.verdict == Verdict::Holds),
            || format!("system {t}: descriptor {} vs ssc {}", desc.verdict, ssc.verdict),
        )?;
        holds += (ssc.verdict == Verdict::Holds) as usize;
    }
    Ok(format!("200/200 match ({holds} hold)"))
}

fn nine_vertex() -> Outcome {
    let g = nine_vertex_graph();
    ensure(g.n() == 9 && g.edge_count() == 13, || "fixture shape".into())?;
    let prob = NetworkProblem::new(g, &[1, 2], &[1, 2, 3, 4, 5, 6, 7]).map_err(|e| e.to_string())?;
    let sys = prob.system().map_err(|e| e.to_string())?;
    let full = build_output_ctrl_pattern(&sys, 8).map_err(|e| e.to_string())?;
    let prefix = full.select(&(0..7).collect::<Vec<_>>(), &(0..9).collect::<Vec<_>>());
    ensure(prefix == PatternMatrix::from_strs(&NINE_VERTEX_PREFIX), || format!("prefix\n{prefix}"))?;
    let report = check_target_controllability(&prob).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Holds, || format!("verdict {}", report.verdict))?;
    let last = report.conditions.last().unwrap();
    ensure(last.verdict.pivots.len() == 7, || "certificate size".into())?;
    ensure(verify_certificate(&last.pattern, &last.verdict).is_ok(), || "certificate replay".into())?;
    Ok(format!(
        "7x9 prefix matches, Holds on {} columns with a 7-pivot certificate",
        last.pattern.cols()
    ))
}

fn iso_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dist = ValueDistribution::default();
    let (mut holds, mut fails, mut tried) = (0, 0, 0);
    while (holds < 100 || fails < 20) && tried < 20_000 {
        tried += 1;
        let (n, m, p) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let w = [4.0, 3.0, 1.0];
        let sys = StructuredIOSystem::new(
            PatternMatrix::random_weighted(n, n, w, &mut rng),
            PatternMatrix::random_weighted(n, m, w, &mut rng),
            PatternMatrix::random_weighted(p, n, w, &mut rng),
            PatternMatrix::random_weighted(p, m, w, &mut rng),
        )
        .unwrap();
        let report = check_iso(&sys).map_err(|e| e.to_string())?;
        if report.verdict == Verdict::Holds && holds < 100 {
            holds += 1;
            for _ in 0..100 {
                let a = sample_member_with_rng(sys.a(), &dist, &mut rng).to_complex();
                let b = sample_member_with_rng(sys.b(), &dist, &mut rng).to_complex();
                let c = sample_member_with_rng(sys.c(), &dist, &mut rng).to_complex();
                let d = sample_member_with_rng(sys.d(), &dist, &mut rng).to_complex();
                for k in 0..20 {
                    let lambda = if k == 0 { Complex64::new(0.0, 0.0) } else { sample_lambda(&mut rng) };
                    let shifted = &a - &Matrix::identity(n).map(|x: &Complex64| x * lambda);
                    let top = Matrix::hstack(&[&shifted, &b]).unwrap();
                    let bottom = Matrix::hstack(&[&c, &d]).unwrap();
                    let stacked = Matrix::vstack(&[&top, &bottom]).unwrap();
                    let rank = numeric_rank(&stacked, 1e-9);
                    ensure(rank == n + m, || format!("system {tried}: rank {rank} at lambda {lambda}"))?;
                }
            }
        } else if report.verdict == Verdict::Fails && fails < 20 {
            fails += 1;
            let w = iso_witness(&sys).map_err(|e| e.to_string())?;
            ensure(w.is_some_and(|w| w.verify(&sys)), || format!("system {tried}: no exact witness"))?;
        }
    }
    ensure(holds == 100 && fails == 20, || format!("only {holds} holding and {fails} failing systems"))?;
    Ok("100 holding systems x 2000 samples full rank, 20/20 exact witnesses".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("symbol tables", symbol_tables),
        ("product example", product_example),
        ("Minkowski sum decomposition", minkowski),
        ("rank decision vs brute force", rank_vs_brute_force),
        ("pencil full rank", pencil),
        ("descriptor/SSC coincidence", descriptor_vs_ssc),
        ("nine-vertex network target controllability", nine_vertex),
        ("ISO soundness", iso_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
