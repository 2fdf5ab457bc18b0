//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact
//! rational equality; the tolerance column is zero throughout.
//!
//! ```bash
//! cargo test --test acceptance
//! ```

mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use lrs_markov::analysis::{
    check_ergodicity, decide_infinite_equality, query_scan, reverse_reduce,
};
use lrs_markov::degeneracy::{degeneracy_orders, sml_decompose};
use lrs_markov::reduction::build_instance;
use lrs_markov::sampling;
use lrs_markov::{
    Lrs, MarkovInstance, Matrix, Polynomial, QueryKind, Rational, ReductionCertificate,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const BATCH: usize = 100;
const BOUND: i64 = 10;
const HORIZON: usize = 30;
const SCAN_HORIZON: usize = 100;
const REVERSE_HORIZON: usize = 25;
const BRUTE_FORCE_STEPS: usize = 200;
const DECOMPOSITION_HORIZON: usize = 20;
const CORRESPONDENCE_BUDGET: Duration = Duration::from_secs(30);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            passed: true,
            detail: ok_detail,
        },
        Some(first) => Outcome {
            passed: false,
            detail: format!("{} failure(s); first: {first}", failures.len()),
        },
    }
}

/// Orders cycle through 1..=6; coefficients and initial terms have
/// numerators and denominators bounded by 10.
fn generated_batch() -> Vec<(Lrs, MarkovInstance, ReductionCertificate)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..BATCH)
        .map(|i| {
            let l = sampling::reducible_lrs(&mut rng, 1 + i % 6, BOUND);
            let (inst, cert) =
                build_instance(&l, QueryKind::Equal).expect("reducible by construction");
            (l, inst, cert)
        })
        .collect()
}

fn criterion_1(batch: &[(Lrs, MarkovInstance, ReductionCertificate)]) -> Outcome {
    let failures: Vec<String> = batch
        .iter()
        .enumerate()
        .filter(|(_, (l, inst, _))| {
            let d = l.order() + 1;
            inst.dimension() != d || inst.matrix.rows() != d || inst.matrix.cols() != d
        })
        .map(|(i, (l, inst, _))| {
            format!(
                "case {i}: order {} gave dimension {}",
                l.order(),
                inst.dimension()
            )
        })
        .collect();
    outcome(
        &failures,
        format!("{BATCH}/{BATCH} instances are (k+1)x(k+1), orders 1..=6"),
    )
}

fn criterion_2(batch: &[(Lrs, MarkovInstance, ReductionCertificate)]) -> Outcome {
    let mut failures = Vec::new();
    for (i, (_, inst, _)) in batch.iter().enumerate() {
        let positive = inst.matrix.entries().iter().all(Rational::is_positive);
        let stochastic = (0..inst.dimension())
            .all(|c| inst.matrix.column(c).iter().sum::<Rational>() == Rational::one());
        let witness = check_ergodicity(&inst.matrix, 1).map(|r| r.witness);
        if !positive || !stochastic || !matches!(witness, Ok(Some(1))) {
            failures.push(format!(
                "case {i}: positive={positive} stochastic={stochastic} witness={witness:?}"
            ));
        }
    }
    outcome(
        &failures,
        format!("{BATCH}/{BATCH} strictly positive, column-stochastic, N = 1"),
    )
}

fn criterion_3(batch: &[(Lrs, MarkovInstance, ReductionCertificate)]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, (l, inst, cert)) in batch.iter().enumerate() {
        let powers = entry_powers_fast(&inst.matrix, inst.target, inst.source, HORIZON);
        let terms = naive_terms(l, HORIZON);
        let mut rho_n = Rational::one();
        for n in 1..=HORIZON {
            rho_n *= &cert.rho;
            if &powers[n] - &inst.threshold != &cert.eta * &terms[n] / &rho_n {
                failures.push(format!("case {i}: n = {n}"));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > CORRESPONDENCE_BUDGET {
        failures.push(format!(
            "batch took {elapsed:.1?}, budget {CORRESPONDENCE_BUDGET:?}"
        ));
    }
    outcome(
        &failures,
        format!("{BATCH}/{BATCH} exact for 1 <= n <= {HORIZON} in {elapsed:.1?}"),
    )
}

fn criterion_4(batch: &[(Lrs, MarkovInstance, ReductionCertificate)]) -> Outcome {
    let mut failures = Vec::new();
    'cases: for (i, (_, inst, cert)) in batch.iter().enumerate() {
        let dim = inst.dimension();
        let s = Matrix::filled(dim, dim, Rational::ratio(1, dim as i64));
        let d = (&cert.c - &(&cert.c * &s)).scale(&cert.rho.recip().unwrap());
        if d != cert.d || inst.matrix != &s + &d {
            failures.push(format!("case {i}: D or M does not match C, S, rho"));
            continue;
        }
        if !(&d * &s).is_zero() || !(&s * &d).is_zero() {
            failures.push(format!("case {i}: DS or SD nonzero"));
            continue;
        }
        let one = BigInt::from(1);
        let (rho_num, rho_den) = (cert.rho.numer().clone(), cert.rho.denom().clone());
        let (sm, dm, cm, mm) = (
            ScaledMatrix::from_matrix(&s),
            ScaledMatrix::from_matrix(&d),
            ScaledMatrix::from_matrix(&cert.c),
            ScaledMatrix::from_matrix(&inst.matrix),
        );
        let (mut mn, mut dn, mut cn) = (mm.clone(), dm.clone(), cm.clone());
        let (mut rho_num_n, mut rho_den_n) = (rho_num.clone(), rho_den.clone());
        for n in 1..=HORIZON {
            if !mn.same_as(&sm.combine(&one, &dn, &one)) {
                failures.push(format!("case {i}: M^n != S + D^n at n = {n}"));
                continue 'cases;
            }
            // rho^n D^n = C^n - C^n S, cross-multiplied by the denominator of rho^n
            let lhs = dn.combine(&rho_num_n, &dn, &BigInt::from(0));
            let rhs = cn.combine(&rho_den_n, &cn.mul(&sm), &-&rho_den_n);
            if !lhs.same_as(&rhs) {
                failures.push(format!("case {i}: rho^n D^n != C^n - C^n S at n = {n}"));
                continue 'cases;
            }
            mn = mn.mul(&mm);
            dn = dn.mul(&dm);
            cn = cn.mul(&cm);
            rho_num_n *= &rho_num;
            rho_den_n *= &rho_den;
        }
    }
    outcome(
        &failures,
        format!("{BATCH}/{BATCH}: DS = SD = O, M^n = S + D^n, rho^n D^n = C^n - C^n S for n <= {HORIZON}"),
    )
}

fn criterion_5() -> Outcome {
    let curated: [(&str, Lrs, &[QueryKind]); 3] = [
        (
            "u_n = n - 2",
            Lrs::from_ints(&[-1, 2], &[-2, -1]).unwrap(),
            &[QueryKind::Equal, QueryKind::InfinitelyOftenLess],
        ),
        (
            "u_n = 2^-n",
            Lrs::new(vec![q(1, 2)], vec![Rational::one()]).unwrap(),
            &QueryKind::ALL,
        ),
        ("fibonacci", Lrs::fibonacci(), &QueryKind::ALL),
    ];
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (name, l, queries) in &curated {
        let terms = naive_terms(l, SCAN_HORIZON);
        for &query in *queries {
            let (inst, _) = build_instance(l, query).unwrap();
            let scan = query_scan(&inst, SCAN_HORIZON).unwrap();
            let expected: Vec<usize> = (1..=SCAN_HORIZON)
                .filter(|&n| match query {
                    QueryKind::Equal => terms[n].is_zero(),
                    QueryKind::Less | QueryKind::InfinitelyOftenLess => terms[n].is_negative(),
                })
                .collect();
            let expected_witness = expected.first().copied();
            let hits_ok = query != QueryKind::InfinitelyOftenLess || scan.hits == expected;
            if scan.witness != expected_witness || !hits_ok {
                failures.push(format!(
                    "{name} {query}: scan {:?}/{:?}, terms say {expected_witness:?}/{expected:?}",
                    scan.witness, scan.hits
                ));
            }
            notes.push(format!("{name} {query} -> {:?}", scan.witness));
        }
    }
    let (inst, _) = build_instance(&curated[0].1, QueryKind::Equal).unwrap();
    let m2 = entry_powers(&inst.matrix, inst.target, inst.source, 2)[2].clone();
    if (inst.target, inst.source) != (1, 2) || m2 != q(1, 3) || inst.threshold != q(1, 3) {
        failures.push(format!(
            "n - 2: expected m_12^(2) = r = 1/3, got m_{}{}^(2) = {m2}, r = {}",
            inst.target, inst.source, inst.threshold
        ));
    }
    outcome(
        &failures,
        format!(
            "n <= {SCAN_HORIZON}, m_12^(2) = r = 1/3; {}",
            notes.join(", ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut failures = Vec::new();
    let mut singular = 0;
    for case in 0..BATCH {
        let dim = rng.gen_range(1..=4);
        let m = sampling::stochastic_matrix(&mut rng, dim, 4);
        let (i, j) = (rng.gen_range(1..=dim), rng.gen_range(1..=dim));
        let r = sampling::rational(&mut rng, 4).abs();
        let (seq, shift) = reverse_reduce(&m, i, j, &r).unwrap();
        singular += usize::from(shift > 0);
        let direct = entry_powers(&m, i, j, REVERSE_HORIZON + shift);
        let terms = seq.eval_range(REVERSE_HORIZON);
        if let Some(n) = (0..=REVERSE_HORIZON).find(|&n| terms[n] != &direct[n + shift] - &r) {
            failures.push(format!(
                "case {case}: dim {dim}, mismatch at n = {}",
                n + shift
            ));
        }
    }
    outcome(
        &failures,
        format!(
            "{BATCH}/{BATCH} exact for n <= {REVERSE_HORIZON} ({singular} singular, shift > 0)"
        ),
    )
}

/// Infinitely many equalities iff some residue class `c mod p`, `p ≤ 12`,
/// is all-equal over the last half of a 200-step scan.
fn brute_force_infinite_equality(m: &Matrix, i: usize, j: usize, r: &Rational) -> bool {
    let vals = entry_powers(m, i, j, BRUTE_FORCE_STEPS);
    let tail = BRUTE_FORCE_STEPS / 2;
    (1..=12).any(|p| {
        (0..p).any(|c| {
            (tail..=BRUTE_FORCE_STEPS)
                .filter(|n| n % p == c)
                .all(|n| &vals[n] == r)
        })
    })
}

fn criterion_7() -> Outcome {
    let swap = Matrix::from_ints(&[[0, 1], [1, 0]]);
    let cycle = Matrix::from_ints(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    let lazy = Matrix::from_ratios(&[[(3, 4), (1, 4)], [(1, 4), (3, 4)]]);
    let rank_one = Matrix::from_ratios(&[[(1, 3), (1, 3)], [(2, 3), (2, 3)]]);
    let h = (1, 2);
    let z = (0, 1);
    let bipartite = Matrix::from_ratios(&[[z, z, h, h], [z, z, h, h], [h, h, z, z], [h, h, z, z]]);
    let (fib, _) = build_instance(&Lrs::fibonacci(), QueryKind::Equal).unwrap();
    let (skolem, _) = build_instance(
        &Lrs::from_ints(&[-1, 2], &[-2, -1]).unwrap(),
        QueryKind::Equal,
    )
    .unwrap();

    let cases: Vec<(&str, &Matrix, usize, usize, Rational)> = vec![
        ("swap m11 = 0", &swap, 1, 1, q(0, 1)),
        ("swap m11 = 1/2", &swap, 1, 1, q(1, 2)),
        ("3-cycle m11 = 0", &cycle, 1, 1, q(0, 1)),
        ("3-cycle m21 = 1", &cycle, 2, 1, q(1, 1)),
        ("lazy m11 = 1/2", &lazy, 1, 1, q(1, 2)),
        ("rank one m21 = 2/3", &rank_one, 2, 1, q(2, 3)),
        ("bipartite m11 = 1/2", &bipartite, 1, 1, q(1, 2)),
        ("bipartite m11 = 1/4", &bipartite, 1, 1, q(1, 4)),
        (
            "fibonacci chain",
            &fib.matrix,
            fib.target,
            fib.source,
            fib.threshold.clone(),
        ),
        (
            "n - 2 chain",
            &skolem.matrix,
            skolem.target,
            skolem.source,
            skolem.threshold.clone(),
        ),
    ];
    let mut failures = Vec::new();
    let mut yes = 0;
    for (name, m, i, j, r) in &cases {
        let decided = decide_infinite_equality(m, *i, *j, r).unwrap();
        let brute = brute_force_infinite_equality(m, *i, *j, r);
        yes += usize::from(brute);
        if decided != brute {
            failures.push(format!("{name}: decided {decided}, brute force {brute}"));
        }
    }
    outcome(
        &failures,
        format!(
            "{}/{} agree with a {BRUTE_FORCE_STEPS}-step scan ({yes} infinite, {} finite)",
            cases.len(),
            cases.len(),
            cases.len() - yes
        ),
    )
}

/// Half plain random sequences, half forced degenerate by substituting `x^e`
/// into a random characteristic polynomial of order `≤ 4/e`.
fn decomposition_batch() -> Vec<Lrs> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    (0..BATCH)
        .map(|i| {
            if i % 2 == 0 {
                let order = rng.gen_range(1..=4);
                sampling::lrs(&mut rng, order, BOUND)
            } else {
                let e = rng.gen_range(2..=4);
                let order = rng.gen_range(1..=4 / e);
                let base = sampling::lrs(&mut rng, order, BOUND).char_poly();
                let mut coeffs = vec![Rational::zero(); e * base.degree().unwrap() + 1];
                for (i, c) in base.coeffs().iter().enumerate() {
                    coeffs[e * i] = c.clone();
                }
                let p = Polynomial::new(coeffs);
                let k = p.degree().unwrap();
                let a = (0..k).map(|e| -p.coeff(e)).collect();
                let init = (0..k)
                    .map(|_| sampling::rational(&mut rng, BOUND))
                    .collect();
                Lrs::new(a, init).unwrap()
            }
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut max_stride = 1;
    for (case, l) in decomposition_batch().iter().enumerate() {
        let comps = sml_decompose(l).unwrap();
        let stride = comps[0].stride;
        max_stride = max_stride.max(stride);
        let terms = naive_terms(l, DECOMPOSITION_HORIZON * stride + stride);
        for c in &comps {
            if !degeneracy_orders(&c.component).unwrap().is_empty() {
                failures.push(format!("case {case}: offset {} still degenerate", c.offset));
            }
            let sub = naive_terms(&c.component, DECOMPOSITION_HORIZON);
            if (0..=DECOMPOSITION_HORIZON).any(|n| sub[n] != terms[n * stride + c.offset]) {
                failures.push(format!(
                    "case {case}: offset {} of stride {stride} disagrees",
                    c.offset
                ));
            }
        }
    }
    outcome(
        &failures,
        format!("{BATCH}/{BATCH} components non-degenerate, strided terms exact for n <= {DECOMPOSITION_HORIZON} (max stride {max_stride})"),
    )
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lrs-markov");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let tmp = tempfile::tempdir().unwrap();
    let random = tmp.path().join("random.json");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    fs::write(
        &random,
        serde_json::to_string(&sampling::lrs(&mut rng, 4, BOUND)).unwrap(),
    )
    .unwrap();

    let inputs = [
        (data.join("fibonacci.json"), "equal"),
        (data.join("rotation.json"), "equal"),
        (data.join("linear.json"), "infinitely-often-less"),
        (data.join("decay.json"), "less"),
        (random, "equal"),
    ];
    let mut failures = Vec::new();
    let mut files = 0;
    for (idx, (input, query)) in inputs.iter().enumerate() {
        let mut runs = Vec::new();
        for run in 0..2 {
            let out = tmp.path().join(format!("{idx}-{run}"));
            let status = Command::new(bin)
                .args([
                    "reduce",
                    input.to_str().unwrap(),
                    "--query",
                    query,
                    "--out",
                    out.to_str().unwrap(),
                ])
                .output()
                .unwrap();
            // stdout names the output directory; normalise it before comparing
            let text = String::from_utf8(status.stdout)
                .unwrap()
                .replace(out.to_str().unwrap(), "<out>");
            runs.push((text, snapshot(&out)));
        }
        files += runs[0].1.len();
        if runs[0] != runs[1] {
            failures.push(format!("{} differs between runs", input.display()));
        }
    }
    let selftest: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            Command::new(bin)
                .args(["selftest", "--seed", "5"])
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    if selftest[0] != selftest[1] {
        failures.push("selftest output differs".into());
    }
    outcome(
        &failures,
        format!(
            "{files} artifacts over {} inputs byte-identical; selftest stdout identical",
            inputs.len()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let batch = generated_batch();
    eprintln!("generated {BATCH} instances in {:.1?}", start.elapsed());
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: [Criterion; 9] = [
        ("order k+1", Box::new(|| criterion_1(&batch))),
        ("ergodic with N = 1", Box::new(|| criterion_2(&batch))),
        ("correspondence identity", Box::new(|| criterion_3(&batch))),
        ("proof identities", Box::new(|| criterion_4(&batch))),
        ("query equivalence", Box::new(criterion_5)),
        ("reverse reduction", Box::new(criterion_6)),
        ("infinite equality", Box::new(criterion_7)),
        ("decomposition soundness", Box::new(criterion_8)),
        ("determinism", Box::new(criterion_9)),
    ];
    let mut all = true;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "criterion {} [{name}] tolerance=0 (exact): {} - {} [{:.1?}]",
            idx + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
    }
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
