//! Seeded randomized property suites, run by the `selftest` command.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{check_ergodicity, reverse_reduce, verify_certificate};
use crate::degeneracy::sml_decompose;
use crate::error::Result;
use crate::kernel::Matrix;
use crate::reduction::{build_instance, QueryKind};
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

impl fmt::Display for SelftestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {}", self.seed)?;
        for s in &self.suites {
            let ok = s.cases - s.failures.len();
            writeln!(f, "  {:<28} {ok}/{} passed", s.name, s.cases)?;
            for msg in &s.failures {
                writeln!(f, "    failure: {msg}")?;
            }
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn suite(
    name: &'static str,
    cases: usize,
    rng: &mut ChaCha8Rng,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
) -> SuiteResult {
    let failures = (0..cases)
        .filter_map(|i| match case(rng) {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("case {i}: {msg}")),
            Err(e) => Some(format!("case {i}: error: {e}")),
        })
        .collect();
    SuiteResult {
        name,
        cases,
        failures,
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let data = (0..dim * dim).map(|_| sampling::rational(rng, 6)).collect();
    Matrix::new(dim, dim, data).expect("shape")
}

/// Runs every suite with `cases` random cases each.
pub fn run(seed: u64, cases: usize) -> SelftestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();

    suites.push(suite("power additivity", cases, &mut rng, |rng| {
        let dim = rng.gen_range(1..=3);
        let m = random_matrix(rng, dim);
        let (a, b) = (rng.gen_range(0..6u64), rng.gen_range(0..6u64));
        let lhs = m.pow(a + b)?;
        let rhs = m.pow(a)?.checked_mul(&m.pow(b)?)?;
        Ok((lhs != rhs).then(|| format!("M^{a}·M^{b} ≠ M^{}", a + b)))
    }));

    suites.push(suite("cayley-hamilton", cases, &mut rng, |rng| {
        let dim = rng.gen_range(1..=5);
        let m = random_matrix(rng, dim);
        let zero = m.eval_poly(&m.char_poly()?)?.is_zero();
        Ok((!zero).then(|| "p(M) ≠ O".to_string()))
    }));

    suites.push(suite("reduction identities", cases, &mut rng, |rng| {
        let k = rng.gen_range(1..=4);
        let l = sampling::reducible_lrs(rng, k, 10);
        let (inst, cert) = build_instance(&l, QueryKind::Equal)?;
        let report = verify_certificate(&l, &inst, &cert, 15)?;
        let erg = check_ergodicity(&inst.matrix, 1)?;
        if !report.passed() {
            let names: Vec<_> = report.failures().map(|c| c.name).collect();
            return Ok(Some(format!("order {k}: failed {names:?}")));
        }
        Ok((erg.witness != Some(1))
            .then(|| format!("order {k}: ergodicity witness {:?}", erg.witness)))
    }));

    suites.push(suite("reverse reduction", cases, &mut rng, |rng| {
        let dim = rng.gen_range(1..=4);
        let m = sampling::stochastic_matrix(rng, dim, 5);
        let (i, j) = (rng.gen_range(1..=dim), rng.gen_range(1..=dim));
        let r = sampling::rational(rng, 4).abs();
        let (seq, shift) = reverse_reduce(&m, i, j, &r)?;
        let terms = seq.eval_range(20);
        let mut power = m.pow(shift as u64)?;
        for (n, t) in terms.iter().enumerate() {
            if &(power.get(i - 1, j - 1) - &r) != t {
                return Ok(Some(format!("dim {dim}: mismatch at n = {}", n + shift)));
            }
            power = power.checked_mul(&m)?;
        }
        Ok(None)
    }));

    suites.push(suite("decomposition strides", cases, &mut rng, |rng| {
        let order = rng.gen_range(1..=3);
        let l = sampling::lrs(rng, order, 4);
        let comps = sml_decompose(&l)?;
        let stride = comps[0].stride;
        let all = l.eval_range(20 * stride + stride);
        for c in &comps {
            let sub = c.component.eval_range(20);
            if sub
                .iter()
                .enumerate()
                .any(|(n, t)| t != &all[n * stride + c.offset])
            {
                return Ok(Some(format!(
                    "offset {} of stride {stride} disagrees",
                    c.offset
                )));
            }
        }
        Ok(None)
    }));

    SelftestSummary { seed, suites }
}
