//! Exact verification of instances and certificates, ergodicity witnesses,
//! bounded witness scans, and the reverse (chain → sequence) reduction.

use std::collections::HashSet;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::degeneracy::sml_decompose;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Polynomial, Rational};
use crate::lrs::Lrs;
use crate::reduction::{MarkovInstance, QueryKind, ReductionCertificate};

/// Default number of powers checked by [`verify_certificate`].
pub const DEFAULT_HORIZON: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub horizon: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "overall: {overall} (horizon {})", self.horizon)
    }
}

// {"horizon": N, "overall": "pass", "checks": {name: {"pass": bool, "detail": ...}, ...}}
impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Checks<'a>(&'a [Check]);
        #[derive(Serialize)]
        struct Entry<'a> {
            pass: bool,
            detail: &'a str,
        }
        impl Serialize for Checks<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for c in self.0 {
                    map.serialize_entry(
                        c.name,
                        &Entry {
                            pass: c.passed,
                            detail: &c.detail,
                        },
                    )?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("horizon", &self.horizon)?;
        map.serialize_entry("overall", if self.passed() { "pass" } else { "fail" })?;
        map.serialize_entry("checks", &Checks(&self.checks))?;
        map.end()
    }
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

fn verdict(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> (bool, String) {
    if ok {
        (true, pass.into())
    } else {
        (false, fail.into())
    }
}

/// Checks every identity of the construction exactly, including
/// `Mⁿ = S + Dⁿ`, `ρⁿDⁿ = Cⁿ(I − S)` and `m_ij⁽ⁿ⁾ − r = η·u_n/ρⁿ` for
/// `1 ≤ n ≤ horizon`.
pub fn verify_certificate(
    l: &Lrs,
    inst: &MarkovInstance,
    cert: &ReductionCertificate,
    horizon: usize,
) -> Result<VerificationReport> {
    let k = l.order();
    let dim = k + 1;
    let square = |m: &Matrix, n: usize, what: &str| -> Result<()> {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{what} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    };
    square(&inst.matrix, dim, "instance matrix")?;
    for (m, what) in [(&cert.s, "S"), (&cert.c, "C"), (&cert.d, "D")] {
        square(m, dim, what)?;
    }
    square(&cert.f, k, "F")?;
    square(&cert.b, k, "B")?;
    if cert.stationary.len() != dim || cert.anchor.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "stationary has {} entries and anchor {}, expected {dim} and {k}",
            cert.stationary.len(),
            cert.anchor.len()
        )));
    }
    for index in [inst.source, inst.target] {
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
    }

    let m = &inst.matrix;
    let identity = Matrix::identity(dim);
    let uniform = Rational::new(1, dim as i64)?;
    let ones = vec![Rational::one(); dim];
    let mut ck = Checker { checks: Vec::new() };

    ck.run("sequence", || {
        Ok(verdict(
            &cert.sequence == l,
            "certificate records the verified sequence",
            "certificate sequence differs from the one being verified",
        ))
    });

    ck.run("stationary-uniform", || {
        let uniform_ok = cert.stationary.iter().all(|s| s == &uniform);
        let outer_ok = cert.s == Matrix::outer(&cert.stationary, &ones);
        Ok(verdict(
            uniform_ok && outer_ok,
            format!("s = {uniform}·1, S = s·1ᵀ"),
            "S is not s·1ᵀ with uniform s",
        ))
    });

    ck.run("anchor", || {
        let j = cert.anchor_column;
        if j == 0 || j > dim {
            return Ok((false, format!("anchor column {j} out of range")));
        }
        let expected: Vec<Rational> = (0..k)
            .map(|row| identity.get(row, j - 1) - cert.s.get(row, j - 1))
            .collect();
        Ok(verdict(
            expected == cert.anchor && inst.source == j && inst.target == 1,
            format!("y_{j} = first {k} entries of (I − S)e_{j}; i = 1, j = {j}"),
            format!(
                "anchor or indices inconsistent (source {}, target {}, anchor column {j})",
                inst.source, inst.target
            ),
        ))
    });

    ck.run("eta", || {
        let u0 = &l.initial()[0];
        let ok = cert.eta.is_positive()
            && !cert.anchor[0].is_zero()
            && &cert.eta * u0 / &cert.anchor[0] == Rational::one();
        Ok(verdict(
            ok,
            format!("η = {} > 0, η·u_0/μ_1 = 1", cert.eta),
            format!("η = {} fails η > 0 or η·u_0/μ_1 = 1", cert.eta),
        ))
    });

    ck.run("F", || {
        let diagonal = (0..k).all(|r| (0..k).all(|c| r == c || cert.f.get(r, c).is_zero()));
        let invertible = (0..k).all(|i| !cert.f.get(i, i).is_zero());
        let fy = cert.f.mul_vec(&cert.anchor)?;
        let eta_u: Vec<Rational> = l.initial().iter().map(|u| &cert.eta * u).collect();
        Ok(verdict(
            diagonal && invertible && cert.f.get(0, 0).is_one() && fy == eta_u,
            "F diagonal, invertible, f_11 = 1, F·y_j = η·u",
            "F fails diagonal/invertible/f_11 = 1/F·y_j = η·u",
        ))
    });

    ck.run("B", || {
        let a = l.companion_matrix();
        Ok(verdict(
            cert.f.checked_mul(&cert.b)? == a.checked_mul(&cert.f)?,
            "F·B = A·F, i.e. B = F⁻¹AF",
            "B is not F⁻¹AF",
        ))
    });

    ck.run("C", || {
        let mut expected = Matrix::zeros(dim, dim);
        let sums = cert.b.column_sums();
        for (col, sum) in sums.iter().enumerate() {
            for row in 0..k {
                expected.set(row, col, cert.b.get(row, col).clone());
            }
            expected.set(k, col, -sum);
        }
        let zero_sums = cert.c.column_sums().iter().all(Rational::is_zero);
        Ok(verdict(
            expected == cert.c && zero_sums,
            "C = [[B, 0], [−1ᵀB, 0]], 1ᵀC = 0ᵀ",
            "C is not the block embedding of B",
        ))
    });

    let disturbance = cert.c.checked_sub(&cert.c.checked_mul(&cert.s)?)?;

    ck.run("rho", || {
        let gamma = disturbance.max_abs();
        let sigma = cert.s.min_entry().unwrap_or_else(Rational::zero);
        let ok = gamma == cert.gamma
            && sigma == cert.sigma
            && !sigma.is_zero()
            && cert.rho == Rational::from(2) * &gamma / &sigma;
        Ok(verdict(
            ok,
            format!("γ = {gamma}, σ = {sigma}, ρ = 2γ/σ = {}", cert.rho),
            format!(
                "recorded γ = {}, σ = {}, ρ = {}; recomputed γ = {gamma}, σ = {sigma}",
                cert.gamma, cert.sigma, cert.rho
            ),
        ))
    });

    ck.run("D", || {
        Ok(verdict(
            !cert.rho.is_zero() && cert.d.scale(&cert.rho) == disturbance,
            "ρ·D = C − CS",
            "D is not (C − CS)/ρ",
        ))
    });

    ck.run("M=S+D", || {
        Ok(verdict(
            cert.markov_matrix()? == *m,
            "instance matrix equals S + D",
            "instance matrix differs from S + D",
        ))
    });

    ck.run("threshold", || {
        let expected = cert.s.get(inst.target - 1, inst.source - 1);
        let in_range = inst.threshold.is_positive() && inst.threshold < Rational::one();
        Ok(verdict(
            &inst.threshold == expected && in_range,
            format!("r = s_ij = {}", inst.threshold),
            format!("r = {} but s_ij = {expected}", inst.threshold),
        ))
    });

    ck.run("column-sums", || {
        let bad: Vec<usize> = m
            .column_sums()
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_one())
            .map(|(c, _)| c + 1)
            .collect();
        Ok(verdict(
            bad.is_empty(),
            "every column of M sums to 1",
            format!("columns {bad:?} do not sum to 1"),
        ))
    });

    ck.run("positivity", || {
        let min = m.min_entry().unwrap_or_else(Rational::zero);
        Ok(verdict(
            min.is_positive(),
            format!("min entry {min} > 0, ergodic with N = 1"),
            format!("min entry {min} is not positive"),
        ))
    });

    ck.run("DS=SD=O", || {
        let ds = cert.d.checked_mul(&cert.s)?;
        let sd = cert.s.checked_mul(&cert.d)?;
        Ok(verdict(
            ds.is_zero() && sd.is_zero(),
            "DS = SD = O",
            "DS or SD is nonzero",
        ))
    });

    ck.run("stationarity", || {
        Ok(verdict(
            m.mul_vec(&cert.stationary)? == cert.stationary,
            "M·s = s",
            "M·s ≠ s",
        ))
    });

    ck.run("n=0", || {
        let r = &inst.threshold;
        let not_trivial = !r.is_zero() && !r.is_one();
        let m0 = if inst.source == inst.target {
            Rational::one()
        } else {
            Rational::zero()
        };
        let ok = match inst.query {
            QueryKind::Equal | QueryKind::InfinitelyOftenLess => not_trivial,
            QueryKind::Less => not_trivial && inst.source == 1 && m0 > *r,
        };
        Ok(verdict(
            ok,
            format!("m_ij^(0) = {m0} cannot witness the {} query", inst.query),
            format!("n = 0 could spuriously witness the {} query", inst.query),
        ))
    });

    // Power identities, accumulated incrementally.
    let mut m_pow = Matrix::identity(dim);
    let mut d_pow = Matrix::identity(dim);
    let mut c_pow = Matrix::identity(dim);
    let mut rho_pow = Rational::one();
    let i_minus_s = identity.checked_sub(&cert.s)?;
    let terms = l.eval_range(horizon);
    let mut first_power_bad = None;
    let mut first_proof_bad = None;
    let mut first_corr_bad = None;
    let mut samples = Vec::new();
    for (n, u_n) in terms.iter().enumerate().skip(1) {
        m_pow = m_pow.checked_mul(m)?;
        d_pow = d_pow.checked_mul(&cert.d)?;
        c_pow = c_pow.checked_mul(&cert.c)?;
        rho_pow *= &cert.rho;
        if first_power_bad.is_none() && m_pow != cert.s.checked_add(&d_pow)? {
            first_power_bad = Some(n);
        }
        if first_proof_bad.is_none() && d_pow.scale(&rho_pow) != c_pow.checked_mul(&i_minus_s)? {
            first_proof_bad = Some(n);
        }
        let entry = inst.entry_of(&m_pow);
        if samples.len() < 3 {
            samples.push(format!("m_{}{}^({n}) = {entry}", inst.target, inst.source));
        }
        if first_corr_bad.is_none() && &entry - &inst.threshold != &cert.eta * u_n / &rho_pow {
            first_corr_bad = Some(n);
        }
    }

    ck.run("M^n=S+D^n", || {
        Ok(match first_power_bad {
            None => (true, format!("holds for 1 <= n <= {horizon}")),
            Some(n) => (false, format!("fails at n = {n}")),
        })
    });

    ck.run("rho^nD^n=C^n(I-S)", || {
        Ok(match first_proof_bad {
            None => (true, format!("holds for 1 <= n <= {horizon}")),
            Some(n) => (false, format!("fails at n = {n}")),
        })
    });

    ck.run("correspondence", || {
        Ok(match first_corr_bad {
            None => (
                true,
                format!(
                    "m_ij^(n) − r = η·u_n/ρ^n for 1 <= n <= {horizon}; {}",
                    samples.join(", ")
                ),
            ),
            Some(n) => (false, format!("m_ij^(n) − r ≠ η·u_n/ρ^n at n = {n}")),
        })
    });

    Ok(VerificationReport {
        checks: ck.checks,
        horizon,
    })
}

/// Fails unless `m` is square, entrywise non-negative, and every column sums
/// to 1.
pub fn require_stochastic(m: &Matrix) -> Result<()> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::NotStochastic(format!(
            "expected a nonempty square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if let Some(bad) = m.entries().iter().position(Rational::is_negative) {
        let (r, c) = (bad / m.cols() + 1, bad % m.cols() + 1);
        return Err(Error::NotStochastic(format!(
            "entry ({r}, {c}) = {} is negative",
            m.entries()[bad]
        )));
    }
    if let Some((c, sum)) = m
        .column_sums()
        .iter()
        .enumerate()
        .find(|(_, s)| !s.is_one())
    {
        return Err(Error::NotStochastic(format!(
            "column {} sums to {sum}",
            c + 1
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErgodicityReport {
    pub ergodic: bool,
    /// Least `N` with `M^N` entrywise positive.
    pub witness: Option<usize>,
    pub reason: Option<String>,
}

/// Wielandt's bound: a primitive `d × d` matrix has a positive power at
/// exponent `(d − 1)² + 1`, so this budget is always sufficient.
pub fn wielandt_bound(dim: usize) -> usize {
    (dim.saturating_sub(1)).pow(2) + 1
}

/// Searches for the least `N ≤ budget` with `M^N` entrywise positive.
///
/// Only the zero pattern of the powers matters for a non-negative matrix, so
/// the search runs on boolean supports.
pub fn check_ergodicity(m: &Matrix, budget: usize) -> Result<ErgodicityReport> {
    require_stochastic(m)?;
    let n = m.rows();
    let base: Vec<bool> = m.entries().iter().map(Rational::is_positive).collect();
    let mut pattern = base.clone();
    let mut seen = HashSet::new();
    for power in 1..=budget {
        if pattern.iter().all(|&b| b) {
            return Ok(ErgodicityReport {
                ergodic: true,
                witness: Some(power),
                reason: None,
            });
        }
        if !seen.insert(pattern.clone()) {
            return Ok(ErgodicityReport {
                ergodic: false,
                witness: None,
                reason: Some(format!(
                    "zero pattern repeats by power {power} without becoming positive: {}",
                    render_pattern(&pattern, n)
                )),
            });
        }
        let mut next = vec![false; n * n];
        for r in 0..n {
            for c in 0..n {
                next[r * n + c] = (0..n).any(|k| pattern[r * n + k] && base[k * n + c]);
            }
        }
        pattern = next;
    }
    Ok(ErgodicityReport {
        ergodic: false,
        witness: None,
        reason: Some(format!(
            "no positive power within budget {budget}; pattern reached: {}",
            render_pattern(&pattern, n)
        )),
    })
}

fn render_pattern(p: &[bool], n: usize) -> String {
    p.chunks(n)
        .map(|row| {
            row.iter()
                .map(|&b| if b { '+' } else { '0' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn check_index(index: usize, dim: usize) -> Result<usize> {
    if index == 0 || index > dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    Ok(index - 1)
}

/// A sequence `w` with `w_n = m_ij⁽ⁿ⁺ᵗ⁾ − r`, where `t` is the returned
/// start shift. Indices are 1-based.
///
/// `(x − 1)·det(xI − M)` annihilates `n ↦ m_ij⁽ⁿ⁾ − r` by Cayley–Hamilton;
/// factors of `x` (from a singular `M`) are stripped and compensated by `t`.
pub fn reverse_reduce(m: &Matrix, i: usize, j: usize, r: &Rational) -> Result<(Lrs, usize)> {
    require_stochastic(m)?;
    let dim = m.rows();
    let (ti, sj) = (check_index(i, dim)?, check_index(j, dim)?);
    let annihilator = &Polynomial::linear(&Rational::one()) * &m.char_poly()?;
    let (reduced, start_shift) = annihilator.strip_x_factors();
    let order = reduced.degree().expect("has the root 1");
    let lc = reduced.leading_coeff();
    let coefficients: Vec<Rational> = reduced.coeffs()[..order]
        .iter()
        .map(|c| -(c / &lc))
        .collect();

    let mut column: Vec<Rational> = (0..dim)
        .map(|row| {
            if row == sj {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut initial = Vec::with_capacity(order);
    for n in 0..start_shift + order {
        if n >= start_shift {
            initial.push(&column[ti] - r);
        }
        column = m.mul_vec(&column)?;
    }
    Ok((Lrs::new(coefficients, initial)?, start_shift))
}

/// Whether `m_ij⁽ⁿ⁾ = r` for infinitely many `n`: true exactly when some
/// stride component of the reverse-reduced sequence is identically zero.
pub fn decide_infinite_equality(m: &Matrix, i: usize, j: usize, r: &Rational) -> Result<bool> {
    let (seq, _) = reverse_reduce(m, i, j, r)?;
    Ok(sml_decompose(&seq)?.iter().any(|c| c.identically_zero))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub query: QueryKind,
    pub horizon: usize,
    /// Least `n` in `1..=horizon` satisfying the query comparison.
    pub witness: Option<usize>,
    /// Every hit up to the horizon for `InfinitelyOftenLess`; otherwise just
    /// the witness.
    pub hits: Vec<usize>,
}

impl fmt::Display for ScanResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(n) => write!(f, "{} query: witness at n = {n}", self.query)?,
            None => write!(
                f,
                "{} query: no witness for 1 <= n <= {} (a bounded search decides nothing)",
                self.query, self.horizon
            )?,
        }
        if self.query == QueryKind::InfinitelyOftenLess {
            write!(
                f,
                "\n{} hits up to the horizon (diagnostic only): {:?}",
                self.hits.len(),
                self.hits
            )?;
        }
        Ok(())
    }
}

/// Bounded search for `n ≥ 1` satisfying the instance's comparison.
pub fn query_scan(inst: &MarkovInstance, horizon: usize) -> Result<ScanResult> {
    let dim = inst.dimension();
    let (ti, sj) = (
        check_index(inst.target, dim)?,
        check_index(inst.source, dim)?,
    );
    let mut column: Vec<Rational> = (0..dim)
        .map(|row| {
            if row == sj {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut hits = Vec::new();
    for n in 1..=horizon {
        column = inst.matrix.mul_vec(&column)?;
        if inst.query.holds(&column[ti], &inst.threshold) {
            hits.push(n);
            if inst.query != QueryKind::InfinitelyOftenLess {
                break;
            }
        }
    }
    Ok(ScanResult {
        query: inst.query,
        horizon,
        witness: hits.first().copied(),
        hits,
    })
}

/// `max |entry of Mⁿ − S|`, the distance of the `n`-th power from its limit.
pub fn distance_to_stationary(m: &Matrix, s: &Matrix, n: u64) -> Result<Rational> {
    Ok(m.pow(n)?.checked_sub(s)?.max_abs())
}
