//! Construction of an ergodic Markov chain of order `k + 1` from an LRS of
//! order `k`.
//!
//! The chain is `M = S + D` where `S = s·1ᵀ` has the uniform stationary
//! distribution in every column and `D = (C − CS)/ρ` is a disturbance
//! annihilated by `S` on both sides. Then `Mⁿ = S + Dⁿ` and, for the chosen
//! source column `j`, `m_1j⁽ⁿ⁾ − s_1 = η·u_n/ρⁿ` for every `n ≥ 1`.
//!
//! `C` embeds `B = F⁻¹AF` (a diagonal rescaling of the companion matrix) as
//!
//! ```text
//!     C = [   B    0 ]
//!         [ −1ᵀB   0 ]
//! ```
//!
//! so its columns sum to zero, and `F` is chosen so that the first `k`
//! entries of column `j` of `I − S` are mapped onto `η·u`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational};
use crate::lrs::Lrs;

/// Which Markov reachability question an instance encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum QueryKind {
    /// Is `m_ij⁽ⁿ⁾ = r` for some `n ≥ 1`? (Skolem)
    #[default]
    Equal,
    /// Is `m_ij⁽ⁿ⁾ < r` for some `n ≥ 1`? (complement of Positivity)
    Less,
    /// Is `m_ij⁽ⁿ⁾ < r` for infinitely many `n`? (complement of Ultimate
    /// Positivity)
    InfinitelyOftenLess,
}

impl QueryKind {
    pub const ALL: [QueryKind; 3] = [
        QueryKind::Equal,
        QueryKind::Less,
        QueryKind::InfinitelyOftenLess,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::Equal => "equal",
            QueryKind::Less => "less",
            QueryKind::InfinitelyOftenLess => "infinitely-often-less",
        }
    }

    /// Does the value `m` hit this query against threshold `r`?
    pub fn holds(self, m: &Rational, r: &Rational) -> bool {
        match self {
            QueryKind::Equal => m == r,
            QueryKind::Less | QueryKind::InfinitelyOftenLess => m < r,
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QueryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QueryKind::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown query {s:?}; expected equal, less or infinitely-often-less"
                ))
            })
    }
}

/// A Markov reachability instance: is `m_target,source⁽ⁿ⁾` equal to / below
/// `threshold`? Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRecord", into = "InstanceRecord")]
pub struct MarkovInstance {
    pub matrix: Matrix,
    pub source: usize,
    pub target: usize,
    pub threshold: Rational,
    pub query: QueryKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceRecord {
    dimension: usize,
    matrix: Matrix,
    source: usize,
    target: usize,
    threshold: Rational,
    query: QueryKind,
}

impl TryFrom<InstanceRecord> for MarkovInstance {
    type Error = Error;

    fn try_from(r: InstanceRecord) -> Result<Self> {
        if !r.matrix.is_square() || r.matrix.rows() != r.dimension {
            return Err(Error::DimensionMismatch(format!(
                "dimension {} but matrix is {}x{}",
                r.dimension,
                r.matrix.rows(),
                r.matrix.cols()
            )));
        }
        for index in [r.source, r.target] {
            if index == 0 || index > r.dimension {
                return Err(Error::IndexOutOfRange {
                    index,
                    dim: r.dimension,
                });
            }
        }
        Ok(MarkovInstance {
            matrix: r.matrix,
            source: r.source,
            target: r.target,
            threshold: r.threshold,
            query: r.query,
        })
    }
}

impl From<MarkovInstance> for InstanceRecord {
    fn from(i: MarkovInstance) -> Self {
        InstanceRecord {
            dimension: i.matrix.rows(),
            matrix: i.matrix,
            source: i.source,
            target: i.target,
            threshold: i.threshold,
            query: i.query,
        }
    }
}

impl MarkovInstance {
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// `m_target,source` of `M`, 0-based lookup of the 1-based indices.
    pub fn entry_of(&self, power: &Matrix) -> Rational {
        power.get(self.target - 1, self.source - 1).clone()
    }
}

/// Column `j` of `I − S` with its last entry deleted, together with the
/// scale `η` that maps it onto the initial-term vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    /// 1-based column index `j`.
    pub column: usize,
    pub eta: Rational,
    pub entries: Vec<Rational>,
}

/// Every intermediate object of the construction, sufficient to re-check the
/// instance against the sequence it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionCertificate {
    /// The (windowed) sequence the instance encodes.
    pub sequence: Lrs,
    pub stationary: Vec<Rational>,
    #[serde(rename = "S")]
    pub s: Matrix,
    pub anchor_column: usize,
    pub anchor: Vec<Rational>,
    pub eta: Rational,
    #[serde(rename = "F")]
    pub f: Matrix,
    #[serde(rename = "B")]
    pub b: Matrix,
    #[serde(rename = "C")]
    pub c: Matrix,
    pub gamma: Rational,
    pub sigma: Rational,
    pub rho: Rational,
    #[serde(rename = "D")]
    pub d: Matrix,
}

impl ReductionCertificate {
    /// `S + D`.
    pub fn markov_matrix(&self) -> Result<Matrix> {
        self.s.checked_add(&self.d)
    }
}

/// The uniform stationary distribution on `dim` states.
pub fn uniform_stationary(dim: usize) -> Vec<Rational> {
    vec![Rational::new(1, dim as i64).expect("dim > 0"); dim]
}

fn require_nonzero_window(l: &Lrs) -> Result<()> {
    match l.initial().iter().position(Rational::is_zero) {
        Some(index) => Err(Error::ZeroInitialTerm { index }),
        None => Ok(()),
    }
}

/// Picks the source column `j` and scale `η > 0` so that `η·u_0` equals the
/// first entry of column `j` of `I − S`.
pub fn choose_anchor(l: &Lrs) -> Result<Anchor> {
    require_nonzero_window(l)?;
    let k = l.order();
    let s = Rational::new(1, (k + 1) as i64)?;
    let u0 = &l.initial()[0];
    let (column, eta) = if u0.is_positive() {
        (1, (Rational::one() - &s) / u0)
    } else {
        (2, -&s / u0)
    };
    let entries = (1..=k)
        .map(|row| {
            if row == column {
                Rational::one() - &s
            } else {
                -&s
            }
        })
        .collect();
    Ok(Anchor {
        column,
        eta,
        entries,
    })
}

/// Runs the construction on a sequence whose `k` initial terms are nonzero.
/// Degeneracy is not re-checked here.
pub fn build_certificate(l: &Lrs) -> Result<ReductionCertificate> {
    let anchor = choose_anchor(l)?;
    let k = l.order();
    let dim = k + 1;
    let u = l.initial();

    let mut f_diag = Vec::with_capacity(k);
    f_diag.push(Rational::one());
    for (u_l, mu) in u.iter().zip(&anchor.entries).skip(1) {
        f_diag.push(&anchor.eta * u_l / mu);
    }
    let f_inv_diag = f_diag
        .iter()
        .map(Rational::recip)
        .collect::<Result<Vec<_>>>()?;
    let f = Matrix::diagonal(&f_diag);
    let b = &(&Matrix::diagonal(&f_inv_diag) * &l.companion_matrix()) * &f;

    let mut c = Matrix::zeros(dim, dim);
    let b_col_sums = b.column_sums();
    for (col, sum) in b_col_sums.iter().enumerate() {
        for row in 0..k {
            c.set(row, col, b.get(row, col).clone());
        }
        c.set(k, col, -sum);
    }

    let stationary = uniform_stationary(dim);
    let ones = vec![Rational::one(); dim];
    let s = Matrix::outer(&stationary, &ones);
    let disturbance = &c - &(&c * &s);
    let gamma = disturbance.max_abs();
    if gamma.is_zero() {
        return Err(Error::Internal(
            "C − CS vanished; a_0 ≠ 0 should prevent this".into(),
        ));
    }
    let sigma = s.min_entry().expect("nonempty");
    let rho = Rational::from(2) * &gamma / &sigma;
    let d = disturbance.scale(&rho.recip()?);

    Ok(ReductionCertificate {
        sequence: l.clone(),
        stationary,
        s,
        anchor_column: anchor.column,
        anchor: anchor.entries,
        eta: anchor.eta,
        f,
        b,
        c,
        gamma,
        sigma,
        rho,
        d,
    })
}

/// Builds the instance for `query` together with its certificate.
///
/// `Less` additionally requires every initial term to be positive: a
/// non-positive term already settles that question.
pub fn build_instance(l: &Lrs, query: QueryKind) -> Result<(MarkovInstance, ReductionCertificate)> {
    require_nonzero_window(l)?;
    if query == QueryKind::Less {
        if let Some(index) = l.initial().iter().position(|u| !u.is_positive()) {
            return Err(Error::NonPositiveInitialTerm {
                index,
                value: l.initial()[index].clone(),
            });
        }
    }
    let cert = build_certificate(l)?;
    let matrix = cert.markov_matrix()?;
    let target = 1;
    let threshold = cert.stationary[target - 1].clone();
    let instance = MarkovInstance {
        matrix,
        source: cert.anchor_column,
        target,
        threshold,
        query,
    };
    Ok((instance, cert))
}
