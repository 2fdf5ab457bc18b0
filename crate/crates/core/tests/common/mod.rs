//! Independent oracles and proptest strategies shared by the integration
//! tests. Nothing here calls the algorithms under test.
#![allow(dead_code)]

use lrs_markov::{Lrs, Matrix, Polynomial, Rational};
use proptest::prelude::*;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::ratio(p, d)
}

pub fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(p, d)| Rational::ratio(p, d))
}

pub fn nonzero_rational(bound: i64) -> impl Strategy<Value = Rational> {
    rational(bound).prop_filter("nonzero", |r| !r.is_zero())
}

pub fn square_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(rational(bound), n * n)
            .prop_map(move |data| Matrix::new(n, n, data).unwrap())
    })
}

pub fn polynomial(max_deg: usize, bound: i64) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(rational(bound), 1..=max_deg + 1).prop_map(Polynomial::new)
}

pub fn lrs(max_order: usize, bound: i64) -> impl Strategy<Value = Lrs> {
    (1..=max_order).prop_flat_map(move |k| {
        (
            nonzero_rational(bound),
            proptest::collection::vec(rational(bound), k - 1),
            proptest::collection::vec(rational(bound), k),
        )
            .prop_map(|(a0, rest, init)| {
                let mut coeffs = vec![a0];
                coeffs.extend(rest);
                Lrs::new(coeffs, init).unwrap()
            })
    })
}

/// Terms by the defining recurrence, nothing else.
pub fn naive_terms(l: &Lrs, n_max: usize) -> Vec<Rational> {
    let k = l.order();
    let a = l.coefficients();
    let mut u: Vec<Rational> = l.initial().to_vec();
    while u.len() <= n_max {
        let n = u.len() - k;
        let next = (0..k).map(|i| &a[i] * &u[n + i]).sum();
        u.push(next);
    }
    u.truncate(n_max + 1);
    u
}

pub fn naive_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination with exact pivots.
pub fn det_gauss(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][c] * &det_cofactor(&minor);
            if c % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// The Sylvester matrix of `p` (degree m) and `q` (degree n), m + n rows.
pub fn sylvester(p: &Polynomial, q: &Polynomial) -> Vec<Vec<Rational>> {
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Rational::zero(); size];
        for i in 0..=m {
            row[shift + i] = p.coeff(m - i);
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Rational::zero(); size];
        for i in 0..=n {
            row[shift + i] = q.coeff(n - i);
        }
        rows.push(row);
    }
    rows
}

/// `m_ij⁽ⁿ⁾` for `n = 0..=n_max` by repeated naive multiplication (1-based).
pub fn entry_powers(m: &Matrix, i: usize, j: usize, n_max: usize) -> Vec<Rational> {
    let rows = m.to_rows();
    let dim = rows.len();
    let mut p: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if r == c {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(p[i - 1][j - 1].clone());
        p = naive_mul(&p, &rows);
    }
    out
}

/// A rational matrix as an integer matrix over one shared denominator, so
/// products and comparisons need no gcd work.
#[derive(Clone, Debug)]
pub struct ScaledMatrix {
    pub num: Vec<Vec<num_bigint::BigInt>>,
    pub den: num_bigint::BigInt,
}

impl ScaledMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        use num_integer::Integer;
        let den = m
            .entries()
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, e| acc.lcm(e.denom()));
        let num = m
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|e| e.numer() * (&den / e.denom())).collect())
            .collect();
        ScaledMatrix { num, den }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn mul(&self, other: &ScaledMatrix) -> ScaledMatrix {
        let n = self.dim();
        let num = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(num_bigint::BigInt::from(0), |acc, k| {
                            acc + &self.num[i][k] * &other.num[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        ScaledMatrix {
            num,
            den: &self.den * &other.den,
        }
    }

    /// `a·self + b·other`, with `a`, `b` integers.
    pub fn combine(
        &self,
        a: &num_bigint::BigInt,
        other: &ScaledMatrix,
        b: &num_bigint::BigInt,
    ) -> ScaledMatrix {
        let n = self.dim();
        let num = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a * &self.num[i][j] * &other.den + b * &other.num[i][j] * &self.den)
                    .collect()
            })
            .collect();
        ScaledMatrix {
            num,
            den: &self.den * &other.den,
        }
    }

    pub fn same_as(&self, other: &ScaledMatrix) -> bool {
        let n = self.dim();
        n == other.dim()
            && (0..n).all(|i| {
                (0..n).all(|j| &self.num[i][j] * &other.den == &other.num[i][j] * &self.den)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.num
            .iter()
            .flatten()
            .all(|x| x == &num_bigint::BigInt::from(0))
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i][j].clone(), self.den.clone()).unwrap()
    }
}

/// `m_ij⁽ⁿ⁾` for `n = 0..=n_max` by integer matrix-vector iteration on column `j`.
pub fn entry_powers_fast(m: &Matrix, i: usize, j: usize, n_max: usize) -> Vec<Rational> {
    use num_bigint::BigInt;
    let s = ScaledMatrix::from_matrix(m);
    let dim = s.dim();
    let mut v: Vec<BigInt> = (0..dim)
        .map(|r| BigInt::from(u8::from(r == j - 1)))
        .collect();
    let mut den = BigInt::from(1);
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(Rational::new(v[i - 1].clone(), den.clone()).unwrap());
        v = (0..dim)
            .map(|r| (0..dim).fold(BigInt::from(0), |acc, k| acc + &s.num[r][k] * &v[k]))
            .collect();
        den *= &s.den;
    }
    out
}
