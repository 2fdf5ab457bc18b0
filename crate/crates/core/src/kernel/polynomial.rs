//! Univariate polynomials over [`Rational`], coefficients in ascending degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A polynomial with no trailing zero coefficients; the zero polynomial has
/// an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c·x^deg`
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// `x − root`
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    /// `x^m − 1`
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); m + 1];
        coeffs[0] = -Rational::one();
        coeffs[m] += Rational::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rational::one() / self.leading_coeff();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Substitutes `k·x` for `x`.
    pub fn scale_argument(&self, k: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= k;
        }
        Self::new(out)
    }

    /// Splits `self = x^s · q` with `q(0) ≠ 0`; returns `(q, s)`.
    /// The zero polynomial is returned unchanged with `s = 0`.
    pub fn strip_x_factors(&self) -> (Self, usize) {
        let s = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if s == self.coeffs.len() {
            return (self.clone(), 0);
        }
        (Polynomial::new(self.coeffs[s..].to_vec()), s)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let inv_lc = Rational::one() / divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &inv_lc;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive polynomial remainder sequence over the integers so
    /// intermediate coefficients stay small.
    pub fn gcd(&self, other: &Polynomial) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (primitive_integer(self), primitive_integer(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        Polynomial::new(a.into_iter().map(Rational::from).collect()).monic()
    }

    /// `p / gcd(p, p′)`, made monic: same roots as `p`, each simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Interpolating polynomial of degree `< xs.len()` through the points
    /// `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} abscissae, {} ordinates",
                xs.len(),
                ys.len()
            )));
        }
        let n = xs.len();
        // Newton divided differences, in place.
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let denom = &xs[i] - &xs[i - level];
                if denom.is_zero() {
                    return Err(Error::InvalidArgument(
                        "interpolation nodes must be distinct".into(),
                    ));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / denom;
            }
        }
        let mut acc = Polynomial::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Polynomial::linear(&xs[i])) + &Polynomial::constant(dd[i].clone());
        }
        Ok(acc)
    }
}

/// `Res(p, q) = lc(p)^{deg q} · ∏_{p(α)=0} q(α)`.
///
/// Computed by the Euclidean recurrence over the rationals. A zero argument
/// yields 0 against a nonconstant partner and 1 against a nonzero constant.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    match (p.degree(), q.degree()) {
        (None, None) => return Err(Error::ResultantOfZeros),
        (None, Some(d)) | (Some(d), None) => {
            return Ok(if d == 0 {
                Rational::one()
            } else {
                Rational::zero()
            })
        }
        _ => {}
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut acc = Rational::one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return Ok(acc * b.leading_coeff().pow(m as u32));
        }
        if m == 0 {
            return Ok(acc * a.leading_coeff().pow(n as u32));
        }
        let r = a.rem(&b)?;
        let Some(dr) = r.degree() else {
            return Ok(Rational::zero());
        };
        // Res(a, b) = (-1)^{mn} · lc(b)^{m - deg r} · Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= b.leading_coeff().pow((m - dr) as u32);
        a = b;
        b = r;
    }
}

/// The `m`-th cyclotomic polynomial, from `x^m − 1 = ∏_{d | m} Φ_d`.
pub fn cyclotomic(m: usize) -> Result<Polynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic order must be at least 1".into(),
        ));
    }
    let divisors: Vec<usize> = (1..=m).filter(|&d| m.is_multiple_of(d)).collect();
    let mut table: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for &d in &divisors {
        let mut prod = Polynomial::one();
        for (&e, phi) in &table {
            if d.is_multiple_of(e) {
                prod = &prod * phi;
            }
        }
        let phi = Polynomial::x_pow_minus_one(d).exact_div(&prod)?;
        table.insert(d, phi);
    }
    Ok(table.remove(&m).expect("m divides itself"))
}

/// Euler's totient by trial division.
pub fn totient(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn primitive_integer(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(last) = v.last() else {
        return v;
    };
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if last.is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || i == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
