//! Linear recurrence sequences over the rationals.
//!
//! An order-`k` sequence satisfies `u_{n+k} = a_{k−1}·u_{n+k−1} + … + a_0·u_n`
//! with `a_0 ≠ 0`, and is pinned down by its `k` initial terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LrsRecord", into = "LrsRecord")]
pub struct Lrs {
    coefficients: Vec<Rational>,
    initial: Vec<Rational>,
}

/// On-disk form: `{"order": k, "coefficients": [a_0, …], "initial": [u_0, …]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LrsRecord {
    order: usize,
    coefficients: Vec<Rational>,
    initial: Vec<Rational>,
}

impl TryFrom<LrsRecord> for Lrs {
    type Error = Error;

    fn try_from(r: LrsRecord) -> Result<Self> {
        if r.coefficients.len() != r.order {
            return Err(Error::InvalidLrs(format!(
                "order is {} but {} coefficients were given",
                r.order,
                r.coefficients.len()
            )));
        }
        Lrs::new(r.coefficients, r.initial)
    }
}

impl From<Lrs> for LrsRecord {
    fn from(l: Lrs) -> Self {
        LrsRecord {
            order: l.order(),
            coefficients: l.coefficients,
            initial: l.initial,
        }
    }
}

impl Lrs {
    /// `coefficients` are `a_0 … a_{k−1}` in ascending order.
    pub fn new(coefficients: Vec<Rational>, initial: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidLrs("order must be at least 1".into()));
        }
        if coefficients.len() != initial.len() {
            return Err(Error::InvalidLrs(format!(
                "{} coefficients but {} initial terms",
                coefficients.len(),
                initial.len()
            )));
        }
        if coefficients[0].is_zero() {
            return Err(Error::InvalidLrs("a_0 must be nonzero".into()));
        }
        Ok(Lrs {
            coefficients,
            initial,
        })
    }

    /// Integer shorthand, for tests and examples.
    pub fn from_ints(coefficients: &[i64], initial: &[i64]) -> Result<Self> {
        Lrs::new(
            coefficients.iter().map(|&c| Rational::from(c)).collect(),
            initial.iter().map(|&c| Rational::from(c)).collect(),
        )
    }

    /// The Fibonacci sequence 0-indexed from `u_0 = u_1 = 1`.
    pub fn fibonacci() -> Self {
        Lrs::from_ints(&[1, 1], &[1, 1]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    /// Zero everywhere exactly when the `k` initial terms vanish.
    pub fn is_identically_zero(&self) -> bool {
        self.initial.iter().all(Rational::is_zero)
    }

    /// The companion matrix `A`: ones on the superdiagonal, bottom row
    /// `a_0 … a_{k−1}`, so that `u_n = e_1ᵀ·Aⁿ·u`.
    pub fn companion_matrix(&self) -> Matrix {
        let k = self.order();
        let mut a = Matrix::zeros(k, k);
        for r in 0..k - 1 {
            a.set(r, r + 1, Rational::one());
        }
        for (c, coef) in self.coefficients.iter().enumerate() {
            a.set(k - 1, c, coef.clone());
        }
        a
    }

    /// `x^k − a_{k−1}x^{k−1} − … − a_0`.
    pub fn char_poly(&self) -> Polynomial {
        let mut coeffs: Vec<Rational> = self.coefficients.iter().map(|c| -c).collect();
        coeffs.push(Rational::one());
        Polynomial::new(coeffs)
    }

    /// `u_0 … u_{n_max}` by direct iteration.
    pub fn eval_range(&self, n_max: usize) -> Vec<Rational> {
        let k = self.order();
        let mut terms: Vec<Rational> = self.initial.clone();
        while terms.len() <= n_max {
            let n = terms.len() - k;
            let next = self
                .coefficients
                .iter()
                .zip(&terms[n..])
                .map(|(a, u)| a * u)
                .sum();
            terms.push(next);
        }
        terms.truncate(n_max + 1);
        terms
    }

    pub fn term(&self, n: usize) -> Rational {
        self.eval_range(n).pop().expect("at least one term")
    }

    /// Same recurrence, started `t` terms later.
    pub fn shift(&self, t: usize) -> Self {
        if t == 0 {
            return self.clone();
        }
        let k = self.order();
        let terms = self.eval_range(t + k - 1);
        Lrs {
            coefficients: self.coefficients.clone(),
            initial: terms[t..].to_vec(),
        }
    }

    /// Multiplies every initial term (hence every term) by `factor`.
    pub fn scale_terms(&self, factor: &Rational) -> Self {
        Lrs {
            coefficients: self.coefficients.clone(),
            initial: self.initial.iter().map(|u| u * factor).collect(),
        }
    }

    /// The sequence `n ↦ u_{n·stride + offset}`.
    ///
    /// Its recurrence comes from the characteristic polynomial of `A^stride`.
    pub fn stride_subsequence(&self, stride: usize, offset: usize) -> Result<Self> {
        if stride == 0 || offset >= stride {
            return Err(Error::InvalidArgument(format!(
                "need 0 <= offset < stride, got offset {offset}, stride {stride}"
            )));
        }
        if stride == 1 {
            return Ok(self.clone());
        }
        let powered = self.companion_matrix().pow(stride as u64)?;
        let (reduced, stripped) = powered.char_poly()?.strip_x_factors();
        // A is invertible because a_0 ≠ 0, so A^stride has no zero eigenvalue.
        if stripped > 0 || reduced.degree().is_none_or(|d| d == 0) {
            return Err(Error::Internal(format!(
                "characteristic polynomial of A^{stride} has a zero root"
            )));
        }
        let order = reduced.degree().expect("nonzero");
        let coefficients: Vec<Rational> = reduced.coeffs()[..order].iter().map(|c| -c).collect();
        let terms = self.eval_range((order - 1) * stride + offset);
        let initial = (0..order)
            .map(|n| terms[n * stride + offset].clone())
            .collect();
        Lrs::new(coefficients, initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Lrs::from_ints(&[], &[]).is_err());
        assert!(Lrs::from_ints(&[0, 1], &[1, 1]).is_err());
        assert!(Lrs::from_ints(&[1, 1], &[1]).is_err());
    }

    #[test]
    fn companion_examples() {
        assert_eq!(
            Lrs::fibonacci().companion_matrix(),
            Matrix::from_ints(&[[0, 1], [1, 1]])
        );
        let half = Lrs::new(vec![Rational::ratio(1, 2)], vec![r(1)]).unwrap();
        assert_eq!(half.companion_matrix(), Matrix::from_ratios(&[[(1, 2)]]));
        let l = Lrs::from_ints(&[2, 0, 1], &[1, -1, 3]).unwrap();
        assert_eq!(
            l.companion_matrix(),
            Matrix::from_ints(&[[0, 1, 0], [0, 0, 1], [2, 0, 1]])
        );
    }

    #[test]
    fn companion_powers_generate_terms() {
        let l = Lrs::from_ints(&[2, 0, 1], &[1, -1, 3]).unwrap();
        let a = l.companion_matrix();
        let terms = l.eval_range(10);
        for (n, t) in terms.iter().enumerate() {
            let v = a.pow(n as u64).unwrap().mul_vec(l.initial()).unwrap();
            assert_eq!(&v[0], t, "n = {n}");
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Lrs::fibonacci().eval_range(5), ints(&[1, 1, 2, 3, 5, 8]));
        let lin = Lrs::from_ints(&[-1, 2], &[-2, -1]).unwrap();
        assert_eq!(lin.eval_range(4), ints(&[-2, -1, 0, 1, 2]));
        let zero = Lrs::from_ints(&[1], &[0]).unwrap();
        assert_eq!(zero.eval_range(3), ints(&[0, 0, 0, 0]));
        assert_eq!(Lrs::fibonacci().eval_range(0), ints(&[1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Lrs::fibonacci().shift(2).initial(), &ints(&[2, 3])[..]);
        assert_eq!(Lrs::fibonacci().shift(0), Lrs::fibonacci());
        let lin = Lrs::from_ints(&[-1, 2], &[-2, -1]).unwrap();
        assert_eq!(lin.shift(3).initial(), &ints(&[1, 2])[..]);
    }

    #[test]
    fn stride_examples() {
        let l = Lrs::from_ints(&[-1, 0], &[1, 2]).unwrap();
        let even = l.stride_subsequence(2, 0).unwrap();
        assert_eq!(even.char_poly(), Polynomial::from_ints(&[1, 2, 1]));
        assert_eq!(even.eval_range(3), ints(&[1, -1, 1, -1]));
        let odd = l.stride_subsequence(2, 1).unwrap();
        assert_eq!(odd.eval_range(3), ints(&[2, -2, 2, -2]));
        assert_eq!(l.stride_subsequence(1, 0).unwrap(), l);
        assert!(l.stride_subsequence(2, 2).is_err());
        assert!(l.stride_subsequence(0, 0).is_err());
    }

    #[test]
    fn stride_matches_strided_terms() {
        let l = Lrs::from_ints(&[-1, 0], &[1, 2]).unwrap();
        let all = l.eval_range(80);
        for (stride, offset) in [(2, 0), (2, 1), (3, 2)] {
            let sub = l.stride_subsequence(stride, offset).unwrap().eval_range(20);
            for (n, t) in sub.iter().enumerate() {
                assert_eq!(t, &all[n * stride + offset]);
            }
        }
    }

    #[test]
    fn char_poly_matches_companion() {
        let l = Lrs::from_ints(&[2, 0, 1], &[1, 1, 1]).unwrap();
        assert_eq!(l.companion_matrix().char_poly().unwrap(), l.char_poly());
    }

    #[test]
    fn file_format() {
        let l: Lrs = serde_json::from_str(
            r#"{"order": 2, "coefficients": ["1", "1"], "initial": ["1", "1/2"]}"#,
        )
        .unwrap();
        assert_eq!(l.initial()[1], Rational::ratio(1, 2));
        assert_eq!(
            serde_json::to_string(&l).unwrap(),
            r#"{"order":2,"coefficients":["1","1"],"initial":["1","1/2"]}"#
        );
        assert!(serde_json::from_str::<Lrs>(
            r#"{"order": 3, "coefficients": ["1", "1"], "initial": ["1", "1"]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<Lrs>(
            r#"{"order": 1, "coefficients": ["0"], "initial": ["1"]}"#
        )
        .is_err());
    }
}
