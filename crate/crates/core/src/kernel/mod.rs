//! Exact arithmetic kernel: rationals, dense matrices and polynomials.

mod matrix;
mod polynomial;
mod rational;

pub use matrix::Matrix;
pub use polynomial::{cyclotomic, resultant, totient, Polynomial};
pub use rational::Rational;

/// `m^n` by repeated squaring.
pub fn mat_pow(m: &Matrix, n: u64) -> crate::Result<Matrix> {
    m.pow(n)
}

/// `det(xI − m)`.
pub fn char_poly(m: &Matrix) -> crate::Result<Polynomial> {
    m.char_poly()
}

/// `p / gcd(p, p′)`, monic.
pub fn squarefree_part(p: &Polynomial) -> crate::Result<Polynomial> {
    p.squarefree_part()
}
