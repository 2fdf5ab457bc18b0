//! Seeded generators for random sequences and stochastic matrices, shared by
//! the self-test and the property suites.

use rand::Rng;

use crate::degeneracy::is_nondegenerate;
use crate::kernel::{Matrix, Rational};
use crate::lrs::Lrs;

/// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::ratio(p, q)
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Any valid order-`k` sequence with coefficients and initial terms bounded
/// by `bound` in numerator and denominator.
pub fn lrs<R: Rng + ?Sized>(rng: &mut R, order: usize, bound: i64) -> Lrs {
    let mut coefficients: Vec<Rational> = (0..order).map(|_| rational(rng, bound)).collect();
    coefficients[0] = nonzero_rational(rng, bound);
    let initial = (0..order).map(|_| rational(rng, bound)).collect();
    Lrs::new(coefficients, initial).expect("a_0 is nonzero")
}

/// A non-degenerate sequence with all `k` initial terms nonzero, ready for
/// the reduction. Draws until one qualifies.
pub fn reducible_lrs<R: Rng + ?Sized>(rng: &mut R, order: usize, bound: i64) -> Lrs {
    loop {
        let l = lrs(rng, order, bound);
        if l.initial().iter().any(Rational::is_zero) {
            continue;
        }
        if is_nondegenerate(&l).unwrap_or(false) {
            return l;
        }
    }
}

/// Same as [`reducible_lrs`] but with every initial term positive.
pub fn positive_reducible_lrs<R: Rng + ?Sized>(rng: &mut R, order: usize, bound: i64) -> Lrs {
    loop {
        let l = reducible_lrs(rng, order, bound);
        if l.initial().iter().all(Rational::is_positive) {
            return l;
        }
    }
}

/// A column-stochastic `dim × dim` matrix with entries of the form `w/Σw`,
/// `0 ≤ w ≤ weight_bound`; zero entries are possible.
pub fn stochastic_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize, weight_bound: i64) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for c in 0..dim {
        let weights: Vec<i64> = loop {
            let w: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=weight_bound)).collect();
            if w.iter().any(|&x| x > 0) {
                break w;
            }
        };
        let total: i64 = weights.iter().sum();
        for (r, w) in weights.into_iter().enumerate() {
            m.set(r, c, Rational::ratio(w, total));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::require_stochastic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=4 {
            require_stochastic(&stochastic_matrix(&mut rng, dim, 5)).unwrap();
        }
        for k in 1..=3 {
            let l = positive_reducible_lrs(&mut rng, k, 10);
            assert!(l.initial().iter().all(Rational::is_positive));
            assert!(is_nondegenerate(&l).unwrap());
        }
    }
}
