//! Exact rationals, matrices and polynomials.
//!
//! ```bash
//! cargo run --example exact_kernel
//! ```

use lrs_markov::kernel::{cyclotomic, resultant};
use lrs_markov::{Matrix, Polynomial, Rational};

fn main() -> lrs_markov::Result<()> {
    let a: Rational = "3/4".parse()?;
    let b = Rational::ratio(-5, 6);
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} / {b} = {}", &a / &b);

    let m = Matrix::from_ratios(&[[(1, 2), (1, 3)], [(1, 2), (2, 3)]]);
    println!("M =\n{m}");
    println!("M^10 =\n{}", m.pow(10)?);

    let p = m.char_poly()?;
    println!("det(xI - M) = {p}");
    println!("p(M) is zero: {}", m.eval_poly(&p)?.is_zero());

    let q = Polynomial::from_ints(&[-1, 0, 1]);
    println!("gcd({p}, {q}) = {}", p.gcd(&q));
    println!("Res({p}, {q}) = {}", resultant(&p, &q)?);
    for k in [1, 4, 6, 12] {
        println!("Phi_{k} = {}", cyclotomic(k)?);
    }
    Ok(())
}
