//! Build the Markov chain for the Fibonacci numbers and inspect its pieces.
//!
//! ```bash
//! cargo run --example reduce_fibonacci
//! ```

use lrs_markov::degeneracy::find_nonzero_window;
use lrs_markov::reduction::build_instance;
use lrs_markov::{Lrs, QueryKind};

fn main() -> lrs_markov::Result<()> {
    let fib = Lrs::fibonacci();
    // u_0 = 0, so the construction starts from u_1.
    let t = find_nonzero_window(&fib, 100)?;
    let seq = fib.shift(t);
    let (inst, cert) = build_instance(&seq, QueryKind::Equal)?;

    println!("window shift {t}, sequence {:?}...", seq.eval_range(6));
    println!(
        "anchor column j = {}, eta = {}",
        cert.anchor_column, cert.eta
    );
    println!("F =\n{}\nB =\n{}\nC =\n{}", cert.f, cert.b, cert.c);
    println!(
        "gamma = {}, sigma = {}, rho = {}",
        cert.gamma, cert.sigma, cert.rho
    );
    println!("M = S + D =\n{}", inst.matrix);
    println!(
        "query: m_{}{}^(n) {} {}",
        inst.target, inst.source, inst.query, inst.threshold
    );

    let mut power = inst.matrix.clone();
    for n in 1..=8 {
        let gap = inst.entry_of(&power) - &inst.threshold;
        let predicted = &cert.eta * &seq.term(n) / cert.rho.pow(n as u32);
        println!("n = {n}: m - r = {gap}, eta*u_n/rho^n = {predicted}");
        power = power.checked_mul(&inst.matrix)?;
    }
    Ok(())
}
