//! Primitivity of stochastic matrices and convergence to the limit.
//!
//! ```bash
//! cargo run --example ergodicity
//! ```

use lrs_markov::analysis::{check_ergodicity, distance_to_stationary, wielandt_bound};
use lrs_markov::reduction::build_instance;
use lrs_markov::{Lrs, Matrix, QueryKind};

fn show(name: &str, m: &Matrix) -> lrs_markov::Result<()> {
    let report = check_ergodicity(m, wielandt_bound(m.rows()))?;
    match report.witness {
        Some(n) => println!("{name}: ergodic, M^{n} > 0"),
        None => println!(
            "{name}: not ergodic ({})",
            report.reason.unwrap_or_default()
        ),
    }
    Ok(())
}

fn main() -> lrs_markov::Result<()> {
    let swap = Matrix::from_ints(&[[0, 1], [1, 0]]);
    show("swap", &swap)?;

    // A 3-cycle with one self-loop needs several steps.
    let cycle = Matrix::from_ratios(&[
        [(1, 2), (0, 1), (1, 1)],
        [(1, 2), (0, 1), (0, 1)],
        [(0, 1), (1, 1), (0, 1)],
    ]);
    show("cycle with loop", &cycle)?;

    let (inst, cert) = build_instance(&Lrs::from_ints(&[1, 1, 1], &[1, 2, 3])?, QueryKind::Equal)?;
    show("tribonacci instance", &inst.matrix)?;
    for n in [1u64, 5, 10, 20] {
        let dist = distance_to_stationary(&inst.matrix, &cert.s, n)?;
        println!("  max|M^{n} - S| = {dist} (~{:.3e})", dist.to_f64());
    }
    Ok(())
}
