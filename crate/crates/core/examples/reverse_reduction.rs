//! From a chain back to a recurrence, and the infinite-equality decision.
//!
//! ```bash
//! cargo run --example reverse_reduction
//! cargo run --example reverse_reduction -- crates/core/examples/data/periodic.instance.json
//! ```

use std::path::PathBuf;

use lrs_markov::analysis::{decide_infinite_equality, reverse_reduce};
use lrs_markov::cli::read_json;
use lrs_markov::{MarkovInstance, Matrix, Rational};

fn analyse(name: &str, m: &Matrix, i: usize, j: usize, r: &Rational) -> lrs_markov::Result<()> {
    let (seq, shift) = reverse_reduce(m, i, j, r)?;
    let infinite = decide_infinite_equality(m, i, j, r)?;
    println!(
        "{name}: m_{i}{j}^(n + {shift}) - {r} has char poly {}",
        seq.char_poly()
    );
    println!("  first terms {:?}", seq.eval_range(5));
    println!("  equal to {r} infinitely often: {infinite}");
    Ok(())
}

fn main() -> lrs_markov::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let inst: MarkovInstance = read_json(&PathBuf::from(path))?;
        return analyse(
            "file",
            &inst.matrix,
            inst.target,
            inst.source,
            &inst.threshold,
        );
    }
    let swap = Matrix::from_ints(&[[0, 1], [1, 0]]);
    analyse("swap", &swap, 1, 1, &Rational::zero())?;
    analyse("swap", &swap, 1, 1, &Rational::ratio(1, 2))?;

    let lazy = Matrix::from_ratios(&[[(3, 4), (1, 4)], [(1, 4), (3, 4)]]);
    analyse("lazy walk", &lazy, 1, 2, &Rational::ratio(1, 2))?;

    // Rank one: the start shift absorbs the zero eigenvalue.
    let rank_one = Matrix::from_ratios(&[[(1, 3), (1, 3)], [(2, 3), (2, 3)]]);
    analyse("rank one", &rank_one, 2, 1, &Rational::ratio(2, 3))?;
    Ok(())
}
