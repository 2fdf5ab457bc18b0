//! Evaluate a recurrence exactly, read from a JSON file or built in code
//! (`u_{n+2} = u_{n+1} + u_n` from `u = (1, 1)` by default).
//!
//! ```bash
//! cargo run --example evaluate_lrs -- crates/core/examples/data/fibonacci.json 20
//! ```

use std::path::PathBuf;

use lrs_markov::cli::read_json;
use lrs_markov::{Lrs, Rational};

fn main() -> lrs_markov::Result<()> {
    let mut args = std::env::args().skip(1);
    let seq: Lrs = match args.next() {
        Some(path) => read_json(&PathBuf::from(path))?,
        None => Lrs::fibonacci(),
    };
    let n_max: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(15);

    println!("{}", serde_json::to_string(&seq).expect("serializable"));
    println!("characteristic polynomial: {}", seq.char_poly());
    for (n, u) in seq.eval_range(n_max).iter().enumerate() {
        println!("u_{n} = {u}");
    }

    // u_n = e_1ᵀ Aⁿ u for the companion matrix A.
    let a = seq.companion_matrix();
    let u0 = seq.initial().to_vec();
    let via_power = a.pow(n_max as u64)?.mul_vec(&u0)?[0].clone();
    println!("via companion power: u_{n_max} = {via_power}");

    let halved = seq.scale_terms(&Rational::ratio(1, 2)).shift(3);
    println!("(u_{{n+3}} / 2) starts {:?}", halved.eval_range(4));
    Ok(())
}
