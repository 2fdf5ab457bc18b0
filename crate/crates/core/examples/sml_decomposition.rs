//! Degeneracy orders and the stride decomposition into non-degenerate parts.
//!
//! ```bash
//! cargo run --example sml_decomposition
//! ```

use lrs_markov::degeneracy::{degeneracy_orders, find_nonzero_window, sml_decompose};
use lrs_markov::Lrs;

fn report(name: &str, seq: &Lrs) -> lrs_markov::Result<()> {
    println!("{name}: char poly {}", seq.char_poly());
    println!(
        "  root-of-unity ratio orders: {:?}",
        degeneracy_orders(seq)?
    );
    for c in sml_decompose(seq)? {
        let window = if c.identically_zero {
            "none (identically zero)".to_string()
        } else {
            find_nonzero_window(&c.component, 1000)?.to_string()
        };
        println!(
            "  n*{} + {}: order {}, nondegenerate {}, first nonzero window at {window}, terms {:?}",
            c.stride,
            c.offset,
            c.component.order(),
            c.nondegenerate,
            c.component.eval_range(5)
        );
    }
    Ok(())
}

fn main() -> lrs_markov::Result<()> {
    report("fibonacci", &Lrs::fibonacci())?;
    // u_{n+2} = -u_n: roots ±i, ratio -1.
    report("rotation", &Lrs::from_ints(&[-1, 0], &[1, 2])?)?;
    // u_{n+3} = u_n with u = (1, 0, 0): zero on two of three residues.
    report("sparse period 3", &Lrs::from_ints(&[1, 0, 0], &[1, 0, 0])?)?;
    // 2^n - (-2)^n vanishes on every even index.
    report("cancelling", &Lrs::from_ints(&[4, 0], &[0, 4])?)?;
    Ok(())
}
