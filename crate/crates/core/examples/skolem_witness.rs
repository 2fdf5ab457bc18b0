//! A zero of `u_n = n - 2` shows up as `m_12^(2) = r` in the chain, and the
//! sign pattern carries over to the Less query.
//!
//! ```bash
//! cargo run --example skolem_witness
//! ```

use lrs_markov::analysis::query_scan;
use lrs_markov::reduction::build_instance;
use lrs_markov::{Lrs, QueryKind};

fn main() -> lrs_markov::Result<()> {
    let seq = Lrs::from_ints(&[-1, 2], &[-2, -1])?;
    println!("u = {:?}", seq.eval_range(6));
    for query in QueryKind::ALL {
        // u_0 < 0 already settles Positivity, so Less refuses to build.
        match build_instance(&seq, query) {
            Ok((inst, _)) => println!(
                "{query}: i = {}, j = {}, r = {}; {}",
                inst.target,
                inst.source,
                inst.threshold,
                query_scan(&inst, 12)?
            ),
            Err(e) => println!("{query}: {e}"),
        }
    }

    let (inst, _) = build_instance(&seq, QueryKind::Equal)?;
    let m2 = inst.matrix.pow(2)?;
    println!(
        "m_{}{}^(2) = {}",
        inst.target,
        inst.source,
        inst.entry_of(&m2)
    );
    Ok(())
}
