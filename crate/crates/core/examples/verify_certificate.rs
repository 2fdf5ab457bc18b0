//! Round-trip an instance and its certificate through JSON, re-verify, then
//! corrupt one entry and watch the checks that catch it.
//!
//! ```bash
//! cargo run --example verify_certificate
//! ```

use lrs_markov::analysis::verify_certificate;
use lrs_markov::reduction::build_instance;
use lrs_markov::{Lrs, MarkovInstance, QueryKind, Rational, ReductionCertificate};

fn main() -> lrs_markov::Result<()> {
    let seq = Lrs::from_ints(&[2, -1, 3], &[1, 1, 2])?;
    let (inst, cert) = build_instance(&seq, QueryKind::Less)?;

    let inst_json = serde_json::to_string_pretty(&inst).expect("serializable");
    let cert_json = serde_json::to_string_pretty(&cert).expect("serializable");
    println!("{inst_json}");

    let inst: MarkovInstance = serde_json::from_str(&inst_json).expect("round trip");
    let cert: ReductionCertificate = serde_json::from_str(&cert_json).expect("round trip");
    let report = verify_certificate(&cert.sequence, &inst, &cert, 20)?;
    println!("{report}\n");

    let mut bad = cert.clone();
    let old = bad.d.get(0, 0).clone();
    bad.d.set(0, 0, old + Rational::ratio(1, 1000));
    let report = verify_certificate(&bad.sequence, &inst, &bad, 20)?;
    println!("after perturbing D[1,1]:");
    for c in report.failures() {
        println!("  {} failed: {}", c.name, c.detail);
    }
    Ok(())
}
