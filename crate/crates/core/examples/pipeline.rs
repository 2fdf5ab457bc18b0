//! The full `reduce` → `verify` pipeline driven through the library API, the
//! same code path as the `lrs-markov` binary.
//!
//! ```bash
//! cargo run --example pipeline -- crates/core/examples/data/rotation.json /tmp/lrs-out
//! ```

use std::path::PathBuf;

use lrs_markov::cli::{run_command, Command, PipelineConfig};
use lrs_markov::QueryKind;

fn main() -> lrs_markov::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/rotation.json")
    });
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("lrs-markov-pipeline"));

    for query in [QueryKind::Equal, QueryKind::Less] {
        let dir = out.join(query.as_str());
        let mut cfg = PipelineConfig::new(Command::Reduce)
            .with_input(&input)
            .with_output(&dir);
        cfg.query = query;
        let outcome = run_command(&cfg)?;
        print!("{}", outcome.stdout);

        let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|source| lrs_markov::Error::Io {
                path: dir.clone(),
                source,
            })?
            .map(|e| e.expect("dir entry").path())
            .collect();
        files.sort();
        for path in files {
            if path.to_string_lossy().ends_with(".instance.json") {
                let verify = run_command(&PipelineConfig::new(Command::Verify).with_input(&path))?;
                let last = verify.stdout.lines().last().unwrap_or_default().to_string();
                println!(
                    "  verify {}: {last} (exit {})",
                    path.display(),
                    verify.status
                );
            }
        }
    }
    Ok(())
}
