//! The command pipeline behind the `lrs-markov` binary.
//!
//! Every command is a pure function of its configuration and input files;
//! outputs are pretty-printed JSON with a trailing newline, written in a fixed
//! order, so identical inputs give byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::analysis::{
    decide_infinite_equality, query_scan, reverse_reduce, verify_certificate, DEFAULT_HORIZON,
};
use crate::degeneracy::{find_nonzero_window, sml_decompose, SmlComponent, DEFAULT_WINDOW_CAP};
use crate::error::{Error, Result};
use crate::kernel::Rational;
use crate::lrs::Lrs;
use crate::reduction::{build_instance, MarkovInstance, QueryKind, ReductionCertificate};
use crate::selftest;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

/// Cases per suite for `selftest`.
pub const SELFTEST_CASES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce,
    Verify,
    Eval,
    Decompose,
    Reverse,
    Scan,
    Selftest,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "reduce" => Command::Reduce,
            "verify" => Command::Verify,
            "eval" => Command::Eval,
            "decompose" => Command::Decompose,
            "reverse" => Command::Reverse,
            "scan" => Command::Scan,
            "selftest" => Command::Selftest,
            other => return Err(Error::InvalidArgument(format!("unknown command {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Certificate path for `verify`; defaults to the instance path with
    /// `instance` replaced by `certificate` in the file name.
    pub certificate: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub query: QueryKind,
    pub horizon: usize,
    pub window_cap: usize,
    pub seed: u64,
}

impl PipelineConfig {
    pub fn new(command: Command) -> Self {
        PipelineConfig {
            command,
            input: None,
            certificate: None,
            output: None,
            query: QueryKind::Equal,
            horizon: DEFAULT_HORIZON,
            window_cap: DEFAULT_WINDOW_CAP,
            seed: 0,
        }
    }

    pub fn with_input(mut self, path: impl Into<PathBuf>) -> Self {
        self.input = Some(path.into());
        self
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output = Some(path.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        if self.window_cap < 1 {
            return Err(Error::InvalidArgument(
                "window cap must be at least 1".into(),
            ));
        }
        let needs_input = !matches!(self.command, Command::Selftest);
        if needs_input && self.input.is_none() {
            return Err(Error::InvalidArgument("an input file is required".into()));
        }
        Ok(())
    }

    fn input(&self) -> &Path {
        self.input.as_deref().expect("validated")
    }
}

/// What a command produced: the exit status and the text for stdout.
/// Artifacts have already been written to disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
}

/// Runs one command. Input errors come back as `Err` (exit status 2).
pub fn run_command(cfg: &PipelineConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::Reduce => reduce(cfg),
        Command::Verify => verify(cfg),
        Command::Eval => eval(cfg),
        Command::Decompose => decompose(cfg),
        Command::Reverse => reverse(cfg),
        Command::Scan => scan(cfg),
        Command::Selftest => {
            let summary = selftest::run(cfg.seed, SELFTEST_CASES);
            Ok(Outcome {
                status: if summary.passed() {
                    EXIT_OK
                } else {
                    EXIT_VERIFICATION_FAILED
                },
                stdout: format!("{summary}\n"),
            })
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Per-component entry of the `reduce` manifest.
#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub offset: usize,
    pub stride: usize,
    pub order: usize,
    pub identically_zero: bool,
    pub nondegenerate: bool,
    /// Terms of the component skipped to reach a nonzero window.
    pub window_shift: Option<usize>,
    /// `instance`, `identically-zero` or `answered`.
    pub status: &'static str,
    pub note: String,
    pub instance: Option<String>,
    pub certificate: Option<String>,
    pub report: Option<String>,
    pub verification: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub sequence: Lrs,
    pub query: QueryKind,
    pub horizon: usize,
    pub period: usize,
    /// Term `n` of component `c`'s instance corresponds to
    /// `u[(n + window_shift)·period + offset]` of the input.
    pub index_map: &'static str,
    pub components: Vec<ManifestEntry>,
}

fn original_index(c: &SmlComponent, n: usize) -> usize {
    n * c.stride + c.offset
}

fn reduce(cfg: &PipelineConfig) -> Result<Outcome> {
    let l: Lrs = read_json(cfg.input())?;
    let out_dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from("out"));
    let components = sml_decompose(&l)?;
    let period = components[0].stride;
    create_dir(&out_dir)?;

    let mut text = String::new();
    let mut all_pass = true;
    writeln!(
        text,
        "period {period}, {} component(s), query {}",
        components.len(),
        cfg.query
    )
    .ok();
    let mut entries = Vec::new();
    for comp in &components {
        let seq = &comp.component;
        let mut entry = ManifestEntry {
            offset: comp.offset,
            stride: comp.stride,
            order: seq.order(),
            identically_zero: comp.identically_zero,
            nondegenerate: comp.nondegenerate,
            window_shift: None,
            status: "instance",
            note: String::new(),
            instance: None,
            certificate: None,
            report: None,
            verification: None,
        };
        if comp.identically_zero {
            entry.status = "identically-zero";
            entry.note = match cfg.query {
                QueryKind::Equal => format!(
                    "u[n·{period} + {}] = 0 for every n: infinitely many zeros",
                    comp.offset
                ),
                _ => "identically zero: contributes no negative terms".to_string(),
            };
            writeln!(text, "  offset {}: {}", comp.offset, entry.note).ok();
            entries.push(entry);
            continue;
        }

        let t = find_nonzero_window(seq, cfg.window_cap)?;
        entry.window_shift = Some(t);
        let prefix = seq.eval_range(t + seq.order() - 1);
        match cfg.query {
            QueryKind::Equal => {
                if let Some(n) = prefix[..t].iter().position(Rational::is_zero) {
                    entry.note = format!(
                        "u[{}] = 0 found while locating the window",
                        original_index(comp, n)
                    );
                }
            }
            QueryKind::Less => {
                if let Some(n) = prefix.iter().position(Rational::is_negative) {
                    entry.status = "answered";
                    entry.note = format!(
                        "u[{}] = {} < 0: Positivity already fails, no instance needed",
                        original_index(comp, n),
                        prefix[n]
                    );
                    writeln!(text, "  offset {}: {}", comp.offset, entry.note).ok();
                    entries.push(entry);
                    continue;
                }
            }
            QueryKind::InfinitelyOftenLess => {}
        }

        let windowed = seq.shift(t);
        let (inst, cert) = build_instance(&windowed, cfg.query)?;
        let report = verify_certificate(&windowed, &inst, &cert, cfg.horizon)?;
        let stem = format!("component-{}", comp.offset);
        let names = [
            format!("{stem}.instance.json"),
            format!("{stem}.certificate.json"),
            format!("{stem}.report.json"),
        ];
        write_json(&out_dir.join(&names[0]), &inst)?;
        write_json(&out_dir.join(&names[1]), &cert)?;
        write_json(&out_dir.join(&names[2]), &report)?;
        let passed = report.passed();
        all_pass &= passed;
        writeln!(
            text,
            "  offset {}: {}x{} instance (i = {}, j = {}, r = {}), window shift {t}, verification {}",
            comp.offset,
            inst.dimension(),
            inst.dimension(),
            inst.target,
            inst.source,
            inst.threshold,
            if passed { "PASS" } else { "FAIL" }
        )
        .ok();
        if !entry.note.is_empty() {
            writeln!(text, "    note: {}", entry.note).ok();
        }
        let [i, c, r] = names;
        entry.instance = Some(i);
        entry.certificate = Some(c);
        entry.report = Some(r);
        entry.verification = Some(if passed { "pass" } else { "fail" });
        entries.push(entry);
    }

    let manifest = Manifest {
        sequence: l,
        query: cfg.query,
        horizon: cfg.horizon,
        period,
        index_map: "term n of a component instance is u[(n + window_shift)·period + offset]",
        components: entries,
    };
    write_json(&out_dir.join("manifest.json"), &manifest)?;
    writeln!(text, "wrote {}", out_dir.join("manifest.json").display()).ok();
    Ok(Outcome {
        status: if all_pass {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        },
        stdout: text,
    })
}

fn default_certificate_path(instance: &Path) -> PathBuf {
    let name = instance
        .file_name()
        .map(|n| n.to_string_lossy().replace("instance", "certificate"))
        .unwrap_or_default();
    instance.with_file_name(name)
}

fn verify(cfg: &PipelineConfig) -> Result<Outcome> {
    let inst: MarkovInstance = read_json(cfg.input())?;
    let cert_path = cfg
        .certificate
        .clone()
        .unwrap_or_else(|| default_certificate_path(cfg.input()));
    let cert: ReductionCertificate = read_json(&cert_path)?;
    let report = verify_certificate(&cert.sequence, &inst, &cert, cfg.horizon)?;
    if let Some(out) = &cfg.output {
        write_json(out, &report)?;
    }
    Ok(Outcome {
        status: if report.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        },
        stdout: format!("{report}\n"),
    })
}

fn eval(cfg: &PipelineConfig) -> Result<Outcome> {
    let l: Lrs = read_json(cfg.input())?;
    let mut text = String::new();
    for (n, u) in l.eval_range(cfg.horizon).iter().enumerate() {
        writeln!(text, "{n}\t{u}").ok();
    }
    Ok(Outcome {
        status: EXIT_OK,
        stdout: text,
    })
}

#[derive(Serialize)]
struct DecompositionEntry<'a> {
    offset: usize,
    stride: usize,
    order: usize,
    identically_zero: bool,
    nondegenerate: bool,
    first_terms: Vec<Rational>,
    component: &'a Lrs,
}

fn decompose(cfg: &PipelineConfig) -> Result<Outcome> {
    let l: Lrs = read_json(cfg.input())?;
    let components = sml_decompose(&l)?;
    let mut text = format!(
        "period {}, {} component(s)\n",
        components[0].stride,
        components.len()
    );
    let mut report = Vec::new();
    for c in &components {
        let first_terms = c.component.eval_range(9);
        let shown: Vec<String> = first_terms.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "offset {} stride {} order {} identically_zero={} nondegenerate={}\n  terms: {}",
            c.offset,
            c.stride,
            c.component.order(),
            c.identically_zero,
            c.nondegenerate,
            shown.join(", ")
        )
        .ok();
        report.push(DecompositionEntry {
            offset: c.offset,
            stride: c.stride,
            order: c.component.order(),
            identically_zero: c.identically_zero,
            nondegenerate: c.nondegenerate,
            first_terms,
            component: &c.component,
        });
    }
    if let Some(out) = &cfg.output {
        write_json(out, &report)?;
    }
    Ok(Outcome {
        status: EXIT_OK,
        stdout: text,
    })
}

#[derive(Serialize)]
struct ReverseReport {
    sequence: Lrs,
    start_shift: usize,
    infinitely_many_equalities: bool,
}

fn reverse(cfg: &PipelineConfig) -> Result<Outcome> {
    let inst: MarkovInstance = read_json(cfg.input())?;
    let (seq, start_shift) =
        reverse_reduce(&inst.matrix, inst.target, inst.source, &inst.threshold)?;
    let infinite =
        decide_infinite_equality(&inst.matrix, inst.target, inst.source, &inst.threshold)?;
    let mut text = String::new();
    writeln!(
        text,
        "w_n = m_{}{}^(n + {start_shift}) − {} satisfies an order-{} recurrence",
        inst.target,
        inst.source,
        inst.threshold,
        seq.order()
    )
    .ok();
    writeln!(
        text,
        "{}",
        serde_json::to_string(&seq).expect("serializable")
    )
    .ok();
    writeln!(
        text,
        "m_ij^(n) = r for infinitely many n: {}",
        if infinite { "yes" } else { "no" }
    )
    .ok();
    if let Some(out) = &cfg.output {
        write_json(
            out,
            &ReverseReport {
                sequence: seq,
                start_shift,
                infinitely_many_equalities: infinite,
            },
        )?;
    }
    Ok(Outcome {
        status: EXIT_OK,
        stdout: text,
    })
}

fn scan(cfg: &PipelineConfig) -> Result<Outcome> {
    let inst: MarkovInstance = read_json(cfg.input())?;
    let result = query_scan(&inst, cfg.horizon)?;
    if let Some(out) = &cfg.output {
        write_json(out, &result)?;
    }
    Ok(Outcome {
        status: EXIT_OK,
        stdout: format!("{result}\n"),
    })
}
