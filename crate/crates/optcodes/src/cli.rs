//! Command-line surface: one binary with a subcommand per capability, all
//! speaking the plain-text formats (code files, orbit files, cover
//! instances, class inventories).
//!
//! Exit status: 0 on success, 1 on domain errors (including malformed
//! input files, diagnosed with a line number), 2 on usage errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::classify::{
    classify_shortenings_with, counting_identity, inventory_lines, populate_extension_counts,
    ClassifyOptions,
};
use crate::code::{max_code_size, Code, CodeError};
use crate::cover::{self, ExactCoverInstance};
use crate::lengthening::{count_extensions, enumerate_perfect, is_shortened_perfect};
use crate::switching::{switching_graph, switching_class};
use crate::symmetry::{
    automorphism_group, canonical_form, equivalence_witness, OrbitSpec, DEFAULT_CLOSURE_CAP,
};

#[derive(Parser)]
#[command(
    name = "optcodes",
    version,
    about = "Workbench for binary one-error-correcting codes",
    max_term_width = 100
)]
struct Cli {
    /// Cap the worker threads used by parallel stages.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// How code inputs are parsed: plain code files, or orbit files
    /// expanded on the fly.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Code)]
    format: InputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum InputFormat {
    Code,
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// Hamming distance between two 0/1 words.
    Dist { word_a: String, word_b: String },
    /// Print (n,M,d) plus perfect/optimal verdicts for a code file.
    Check { file: PathBuf },
    /// Shorten a code at a coordinate and value.
    Shorten {
        #[arg(long)]
        coord: u8,
        #[arg(long)]
        value: u8,
        file: PathBuf,
    },
    /// Switch one connected component of a switching graph.
    Switch {
        #[arg(long)]
        coord: u8,
        /// Component index as printed by `components`.
        #[arg(long)]
        component: usize,
        file: PathBuf,
    },
    /// Connected components of the switching graph at a coordinate.
    Components {
        #[arg(long)]
        coord: u8,
        file: PathBuf,
    },
    /// All switch neighbors: every coordinate, every component.
    Neighbors {
        file: PathBuf,
        /// Keep one neighbor per equivalence class.
        #[arg(long)]
        dedup: bool,
        /// Write each listed neighbor as a code file into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Walk the switching class up to a budget of canonical forms.
    Class {
        file: PathBuf,
        #[arg(long)]
        budget: usize,
        /// Directory for one representative code file per class.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Canonical form of a code, with a transporter comment.
    Canon { file: PathBuf },
    /// Automorphism group order and generators of a code.
    Aut { file: PathBuf },
    /// Decide equivalence of two codes; prints a witness when equivalent.
    Equiv { file_a: PathBuf, file_b: PathBuf },
    /// Expand an orbit file (group generators plus representatives) into a
    /// plain-text code on stdout.
    Expand {
        file: PathBuf,
        /// Group-size cap for the closure.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Decide whether the code extends to a perfect code of the target
    /// length; prints an EXTENDS verdict line.
    Extend {
        file: PathBuf,
        #[arg(long)]
        target: u8,
        /// Count the extensions exactly instead of stopping at the first.
        #[arg(long)]
        count: bool,
    },
    /// Exact number of extensions to a perfect code of the target length.
    CountExt {
        file: PathBuf,
        #[arg(long)]
        target: u8,
    },
    /// Enumerate all 1-perfect codes of length 3 or 7.
    EnumPerfect {
        n: u8,
        /// Write each code into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Classify repeated shortenings of seed codes up to equivalence.
    Classify {
        seeds: Vec<PathBuf>,
        #[arg(long)]
        depth: usize,
        /// Directory for representative code files (also the checkpoint
        /// location; defaults to $OPTCODES_SCRATCH).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Populate E values (extensions back to a perfect code).
        #[arg(long)]
        with_extensions: bool,
    },
    /// Classify, populate E values and check the orbit-stabilizer counting
    /// identity against the perfect-code census.
    CountIdentity {
        seeds: Vec<PathBuf>,
        #[arg(long)]
        depth: usize,
    },
    /// Solve an exact-cover instance file.
    SolveCover {
        file: PathBuf,
        /// Enumerate up to this many solutions.
        #[arg(long, default_value_t = 1)]
        cap: usize,
        /// Print only the exact solution count.
        #[arg(long)]
        count: bool,
    },
}

struct CliError(String);

impl CliError {
    fn new(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

macro_rules! from_error {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError(e.to_string())
            }
        })*
    };
}

from_error!(
    CodeError,
    crate::symmetry::SymmetryError,
    crate::switching::SwitchError,
    crate::cover::CoverError,
    crate::lengthening::ExtendError,
    crate::classify::ClassifyError,
    std::io::Error,
    std::fmt::Error
);

/// Parse the arguments (program name excluded) and run one subcommand.
pub fn run<I>(argv: I) -> u8
where
    I: IntoIterator,
    I::Item: Into<String>,
{
    let args = std::iter::once("optcodes".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // Only the first configuration wins within one process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match dispatch(cli.command, cli.format) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))
}

fn read_code(path: &Path, format: InputFormat) -> Result<Code, CliError> {
    match format {
        InputFormat::Code => Code::parse(&read_to_string(path)?)
            .map_err(|e| CliError::new(format!("{}: {e}", path.display()))),
        InputFormat::Orbit => {
            let (_, code) = read_orbit(path)?
                .expand(DEFAULT_CLOSURE_CAP)
                .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
            Ok(code)
        }
    }
}

fn read_orbit(path: &Path) -> Result<OrbitSpec, CliError> {
    OrbitSpec::parse(&read_to_string(path)?)
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))
}

fn read_cover(path: &Path) -> Result<ExactCoverInstance, CliError> {
    ExactCoverInstance::parse(&read_to_string(path)?)
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))
}

fn parse_bit(value: u8) -> Result<bool, CliError> {
    match value {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(CliError::new(format!("--value must be 0 or 1, got {other}"))),
    }
}

fn dispatch(command: Command, format: InputFormat) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        Command::Dist { word_a, word_b } => {
            let a = crate::code::Codeword::parse(&word_a)?;
            let b = crate::code::Codeword::parse(&word_b)?;
            writeln!(out, "{}", a.distance(&b)?)?;
        }
        Command::Check { file } => {
            let code = read_code(&file, format)?;
            let n = code.length();
            let m = code.size();
            let (d_text, optimal) = match code.min_distance() {
                Ok(d) => {
                    let optimal = if d == 3 {
                        match max_code_size(n) {
                            Ok(best) if m == best => "yes",
                            Ok(_) => "no",
                            Err(_) => "unknown",
                        }
                    } else {
                        "unknown"
                    };
                    (d.to_string(), optimal)
                }
                Err(_) => ("-".to_string(), "unknown"),
            };
            let perfect = if code.is_perfect() { "yes" } else { "no" };
            writeln!(out, "({n},{m},{d_text}) perfect={perfect} optimal={optimal}")?;
        }
        Command::Shorten { coord, value, file } => {
            let code = read_code(&file, format)?;
            write!(out, "{}", code.shorten(coord, parse_bit(value)?)?)?;
        }
        Command::Switch {
            coord,
            component,
            file,
        } => {
            let code = read_code(&file, format)?;
            let graph = switching_graph(&code, coord)?;
            write!(out, "{}", graph.switch_component(component)?)?;
        }
        Command::Components { coord, file } => {
            let code = read_code(&file, format)?;
            let graph = switching_graph(&code, coord)?;
            writeln!(
                out,
                "# coord={coord} d={} components={}",
                graph.min_distance(),
                graph.components().len()
            )?;
            for (idx, comp) in graph.components().iter().enumerate() {
                write!(out, "{idx}:")?;
                for &w in comp {
                    write!(out, " {}", code.word(w as usize))?;
                }
                writeln!(out)?;
            }
        }
        Command::Neighbors {
            file,
            dedup,
            out_dir,
        } => {
            let code = read_code(&file, format)?;
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir)?;
            }
            let mut seen: BTreeSet<Code> = BTreeSet::new();
            let mut listed = 0usize;
            for coord in 1..=code.length() {
                let graph = switching_graph(&code, coord)?;
                for idx in 0..graph.components().len() {
                    let neighbor = graph.switch_component(idx)?;
                    if dedup && !seen.insert(canonical_form(&neighbor)?.form) {
                        continue;
                    }
                    let d = neighbor.min_distance()?;
                    writeln!(
                        out,
                        "coord={coord} component={idx} size={} d={d}",
                        neighbor.size()
                    )?;
                    if let Some(dir) = &out_dir {
                        std::fs::write(
                            dir.join(format!("neighbor-{coord}-{idx}.code")),
                            neighbor.to_string(),
                        )?;
                    }
                    listed += 1;
                }
            }
            writeln!(out, "# neighbors={listed}")?;
        }
        Command::Class {
            file,
            budget,
            out_dir,
        } => {
            let code = read_code(&file, format)?;
            let scan = switching_class(&code, budget)?;
            std::fs::create_dir_all(&out_dir)?;
            writeln!(out, "# exhausted={}", scan.exhausted)?;
            for (idx, entry) in scan.classes.iter().enumerate() {
                let rep_path = out_dir.join(format!("class-{idx}.code"));
                std::fs::write(&rep_path, entry.representative.to_string())?;
                let aut = automorphism_group(&entry.form)?;
                writeln!(
                    out,
                    "{:016x} {} {}",
                    crate::classify::form_digest(&entry.form),
                    rep_path.display(),
                    aut.group.order()
                )?;
            }
        }
        Command::Canon { file } => {
            let code = read_code(&file, format)?;
            let cf = canonical_form(&code)?;
            writeln!(out, "# transporter: {}", cf.transporter.to_cycles())?;
            write!(out, "{}", cf.form)?;
        }
        Command::Aut { file } => {
            let code = read_code(&file, format)?;
            let aut = automorphism_group(&code)?;
            writeln!(out, "order={} complete={}", aut.group.order(), aut.complete)?;
            for g in aut.group.small_generating_set() {
                writeln!(out, "gen: {}", g.to_cycles())?;
            }
        }
        Command::Equiv { file_a, file_b } => {
            let a = read_code(&file_a, format)?;
            let b = read_code(&file_b, format)?;
            match equivalence_witness(&a, &b)? {
                Some(witness) => {
                    writeln!(out, "equivalent")?;
                    writeln!(out, "witness: {}", witness.to_cycles())?;
                }
                None => writeln!(out, "inequivalent")?,
            }
        }
        Command::Expand { file, cap } => {
            let spec = read_orbit(&file)?;
            let (_, code) = spec.expand(cap)?;
            write!(out, "{code}")?;
        }
        Command::Extend {
            file,
            target,
            count,
        } => {
            let code = read_code(&file, format)?;
            let appended = target
                .checked_sub(code.length())
                .ok_or_else(|| CliError::new(format!("target {target} is shorter than the code")))?;
            if count {
                let e = count_extensions(&code, appended)?;
                writeln!(out, "EXTENDS i={appended} E={e}")?;
            } else {
                let verdict = is_shortened_perfect(&code, appended)?;
                writeln!(out, "EXTENDS i={appended} E={}", if verdict { ">=1" } else { "0" })?;
            }
        }
        Command::CountExt { file, target } => {
            let code = read_code(&file, format)?;
            let appended = target
                .checked_sub(code.length())
                .ok_or_else(|| CliError::new(format!("target {target} is shorter than the code")))?;
            let e = count_extensions(&code, appended)?;
            writeln!(out, "EXTENDS i={appended} E={e}")?;
        }
        Command::EnumPerfect { n, out_dir } => {
            let codes = enumerate_perfect(n)?;
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir)?;
                for (idx, code) in codes.iter().enumerate() {
                    std::fs::write(dir.join(format!("perfect-{idx}.code")), code.to_string())?;
                }
            }
            writeln!(out, "count={}", codes.len())?;
        }
        Command::Classify {
            seeds,
            depth,
            out_dir,
            with_extensions,
        } => {
            let seed_codes = read_seeds(&seeds, format)?;
            let scratch = out_dir.or_else(scratch_from_env);
            let options = ClassifyOptions {
                checkpoint_dir: scratch.clone(),
            };
            let mut classification = classify_shortenings_with(&seed_codes, depth, &options)?;
            let records = classification
                .levels
                .last_mut()
                .expect("final level exists");
            if with_extensions {
                let n = records
                    .first()
                    .map(|r| r.form.length())
                    .unwrap_or_default();
                let target = [3u8, 7, 15]
                    .into_iter()
                    .find(|&t| t >= n)
                    .ok_or_else(|| CliError::new(format!("no perfect target above n={n}")))?;
                populate_extension_counts(records, target - n)?;
            }
            let rep_dir = scratch
                .map(|dir| dir.join(format!("reps-{depth}")))
                .unwrap_or_else(|| PathBuf::from(format!("reps-{depth}")));
            write!(out, "{}", inventory_lines(records, &rep_dir))?;
        }
        Command::CountIdentity { seeds, depth } => {
            let seed_codes = read_seeds(&seeds, format)?;
            let options = ClassifyOptions {
                checkpoint_dir: scratch_from_env(),
            };
            let mut classification = classify_shortenings_with(&seed_codes, depth, &options)?;
            let records = classification
                .levels
                .last_mut()
                .expect("final level exists");
            let n = records.first().map(|r| r.form.length()).unwrap_or_default();
            let target = [3u8, 7, 15]
                .into_iter()
                .find(|&t| t >= n)
                .ok_or_else(|| CliError::new(format!("no perfect target above n={n}")))?;
            populate_extension_counts(records, target - n)?;
            let identity = counting_identity(records, n)?;
            writeln!(
                out,
                "lhs={} rhs={} equal={}",
                identity.lhs, identity.rhs, identity.equal
            )?;
        }
        Command::SolveCover { file, cap, count } => {
            let instance = read_cover(&file)?;
            if count {
                writeln!(out, "count={}", cover::count(&instance))?;
            } else {
                let (solutions, complete) = cover::enumerate(&instance, cap);
                for sol in &solutions {
                    let mut first = true;
                    for &r in sol.rows() {
                        if !first {
                            write!(out, " ")?;
                        }
                        write!(out, "{r}")?;
                        first = false;
                    }
                    writeln!(out)?;
                }
                writeln!(out, "# solutions={} complete={complete}", solutions.len())?;
            }
        }
    }
    Ok(out)
}

fn read_seeds(paths: &[PathBuf], format: InputFormat) -> Result<Vec<Code>, CliError> {
    if paths.is_empty() {
        return Err(CliError::new("at least one seed code file is required"));
    }
    paths.iter().map(|p| read_code(p, format)).collect()
}

fn scratch_from_env() -> Option<PathBuf> {
    std::env::var_os("OPTCODES_SCRATCH").map(PathBuf::from)
}
