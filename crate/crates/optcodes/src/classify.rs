//! Isomorph-free classification of repeated shortenings: shorten every way,
//! reject equivalent codes by canonical form, and record automorphism
//! orders, extension counts and provenance. The per-level results can be
//! checkpointed to disk and reloaded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::code::{Code, CodeError};
use crate::cover::CoverError;
use crate::lengthening::{self, ExtendError};
use crate::symmetry::{automorphism_group, canonical_form, SignedPermutation, SymmetryError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("classification depth must be at least 1")]
    ZeroDepth,
    #[error("no seed codes")]
    NoSeeds,
    #[error("seeds must share one length, found {0} and {1}")]
    MixedSeedLengths(u8, u8),
    #[error("record {index} has no extension count; populate extension counts first")]
    MissingExtensionCount { index: usize },
    #[error("non-integral term in record {index}: {numerator} is not divisible by {aut_order}")]
    NonIntegralTerm {
        index: usize,
        numerator: u128,
        aut_order: u64,
    },
    #[error("no perfect-code census is available for length {0}, so the identity has no right-hand side")]
    RhsUnavailable(u8),
    #[error("checkpoint {path}: {msg}")]
    Checkpoint { path: PathBuf, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
}

/// One equivalence class in a classification level.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    /// Fixed-width digest of the canonical form (display and dedup key;
    /// equality of classes is always confirmed on the full form).
    pub digest: u64,
    /// Canonical form of the class.
    pub form: Code,
    /// First concrete member encountered.
    pub representative: Code,
    /// Transporter mapping the representative onto the form.
    pub transporter: SignedPermutation,
    /// Order of the automorphism group.
    pub aut_order: u64,
    /// E value: extensions to a perfect code; populated lazily.
    pub extension_count: Option<u64>,
    /// Shortening edges (parent class index in the previous level, coord,
    /// value) that reach this class.
    pub provenance: Vec<(usize, u8, bool)>,
}

/// All 2n shortenings of a code, in (coordinate, value) order.
pub fn shorten_all(code: &Code) -> Result<Vec<(u8, bool, Code)>, CodeError> {
    let mut out = Vec::with_capacity(2 * code.length() as usize);
    for coord in 1..=code.length() {
        for value in [false, true] {
            out.push((coord, value, code.shorten(coord, value)?));
        }
    }
    Ok(out)
}

/// FNV-1a digest of a code (length plus sorted words). Stable across runs.
pub fn form_digest(code: &Code) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    let mut eat = |byte: u8| {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    };
    eat(code.length());
    for &w in code.words() {
        eat(w as u8);
        eat((w >> 8) as u8);
    }
    hash
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Directory for per-level checkpoints; levels found there are reloaded
    /// instead of recomputed.
    pub checkpoint_dir: Option<PathBuf>,
}

/// A full classification run: `levels[0]` holds the deduplicated seeds and
/// `levels[k]` the classes of k-fold shortenings.
#[derive(Clone, Debug)]
pub struct Classification {
    pub levels: Vec<Vec<ClassRecord>>,
}

impl Classification {
    pub fn final_level(&self) -> &[ClassRecord] {
        self.levels.last().expect("at least the seed level")
    }
}

/// Classify all `depth`-fold shortenings of the seeds up to equivalence.
/// Empty shortenings (no word held the requested value) are dropped.
pub fn classify_shortenings(seeds: &[Code], depth: usize) -> Result<Classification, ClassifyError> {
    classify_shortenings_with(seeds, depth, &ClassifyOptions::default())
}

pub fn classify_shortenings_with(
    seeds: &[Code],
    depth: usize,
    options: &ClassifyOptions,
) -> Result<Classification, ClassifyError> {
    if depth == 0 {
        return Err(ClassifyError::ZeroDepth);
    }
    let first = seeds.first().ok_or(ClassifyError::NoSeeds)?;
    for s in seeds {
        if s.length() != first.length() {
            return Err(ClassifyError::MixedSeedLengths(first.length(), s.length()));
        }
    }

    let mut levels: Vec<Vec<ClassRecord>> = Vec::with_capacity(depth + 1);
    let seed_level = load_or_build(options, 0, || {
        let inputs: Vec<(usize, u8, bool, Code)> = seeds
            .iter()
            .map(|s| (usize::MAX, 0u8, false, s.clone()))
            .collect();
        dedup_level(inputs)
    })?;
    levels.push(seed_level);

    for level_no in 1..=depth {
        let previous = levels.last().expect("seed level present");
        let next = load_or_build(options, level_no, || {
            let mut inputs = Vec::new();
            for (parent_idx, record) in previous.iter().enumerate() {
                for (coord, value, shortened) in shorten_all(&record.form)? {
                    if !shortened.is_empty() {
                        inputs.push((parent_idx, coord, value, shortened));
                    }
                }
            }
            dedup_level(inputs)
        })?;
        levels.push(next);
    }
    Ok(Classification { levels })
}

/// Canonize the inputs in parallel and merge them into deduplicated class
/// records; deterministic regardless of thread count.
fn dedup_level(
    inputs: Vec<(usize, u8, bool, Code)>,
) -> Result<Vec<ClassRecord>, ClassifyError> {
    let canonized: Vec<(usize, u8, bool, Code, Code, SignedPermutation)> = inputs
        .into_par_iter()
        .map(|(parent, coord, value, code)| {
            let cf = canonical_form(&code)?;
            Ok((parent, coord, value, code, cf.form, cf.transporter))
        })
        .collect::<Result<_, SymmetryError>>()?;

    // Key by digest, confirm on the full form within each bucket.
    let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut records: Vec<ClassRecord> = Vec::new();
    for (parent, coord, value, code, form, transporter) in canonized {
        let digest = form_digest(&form);
        let bucket = buckets.entry(digest).or_default();
        let found = bucket.iter().copied().find(|&i| records[i].form == form);
        let edge = (parent, coord, value);
        match found {
            Some(i) => {
                if parent != usize::MAX && !records[i].provenance.contains(&edge) {
                    records[i].provenance.push(edge);
                }
            }
            None => {
                bucket.push(records.len());
                records.push(ClassRecord {
                    digest,
                    form,
                    representative: code,
                    transporter,
                    aut_order: 0,
                    extension_count: None,
                    provenance: if parent == usize::MAX { Vec::new() } else { vec![edge] },
                });
            }
        }
    }

    records.sort_by(|a, b| a.form.cmp(&b.form));
    let orders: Vec<u64> = records
        .par_iter()
        .map(|r| Ok(automorphism_group(&r.form)?.group.order() as u64))
        .collect::<Result<_, SymmetryError>>()?;
    for (record, order) in records.iter_mut().zip(orders) {
        record.aut_order = order;
    }
    Ok(records)
}

/// Compute E for every record that does not have one yet, extending by
/// `appended` coordinates. E is evaluated on the canonical form, which is
/// sound because extension counts are equivalence invariants.
pub fn populate_extension_counts(
    records: &mut [ClassRecord],
    appended: u8,
) -> Result<(), ClassifyError> {
    let missing: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].extension_count.is_none())
        .collect();
    let counts: Vec<(usize, u64)> = missing
        .into_par_iter()
        .map(|i| Ok((i, lengthening::count_extensions(&records[i].form, appended)?)))
        .collect::<Result<_, ExtendError>>()?;
    for (i, e) in counts {
        records[i].extension_count = Some(e);
    }
    Ok(())
}

/// Result of the counting identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingIdentity {
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
}

/// Sum n! 2^n E(C) / |Aut(C)| over the records (each term must divide
/// exactly) and compare with the number of distinct perfect codes of the
/// inferred target length: the smallest of 3, 7, 15 at or above `n`.
pub fn counting_identity(
    records: &[ClassRecord],
    n: u8,
) -> Result<CountingIdentity, ClassifyError> {
    let target = [3u8, 7, 15]
        .into_iter()
        .find(|&t| t >= n)
        .ok_or(ClassifyError::RhsUnavailable(n))?;
    if target == 15 {
        return Err(ClassifyError::RhsUnavailable(15));
    }
    let group_order: u128 = (1..=n as u128).product::<u128>() << n;
    let mut lhs: u128 = 0;
    for (index, record) in records.iter().enumerate() {
        let e = record
            .extension_count
            .ok_or(ClassifyError::MissingExtensionCount { index })?;
        if e == 0 {
            continue;
        }
        let numerator = group_order * e as u128;
        if numerator % record.aut_order as u128 != 0 {
            return Err(ClassifyError::NonIntegralTerm {
                index,
                numerator,
                aut_order: record.aut_order,
            });
        }
        lhs += numerator / record.aut_order as u128;
    }
    let rhs = lengthening::count_perfect(target)? as u128;
    Ok(CountingIdentity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Render the inventory lines: `form-digest aut_order E representative-path`.
pub fn inventory_lines(records: &[ClassRecord], rep_dir: &Path) -> String {
    let mut out = String::new();
    for (idx, r) in records.iter().enumerate() {
        let e = match r.extension_count {
            Some(e) => e.to_string(),
            None => "-".to_string(),
        };
        let path = rep_dir.join(format!("class-{idx}.code"));
        let _ = writeln!(
            out,
            "{:016x} {} {} {}",
            r.digest,
            r.aut_order,
            e,
            path.display()
        );
    }
    out
}

fn load_or_build(
    options: &ClassifyOptions,
    level: usize,
    build: impl FnOnce() -> Result<Vec<ClassRecord>, ClassifyError>,
) -> Result<Vec<ClassRecord>, ClassifyError> {
    let Some(dir) = &options.checkpoint_dir else {
        return build();
    };
    if fs::metadata(dir.join(format!("level-{level}.done"))).is_ok() {
        return load_level(dir, level);
    }
    let records = build()?;
    write_level(dir, level, &records)?;
    Ok(records)
}

fn write_level(dir: &Path, level: usize, records: &[ClassRecord]) -> Result<(), ClassifyError> {
    let rep_dir = dir.join(format!("reps-{level}"));
    let form_dir = dir.join(format!("forms-{level}"));
    fs::create_dir_all(&rep_dir)?;
    fs::create_dir_all(&form_dir)?;
    for (idx, r) in records.iter().enumerate() {
        fs::write(rep_dir.join(format!("class-{idx}.code")), r.representative.to_string())?;
        fs::write(form_dir.join(format!("class-{idx}.code")), r.form.to_string())?;
    }
    fs::write(
        dir.join(format!("level-{level}.inventory")),
        inventory_lines(records, &rep_dir),
    )?;
    let mut prov = String::new();
    let mut trans = String::new();
    for (idx, r) in records.iter().enumerate() {
        for &(parent, coord, value) in &r.provenance {
            let _ = writeln!(prov, "{idx} {parent} {coord} {}", u8::from(value));
        }
        let _ = writeln!(trans, "{idx} {}", r.transporter.to_cycles());
    }
    fs::write(dir.join(format!("level-{level}.provenance")), prov)?;
    fs::write(dir.join(format!("level-{level}.transporters")), trans)?;
    fs::write(dir.join(format!("level-{level}.done")), "")?;
    Ok(())
}

fn checkpoint_err(path: &Path, msg: impl Into<String>) -> ClassifyError {
    ClassifyError::Checkpoint {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

fn load_level(dir: &Path, level: usize) -> Result<Vec<ClassRecord>, ClassifyError> {
    let inv_path = dir.join(format!("level-{level}.inventory"));
    let inventory = fs::read_to_string(&inv_path)?;
    let rep_dir = dir.join(format!("reps-{level}"));
    let form_dir = dir.join(format!("forms-{level}"));
    let mut records = Vec::new();
    for (idx, line) in inventory.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(checkpoint_err(
                &inv_path,
                format!("line {}: expected 4 fields", idx + 1),
            ));
        }
        let digest = u64::from_str_radix(fields[0], 16)
            .map_err(|_| checkpoint_err(&inv_path, format!("line {}: bad digest", idx + 1)))?;
        let aut_order: u64 = fields[1]
            .parse()
            .map_err(|_| checkpoint_err(&inv_path, format!("line {}: bad aut order", idx + 1)))?;
        let extension_count = match fields[2] {
            "-" => None,
            v => Some(v.parse().map_err(|_| {
                checkpoint_err(&inv_path, format!("line {}: bad extension count", idx + 1))
            })?),
        };
        let representative = Code::parse(&fs::read_to_string(
            rep_dir.join(format!("class-{idx}.code")),
        )?)?;
        let form = Code::parse(&fs::read_to_string(
            form_dir.join(format!("class-{idx}.code")),
        )?)?;
        if form_digest(&form) != digest {
            return Err(checkpoint_err(
                &inv_path,
                format!("line {}: digest does not match the stored form", idx + 1),
            ));
        }
        records.push(ClassRecord {
            digest,
            form,
            representative,
            transporter: SignedPermutation::identity(1),
            aut_order,
            extension_count,
            provenance: Vec::new(),
        });
    }
    let prov_path = dir.join(format!("level-{level}.provenance"));
    for (line_no, line) in fs::read_to_string(&prov_path)?.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(checkpoint_err(
                &prov_path,
                format!("line {}: expected 4 fields", line_no + 1),
            ));
        }
        let idx: usize = fields[0].parse().map_err(|_| {
            checkpoint_err(&prov_path, format!("line {}: bad class index", line_no + 1))
        })?;
        let parent: usize = fields[1].parse().map_err(|_| {
            checkpoint_err(&prov_path, format!("line {}: bad parent index", line_no + 1))
        })?;
        let coord: u8 = fields[2].parse().map_err(|_| {
            checkpoint_err(&prov_path, format!("line {}: bad coordinate", line_no + 1))
        })?;
        let value = fields[3] == "1";
        let record = records.get_mut(idx).ok_or_else(|| {
            checkpoint_err(&prov_path, format!("line {}: class out of range", line_no + 1))
        })?;
        record.provenance.push((parent, coord, value));
    }
    let trans_path = dir.join(format!("level-{level}.transporters"));
    for (line_no, line) in fs::read_to_string(&trans_path)?.lines().enumerate() {
        let (idx, cycles) = line.split_once(' ').ok_or_else(|| {
            checkpoint_err(&trans_path, format!("line {}: expected two fields", line_no + 1))
        })?;
        let idx: usize = idx.parse().map_err(|_| {
            checkpoint_err(&trans_path, format!("line {}: bad class index", line_no + 1))
        })?;
        let record = records.get_mut(idx).ok_or_else(|| {
            checkpoint_err(&trans_path, format!("line {}: class out of range", line_no + 1))
        })?;
        let n = record.form.length();
        record.transporter = SignedPermutation::parse(cycles, n)
            .map_err(|e| checkpoint_err(&trans_path, format!("line {}: {e}", line_no + 1)))?;
        if record.transporter.apply_code(&record.representative)? != record.form {
            return Err(checkpoint_err(
                &trans_path,
                format!("line {}: transporter does not map the representative onto the form", line_no + 1),
            ));
        }
    }
    Ok(records)
}
