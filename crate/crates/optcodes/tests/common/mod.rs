//! Helpers shared by the integration suites: fixture loading, seeded random
//! objects, and the naive exponential exact-cover oracle.
#![allow(dead_code)] // each test binary uses its own subset

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;

use optcodes::code::Code;
use optcodes::cover::ExactCoverInstance;
use optcodes::symmetry::{Group, OrbitSpec, SignedPermutation, DEFAULT_CLOSURE_CAP};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load_orbit(name: &str) -> OrbitSpec {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    OrbitSpec::parse(&text).expect("fixture parses")
}

pub fn expand_table1(which: usize) -> (Group, Code) {
    let name = ["table1-first.orbit", "table1-second.orbit"][which];
    load_orbit(name).expand(DEFAULT_CLOSURE_CAP).expect("fixture expands")
}

pub fn random_code(rng: &mut StdRng, n: u8, m: usize) -> Code {
    let mask: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut words = BTreeSet::new();
    while words.len() < m {
        words.insert(rng.random::<u16>() & mask);
    }
    Code::from_patterns(n, words.into_iter().collect()).unwrap()
}

pub fn random_signed_perm(rng: &mut StdRng, n: u8) -> SignedPermutation {
    let mut cycles = String::new();
    let mut coords: Vec<u8> = (1..=n).collect();
    for i in (1..coords.len()).rev() {
        let j = rng.random_range(0..=i);
        coords.swap(i, j);
    }
    // One cycle over a random prefix, flips sprinkled over everything.
    let cut = rng.random_range(1..=coords.len());
    cycles.push('(');
    for (k, c) in coords[..cut].iter().enumerate() {
        if k > 0 {
            cycles.push(' ');
        }
        if rng.random_bool(0.5) {
            cycles.push('~');
        }
        cycles.push_str(&c.to_string());
    }
    cycles.push(')');
    for c in &coords[cut..] {
        if rng.random_bool(0.3) {
            cycles.push_str(&format!("(~{c})"));
        }
    }
    SignedPermutation::parse(&cycles, n).unwrap()
}

/// Exponential-time exact-cover oracle: try every subset of rows. Only for
/// instances with few rows.
pub fn naive_cover_solutions(inst: &ExactCoverInstance) -> Vec<Vec<usize>> {
    let nrows = inst.rows().len();
    assert!(nrows <= 20, "oracle is exponential in the row count");
    let forced: BTreeSet<usize> = inst.forced_rows().iter().copied().collect();
    let mut out = Vec::new();
    'subsets: for mask in 0u32..1 << nrows {
        for &f in &forced {
            if mask >> f & 1 == 0 {
                continue 'subsets;
            }
        }
        let mut covered = vec![false; inst.num_columns()];
        let mut rows = Vec::new();
        for r in 0..nrows {
            if mask >> r & 1 == 0 {
                continue;
            }
            rows.push(r);
            for &col in &inst.rows()[r] {
                if covered[col] {
                    continue 'subsets;
                }
                covered[col] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            out.push(rows);
        }
    }
    out
}
