//! Deciding whether a code is an i-times shortened 1-perfect code, counting
//! the ways it extends to a perfect code, and enumerating all perfect codes
//! at small lengths. Everything reduces to exact cover: embed the base with
//! zeros appended, and cover the words its radius-1 balls miss.

use thiserror::Error;

use crate::code::{Code, CodeError};
use crate::cover::{self, CoverError, CoverSolution, ExactCoverInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("target length {0} must be 3, 7 or 15")]
    BadTargetLength(u8),
    #[error("appending {0} coordinates is outside the supported range 0..=4")]
    TooManyAppended(u8),
    #[error("not extension-shaped: {0}")]
    NotExtensionShaped(String),
    #[error("perfect-code enumeration supports lengths 3 and 7, got {0}")]
    UnsupportedCensus(u8),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Number of parity coordinates of a perfect code of length `n`, i.e.
/// log2(n + 1) for n in {3, 7, 15}.
fn perfect_log(n: u8) -> Option<u32> {
    match n {
        3 => Some(2),
        7 => Some(3),
        15 => Some(4),
        _ => None,
    }
}

/// A base code embedded into F_2^N as `w . 0^i` (zeros appended in the last
/// `i` coordinates), to be completed to a 1-perfect code of length N.
///
/// Every way of shortening a perfect code can be moved to this fixed
/// position-and-value convention by an equivalence of the ambient space,
/// so existence and counting questions are unchanged by it.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    base: Code,
    target_len: u8,
}

impl ExtensionProblem {
    pub fn new(base: Code, target_len: u8) -> Result<Self, ExtendError> {
        let m = perfect_log(target_len).ok_or(ExtendError::BadTargetLength(target_len))?;
        if target_len < base.length() {
            return Err(ExtendError::NotExtensionShaped(format!(
                "base length {} exceeds target {target_len}",
                base.length()
            )));
        }
        let appended = target_len - base.length();
        if appended > 4 {
            return Err(ExtendError::TooManyAppended(appended));
        }
        let expected = 1usize << (target_len as u32 - m - appended as u32);
        if base.size() != expected {
            return Err(ExtendError::NotExtensionShaped(format!(
                "{} words, but an {appended}-times shortened perfect code of length {target_len} has {expected}",
                base.size()
            )));
        }
        if base.size() >= 2 && base.min_distance()? < 3 {
            return Err(ExtendError::NotExtensionShaped(
                "minimum distance below 3".into(),
            ));
        }
        Ok(ExtensionProblem { base, target_len })
    }

    pub fn base(&self) -> &Code {
        &self.base
    }

    pub fn target_len(&self) -> u8 {
        self.target_len
    }

    /// Number of appended coordinates i.
    pub fn appended(&self) -> u8 {
        self.target_len - self.base.length()
    }

    /// Build the exact-cover instance: columns are the words of F_2^N not
    /// covered by the embedded base's radius-1 balls; candidate rows are the
    /// words whose whole ball lies in the uncovered set, which is exactly
    /// the distance >= 3 condition against every base word.
    pub fn instance(&self) -> ExtensionInstance {
        let n = self.target_len as u32;
        let space = 1usize << n;
        let mut covered = vec![false; space];
        for &w in self.base.words() {
            covered[w as usize] = true;
            for b in 0..n {
                covered[(w ^ (1 << b)) as usize] = true;
            }
        }
        let mut col_of = vec![u32::MAX; space];
        let mut num_columns = 0u32;
        for (x, &c) in covered.iter().enumerate() {
            if !c {
                col_of[x] = num_columns;
                num_columns += 1;
            }
        }
        let mut candidates = Vec::new();
        let mut rows: Vec<Vec<usize>> = Vec::new();
        'words: for x in 0..space as u16 {
            if covered[x as usize] {
                continue;
            }
            let mut row = Vec::with_capacity(n as usize + 1);
            row.push(col_of[x as usize] as usize);
            for b in 0..n {
                let y = (x ^ (1 << b)) as usize;
                if covered[y] {
                    continue 'words;
                }
                row.push(col_of[y] as usize);
            }
            candidates.push(x);
            rows.push(row);
        }
        let cover = ExactCoverInstance::new(num_columns as usize, rows)
            .expect("extension rows are valid by construction");
        ExtensionInstance {
            base: self.base.clone(),
            target_len: self.target_len,
            candidates,
            cover,
        }
    }
}

/// The exact-cover instance of an extension problem, with the mapping from
/// rows back to candidate codewords.
#[derive(Clone, Debug)]
pub struct ExtensionInstance {
    base: Code,
    target_len: u8,
    candidates: Vec<u16>,
    cover: ExactCoverInstance,
}

impl ExtensionInstance {
    pub fn cover(&self) -> &ExactCoverInstance {
        &self.cover
    }

    /// Candidate codeword of each row, as bits of a length-N word.
    pub fn candidate_words(&self) -> &[u16] {
        &self.candidates
    }

    /// The perfect code corresponding to a solution: embedded base plus the
    /// selected candidates.
    pub fn code_for(&self, solution: &CoverSolution) -> Code {
        let mut words: Vec<u16> = self.base.words().to_vec();
        words.extend(solution.rows().iter().map(|&r| self.candidates[r]));
        words.sort_unstable();
        Code::from_sorted(self.target_len, words)
    }
}

fn problem_for(code: &Code, appended: u8) -> Result<Option<ExtensionProblem>, ExtendError> {
    let target = code
        .length()
        .checked_add(appended)
        .filter(|&t| t == 7 || t == 15)
        .ok_or_else(|| ExtendError::BadTargetLength(code.length().saturating_add(appended)))?;
    if appended > 4 {
        return Err(ExtendError::TooManyAppended(appended));
    }
    match ExtensionProblem::new(code.clone(), target) {
        Ok(p) => Ok(Some(p)),
        // A code of the wrong cardinality or distance is simply not a
        // shortened perfect code; only parameter misuse is an error.
        Err(ExtendError::NotExtensionShaped(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Is the code an `appended`-times shortened 1-perfect code of length
/// `code.length() + appended`? Decided by exact cover on the extension
/// instance.
pub fn is_shortened_perfect(code: &Code, appended: u8) -> Result<bool, ExtendError> {
    match problem_for(code, appended)? {
        None => Ok(false),
        Some(p) => Ok(cover::solve_exists(p.instance().cover()).is_some()),
    }
}

/// E(C): the number of distinct perfect codes of length
/// `code.length() + appended` whose fixed-position zero-value shortening is
/// exactly this code.
pub fn count_extensions(code: &Code, appended: u8) -> Result<u64, ExtendError> {
    match problem_for(code, appended)? {
        None => Ok(0),
        Some(p) => Ok(cover::count(p.instance().cover())),
    }
}

/// Up to `cap` extensions as explicit perfect codes, plus a completeness
/// flag.
pub fn extensions(code: &Code, appended: u8, cap: usize) -> Result<(Vec<Code>, bool), ExtendError> {
    match problem_for(code, appended)? {
        None => Ok((Vec::new(), true)),
        Some(p) => {
            let instance = p.instance();
            let (sols, complete) = cover::enumerate(instance.cover(), cap);
            Ok((
                sols.iter().map(|s| instance.code_for(s)).collect(),
                complete,
            ))
        }
    }
}

fn census_instance(n: u8) -> ExactCoverInstance {
    let space = 1usize << n;
    let rows: Vec<Vec<usize>> = (0..space as u16)
        .map(|w| {
            let mut ball: Vec<usize> = (0..n).map(|b| (w ^ (1 << b)) as usize).collect();
            ball.push(w as usize);
            ball
        })
        .collect();
    ExactCoverInstance::new(space, rows).expect("ball rows are valid")
}

/// All distinct 1-perfect codes of length n (3 or 7), via exact cover of
/// F_2^n by radius-1 balls; row ids are the ball centers.
pub fn enumerate_perfect(n: u8) -> Result<Vec<Code>, ExtendError> {
    if n != 3 && n != 7 {
        return Err(ExtendError::UnsupportedCensus(n));
    }
    let (sols, complete) = cover::enumerate(&census_instance(n), usize::MAX);
    assert!(complete);
    Ok(sols
        .iter()
        .map(|s| {
            Code::from_patterns(n, s.rows().iter().map(|&r| r as u16).collect())
                .expect("row ids are words")
        })
        .collect())
}

/// Number of distinct 1-perfect codes of length n (3 or 7).
pub fn count_perfect(n: u8) -> Result<u64, ExtendError> {
    if n != 3 && n != 7 {
        return Err(ExtendError::UnsupportedCensus(n));
    }
    Ok(cover::count(&census_instance(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{hamming7, Codeword};
    use crate::symmetry::{are_equivalent, canonical_form, SignedPermutation};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn perfect_code_is_its_own_extension() {
        let p = ExtensionProblem::new(hamming7(), 7).unwrap();
        assert_eq!(p.appended(), 0);
        let inst = p.instance();
        assert_eq!(inst.cover().num_columns(), 0);
        assert_eq!(inst.cover().rows().len(), 0);
        let sol = cover::solve_exists(inst.cover()).unwrap();
        assert_eq!(inst.code_for(&sol), hamming7());
        assert_eq!(count_extensions(&hamming7(), 0).unwrap(), 1);
    }

    #[test]
    fn doubly_shortened_hamming_extends() {
        let base = hamming7()
            .shorten(7, false)
            .unwrap()
            .shorten(6, false)
            .unwrap();
        assert_eq!(base.size(), 4);
        let p = ExtensionProblem::new(base.clone(), 7).unwrap();
        let inst = p.instance();
        assert_eq!(inst.cover().num_columns(), 128 - 4 * 8);
        assert!(is_shortened_perfect(&base, 2).unwrap());

        let (exts, complete) = extensions(&base, 2, usize::MAX).unwrap();
        assert!(complete);
        assert!(!exts.is_empty());
        for ext in &exts {
            assert!(ext.is_perfect());
            assert_eq!(ext.length(), 7);
            // The fixed-position shortening gives back the base.
            let back = ext.shorten(7, false).unwrap().shorten(6, false).unwrap();
            assert_eq!(back, base);
        }
        assert_eq!(exts.len() as u64, count_extensions(&base, 2).unwrap());
    }

    #[test]
    fn single_word_extends_to_length_3() {
        let base = Code::new(2, [Codeword::parse("00").unwrap()]).unwrap();
        let p = ExtensionProblem::new(base, 3).unwrap();
        let inst = p.instance();
        let (sols, complete) = cover::enumerate(inst.cover(), 10);
        assert!(complete);
        assert_eq!(sols.len(), 1);
        let ext = inst.code_for(&sols[0]);
        assert_eq!(ext.to_string(), "000\n111\n");
    }

    #[test]
    fn shape_violations_mean_not_shortened_perfect() {
        // Wrong cardinality.
        let c = Code::from_patterns(5, vec![0b00000, 0b11100, 0b00111]).unwrap();
        assert!(!is_shortened_perfect(&c, 2).unwrap());
        assert_eq!(count_extensions(&c, 2).unwrap(), 0);

        // Right cardinality, distance below 3.
        let d = Code::from_patterns(5, vec![0, 1, 0b11100, 0b11111]).unwrap();
        assert!(!is_shortened_perfect(&d, 2).unwrap());

        // Parameter misuse is an error, not a verdict.
        assert!(matches!(
            is_shortened_perfect(&c, 3),
            Err(ExtendError::BadTargetLength(8))
        ));
        let tiny = Code::from_patterns(2, vec![0]).unwrap();
        assert!(matches!(
            is_shortened_perfect(&tiny, 5),
            Err(ExtendError::BadTargetLength(7)) | Err(ExtendError::TooManyAppended(5))
        ));
    }

    #[test]
    fn census_of_length_3() {
        let all = enumerate_perfect(3).unwrap();
        assert_eq!(all.len(), 4);
        let texts: Vec<String> = all.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            texts,
            [
                "000\n111\n",
                "100\n011\n",
                "010\n101\n",
                "110\n001\n",
            ]
        );
        assert_eq!(count_perfect(3).unwrap(), 4);
        assert!(matches!(
            enumerate_perfect(5),
            Err(ExtendError::UnsupportedCensus(5))
        ));
    }

    #[test]
    fn census_of_length_7() {
        let all = enumerate_perfect(7).unwrap();
        assert_eq!(all.len(), 240);
        assert_eq!(count_perfect(7).unwrap(), 240);
        for c in all.iter().step_by(40) {
            assert!(c.is_perfect());
        }
        // Spot-check class invariance; the full 240-code canonization runs
        // in the acceptance suite.
        let f0 = canonical_form(&all[0]).unwrap().form;
        let f1 = canonical_form(&all[120]).unwrap().form;
        assert_eq!(f0, f1);
        assert!(all.contains(&hamming7()));
    }

    #[test]
    fn round_trip_single_shortenings() {
        let h = hamming7();
        for coord in 1..=7 {
            for value in [false, true] {
                let s = h.shorten(coord, value).unwrap();
                assert!(is_shortened_perfect(&s, 1).unwrap(), "coord {coord} value {value}");
            }
        }
    }

    #[test]
    fn every_perfect_code_round_trips_all_shortenings() {
        for p in enumerate_perfect(7).unwrap() {
            for coord in 1..=7 {
                for value in [false, true] {
                    let s = p.shorten(coord, value).unwrap();
                    assert!(is_shortened_perfect(&s, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn extension_count_is_a_class_invariant() {
        let mut rng = StdRng::seed_from_u64(41);
        let base = hamming7()
            .shorten(3, true)
            .unwrap()
            .shorten(1, false)
            .unwrap();
        let e = count_extensions(&base, 2).unwrap();
        assert!(e >= 1);
        for _ in 0..5 {
            let mut images: Vec<u8> = (0..5).collect();
            for i in (1..images.len()).rev() {
                let j = rng.random_range(0..=i);
                images.swap(i, j);
            }
            let g = SignedPermutation::from_parts(5, images, rng.random::<u16>() & 0x1f);
            let moved = g.apply_code(&base).unwrap();
            assert_eq!(count_extensions(&moved, 2).unwrap(), e);
        }
    }

    #[test]
    fn table1_extension_instance_size() {
        let path = format!(
            "{}/data/table1-first.orbit",
            env!("CARGO_MANIFEST_DIR")
        );
        let spec = crate::symmetry::OrbitSpec::parse(&std::fs::read_to_string(path).unwrap())
            .unwrap();
        let (_, code) = spec.expand(1_000_000).unwrap();
        let p = ExtensionProblem::new(code, 15).unwrap();
        let inst = p.instance();
        assert_eq!(inst.cover().num_columns(), 32768 - 512 * 16);
        assert!(inst.cover().rows().len() < 32768);
    }

    #[test]
    fn extensions_of_equivalent_codes_are_equivalent_families() {
        // Sanity on the zero-suffix convention: the extension family of a
        // shortened Hamming code maps onto the family of its translate.
        let base = hamming7().shorten(7, false).unwrap();
        let (exts, _) = extensions(&base, 1, usize::MAX).unwrap();
        assert!(!exts.is_empty());
        for e in &exts {
            assert!(e.is_perfect());
            assert!(are_equivalent(e, &hamming7()).unwrap());
        }
    }
}
