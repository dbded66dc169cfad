//! Codewords, codes and their basic metrics: Hamming distance, minimum
//! distance, shortening, perfection and optimality checks, plus an
//! exhaustive small-length optimality oracle.

use std::fmt;

use thiserror::Error;

/// Longest supported word length; codewords are stored as `u16` bit patterns.
pub const MAX_LEN: u8 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("word length {0} outside supported range 1..=16")]
    BadLength(usize),
    #[error("bit pattern {bits:#018b} has bits set at or beyond length {len}")]
    StrayBits { bits: u16, len: u8 },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(u8, u8),
    #[error("minimum distance is undefined for codes with fewer than 2 words")]
    UndefinedMinDistance,
    #[error("coordinate {coord} out of range 1..={len}")]
    CoordOutOfRange { coord: u8, len: u8 },
    #[error("radius {radius} out of range 0..={len}")]
    RadiusOutOfRange { radius: u8, len: u8 },
    #[error("A({0},3) is not certified by this library")]
    Uncertified(u8),
    #[error("exhaustive optimality search supports n <= 7, got {0}")]
    SearchTooLarge(u8),
    #[error("minimum distance {0} must be at least 1")]
    BadMinDistance(u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> CodeError {
    CodeError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A binary word of length 1..=16. Coordinate `i` (1-based, leftmost in the
/// text form) is stored in bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    len: u8,
    bits: u16,
}

impl Codeword {
    pub fn new(len: u8, bits: u16) -> Result<Self, CodeError> {
        if len == 0 || len > MAX_LEN {
            return Err(CodeError::BadLength(len as usize));
        }
        if len < 16 && bits >> len != 0 {
            return Err(CodeError::StrayBits { bits, len });
        }
        Ok(Codeword { len, bits })
    }

    pub fn zero(len: u8) -> Result<Self, CodeError> {
        Codeword::new(len, 0)
    }

    pub(crate) fn from_raw(len: u8, bits: u16) -> Self {
        debug_assert!(len >= 1 && len <= MAX_LEN);
        debug_assert!(len == 16 || bits >> len == 0);
        Codeword { len, bits }
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    /// Value of coordinate `coord` (1-based).
    pub fn get(&self, coord: u8) -> Result<bool, CodeError> {
        if coord == 0 || coord > self.len {
            return Err(CodeError::CoordOutOfRange {
                coord,
                len: self.len,
            });
        }
        Ok(self.bits >> (coord - 1) & 1 == 1)
    }

    /// Number of one-bits among the coordinates.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Hamming distance to `other`.
    pub fn distance(&self, other: &Codeword) -> Result<u32, CodeError> {
        if self.len != other.len {
            return Err(CodeError::LengthMismatch(self.len, other.len));
        }
        Ok((self.bits ^ other.bits).count_ones())
    }

    /// All words at distance at most `radius` from this one, in increasing
    /// bit-pattern order.
    pub fn ball(&self, radius: u8) -> Result<Vec<Codeword>, CodeError> {
        if radius > self.len {
            return Err(CodeError::RadiusOutOfRange {
                radius,
                len: self.len,
            });
        }
        let mut masks = Vec::new();
        collect_masks_up_to_weight(self.len, radius, 0, 0, &mut masks);
        let mut out: Vec<Codeword> = masks
            .into_iter()
            .map(|m| Codeword::from_raw(self.len, self.bits ^ m))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Parse a word from a 0/1 string, leftmost character = coordinate 1.
    pub fn parse(s: &str) -> Result<Self, CodeError> {
        if s.is_empty() || s.len() > MAX_LEN as usize {
            return Err(CodeError::BadLength(s.len()));
        }
        let mut bits = 0u16;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(parse_err(1, format!("invalid character {ch:?} in codeword")));
                }
            }
        }
        Ok(Codeword {
            len: s.len() as u8,
            bits,
        })
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

fn collect_masks_up_to_weight(len: u8, left: u8, start: u8, acc: u16, out: &mut Vec<u16>) {
    out.push(acc);
    if left == 0 {
        return;
    }
    for i in start..len {
        collect_masks_up_to_weight(len, left - 1, i + 1, acc | 1 << i, out);
    }
}

/// Code parameters (n, M, d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: u8,
    pub m: usize,
    pub d: u32,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.d)
    }
}

/// A duplicate-free set of equal-length codewords, stored sorted by
/// increasing bit-pattern value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    len: u8,
    words: Vec<u16>,
}

impl Code {
    pub fn new(len: u8, words: impl IntoIterator<Item = Codeword>) -> Result<Self, CodeError> {
        if len == 0 || len > MAX_LEN {
            return Err(CodeError::BadLength(len as usize));
        }
        let mut patterns = Vec::new();
        for w in words {
            if w.len() != len {
                return Err(CodeError::LengthMismatch(len, w.len()));
            }
            patterns.push(w.bits());
        }
        patterns.sort_unstable();
        patterns.dedup();
        Ok(Code {
            len,
            words: patterns,
        })
    }

    pub fn from_patterns(len: u8, mut patterns: Vec<u16>) -> Result<Self, CodeError> {
        if len == 0 || len > MAX_LEN {
            return Err(CodeError::BadLength(len as usize));
        }
        if len < 16 {
            if let Some(&bits) = patterns.iter().find(|&&p| p >> len != 0) {
                return Err(CodeError::StrayBits { bits, len });
            }
        }
        patterns.sort_unstable();
        patterns.dedup();
        Ok(Code {
            len,
            words: patterns,
        })
    }

    pub(crate) fn from_sorted(len: u8, words: Vec<u16>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Code { len, words }
    }

    /// Word length n.
    pub fn length(&self) -> u8 {
        self.len
    }

    /// Cardinality M.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Raw bit patterns, strictly increasing.
    pub fn words(&self) -> &[u16] {
        &self.words
    }

    pub fn word(&self, idx: usize) -> Codeword {
        Codeword::from_raw(self.len, self.words[idx])
    }

    pub fn iter(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().map(|&b| Codeword::from_raw(self.len, b))
    }

    pub fn contains(&self, w: &Codeword) -> bool {
        w.len() == self.len && self.words.binary_search(&w.bits()).is_ok()
    }

    /// Minimum pairwise Hamming distance; requires at least two words.
    pub fn min_distance(&self) -> Result<u32, CodeError> {
        if self.words.len() < 2 {
            return Err(CodeError::UndefinedMinDistance);
        }
        let mut best = u32::MAX;
        for (i, &u) in self.words.iter().enumerate() {
            for &v in &self.words[i + 1..] {
                best = best.min((u ^ v).count_ones());
            }
        }
        Ok(best)
    }

    pub fn params(&self) -> Result<CodeParams, CodeError> {
        Ok(CodeParams {
            n: self.len,
            m: self.size(),
            d: self.min_distance()?,
        })
    }

    /// Delete `coord` and keep only the words holding `value` there.
    pub fn shorten(&self, coord: u8, value: bool) -> Result<Code, CodeError> {
        if coord == 0 || coord > self.len {
            return Err(CodeError::CoordOutOfRange {
                coord,
                len: self.len,
            });
        }
        if self.len < 2 {
            return Err(CodeError::BadLength(self.len as usize - 1));
        }
        let bit = coord - 1;
        let low_mask = (1u16 << bit) - 1;
        let mut kept: Vec<u16> = self
            .words
            .iter()
            .filter(|&&w| (w >> bit & 1 == 1) == value)
            .map(|&w| (w & low_mask) | (w >> (bit + 1)) << bit)
            .collect();
        kept.sort_unstable();
        kept.dedup();
        Ok(Code {
            len: self.len - 1,
            words: kept,
        })
    }

    /// True iff the radius-1 balls around the codewords partition the whole
    /// space F_2^n.
    pub fn is_perfect(&self) -> bool {
        if self.words.is_empty() {
            return false;
        }
        let n = self.len as u32;
        let space = 1usize << n;
        let mut covered = vec![false; space];
        let mut count = 0usize;
        for &w in &self.words {
            for k in 0..=n {
                let x = if k == 0 { w } else { w ^ (1 << (k - 1)) };
                let slot = &mut covered[x as usize];
                if *slot {
                    return false;
                }
                *slot = true;
                count += 1;
            }
        }
        count == space
    }

    /// Translate every word by `x` (bitwise XOR).
    pub fn translate(&self, x: u16) -> Result<Code, CodeError> {
        if self.len < 16 && x >> self.len != 0 {
            return Err(CodeError::StrayBits { bits: x, len: self.len });
        }
        let mut words: Vec<u16> = self.words.iter().map(|&w| w ^ x).collect();
        words.sort_unstable();
        Ok(Code {
            len: self.len,
            words,
        })
    }

    /// Parse the plain-text code format: one 0/1 word per line, `#` starts a
    /// comment line, blank lines are ignored, all words must share one length
    /// and be distinct.
    pub fn parse(text: &str) -> Result<Code, CodeError> {
        let mut len: Option<u8> = None;
        let mut words = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let w = Codeword::parse(line).map_err(|e| match e {
                CodeError::Parse { msg, .. } => parse_err(line_no, msg),
                CodeError::BadLength(l) => {
                    parse_err(line_no, format!("word length {l} outside supported range 1..=16"))
                }
                other => parse_err(line_no, other.to_string()),
            })?;
            match len {
                None => len = Some(w.len()),
                Some(l) if l != w.len() => {
                    return Err(parse_err(
                        line_no,
                        format!("word length {} differs from earlier length {}", w.len(), l),
                    ));
                }
                _ => {}
            }
            if words.contains(&w.bits()) {
                return Err(parse_err(line_no, format!("duplicate codeword {line}")));
            }
            words.push(w.bits());
        }
        let len = len.ok_or_else(|| parse_err(0, "no codewords in input"))?;
        words.sort_unstable();
        Ok(Code { len, words })
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in self.iter() {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, M={})", self.len, self.size())?;
        if self.size() <= 8 {
            write!(f, " {{")?;
            for (i, w) in self.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{w}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// The (7,16,3) Hamming code: words orthogonal to the standard parity-check
/// rows. Used as a fixture throughout the test suite.
pub fn hamming7() -> Code {
    const CHECKS: [u16; 3] = [0b0101_0101, 0b0110_0110, 0b0111_1000];
    let words: Vec<u16> = (0u16..128)
        .filter(|w| CHECKS.iter().all(|c| (w & c).count_ones() % 2 == 0))
        .collect();
    Code::from_sorted(7, words)
}

/// A(n,3) for lengths this library can certify: exhaustive search for
/// n <= 7, known optimal sizes for n in 12..=15. Everything else is refused.
pub fn max_code_size(n: u8) -> Result<usize, CodeError> {
    match n {
        1..=7 => Ok(brute_force_optimal(n, 3)?.0),
        12 => Ok(256),
        13 => Ok(512),
        14 => Ok(1024),
        15 => Ok(2048),
        _ => Err(CodeError::Uncertified(n)),
    }
}

/// Maximum size of a length-`n` code with minimum distance `d`, found by
/// exhaustive backtracking over words in increasing order with the zero word
/// fixed (code sizes are translation-invariant), plus one witness code.
pub fn brute_force_optimal(n: u8, d: u32) -> Result<(usize, Code), CodeError> {
    if n == 0 {
        return Err(CodeError::BadLength(0));
    }
    if n > 7 {
        return Err(CodeError::SearchTooLarge(n));
    }
    if d == 0 {
        return Err(CodeError::BadMinDistance(d));
    }
    let total = 1usize << n;
    let compat: Vec<u128> = (0..total)
        .map(|w| {
            let mut mask = 0u128;
            for v in 0..total {
                if ((w ^ v) as u16).count_ones() >= d {
                    mask |= 1 << v;
                }
            }
            mask
        })
        .collect();

    let mut best_size = 1usize;
    let mut best_words: Vec<u16> = vec![0];
    let mut chosen: Vec<u16> = vec![0];
    search(compat[0], &compat, &mut chosen, &mut best_size, &mut best_words);

    fn search(
        cand: u128,
        compat: &[u128],
        chosen: &mut Vec<u16>,
        best_size: &mut usize,
        best_words: &mut Vec<u16>,
    ) {
        if chosen.len() > *best_size {
            *best_size = chosen.len();
            *best_words = chosen.clone();
        }
        let mut rest = cand;
        while rest != 0 {
            if chosen.len() + rest.count_ones() as usize <= *best_size {
                return;
            }
            let v = rest.trailing_zeros() as u16;
            rest &= rest - 1;
            chosen.push(v);
            search(compat[v as usize] & rest, compat, chosen, best_size, best_words);
            chosen.pop();
        }
    }

    Ok((best_size, Code::from_sorted(n, best_words)))
}
