//! The equivalence group of the binary Hamming space: coordinate
//! permutations combined with per-coordinate flips (translations). Covers
//! cycle-notation parsing, group closure, orbit expansion, canonical forms,
//! equivalence testing and automorphism groups.
//!
//! A group element maps a word `w` to `y` with `y[perm(i)] = w[i] ^ flip[i]`:
//! flips are applied first, then the coordinate permutation.

mod canon;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::code::{Code, CodeError, Codeword};

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Element cap for materialized automorphism groups.
pub const DEFAULT_AUT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(u8, u8),
    #[error("cycle notation: {0}")]
    BadCycles(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group closure exceeded cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("empty code has no canonical form")]
    EmptyCode,
    #[error("automorphism group has more than {cap} elements")]
    AutGroupTooLarge { cap: usize },
    #[error("exhaustive canonical form supports n <= 6, got {0}")]
    ExhaustiveTooLarge(u8),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> SymmetryError {
    SymmetryError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A coordinate permutation plus a per-coordinate flip mask, acting on
/// words of length `n`. Flips fire before the permutation moves coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: u8,
    /// images[i] is the 0-based image of 0-based coordinate i.
    images: Vec<u8>,
    flips: u16,
}

impl SignedPermutation {
    pub fn identity(n: u8) -> Self {
        SignedPermutation {
            n,
            images: (0..n).collect(),
            flips: 0,
        }
    }

    pub(crate) fn from_parts(n: u8, images: Vec<u8>, flips: u16) -> Self {
        debug_assert_eq!(images.len(), n as usize);
        debug_assert!(n == 16 || flips >> n == 0);
        SignedPermutation { n, images, flips }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// 1-based image of 1-based coordinate `coord`.
    pub fn image_of(&self, coord: u8) -> u8 {
        self.images[coord as usize - 1] + 1
    }

    /// Whether the value at 1-based coordinate `coord` is flipped.
    pub fn flips_coord(&self, coord: u8) -> bool {
        self.flips >> (coord - 1) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.flips == 0 && self.images.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// Apply to a codeword: flip marked coordinates, then permute.
    pub fn apply(&self, w: &Codeword) -> Result<Codeword, SymmetryError> {
        if w.len() != self.n {
            return Err(SymmetryError::LengthMismatch(self.n, w.len()));
        }
        Ok(Codeword::from_raw(self.n, self.apply_bits(w.bits())))
    }

    pub(crate) fn apply_bits(&self, bits: u16) -> u16 {
        let src = bits ^ self.flips;
        let mut out = 0u16;
        for (i, &img) in self.images.iter().enumerate() {
            out |= (src >> i & 1) << img;
        }
        out
    }

    /// Apply to every word of a code; cardinality and distances are
    /// preserved.
    pub fn apply_code(&self, code: &Code) -> Result<Code, SymmetryError> {
        if code.length() != self.n {
            return Err(SymmetryError::LengthMismatch(self.n, code.length()));
        }
        let mut words: Vec<u16> = code.words().iter().map(|&w| self.apply_bits(w)).collect();
        words.sort_unstable();
        Ok(Code::from_sorted(self.n, words))
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n as usize;
        let mut images = vec![0u8; n];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        let mut flips = 0u16;
        for (j, &img) in images.iter().enumerate() {
            flips |= (self.flips >> img & 1) << j;
        }
        SignedPermutation {
            n: self.n,
            images,
            flips,
        }
    }

    /// Parse disjoint cycle notation, e.g. `(1 3 2 13)(~4 ~7 ~8 9)`. A `~`
    /// prefix marks a coordinate whose value is flipped; `(~12)` is a fixed
    /// coordinate with a flip, and `()` is the identity.
    pub fn parse(text: &str, n: u8) -> Result<Self, SymmetryError> {
        if n == 0 || n > 16 {
            return Err(SymmetryError::BadCycles(format!("unsupported length {n}")));
        }
        let mut images: Vec<u8> = (0..n).collect();
        let mut flips = 0u16;
        let mut seen = vec![false; n as usize];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(SymmetryError::BadCycles("empty input".into()));
        }
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(SymmetryError::BadCycles(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = stripped.find(')') else {
                return Err(SymmetryError::BadCycles("missing ')'".into()));
            };
            let body = &stripped[..close];
            rest = stripped[close + 1..].trim_start();

            let mut cycle: Vec<u8> = Vec::new();
            for token in body.split_whitespace() {
                let (flip, digits) = match token.strip_prefix('~') {
                    Some(d) => (true, d),
                    None => (false, token),
                };
                let coord: u8 = digits.parse().map_err(|_| {
                    SymmetryError::BadCycles(format!("bad coordinate token {token:?}"))
                })?;
                if coord == 0 || coord > n {
                    return Err(SymmetryError::BadCycles(format!(
                        "coordinate {coord} out of range 1..={n}"
                    )));
                }
                let idx = coord as usize - 1;
                if seen[idx] {
                    return Err(SymmetryError::BadCycles(format!(
                        "coordinate {coord} appears twice"
                    )));
                }
                seen[idx] = true;
                if flip {
                    flips |= 1 << idx;
                }
                cycle.push(coord - 1);
            }
            for (k, &c) in cycle.iter().enumerate() {
                images[c as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(SignedPermutation { n, images, flips })
    }

    /// Render in the same cycle notation accepted by [`SignedPermutation::parse`].
    pub fn to_cycles(&self) -> String {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start] as usize;
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next] as usize;
            }
            let any_flip = cycle.iter().any(|&c| self.flips >> c & 1 == 1);
            if cycle.len() == 1 && !any_flip {
                continue;
            }
            out.push('(');
            for (k, &c) in cycle.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                if self.flips >> c & 1 == 1 {
                    out.push('~');
                }
                out.push_str(&(c + 1).to_string());
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation(n={}, {})", self.n, self.to_cycles())
    }
}

/// compose(g2, g1) applies g1 first: `apply(compose(g2, g1), w) =
/// apply(g2, apply(g1, w))`.
pub fn compose(
    g2: &SignedPermutation,
    g1: &SignedPermutation,
) -> Result<SignedPermutation, SymmetryError> {
    if g1.n != g2.n {
        return Err(SymmetryError::LengthMismatch(g2.n, g1.n));
    }
    let n = g1.n as usize;
    let mut images = vec![0u8; n];
    let mut flips = 0u16;
    for i in 0..n {
        let mid = g1.images[i];
        images[i] = g2.images[mid as usize];
        let f = (g1.flips >> i & 1) ^ (g2.flips >> mid & 1);
        flips |= f << i;
    }
    Ok(SignedPermutation {
        n: g1.n,
        images,
        flips,
    })
}

/// An explicitly listed group of signed permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    n: u8,
    elements: Vec<SignedPermutation>,
}

impl Group {
    pub fn trivial(n: u8) -> Self {
        Group {
            n,
            elements: vec![SignedPermutation::identity(n)],
        }
    }

    pub(crate) fn from_elements(n: u8, mut elements: Vec<SignedPermutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Group { n, elements }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn contains(&self, g: &SignedPermutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Greedy small generating set: add elements until their closure is the
    /// whole group. Deterministic; not guaranteed minimum.
    pub fn small_generating_set(&self) -> Vec<SignedPermutation> {
        let mut gens: Vec<SignedPermutation> = Vec::new();
        let mut have = Group::trivial(self.n);
        for g in &self.elements {
            if have.order() == self.order() {
                break;
            }
            if !have.contains(g) {
                gens.push(g.clone());
                have = closure_with_cap(&gens, self.order()).expect("closure within group");
            }
        }
        gens
    }
}

/// Breadth-first closure of the generated group, with an element cap.
pub fn closure(generators: &[SignedPermutation]) -> Result<Group, SymmetryError> {
    closure_with_cap(generators, DEFAULT_CLOSURE_CAP)
}

pub fn closure_with_cap(
    generators: &[SignedPermutation],
    cap: usize,
) -> Result<Group, SymmetryError> {
    let n = match generators.first() {
        Some(g) => g.n,
        None => return Ok(Group::trivial(1)),
    };
    for g in generators {
        if g.n != n {
            return Err(SymmetryError::LengthMismatch(n, g.n));
        }
    }
    let mut seen: HashSet<SignedPermutation> = HashSet::new();
    let mut queue: VecDeque<SignedPermutation> = VecDeque::new();
    let id = SignedPermutation::identity(n);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for gen in generators {
            let h = compose(gen, &g)?;
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(SymmetryError::ClosureCapExceeded(cap));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(Group::from_elements(n, seen.into_iter().collect()))
}

/// Union of the orbits of `reps` under `group`, merged into one code.
pub fn expand_orbits(group: &Group, reps: &[Codeword]) -> Result<Code, SymmetryError> {
    let n = group.n;
    let mut words: BTreeSet<u16> = BTreeSet::new();
    for rep in reps {
        if rep.len() != n {
            return Err(SymmetryError::LengthMismatch(n, rep.len()));
        }
        for g in &group.elements {
            words.insert(g.apply_bits(rep.bits()));
        }
    }
    Ok(Code::from_sorted(n, words.into_iter().collect()))
}

/// A group-plus-representatives description of a code, as stored in
/// `.orbit` files:
///
/// ```text
/// n=13
/// gen: (1 3 2 13)(~4 ~7 ~8 9)(5 10 6 ~11)
/// rep: 0000000000000
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    pub n: u8,
    pub generators: Vec<SignedPermutation>,
    pub representatives: Vec<Codeword>,
}

impl OrbitSpec {
    pub fn parse(text: &str) -> Result<OrbitSpec, SymmetryError> {
        let mut n: Option<u8> = None;
        let mut generators = Vec::new();
        let mut representatives = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("n=") {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate n= header"));
                }
                let v: u8 = v
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad length {v:?}")))?;
                if v == 0 || v > 16 {
                    return Err(parse_err(line_no, format!("length {v} out of range 1..=16")));
                }
                n = Some(v);
                continue;
            }
            let n = n.ok_or_else(|| parse_err(line_no, "expected n=<int> header first"))?;
            if let Some(body) = line.strip_prefix("gen:") {
                let g = SignedPermutation::parse(body.trim(), n)
                    .map_err(|e| parse_err(line_no, e.to_string()))?;
                generators.push(g);
            } else if let Some(body) = line.strip_prefix("rep:") {
                let w = Codeword::parse(body.trim())
                    .map_err(|e| parse_err(line_no, e.to_string()))?;
                if w.len() != n {
                    return Err(parse_err(
                        line_no,
                        format!("representative length {} does not match n={n}", w.len()),
                    ));
                }
                representatives.push(w);
            } else {
                return Err(parse_err(line_no, format!("unrecognized line {line:?}")));
            }
        }
        let n = n.ok_or_else(|| parse_err(0, "missing n=<int> header"))?;
        Ok(OrbitSpec {
            n,
            generators,
            representatives,
        })
    }

    /// Close the generators and expand the representative orbits.
    pub fn expand(&self, cap: usize) -> Result<(Group, Code), SymmetryError> {
        let group = if self.generators.is_empty() {
            Group::trivial(self.n)
        } else {
            closure_with_cap(&self.generators, cap)?
        };
        let code = expand_orbits(&group, &self.representatives)?;
        Ok((group, code))
    }
}

impl fmt::Display for OrbitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for g in &self.generators {
            writeln!(f, "gen: {}", g.to_cycles())?;
        }
        for r in &self.representatives {
            writeln!(f, "rep: {r}")?;
        }
        Ok(())
    }
}

/// The canonical representative of a code's equivalence class together with
/// a transporter mapping the input onto it.
///
/// The form is the minimum, over all codeword translations and coordinate
/// permutations, of the sorted word list, compared lexicographically.
/// Restricting translations to the code's own words loses nothing: any
/// equivalent image of the code that contains the zero word arises from
/// such a translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub form: Code,
    pub transporter: SignedPermutation,
}

/// Canonical form via backtracking over coordinate positions with
/// batch-domination and prefix pruning.
pub fn canonical_form(code: &Code) -> Result<CanonicalForm, SymmetryError> {
    if code.is_empty() {
        return Err(SymmetryError::EmptyCode);
    }
    if code.size() == 1 {
        return Ok(singleton_form(code));
    }
    let outcome = canon::search(code, canon::Config::form_only());
    let cf = CanonicalForm {
        form: Code::from_sorted(code.length(), outcome.form_words),
        transporter: outcome.transporter,
    };
    debug_assert_eq!(cf.transporter.apply_code(code).unwrap(), cf.form);
    Ok(cf)
}

fn singleton_form(code: &Code) -> CanonicalForm {
    let n = code.length();
    let w = code.words()[0];
    CanonicalForm {
        form: Code::from_sorted(n, vec![0]),
        transporter: SignedPermutation::from_parts(n, (0..n).collect(), w),
    }
}

/// Plain enumeration over all codeword translations and all n!
/// permutations; the independent oracle for [`canonical_form`].
pub fn canonical_form_exhaustive(code: &Code) -> Result<CanonicalForm, SymmetryError> {
    if code.is_empty() {
        return Err(SymmetryError::EmptyCode);
    }
    let n = code.length();
    if n > 6 {
        return Err(SymmetryError::ExhaustiveTooLarge(n));
    }
    let mut best: Option<(Vec<u16>, SignedPermutation)> = None;
    let mut images: Vec<u8> = (0..n).collect();
    for &c in code.words() {
        let translated: Vec<u16> = code.words().iter().map(|&w| w ^ c).collect();
        permute_all(&mut images, 0, &mut |perm| {
            let mut mapped: Vec<u16> = translated
                .iter()
                .map(|&w| {
                    let mut out = 0u16;
                    for (i, &img) in perm.iter().enumerate() {
                        out |= (w >> i & 1) << img;
                    }
                    out
                })
                .collect();
            mapped.sort_unstable();
            match &best {
                Some((form, _)) if *form <= mapped => {}
                _ => best = Some((mapped, SignedPermutation::from_parts(n, perm.to_vec(), c))),
            }
        });
    }
    let (words, transporter) = best.expect("nonempty code");
    Ok(CanonicalForm {
        form: Code::from_sorted(n, words),
        transporter,
    })
}

fn permute_all(images: &mut Vec<u8>, at: usize, visit: &mut impl FnMut(&[u8])) {
    if at == images.len() {
        visit(images);
        return;
    }
    for i in at..images.len() {
        images.swap(at, i);
        permute_all(images, at + 1, visit);
        images.swap(at, i);
    }
}

/// Two codes are equivalent iff their canonical forms coincide.
pub fn are_equivalent(c: &Code, d: &Code) -> Result<bool, SymmetryError> {
    Ok(equivalence_witness(c, d)?.is_some())
}

/// If equivalent, returns a verified group element mapping `c` onto `d`.
pub fn equivalence_witness(
    c: &Code,
    d: &Code,
) -> Result<Option<SignedPermutation>, SymmetryError> {
    if c.length() != d.length() {
        return Err(SymmetryError::LengthMismatch(c.length(), d.length()));
    }
    let fc = canonical_form(c)?;
    let fd = canonical_form(d)?;
    if fc.form != fd.form {
        return Ok(None);
    }
    let witness = compose(&fd.transporter.inverse(), &fc.transporter)?;
    assert_eq!(
        witness.apply_code(c)?,
        *d,
        "internal error: transporter composition is not a witness"
    );
    Ok(Some(witness))
}

/// The full automorphism group of a code, or a budget-truncated partial
/// result flagged `complete = false`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: Group,
    pub complete: bool,
}

/// All group elements mapping the code onto itself, discovered as the set
/// of transporters reaching the canonical form.
pub fn automorphism_group(code: &Code) -> Result<AutGroup, SymmetryError> {
    automorphism_group_budgeted(code, u64::MAX, DEFAULT_AUT_CAP)
}

/// As [`automorphism_group`], but exploring at most `node_budget` search
/// nodes (a deterministic budget) and materializing at most `element_cap`
/// elements.
pub fn automorphism_group_budgeted(
    code: &Code,
    node_budget: u64,
    element_cap: usize,
) -> Result<AutGroup, SymmetryError> {
    if code.is_empty() {
        return Err(SymmetryError::EmptyCode);
    }
    let n = code.length();
    if code.size() == 1 {
        return singleton_aut(code, element_cap);
    }
    let outcome = canon::search(code, canon::Config::collect_all(node_budget, element_cap));
    if outcome.leaf_overflow {
        return Err(SymmetryError::AutGroupTooLarge { cap: element_cap });
    }
    let first = &outcome.leaves[0];
    let first_inv = first.inverse();
    let mut elements = Vec::with_capacity(outcome.leaves.len());
    for t in &outcome.leaves {
        elements.push(compose(&first_inv, t)?);
    }
    let group = Group::from_elements(n, elements);
    debug_assert!(group.contains(&SignedPermutation::identity(n)));
    if outcome.complete {
        debug_assert_eq!(group.order(), outcome.leaves.len());
    }
    Ok(AutGroup {
        group,
        complete: outcome.complete,
    })
}

fn singleton_aut(code: &Code, element_cap: usize) -> Result<AutGroup, SymmetryError> {
    let n = code.length();
    let order: usize = (1..=n as usize).product();
    if order > element_cap {
        return Err(SymmetryError::AutGroupTooLarge { cap: element_cap });
    }
    let w = code.words()[0];
    let mut elements = Vec::with_capacity(order);
    let mut images: Vec<u8> = (0..n).collect();
    permute_all(&mut images, 0, &mut |perm| {
        // x = w ^ perm^{-1}(w) makes (perm, x) fix the single word.
        let mut pre = 0u16;
        for j in 0..n as usize {
            pre |= (w >> perm[j] & 1) << j;
        }
        elements.push(SignedPermutation::from_parts(n, perm.to_vec(), w ^ pre));
    });
    Ok(AutGroup {
        group: Group::from_elements(n, elements),
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::hamming7;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(s: &str) -> Codeword {
        Codeword::parse(s).unwrap()
    }

    fn code(lines: &[&str]) -> Code {
        Code::new(lines[0].len() as u8, lines.iter().map(|s| w(s))).unwrap()
    }

    fn random_code(rng: &mut StdRng, n: u8, m: usize) -> Code {
        let mask: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        let mut words = std::collections::BTreeSet::new();
        while words.len() < m {
            words.insert(rng.random::<u16>() & mask);
        }
        Code::from_patterns(n, words.into_iter().collect()).unwrap()
    }

    fn random_perm(rng: &mut StdRng, n: u8) -> SignedPermutation {
        let mut images: Vec<u8> = (0..n).collect();
        for i in (1..images.len()).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        let mask: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        SignedPermutation::from_parts(n, images, rng.random::<u16>() & mask)
    }

    #[test]
    fn parse_table1_first_generator() {
        let g = SignedPermutation::parse("(1 3 2 13)(~4 ~7 ~8 9)(5 10 6 ~11)", 13).unwrap();
        let expect = [
            (1, 3),
            (3, 2),
            (2, 13),
            (13, 1),
            (4, 7),
            (7, 8),
            (8, 9),
            (9, 4),
            (5, 10),
            (10, 6),
            (6, 11),
            (11, 5),
            (12, 12),
        ];
        for (from, to) in expect {
            assert_eq!(g.image_of(from), to, "image of {from}");
        }
        for coord in 1..=13 {
            assert_eq!(
                g.flips_coord(coord),
                [4, 7, 8, 11].contains(&coord),
                "flip at {coord}"
            );
        }
    }

    #[test]
    fn parse_identity_and_singleton_flip() {
        let id = SignedPermutation::parse("()", 13).unwrap();
        assert!(id.is_identity());
        let g = SignedPermutation::parse("(~12)", 13).unwrap();
        assert_eq!(g.image_of(12), 12);
        assert!(g.flips_coord(12));
        assert!((1..=13).filter(|&c| g.flips_coord(c)).count() == 1);
        assert!((1..=13).all(|c| g.image_of(c) == c));
    }

    #[test]
    fn parse_rejects_bad_cycles() {
        assert!(SignedPermutation::parse("(1 2)(2 3)", 4).is_err());
        assert!(SignedPermutation::parse("(1 5)", 4).is_err());
        assert!(SignedPermutation::parse("(1 2", 4).is_err());
        assert!(SignedPermutation::parse("1 2", 4).is_err());
        assert!(SignedPermutation::parse("(1 x)", 4).is_err());
        assert!(SignedPermutation::parse("(~0)", 4).is_err());
    }

    #[test]
    fn apply_examples() {
        let id = SignedPermutation::identity(5);
        let word = w("10110");
        assert_eq!(id.apply(&word).unwrap(), word);

        let swap = SignedPermutation::parse("(1 2)", 2).unwrap();
        assert_eq!(swap.apply(&w("10")).unwrap(), w("01"));

        // Restriction of the first bundled generator: cycle plus one flip.
        let g = SignedPermutation::parse("(1 3 2 13)(~4)", 13).unwrap();
        let zero = w("0000000000000");
        assert_eq!(g.apply(&zero).unwrap(), w("0001000000000"));

        assert!(matches!(
            g.apply(&w("000")),
            Err(SymmetryError::LengthMismatch(13, 3))
        ));
    }

    #[test]
    fn apply_code_examples() {
        let c = code(&["000", "111"]);
        let id = SignedPermutation::identity(3);
        assert_eq!(id.apply_code(&c).unwrap(), c);

        let flip_all = SignedPermutation::from_parts(3, vec![0, 1, 2], 0b111);
        let zeros = code(&["000"]);
        assert_eq!(flip_all.apply_code(&zeros).unwrap(), code(&["111"]));
    }

    #[test]
    fn compose_and_inverse() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.random_range(2..=13);
            let g = random_perm(&mut rng, n);
            let id = SignedPermutation::identity(n);
            assert_eq!(compose(&id, &g).unwrap(), g);
            assert_eq!(compose(&g, &g.inverse()).unwrap(), id);
            assert_eq!(compose(&g.inverse(), &g).unwrap(), id);
        }
    }

    #[test]
    fn cycles_render_round_trip() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.random_range(1..=13);
            let g = random_perm(&mut rng, n);
            let text = g.to_cycles();
            assert_eq!(SignedPermutation::parse(&text, n).unwrap(), g, "{text}");
        }
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&[]).unwrap().order(), 1);
        let swap = SignedPermutation::parse("(1 2)", 3).unwrap();
        assert_eq!(closure(&[swap]).unwrap().order(), 2);
        let rot = SignedPermutation::parse("(1 2 3)", 3).unwrap();
        let g = closure(&[SignedPermutation::parse("(1 2)", 3).unwrap(), rot]).unwrap();
        assert_eq!(g.order(), 6);
        let flip = SignedPermutation::parse("(~1)", 3).unwrap();
        assert_eq!(closure(&[flip]).unwrap().order(), 2);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let rot = SignedPermutation::parse("(1 2 3 4 5)", 5).unwrap();
        assert!(matches!(
            closure_with_cap(&[rot], 3),
            Err(SymmetryError::ClosureCapExceeded(3))
        ));
    }

    #[test]
    fn closure_output_is_closed() {
        let gens = [
            SignedPermutation::parse("(1 2 3)(~4)", 4).unwrap(),
            SignedPermutation::parse("(~1 2)", 4).unwrap(),
        ];
        let g = closure(&gens).unwrap();
        assert!(g.order() <= 1000);
        for a in g.elements() {
            for b in g.elements() {
                assert!(g.contains(&compose(a, b).unwrap()));
            }
        }
        assert!(g.contains(&SignedPermutation::identity(4)));
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
        }
    }

    #[test]
    fn table1_closures_and_expansions() {
        for (name, gen_count, order, orbit_sizes) in [
            ("table1-first.orbit", 4, 128, vec![128, 128, 128, 128]),
            ("table1-second.orbit", 3, 96, vec![96, 96, 96, 96, 96, 32]),
        ] {
            let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
            let spec = OrbitSpec::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
            assert_eq!(spec.generators.len(), gen_count);
            let (group, code) = spec.expand(DEFAULT_CLOSURE_CAP).unwrap();
            assert_eq!(group.order(), order);
            assert_eq!(code.size(), 512);
            assert_eq!(code.length(), 13);
            assert_eq!(code.min_distance().unwrap(), 3);
            let sizes: Vec<usize> = spec
                .representatives
                .iter()
                .map(|r| expand_orbits(&group, std::slice::from_ref(r)).unwrap().size())
                .collect();
            assert_eq!(sizes, orbit_sizes);
        }
    }

    #[test]
    fn expand_orbits_identity_group() {
        let g = Group::trivial(3);
        let c = expand_orbits(&g, &[w("000"), w("111")]).unwrap();
        assert_eq!(c, code(&["000", "111"]));
    }

    #[test]
    fn orbit_spec_round_trip_and_errors() {
        let text = "n=3\ngen: (1 2)\nrep: 000\nrep: 111\n";
        let spec = OrbitSpec::parse(text).unwrap();
        assert_eq!(spec.to_string(), text);
        assert!(OrbitSpec::parse("gen: (1 2)").is_err());
        assert!(OrbitSpec::parse("n=3\nrep: 0000").is_err());
        assert!(OrbitSpec::parse("n=3\nwhat: 1").is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let a = canonical_form(&code(&["00", "11"])).unwrap();
        let b = canonical_form(&code(&["01", "10"])).unwrap();
        assert_eq!(a.form, b.form);
        assert_eq!(a.form.words(), &[0, 3]);

        let c = canonical_form(&code(&["000", "111"])).unwrap();
        let d = canonical_form(&code(&["000", "110"])).unwrap();
        assert_ne!(c.form, d.form);
    }

    #[test]
    fn canonical_form_is_class_invariant() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(2..=1 << n.min(4));
            let c = random_code(&mut rng, n, m);
            let g = random_perm(&mut rng, n);
            let moved = g.apply_code(&c).unwrap();
            let fc = canonical_form(&c).unwrap();
            let fm = canonical_form(&moved).unwrap();
            assert_eq!(fc.form, fm.form, "code {c:?} moved by {g:?}");
            assert_eq!(fc.transporter.apply_code(&c).unwrap(), fc.form);
            assert_eq!(fm.transporter.apply_code(&moved).unwrap(), fm.form);
        }
    }

    #[test]
    fn canonical_form_matches_exhaustive_oracle() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..40 {
            let n = rng.random_range(2..=5);
            let m = rng.random_range(1..=1 << n.min(4));
            let c = random_code(&mut rng, n, m);
            let fast = canonical_form(&c).unwrap();
            let slow = canonical_form_exhaustive(&c).unwrap();
            assert_eq!(fast.form, slow.form, "code {c:?}");
            assert_eq!(slow.transporter.apply_code(&c).unwrap(), slow.form);
        }
    }

    #[test]
    fn canonical_form_rejects_empty() {
        let empty = Code::from_patterns(3, vec![]).unwrap();
        assert!(matches!(
            canonical_form(&empty),
            Err(SymmetryError::EmptyCode)
        ));
        assert!(matches!(
            canonical_form_exhaustive(&empty),
            Err(SymmetryError::EmptyCode)
        ));
        let big = random_code(&mut StdRng::seed_from_u64(1), 7, 4);
        assert!(matches!(
            canonical_form_exhaustive(&big),
            Err(SymmetryError::ExhaustiveTooLarge(7))
        ));
    }

    #[test]
    fn equivalence_examples() {
        let mut rng = StdRng::seed_from_u64(13);
        let c = random_code(&mut rng, 6, 8);
        let g = random_perm(&mut rng, 6);
        let d = g.apply_code(&c).unwrap();
        assert!(are_equivalent(&c, &d).unwrap());
        let witness = equivalence_witness(&c, &d).unwrap().unwrap();
        assert_eq!(witness.apply_code(&c).unwrap(), d);

        assert!(!are_equivalent(&code(&["000", "111"]), &code(&["000", "110"])).unwrap());
        assert!(matches!(
            are_equivalent(&code(&["00", "11"]), &code(&["000", "111"])),
            Err(SymmetryError::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn automorphism_group_examples() {
        // Only the zero word: every permutation, no flips that move it.
        let zeros = Code::new(4, [Codeword::zero(4).unwrap()]).unwrap();
        assert_eq!(automorphism_group(&zeros).unwrap().group.order(), 24);
        let zeros5 = Code::new(5, [Codeword::zero(5).unwrap()]).unwrap();
        assert_eq!(automorphism_group(&zeros5).unwrap().group.order(), 120);

        // The full space is fixed by the whole acting group.
        let full = Code::from_patterns(3, (0..8).collect()).unwrap();
        assert_eq!(automorphism_group(&full).unwrap().group.order(), 48);

        let pair = automorphism_group(&code(&["00", "11"])).unwrap();
        assert!(pair.complete);
        assert_eq!(pair.group.order(), 4);
    }

    #[test]
    fn hamming7_automorphisms() {
        let aut = automorphism_group(&hamming7()).unwrap();
        assert!(aut.complete);
        assert_eq!(aut.group.order(), 2688);
        // Orbit-stabilizer: the number of distinct perfect codes of length 7
        // must come out as 7! * 2^7 / 2688 = 240.
        assert_eq!(5040 * 128 / aut.group.order(), 240);
        for g in aut.group.elements().iter().take(20) {
            assert_eq!(g.apply_code(&hamming7()).unwrap(), hamming7());
        }
        // Each added generator at least doubles the subgroup, so the greedy
        // set has at most log2(2688) elements.
        let gens = aut.group.small_generating_set();
        assert!(gens.len() <= 11, "got {} generators", gens.len());
        assert_eq!(closure(&gens).unwrap().order(), 2688);
    }

    #[test]
    fn automorphisms_fix_the_code() {
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..20 {
            let n = rng.random_range(2..=6);
            let m = rng.random_range(2..=1 << n.min(3));
            let c = random_code(&mut rng, n, m);
            let aut = automorphism_group(&c).unwrap();
            assert!(aut.complete);
            for g in aut.group.elements() {
                assert_eq!(g.apply_code(&c).unwrap(), c);
            }
            // |Aut| divides n! 2^n.
            let total: u64 = (1..=n as u64).product::<u64>() << n;
            assert_eq!(total % aut.group.order() as u64, 0);
        }
    }

    #[test]
    fn orbit_stabilizer_on_small_codes() {
        let mut rng = StdRng::seed_from_u64(15);
        for &n in &[3u8, 4, 5] {
            let m = rng.random_range(2..=4);
            let c = random_code(&mut rng, n, m);
            let aut = automorphism_group(&c).unwrap().group.order() as u64;
            // Enumerate the orbit of the code under the full acting group.
            let mut orbit = std::collections::BTreeSet::new();
            let mut images: Vec<u8> = (0..n).collect();
            let mask: u16 = (1 << n) - 1;
            permute_all(&mut images, 0, &mut |perm| {
                for flips in 0..=mask {
                    let g = SignedPermutation::from_parts(n, perm.to_vec(), flips);
                    orbit.insert(g.apply_code(&c).unwrap());
                }
            });
            let total: u64 = (1..=n as u64).product::<u64>() << n;
            assert_eq!(orbit.len() as u64 * aut, total, "n={n} code {c:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn apply_preserves_distance(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(2..=13);
            let g = random_perm(&mut rng, n);
            let mask: u16 = (1 << n) - 1;
            let u = Codeword::new(n, rng.random::<u16>() & mask).unwrap();
            let v = Codeword::new(n, rng.random::<u16>() & mask).unwrap();
            let du = g.apply(&u).unwrap();
            let dv = g.apply(&v).unwrap();
            prop_assert_eq!(u.distance(&v).unwrap(), du.distance(&dv).unwrap());
        }

        #[test]
        fn compose_matches_two_step_application(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(2..=13);
            let g1 = random_perm(&mut rng, n);
            let g2 = random_perm(&mut rng, n);
            let mask: u16 = (1 << n) - 1;
            let word = Codeword::new(n, rng.random::<u16>() & mask).unwrap();
            let h = compose(&g2, &g1).unwrap();
            prop_assert_eq!(
                h.apply(&word).unwrap(),
                g2.apply(&g1.apply(&word).unwrap()).unwrap()
            );
        }

        #[test]
        fn compose_is_associative(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(2..=10);
            let a = random_perm(&mut rng, n);
            let b = random_perm(&mut rng, n);
            let c = random_perm(&mut rng, n);
            let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
