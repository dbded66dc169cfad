//! Backtracking search for the least sorted word list of a code over all
//! codeword translations and coordinate permutations.
//!
//! Positions are assigned from the least significant upward. Once every
//! support coordinate of a word has a position, the word's final value is
//! fixed, and because a word finishing at step t carries the bit 1 << (t-1),
//! finished values accumulate in increasing order: the search knows a
//! growing prefix of the final sorted list at every node. Three prunings
//! keep the tree small, and none of them can discard a leaf that ties the
//! minimum, so the optimal leaves enumerate the full transporter coset:
//!
//! * prefix comparison against the best complete form found so far;
//! * a lower bound on the next list entry (every unfinished word needs its
//!   remaining support packed into the lowest open positions);
//! * batch domination: among the coordinates that could take the next
//!   position, only those finishing the least batch of word values can
//!   start a minimal completion, since batch values at later steps are
//!   strictly larger.

use std::cmp::Ordering;

use super::SignedPermutation;
use crate::code::Code;

pub(super) struct Config {
    collect_all: bool,
    node_budget: u64,
    leaf_cap: usize,
}

impl Config {
    pub(super) fn form_only() -> Self {
        Config {
            collect_all: false,
            node_budget: u64::MAX,
            leaf_cap: 1,
        }
    }

    pub(super) fn collect_all(node_budget: u64, leaf_cap: usize) -> Self {
        Config {
            collect_all: true,
            node_budget,
            leaf_cap,
        }
    }
}

pub(super) struct Outcome {
    pub form_words: Vec<u16>,
    pub transporter: SignedPermutation,
    /// Transporters reaching the form; the full coset when `complete`.
    pub leaves: Vec<SignedPermutation>,
    pub leaf_overflow: bool,
    pub complete: bool,
}

pub(super) fn search(code: &Code, cfg: Config) -> Outcome {
    let n = code.length() as usize;
    let m = code.size();
    debug_assert!(m >= 2);

    // Try translations with many close neighbours first; they head the
    // candidate forms with the smallest packed values.
    let mut translations: Vec<(Vec<u32>, u16)> = code
        .words()
        .iter()
        .map(|&c| {
            let mut counts = vec![0u32; n + 1];
            for &w in code.words() {
                counts[(w ^ c).count_ones() as usize] += 1;
            }
            (counts, c)
        })
        .collect();
    translations.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let blocks = m.div_ceil(64);
    let mut s = Search {
        n,
        m,
        cfg,
        col_words: vec![Vec::new(); n],
        col_masks: vec![vec![0; blocks]; n],
        rest1: vec![0; blocks],
        active: vec![0; blocks],
        low: vec![0; m],
        rest: vec![0; m],
        images: vec![u8::MAX; n],
        assigned: 0,
        prefix: Vec::with_capacity(m),
        flips: 0,
        best: None,
        best_gen: 0,
        best_leaves: Vec::new(),
        leaf_overflow: false,
        nodes: 0,
        budget_hit: false,
        scratch: Vec::new(),
    };
    for (_, c) in &translations {
        s.run_translation(code, *c);
        if s.budget_hit {
            break;
        }
    }

    let best = s.best.expect("at least one leaf is always reached");
    Outcome {
        form_words: best.iter().map(|&v| v as u16).collect(),
        transporter: s.best_leaves[0].clone(),
        leaf_overflow: s.leaf_overflow,
        complete: !s.budget_hit && !s.leaf_overflow,
        leaves: s.best_leaves,
    }
}

struct Search {
    n: usize,
    m: usize,
    cfg: Config,
    /// Word indices per coordinate of the current translation.
    col_words: Vec<Vec<u32>>,
    /// Same sets as bit masks over word indices.
    col_masks: Vec<Vec<u64>>,
    /// Words with exactly one unassigned support coordinate.
    rest1: Vec<u64>,
    /// Words with at least one unassigned support coordinate.
    active: Vec<u64>,
    /// Accumulated value of each word over the assigned positions.
    low: Vec<u32>,
    /// Unassigned support coordinates per word.
    rest: Vec<u8>,
    images: Vec<u8>,
    assigned: u16,
    prefix: Vec<u32>,
    flips: u16,
    best: Option<Vec<u32>>,
    best_gen: u64,
    best_leaves: Vec<SignedPermutation>,
    leaf_overflow: bool,
    nodes: u64,
    budget_hit: bool,
    scratch: Vec<u32>,
}

impl Search {
    fn run_translation(&mut self, code: &Code, c: u16) {
        let mut words: Vec<u16> = code.words().iter().map(|&w| w ^ c).collect();
        words.sort_unstable();
        debug_assert_eq!(words[0], 0, "translation by a codeword contains zero");

        for col in &mut self.col_words {
            col.clear();
        }
        for mask in &mut self.col_masks {
            mask.fill(0);
        }
        self.rest1.fill(0);
        self.active.fill(0);
        for (idx, &w) in words.iter().enumerate() {
            self.low[idx] = 0;
            let weight = w.count_ones() as u8;
            self.rest[idx] = weight;
            if weight >= 1 {
                self.active[idx / 64] |= 1 << (idx % 64);
            }
            if weight == 1 {
                self.rest1[idx / 64] |= 1 << (idx % 64);
            }
            for bit in 0..self.n {
                if w >> bit & 1 == 1 {
                    self.col_words[bit].push(idx as u32);
                    self.col_masks[bit][idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        self.images.fill(u8::MAX);
        self.assigned = 0;
        self.prefix.clear();
        self.prefix.push(0);
        self.flips = c;
        self.dfs(0, self.best_gen, 0, false);
    }

    fn dfs(&mut self, t: usize, gen_in: u64, matched_in: usize, less_in: bool) {
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            self.budget_hit = true;
            return;
        }

        let stale = gen_in != self.best_gen;
        let mut matched = if stale { 0 } else { matched_in };
        let mut less = if stale { false } else { less_in };
        if let Some(best) = &self.best {
            if !less {
                while matched < self.prefix.len() {
                    match self.prefix[matched].cmp(&best[matched]) {
                        Ordering::Equal => matched += 1,
                        Ordering::Less => {
                            less = true;
                            break;
                        }
                        Ordering::Greater => return,
                    }
                }
                if !less && self.prefix.len() < self.m && self.tail_bound_exceeds(t) {
                    return;
                }
            }
        } else {
            less = true;
        }

        if t == self.n {
            debug_assert_eq!(self.prefix.len(), self.m);
            self.record_leaf();
            return;
        }

        let mut chosen: Vec<usize> = Vec::new();
        let mut min_batch: Vec<u32> = Vec::new();
        let mut have = false;
        let mut batch: Vec<u32> = Vec::new();
        for coord in 0..self.n {
            if self.assigned >> coord & 1 == 1 {
                continue;
            }
            batch.clear();
            for (blk, &cm) in self.col_masks[coord].iter().enumerate() {
                let mut bits = cm & self.rest1[blk];
                while bits != 0 {
                    let w = blk * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    batch.push(self.low[w] + (1u32 << t));
                }
            }
            batch.sort_unstable();
            if !have {
                std::mem::swap(&mut min_batch, &mut batch);
                chosen.push(coord);
                have = true;
                continue;
            }
            match cmp_padded(&batch, &min_batch) {
                Ordering::Less => {
                    std::mem::swap(&mut min_batch, &mut batch);
                    chosen.clear();
                    chosen.push(coord);
                }
                Ordering::Equal => chosen.push(coord),
                Ordering::Greater => {}
            }
        }

        let batch_len = min_batch.len();
        let gen_out = self.best_gen;
        for &coord in &chosen {
            self.assign(coord, t);
            self.dfs(t + 1, gen_out, matched, less);
            self.unassign(coord, t, batch_len);
            if self.budget_hit {
                return;
            }
        }
    }

    /// Called when the determined prefix equals the best form so far. Every
    /// unfinished word ends at or above `low + 2^(t+rest) - 2^t` (remaining
    /// support packed into the lowest open positions), and the sorted vector
    /// of these minima bounds the remaining form entries pointwise. Walking
    /// it against the best form's tail, a strictly larger entry after a run
    /// of equal ones proves the subtree cannot reach or beat the best form.
    /// Called when the determined prefix equals the best form so far. Every
    /// unfinished word ends at or above `low + 2^(t+rest) - 2^t` (its
    /// remaining support packed into the lowest open positions), and the
    /// sorted vector of these minima bounds the remaining form entries
    /// pointwise. Walking it against the best form's tail, a strictly larger
    /// entry after a run of equal ones proves the subtree cannot reach or
    /// beat the best form. The walk almost always decides within a few
    /// entries, so only a small prefix is selected and sorted.
    fn tail_bound_exceeds(&mut self, t: usize) -> bool {
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        for (blk, &mask) in self.active.iter().enumerate() {
            let mut bits = mask;
            while bits != 0 {
                let w = blk * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let r = self.rest[w] as usize;
                scratch.push(self.low[w] + (1u32 << (t + r)) - (1u32 << t));
            }
        }
        let best = self.best.as_ref().expect("checked by caller");
        let tail = &best[self.prefix.len()..];
        debug_assert_eq!(scratch.len(), tail.len());

        const PROBE: usize = 12;
        let verdict = if scratch.len() > PROBE {
            let (head, _, _) = scratch.select_nth_unstable(PROBE - 1);
            head.sort_unstable();
            match walk(&scratch[..PROBE], tail) {
                Some(v) => v,
                None => {
                    // Undecided within the probe; compare the full tails.
                    scratch.sort_unstable();
                    walk(&scratch, tail).unwrap_or(false)
                }
            }
        } else {
            scratch.sort_unstable();
            walk(&scratch, tail).unwrap_or(false)
        };

        fn walk(bounds: &[u32], tail: &[u32]) -> Option<bool> {
            for (b, &x) in bounds.iter().zip(tail.iter()) {
                match b.cmp(&x) {
                    Ordering::Greater => return Some(true),
                    Ordering::Less => return Some(false),
                    Ordering::Equal => continue,
                }
            }
            if bounds.len() == tail.len() {
                Some(false)
            } else {
                None
            }
        }

        self.scratch = scratch;
        verdict
    }

    fn assign(&mut self, coord: usize, t: usize) {
        let from = self.prefix.len();
        for i in 0..self.col_words[coord].len() {
            let w = self.col_words[coord][i] as usize;
            self.low[w] += 1 << t;
            self.rest[w] -= 1;
            match self.rest[w] {
                0 => {
                    self.rest1[w / 64] &= !(1 << (w % 64));
                    self.active[w / 64] &= !(1 << (w % 64));
                    let v = self.low[w];
                    self.prefix.push(v);
                }
                1 => self.rest1[w / 64] |= 1 << (w % 64),
                _ => {}
            }
        }
        self.prefix[from..].sort_unstable();
        self.images[coord] = t as u8;
        self.assigned |= 1 << coord;
    }

    fn unassign(&mut self, coord: usize, t: usize, batch_len: usize) {
        self.images[coord] = u8::MAX;
        self.assigned &= !(1 << coord);
        self.prefix.truncate(self.prefix.len() - batch_len);
        for i in 0..self.col_words[coord].len() {
            let w = self.col_words[coord][i] as usize;
            self.low[w] -= 1 << t;
            self.rest[w] += 1;
            match self.rest[w] {
                1 => {
                    self.rest1[w / 64] |= 1 << (w % 64);
                    self.active[w / 64] |= 1 << (w % 64);
                }
                2 => self.rest1[w / 64] &= !(1 << (w % 64)),
                _ => {}
            }
        }
    }

    fn record_leaf(&mut self) {
        let cmp = match &self.best {
            None => Ordering::Less,
            Some(best) => self.prefix.cmp(best),
        };
        match cmp {
            Ordering::Less => {
                self.best = Some(self.prefix.clone());
                self.best_gen += 1;
                self.best_leaves = vec![self.transporter()];
                self.leaf_overflow = false;
            }
            Ordering::Equal => {
                if self.cfg.collect_all {
                    if self.best_leaves.len() < self.cfg.leaf_cap {
                        let tr = self.transporter();
                        self.best_leaves.push(tr);
                    } else {
                        self.leaf_overflow = true;
                    }
                }
            }
            Ordering::Greater => unreachable!("prefix pruning admits only non-greater leaves"),
        }
    }

    fn transporter(&self) -> SignedPermutation {
        SignedPermutation::from_parts(self.n as u8, self.images.clone(), self.flips)
    }
}

/// Compare finishing batches as if padded with +infinity: batch values at
/// later steps are strictly larger than every value of the current step,
/// so a missing entry loses to any present one.
fn cmp_padded(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    b.len().cmp(&a.len())
}
