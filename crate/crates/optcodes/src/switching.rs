//! The switching graph and the switch operation.
//!
//! For a chosen coordinate, the switching graph joins codewords at distance
//! exactly `d` (the code's minimum distance) that differ in that coordinate.
//! Flipping the chosen coordinate on one connected component never reduces
//! the minimum distance, so switching walks between codes with the same
//! parameters.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::code::{Code, CodeError};
use crate::symmetry::{canonical_form, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwitchError {
    #[error("switching needs at least 2 codewords")]
    TooFewWords,
    #[error("coordinate {coord} out of range 1..={len}")]
    CoordOutOfRange { coord: u8, len: u8 },
    #[error("the given index set is not a connected component of the switching graph")]
    NotAComponent,
    #[error("component index {index} out of range ({count} components)")]
    BadComponentIndex { index: usize, count: usize },
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("flipping coordinate {coord} on the given words collides with an unflipped word")]
    FlipCollision { coord: u8 },
    #[error("word index {index} out of range ({count} words)")]
    BadWordIndex { index: usize, count: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Switching graph of a code at one coordinate, with its connected
/// components (sorted, singletons included).
#[derive(Clone, Debug)]
pub struct SwitchingGraph {
    code: Code,
    coord: u8,
    min_distance: u32,
    edges: Vec<(u32, u32)>,
    components: Vec<Vec<u32>>,
}

pub fn switching_graph(code: &Code, coord: u8) -> Result<SwitchingGraph, SwitchError> {
    if code.size() < 2 {
        return Err(SwitchError::TooFewWords);
    }
    if coord == 0 || coord > code.length() {
        return Err(SwitchError::CoordOutOfRange {
            coord,
            len: code.length(),
        });
    }
    let d = code.min_distance()?;
    let words = code.words();
    let bit = coord - 1;
    let mut edges = Vec::new();
    let mut parent: Vec<u32> = (0..words.len() as u32).collect();

    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut root = x;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let diff = words[i] ^ words[j];
            if diff.count_ones() == d && diff >> bit & 1 == 1 {
                edges.push((i as u32, j as u32));
                let (ri, rj) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
                if ri != rj {
                    parent[ri as usize] = rj;
                }
            }
        }
    }

    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for i in 0..words.len() as u32 {
        groups.entry(find(&mut parent, i)).or_default().push(i);
    }
    let mut components: Vec<Vec<u32>> = groups.into_values().collect();
    components.sort_by_key(|c| c[0]);

    Ok(SwitchingGraph {
        code: code.clone(),
        coord,
        min_distance: d,
        edges,
        components,
    })
}

impl SwitchingGraph {
    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn coord(&self) -> u8 {
        self.coord
    }

    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Switch one component by its index in [`SwitchingGraph::components`].
    pub fn switch_component(&self, index: usize) -> Result<Code, SwitchError> {
        let component = self
            .components
            .get(index)
            .ok_or(SwitchError::BadComponentIndex {
                index,
                count: self.components.len(),
            })?;
        Ok(self.flip(component))
    }

    fn flip(&self, component: &[u32]) -> Code {
        let bit = 1u16 << (self.coord - 1);
        let mut words = self.code.words().to_vec();
        for &i in component {
            words[i as usize] ^= bit;
        }
        words.sort_unstable();
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Code::from_sorted(self.code.length(), words)
    }
}

/// Flip `coord` on the given codeword indices, which must form exactly one
/// connected component of the switching graph (validated, not trusted).
pub fn switch(code: &Code, coord: u8, component: &[usize]) -> Result<Code, SwitchError> {
    let graph = switching_graph(code, coord)?;
    let mut given: Vec<u32> = component.iter().map(|&i| i as u32).collect();
    given.sort_unstable();
    given.dedup();
    let is_component = graph.components.iter().any(|c| *c == given);
    if !is_component {
        return Err(SwitchError::NotAComponent);
    }
    Ok(graph.flip(&given))
}

/// Raw re-application of a switch: flip `coord` on the given word indices
/// with no component validation. Flipping the same word set twice is the
/// identity, which makes this the inverse of a previous [`switch`] even in
/// the corner case where that switch raised the minimum distance and
/// reshaped the graph. Collisions with unflipped words are an error.
pub fn flip_coordinate_on(
    code: &Code,
    coord: u8,
    indices: &[usize],
) -> Result<Code, SwitchError> {
    if coord == 0 || coord > code.length() {
        return Err(SwitchError::CoordOutOfRange {
            coord,
            len: code.length(),
        });
    }
    let mut given: Vec<usize> = indices.to_vec();
    given.sort_unstable();
    given.dedup();
    if let Some(&index) = given.iter().find(|&&i| i >= code.size()) {
        return Err(SwitchError::BadWordIndex {
            index,
            count: code.size(),
        });
    }
    let bit = 1u16 << (coord - 1);
    let mut words = code.words().to_vec();
    for &i in &given {
        words[i] ^= bit;
    }
    words.sort_unstable();
    if words.windows(2).any(|p| p[0] == p[1]) {
        return Err(SwitchError::FlipCollision { coord });
    }
    Ok(Code::from_sorted(code.length(), words))
}

/// Every switch of the code: all coordinates, all components, in coordinate
/// then component order. Switches that reproduce the code are kept.
pub fn switch_neighbors(code: &Code) -> Result<Vec<Code>, SwitchError> {
    let mut out = Vec::new();
    for coord in 1..=code.length() {
        let graph = switching_graph(code, coord)?;
        for idx in 0..graph.components().len() {
            out.push(graph.switch_component(idx)?);
        }
    }
    Ok(out)
}

/// As [`switch_neighbors`], keeping one neighbor per equivalence class
/// (first occurrence in the deterministic order).
pub fn switch_neighbors_deduped(code: &Code) -> Result<Vec<Code>, SwitchError> {
    let mut seen: BTreeSet<Code> = BTreeSet::new();
    let mut out = Vec::new();
    for neighbor in switch_neighbors(code)? {
        let form = canonical_form(&neighbor)?.form;
        if seen.insert(form) {
            out.push(neighbor);
        }
    }
    Ok(out)
}

/// One equivalence class discovered while walking a switching class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingClassEntry {
    /// Canonical form of the class.
    pub form: Code,
    /// First concrete member encountered.
    pub representative: Code,
}

/// Result of a budgeted switching-class walk.
#[derive(Clone, Debug)]
pub struct SwitchingClassScan {
    /// Entries sorted by canonical form.
    pub classes: Vec<SwitchingClassEntry>,
    /// True iff the closure finished before the budget was hit.
    pub exhausted: bool,
}

/// Breadth-first closure of switching modulo equivalence, collecting at
/// most `budget` distinct canonical forms. Expansion always proceeds from
/// the lexicographically least unexpanded form, so truncated walks are
/// reproducible.
pub fn switching_class(code: &Code, budget: usize) -> Result<SwitchingClassScan, SwitchError> {
    if budget == 0 {
        return Err(SwitchError::ZeroBudget);
    }
    let start = canonical_form(code)?;
    let mut classes: BTreeMap<Code, Code> = BTreeMap::new();
    classes.insert(start.form.clone(), code.clone());
    let mut frontier: BTreeSet<Code> = BTreeSet::new();
    frontier.insert(start.form);
    let mut exhausted = true;
    'walk: while let Some(form) = frontier.pop_first() {
        for neighbor in switch_neighbors(&form)? {
            let nf = canonical_form(&neighbor)?.form;
            if !classes.contains_key(&nf) {
                if classes.len() >= budget {
                    exhausted = false;
                    break 'walk;
                }
                classes.insert(nf.clone(), neighbor);
                frontier.insert(nf);
            }
        }
    }
    Ok(SwitchingClassScan {
        classes: classes
            .into_iter()
            .map(|(form, representative)| SwitchingClassEntry {
                form,
                representative,
            })
            .collect(),
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{hamming7, Codeword};
    use crate::symmetry::{are_equivalent, SignedPermutation};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn code(lines: &[&str]) -> Code {
        Code::new(
            lines[0].len() as u8,
            lines.iter().map(|s| Codeword::parse(s).unwrap()),
        )
        .unwrap()
    }

    fn random_code(rng: &mut StdRng, n: u8, m: usize) -> Code {
        let mask: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        let mut words = BTreeSet::new();
        while words.len() < m {
            words.insert(rng.random::<u16>() & mask);
        }
        Code::from_patterns(n, words.into_iter().collect()).unwrap()
    }

    #[test]
    fn graph_examples() {
        let g = switching_graph(&code(&["00", "11"]), 1).unwrap();
        assert_eq!(g.min_distance(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.components().len(), 1);

        let g = switching_graph(&code(&["000", "111"]), 1).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(
            switching_graph(&code(&["000"]), 1),
            Err(SwitchError::TooFewWords)
        ));
        assert!(matches!(
            switching_graph(&code(&["000", "111"]), 4),
            Err(SwitchError::CoordOutOfRange { coord: 4, len: 3 })
        ));
    }

    #[test]
    fn hamming7_graph_has_two_components_per_coordinate() {
        let h = hamming7();
        for coord in 1..=7 {
            let g = switching_graph(&h, coord).unwrap();
            assert!(g.components().len() >= 2, "coord {coord}");
            // Derived: each coordinate splits Hamming(7) into exactly the
            // two value classes (each word has 3 distance-3 neighbours
            // across the coordinate).
            assert_eq!(g.components().len(), 2, "coord {coord}");
            assert_eq!(g.edges().len(), 16 * 3 / 2, "coord {coord}");
        }
    }

    #[test]
    fn switch_examples() {
        let c = code(&["00", "11"]);
        let switched = switch(&c, 1, &[0, 1]).unwrap();
        assert_eq!(switched, code(&["10", "01"]));

        // Components must be validated, not trusted.
        assert!(matches!(
            switch(&c, 1, &[0]),
            Err(SwitchError::NotAComponent)
        ));

        let h = hamming7();
        let g = switching_graph(&h, 3).unwrap();
        let moved = g.switch_component(0).unwrap();
        assert_eq!(moved.size(), 16);
        assert_eq!(moved.min_distance().unwrap(), 3);
        assert!(moved.is_perfect());
        assert!(are_equivalent(&moved, &h).unwrap());
    }

    #[test]
    fn switch_is_an_involution() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..50 {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(2..=1 << n.min(4));
            let c = random_code(&mut rng, n, m);
            let d = c.min_distance().unwrap();
            let coord = rng.random_range(1..=n);
            let graph = switching_graph(&c, coord).unwrap();
            for idx in 0..graph.components().len() {
                let once = graph.switch_component(idx).unwrap();
                let image = image_indices(&graph, idx, &once);
                // Re-flipping the same word set always restores the code.
                assert_eq!(flip_coordinate_on(&once, coord, &image).unwrap(), c);
                // While the minimum distance is unchanged the graph keeps
                // its components, so the validated switch also round-trips.
                if once.min_distance().unwrap() == d {
                    assert_eq!(switch(&once, coord, &image).unwrap(), c);
                }
            }
        }
    }

    fn image_indices(graph: &SwitchingGraph, idx: usize, once: &Code) -> Vec<usize> {
        // After one switch the word order changes; recover the component as
        // indices into the switched code by matching flipped words.
        let bit = 1u16 << (graph.coord() - 1);
        let mut flipped: Vec<u16> = graph.components()[idx]
            .iter()
            .map(|&i| graph.code().words()[i as usize] ^ bit)
            .collect();
        flipped.sort_unstable();
        flipped
            .iter()
            .map(|w| once.words().binary_search(w).unwrap())
            .collect()
    }

    #[test]
    fn switching_never_reduces_min_distance() {
        let mut rng = StdRng::seed_from_u64(22);
        for _ in 0..50 {
            let n = rng.random_range(2..=9);
            let m = rng.random_range(2..=(1usize << n).min(20));
            let c = random_code(&mut rng, n, m);
            let d = c.min_distance().unwrap();
            for coord in 1..=n {
                let graph = switching_graph(&c, coord).unwrap();
                for idx in 0..graph.components().len() {
                    let s = graph.switch_component(idx).unwrap();
                    assert_eq!(s.size(), m);
                    assert!(s.min_distance().unwrap() >= d);
                }
            }
        }
    }

    #[test]
    fn odd_punctured_distance_separates_components() {
        let mut rng = StdRng::seed_from_u64(23);
        let mut tried = 0;
        while tried < 30 {
            let n = rng.random_range(3..=9);
            let m = rng.random_range(2..=(1usize << n).min(16));
            let c = random_code(&mut rng, n, m);
            if c.min_distance().unwrap() % 2 == 0 {
                continue;
            }
            tried += 1;
            for coord in 1..=n {
                let graph = switching_graph(&c, coord).unwrap();
                let mut comp_of = vec![0usize; m];
                for (ci, comp) in graph.components().iter().enumerate() {
                    for &w in comp {
                        comp_of[w as usize] = ci;
                    }
                }
                let bit = 1u16 << (coord - 1);
                for i in 0..m {
                    for j in i + 1..m {
                        let punctured =
                            ((c.words()[i] ^ c.words()[j]) & !bit).count_ones();
                        if punctured % 2 == 1 {
                            assert_ne!(comp_of[i], comp_of[j]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn switching_all_components_flips_the_coordinate() {
        let mut rng = StdRng::seed_from_u64(24);
        for _ in 0..20 {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(2..=1 << n.min(4));
            let c = random_code(&mut rng, n, m);
            let coord = rng.random_range(1..=n);
            let graph = switching_graph(&c, coord).unwrap();
            let mut all: Vec<u32> = Vec::new();
            for comp in graph.components() {
                all.extend(comp);
            }
            all.sort_unstable();
            assert_eq!(all, (0..m as u32).collect::<Vec<_>>());

            let flipped = graph.flip(&all);
            let pure_flip =
                SignedPermutation::from_parts(n, (0..n).collect(), 1 << (coord - 1));
            assert_eq!(pure_flip.apply_code(&c).unwrap(), flipped);
            assert!(are_equivalent(&c, &flipped).unwrap());
        }
    }

    #[test]
    fn neighbor_counts() {
        assert_eq!(switch_neighbors(&code(&["00", "11"])).unwrap().len(), 2);
        assert_eq!(switch_neighbors(&code(&["000", "111"])).unwrap().len(), 3);
    }

    #[test]
    fn neighbors_dedupe_by_class() {
        // All switches of the length-3 repetition code stay in one class.
        let deduped = switch_neighbors_deduped(&code(&["000", "111"])).unwrap();
        assert_eq!(deduped.len(), 1);
    }

    #[test]
    fn switching_class_of_repetition_code() {
        let scan = switching_class(&code(&["000", "111"]), 100).unwrap();
        assert!(scan.exhausted);
        assert_eq!(scan.classes.len(), 1);

        // Brute force: every (3,2,3) code is a pair at distance 3, and all
        // four such codes are equivalent.
        let mut pairs = Vec::new();
        for a in 0u16..8 {
            for b in a + 1..8 {
                if (a ^ b).count_ones() == 3 {
                    pairs.push(Code::from_patterns(3, vec![a, b]).unwrap());
                }
            }
        }
        assert_eq!(pairs.len(), 4);
        for p in &pairs {
            assert!(are_equivalent(p, &code(&["000", "111"])).unwrap());
        }
    }

    #[test]
    fn switching_class_of_hamming7() {
        let scan = switching_class(&hamming7(), 100).unwrap();
        assert!(scan.exhausted);
        assert_eq!(scan.classes.len(), 1);
    }

    #[test]
    fn budget_truncates_deterministically() {
        assert!(matches!(
            switching_class(&code(&["000", "111"]), 0),
            Err(SwitchError::ZeroBudget)
        ));
        let a = switching_class(&hamming7(), 1).unwrap();
        let b = switching_class(&hamming7(), 1).unwrap();
        assert_eq!(a.classes, b.classes);
        assert!(a.exhausted);
    }
}
