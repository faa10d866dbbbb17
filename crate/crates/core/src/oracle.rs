//! Exact ground truth by breadth-first search over the power automaton.
//!
//! The table holds one entry per subset of `Q` (dense, indexed by bit mask),
//! storing BFS distance from `Q` and the `(predecessor, letter)` edge that first
//! reached it. Witness words are rebuilt by walking predecessors. Letters are
//! expanded in alphabet order, so witnesses are deterministic.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automaton::{Automaton, State, StateSet, Word};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAPACITY: usize = 20;
/// Hard ceiling for the dense table regardless of overrides.
pub const MAX_ORACLE_CAPACITY: usize = 28;

const UNREACHED: u32 = u32::MAX;

/// Forward images of a letter by byte-wide lookup: `chunks[c][b]` is the image
/// of the states `8c..8c+8` selected by the bits of `b`.
struct ImageTable {
    chunks: Vec<[u32; 256]>,
}

impl ImageTable {
    fn new(automaton: &Automaton, letter: u8) -> Self {
        let n = automaton.n();
        let row = automaton.row(letter);
        let chunks = (0..n.div_ceil(8))
            .map(|c| {
                let mut table = [0u32; 256];
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let q = 8 * c + low;
                    let bit = if q < n { 1u32 << row[q] } else { 0 };
                    table[byte] = table[byte & (byte - 1)] | bit;
                }
                table
            })
            .collect();
        ImageTable { chunks }
    }

    #[inline]
    fn image(&self, mask: u32) -> u32 {
        self.chunks
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c)) as usize & 0xff])
    }
}

/// BFS distances from `Q` to every subset, with predecessor links.
pub struct ReachabilityTable {
    n: usize,
    dist: Vec<u32>,
    pred: Vec<u32>,
    pred_letter: Vec<u8>,
    reachable: usize,
}

pub fn reachability_table(automaton: &Automaton, capacity: usize) -> Result<ReachabilityTable> {
    let n = automaton.n();
    let limit = capacity.min(MAX_ORACLE_CAPACITY);
    if n > limit {
        return Err(Error::Capacity {
            what: "power-automaton states (n)",
            requested: n,
            limit,
        });
    }
    let size = 1usize << n;
    let letters: Vec<ImageTable> = (0..automaton.letter_count() as u8)
        .map(|l| ImageTable::new(automaton, l))
        .collect();
    let mut dist = vec![UNREACHED; size];
    let mut pred = vec![0u32; size];
    let mut pred_letter = vec![0u8; size];
    let full = (size - 1) as u32;
    dist[full as usize] = 0;
    let mut queue = VecDeque::from([full]);
    let mut reachable = 1;
    while let Some(set) = queue.pop_front() {
        let d = dist[set as usize] + 1;
        for (li, table) in letters.iter().enumerate() {
            let next = table.image(set);
            if dist[next as usize] == UNREACHED {
                dist[next as usize] = d;
                pred[next as usize] = set;
                pred_letter[next as usize] = li as u8;
                reachable += 1;
                queue.push_back(next);
            }
        }
    }
    Ok(ReachabilityTable {
        n,
        dist,
        pred,
        pred_letter,
        reachable,
    })
}

impl ReachabilityTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of a shortest `w` with `δ(Q, w) = set`.
    pub fn distance(&self, set: StateSet) -> Option<usize> {
        let d = *self.dist.get(set.bits() as usize)?;
        (d != UNREACHED).then_some(d as usize)
    }

    pub fn witness(&self, set: StateSet) -> Option<Word> {
        self.distance(set)?;
        let full = (self.dist.len() - 1) as u32;
        let mut letters = Vec::new();
        let mut at = set.bits() as u32;
        while at != full {
            letters.push(self.pred_letter[at as usize]);
            at = self.pred[at as usize];
        }
        letters.reverse();
        Some(Word::from_letter_indices(letters))
    }

    /// Number of subsets reachable from `Q`, including `Q`.
    pub fn reachable_count(&self) -> usize {
        self.reachable
    }

    /// Reachable subsets with their distances, by ascending mask.
    pub fn reachable(&self) -> impl Iterator<Item = (StateSet, usize)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNREACHED)
            .map(|(m, &d)| (StateSet::from_bits(m as u64), d as usize))
    }

    /// Nonempty subsets not reachable from `Q`.
    pub fn unreachable(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.dist
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &d)| d == UNREACHED)
            .map(|(m, _)| StateSet::from_bits(m as u64))
    }

    /// Nearest singleton and its distance; ties go to the smaller state.
    pub fn nearest_singleton(&self) -> Option<(State, usize)> {
        (0..self.n)
            .filter_map(|q| {
                let s = State::from_index(q);
                self.distance(StateSet::singleton(s)).map(|d| (s, d))
            })
            .min_by_key(|&(s, d)| (d, s))
    }

    /// One record per reachable subset, ordered by size then mask.
    pub fn records(&self, automaton: &Automaton) -> Vec<SubsetRecord> {
        let mut out: Vec<SubsetRecord> = self
            .reachable()
            .map(|(set, d)| SubsetRecord {
                members: set.labels(),
                size: set.len(),
                distance: d,
                witness: automaton.render(&self.witness(set).expect("reachable")),
            })
            .collect();
        out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.members.cmp(&b.members)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetRecord {
    pub members: Vec<usize>,
    pub size: usize,
    pub distance: usize,
    pub witness: String,
}

/// A shortest synchronizing word, or `None` when the automaton does not synchronize.
pub fn shortest_sync_word(automaton: &Automaton, capacity: usize) -> Result<Option<Word>> {
    let table = reachability_table(automaton, capacity)?;
    Ok(table
        .nearest_singleton()
        .and_then(|(s, _)| table.witness(StateSet::singleton(s))))
}

/// Pair-merging criterion: synchronizing iff every pair can be collapsed.
///
/// Runs a backward BFS on the pair graph from the collapsed pairs; linear in
/// the number of pairs times letters, so it has no capacity limit.
pub fn is_synchronizing(automaton: &Automaton) -> bool {
    let n = automaton.n();
    if n == 1 {
        return true;
    }
    let index = |p: usize, q: usize| {
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        p * n + q
    };
    // reverse edges of the pair graph, keyed by target pair
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let mut merged = vec![false; n * n];
    let mut queue = VecDeque::new();
    for p in 0..n {
        for q in p + 1..n {
            let from = index(p, q);
            for letter in 0..automaton.letter_count() as u8 {
                let row = automaton.row(letter);
                let (tp, tq) = (row[p] as usize, row[q] as usize);
                if tp == tq {
                    if !merged[from] {
                        merged[from] = true;
                        queue.push_back(from);
                    }
                } else {
                    reverse[index(tp, tq)].push(from);
                }
            }
        }
    }
    while let Some(pair) = queue.pop_front() {
        for &from in &reverse[pair] {
            if !merged[from] {
                merged[from] = true;
                queue.push_back(from);
            }
        }
    }
    (0..n).all(|p| (p + 1..n).all(|q| merged[index(p, q)]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeStats {
    pub size: usize,
    /// Reachable subsets of this size.
    pub reachable: usize,
    /// Largest shortest-word length among them.
    pub worst: Option<usize>,
    /// `n (n - size)`.
    pub bound: usize,
    /// `bound - worst`.
    pub margin: Option<i64>,
}

/// A reachable subset whose shortest reaching word is longer than `n (n - k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub subset: Vec<usize>,
    pub size: usize,
    pub distance: usize,
    pub bound: usize,
    pub witness: String,
    /// The automaton in file format, so the record reproduces on its own.
    pub automaton: String,
}

/// Checks that every reachable `k`-subset has a reaching word of length at
/// most `n (n - k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetBoundReport {
    pub id: String,
    pub n: usize,
    pub sizes: Vec<SizeStats>,
    pub violations: Vec<BoundViolation>,
}

impl SubsetBoundReport {
    /// Smallest margin over all sizes with a reachable subset.
    pub fn worst_margin(&self) -> Option<i64> {
        self.sizes.iter().filter_map(|s| s.margin).min()
    }

    /// Re-derives each violation from a table built for the same automaton.
    pub fn revalidate(&self, automaton: &Automaton, table: &ReachabilityTable) -> bool {
        self.violations.iter().all(|v| {
            let Ok(set) = StateSet::from_labels(self.n, v.subset.iter().copied()) else {
                return false;
            };
            let Ok(w) = automaton.word(&v.witness) else {
                return false;
            };
            table.distance(set) == Some(v.distance)
                && v.distance > v.bound
                && automaton.apply_word(automaton.full_set(), &w) == Ok(set)
        })
    }
}

pub fn subset_bound_check(
    automaton: &Automaton,
    id: impl Into<String>,
    capacity: usize,
) -> Result<SubsetBoundReport> {
    let table = reachability_table(automaton, capacity)?;
    Ok(subset_bound_report(automaton, &table, id))
}

pub fn subset_bound_report(
    automaton: &Automaton,
    table: &ReachabilityTable,
    id: impl Into<String>,
) -> SubsetBoundReport {
    let n = table.n();
    let mut worst: Vec<Option<usize>> = vec![None; n + 1];
    let mut counts = vec![0usize; n + 1];
    let mut violations = Vec::new();
    for (set, d) in table.reachable() {
        let k = set.len();
        if k == 0 {
            continue;
        }
        counts[k] += 1;
        worst[k] = Some(worst[k].map_or(d, |w: usize| w.max(d)));
        let bound = n * (n - k);
        if d > bound {
            violations.push(BoundViolation {
                subset: set.labels(),
                size: k,
                distance: d,
                bound,
                witness: automaton.render(&table.witness(set).expect("reachable")),
                automaton: automaton.serialize(),
            });
        }
    }
    let sizes = (1..=n)
        .map(|k| {
            let bound = n * (n - k);
            SizeStats {
                size: k,
                reachable: counts[k],
                worst: worst[k],
                bound,
                margin: worst[k].map(|w| bound as i64 - w as i64),
            }
        })
        .collect();
    SubsetBoundReport {
        id: id.into(),
        n,
        sizes,
        violations,
    }
}
