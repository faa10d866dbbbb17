//! 1-deficient words, contracting collections, and aperiodicity certificates.
//!
//! A word is 1-deficient when it maps `Q` onto all states but one. The missing
//! state is *excluded*; exactly one other state is hit twice and is the
//! *contracting* state. A contracting collection holds one such word per
//! excluded state, and its state map sends each excluded state to the
//! contracting state of its word. The automaton is aperiodically 1-contracting
//! when some collection has a state map that is a single `n`-cycle.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, State, StateSet, Transformation, Word};
use crate::error::{Error, Result};

/// Default cap on distinct transformations kept by [`enumerate_deficient_pairs`].
pub const DEFAULT_TRANSFORMATION_LIMIT: usize = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficientWord {
    pub word: Word,
    pub excluded: State,
    pub contracting: State,
}

impl DeficientWord {
    /// Classifies `word`; `None` unless it is 1-deficient.
    pub fn classify(automaton: &Automaton, word: Word) -> Result<Option<Self>> {
        let t = automaton.transformation_of(&word)?;
        Ok(t.deficiency_pair().map(|(excluded, contracting)| DeficientWord {
            word,
            excluded,
            contracting,
        }))
    }

    /// Re-checks the image and indegree profile against the automaton.
    pub fn validate(&self, automaton: &Automaton) -> bool {
        let Ok(t) = automaton.transformation_of(&self.word) else {
            return false;
        };
        let mut expected = automaton.full_set();
        expected.remove(self.excluded);
        t.image_set() == expected
            && t.deficiency_pair() == Some((self.excluded, self.contracting))
    }
}

/// One 1-deficient word per excluded state, with its induced state map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractingCollection {
    n: usize,
    /// Indexed by excluded state.
    words: Vec<DeficientWord>,
    state_map: Vec<State>,
    cyclic: bool,
    max_word_length: usize,
}

impl ContractingCollection {
    /// The collection of a one-state automaton: no words are needed, `Q` is
    /// already a singleton and the state map is the (cyclic) identity on one state.
    pub fn trivial() -> Self {
        ContractingCollection {
            n: 1,
            words: Vec::new(),
            state_map: vec![State::from_index(0)],
            cyclic: true,
            max_word_length: 0,
        }
    }

    /// Builds a collection from arbitrary words, checking each is 1-deficient
    /// and that every state is excluded exactly once.
    pub fn from_words(automaton: &Automaton, words: Vec<Word>) -> Result<Self> {
        let mut deficient = Vec::with_capacity(words.len());
        for w in words {
            let rendered = automaton.render(&w);
            match DeficientWord::classify(automaton, w)? {
                Some(d) => deficient.push(d),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "`{rendered}` is not 1-deficient"
                    )))
                }
            }
        }
        Self::from_deficient(automaton.n(), deficient)
    }

    pub fn from_deficient(n: usize, words: Vec<DeficientWord>) -> Result<Self> {
        if n == 1 && words.is_empty() {
            return Ok(Self::trivial());
        }
        let mut slots: Vec<Option<DeficientWord>> = vec![None; n];
        for d in words {
            let slot = slots.get_mut(d.excluded.index()).ok_or(Error::StateOutOfRange {
                state: d.excluded.label(),
                n,
            })?;
            if slot.is_some() {
                return Err(Error::InvalidParameter(format!(
                    "state {} is excluded by more than one word",
                    d.excluded
                )));
            }
            *slot = Some(d);
        }
        let words = slots
            .into_iter()
            .enumerate()
            .map(|(q, d)| {
                d.ok_or_else(|| {
                    Error::InvalidParameter(format!("no word excludes state {}", q + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let state_map: Vec<State> = words.iter().map(|d| d.contracting).collect();
        let cyclic = is_cyclic(&state_map);
        let max_word_length = words.iter().map(|d| d.word.len()).max().unwrap_or(0);
        Ok(ContractingCollection {
            n,
            words,
            state_map,
            cyclic,
            max_word_length,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Words ordered by excluded state.
    pub fn words(&self) -> &[DeficientWord] {
        &self.words
    }

    pub fn word_excluding(&self, q: State) -> &DeficientWord {
        &self.words[q.index()]
    }

    /// `σ_W`, indexed by excluded state.
    pub fn state_map(&self) -> &[State] {
        &self.state_map
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    /// All words have length at most `n`.
    pub fn is_efficient(&self) -> bool {
        self.max_word_length <= self.n
    }
}

/// True iff `state_map` is a permutation with a single orbit covering all states.
pub fn is_cyclic(state_map: &[State]) -> bool {
    let n = state_map.len();
    if n == 0 || state_map.iter().any(|s| s.index() >= n) {
        return false;
    }
    let start = State::from_index(0);
    let mut q = start;
    for step in 1..=n {
        q = state_map[q.index()];
        if q == start {
            return step == n;
        }
    }
    false
}

/// For each state, a shortest word excluding it, or `None` when no word does.
///
/// Breadth-first search from `Q` restricted to `Q` and the `(n-1)`-subsets, so
/// every word found has length at most `n`.
pub fn shortest_deficient_words(automaton: &Automaton) -> Vec<Option<DeficientWord>> {
    let n = automaton.n();
    if n == 1 {
        return vec![None];
    }
    let full = automaton.full_set();
    // node 0 is Q, node q+1 is Q \ {q}
    let node_of = |set: StateSet| -> Option<usize> {
        if set == full {
            Some(0)
        } else if set.len() == n - 1 {
            Some(full.bits().wrapping_sub(set.bits()).trailing_zeros() as usize + 1)
        } else {
            None
        }
    };
    let mut parent: Vec<Option<(usize, u8)>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    seen[0] = true;
    let mut queue = VecDeque::from([(0usize, full)]);
    while let Some((node, set)) = queue.pop_front() {
        for letter in 0..automaton.letter_count() as u8 {
            let next = automaton.image_by_letter(set, letter);
            if let Some(m) = node_of(next) {
                if !seen[m] {
                    seen[m] = true;
                    parent[m] = Some((node, letter));
                    queue.push_back((m, next));
                }
            }
        }
    }
    (0..n)
        .map(|q| {
            if !seen[q + 1] {
                return None;
            }
            let mut letters = Vec::new();
            let mut node = q + 1;
            while let Some((p, l)) = parent[node] {
                letters.push(l);
                node = p;
            }
            letters.reverse();
            let word = Word::from_letter_indices(letters);
            let t = automaton
                .transformation_of(&word)
                .expect("search only uses alphabet letters");
            let (excluded, contracting) = t
                .deficiency_pair()
                .expect("an (n-1)-image is always 1-deficient");
            debug_assert_eq!(excluded.index(), q);
            Some(DeficientWord {
                word,
                excluded,
                contracting,
            })
        })
        .collect()
}

/// Every `(n-1)`-subset is reachable from `Q`.
pub fn is_one_contracting(automaton: &Automaton) -> bool {
    automaton.n() > 1 && shortest_deficient_words(automaton).iter().all(Option::is_some)
}

/// All `(excluded, contracting)` pairs realised by 1-deficient words up to a
/// length bound, one shortest witness per pair.
#[derive(Clone, Debug)]
pub struct CandidatePairs {
    n: usize,
    bound: usize,
    witnesses: Vec<Option<Word>>,
    transformations: usize,
}

impl CandidatePairs {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Distinct transformations of rank at least `n-1` reached within the bound.
    pub fn transformations_explored(&self) -> usize {
        self.transformations
    }

    pub fn witness(&self, excluded: State, contracting: State) -> Option<&Word> {
        self.witnesses[excluded.index() * self.n + contracting.index()].as_ref()
    }

    /// Contracting states available for `excluded`, ascending.
    pub fn targets(&self, excluded: State) -> impl Iterator<Item = State> + '_ {
        let row = &self.witnesses[excluded.index() * self.n..(excluded.index() + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, w)| w.is_some())
            .map(|(c, _)| State::from_index(c))
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(State, State)> {
        (0..self.n)
            .flat_map(|q| {
                let q = State::from_index(q);
                self.targets(q).map(move |c| (q, c))
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.iter().all(Option::is_none)
    }
}

/// Breadth-first enumeration over distinct transformations of rank `>= n-1`.
///
/// Words with equal action are merged, so the work is bounded by the number of
/// such transformations rather than `|Σ|^bound`. Letters are expanded in
/// alphabet order, so each witness is the shortlex-least word for its pair.
pub fn enumerate_deficient_pairs(
    automaton: &Automaton,
    bound: usize,
    limit: usize,
) -> Result<CandidatePairs> {
    if bound == 0 {
        return Err(Error::InvalidParameter("length bound must be at least 1".into()));
    }
    let n = automaton.n();
    let letters: Vec<Transformation> = (0..automaton.letter_count() as u8)
        .map(|l| automaton.letter_transformation(l))
        .collect();
    let mut witnesses: Vec<Option<Word>> = vec![None; n * n];

    // node -> (parent node, letter); node 0 is the empty word
    let mut parents: Vec<(u32, u8)> = vec![(u32::MAX, 0)];
    let mut seen: HashMap<Transformation, u32> = HashMap::new();
    let identity = Transformation::identity(n);
    seen.insert(identity.clone(), 0);
    let mut frontier: Vec<(u32, Transformation)> = vec![(0, identity)];

    let word_of = |parents: &[(u32, u8)], mut node: u32| {
        let mut out = Vec::new();
        while node != 0 {
            let (p, l) = parents[node as usize];
            out.push(l);
            node = p;
        }
        out.reverse();
        Word::from_letter_indices(out)
    };

    for _ in 0..bound {
        let mut next = Vec::new();
        for (node, t) in &frontier {
            for (li, letter) in letters.iter().enumerate() {
                let u = t.then(letter);
                if n > 1 && u.rank() < n - 1 {
                    continue;
                }
                let Entry::Vacant(slot) = seen.entry(u) else {
                    continue;
                };
                if parents.len() >= limit {
                    return Err(Error::Capacity {
                        what: "deficient-word transformations",
                        requested: parents.len() + 1,
                        limit,
                    });
                }
                let id = parents.len() as u32;
                parents.push((*node, li as u8));
                let u = slot.key().clone();
                slot.insert(id);
                if let Some((q, c)) = u.deficiency_pair() {
                    let cell = &mut witnesses[q.index() * n + c.index()];
                    if cell.is_none() {
                        *cell = Some(word_of(&parents, id));
                    }
                }
                next.push((id, u));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(CandidatePairs {
        n,
        bound,
        witnesses,
        transformations: parents.len(),
    })
}

/// Searches for a collection with words of length `<= bound` whose state map
/// is cyclic, i.e. a Hamiltonian cycle in the candidate digraph `q -> c`.
///
/// The search is exhaustive, so `None` proves no such collection exists at this
/// bound. The first cycle found from state 1 with ascending targets is returned.
pub fn find_aperiodic_collection(
    automaton: &Automaton,
    bound: usize,
) -> Result<Option<ContractingCollection>> {
    find_aperiodic_collection_with_limit(automaton, bound, DEFAULT_TRANSFORMATION_LIMIT)
}

pub fn find_aperiodic_collection_with_limit(
    automaton: &Automaton,
    bound: usize,
    limit: usize,
) -> Result<Option<ContractingCollection>> {
    if bound == 0 {
        return Err(Error::InvalidParameter("length bound must be at least 1".into()));
    }
    if automaton.n() == 1 {
        return Ok(Some(ContractingCollection::trivial()));
    }
    let pairs = enumerate_deficient_pairs(automaton, bound, limit)?;
    collection_from_pairs(automaton, &pairs)
}

/// Picks a Hamiltonian cycle of the candidate digraph and turns it into a collection.
pub fn collection_from_pairs(
    automaton: &Automaton,
    pairs: &CandidatePairs,
) -> Result<Option<ContractingCollection>> {
    let n = pairs.n();
    let adjacency: Vec<Vec<State>> = (0..n)
        .map(|q| pairs.targets(State::from_index(q)).collect())
        .collect();
    let Some(cycle) = hamiltonian_cycle(&adjacency) else {
        return Ok(None);
    };
    let words = cycle
        .iter()
        .enumerate()
        .map(|(q, &c)| {
            let q = State::from_index(q);
            DeficientWord {
                word: pairs.witness(q, c).expect("cycle uses candidate edges").clone(),
                excluded: q,
                contracting: c,
            }
        })
        .collect();
    let collection = ContractingCollection::from_deficient(automaton.n(), words)?;
    debug_assert!(collection.is_cyclic());
    Ok(Some(collection))
}

/// Returns `succ` with `succ[q]` the successor of `q` on a Hamiltonian cycle.
fn hamiltonian_cycle(adjacency: &[Vec<State>]) -> Option<Vec<State>> {
    let n = adjacency.len();
    if n == 0 || adjacency.iter().any(Vec::is_empty) {
        return None;
    }
    let mut succ = vec![State::from_index(0); n];
    let mut visited = vec![false; n];
    visited[0] = true;
    extend_path(adjacency, 0, 1, &mut visited, &mut succ).then_some(succ)
}

fn extend_path(
    adjacency: &[Vec<State>],
    at: usize,
    length: usize,
    visited: &mut [bool],
    succ: &mut [State],
) -> bool {
    let n = adjacency.len();
    for &next in &adjacency[at] {
        let j = next.index();
        if length == n {
            if j == 0 {
                succ[at] = next;
                return true;
            }
            continue;
        }
        if visited[j] {
            continue;
        }
        visited[j] = true;
        succ[at] = next;
        if extend_path(adjacency, j, length + 1, visited, succ) {
            return true;
        }
        visited[j] = false;
    }
    false
}

/// A full-cycle letter paired with a 1-deficient letter, with the circle
/// distance from the excluded to the contracting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularAnalysis {
    pub cycle_letter: char,
    pub deficient_letter: char,
    pub excluded: State,
    pub contracting: State,
    pub distance: usize,
    pub gcd: usize,
}

#[derive(Clone, Debug)]
pub struct CircularCertificate {
    pub analysis: CircularAnalysis,
    pub collection: ContractingCollection,
}

/// Every (full-cycle letter, 1-deficient letter) combination, cycle letter
/// outermost, both in alphabet order.
pub fn circular_analysis(automaton: &Automaton) -> Vec<CircularAnalysis> {
    let n = automaton.n();
    let k = automaton.letter_count() as u8;
    let mut out = Vec::new();
    for b in (0..k).filter(|&b| automaton.is_full_cycle(b)) {
        for a in 0..k {
            let Some((excluded, contracting)) = automaton.letter_transformation(a).deficiency_pair()
            else {
                continue;
            };
            let mut q = excluded;
            let mut distance = 0;
            while q != contracting {
                q = automaton.step(q, b);
                distance += 1;
            }
            out.push(CircularAnalysis {
                cycle_letter: automaton.alphabet()[b as usize],
                deficient_letter: automaton.alphabet()[a as usize],
                excluded,
                contracting,
                distance,
                gcd: gcd(distance, n),
            });
        }
    }
    out
}

/// Certifies circular automata directly: with a 1-deficient letter `a` and a
/// full-cycle letter `b` at coprime distance, `{a b^i : 0 <= i < n}` is an
/// efficient collection whose state map is rotation along the circle.
pub fn circular_fast_path(automaton: &Automaton) -> Option<CircularCertificate> {
    let analysis = circular_analysis(automaton)
        .into_iter()
        .find(|c| c.gcd == 1)?;
    let a = automaton.letter_index(analysis.deficient_letter).ok()?;
    let b = automaton.letter_index(analysis.cycle_letter).ok()?;
    let mut word = vec![a];
    let mut words = Vec::with_capacity(automaton.n());
    for _ in 0..automaton.n() {
        words.push(Word::from_letter_indices(word.clone()));
        word.push(b);
    }
    let collection = ContractingCollection::from_words(automaton, words).ok()?;
    debug_assert!(collection.is_cyclic());
    Some(CircularCertificate {
        analysis,
        collection,
    })
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
