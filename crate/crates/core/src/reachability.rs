//! Constructive subset reachability from a cyclic contracting collection.
//!
//! Words are built backwards. Starting from the target `T = S`, each step picks
//! an excluded state `i` outside `T` whose contracting state `σ(i)` lies in `T`,
//! prepends `w_i`, and replaces `T` by its preimage under `w_i`, which has
//! exactly one more state. A cyclic state map leaves no proper subset closed
//! under `σ⁻¹`, so a candidate always exists until `T = Q`.

use std::fmt;

use crate::automaton::{Automaton, State, StateSet, Word};
use crate::contraction::ContractingCollection;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Which excluded state to use when several qualify at a backward step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest state label.
    #[default]
    SmallestLabel,
    /// Shortest collection word, then smallest label.
    ShortestWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachStep {
    /// The excluded state whose word was prepended.
    pub chosen: State,
    pub word: Word,
    /// Subset before the step (reached by the word built so far).
    pub before: StateSet,
    /// Preimage of `before` under `word`; one state larger.
    pub after: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachTrace {
    pub target: StateSet,
    pub steps: Vec<ReachStep>,
    pub final_word: Word,
}

impl ReachTrace {
    /// `S, ..., Q` in backward order.
    pub fn intermediates(&self) -> Vec<StateSet> {
        std::iter::once(self.target)
            .chain(self.steps.iter().map(|s| s.after))
            .collect()
    }

    /// Text form: one line per step, then the final word and its length.
    pub fn render(&self, automaton: &Automaton) -> String {
        TraceDisplay {
            trace: self,
            automaton,
        }
        .to_string()
    }
}

struct TraceDisplay<'a> {
    trace: &'a ReachTrace,
    automaton: &'a Automaton,
}

impl fmt::Display for TraceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target {}", self.trace.target)?;
        for (i, step) in self.trace.steps.iter().enumerate() {
            writeln!(
                f,
                "step {} excluded {} word {} subset {}",
                i + 1,
                step.chosen,
                self.automaton.render(&step.word),
                step.after
            )?;
        }
        let word = self.automaton.render(&self.trace.final_word);
        let shown = if word.is_empty() { "ε" } else { word.as_str() };
        writeln!(f, "word {shown}")?;
        writeln!(f, "length {}", self.trace.final_word.len())
    }
}

/// Builds a word `w` with `δ(Q, w) = target` from `n - |target|` collection words.
///
/// With an efficient collection `|w| <= n (n - |target|)`.
pub fn reach_subset(
    automaton: &Automaton,
    collection: &ContractingCollection,
    target: StateSet,
    tie_break: TieBreak,
) -> Result<ReachTrace> {
    if !collection.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    if collection.n() != automaton.n() {
        return Err(Error::InvalidParameter(format!(
            "collection is for {} states, automaton has {}",
            collection.n(),
            automaton.n()
        )));
    }
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let full = automaton.full_set();
    if !target.is_subset(full) {
        return Err(Error::StateOutOfRange {
            state: 64 - target.bits().leading_zeros() as usize,
            n: automaton.n(),
        });
    }

    let sigma = collection.state_map();
    let mut current = target;
    let mut steps = Vec::with_capacity(automaton.n() - target.len());
    // collected last-to-first
    let mut pieces: Vec<&Word> = Vec::with_capacity(steps.capacity());
    while current != full {
        let mut candidates = automaton
            .states()
            .filter(|&i| !current.contains(i) && current.contains(sigma[i.index()]));
        let chosen = match tie_break {
            TieBreak::SmallestLabel => candidates.next(),
            TieBreak::ShortestWord => {
                candidates.min_by_key(|&i| (collection.word_excluding(i).word.len(), i))
            }
        }
        .ok_or_else(|| {
            Error::Invariant(format!("no backward step from {current} under a cyclic map"))
        })?;
        let word = &collection.word_excluding(chosen).word;
        let previous = automaton.preimage(current, word)?;
        if previous.len() != current.len() + 1 {
            return Err(Error::Invariant(format!(
                "preimage of {current} has {} states",
                previous.len()
            )));
        }
        steps.push(ReachStep {
            chosen,
            word: word.clone(),
            before: current,
            after: previous,
        });
        pieces.push(word);
        current = previous;
    }
    let final_word = pieces
        .iter()
        .rev()
        .fold(Word::empty(), |acc, w| acc.concat(w));
    Ok(ReachTrace {
        target,
        steps,
        final_word,
    })
}

/// The shortest of the `n` singleton-reaching words (ties to the smallest state).
pub fn synchronizing_word(
    automaton: &Automaton,
    collection: &ContractingCollection,
) -> Result<Word> {
    synchronizing_word_with(automaton, collection, TieBreak::default(), Execution::default())
}

pub fn synchronizing_word_with(
    automaton: &Automaton,
    collection: &ContractingCollection,
    tie_break: TieBreak,
    exec: Execution,
) -> Result<Word> {
    let traces = exec.map_range(automaton.n(), |q| {
        reach_subset(
            automaton,
            collection,
            StateSet::singleton(State::from_index(q)),
            tie_break,
        )
    });
    let mut best: Option<Word> = None;
    for trace in traces {
        let w = trace?.final_word;
        if best.as_ref().is_none_or(|b| w.len() < b.len()) {
            best = Some(w);
        }
    }
    best.ok_or_else(|| Error::Invariant("automaton has no states".into()))
}

/// The first pair `{p, q}` (lexicographic) and letter (alphabet order) with
/// `|δ({p, q}, a)| = 1`.
pub fn first_mergeable_pair(automaton: &Automaton) -> Option<(StateSet, u8)> {
    let n = automaton.n();
    for p in 0..n {
        for q in p + 1..n {
            let pair: StateSet = [State::from_index(p), State::from_index(q)].into_iter().collect();
            for letter in 0..automaton.letter_count() as u8 {
                if automaton.step(State::from_index(p), letter)
                    == automaton.step(State::from_index(q), letter)
                {
                    return Some((pair, letter));
                }
            }
        }
    }
    None
}

/// A synchronizing word of length at most `(n-1)²`: reach a mergeable pair
/// with at most `n-2` collection words, then apply the merging letter.
pub fn cerny_bound_word(automaton: &Automaton, collection: &ContractingCollection) -> Result<Word> {
    if !collection.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    if !collection.is_efficient() {
        return Err(Error::NotEfficient {
            longest: collection.max_word_length(),
            n: collection.n(),
        });
    }
    if automaton.n() == 1 {
        return Ok(Word::empty());
    }
    let (pair, letter) = first_mergeable_pair(automaton).ok_or_else(|| {
        Error::Invariant("cyclic collection but no pair merges under a letter".into())
    })?;
    let mut word = reach_subset(automaton, collection, pair, TieBreak::SmallestLabel)?.final_word;
    word.push(letter);
    Ok(word)
}

/// Outcome of [`verify_all_subsets`] for one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCheck {
    pub target: StateSet,
    pub word_length: usize,
    pub pieces: usize,
    /// `n (n - |target|)`.
    pub bound: usize,
    pub reaches_target: bool,
}

impl SubsetCheck {
    /// Word reaches the target from `n - |target|` pieces, and respects the
    /// length bound when the collection is efficient.
    pub fn holds(&self, n: usize, efficient: bool) -> bool {
        self.reaches_target
            && self.pieces + self.target.len() == n
            && (!efficient || self.word_length <= self.bound)
    }
}

/// Runs [`reach_subset`] for every nonempty subset and checks each result
/// against the forward image.
pub fn verify_all_subsets(
    automaton: &Automaton,
    collection: &ContractingCollection,
    exec: Execution,
) -> Result<Vec<SubsetCheck>> {
    let n = automaton.n();
    if n > 24 {
        return Err(Error::Capacity {
            what: "all-subsets sweep",
            requested: n,
            limit: 24,
        });
    }
    let count = (1usize << n) - 1;
    exec.map_range(count, |i| {
        let target = StateSet::from_bits(i as u64 + 1);
        let trace = reach_subset(automaton, collection, target, TieBreak::SmallestLabel)?;
        let image = automaton.apply_word(automaton.full_set(), &trace.final_word)?;
        Ok(SubsetCheck {
            target,
            word_length: trace.final_word.len(),
            pieces: trace.steps.len(),
            bound: n * (n - target.len()),
            reaches_target: image == target,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::{circular_fast_path, find_aperiodic_collection};
    use crate::generators::{fixture, Fixture};

    fn reference(f: Fixture) -> (Automaton, ContractingCollection) {
        let a = fixture(f);
        let words = f
            .reference_collection()
            .iter()
            .map(|(w, _, _)| a.word(w).unwrap())
            .collect();
        let c = ContractingCollection::from_words(&a, words).unwrap();
        (a, c)
    }

    fn set(n: usize, labels: &[usize]) -> StateSet {
        StateSet::from_labels(n, labels.iter().copied()).unwrap()
    }

    #[test]
    fn c4_singleton_reproduces_known_word() {
        let (a, c) = reference(Fixture::Fig1);
        let trace = reach_subset(&a, &c, set(4, &[1]), TieBreak::SmallestLabel).unwrap();
        assert_eq!(a.render(&trace.final_word), "baaabaaab");
        assert_eq!(
            trace.intermediates(),
            vec![set(4, &[1]), set(4, &[1, 4]), set(4, &[1, 2, 4]), a.full_set()]
        );
        let chosen: Vec<usize> = trace.steps.iter().map(|s| s.chosen.label()).collect();
        assert_eq!(chosen, vec![4, 3, 3]);
        assert!(trace.render(&a).ends_with("word baaabaaab\nlength 9\n"));
    }

    #[test]
    fn full_set_needs_no_steps() {
        let (a, c) = reference(Fixture::Fig1);
        let trace = reach_subset(&a, &c, a.full_set(), TieBreak::SmallestLabel).unwrap();
        assert!(trace.steps.is_empty() && trace.final_word.is_empty());
        assert!(trace.render(&a).contains("word ε"));
    }

    #[test]
    fn fig5_singleton_uses_three_words_of_total_length_six() {
        let (a, c) = reference(Fixture::Fig5);
        let lengths: Vec<usize> = (1..=4)
            .map(|q| {
                let t = reach_subset(&a, &c, set(4, &[q]), TieBreak::SmallestLabel).unwrap();
                assert_eq!(t.steps.len(), 3);
                t.final_word.len()
            })
            .collect();
        assert!(lengths.contains(&6), "{lengths:?}");
        let w = synchronizing_word(&a, &c).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(a.transformation_of(&w).unwrap().rank(), 1);
    }

    #[test]
    fn rejects_bad_requests() {
        let (a, c) = reference(Fixture::Fig1);
        assert_eq!(
            reach_subset(&a, &c, StateSet::EMPTY, TieBreak::SmallestLabel),
            Err(Error::EmptyTarget)
        );
        let (fig3, periodic) = reference(Fixture::Fig3);
        assert!(!periodic.is_cyclic());
        assert_eq!(
            reach_subset(&fig3, &periodic, set(4, &[1]), TieBreak::SmallestLabel),
            Err(Error::NotCyclic)
        );
        assert_eq!(cerny_bound_word(&fig3, &periodic), Err(Error::NotCyclic));
    }

    #[test]
    fn inefficient_collection_is_rejected_by_bound_word() {
        let a = fixture(Fixture::Fig1);
        let words = ["baaaaa", "baa", "baaa", "b"]
            .iter()
            .map(|w| a.word(w).unwrap())
            .collect();
        let c = ContractingCollection::from_words(&a, words).unwrap();
        assert!(c.is_cyclic() && !c.is_efficient());
        assert!(matches!(cerny_bound_word(&a, &c), Err(Error::NotEfficient { .. })));
        // still fine for plain reachability
        assert!(synchronizing_word(&a, &c).is_ok());
    }

    #[test]
    fn cerny_bound_word_c4() {
        let (a, c) = reference(Fixture::Fig1);
        assert_eq!(first_mergeable_pair(&a), Some((set(4, &[1, 4]), 1)));
        let w = cerny_bound_word(&a, &c).unwrap();
        assert!(w.len() <= 9);
        assert_eq!(a.transformation_of(&w).unwrap().rank(), 1);
    }

    #[test]
    fn two_state_bound_word_is_one_letter() {
        let a = crate::generators::cerny(2).unwrap();
        let c = find_aperiodic_collection(&a, 2).unwrap().unwrap();
        let w = cerny_bound_word(&a, &c).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(a.transformation_of(&w).unwrap().rank(), 1);
    }

    #[test]
    fn single_state_is_synchronized_by_empty_word() {
        let a = Automaton::from_labeled_rows(1, &[('a', &[1])]).unwrap();
        let c = ContractingCollection::trivial();
        assert!(synchronizing_word(&a, &c).unwrap().is_empty());
        assert!(cerny_bound_word(&a, &c).unwrap().is_empty());
    }

    #[test]
    fn fig4_reference_collection_synchronizes_within_thirty() {
        let (a, c) = reference(Fixture::Fig4);
        assert!(c.is_cyclic() && c.is_efficient());
        let w = synchronizing_word(&a, &c).unwrap();
        assert!(w.len() <= 30);
        assert_eq!(a.transformation_of(&w).unwrap().rank(), 1);
    }

    #[test]
    fn shortest_word_tie_break_is_valid() {
        let (a, c) = reference(Fixture::Fig4);
        for bits in 1..64u64 {
            let target = StateSet::from_bits(bits);
            let t = reach_subset(&a, &c, target, TieBreak::ShortestWord).unwrap();
            assert_eq!(a.apply_word(a.full_set(), &t.final_word).unwrap(), target);
            assert_eq!(t.steps.len(), 6 - target.len());
        }
    }

    #[test]
    fn sweep_agrees_in_both_modes() {
        let a = crate::generators::circular(7, 3, Some(5)).unwrap();
        let c = circular_fast_path(&a).unwrap().collection;
        let seq = verify_all_subsets(&a, &c, Execution::Sequential).unwrap();
        let par = verify_all_subsets(&a, &c, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 127);
        assert!(seq.iter().all(|s| s.holds(7, true)));
    }
}
