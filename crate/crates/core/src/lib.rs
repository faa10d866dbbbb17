//! Certification and construction tools for synchronizing automata.
//!
//! * [`automaton`]: DFAs, words, subset images and preimages, the file format.
//! * [`contraction`]: 1-deficient words, contracting collections, and the
//!   search for a collection whose state map is a single cycle.
//! * [`reachability`]: builds a word reaching any nonempty subset from such a
//!   collection, and synchronizing words within `(n-1)²`.
//! * [`oracle`]: exact BFS over the power automaton.
//! * [`generators`]: Černý automata, circular automata, fixtures, random automata.
//! * [`survey`]: batch runs of the oracle and certification over families.

pub mod automaton;
pub mod contraction;
pub mod error;
pub mod exec;
pub mod generators;
pub mod oracle;
pub mod reachability;
pub mod survey;

pub use automaton::{parse_automaton, Automaton, State, StateSet, Transformation, Word, MAX_STATES};
pub use contraction::{
    circular_analysis, circular_fast_path, enumerate_deficient_pairs, find_aperiodic_collection,
    is_cyclic, shortest_deficient_words, CandidatePairs, CircularAnalysis, CircularCertificate,
    ContractingCollection, DeficientWord,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use exec::Execution;
pub use oracle::{
    is_synchronizing, reachability_table, shortest_sync_word, subset_bound_check, ReachabilityTable,
    SubsetBoundReport,
};
pub use reachability::{cerny_bound_word, reach_subset, synchronizing_word, ReachTrace, TieBreak};
