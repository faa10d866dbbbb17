//! Report objects shared by the text and JSON outputs. Each command builds one
//! of these and renders it either way, so both formats carry the same facts.

use std::fmt::Write as _;

use serde::Serialize;
use synchro::contraction::{CircularAnalysis, ContractingCollection, DeficientWord};
use synchro::oracle::SubsetBoundReport;
use synchro::{Automaton, ReachTrace};

#[derive(Debug, Serialize)]
pub struct WordEntry {
    pub word: String,
    pub excluded: usize,
    pub contracting: usize,
    pub length: usize,
}

impl WordEntry {
    pub fn new(a: &Automaton, d: &DeficientWord) -> Self {
        WordEntry {
            word: a.render(&d.word),
            excluded: d.excluded.label(),
            contracting: d.contracting.label(),
            length: d.word.len(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CollectionReport {
    /// `circular` or `search` for certified collections, `shortest` for the
    /// per-state shortest words.
    pub source: &'static str,
    pub words: Vec<WordEntry>,
    /// `state_map[i]` is the image of state `i + 1`.
    pub state_map: Vec<usize>,
    pub cyclic: bool,
    pub efficient: bool,
    pub max_word_length: usize,
}

impl CollectionReport {
    pub fn new(a: &Automaton, c: &ContractingCollection, source: &'static str) -> Self {
        CollectionReport {
            source,
            words: c.words().iter().map(|d| WordEntry::new(a, d)).collect(),
            state_map: c.state_map().iter().map(|s| s.label()).collect(),
            cyclic: c.is_cyclic(),
            efficient: c.is_efficient(),
            max_word_length: c.max_word_length(),
        }
    }

    fn render(&self, out: &mut String, title: &str) {
        let _ = writeln!(out, "{title} ({})", self.source);
        for w in &self.words {
            let _ = writeln!(
                out,
                "  word {} excluded {} contracting {} length {}",
                display_word(&w.word),
                w.excluded,
                w.contracting,
                w.length
            );
        }
        let map: Vec<String> = self
            .state_map
            .iter()
            .enumerate()
            .map(|(q, c)| format!("{}->{}", q + 1, c))
            .collect();
        let _ = writeln!(out, "  state map {}", map.join(" "));
        let _ = writeln!(out, "  cyclic {}", self.cyclic);
        let _ = writeln!(out, "  efficient {}", self.efficient);
        let _ = writeln!(out, "  max word length {}", self.max_word_length);
    }
}

#[derive(Debug, Serialize)]
pub struct CircularReport {
    pub cycle_letter: char,
    pub deficient_letter: char,
    pub excluded: usize,
    pub contracting: usize,
    pub distance: usize,
    pub gcd: usize,
}

impl From<&CircularAnalysis> for CircularReport {
    fn from(c: &CircularAnalysis) -> Self {
        CircularReport {
            cycle_letter: c.cycle_letter,
            deficient_letter: c.deficient_letter,
            excluded: c.excluded.label(),
            contracting: c.contracting.label(),
            distance: c.distance,
            gcd: c.gcd,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub source: String,
    pub n: usize,
    pub alphabet_size: usize,
    pub length_bound: usize,
    pub one_contracting: bool,
    pub aperiodic: bool,
    pub efficient: bool,
    /// `circular`, `search`, `trivial`, or `none`.
    pub certified_by: &'static str,
    pub shortest_words: Option<CollectionReport>,
    pub missing_exclusions: Vec<usize>,
    pub collection: Option<CollectionReport>,
    pub circular: Vec<CircularReport>,
}

impl AnalyzeReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton {}", self.source);
        let _ = writeln!(out, "states {}", self.n);
        let _ = writeln!(out, "alphabet size {}", self.alphabet_size);
        let _ = writeln!(out, "length bound {}", self.length_bound);
        let _ = writeln!(out, "one-contracting {}", self.one_contracting);
        if !self.missing_exclusions.is_empty() {
            let missing: Vec<String> =
                self.missing_exclusions.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "unreachable exclusions {}", missing.join(","));
        }
        if let Some(s) = &self.shortest_words {
            s.render(&mut out, "shortest 1-deficient words");
        }
        for c in &self.circular {
            let _ = writeln!(
                out,
                "circular cycle {} deficient {} excluded {} contracting {} distance {} gcd {}",
                c.cycle_letter, c.deficient_letter, c.excluded, c.contracting, c.distance, c.gcd
            );
        }
        match &self.collection {
            Some(c) => c.render(&mut out, "aperiodic collection"),
            None => {
                let _ = writeln!(out, "aperiodic collection none within length {}", self.length_bound);
            }
        }
        let _ = writeln!(out, "certified by {}", self.certified_by);
        let _ = writeln!(out, "aperiodic {}", self.aperiodic);
        let _ = writeln!(out, "efficient {}", self.efficient);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub excluded: usize,
    pub word: String,
    pub subset: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ReachReport {
    pub source: String,
    pub target: Vec<usize>,
    pub certified_by: &'static str,
    pub steps: Vec<StepReport>,
    pub word: String,
    pub length: usize,
    /// `n (n - k)`, present when the collection is efficient.
    pub bound: Option<usize>,
    pub verified: bool,
}

impl ReachReport {
    pub fn new(
        a: &Automaton,
        source: String,
        trace: &ReachTrace,
        certified_by: &'static str,
        efficient: bool,
        verified: bool,
    ) -> Self {
        let n = a.n();
        ReachReport {
            source,
            target: trace.target.labels(),
            certified_by,
            steps: trace
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| StepReport {
                    step: i + 1,
                    excluded: s.chosen.label(),
                    word: a.render(&s.word),
                    subset: s.after.labels(),
                })
                .collect(),
            word: a.render(&trace.final_word),
            length: trace.final_word.len(),
            bound: efficient.then(|| n * (n - trace.target.len())),
            verified,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton {}", self.source);
        let _ = writeln!(out, "certified by {}", self.certified_by);
        let _ = writeln!(out, "target {}", braces(&self.target));
        for s in &self.steps {
            let _ = writeln!(
                out,
                "step {} excluded {} word {} subset {}",
                s.step,
                s.excluded,
                s.word,
                braces(&s.subset)
            );
        }
        let _ = writeln!(out, "word {}", display_word(&self.word));
        let _ = writeln!(out, "length {}", self.length);
        if let Some(b) = self.bound {
            let _ = writeln!(out, "bound {b}");
        }
        let _ = writeln!(out, "verified {}", self.verified);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SyncReport {
    pub source: String,
    pub method: &'static str,
    pub synchronizing: bool,
    pub word: Option<String>,
    pub length: Option<usize>,
    /// `(n-1)²`.
    pub cerny_bound: usize,
    pub verified: bool,
}

impl SyncReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton {}", self.source);
        let _ = writeln!(out, "method {}", self.method);
        match (&self.word, self.length) {
            (Some(w), Some(len)) => {
                let _ = writeln!(out, "word {}", display_word(w));
                let _ = writeln!(out, "length {len}");
            }
            _ => {
                let _ = writeln!(out, "not synchronizing");
            }
        }
        let _ = writeln!(out, "cerny bound {}", self.cerny_bound);
        let _ = writeln!(out, "verified {}", self.verified);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub source: String,
    pub n: usize,
    pub reachable_subsets: usize,
    pub unreachable_subsets: usize,
    pub synchronizing: bool,
    pub shortest_sync: Option<String>,
    pub shortest_sync_length: Option<usize>,
    pub subset_bound: SubsetBoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<synchro::oracle::SubsetRecord>>,
}

impl OracleReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton {}", self.source);
        let _ = writeln!(out, "states {}", self.n);
        let _ = writeln!(out, "reachable subsets {}", self.reachable_subsets);
        let _ = writeln!(out, "unreachable subsets {}", self.unreachable_subsets);
        let _ = writeln!(out, "synchronizing {}", self.synchronizing);
        match (&self.shortest_sync, self.shortest_sync_length) {
            (Some(w), Some(len)) => {
                let _ = writeln!(out, "shortest sync {} length {}", display_word(w), len);
            }
            _ => {
                let _ = writeln!(out, "shortest sync none");
            }
        }
        let _ = writeln!(out, "size  reachable  worst  bound  margin");
        for s in &self.subset_bound.sizes {
            let _ = writeln!(
                out,
                "{:>4}  {:>9}  {:>5}  {:>5}  {:>6}",
                s.size,
                s.reachable,
                opt(s.worst),
                s.bound,
                opt(s.margin)
            );
        }
        let _ = writeln!(out, "violations {}", self.subset_bound.violations.len());
        for v in &self.subset_bound.violations {
            let _ = writeln!(
                out,
                "VIOLATION subset {} distance {} bound {} witness {}",
                braces(&v.subset),
                v.distance,
                v.bound,
                v.witness
            );
            let _ = write!(out, "{}", v.automaton);
        }
        if let Some(records) = &self.records {
            for r in records {
                let _ = writeln!(
                    out,
                    "subset {} size {} distance {} witness {}",
                    braces(&r.members),
                    r.size,
                    r.distance,
                    display_word(&r.witness)
                );
            }
        }
        out
    }
}

pub fn braces(labels: &[usize]) -> String {
    let inner: Vec<String> = labels.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn display_word(w: &str) -> &str {
    if w.is_empty() {
        "ε"
    } else {
        w
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}
