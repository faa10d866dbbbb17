//! Deterministic finite automata, words, and subset dynamics.
//!
//! States are labeled `1..=n` in files and in every printed form; internally a
//! [`State`] wraps the zero-based index. Subsets of states are 64-bit masks, so
//! automata are limited to [`MAX_STATES`] states and larger inputs are rejected
//! with a capacity error.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Widest automaton a [`StateSet`] can represent.
pub const MAX_STATES: usize = 64;

/// A state, stored zero-based, displayed one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "usize", try_from = "usize")]
pub struct State(u8);

impl State {
    pub fn from_index(index: usize) -> Self {
        debug_assert!(index < MAX_STATES);
        State(index as u8)
    }

    /// Builds a state from its one-based label, checking it against `n`.
    pub fn from_label(label: usize, n: usize) -> Result<Self> {
        if label == 0 || label > n {
            return Err(Error::StateOutOfRange { state: label, n });
        }
        Ok(State((label - 1) as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl From<State> for usize {
    fn from(s: State) -> usize {
        s.label()
    }
}

impl TryFrom<usize> for State {
    type Error = Error;
    fn try_from(label: usize) -> Result<Self> {
        State::from_label(label, MAX_STATES)
    }
}

/// A subset of the states of an automaton, as a bit mask over state indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full state set `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n == MAX_STATES {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(s: State) -> Self {
        StateSet(1u64 << s.index())
    }

    /// Builds a set from one-based labels, each checked against `n`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> Result<Self> {
        if n > MAX_STATES {
            return Err(Error::Capacity {
                what: "state set width",
                requested: n,
                limit: MAX_STATES,
            });
        }
        let mut set = StateSet::EMPTY;
        for label in labels {
            set.insert(State::from_label(label, n)?);
        }
        Ok(set)
    }

    /// Parses a comma-separated label list such as `1,3,4` (braces optional).
    pub fn parse_labels(text: &str, n: usize) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut labels = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let label = tok
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("`{tok}` is not a state label")))?;
            labels.push(label);
        }
        Self::from_labels(n, labels)
    }

    pub fn contains(self, s: State) -> bool {
        self.0 >> s.index() & 1 == 1
    }

    pub fn insert(&mut self, s: State) {
        self.0 |= 1u64 << s.index();
    }

    pub fn remove(&mut self, s: State) {
        self.0 &= !(1u64 << s.index());
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> StateSetIter {
        StateSetIter(self.0)
    }

    /// One-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(State::label).collect()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<State> for StateSet {
    fn from_iter<I: IntoIterator<Item = State>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

pub struct StateSetIter(u64);

impl Iterator for StateSetIter {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(State::from_index(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for StateSetIter {}

/// A word, stored as indices into its automaton's alphabet.
///
/// Use [`Automaton::word`] to build one from a string and
/// [`Automaton::render`] to print it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letter_indices(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// The action of a word on the states: `image[q]` is where `q` is sent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation {
    image: Vec<u8>,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation {
            image: (0..n as u8).collect(),
        }
    }

    pub fn from_images(image: Vec<u8>) -> Self {
        Transformation { image }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image_of(&self, q: State) -> State {
        State::from_index(self.image[q.index()] as usize)
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    /// The set `δ(Q, w)`.
    pub fn image_set(&self) -> StateSet {
        self.image
            .iter()
            .map(|&t| State::from_index(t as usize))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.image_set().len()
    }

    /// Per-state count of preimages, `|δ⁻¹(q, w)|`.
    pub fn indegrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &t in &self.image {
            deg[t as usize] += 1;
        }
        deg
    }

    /// Apply `self`, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation {
            image: self.image.iter().map(|&t| next.image[t as usize]).collect(),
        }
    }

    /// `(excluded, contracting)` when this is a 1-deficient action: exactly one
    /// state of indegree 0, one of indegree 2, the rest indegree 1.
    pub fn deficiency_pair(&self) -> Option<(State, State)> {
        let deg = self.indegrees();
        let mut excluded = None;
        let mut contracting = None;
        for (q, &d) in deg.iter().enumerate() {
            match d {
                0 if excluded.is_none() => excluded = Some(State::from_index(q)),
                1 => {}
                2 if contracting.is_none() => contracting = Some(State::from_index(q)),
                _ => return None,
            }
        }
        Some((excluded?, contracting?))
    }
}

/// A complete deterministic automaton `(Q, Σ, δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    n: usize,
    alphabet: Vec<char>,
    /// `delta[letter][state]`, zero-based targets.
    delta: Vec<Vec<u8>>,
}

impl Automaton {
    /// Builds an automaton from zero-based rows, one per letter in alphabet order.
    pub fn new(n: usize, alphabet: Vec<char>, delta: Vec<Vec<u8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("automaton needs at least one state".into()));
        }
        if n > MAX_STATES {
            return Err(Error::Capacity {
                what: "automaton states",
                requested: n,
                limit: MAX_STATES,
            });
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidParameter("alphabet is empty".into()));
        }
        if alphabet.len() > u8::MAX as usize {
            return Err(Error::Capacity {
                what: "alphabet size",
                requested: alphabet.len(),
                limit: u8::MAX as usize,
            });
        }
        for (i, &c) in alphabet.iter().enumerate() {
            if c.is_whitespace() || c == '#' {
                return Err(Error::InvalidParameter(format!("letter `{c}` is reserved")));
            }
            if alphabet[..i].contains(&c) {
                return Err(Error::InvalidParameter(format!("duplicate letter `{c}`")));
            }
        }
        if delta.len() != alphabet.len() {
            return Err(Error::InvalidParameter(format!(
                "{} rows for {} letters",
                delta.len(),
                alphabet.len()
            )));
        }
        for row in &delta {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row has {} targets, expected {n}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t as usize >= n) {
                return Err(Error::StateOutOfRange {
                    state: t as usize + 1,
                    n,
                });
            }
        }
        Ok(Automaton { n, alphabet, delta })
    }

    /// Builds an automaton from one-based rows, the way they appear in files.
    pub fn from_labeled_rows(n: usize, rows: &[(char, &[usize])]) -> Result<Self> {
        let alphabet = rows.iter().map(|(c, _)| *c).collect();
        let mut delta = Vec::with_capacity(rows.len());
        for (_, targets) in rows {
            let mut row = Vec::with_capacity(targets.len());
            for &t in targets.iter() {
                row.push(State::from_label(t, n)?.index() as u8);
            }
            delta.push(row);
        }
        Automaton::new(n, alphabet, delta)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> impl Iterator<Item = State> {
        (0..self.n).map(State::from_index)
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n)
    }

    pub fn letter_index(&self, c: char) -> Result<u8> {
        self.alphabet
            .iter()
            .position(|&l| l == c)
            .map(|i| i as u8)
            .ok_or(Error::LetterNotInAlphabet(c))
    }

    /// Zero-based row of one letter.
    pub fn row(&self, letter: u8) -> &[u8] {
        &self.delta[letter as usize]
    }

    pub fn step(&self, q: State, letter: u8) -> State {
        State::from_index(self.delta[letter as usize][q.index()] as usize)
    }

    /// Parses a word written as a plain letter string, e.g. `baaabaaab`.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| self.letter_index(c))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&l| self.alphabet[l as usize]).collect()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&l| l as usize >= self.alphabet.len()) {
            Some(&l) => Err(Error::LetterIndexOutOfRange(l as usize)),
            None => Ok(()),
        }
    }

    /// Image of a set under a single letter.
    pub fn image_by_letter(&self, set: StateSet, letter: u8) -> StateSet {
        let row = &self.delta[letter as usize];
        let mut out = 0u64;
        for q in set.iter() {
            out |= 1u64 << row[q.index()];
        }
        StateSet(out)
    }

    /// Inverse image of a set under a single letter.
    pub fn preimage_by_letter(&self, set: StateSet, letter: u8) -> StateSet {
        let row = &self.delta[letter as usize];
        let mut out = 0u64;
        for (q, &t) in row.iter().enumerate() {
            out |= (set.0 >> t & 1) << q;
        }
        StateSet(out)
    }

    /// `δ(S, w)`.
    pub fn apply_word(&self, set: StateSet, w: &Word) -> Result<StateSet> {
        self.check_word(w)?;
        self.check_set(set)?;
        Ok(w.0.iter().fold(set, |s, &l| self.image_by_letter(s, l)))
    }

    /// `δ⁻¹(S, w) = {q | δ(q, w) ∈ S}`.
    pub fn preimage(&self, set: StateSet, w: &Word) -> Result<StateSet> {
        self.check_word(w)?;
        self.check_set(set)?;
        Ok(w.0.iter().rev().fold(set, |s, &l| self.preimage_by_letter(s, l)))
    }

    pub fn letter_transformation(&self, letter: u8) -> Transformation {
        Transformation::from_images(self.delta[letter as usize].clone())
    }

    pub fn transformation_of(&self, w: &Word) -> Result<Transformation> {
        self.check_word(w)?;
        let mut image: Vec<u8> = (0..self.n as u8).collect();
        for &l in &w.0 {
            let row = &self.delta[l as usize];
            for t in image.iter_mut() {
                *t = row[*t as usize];
            }
        }
        Ok(Transformation::from_images(image))
    }

    fn check_set(&self, set: StateSet) -> Result<()> {
        if set.is_subset(self.full_set()) {
            Ok(())
        } else {
            let highest = 64 - set.0.leading_zeros() as usize;
            Err(Error::StateOutOfRange {
                state: highest,
                n: self.n,
            })
        }
    }

    /// Letters that permute all states in a single cycle.
    pub fn is_full_cycle(&self, letter: u8) -> bool {
        let row = &self.delta[letter as usize];
        let mut q = 0usize;
        for step in 1..=self.n {
            q = row[q] as usize;
            if q == 0 {
                return step == self.n;
            }
        }
        false
    }

    /// Canonical file text: header, alphabet line, one row per letter in alphabet order.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_automaton(text)
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.n)?;
        f.write_str("alphabet")?;
        for c in &self.alphabet {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for (c, row) in self.alphabet.iter().zip(&self.delta) {
            write!(f, "{c}")?;
            for &t in row {
                write!(f, " {}", t as usize + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Automaton {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_automaton(s)
    }
}

/// Parses the line-based automaton format:
///
/// ```text
/// # comment
/// states 4
/// alphabet a b
/// a 2 3 4 1
/// b 1 2 3 1
/// ```
///
/// A token starting with `#` begins a trailing comment, so `#` cannot be a letter.
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let err = |line: usize, kind| ParseError { line, kind };
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = match raw.find(" #").or_else(|| raw.find("\t#")) {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() || content.starts_with('#') {
            None
        } else {
            Some((i + 1, content))
        }
    });

    let (header_line, header) = lines.next().ok_or(err(1, ParseErrorKind::MalformedHeader))?;
    let mut toks = header.split_whitespace();
    let n = match (toks.next(), toks.next(), toks.next()) {
        (Some("states"), Some(v), None) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or(err(header_line, ParseErrorKind::MalformedHeader))?,
        _ => return Err(err(header_line, ParseErrorKind::MalformedHeader)),
    };
    if n > MAX_STATES {
        return Err(err(header_line, ParseErrorKind::TooManyStates(n)));
    }

    let (alpha_line, alpha) = lines
        .next()
        .ok_or(err(header_line + 1, ParseErrorKind::MalformedAlphabet))?;
    let mut toks = alpha.split_whitespace();
    if toks.next() != Some("alphabet") {
        return Err(err(alpha_line, ParseErrorKind::MalformedAlphabet));
    }
    let mut alphabet: Vec<char> = Vec::new();
    for tok in toks {
        let mut chars = tok.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(err(
                    alpha_line,
                    ParseErrorKind::NonSingleCharLetter(tok.to_string()),
                ))
            }
        };
        if c == '#' {
            return Err(err(alpha_line, ParseErrorKind::ReservedLetter(c)));
        }
        if alphabet.contains(&c) {
            return Err(err(alpha_line, ParseErrorKind::DuplicateLetter(c)));
        }
        alphabet.push(c);
    }
    if alphabet.is_empty() {
        return Err(err(alpha_line, ParseErrorKind::MalformedAlphabet));
    }
    if alphabet.len() > u8::MAX as usize {
        return Err(err(alpha_line, ParseErrorKind::MalformedAlphabet));
    }

    let mut rows: Vec<Option<Vec<u8>>> = vec![None; alphabet.len()];
    let mut last_line = alpha_line;
    for (line, content) in lines {
        last_line = line;
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let letter = {
            let mut chars = head.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.iter().position(|&l| l == c),
                _ => None,
            }
        };
        let Some(li) = letter else {
            if rows.iter().all(Option::is_some) {
                return Err(err(line, ParseErrorKind::TrailingContent));
            }
            return Err(err(line, ParseErrorKind::UnknownLetter(head.to_string())));
        };
        if rows[li].is_some() {
            return Err(err(line, ParseErrorKind::DuplicateRow(alphabet[li])));
        }
        let mut row = Vec::with_capacity(n);
        for tok in toks {
            let t: usize = tok
                .parse()
                .map_err(|_| err(line, ParseErrorKind::BadTarget(tok.to_string())))?;
            if t == 0 || t > n {
                return Err(err(line, ParseErrorKind::TargetOutOfRange { target: t, n }));
            }
            row.push((t - 1) as u8);
        }
        if row.len() != n {
            return Err(err(
                line,
                ParseErrorKind::RowLength {
                    expected: n,
                    found: row.len(),
                },
            ));
        }
        rows[li] = Some(row);
    }
    if let Some(missing) = rows.iter().position(Option::is_none) {
        return Err(err(last_line, ParseErrorKind::MissingRow(alphabet[missing])));
    }
    let delta = rows.into_iter().map(Option::unwrap).collect();
    Ok(Automaton { n, alphabet, delta })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "states 4\nalphabet a b\na 2 3 4 1\nb 1 2 3 1\n";
    const FIG3: &str = "states 4\nalphabet a b c\na 2 1 4 3\nb 4 3 2 1\nc 3 2 3 4\n";

    fn set(n: usize, labels: &[usize]) -> StateSet {
        StateSet::from_labels(n, labels.iter().copied()).unwrap()
    }

    #[test]
    fn parses_c4() {
        let a = Automaton::parse(C4).unwrap();
        let (la, lb) = (a.letter_index('a').unwrap(), a.letter_index('b').unwrap());
        assert_eq!(a.step(State::from_index(3), la).label(), 1);
        assert_eq!(a.step(State::from_index(3), lb).label(), 1);
        assert_eq!(a.serialize(), C4);
    }

    #[test]
    fn parses_smallest_automaton() {
        let a = Automaton::parse("states 1\nalphabet a\na 1\n").unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.step(State::from_index(0), 0).label(), 1);
        assert_eq!(a.serialize(), "states 1\nalphabet a\na 1\n");
    }

    #[test]
    fn parses_fig3_row_c() {
        let a = Automaton::parse(FIG3).unwrap();
        let c = a.letter_index('c').unwrap();
        assert_eq!(a.step(State::from_index(0), c).label(), 3);
    }

    #[test]
    fn comments_blank_lines_and_row_order_are_normalized() {
        let text = "# C4\n\nstates 4   # four\nalphabet a b\n\nb 1 2 3 1\n# rows in any order\na 2 3 4 1\n";
        assert_eq!(Automaton::parse(text).unwrap().serialize(), C4);
    }

    #[test]
    fn parse_errors_name_lines() {
        let cases: &[(&str, usize, ParseErrorKind)] = &[
            ("state 4\n", 1, ParseErrorKind::MalformedHeader),
            ("states x\n", 1, ParseErrorKind::MalformedHeader),
            ("states 0\nalphabet a\na\n", 1, ParseErrorKind::MalformedHeader),
            (
                "states 2\nalphabet a a\n",
                2,
                ParseErrorKind::DuplicateLetter('a'),
            ),
            (
                "states 2\nalphabet ab\n",
                2,
                ParseErrorKind::NonSingleCharLetter("ab".into()),
            ),
            (
                "states 2\nalphabet a\na 1 3\n",
                3,
                ParseErrorKind::TargetOutOfRange { target: 3, n: 2 },
            ),
            (
                "states 2\nalphabet a b\na 1 2\n",
                3,
                ParseErrorKind::MissingRow('b'),
            ),
            (
                "states 2\nalphabet a b\na 1 2\nc 1 1\n",
                4,
                ParseErrorKind::UnknownLetter("c".into()),
            ),
            (
                "states 2\nalphabet a\na 1 2\nx 2 1\n",
                4,
                ParseErrorKind::TrailingContent,
            ),
            (
                "states 2\nalphabet a b\na 1 2\na 2 1\n",
                4,
                ParseErrorKind::DuplicateRow('a'),
            ),
            (
                "states 3\nalphabet a\na 1 2\n",
                3,
                ParseErrorKind::RowLength {
                    expected: 3,
                    found: 2,
                },
            ),
            ("states 65\n", 1, ParseErrorKind::TooManyStates(65)),
        ];
        for (text, line, kind) in cases {
            let e = Automaton::parse(text).unwrap_err();
            assert_eq!((e.line, &e.kind), (*line, kind), "input {text:?}");
        }
    }

    #[test]
    fn apply_word_examples() {
        let c4 = Automaton::parse(C4).unwrap();
        let q = c4.full_set();
        assert_eq!(c4.apply_word(q, &c4.word("b").unwrap()).unwrap(), set(4, &[1, 2, 3]));
        let s = set(4, &[2, 4]);
        assert_eq!(c4.apply_word(s, &Word::empty()).unwrap(), s);
        assert_eq!(c4.apply_word(StateSet::EMPTY, &c4.word("ab").unwrap()).unwrap(), StateSet::EMPTY);

        let fig3 = Automaton::parse(FIG3).unwrap();
        let w = fig3.word("ca").unwrap();
        assert_eq!(fig3.apply_word(fig3.full_set(), &w).unwrap(), set(4, &[1, 3, 4]));
    }

    #[test]
    fn unknown_letters_are_rejected() {
        let c4 = Automaton::parse(C4).unwrap();
        assert_eq!(c4.word("abz"), Err(Error::LetterNotInAlphabet('z')));
        let bogus = Word::from_letter_indices(vec![0, 7]);
        assert!(matches!(
            c4.apply_word(c4.full_set(), &bogus),
            Err(Error::LetterIndexOutOfRange(7))
        ));
        assert!(c4.preimage(c4.full_set(), &bogus).is_err());
        assert!(c4.transformation_of(&bogus).is_err());
    }

    #[test]
    fn preimage_examples() {
        let c4 = Automaton::parse(C4).unwrap();
        let b = c4.word("b").unwrap();
        assert_eq!(c4.preimage(set(4, &[1]), &b).unwrap(), set(4, &[1, 4]));
        assert_eq!(c4.preimage(c4.full_set(), &c4.word("abba").unwrap()).unwrap(), c4.full_set());
        let w = c4.word("baaa").unwrap();
        assert_eq!(c4.preimage(set(4, &[1, 4]), &w).unwrap(), set(4, &[1, 2, 4]));
    }

    #[test]
    fn transformation_examples() {
        let fig3 = Automaton::parse(FIG3).unwrap();
        let t = fig3.transformation_of(&fig3.word("c").unwrap()).unwrap();
        assert_eq!(t.rank(), 3);
        let deg = t.indegrees();
        assert_eq!((deg[0], deg[2]), (0, 2));
        assert_eq!(
            t.deficiency_pair(),
            Some((State::from_index(0), State::from_index(2)))
        );

        let c4 = Automaton::parse(C4).unwrap();
        let id = c4.transformation_of(&Word::empty()).unwrap();
        assert_eq!(id, Transformation::identity(4));
        assert_eq!(id.rank(), 4);
        assert!(id.indegrees().iter().all(|&d| d == 1));

        let sync = c4.transformation_of(&c4.word("baaabaaab").unwrap()).unwrap();
        assert_eq!(sync.rank(), 1);
        assert_eq!(sync.image_set(), set(4, &[1]));
    }

    #[test]
    fn full_cycle_detection() {
        let c4 = Automaton::parse(C4).unwrap();
        assert!(c4.is_full_cycle(0));
        assert!(!c4.is_full_cycle(1));
        let fig3 = Automaton::parse(FIG3).unwrap();
        assert!(!fig3.is_full_cycle(0));
    }

    #[test]
    fn state_set_display_and_parse() {
        let s = StateSet::parse_labels("{1, 3,4}", 4).unwrap();
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!(s.labels(), vec![1, 3, 4]);
        assert!(StateSet::parse_labels("1,5", 4).is_err());
        assert!(StateSet::from_labels(65, [1]).is_err());
        assert_eq!(StateSet::full(64).len(), 64);
    }

    #[test]
    fn out_of_range_sets_are_rejected() {
        let c4 = Automaton::parse(C4).unwrap();
        let wide = StateSet::from_bits(0b1_0000);
        assert!(matches!(
            c4.apply_word(wide, &Word::empty()),
            Err(Error::StateOutOfRange { state: 5, n: 4 })
        ));
    }
}
