//! Automaton families: the Černý automata, circular automata with a chosen
//! deficiency distance, the shipped figure fixtures, and seeded random automata.
//!
//! Random choices come from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! A bounded draw in `0..m` takes `next_u32` values and rejects those at or
//! above the largest multiple of `m` below 2³², then reduces modulo `m`. Tables
//! are filled letter by letter, state by state, so `(n, k, seed)` fixes the
//! automaton on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Automaton;
use crate::error::{Error, Result};

const LETTERS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    Fig1,
    Fig3,
    Fig4,
    Fig5,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::Fig1, Fixture::Fig3, Fixture::Fig4, Fixture::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig1 => "fig1",
            Fixture::Fig3 => "fig3",
            Fixture::Fig4 => "fig4",
            Fixture::Fig5 => "fig5",
        }
    }

    /// The fixture file as shipped in `fixtures/`.
    pub fn source(self) -> &'static str {
        match self {
            Fixture::Fig1 => include_str!("../fixtures/fig1.aut"),
            Fixture::Fig3 => include_str!("../fixtures/fig3.aut"),
            Fixture::Fig4 => include_str!("../fixtures/fig4.aut"),
            Fixture::Fig5 => include_str!("../fixtures/fig5.aut"),
        }
    }

    /// The published collection for this fixture as `(word, excluded, contracting)`
    /// rows, used to guard the transcription of the transition tables.
    pub fn reference_collection(self) -> &'static [(&'static str, usize, usize)] {
        match self {
            Fixture::Fig1 => &[("b", 4, 1), ("ba", 1, 2), ("baa", 2, 3), ("baaa", 3, 4)],
            Fixture::Fig3 => &[("c", 1, 3), ("ca", 2, 4), ("cab", 3, 1), ("cb", 4, 2)],
            Fixture::Fig4 => &[
                ("c", 1, 2),
                ("ca", 2, 3),
                ("cab", 3, 4),
                ("cabb", 4, 5),
                ("cabbb", 5, 6),
                ("cabbba", 6, 1),
            ],
            Fixture::Fig5 => &[("a", 1, 2), ("ab", 2, 4), ("abc", 3, 1), ("ac", 4, 3)],
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown fixture `{s}`")))
    }
}

pub fn fixture(which: Fixture) -> Automaton {
    Automaton::parse(which.source()).expect("shipped fixtures parse")
}

/// The Černý automaton: `a` is the rotation `i -> i+1 (mod n)`, `b` sends `n`
/// to `1` and fixes every other state.
pub fn cerny(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cerny needs n >= 2, got {n}")));
    }
    let rotate: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
    let mut merge: Vec<u8> = (0..n as u8).collect();
    merge[n - 1] = 0;
    Automaton::new(n, vec!['a', 'b'], vec![rotate, merge])
}

/// A circular automaton over `{a, b}`: `b` is the rotation `i -> i+1`, `a`
/// excludes state 1 by sending it to `1 + d`.
///
/// Without a seed `a` fixes every other state. With a seed the states outside
/// `{1, 1+d}` are permuted among themselves by a seeded shuffle; the excluded
/// and contracting states, and hence `d`, are unchanged.
pub fn circular(n: usize, d: usize, seed: Option<u64>) -> Result<Automaton> {
    if n < 2 || d == 0 || d >= n {
        return Err(Error::InvalidParameter(format!(
            "circular needs n >= 2 and 1 <= d < n, got n={n} d={d}"
        )));
    }
    let mut deficient: Vec<u8> = (0..n as u8).collect();
    deficient[0] = d as u8;
    if let Some(seed) = seed {
        let free: Vec<usize> = (1..n).filter(|&q| q != d).collect();
        let mut shuffled = free.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Fisher-Yates, high index down
        for i in (1..shuffled.len()).rev() {
            let j = uniform_below(&mut rng, i as u32 + 1) as usize;
            shuffled.swap(i, j);
        }
        for (&from, &to) in free.iter().zip(&shuffled) {
            deficient[from] = to as u8;
        }
    }
    let rotate: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
    Automaton::new(n, vec!['a', 'b'], vec![deficient, rotate])
}

/// Uniform random automaton with `k` letters (`a`, `b`, ... then `A`.. and digits).
pub fn random_automaton(n: usize, k: usize, seed: u64) -> Result<Automaton> {
    if k == 0 || k > LETTERS.len() {
        return Err(Error::InvalidParameter(format!(
            "alphabet size must be in 1..={}, got {k}",
            LETTERS.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = (0..k)
        .map(|_| (0..n).map(|_| uniform_below(&mut rng, n as u32) as u8).collect())
        .collect();
    Automaton::new(n, LETTERS.chars().take(k).collect(), delta)
}

/// Uniform draw from `0..bound` by rejection sampling on 32-bit outputs.
fn uniform_below(rng: &mut ChaCha8Rng, bound: u32) -> u32 {
    debug_assert!(bound > 0);
    let zone = u32::MAX - (u32::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u32();
        if x <= zone {
            return x % bound;
        }
    }
}

/// The automaton with index `index` in the base-`n` enumeration of all
/// `n^(n k)` tables over `k` letters. Digit `letter * n + state` is the target.
pub fn enumerated_automaton(n: usize, k: usize, index: u64) -> Result<Automaton> {
    let total = enumeration_size(n, k).ok_or(Error::Capacity {
        what: "exhaustive automaton enumeration",
        requested: usize::MAX,
        limit: u64::MAX as usize,
    })?;
    if index >= total {
        return Err(Error::InvalidParameter(format!(
            "index {index} outside 0..{total}"
        )));
    }
    let mut rest = index;
    let mut delta = vec![vec![0u8; n]; k];
    for row in delta.iter_mut() {
        for t in row.iter_mut() {
            *t = (rest % n as u64) as u8;
            rest /= n as u64;
        }
    }
    let letters = LETTERS.chars().take(k).collect();
    Automaton::new(n, letters, delta)
}

/// `n^(n k)`, or `None` on overflow.
pub fn enumeration_size(n: usize, k: usize) -> Option<u64> {
    (n as u64).checked_pow(u32::try_from(n.checked_mul(k)?).ok()?)
}

/// A textual generator request, e.g. `cerny:5`, `circular:5:2`, `circular:7:3:11`,
/// `random:6:2:7` (n, alphabet size, seed), `enum:3:2:17` (n, alphabet size,
/// enumeration index) or `fixture:fig4` (also bare `fig4`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cerny { n: usize },
    Circular { n: usize, d: usize, seed: Option<u64> },
    Random { n: usize, k: usize, seed: u64 },
    /// Entry `index` of the exhaustive enumeration, see [`enumerated_automaton`].
    Enumerated { n: usize, k: usize, index: u64 },
    Fixture(Fixture),
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Automaton> {
        match *self {
            GeneratorSpec::Cerny { n } => cerny(n),
            GeneratorSpec::Circular { n, d, seed } => circular(n, d, seed),
            GeneratorSpec::Random { n, k, seed } => random_automaton(n, k, seed),
            GeneratorSpec::Enumerated { n, k, index } => enumerated_automaton(n, k, index),
            GeneratorSpec::Fixture(f) => Ok(fixture(f)),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Cerny { n } => write!(f, "cerny:{n}"),
            GeneratorSpec::Circular { n, d, seed: None } => write!(f, "circular:{n}:{d}"),
            GeneratorSpec::Circular { n, d, seed: Some(s) } => write!(f, "circular:{n}:{d}:{s}"),
            GeneratorSpec::Random { n, k, seed } => write!(f, "random:{n}:{k}:{seed}"),
            GeneratorSpec::Enumerated { n, k, index } => write!(f, "enum:{n}:{k}:{index}"),
            GeneratorSpec::Fixture(x) => write!(f, "fixture:{x}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::InvalidParameter(format!("bad generator spec `{s}`"));
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let spec = match parts.as_slice() {
            ["cerny", n] => GeneratorSpec::Cerny { n: num(n)? as usize },
            ["circular", n, d] => GeneratorSpec::Circular {
                n: num(n)? as usize,
                d: num(d)? as usize,
                seed: None,
            },
            ["circular", n, d, seed] => GeneratorSpec::Circular {
                n: num(n)? as usize,
                d: num(d)? as usize,
                seed: Some(num(seed)?),
            },
            ["random", n, k, seed] => GeneratorSpec::Random {
                n: num(n)? as usize,
                k: num(k)? as usize,
                seed: num(seed)?,
            },
            ["enum", n, k, index] => GeneratorSpec::Enumerated {
                n: num(n)? as usize,
                k: num(k)? as usize,
                index: num(index)?,
            },
            ["fixture", name] | [name] => GeneratorSpec::Fixture(name.parse()?),
            _ => return Err(bad()),
        };
        match spec {
            GeneratorSpec::Cerny { n } if n < 2 => Err(bad()),
            GeneratorSpec::Circular { n, d, .. } if n < 2 || d == 0 || d >= n => Err(bad()),
            GeneratorSpec::Random { n, k, .. } | GeneratorSpec::Enumerated { n, k, .. }
                if n == 0 || k == 0 =>
            {
                Err(bad())
            }
            spec => Ok(spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::StateSet;
    use crate::contraction::{circular_analysis, circular_fast_path, DeficientWord};

    #[test]
    fn cerny_4_is_fig1() {
        assert_eq!(cerny(4).unwrap(), fixture(Fixture::Fig1));
        assert_eq!(
            cerny(2).unwrap().serialize(),
            "states 2\nalphabet a b\na 2 1\nb 1 1\n"
        );
        assert!(cerny(1).is_err());
    }

    #[test]
    fn fixtures_match_reference_tables() {
        for f in Fixture::ALL {
            let a = fixture(f);
            for &(word, excluded, contracting) in f.reference_collection() {
                let d = DeficientWord::classify(&a, a.word(word).unwrap())
                    .unwrap()
                    .unwrap_or_else(|| panic!("{f}: `{word}` not 1-deficient"));
                assert_eq!(
                    (d.excluded.label(), d.contracting.label()),
                    (excluded, contracting),
                    "{f}: `{word}`"
                );
            }
        }
    }

    #[test]
    fn fixture_specific_facts() {
        let fig3 = fixture(Fixture::Fig3);
        let c = fig3.word("c").unwrap();
        assert_eq!(
            fig3.apply_word(fig3.full_set(), &c).unwrap(),
            StateSet::from_labels(4, [2, 3, 4]).unwrap()
        );
        let fig4 = fixture(Fixture::Fig4);
        let w = fig4.word("cabbba").unwrap();
        assert_eq!(
            fig4.apply_word(fig4.full_set(), &w).unwrap(),
            StateSet::from_labels(6, [1, 2, 3, 4, 5]).unwrap()
        );
        // a and b permute, c is 1-deficient
        assert_eq!(fig4.letter_transformation(0).rank(), 6);
        assert_eq!(fig4.letter_transformation(1).rank(), 6);
        let fig5 = fixture(Fixture::Fig5);
        assert!((0..3).all(|l| !fig5.is_full_cycle(l)));
    }

    #[test]
    fn circular_reports_requested_distance() {
        for n in 2..=9 {
            for d in 1..n {
                for seed in [None, Some(3), Some(99)] {
                    let a = circular(n, d, seed).unwrap();
                    let analysis = circular_analysis(&a);
                    assert_eq!(analysis.len(), 1);
                    assert_eq!(analysis[0].distance, d);
                    assert_eq!(analysis[0].excluded.label(), 1);
                    assert_eq!(circular_fast_path(&a).is_some(), analysis[0].gcd == 1);
                }
            }
        }
        assert!(circular(4, 0, None).is_err());
        assert!(circular(4, 4, None).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_automaton(5, 3, 42).unwrap(), random_automaton(5, 3, 42).unwrap());
        assert_ne!(random_automaton(5, 3, 42).unwrap(), random_automaton(5, 3, 43).unwrap());
        assert_eq!(
            random_automaton(1, 1, 123).unwrap().serialize(),
            "states 1\nalphabet a\na 1\n"
        );
        assert!(random_automaton(3, 0, 1).is_err());
    }

    #[test]
    fn enumeration_covers_all_tables() {
        assert_eq!(enumeration_size(3, 2), Some(729));
        let a = enumerated_automaton(3, 2, 0).unwrap();
        assert_eq!(a.serialize(), "states 3\nalphabet a b\na 1 1 1\nb 1 1 1\n");
        let last = enumerated_automaton(3, 2, 728).unwrap();
        assert_eq!(last.serialize(), "states 3\nalphabet a b\na 3 3 3\nb 3 3 3\n");
        assert!(enumerated_automaton(3, 2, 729).is_err());
    }

    #[test]
    fn generator_specs_round_trip() {
        for text in ["cerny:5", "circular:5:2", "circular:7:3:11", "random:6:2:7", "enum:3:2:17", "fixture:fig4"] {
            let spec: GeneratorSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            spec.build().unwrap();
        }
        assert_eq!("fig3".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Fixture(Fixture::Fig3));
        for bad in ["cerny:1", "circular:4:4", "random:0:2:1", "fig9", "cerny", ""] {
            assert!(bad.parse::<GeneratorSpec>().is_err(), "{bad}");
        }
    }
}
