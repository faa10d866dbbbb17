//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the search code under test.

#![allow(dead_code)]

use synchro::{Automaton, State, Word};

pub const LETTERS: [char; 3] = ['a', 'b', 'c'];

/// Shortlex-least word of length `<= bound` for every `(excluded, contracting)`
/// pair, found by listing every word level by level, which is shortlex order.
/// Index `q * n + c`.
pub fn naive_pairs(a: &Automaton, bound: usize) -> Vec<Option<Word>> {
    let n = a.n();
    let k = a.letter_count();
    let mut best: Vec<Option<Word>> = vec![None; n * n];
    // images of all words of the current length, flattened, with the words
    let mut images: Vec<u8> = (0..n as u8).collect();
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next_images = Vec::with_capacity(images.len() * k);
        let mut next_words = Vec::with_capacity(words.len() * k);
        for (i, w) in words.iter().enumerate() {
            let image = &images[i * n..(i + 1) * n];
            for l in 0..k as u8 {
                let row = a.row(l);
                let start = next_images.len();
                next_images.extend(image.iter().map(|&x| row[x as usize]));
                let mut word = w.clone();
                word.push(l);
                let mut hits = [0u8; 64];
                for &x in &next_images[start..] {
                    hits[x as usize] += 1;
                }
                let mut missing = (0..n).filter(|&q| hits[q] == 0);
                if let (Some(q), None) = (missing.next(), missing.next()) {
                    let c = (0..n).find(|&q| hits[q] == 2).unwrap();
                    let cell = &mut best[q * n + c];
                    if cell.is_none() {
                        *cell = Some(Word::from_letter_indices(word.clone()));
                    }
                }
                next_words.push(word);
            }
        }
        images = next_images;
        words = next_words;
    }
    best
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn decode(code: usize, n: usize) -> Vec<u8> {
    let mut c = code;
    (0..n)
        .map(|_| {
            let d = (c % n) as u8;
            c /= n;
            d
        })
        .collect()
}

fn encode(row: &[u8], n: usize) -> usize {
    row.iter().rev().fold(0, |acc, &d| acc * n + d as usize)
}

/// Calls `f` once per isomorphism class of automata with `n` states and `k`
/// letters, where relabelling states or permuting letters gives the same class.
/// Returns the number of classes visited.
pub fn for_each_class(n: usize, k: usize, mut f: impl FnMut(&Automaton)) -> usize {
    let maps = n.pow(n as u32);
    let perms = permutations(n);
    // conj[p][t] = p ∘ t ∘ p⁻¹ as a code
    let conj: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            (0..maps)
                .map(|t| {
                    let row = decode(t, n);
                    let mut out = vec![0u8; n];
                    for q in 0..n {
                        out[p[q]] = p[row[q] as usize] as u8;
                    }
                    encode(&out, n)
                })
                .collect()
        })
        .collect();
    let mut classes = 0;
    let mut combo = vec![0usize; k];
    'outer: loop {
        let canonical = conj.iter().all(|table| {
            let mut image: Vec<usize> = combo.iter().map(|&t| table[t]).collect();
            image.sort_unstable();
            image >= combo
        });
        if canonical {
            classes += 1;
            let delta = combo.iter().map(|&t| decode(t, n)).collect();
            let a = Automaton::new(n, LETTERS[..k].to_vec(), delta).unwrap();
            f(&a);
        }
        // next non-decreasing tuple
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if combo[i] + 1 < maps {
                combo[i] += 1;
                let v = combo[i];
                for x in combo.iter_mut().skip(i + 1) {
                    *x = v;
                }
                break;
            }
        }
    }
    classes
}

/// Whether some choice of one available target per state forms a single
/// n-cycle, by trying every choice.
pub fn has_cyclic_choice(n: usize, targets: &[Vec<State>]) -> bool {
    if targets.iter().any(Vec::is_empty) {
        return false;
    }
    let mut choice = vec![0usize; n];
    loop {
        let sigma: Vec<State> = (0..n).map(|q| targets[q][choice[q]]).collect();
        if single_cycle(&sigma) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            choice[i] += 1;
            if choice[i] < targets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Follows state 1 around the map and checks it returns after exactly n steps.
pub fn single_cycle(sigma: &[State]) -> bool {
    let n = sigma.len();
    let mut q = 0;
    for step in 1..=n {
        q = sigma[q].index();
        if q == 0 {
            return step == n;
        }
    }
    false
}
