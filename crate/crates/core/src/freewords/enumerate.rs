//! Exhaustive enumeration of reduced words.
//!
//! Words come out in shortlex order (length ascending, lexicographic within a
//! length). In [`EnumerationMode::CyclicCanonical`] only the least word of each
//! orbit of cyclically reduced words under rotation and inversion is produced.
//! That mode walks the prenecklace tree (Fredricksen–Kessler–Maiorana) with
//! the extra rule that no letter may follow its own inverse, so the work is
//! proportional to the number of orbits rather than the number of words.

use std::ops::ControlFlow;

use super::{Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every nontrivial reduced word.
    AllReduced,
    /// One representative per {rotation, inversion} orbit of cyclically
    /// reduced words.
    CyclicCanonical,
}

/// Depth-first walker over the words of one fixed length.
struct LengthWalker {
    alphabet: u8,
    len: usize,
    mode: EnumerationMode,
    word: Vec<Letter>,
    /// Period of the prenecklace `word[..=d]`; canonical mode only.
    period: Vec<usize>,
    /// Scratch buffer for the inverse of the current word.
    inverse: Vec<Letter>,
    started: bool,
    done: bool,
}

impl LengthWalker {
    fn new(rank: usize, len: usize, mode: EnumerationMode) -> LengthWalker {
        LengthWalker {
            alphabet: (2 * rank) as u8,
            len,
            mode,
            word: vec![Letter::from_code(0); len],
            period: vec![1; len],
            inverse: vec![Letter::from_code(0); len],
            started: false,
            done: len == 0,
        }
    }

    fn lower_bound(&self, d: usize) -> u8 {
        match self.mode {
            EnumerationMode::CyclicCanonical if d > 0 => self.word[d - self.period[d - 1]].code(),
            _ => 0,
        }
    }

    fn first_valid(&self, d: usize, from: u8) -> Option<u8> {
        (from..self.alphabet).find(|&c| d == 0 || Letter::from_code(c) != self.word[d - 1].inverse())
    }

    fn place(&mut self, d: usize, code: u8) {
        self.word[d] = Letter::from_code(code);
        if self.mode == EnumerationMode::CyclicCanonical && d > 0 {
            let p = self.period[d - 1];
            self.period[d] = if code == self.word[d - p].code() { p } else { d + 1 };
        }
    }

    fn leaf_ok(&mut self) -> bool {
        match self.mode {
            EnumerationMode::AllReduced => true,
            EnumerationMode::CyclicCanonical => {
                let n = self.len;
                if n % self.period[n - 1] != 0 {
                    return false;
                }
                if n > 1 && self.word[n - 1] == self.word[0].inverse() {
                    return false;
                }
                // The word is the least rotation of itself; it remains to
                // check that no rotation of its inverse is smaller. Only
                // rotations starting with the leading letter can tie.
                for (slot, l) in self.inverse.iter_mut().zip(self.word.iter().rev()) {
                    *slot = l.inverse();
                }
                let first = self.word[0];
                for start in 0..n {
                    let c = self.inverse[start];
                    if c < first {
                        return false;
                    }
                    if c > first {
                        continue;
                    }
                    for i in 1..n {
                        let at = if start + i < n { start + i } else { start + i - n };
                        let (x, y) = (self.inverse[at], self.word[i]);
                        if x != y {
                            if x < y {
                                return false;
                            }
                            break;
                        }
                    }
                }
                true
            }
        }
    }

    /// Moves to the next accepted word; `false` once exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let (mut d, mut from) = if self.started {
            (self.len - 1, self.word[self.len - 1].code() + 1)
        } else {
            self.started = true;
            (0, 0)
        };
        loop {
            match self.first_valid(d, from) {
                Some(c) => {
                    self.place(d, c);
                    if d + 1 == self.len {
                        if self.leaf_ok() {
                            return true;
                        }
                        from = c + 1;
                    } else {
                        d += 1;
                        from = self.lower_bound(d);
                    }
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return false;
                    }
                    d -= 1;
                    from = self.word[d].code() + 1;
                }
            }
        }
    }
}

/// Calls `visit` on every word of length exactly `len`, in lexicographic
/// order, stopping early if the visitor breaks.
pub fn for_each_word<B>(
    rank: usize,
    len: usize,
    mode: EnumerationMode,
    mut visit: impl FnMut(&[Letter]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut walker = LengthWalker::new(rank, len, mode);
    while walker.advance() {
        visit(&walker.word)?;
    }
    ControlFlow::Continue(())
}

/// All words of length exactly `len`, collected.
pub fn words_of_length(rank: usize, len: usize, mode: EnumerationMode) -> Vec<Word> {
    let mut out = Vec::new();
    let _ = for_each_word::<()>(rank, len, mode, |s| {
        out.push(Word::from_reduced(s.to_vec(), rank));
        ControlFlow::Continue(())
    });
    out
}

/// Lazy shortlex stream of words of length `1..=max_len`.
pub struct WordStream {
    rank: usize,
    max_len: usize,
    mode: EnumerationMode,
    walker: LengthWalker,
}

impl Iterator for WordStream {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.walker.advance() {
                return Some(Word::from_reduced(self.walker.word.clone(), self.rank));
            }
            if self.walker.len >= self.max_len {
                return None;
            }
            self.walker = LengthWalker::new(self.rank, self.walker.len + 1, self.mode);
        }
    }
}

/// Every nontrivial word of length at most `max_len` exactly once.
pub fn enumerate_words(rank: usize, max_len: usize, mode: EnumerationMode) -> Result<WordStream> {
    if rank == 0 || rank > super::MAX_RANK {
        return Err(Error::InvalidArgument(format!("rank {rank} out of range")));
    }
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    Ok(WordStream {
        rank,
        max_len,
        mode,
        walker: LengthWalker::new(rank, 1, mode),
    })
}

/// Number of nontrivial reduced words of length `1..=max_len`:
/// `sum 2k(2k-1)^(i-1)`.
pub fn reduced_word_count(rank: usize, max_len: usize) -> u128 {
    let k = rank as u128;
    (1..=max_len as u32).map(|i| 2 * k * (2 * k - 1).pow(i - 1)).sum()
}

/// Number of cyclically reduced words of length exactly `len >= 1`:
/// `(2k-1)^n + 1 + (k-1)(1 + (-1)^n)`.
pub fn cyclically_reduced_count(rank: usize, len: usize) -> u128 {
    let k = rank as u128;
    if len == 1 {
        return 2 * k;
    }
    let even = if len % 2 == 0 { 2 } else { 0 };
    (2 * k - 1).pow(len as u32) + 1 + (k - 1) * even
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freewords::{inverse_letters, is_canonical_cyclic, is_cyclically_reduced_slice, is_reduced};
    use std::collections::HashSet;

    /// Every letter string of the given length, reduced or not.
    fn all_strings(rank: usize, len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (0..2 * rank as u8).map(move |c| {
                        let mut t = s.clone();
                        t.push(Letter::from_code(c));
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// Orbit key computed by listing every rotation of w and w⁻¹.
    fn brute_orbit_key(s: &[Letter]) -> Vec<Letter> {
        let n = s.len();
        let inv = inverse_letters(s);
        (0..n)
            .flat_map(|k| {
                let a: Vec<Letter> = (0..n).map(|i| s[(k + i) % n]).collect();
                let b: Vec<Letter> = (0..n).map(|i| inv[(k + i) % n]).collect();
                [a, b]
            })
            .min()
            .unwrap()
    }

    #[test]
    fn small_counts() {
        let all: Vec<Word> = enumerate_words(2, 1, EnumerationMode::AllReduced).unwrap().collect();
        assert_eq!(all.len(), 4);
        let all: Vec<Word> = enumerate_words(2, 2, EnumerationMode::AllReduced).unwrap().collect();
        assert_eq!(all.len(), 16);
        let canon: Vec<Word> = enumerate_words(2, 2, EnumerationMode::CyclicCanonical)
            .unwrap()
            .collect();
        let text: Vec<String> = canon.iter().map(Word::to_string).collect();
        assert_eq!(text, ["a", "b", "a^2", "ab", "aB", "b^2"]);
    }

    #[test]
    fn canonical_orbits_match_brute_force_partition() {
        for rank in 1..=3 {
            for len in 1..=(if rank == 3 { 5 } else { 8 }) {
                let cyclic: Vec<Vec<Letter>> = all_strings(rank, len)
                    .into_iter()
                    .filter(|s| is_cyclically_reduced_slice(s))
                    .collect();
                assert_eq!(cyclic.len() as u128, cyclically_reduced_count(rank, len));
                let keys: HashSet<Vec<Letter>> = cyclic.iter().map(|s| brute_orbit_key(s)).collect();
                let mut expected: Vec<Vec<Letter>> = keys.into_iter().collect();
                expected.sort();
                let got: Vec<Vec<Letter>> =
                    words_of_length(rank, len, EnumerationMode::CyclicCanonical)
                        .into_iter()
                        .map(|w| w.letters().to_vec())
                        .collect();
                assert_eq!(got, expected, "rank {rank} len {len}");
                assert!(got.iter().all(|s| is_canonical_cyclic(s)));
            }
        }
    }

    #[test]
    fn all_reduced_matches_filter_and_order() {
        for len in 1..=6 {
            let expected: Vec<Vec<Letter>> = all_strings(2, len)
                .into_iter()
                .filter(|s| is_reduced(s))
                .collect();
            let got: Vec<Vec<Letter>> = words_of_length(2, len, EnumerationMode::AllReduced)
                .into_iter()
                .map(|w| w.letters().to_vec())
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn closed_form_counts() {
        for rank in 1..=3 {
            for max_len in 1..=6 {
                let n = enumerate_words(rank, max_len, EnumerationMode::AllReduced)
                    .unwrap()
                    .count();
                assert_eq!(n as u128, reduced_word_count(rank, max_len));
            }
        }
    }

    #[test]
    fn stream_is_shortlex() {
        let words: Vec<Word> = enumerate_words(3, 4, EnumerationMode::CyclicCanonical)
            .unwrap()
            .collect();
        assert!(words.windows(2).all(|p| p[0].cmp_shortlex(&p[1]).is_lt()));
    }

    #[test]
    fn early_exit() {
        let mut seen = 0;
        let flow = for_each_word(2, 5, EnumerationMode::AllReduced, |_| {
            seen += 1;
            if seen == 10 {
                ControlFlow::Break(seen)
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(flow, ControlFlow::Break(10));
    }

    #[test]
    fn bad_arguments() {
        assert!(enumerate_words(2, 0, EnumerationMode::AllReduced).is_err());
        assert!(enumerate_words(0, 2, EnumerationMode::AllReduced).is_err());
    }
}
