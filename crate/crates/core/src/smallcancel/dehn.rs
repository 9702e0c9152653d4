//! Greendlinger subword search and Dehn's algorithm.

use serde::Serialize;

use super::Presentation;
use crate::error::{Error, Result};
use crate::freewords::{inverse_letters, Letter, Word};

/// A subword `V` of the input that is a prefix of the symmetrized relator `r`
/// with `|V| > |r| / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreendlingerMatch {
    pub position: usize,
    pub subword: Word,
    pub relator: Word,
}

/// One replacement `V -> (complement of V in r)⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnStep {
    pub position: usize,
    pub removed: Word,
    pub relator: Word,
    pub inserted: Word,
    pub length_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnRun {
    pub trivial: bool,
    /// Length of the cyclically reduced input.
    pub start_length: usize,
    pub steps: Vec<DehnStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Independence {
    Independent,
    /// `relator` contains more than half of `other`, a symmetrized relator
    /// from a different orbit, starting at cyclic position `position`.
    Witness {
        relator: Word,
        other: Word,
        overlap: usize,
        position: usize,
    },
}

/// Free reduction followed by stripping mutually inverse ends.
fn cyclically_reduce_letters(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in raw {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[lo] == stack[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    stack[lo..hi].to_vec()
}

impl Presentation {
    fn check_word(&self, w: &Word) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: w.rank(),
            });
        }
        Ok(())
    }

    /// Leftmost subword of `u` that is more than half of a symmetrized
    /// relator; the longest such at that position, ties broken by canonical
    /// relator order.
    pub fn greendlinger_find(&self, u: &Word) -> Result<Option<GreendlingerMatch>> {
        self.require_dehn()?;
        self.check_word(u)?;
        let s = u.letters();
        Ok((0..s.len()).find_map(|i| {
            self.index
                .longest_half_match(&s[i..], None)
                .map(|hit| self.make_match(i, &s[i..i + hit.lcp], hit.entry))
        }))
    }

    /// As [`greendlinger_find`](Self::greendlinger_find) but reading `u` as a
    /// cyclic word: subwords may wrap around the end.
    pub fn greendlinger_find_cyclic(&self, u: &Word) -> Result<Option<GreendlingerMatch>> {
        self.require_dehn()?;
        self.check_word(u)?;
        Ok(self.find_cyclic(u.letters()).map(|(i, len, entry)| {
            let doubled: Vec<Letter> = u.letters().iter().chain(u.letters()).copied().collect();
            self.make_match(i, &doubled[i..i + len], entry)
        }))
    }

    fn make_match(&self, position: usize, subword: &[Letter], entry: usize) -> GreendlingerMatch {
        GreendlingerMatch {
            position,
            subword: Word::from_reduced(subword.to_vec(), self.rank()),
            relator: self.index.word(entry),
        }
    }

    /// `(position, match length, entry)` on the cyclic word `s`.
    fn find_cyclic(&self, s: &[Letter]) -> Option<(usize, usize, usize)> {
        let n = s.len();
        let min_len = self.index.min_len()?;
        if 2 * n <= min_len {
            return None;
        }
        let doubled: Vec<Letter> = s.iter().chain(s).copied().collect();
        (0..n).find_map(|i| {
            self.index
                .longest_half_match(&doubled[i..i + n], None)
                .map(|hit| (i, hit.lcp, hit.entry))
        })
    }

    /// Runs Dehn's algorithm on the cyclic word of `w`, keeping the trace when
    /// asked to.
    pub fn dehn_run(&self, w: &Word, keep_trace: bool) -> Result<DehnRun> {
        self.require_dehn()?;
        self.check_word(w)?;
        let (_, core) = w.cyclic_reduce();
        let mut current: Vec<Letter> = core.letters().to_vec();
        let start_length = current.len();
        let mut steps = Vec::new();
        while let Some((i, len, entry)) = self.find_cyclic(&current) {
            let n = current.len();
            let relator = self.index.slice(entry);
            let complement = &relator[len..];
            let rest = (i + len..i + n).map(|j| current[j % n]);
            let inserted = inverse_letters(complement);
            let next = cyclically_reduce_letters(inserted.iter().copied().chain(rest));
            assert!(
                next.len() < n,
                "Dehn step did not shorten the word ({} -> {})",
                n,
                next.len()
            );
            if keep_trace {
                let removed: Vec<Letter> = (i..i + len).map(|j| current[j % n]).collect();
                steps.push(DehnStep {
                    position: i,
                    removed: Word::from_reduced(removed, self.rank()),
                    relator: self.index.word(entry),
                    inserted: Word::from_reduced(inserted, self.rank()),
                    length_after: next.len(),
                });
            }
            current = next;
        }
        Ok(DehnRun {
            trivial: current.is_empty(),
            start_length,
            steps,
        })
    }

    /// Whether `w` is the identity of the presented group.
    pub fn dehn_trivial(&self, w: &Word) -> Result<bool> {
        self.dehn_run(w, false).map(|run| run.trivial)
    }

    pub fn eq_in_group(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check_word(u)?;
        self.check_word(v)?;
        self.dehn_trivial(&u.concat(&v.inverse())?)
    }

    /// Checks that no orbit representative contains more than half of a
    /// symmetrized relator from another orbit (read cyclically). Under
    /// C'(1/6) this means no relator is a consequence of the others.
    pub fn independent_relators(&self) -> Result<Independence> {
        for (orbit, &base_index) in self.orbit_reps.iter().enumerate() {
            let r = &self.base[base_index];
            let s = r.letters();
            let n = s.len();
            let doubled: Vec<Letter> = s.iter().chain(s).copied().collect();
            for i in 0..n {
                if let Some(hit) = self.index.longest_half_match(&doubled[i..i + n], Some(orbit)) {
                    return Ok(Independence::Witness {
                        relator: r.clone(),
                        other: self.index.word(hit.entry),
                        overlap: hit.lcp,
                        position: i,
                    });
                }
            }
        }
        Ok(Independence::Independent)
    }
}
