//! Sorted index over the rotations of a set of cyclic words.
//!
//! Each relator and its inverse is stored once, doubled, so every rotation is
//! a borrowed slice. The rotations are sorted lexicographically; that order is
//! the canonical relator order used for tie-breaking throughout the crate.

use crate::freewords::{cyclic_period, inverse_letters, Letter, Word};

#[derive(Debug, Clone)]
struct Cycle {
    doubled: Vec<Letter>,
    len: usize,
    orbit: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Entry {
    cycle: u32,
    offset: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct RotationIndex {
    rank: usize,
    cycles: Vec<Cycle>,
    entries: Vec<Entry>,
    min_len: Option<usize>,
}

/// A query hit: index into the sorted entries and the common prefix length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Hit {
    pub entry: usize,
    pub lcp: usize,
}

pub(crate) fn lcp(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl RotationIndex {
    /// `orbit_reps` are cyclically reduced, nonempty, and pairwise in distinct
    /// rotation+inversion orbits; orbit ids are their positions.
    pub(crate) fn build(rank: usize, orbit_reps: &[Word]) -> RotationIndex {
        let mut cycles = Vec::with_capacity(2 * orbit_reps.len());
        for (orbit, rep) in orbit_reps.iter().enumerate() {
            for letters in [rep.letters().to_vec(), inverse_letters(rep.letters())] {
                let len = letters.len();
                let mut doubled = letters.clone();
                doubled.extend_from_slice(&letters);
                cycles.push(Cycle {
                    doubled,
                    len,
                    orbit,
                });
            }
        }
        let mut entries = Vec::new();
        for (c, cycle) in cycles.iter().enumerate() {
            let period = cyclic_period(&cycle.doubled[..cycle.len]);
            entries.extend((0..period).map(|offset| Entry {
                cycle: c as u32,
                offset: offset as u32,
            }));
        }
        let mut index = RotationIndex {
            rank,
            cycles,
            entries: Vec::new(),
            min_len: orbit_reps.iter().map(Word::len).min(),
        };
        entries.sort_by(|x, y| index.slice_of(*x).cmp(index.slice_of(*y)));
        // A relator conjugate to its own inverse shows up twice.
        entries.dedup_by(|x, y| index.slice_of(*x) == index.slice_of(*y));
        index.entries = entries;
        index
    }

    fn slice_of(&self, e: Entry) -> &[Letter] {
        let cycle = &self.cycles[e.cycle as usize];
        let start = e.offset as usize;
        &cycle.doubled[start..start + cycle.len]
    }

    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn slice(&self, i: usize) -> &[Letter] {
        self.slice_of(self.entries[i])
    }

    pub(crate) fn word(&self, i: usize) -> Word {
        Word::from_reduced(self.slice(i).to_vec(), self.rank)
    }

    pub(crate) fn orbit(&self, i: usize) -> usize {
        self.cycles[self.entries[i].cycle as usize].orbit
    }

    pub(crate) fn min_len(&self) -> Option<usize> {
        self.min_len
    }

    pub(crate) fn contains(&self, s: &[Letter]) -> bool {
        self.entries
            .binary_search_by(|e| self.slice_of(*e).cmp(s))
            .is_ok()
    }

    /// Longest `lcp(query, r)` over entries `r` with `2 * lcp > |r|`,
    /// optionally ignoring one orbit. Ties go to the earlier entry.
    pub(crate) fn longest_half_match(&self, query: &[Letter], skip_orbit: Option<usize>) -> Option<Hit> {
        let min_len = self.min_len?;
        if 2 * query.len() <= min_len {
            return None;
        }
        let pos = self.entries.partition_point(|e| self.slice_of(*e) < query);
        let mut best: Option<Hit> = None;
        let mut consider = |j: usize| -> bool {
            let s = self.slice(j);
            let l = lcp(query, s);
            // lcp with the query only shrinks moving away from `pos`
            if 2 * l <= min_len {
                return false;
            }
            if 2 * l > s.len() && Some(self.orbit(j)) != skip_orbit {
                let better = match best {
                    None => true,
                    Some(b) => l > b.lcp || (l == b.lcp && j < b.entry),
                };
                if better {
                    best = Some(Hit { entry: j, lcp: l });
                }
            }
            true
        };
        for j in pos..self.entries.len() {
            if !consider(j) {
                break;
            }
        }
        for j in (0..pos).rev() {
            if !consider(j) {
                break;
            }
        }
        best
    }

    /// Adjacent pairs in sorted order with their common prefix length.
    pub(crate) fn adjacent_lcps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.entries.len()).map(move |i| (i, lcp(self.slice(i - 1), self.slice(i))))
    }
}
