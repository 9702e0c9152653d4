//! Free-group word algebra.
//!
//! A [`Word`] is always freely reduced and carries the rank of the alphabet it
//! lives over. Letters are packed as `2 * index + negative`, so inversion is a
//! single xor and the derived ordering on letters is `a < A < b < B < ...`,
//! i.e. by (generator index, positive first).

mod enumerate;
mod text;

pub use enumerate::{
    cyclically_reduced_count, enumerate_words, for_each_word, reduced_word_count,
    words_of_length, EnumerationMode, WordStream,
};
pub use text::{parse_word_list, WordText};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet rank.
pub const MAX_RANK: usize = 127;

/// A generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize, positive: bool) -> Letter {
        assert!(index <= MAX_RANK, "generator index {index} too large");
        Letter((index as u8) << 1 | u8::from(!positive))
    }

    pub fn gen(index: usize) -> Letter {
        Letter::new(index, true)
    }

    pub fn gen_inv(index: usize) -> Letter {
        Letter::new(index, false)
    }

    #[inline]
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// +1 or -1.
    #[inline]
    pub fn sign(self) -> i64 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub(crate) fn from_code(code: u8) -> Letter {
        Letter(code)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_positive() { "" } else { "^-1" };
        write!(f, "g{}{}", self.index() + 1, sign)
    }
}

/// A freely reduced word over an alphabet of `rank` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidArgument(format!(
            "rank must be in 1..={MAX_RANK}, got {rank}"
        )));
    }
    Ok(())
}

fn same_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

/// Appends `letter` to a reduced stack of letters, cancelling if possible.
#[inline]
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

pub(crate) fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverse())
}

pub(crate) fn is_cyclically_reduced_slice(letters: &[Letter]) -> bool {
    is_reduced(letters)
        && match (letters.first(), letters.last()) {
            (Some(&first), Some(&last)) => letters.len() == 1 || first != last.inverse(),
            _ => true,
        }
}

/// Offset of the lexicographically least rotation.
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest `d` dividing `s.len()` with `s` invariant under rotation by `d`.
pub(crate) fn cyclic_period(s: &[Letter]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| s[i] == s[i - d]))
        .unwrap_or(n)
}

/// Compares `s` rotated by `offset` against `t`, letter by letter.
#[cfg(test)]
fn cmp_rotation(s: &[Letter], offset: usize, t: &[Letter]) -> std::cmp::Ordering {
    let n = s.len();
    (0..n)
        .map(|i| s[(offset + i) % n])
        .cmp(t.iter().copied())
}

pub(crate) fn inverse_letters(s: &[Letter]) -> Vec<Letter> {
    s.iter().rev().map(|l| l.inverse()).collect()
}

/// True when `s` (cyclically reduced) is the least word among all rotations
/// of `s` and of its inverse.
#[cfg(test)]
pub(crate) fn is_canonical_cyclic(s: &[Letter]) -> bool {
    if s.is_empty() {
        return true;
    }
    let own = least_rotation(s);
    if cmp_rotation(s, own, s) == std::cmp::Ordering::Less {
        return false;
    }
    let inv = inverse_letters(s);
    let off = least_rotation(&inv);
    cmp_rotation(&inv, off, s) != std::cmp::Ordering::Less
}

impl Word {
    pub fn empty(rank: usize) -> Word {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I>(raw: I, rank: usize) -> Result<Word>
    where
        I: IntoIterator<Item = Letter>,
    {
        check_rank(rank)?;
        let mut stack = Vec::new();
        for letter in raw {
            if letter.index() >= rank {
                return Err(Error::LetterOutOfRange {
                    index: letter.index(),
                    rank,
                });
            }
            push_reduced(&mut stack, letter);
        }
        Ok(Word {
            rank,
            letters: stack,
        })
    }

    /// Builds a word from letters already known to be reduced and in range.
    pub(crate) fn from_reduced(letters: Vec<Letter>, rank: usize) -> Word {
        debug_assert!(is_reduced(&letters));
        debug_assert!(letters.iter().all(|l| l.index() < rank));
        Word { rank, letters }
    }

    /// The single-letter word `x_{index}`.
    pub fn generator(index: usize, rank: usize) -> Result<Word> {
        Word::reduce([Letter::gen(index)], rank)
    }

    /// The free generators `x_1, ..., x_rank`.
    pub fn free_basis(rank: usize) -> Result<Vec<Word>> {
        (0..rank).map(|i| Word::generator(i, rank)).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_rank(self.rank, other.rank)?;
        let mut stack = self.letters.clone();
        stack.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Ok(Word::from_reduced(stack, self.rank))
    }

    pub fn inverse(&self) -> Word {
        Word::from_reduced(inverse_letters(&self.letters), self.rank)
    }

    /// `self^exponent`, reduced. Negative exponents invert.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let times = exponent.unsigned_abs() as usize;
        let (conj, core) = base.cyclic_reduce();
        // c · core^m · c⁻¹ is reduced as written once core is cyclically reduced.
        let mut letters = Vec::with_capacity(2 * conj.len() + core.len() * times);
        if times > 0 && !core.is_empty() {
            letters.extend_from_slice(&conj.letters);
            for _ in 0..times {
                letters.extend_from_slice(&core.letters);
            }
            letters.extend(inverse_letters(&conj.letters));
        }
        Word::from_reduced(letters, self.rank)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        same_rank(self.rank, other.rank)?;
        let mut stack = Vec::with_capacity(2 * (self.len() + other.len()));
        for l in inverse_letters(&self.letters)
            .into_iter()
            .chain(inverse_letters(&other.letters))
            .chain(self.letters.iter().copied())
            .chain(other.letters.iter().copied())
        {
            push_reduced(&mut stack, l);
        }
        Ok(Word::from_reduced(stack, self.rank))
    }

    /// Replaces each `x_i^{±1}` by `images[i]^{±1}` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        same_rank(self.rank, images.len())?;
        let target = images.first().map(Word::rank).ok_or(Error::InvalidArgument(
            "substitution needs at least one image".into(),
        ))?;
        for image in images {
            same_rank(target, image.rank)?;
        }
        let inverses: Vec<Vec<Letter>> =
            images.iter().map(|w| inverse_letters(&w.letters)).collect();
        let mut stack = Vec::new();
        for &l in &self.letters {
            let image = if l.is_positive() {
                &images[l.index()].letters
            } else {
                &inverses[l.index()]
            };
            for &m in image {
                push_reduced(&mut stack, m);
            }
        }
        Ok(Word::from_reduced(stack, target))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        is_cyclically_reduced_slice(&self.letters)
    }

    /// Splits `self = c · core · c⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let s = &self.letters;
        let mut peel = 0;
        while 2 * peel + 1 < s.len() && s[peel] == s[s.len() - 1 - peel].inverse() {
            peel += 1;
        }
        (
            Word::from_reduced(s[..peel].to_vec(), self.rank),
            Word::from_reduced(s[peel..s.len() - peel].to_vec(), self.rank),
        )
    }

    /// The rotation of `self` starting at `offset`. Only meaningful (reduced)
    /// for cyclically reduced words.
    pub(crate) fn rotation(&self, offset: usize) -> Word {
        let n = self.len();
        let letters = (0..n).map(|i| self.letters[(offset + i) % n]).collect();
        Word::from_reduced(letters, self.rank)
    }

    /// All distinct rotations, in rotation order starting from `self`.
    pub fn cyclic_shifts(&self) -> Result<Vec<Word>> {
        if !self.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(self.to_string()));
        }
        if self.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let period = cyclic_period(&self.letters);
        Ok((0..period).map(|k| self.rotation(k)).collect())
    }

    /// Least word among the rotations of `self` and of its inverse.
    pub fn canonical_cyclic(&self) -> Result<Word> {
        if !self.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(self.to_string()));
        }
        let own = self.rotation(least_rotation(&self.letters));
        let inv = self.inverse();
        let other = inv.rotation(least_rotation(&inv.letters));
        Ok(if other.letters < own.letters { other } else { own })
    }

    /// Signed number of occurrences of generator `index`.
    pub fn exp_sum(&self, index: usize) -> Result<i64> {
        if index >= self.rank {
            return Err(Error::LetterOutOfRange {
                index,
                rank: self.rank,
            });
        }
        Ok(self
            .letters
            .iter()
            .filter(|l| l.index() == index)
            .map(|l| l.sign())
            .sum())
    }

    /// The shortest `root` with `self = root^exponent`, `exponent >= 1`.
    pub fn primitive_root(&self) -> Result<(Word, u32)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let (conj, core) = self.cyclic_reduce();
        let period = cyclic_period(&core.letters);
        let exponent = (core.len() / period) as u32;
        let root_core = Word::from_reduced(core.letters[..period].to_vec(), self.rank);
        let root = conj.concat(&root_core)?.concat(&conj.inverse())?;
        Ok((root, exponent))
    }

    /// Whether `self` and `other` commute in the free group.
    pub fn commutes_with(&self, other: &Word) -> bool {
        if self.rank != other.rank {
            return false;
        }
        match (self.concat(other), other.concat(self)) {
            (Ok(uw), Ok(wu)) => uw == wu,
            _ => false,
        }
    }

    /// Shortlex comparison: length first, then letters.
    pub fn cmp_shortlex(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self}; rank {})", self.rank)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Deserialized words get the smallest rank that fits their letters (at least 2).
impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse_infer(&s).map_err(serde::de::Error::custom)
    }
}
