//! Symmetrized presentations and the C'(λ) machinery.
//!
//! A [`Presentation`] keeps its base relators together with a sorted index of
//! the symmetrized set (all rotations of every relator and its inverse). The
//! C'(λ) verdict is recorded on the value itself; Dehn's algorithm and the
//! Greendlinger search refuse to run on a presentation that has not been
//! verified at some λ ≤ 1/6.

mod dehn;
mod family;
mod index;

pub use dehn::{DehnRun, DehnStep, GreendlingerMatch, Independence};
pub use family::{default_coefficients, make_family};

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freewords::{Letter, Word};
use index::RotationIndex;

/// Small-cancellation parameter λ.
pub type Lambda = Ratio<u64>;

pub fn one_sixth() -> Lambda {
    Ratio::new(1, 6)
}

/// Parses `"1/6"`, `"0.125"` style values.
pub fn parse_lambda(text: &str) -> Result<Lambda> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse λ from {text:?}"));
    if let Some((n, d)) = text.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 12 {
            return Err(bad());
        }
        let scale = 10u64.pow(digits);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        return Ok(Ratio::new(int * scale + frac, scale));
    }
    Ok(Ratio::from_integer(text.parse().map_err(|_| bad())?))
}

/// Two distinct symmetrized relators with too long a common prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub r: Word,
    pub r_prime: Word,
    pub lcp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CPrimeOutcome {
    Holds,
    Violation(Violation),
}

/// Outcome of the four conditions on a relator set used for the girth
/// construction, plus positivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScReport {
    pub closed_under_shifts: bool,
    pub c_prime_ok: bool,
    pub c_prime_violation: Option<Violation>,
    pub forbidden_prefix_ok: bool,
    pub forbidden_prefix_word: Option<Word>,
    pub min_length_ok: bool,
    pub min_length_word: Option<Word>,
    pub positive_ok: bool,
}

impl ScReport {
    pub fn all_ok(&self) -> bool {
        self.closed_under_shifts
            && self.c_prime_ok
            && self.forbidden_prefix_ok
            && self.min_length_ok
            && self.positive_ok
    }
}

#[derive(Debug, Clone)]
pub struct Presentation {
    rank: usize,
    base: Vec<Word>,
    /// Index into `base` of the first relator of each orbit.
    orbit_reps: Vec<usize>,
    index: RotationIndex,
    verified_lambda: Option<Lambda>,
}

fn validate_relator(rank: usize, r: &Word) -> Result<()> {
    if r.rank() != rank {
        return Err(Error::RankMismatch {
            left: rank,
            right: r.rank(),
        });
    }
    if r.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !r.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced(r.to_string()));
    }
    Ok(())
}

/// The smallest set containing `base` that is closed under rotation and
/// inversion, sorted lexicographically.
pub fn symmetrize(base: &[Word]) -> Result<Vec<Word>> {
    let Some(rank) = base.first().map(Word::rank) else {
        return Ok(Vec::new());
    };
    let p = Presentation::new(rank, base.to_vec())?;
    Ok(p.symmetrized())
}

impl Presentation {
    /// Unverified presentation on `rank` generators.
    pub fn new(rank: usize, base: Vec<Word>) -> Result<Presentation> {
        if rank == 0 || rank > crate::freewords::MAX_RANK {
            return Err(Error::InvalidArgument(format!("rank {rank} out of range")));
        }
        let mut orbit_of: HashMap<Word, usize> = HashMap::new();
        let mut orbit_reps = Vec::new();
        for (i, r) in base.iter().enumerate() {
            validate_relator(rank, r)?;
            let key = r.canonical_cyclic()?;
            orbit_of.entry(key).or_insert_with(|| {
                orbit_reps.push(i);
                orbit_reps.len() - 1
            });
        }
        let reps: Vec<Word> = orbit_reps.iter().map(|&i| base[i].clone()).collect();
        Ok(Presentation {
            rank,
            index: RotationIndex::build(rank, &reps),
            base,
            orbit_reps,
            verified_lambda: None,
        })
    }

    /// The free group of the given rank, verified (vacuously) at λ = 1/6.
    pub fn free(rank: usize) -> Result<Presentation> {
        Presentation::new(rank, Vec::new())?.verified(one_sixth())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base_relators(&self) -> &[Word] {
        &self.base
    }

    pub fn verified_lambda(&self) -> Option<Lambda> {
        self.verified_lambda
    }

    /// Number of words in the symmetrized set.
    pub fn symmetrized_len(&self) -> usize {
        self.index.len()
    }

    /// The symmetrized set in canonical (lexicographic) order.
    pub fn symmetrized(&self) -> Vec<Word> {
        (0..self.index.len()).map(|i| self.index.word(i)).collect()
    }

    pub fn min_relator_len(&self) -> Option<usize> {
        self.index.min_len()
    }

    /// Base relators with pairwise distinct rotation+inversion orbits.
    pub fn independent_candidates(&self) -> Vec<&Word> {
        self.orbit_reps.iter().map(|&i| &self.base[i]).collect()
    }

    /// A new, unverified presentation with one more relator.
    pub fn with_relator(&self, r: Word) -> Result<Presentation> {
        let mut base = self.base.clone();
        base.push(r);
        Presentation::new(self.rank, base)
    }

    /// A new, unverified presentation with relator `i` replaced.
    pub fn with_replaced(&self, i: usize, r: Word) -> Result<Presentation> {
        let mut base = self.base.clone();
        let slot = base
            .get_mut(i)
            .ok_or_else(|| Error::InvalidArgument(format!("no relator {i}")))?;
        *slot = r;
        Presentation::new(self.rank, base)
    }

    /// Checks C'(λ): every two distinct symmetrized words have common prefix
    /// shorter than `λ · min(|r|, |r'|)`.
    ///
    /// Only neighbours in sorted order need comparing: the longest common
    /// prefix of any word with the rest of the set is attained at one of its
    /// two neighbours. Among violations the one with the longest prefix is
    /// reported, earliest in canonical order on ties.
    pub fn check_c_prime(&self, lambda: Lambda) -> Result<CPrimeOutcome> {
        if *lambda.numer() == 0 || lambda > Ratio::from_integer(1) {
            return Err(Error::InvalidArgument(format!("λ = {lambda} not in (0, 1]")));
        }
        let (p, q) = (*lambda.numer() as u128, *lambda.denom() as u128);
        let mut worst: Option<(usize, usize)> = None;
        for (i, l) in self.index.adjacent_lcps() {
            let shorter = self.index.slice(i - 1).len().min(self.index.slice(i).len());
            if q * l as u128 >= p * shorter as u128 && worst.is_none_or(|(_, wl)| l > wl) {
                worst = Some((i, l));
            }
        }
        Ok(match worst {
            None => CPrimeOutcome::Holds,
            Some((i, lcp)) => CPrimeOutcome::Violation(Violation {
                r: self.index.word(i),
                r_prime: self.index.word(i - 1),
                lcp,
            }),
        })
    }

    /// Consumes the presentation and returns it with `verified_lambda` set,
    /// or the violation as an error.
    pub fn verified(mut self, lambda: Lambda) -> Result<Presentation> {
        match self.check_c_prime(lambda)? {
            CPrimeOutcome::Holds => {
                self.verified_lambda = Some(lambda);
                Ok(self)
            }
            CPrimeOutcome::Violation(v) => Err(Error::InvalidArgument(format!(
                "C'({lambda}) fails: {} and {} share a prefix of length {}",
                v.r, v.r_prime, v.lcp
            ))),
        }
    }

    pub(crate) fn require_dehn(&self) -> Result<()> {
        match self.verified_lambda {
            Some(l) if l <= one_sixth() => Ok(()),
            _ => Err(Error::Unverified),
        }
    }

    /// Conditions (a)-(d) on the relator set over `a = x1`, `b = x2`:
    /// shift-closure, C'(1/6), no rotation starting with `a^2`, `abab` or
    /// `baba`, no relator shorter than 6; plus positivity of the base.
    pub fn check_family_conditions(&self) -> ScReport {
        let closed_under_shifts = self.base.iter().all(|r| {
            let n = r.len();
            let doubled: Vec<Letter> = r.letters().iter().chain(r.letters()).copied().collect();
            (0..n).all(|k| self.index.contains(&doubled[k..k + n]))
        });

        let (c_prime_ok, c_prime_violation) = match self.check_c_prime(one_sixth()) {
            Ok(CPrimeOutcome::Holds) => (true, None),
            Ok(CPrimeOutcome::Violation(v)) => (false, Some(v)),
            Err(_) => unreachable!("1/6 is a valid λ"),
        };

        let forbidden: Vec<Vec<Letter>> = if self.rank >= 2 {
            let (a, b) = (Letter::gen(0), Letter::gen(1));
            vec![vec![a, a], vec![a, b, a, b], vec![b, a, b, a]]
        } else {
            vec![vec![Letter::gen(0); 2]]
        };
        let forbidden_prefix_word = self.base.iter().find_map(|r| {
            let n = r.len();
            let doubled: Vec<Letter> = r.letters().iter().chain(r.letters()).copied().collect();
            (0..n).find_map(|k| {
                let rot = &doubled[k..k + n];
                forbidden
                    .iter()
                    .any(|f| rot.starts_with(f))
                    .then(|| Word::from_reduced(rot.to_vec(), self.rank))
            })
        });

        let min_length_word = self.base.iter().find(|r| r.len() < 6).cloned();

        ScReport {
            closed_under_shifts,
            c_prime_ok,
            c_prime_violation,
            forbidden_prefix_ok: forbidden_prefix_word.is_none(),
            forbidden_prefix_word,
            min_length_ok: min_length_word.is_none(),
            min_length_word,
            positive_ok: self.base.iter().all(Word::is_positive),
        }
    }

    /// Parses the presentation file format: an optional `rank: m` line, then
    /// one relator per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut rank: Option<usize> = None;
        let mut lines = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(value) = line.strip_prefix("rank:") {
                if rank.is_some() || !lines.is_empty() {
                    return Err(Error::InvalidArgument(
                        "`rank:` must come once, before any relator".into(),
                    ));
                }
                let m = value.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad rank line {line:?}"))
                })?;
                rank = Some(m);
            } else {
                lines.push(line);
            }
        }
        let words = match rank {
            Some(m) => lines
                .iter()
                .map(|l| Word::parse(l, m))
                .collect::<Result<Vec<_>>>()?,
            None => {
                let inferred = lines
                    .iter()
                    .map(|l| Word::parse_infer(l).map(|w| w.rank()))
                    .try_fold(2usize, |acc, r| r.map(|r| acc.max(r)))?;
                rank = Some(inferred);
                lines
                    .iter()
                    .map(|l| Word::parse(l, inferred))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Presentation::new(rank.unwrap_or(2), words)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("rank: {}\n", self.rank);
        for r in &self.base {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn texts(words: &[Word]) -> Vec<String> {
        words.iter().map(Word::to_string).collect()
    }

    /// Quadratic oracle: every ordered pair of distinct words.
    fn brute_c_prime(sym: &[Word], lambda: Lambda) -> bool {
        let (p, q) = (*lambda.numer() as usize, *lambda.denom() as usize);
        sym.iter().enumerate().all(|(i, r)| {
            sym.iter().enumerate().all(|(j, s)| {
                if i == j {
                    return true;
                }
                let l = index::lcp(r.letters(), s.letters());
                q * l < p * r.len().min(s.len())
            })
        })
    }

    /// Closure by explicit iteration until nothing new appears.
    fn brute_symmetrize(base: &[Word]) -> Vec<Word> {
        let mut set: Vec<Word> = base.to_vec();
        loop {
            let mut next = set.clone();
            for r in &set {
                next.push(r.inverse());
                next.push(r.rotation(1));
            }
            next.sort_by(|a, b| a.letters().cmp(b.letters()));
            next.dedup();
            if next.len() == set.len() {
                return next;
            }
            set = next;
        }
    }

    #[test]
    fn symmetrize_examples() {
        let sym = symmetrize(&[w("ab")]).unwrap();
        assert_eq!(texts(&sym), ["ab", "AB", "ba", "BA"]);
        assert_eq!(symmetrize(&[w("a^2b^3")]).unwrap().len(), 10);
        assert_eq!(symmetrize(&[w("abab")]).unwrap().len(), 4);
        assert!(symmetrize(&[w("abA")]).is_err());
        assert!(symmetrize(&[]).unwrap().is_empty());
    }

    #[test]
    fn symmetrize_matches_closure_oracle() {
        for base in [vec![w("a^2b^3")], vec![w("abab"), w("ba^2")], vec![w("aBAb"), w("ab")]] {
            assert_eq!(symmetrize(&base).unwrap(), brute_symmetrize(&base));
        }
    }

    #[test]
    fn c_prime_examples() {
        let empty = Presentation::new(2, vec![]).unwrap();
        assert_eq!(empty.check_c_prime(one_sixth()).unwrap(), CPrimeOutcome::Holds);

        let p = Presentation::new(2, vec![w("a^2b^3")]).unwrap();
        match p.check_c_prime(one_sixth()).unwrap() {
            CPrimeOutcome::Violation(v) => {
                assert_eq!(v.lcp, 2);
                assert_eq!(v.r, w("b^3a^2"));
                assert_eq!(v.r_prime, w("b^2a^2b"));
            }
            CPrimeOutcome::Holds => panic!("a^2b^3 is not C'(1/6)"),
        }
        assert!(!brute_c_prime(&p.symmetrized(), one_sixth()));
        assert!(p.check_c_prime(Ratio::new(0, 1)).is_err());
        assert!(p.check_c_prime(Ratio::new(3, 2)).is_err());
    }

    #[test]
    fn verification_is_recorded_and_cleared_by_mutation() {
        let p = Presentation::new(2, make_family(&[1], &default_coefficients()).unwrap()).unwrap();
        assert!(p.verified_lambda().is_none());
        let p = p.verified(one_sixth()).unwrap();
        assert_eq!(p.verified_lambda(), Some(one_sixth()));
        let q = p.with_relator(w("ab^3ab^5ab^7")).unwrap();
        assert!(q.verified_lambda().is_none());
        assert!(Presentation::new(2, vec![w("a^2b^3")])
            .unwrap()
            .verified(one_sixth())
            .is_err());
    }

    #[test]
    fn family_conditions() {
        let family = Presentation::new(2, make_family(&[1], &default_coefficients()).unwrap()).unwrap();
        assert!(family.check_family_conditions().all_ok());

        let report = Presentation::new(2, vec![w("a^2b^4")]).unwrap().check_family_conditions();
        assert!(!report.forbidden_prefix_ok);
        assert_eq!(report.forbidden_prefix_word, Some(w("a^2b^4")));

        let report = Presentation::new(2, vec![w("ab^4")]).unwrap().check_family_conditions();
        assert!(!report.min_length_ok);
        assert_eq!(report.min_length_word, Some(w("ab^4")));

        let report = Presentation::new(2, vec![w("aB^7")]).unwrap().check_family_conditions();
        assert!(!report.positive_ok);

        let report = Presentation::new(2, vec![w("a^2b^3")]).unwrap().check_family_conditions();
        assert!(!report.c_prime_ok && report.c_prime_violation.is_some());
    }

    #[test]
    fn cyclic_reading_of_forbidden_prefixes() {
        // abab only appears across the wrap point
        let report = Presentation::new(2, vec![w("bab^3a^5ba")]).unwrap().check_family_conditions();
        assert!(!report.forbidden_prefix_ok);
    }

    #[test]
    fn text_round_trip() {
        let text = "# family\nrank: 2\nab^2ab^4  # j = 1\n\nab^4ab^8\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(texts(p.base_relators()), ["ab^2ab^4", "ab^4ab^8"]);
        let again = Presentation::parse(&p.to_text()).unwrap();
        assert_eq!(again.base_relators(), p.base_relators());
        assert_eq!(Presentation::parse("abc").unwrap().rank(), 3);
        assert!(Presentation::parse("ab\nrank: 2").is_err());
        assert!(Presentation::parse("rank: x").is_err());
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("1/6").unwrap(), one_sixth());
        assert_eq!(parse_lambda("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_lambda("1").unwrap(), Ratio::new(1, 1));
        assert!(parse_lambda("1/0").is_err());
        assert!(parse_lambda("x").is_err());
    }

    fn arb_cyclic(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..2usize, any::<bool>()), 1..max_len).prop_filter_map(
            "needs a nonempty cyclically reduced word",
            |raw| {
                let word = Word::reduce(raw.into_iter().map(|(i, s)| Letter::new(i, s)), 2).ok()?;
                let (_, core) = word.cyclic_reduce();
                (!core.is_empty()).then_some(core)
            },
        )
    }

    proptest! {
        #[test]
        fn c_prime_agrees_with_quadratic_oracle(
            base in prop::collection::vec(arb_cyclic(16), 1..4),
            denom in 2u64..9,
        ) {
            let p = Presentation::new(2, base).unwrap();
            let sym = p.symmetrized();
            prop_assume!(sym.iter().map(Word::len).sum::<usize>() <= 200);
            let lambda = Ratio::new(1, denom);
            let fast = p.check_c_prime(lambda).unwrap() == CPrimeOutcome::Holds;
            prop_assert_eq!(fast, brute_c_prime(&sym, lambda));
        }

        #[test]
        fn symmetrize_is_closed_and_idempotent(base in prop::collection::vec(arb_cyclic(10), 1..4)) {
            let sym = symmetrize(&base).unwrap();
            prop_assert_eq!(&sym, &brute_symmetrize(&base));
            prop_assert_eq!(&symmetrize(&sym).unwrap(), &sym);
            for r in &base {
                prop_assert!(sym.contains(r));
            }
        }
    }
}
