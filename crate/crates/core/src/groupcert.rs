//! Girth certificates, bounded free-subgroup certificates, almost identities
//! and mod-n girth witnesses for explicit generating sets.

use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{build_ball, cheeger_upper_bound, CandidateFamily};
use crate::error::{Error, Result};
use crate::freewords::{enumerate_words, words_of_length, EnumerationMode, Word};
use crate::oracle::GroupOracle;
use crate::smallcancel::{default_coefficients, make_family, one_sixth, Presentation};

/// An ordered list of `k` nonempty words over a common alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingSet {
    pub label: String,
    words: Vec<Word>,
}

impl GeneratingSet {
    pub fn new(words: Vec<Word>, label: impl Into<String>) -> Result<GeneratingSet> {
        let first = words
            .first()
            .ok_or_else(|| Error::InvalidArgument("generating set needs at least one word".into()))?;
        for w in &words {
            if w.rank() != first.rank() {
                return Err(Error::RankMismatch {
                    left: first.rank(),
                    right: w.rank(),
                });
            }
            if w.is_empty() {
                return Err(Error::EmptyWord);
            }
        }
        Ok(GeneratingSet {
            label: label.into(),
            words,
        })
    }

    /// The free basis of the ambient alphabet.
    pub fn standard(rank: usize) -> Result<GeneratingSet> {
        GeneratingSet::new(Word::free_basis(rank)?, "standard")
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Number of generators `k`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Rank of the alphabet the words live in.
    pub fn ambient_rank(&self) -> usize {
        self.words[0].rank()
    }
}

/// `{a, b a^n, b a^{2n}, ..., b a^{(k-1)n}}` over `{a, b}`.
pub fn xn_generating_set(k: usize, n: u64) -> Result<GeneratingSet> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if n % 4 != 2 {
        return Err(Error::InvalidArgument(format!("n = {n} is not 2 mod 4")));
    }
    let a = Word::generator(0, 2)?;
    let b = Word::generator(1, 2)?;
    let mut words = vec![a.clone()];
    for i in 1..k {
        words.push(b.concat(&a.pow((i as u64 * n) as i64))?);
    }
    GeneratingSet::new(words, format!("X_{n}({k})"))
}

/// Cap on the number of words a scan may examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanBudget {
    pub max_words: u64,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget {
            max_words: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    /// Canonical cyclic representative over the `k` generator symbols.
    pub word: Word,
    pub length: usize,
    /// The substituted word over the ambient alphabet, trivial in the group.
    pub image: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthCertificate {
    pub generating_set: GeneratingSet,
    pub scanned_up_to: usize,
    pub shortest_relation: Option<Relation>,
    pub words_examined: u64,
}

impl GirthCertificate {
    /// Lower bound on the girth established by the scan.
    pub fn girth_lower_bound(&self) -> usize {
        match &self.shortest_relation {
            Some(r) => r.length,
            None => self.scanned_up_to + 1,
        }
    }
}

/// Tests every canonical cyclically reduced word of length `1..=max_len` over
/// `k = gens.len()` symbols, shortest first, lexicographic within a length.
pub fn girth_scan(
    oracle: &GroupOracle,
    gens: &GeneratingSet,
    max_len: usize,
    budget: ScanBudget,
) -> Result<GirthCertificate> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("scan length must be at least 1".into()));
    }
    if gens.ambient_rank() != oracle.rank() {
        return Err(Error::RankMismatch {
            left: oracle.rank(),
            right: gens.ambient_rank(),
        });
    }
    let k = gens.len();
    let mut examined = 0u64;
    for len in 1..=max_len {
        let words = words_of_length(k, len, EnumerationMode::CyclicCanonical);
        if examined + words.len() as u64 > budget.max_words {
            return Err(Error::BudgetExceeded(format!(
                "girth scan at length {len} would exceed {} words",
                budget.max_words
            )));
        }
        let hit = words
            .par_iter()
            .enumerate()
            .map(|(i, u)| -> Result<Option<(usize, Word)>> {
                let image = u.substitute(gens.words())?;
                Ok(oracle.is_trivial(&image)?.then_some((i, image)))
            })
            .find_first(|r| !matches!(r, Ok(None)));
        match hit {
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((i, image)))) => {
                return Ok(GirthCertificate {
                    generating_set: gens.clone(),
                    scanned_up_to: max_len,
                    shortest_relation: Some(Relation {
                        word: words[i].clone(),
                        length: len,
                        image,
                    }),
                    words_examined: examined + i as u64 + 1,
                });
            }
            _ => examined += words.len() as u64,
        }
    }
    Ok(GirthCertificate {
        generating_set: gens.clone(),
        scanned_up_to: max_len,
        shortest_relation: None,
        words_examined: examined,
    })
}

/// Girth scan over the two-element set `{u, v}`.
pub fn free_subgroup_scan(
    oracle: &GroupOracle,
    pair: (&Word, &Word),
    max_len: usize,
    budget: ScanBudget,
) -> Result<GirthCertificate> {
    let label = format!("<{}, {}>", pair.0, pair.1);
    let gens = GeneratingSet::new(vec![pair.0.clone(), pair.1.clone()], label)?;
    girth_scan(oracle, &gens, max_len, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlmostIdentityCaps {
    pub max_words: usize,
    pub max_len: usize,
}

impl Default for AlmostIdentityCaps {
    fn default() -> Self {
        AlmostIdentityCaps {
            max_words: 24,
            max_len: 1_000_000,
        }
    }
}

/// A nontrivial word vanishing wherever some `w ∈ words` vanishes.
///
/// `u_1 = w_1`; then `u_i = [u_{i-1}, w_i]` unless the two commute in the free
/// group, in which case both are powers `z^p`, `z^q` of one primitive word and
/// `u_i = u_{i-1}^{q/g} = w_i^{p/g}` with `g = gcd(p, q)`.
pub fn build_almost_identity(words: &[Word], caps: AlmostIdentityCaps) -> Result<Word> {
    let first = words
        .first()
        .ok_or_else(|| Error::InvalidArgument("need at least one word".into()))?;
    if words.len() > caps.max_words {
        return Err(Error::BudgetExceeded(format!(
            "{} words exceeds the cap of {}",
            words.len(),
            caps.max_words
        )));
    }
    if let Some(w) = words.iter().find(|w| w.is_empty()) {
        return Err(Error::InvalidArgument(format!("trivial word {w} in input")));
    }
    let mut u = first.clone();
    for w in &words[1..] {
        u = if u.commutes_with(w) {
            let (z, p) = u.primitive_root()?;
            let (y, q) = w.primitive_root()?;
            let q = if y == z { q as i64 } else { -(q as i64) };
            debug_assert!(y == z || y == z.inverse());
            let g = (p as i64).gcd(&q);
            u.pow(q / g)
        } else {
            u.commutator(w)?
        };
        if u.len() > caps.max_len {
            return Err(Error::BudgetExceeded(format!(
                "intermediate word of length {} exceeds {}",
                u.len(),
                caps.max_len
            )));
        }
    }
    debug_assert!(!u.is_empty());
    Ok(u)
}

/// The construction over all nonempty reduced words of length `<= max_len`
/// in `k` variables, in shortlex order.
pub fn almost_identity_for_girth_bound(k: usize, max_len: usize) -> Result<Word> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    let caps = AlmostIdentityCaps::default();
    let words: Vec<Word> = enumerate_words(k, max_len, EnumerationMode::AllReduced)?
        .take(caps.max_words + 1)
        .collect();
    build_almost_identity(&words, caps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ModNWitness {
    /// `x_index^n` (1-based) is a relation; `word` is its image over `{a, b}`.
    Witness {
        index: usize,
        generator: Word,
        word: Word,
        vector: (u64, u64),
    },
    /// The exponent-sum vectors span a subgroup of `(Z/n)^2` of this order.
    NotGenerating { image_order: u64, vectors: Vec<(u64, u64)> },
}

/// Exponent sums of each tuple word modulo `n`; the tuple generates the
/// abelian quotient `(Z/n)^2` iff the 2x2 minors together with `n` are coprime.
pub fn girth_witness_mod_n(tuple: &[Word], n: u64) -> Result<ModNWitness> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty tuple".into()));
    }
    let m = n as i128;
    let vectors = tuple
        .iter()
        .map(|w| {
            if w.rank() != 2 {
                return Err(Error::RankMismatch { left: 2, right: w.rank() });
            }
            let a = (w.exp_sum(0)? as i128).rem_euclid(m);
            let b = (w.exp_sum(1)? as i128).rem_euclid(m);
            Ok((a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    // index of the span of the vectors and n*Z^2 inside Z^2
    let mut index = m * m;
    for (i, &(a, b)) in vectors.iter().enumerate() {
        index = index.gcd(&(m * a)).gcd(&(m * b));
        for &(c, d) in &vectors[i + 1..] {
            index = index.gcd(&(a * d - b * c));
        }
    }
    let as_u64 = |v: &[(i128, i128)]| v.iter().map(|&(a, b)| (a as u64, b as u64)).collect::<Vec<_>>();
    if index != 1 {
        return Ok(ModNWitness::NotGenerating {
            image_order: (m * m / index) as u64,
            vectors: as_u64(&vectors),
        });
    }
    let i = vectors
        .iter()
        .position(|&v| v != (0, 0))
        .expect("a generating tuple has a nonzero vector");
    Ok(ModNWitness::Witness {
        index: i + 1,
        generator: tuple[i].clone(),
        word: tuple[i].pow(n as i64),
        vector: (vectors[i].0 as u64, vectors[i].1 as u64),
    })
}

/// Parameters of a k-free-like evidence run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceConfig {
    pub k: usize,
    pub n: u64,
    pub j_values: Vec<u32>,
    pub scan_len: usize,
    pub free_subgroup_len: usize,
    pub ball_radius: usize,
    pub ball_budget: usize,
    pub scan_budget: ScanBudget,
}

impl EvidenceConfig {
    pub fn new(k: usize, n: u64) -> EvidenceConfig {
        EvidenceConfig {
            k,
            n,
            j_values: vec![1, 2, 3],
            scan_len: n as usize,
            free_subgroup_len: 8,
            ball_radius: 4,
            ball_budget: 2_000_000,
            scan_budget: ScanBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreeLikeEvidence {
    pub k: usize,
    pub n: u64,
    pub girth_certificate: GirthCertificate,
    pub free_subgroup_certificate: GirthCertificate,
    pub free_subgroup_scan_bound: usize,
    #[serde(serialize_with = "crate::cayley::serialize_ratio")]
    pub cheeger_upper_bound: Ratio<u64>,
    pub cheeger_upper_bound_value: f64,
    pub ball_radius: usize,
    pub ball_vertices: usize,
    pub notes: String,
}

/// Girth scan over `X_n(k)`, the bounded scan of `<x_1^4, x_2>`, and a
/// sub-ball Cheeger bound, all in the group of `make_family(j_values)`.
pub fn freelike_evidence(config: &EvidenceConfig) -> Result<FreeLikeEvidence> {
    let gens = xn_generating_set(config.k, config.n)?;
    let relators = make_family(&config.j_values, &default_coefficients())?;
    let presentation = Arc::new(Presentation::new(2, relators)?.verified(one_sixth())?);
    let oracle = GroupOracle::small_cancellation(presentation)?;
    let girth = girth_scan(&oracle, &gens, config.scan_len, config.scan_budget)?;
    let x1_4 = gens.words()[0].pow(4);
    let free = free_subgroup_scan(
        &oracle,
        (&x1_4, &gens.words()[1]),
        config.free_subgroup_len,
        config.scan_budget,
    )?;
    let ball = build_ball(&oracle, &gens, config.ball_radius, config.ball_budget)?;
    let cheeger = cheeger_upper_bound(&ball, &CandidateFamily::SubBalls)?;
    let mut notes = format!(
        "girth >= {} for {}; no relation of length <= {} between x1^4 and x2; \
         Cheeger constant <= {} from sub-balls of a radius-{} ball",
        girth.girth_lower_bound(),
        gens.label,
        config.free_subgroup_len,
        cheeger.ratio,
        config.ball_radius
    );
    if girth.shortest_relation.is_some() {
        notes.push_str("; a relation was found within the scan length");
    }
    Ok(FreeLikeEvidence {
        k: config.k,
        n: config.n,
        free_subgroup_scan_bound: config.free_subgroup_len,
        cheeger_upper_bound: cheeger.ratio,
        cheeger_upper_bound_value: *cheeger.ratio.numer() as f64 / *cheeger.ratio.denom() as f64,
        ball_radius: config.ball_radius,
        ball_vertices: ball.vertex_count(),
        girth_certificate: girth,
        free_subgroup_certificate: free,
        notes,
    })
}
