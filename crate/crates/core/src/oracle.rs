//! Uniform word-problem service over several group backends.
//!
//! Callers hold a [`GroupOracle`] and never branch on what is behind it. Apart
//! from the triviality test a backend may offer a complete normal form or a
//! partial invariant; ball construction uses them to avoid most equality
//! queries, but nothing depends on their presence for correctness.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::finitegrp::FiniteGroup;
use crate::freewords::Word;
use crate::smallcancel::Presentation;

/// A complete invariant: two words share a normal form iff they are equal in
/// the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Word(Word),
    Element(usize),
}

pub trait WordProblem: Send + Sync {
    fn rank(&self) -> usize;

    /// `w` has the oracle's rank (checked by [`GroupOracle`]).
    fn is_trivial(&self, w: &Word) -> Result<bool>;

    fn normal_form(&self, _w: &Word) -> Option<NormalForm> {
        None
    }

    /// Words equal in the group always get the same key; unequal words may
    /// share one.
    fn class_key(&self, _w: &Word) -> Option<Vec<i64>> {
        None
    }

    fn describe(&self) -> String;
}

#[derive(Clone)]
pub struct GroupOracle {
    backend: Arc<dyn WordProblem>,
}

impl fmt::Debug for GroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupOracle")
            .field("backend", &self.backend.describe())
            .finish()
    }
}

struct FreeBackend {
    rank: usize,
}

impl WordProblem for FreeBackend {
    fn rank(&self) -> usize {
        self.rank
    }

    fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(w.is_empty())
    }

    fn normal_form(&self, w: &Word) -> Option<NormalForm> {
        Some(NormalForm::Word(w.clone()))
    }

    fn describe(&self) -> String {
        format!("free group of rank {}", self.rank)
    }
}

struct DehnBackend {
    presentation: Arc<Presentation>,
    /// Integer functionals vanishing on every relator's exponent-sum vector.
    functionals: Vec<Vec<i64>>,
}

impl WordProblem for DehnBackend {
    fn rank(&self) -> usize {
        self.presentation.rank()
    }

    fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.presentation.dehn_trivial(w)
    }

    fn class_key(&self, w: &Word) -> Option<Vec<i64>> {
        let sums = exponent_sums(w);
        Some(
            self.functionals
                .iter()
                .map(|f| f.iter().zip(&sums).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    fn describe(&self) -> String {
        format!(
            "small-cancellation presentation, rank {}, {} relators",
            self.presentation.rank(),
            self.presentation.base_relators().len()
        )
    }
}

struct TableBackend {
    group: Arc<FiniteGroup>,
    assignment: Vec<usize>,
}

impl TableBackend {
    fn eval(&self, w: &Word) -> usize {
        self.group
            .evaluate_word(w, &self.assignment)
            .expect("rank and assignment checked at construction")
    }
}

impl WordProblem for TableBackend {
    fn rank(&self) -> usize {
        self.assignment.len()
    }

    fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.eval(w) == self.group.identity())
    }

    fn normal_form(&self, w: &Word) -> Option<NormalForm> {
        Some(NormalForm::Element(self.eval(w)))
    }

    fn describe(&self) -> String {
        format!(
            "finite group of order {}, letters -> ({})",
            self.group.order(),
            self.group.tuple_names(&self.assignment)
        )
    }
}

fn exponent_sums(w: &Word) -> Vec<i64> {
    let mut sums = vec![0; w.rank()];
    for l in w.letters() {
        sums[l.index()] += l.sign();
    }
    sums
}

/// Integer basis of `{f : M f = 0}` for the rows of `m` (each of length `k`).
fn integer_kernel(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    type Q = Ratio<i128>;
    let mut rows: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..k {
        let Some(p) = (next..rows.len()).find(|&i| rows[i][col] != Q::from_integer(0)) else {
            continue;
        };
        rows.swap(next, p);
        let lead = rows[next][col];
        for x in rows[next].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows.len() {
            if i != next && rows[i][col] != Q::from_integer(0) {
                let factor = rows[i][col];
                let pivot_row = rows[next].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= factor * y;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::from_integer(0); k];
            v[free] = Q::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free];
            }
            let denom = v.iter().fold(1i128, |acc, q| num_integer::lcm(acc, *q.denom()));
            v.iter().map(|q| (q * denom).to_integer() as i64).collect()
        })
        .collect()
}

impl GroupOracle {
    /// Free group: triviality is emptiness of the reduced word.
    pub fn free(rank: usize) -> Result<GroupOracle> {
        Word::free_basis(rank)?;
        Ok(GroupOracle {
            backend: Arc::new(FreeBackend { rank }),
        })
    }

    /// Dehn's algorithm; the presentation must be verified at λ ≤ 1/6.
    pub fn small_cancellation(presentation: Arc<Presentation>) -> Result<GroupOracle> {
        presentation.require_dehn()?;
        let rows: Vec<Vec<i64>> = presentation.base_relators().iter().map(exponent_sums).collect();
        let functionals = integer_kernel(&rows, presentation.rank());
        Ok(GroupOracle {
            backend: Arc::new(DehnBackend {
                presentation,
                functionals,
            }),
        })
    }

    /// Letter `i` maps to `assignment[i]`.
    pub fn finite_table(group: Arc<FiniteGroup>, assignment: Vec<usize>) -> Result<GroupOracle> {
        if assignment.is_empty() {
            return Err(Error::InvalidArgument("empty letter assignment".into()));
        }
        if let Some(&x) = assignment.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidArgument(format!("element {x} out of range")));
        }
        Ok(GroupOracle {
            backend: Arc::new(TableBackend { group, assignment }),
        })
    }

    pub fn custom(backend: Arc<dyn WordProblem>) -> GroupOracle {
        GroupOracle { backend }
    }

    pub fn rank(&self) -> usize {
        self.backend.rank()
    }

    pub fn describe(&self) -> String {
        self.backend.describe()
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: w.rank(),
            });
        }
        Ok(())
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.check(w)?;
        self.backend.is_trivial(w)
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(true);
        }
        self.backend.is_trivial(&u.concat(&v.inverse())?)
    }

    pub fn normal_form(&self, w: &Word) -> Result<Option<NormalForm>> {
        self.check(w)?;
        Ok(self.backend.normal_form(w))
    }

    pub fn class_key(&self, w: &Word) -> Result<Option<Vec<i64>>> {
        self.check(w)?;
        Ok(self.backend.class_key(w))
    }
}
