//! Finite groups given by multiplication tables.
//!
//! Built-ins are constructed from first principles (quaternion units,
//! permutation composition, modular addition) and then pass through the same
//! table validation as user-supplied groups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freewords::Word;
use crate::groupcert::{girth_scan, GeneratingSet, ScanBudget};
use crate::oracle::GroupOracle;

/// Largest order accepted; associativity is checked exhaustively.
pub const MAX_ORDER: usize = 64;

/// Default cap on `order^k` tuples examined by the exhaustive verifiers.
pub const DEFAULT_TUPLE_BUDGET: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "tuple", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// A tuple, whether it generates, and the value of a word on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleReport {
    pub tuple: Vec<usize>,
    pub generates: bool,
    pub evaluation: usize,
}

impl FiniteGroup {
    /// Validates a table: identity acts trivially, rows and columns are
    /// permutations, associativity holds, inverses exist.
    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize, names: Option<Vec<String>>) -> Result<FiniteGroup> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidTable(format!("order {order} not in 1..={MAX_ORDER}")));
        }
        if identity >= order {
            return Err(Error::InvalidTable(format!("identity {identity} out of range")));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!("row {i} has {} entries", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::InvalidTable(format!("entry {bad} out of range in row {i}")));
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::InvalidTable(format!("{identity} is not an identity for {a}")));
            }
        }
        for i in 0..order {
            let row: BTreeSet<usize> = (0..order).map(|j| at(i, j)).collect();
            let col: BTreeSet<usize> = (0..order).map(|j| at(j, i)).collect();
            if row.len() != order || col.len() != order {
                return Err(Error::InvalidTable(format!("row/column {i} is not a permutation")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::InvalidTable(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(Error::InvalidTable(format!("{} names for order {order}", n.len())));
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
            names,
        })
    }

    /// The quaternion group, elements ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> FiniteGroup {
        // unit products: (sign, unit) for units 1, i, j, k
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let rows = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (neg, unit) = UNIT[x / 2][y / 2];
                        let negative = neg ^ (x % 2 == 1) ^ (y % 2 == 1);
                        2 * unit + usize::from(negative)
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .map(String::from)
            .to_vec();
        FiniteGroup::from_table(rows, 0, Some(names)).expect("quaternion table is a group")
    }

    /// The group generated by permutations of `0..degree`, elements sorted
    /// by image list. Products apply the left factor first.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
        let identity: Vec<usize> = (0..degree).collect();
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if sorted != identity {
                return Err(Error::InvalidArgument(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&x| q[x]).collect() };
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let next = compose(&p, g);
                if elements.len() > MAX_ORDER {
                    return Err(Error::InvalidTable("permutation group too large".into()));
                }
                if elements.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let position = |p: &Vec<usize>| elements.binary_search(p).expect("closed under products");
        let rows = elements
            .iter()
            .map(|p| elements.iter().map(|q| position(&compose(p, q))).collect())
            .collect();
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::from_table(rows, position(&identity), Some(names))
    }

    /// S3 as all permutations of three points.
    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
            .expect("S3 generators are permutations")
    }

    /// Dihedral group of order 8, symmetries of a square.
    pub fn dihedral8() -> FiniteGroup {
        FiniteGroup::permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
            .expect("D4 generators are permutations")
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
        }
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(rows, 0, None)
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
        let (m, n) = (g.order, h.order);
        let rows = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let names = (0..m * n)
            .map(|x| format!("({},{})", g.names[x / n], h.names[x % n]))
            .collect();
        FiniteGroup::from_table(rows, g.identity * n + h.identity, Some(names))
    }

    /// `Q8`, `S3`, `D4`, `Z5` / `Zn(5)`, `Z5xZ5` / `Zn×Zn(5)`.
    pub fn builtin(name: &str) -> Result<FiniteGroup> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::InvalidArgument(format!("unknown group {name:?}"));
        match compact.as_str() {
            "Q8" => return Ok(FiniteGroup::quaternion()),
            "S3" => return Ok(FiniteGroup::symmetric3()),
            "D4" | "D8" => return Ok(FiniteGroup::dihedral8()),
            _ => {}
        }
        let normalized = compact.replace('×', "x");
        let number = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        if let Some(n) = normalized.strip_prefix("Znxn(").or(normalized.strip_prefix("ZnxZn(")) {
            let n = number(n.strip_suffix(')').ok_or_else(unknown)?)?;
            let c = FiniteGroup::cyclic(n)?;
            return FiniteGroup::direct_product(&c, &c);
        }
        if let Some(n) = normalized.strip_prefix("Zn(") {
            return FiniteGroup::cyclic(number(n.strip_suffix(')').ok_or_else(unknown)?)?);
        }
        if let Some(rest) = normalized.strip_prefix('Z') {
            if let Some((a, b)) = rest.split_once("xZ") {
                let (a, b) = (number(a)?, number(b)?);
                return FiniteGroup::direct_product(&FiniteGroup::cyclic(a)?, &FiniteGroup::cyclic(b)?);
            }
            return FiniteGroup::cyclic(number(rest)?);
        }
        Err(unknown())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        match tuple.iter().find(|&&x| x >= self.order) {
            Some(&x) => Err(Error::InvalidArgument(format!("element {x} out of range"))),
            None => Ok(()),
        }
    }

    /// Left-to-right product of the letter images.
    pub fn evaluate_word(&self, w: &Word, tuple: &[usize]) -> Result<usize> {
        if w.rank() != tuple.len() {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: tuple.len(),
            });
        }
        self.check_tuple(tuple)?;
        Ok(w.letters().iter().fold(self.identity, |acc, l| {
            let x = tuple[l.index()];
            self.mul(acc, if l.is_positive() { x } else { self.inverses[x] })
        }))
    }

    /// Closure of the tuple under products (and inverses), sorted.
    pub fn subgroup_generated(&self, tuple: &[usize]) -> Result<Vec<usize>> {
        self.check_tuple(tuple)?;
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in tuple {
                for y in [self.mul(x, g), self.mul(x, self.inverses[g])] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok((0..self.order).filter(|&x| seen[x]).collect())
    }

    pub fn is_generating(&self, tuple: &[usize]) -> Result<bool> {
        Ok(self.subgroup_generated(tuple)?.len() == self.order)
    }

    pub fn tuple_report(&self, w: &Word, tuple: &[usize]) -> Result<TupleReport> {
        Ok(TupleReport {
            tuple: tuple.to_vec(),
            generates: self.is_generating(tuple)?,
            evaluation: self.evaluate_word(w, tuple)?,
        })
    }

    /// All `k`-tuples in lexicographic order of element indices.
    fn tuples(&self, k: usize, budget: u64) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
        let count = (self.order as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if count > budget {
            return Err(Error::BudgetExceeded(format!(
                "{}^{k} = {count} tuples exceeds budget {budget}",
                self.order
            )));
        }
        let order = self.order;
        Ok((0..count).map(move |mut c| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = (c % order as u64) as usize;
                c /= order as u64;
            }
            t
        }))
    }

    fn first_failure(&self, u: &Word, k: usize, budget: u64, generating_only: bool) -> Result<Verdict> {
        if u.rank() != k {
            return Err(Error::RankMismatch { left: u.rank(), right: k });
        }
        for t in self.tuples(k, budget)? {
            if generating_only && !self.is_generating(&t)? {
                continue;
            }
            if self.evaluate_word(u, &t)? != self.identity {
                return Ok(Verdict::Counterexample(t));
            }
        }
        Ok(Verdict::Holds)
    }

    /// Whether `u` vanishes on every generating `k`-tuple.
    pub fn verify_almost_identity(&self, u: &Word, k: usize, budget: u64) -> Result<Verdict> {
        self.first_failure(u, k, budget, true)
    }

    /// Whether `u` vanishes on every `k`-tuple.
    pub fn is_identity(&self, u: &Word, k: usize, budget: u64) -> Result<Verdict> {
        self.first_failure(u, k, budget, false)
    }

    /// Comma-separated element names.
    pub fn tuple_names(&self, tuple: &[usize]) -> String {
        tuple.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(",")
    }

    /// Group file format: `order: n`, `identity: i`, optional `names: ...`,
    /// then `n` rows of `n` indices. `#` starts a comment.
    pub fn parse(text: &str) -> Result<FiniteGroup> {
        let mut order = None;
        let mut identity = 0;
        let mut names = None;
        let mut rows = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::InvalidTable(format!("cannot parse line {line:?}"));
            if let Some(v) = line.strip_prefix("order:") {
                order = Some(v.trim().parse::<usize>().map_err(|_| bad())?);
            } else if let Some(v) = line.strip_prefix("identity:") {
                identity = v.trim().parse().map_err(|_| bad())?;
            } else if let Some(v) = line.strip_prefix("names:") {
                names = Some(v.split_whitespace().map(String::from).collect());
            } else {
                let row = line
                    .split_whitespace()
                    .map(|x| x.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
        }
        let order = order.ok_or_else(|| Error::InvalidTable("missing `order:` line".into()))?;
        if rows.len() != order {
            return Err(Error::InvalidTable(format!("expected {order} rows, found {}", rows.len())));
        }
        FiniteGroup::from_table(rows, identity, names)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order: {}\nidentity: {}\nnames: {}\n", self.order, self.identity, self.names.join(" "));
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
        let _ = write!(out, "({})", parts.join(" "));
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Girth of `Cayley(G, tuple)`: the shortest nontrivial cyclically reduced
/// word vanishing on the tuple. Scans up to `|G| + 1`, where `x_1^{|x_1|}`
/// already gives a relation.
pub fn finite_girth(group: &FiniteGroup, tuple: &[usize]) -> Result<Option<usize>> {
    if tuple.is_empty() || !group.is_generating(tuple)? {
        return Err(Error::InvalidArgument(format!(
            "({}) does not generate the group",
            group.tuple_names(tuple)
        )));
    }
    let k = tuple.len();
    let oracle = GroupOracle::finite_table(std::sync::Arc::new(group.clone()), tuple.to_vec())?;
    let gens = GeneratingSet::new(Word::free_basis(k)?, "tuple")?;
    let cert = girth_scan(&oracle, &gens, group.order() + 1, ScanBudget::default())?;
    Ok(cert.shortest_relation.map(|r| r.length))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn builtins_are_valid() {
        let z2 = FiniteGroup::builtin("Zn(2)").unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.mul(1, 1), z2.identity());

        let s3 = FiniteGroup::builtin("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!((0..6).filter(|&a| s3.element_order(a) == 2).count(), 3);

        let q8 = FiniteGroup::builtin("Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        let (i, j, k) = (q8.index_of("i").unwrap(), q8.index_of("j").unwrap(), q8.index_of("k").unwrap());
        let minus_one = q8.index_of("-1").unwrap();
        for u in [i, j, k] {
            assert_eq!(q8.mul(u, u), minus_one);
        }
        assert_eq!(q8.mul(q8.mul(i, j), k), minus_one);

        assert_eq!(FiniteGroup::builtin("Z5xZ5").unwrap().order(), 25);
        assert_eq!(FiniteGroup::builtin("Zn×Zn(3)").unwrap().order(), 9);
        assert_eq!(FiniteGroup::builtin("Z7").unwrap().order(), 7);
        assert_eq!(FiniteGroup::builtin("D4").unwrap().order(), 8);
        assert!(FiniteGroup::builtin("A5").is_err());
        assert!(FiniteGroup::builtin("Zn(0)").is_err());
    }

    #[test]
    fn s3_matches_permutation_composition() {
        let s3 = FiniteGroup::symmetric3();
        // names are cycle notation; (1 2)(2 3) applying left first is (1 3 2)
        let a = s3.index_of("(1 2)").unwrap();
        let b = s3.index_of("(2 3)").unwrap();
        assert_eq!(s3.name(s3.mul(a, b)), "(1 3 2)");
        assert_eq!(s3.name(s3.mul(b, a)), "(1 2 3)");
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0, None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], 1, None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1, 2], vec![1, 2]], 0, None).is_err());
        // a Latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5, 0, None), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn evaluate_examples() {
        let q8 = FiniteGroup::quaternion();
        let (i, j) = (q8.index_of("i").unwrap(), q8.index_of("j").unwrap());
        assert_eq!(q8.evaluate_word(&Word::empty(2), &[i, j]).unwrap(), q8.identity());
        assert_eq!(q8.name(q8.evaluate_word(&x("a^2"), &[i, j]).unwrap()), "-1");

        let s3 = FiniteGroup::symmetric3();
        let c = s3.index_of("(1 2 3)").unwrap();
        let c2 = s3.mul(c, c);
        assert_eq!(s3.evaluate_word(&x("abAB"), &[c, c2]).unwrap(), s3.identity());
        assert!(s3.evaluate_word(&x("a"), &[c]).is_err());
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let q8 = FiniteGroup::quaternion();
        let words = ["ab", "aBa", "b^3A", "abAB", "a^2b^2"].map(x);
        for u in &words {
            for v in &words {
                for t in q8.tuples(2, 64).unwrap() {
                    let uv = q8.evaluate_word(&u.concat(v).unwrap(), &t).unwrap();
                    let split = q8.mul(q8.evaluate_word(u, &t).unwrap(), q8.evaluate_word(v, &t).unwrap());
                    assert_eq!(uv, split);
                }
            }
        }
    }

    #[test]
    fn subgroups() {
        let q8 = FiniteGroup::quaternion();
        let (i, j) = (q8.index_of("i").unwrap(), q8.index_of("j").unwrap());
        assert!(q8.is_generating(&[i, j]).unwrap());
        let s3 = FiniteGroup::symmetric3();
        let c = s3.index_of("(1 2 3)").unwrap();
        assert_eq!(s3.subgroup_generated(&[c]).unwrap().len(), 3);
        assert!(!s3.is_generating(&[c]).unwrap());
        assert_eq!(s3.subgroup_generated(&[s3.identity()]).unwrap(), vec![s3.identity()]);
    }

    #[test]
    fn almost_identities() {
        let q8 = FiniteGroup::quaternion();
        let u = x("a^2b^2");
        assert_eq!(q8.verify_almost_identity(&u, 2, DEFAULT_TUPLE_BUDGET).unwrap(), Verdict::Holds);
        let (one, i, j) = (q8.identity(), q8.index_of("i").unwrap(), q8.index_of("j").unwrap());
        assert_eq!(q8.is_identity(&u, 2, DEFAULT_TUPLE_BUDGET).unwrap(), Verdict::Counterexample(vec![one, i]));
        assert_ne!(q8.evaluate_word(&u, &[i, one]).unwrap(), one);

        assert_eq!(
            q8.verify_almost_identity(&x("a^2"), 2, DEFAULT_TUPLE_BUDGET).unwrap(),
            Verdict::Counterexample(vec![i, j])
        );

        let s3 = FiniteGroup::symmetric3();
        let v = x("a^2ba^2B");
        assert!(s3.verify_almost_identity(&v, 2, DEFAULT_TUPLE_BUDGET).unwrap().holds());
        match s3.is_identity(&v, 2, DEFAULT_TUPLE_BUDGET).unwrap() {
            Verdict::Counterexample(t) => assert!(!s3.is_generating(&t).unwrap()),
            Verdict::Holds => panic!("not an identity of S3"),
        }
        assert!(q8.is_identity(&Word::empty(2), 2, DEFAULT_TUPLE_BUDGET).unwrap().holds());
        assert!(matches!(
            q8.is_identity(&Word::empty(5), 5, DEFAULT_TUPLE_BUDGET),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn girths() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(finite_girth(&z2, &[1]).unwrap(), Some(2));

        let s3 = FiniteGroup::symmetric3();
        let t = s3.index_of("(1 2)").unwrap();
        let c = s3.index_of("(1 2 3)").unwrap();
        // t^2 = 1 is shortest: nothing of length 1 vanishes
        assert_eq!(finite_girth(&s3, &[t, c]).unwrap(), Some(2));
        assert!(finite_girth(&s3, &[c]).is_err());

        let q8 = FiniteGroup::quaternion();
        for a in 0..8 {
            for b in 0..8 {
                if q8.is_generating(&[a, b]).unwrap() {
                    assert!(finite_girth(&q8, &[a, b]).unwrap().unwrap() <= 4);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let q8 = FiniteGroup::quaternion();
        assert_eq!(FiniteGroup::parse(&q8.to_text()).unwrap(), q8);
        let z3 = "order: 3\nidentity: 0\n0 1 2\n1 2 0\n2 0 1\n";
        assert_eq!(FiniteGroup::parse(z3).unwrap().order(), 3);
        assert!(FiniteGroup::parse("order: 2\n0 1\n").is_err());
    }
}
