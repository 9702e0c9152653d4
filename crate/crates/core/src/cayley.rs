//! Balls in Cayley graphs, inner boundaries, Cheeger upper bounds and graph
//! export.
//!
//! Vertices are numbered in BFS order following (parent, generator, sign),
//! so a ball is a deterministic function of the oracle, generating set and
//! radius. A candidate neighbour is identified against existing vertices by
//! exact word first, then by the oracle's normal form if it has one, and only
//! then by equality queries restricted to the adjacent layers (and to the
//! oracle's class key, when offered).

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freewords::Word;
use crate::groupcert::GeneratingSet;
use crate::oracle::{GroupOracle, NormalForm};

pub(crate) fn serialize_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn serialize_ratios<S: Serializer>(rs: &[Ratio<u64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(Ratio::to_string))
}

/// `source · z_generator^{±1} = target`; `generator` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: usize,
    pub generator: usize,
    pub positive: bool,
    pub target: usize,
}

impl Edge {
    /// `g1+`, `g2-`, ...
    pub fn label(&self) -> String {
        format!("g{}{}", self.generator + 1, if self.positive { '+' } else { '-' })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CayleyBall {
    radius: usize,
    vertices: Vec<Word>,
    layer: Vec<usize>,
    edges: Vec<Edge>,
    generating_set: GeneratingSet,
    #[serde(skip)]
    out: Vec<std::ops::Range<usize>>,
}

enum Lookup {
    Word(HashMap<Word, usize>),
    Normal(HashMap<NormalForm, usize>, HashMap<Word, usize>),
}

impl CayleyBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn representative(&self, v: usize) -> &Word {
        &self.vertices[v]
    }

    pub fn layer(&self, v: usize) -> usize {
        self.layer[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.generating_set
    }

    /// Edges leaving `v`; complete (2k of them) when `v` is inside radius `r - 1`.
    pub fn out_edges(&self, v: usize) -> &[Edge] {
        self.out.get(v).map_or(&[], |r| &self.edges[r.clone()])
    }

    /// Vertices at distance exactly `s`.
    pub fn sphere(&self, s: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.layer[v] == s).collect()
    }

    /// Vertices at distance at most `s`.
    pub fn sub_ball(&self, s: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.layer[v] <= s).collect()
    }

    /// Checks `rep(source) · z^{±1} = rep(target)` with the oracle for every
    /// `stride`-th edge.
    pub fn audit_edges(&self, oracle: &GroupOracle, stride: usize) -> Result<bool> {
        let stride = stride.max(1);
        for e in self.edges.iter().step_by(stride) {
            let z = &self.generating_set.words()[e.generator];
            let step = if e.positive { z.clone() } else { z.inverse() };
            let cand = self.vertices[e.source].concat(&step)?;
            if !oracle.are_equal(&cand, &self.vertices[e.target])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// BFS ball of radius `radius` around the identity; at most `budget` vertices.
pub fn build_ball(oracle: &GroupOracle, gens: &GeneratingSet, radius: usize, budget: usize) -> Result<CayleyBall> {
    if gens.ambient_rank() != oracle.rank() {
        return Err(Error::RankMismatch {
            left: oracle.rank(),
            right: gens.ambient_rank(),
        });
    }
    let rank = oracle.rank();
    let steps: Vec<(usize, bool, Word)> = gens
        .words()
        .iter()
        .enumerate()
        .flat_map(|(g, z)| [(g, true, z.clone()), (g, false, z.inverse())])
        .collect();

    let identity = Word::empty(rank);
    let mut vertices = vec![identity.clone()];
    let mut layer = vec![0usize];
    let mut layer_start = vec![0usize, 1];
    let mut edges = Vec::new();
    let mut out = Vec::new();

    let mut lookup = match oracle.normal_form(&identity)? {
        Some(nf) => Lookup::Normal(HashMap::from([(nf, 0)]), HashMap::from([(identity.clone(), 0)])),
        None => Lookup::Word(HashMap::from([(identity.clone(), 0)])),
    };
    // (layer, class key) -> vertices, for the equality tier
    let mut buckets: HashMap<(usize, Option<Vec<i64>>), Vec<usize>> = HashMap::new();
    buckets.insert((0, oracle.class_key(&identity)?), vec![0]);

    for l in 0..radius {
        let (start, end) = (layer_start[l], layer_start[l + 1]);
        for v in start..end {
            let first_edge = edges.len();
            for (g, positive, step) in &steps {
                let cand = vertices[v].concat(step)?;
                let found = match &mut lookup {
                    Lookup::Normal(by_nf, by_word) => match by_word.get(&cand) {
                        Some(&t) => Some(t),
                        None => {
                            let nf = oracle.normal_form(&cand)?.expect("normal form offered for identity");
                            by_nf.get(&nf).copied()
                        }
                    },
                    Lookup::Word(by_word) => match by_word.get(&cand) {
                        Some(&t) => Some(t),
                        None => {
                            let key = oracle.class_key(&cand)?;
                            let lo = l.saturating_sub(1);
                            let mut pool = Vec::new();
                            for ll in lo..=l + 1 {
                                if let Some(b) = buckets.get(&(ll, key.clone())) {
                                    pool.extend_from_slice(b);
                                }
                            }
                            pool.sort_unstable();
                            find_equal(oracle, &cand, &pool, &vertices)?
                        }
                    },
                };
                let target = match found {
                    Some(t) => t,
                    None => {
                        if vertices.len() >= budget {
                            return Err(Error::BudgetExceeded(format!(
                                "ball of radius {radius} has more than {budget} vertices"
                            )));
                        }
                        let t = vertices.len();
                        match &mut lookup {
                            Lookup::Normal(by_nf, by_word) => {
                                by_nf.insert(oracle.normal_form(&cand)?.expect("normal form"), t);
                                by_word.insert(cand.clone(), t);
                            }
                            Lookup::Word(by_word) => {
                                buckets.entry((l + 1, oracle.class_key(&cand)?)).or_default().push(t);
                                by_word.insert(cand.clone(), t);
                            }
                        }
                        vertices.push(cand.clone());
                        layer.push(l + 1);
                        t
                    }
                };
                if let Lookup::Word(by_word) = &mut lookup {
                    by_word.entry(cand).or_insert(target);
                }
                edges.push(Edge {
                    source: v,
                    generator: *g,
                    positive: *positive,
                    target,
                });
            }
            out.push(first_edge..edges.len());
        }
        layer_start.push(vertices.len());
    }
    Ok(CayleyBall {
        radius,
        vertices,
        layer,
        edges,
        generating_set: gens.clone(),
        out,
    })
}

fn find_equal(oracle: &GroupOracle, cand: &Word, pool: &[usize], vertices: &[Word]) -> Result<Option<usize>> {
    let test = |&v: &usize| -> Result<Option<usize>> { Ok(oracle.are_equal(cand, &vertices[v])?.then_some(v)) };
    let hit = if pool.len() > 64 {
        pool.par_iter().map(test).find_first(|r| !matches!(r, Ok(None)))
    } else {
        pool.iter().map(test).find(|r| !matches!(r, Ok(None)))
    };
    hit.unwrap_or(Ok(None))
}

/// A sorted, nonempty set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidArgument("vertex set is empty".into()));
        }
        Ok(VertexSet(set.into_iter().collect()))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// Members of `a` with a neighbour outside `a`. Refuses members on the outer
/// sphere, whose adjacency is incomplete.
pub fn inner_boundary(ball: &CayleyBall, a: &VertexSet) -> Result<Vec<usize>> {
    let mut boundary = Vec::new();
    for &v in a.members() {
        if v >= ball.vertex_count() {
            return Err(Error::InvalidArgument(format!("vertex {v} is not in the ball")));
        }
        if ball.layer(v) >= ball.radius() {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} lies on the outer sphere (layer {}), its neighbourhood is incomplete",
                ball.layer(v)
            )));
        }
        if ball.out_edges(v).iter().any(|e| !a.contains(e.target)) {
            boundary.push(v);
        }
    }
    Ok(boundary)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateFamily {
    /// Balls of radius `0..r-1`.
    SubBalls,
    /// Connected sets grown by attaching a uniformly random frontier vertex.
    RandomConnected { count: usize, size: usize, seed: u64 },
    Explicit(Vec<VertexSet>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheegerBound {
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Ratio<u64>,
    pub best_set_size: usize,
    pub best_index: usize,
    #[serde(skip)]
    pub best_set: VertexSet,
    #[serde(serialize_with = "serialize_ratios")]
    pub ratios: Vec<Ratio<u64>>,
}

fn random_connected(ball: &CayleyBall, size: usize, rng: &mut ChaCha8Rng) -> Result<VertexSet> {
    let inner: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| ball.layer(v) < ball.radius())
        .collect();
    let start = *inner
        .choose(rng)
        .ok_or_else(|| Error::InvalidArgument("ball of radius 0 has no interior".into()))?;
    let mut members = BTreeSet::from([start]);
    let mut frontier: Vec<usize> = Vec::new();
    let mut in_frontier = BTreeSet::new();
    let mut grow = |v: usize, members: &BTreeSet<usize>, frontier: &mut Vec<usize>| {
        for e in ball.out_edges(v) {
            let t = e.target;
            if ball.layer(t) < ball.radius() && !members.contains(&t) && in_frontier.insert(t) {
                frontier.push(t);
            }
        }
    };
    grow(start, &members, &mut frontier);
    while members.len() < size && !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        members.insert(v);
        grow(v, &members, &mut frontier);
    }
    VertexSet::new(members)
}

/// Minimum of `|∂A| / |A|` over the candidate family; the first minimiser wins.
pub fn cheeger_upper_bound(ball: &CayleyBall, family: &CandidateFamily) -> Result<CheegerBound> {
    let candidates: Vec<VertexSet> = match family {
        CandidateFamily::SubBalls => (0..ball.radius())
            .map(|s| VertexSet::new(ball.sub_ball(s)))
            .collect::<Result<_>>()?,
        CandidateFamily::RandomConnected { count, size, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| random_connected(ball, *size, &mut rng))
                .collect::<Result<_>>()?
        }
        CandidateFamily::Explicit(sets) => sets.clone(),
    };
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("empty candidate family".into()));
    }
    let ratios = candidates
        .iter()
        .map(|a| Ok(Ratio::new(inner_boundary(ball, a)?.len() as u64, a.len() as u64)))
        .collect::<Result<Vec<_>>>()?;
    let (best_index, ratio) = ratios
        .iter()
        .enumerate()
        .fold((0, ratios[0]), |(bi, br), (i, &r)| if r < br { (i, r) } else { (bi, br) });
    Ok(CheegerBound {
        ratio,
        best_set_size: candidates[best_index].len(),
        best_index,
        best_set: candidates[best_index].clone(),
        ratios,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Adjacency,
    Dot,
}

/// Adjacency text: `vertices:`, `root:` and `target:` (the outer sphere)
/// headers, then one `u gI± v` line per edge.
pub fn export_graph(ball: &CayleyBall, format: GraphFormat) -> String {
    let mut out = String::new();
    match format {
        GraphFormat::Adjacency => {
            let targets: Vec<String> = ball.sphere(ball.radius()).iter().map(usize::to_string).collect();
            let _ = writeln!(out, "vertices: {}", ball.vertex_count());
            let _ = writeln!(out, "root: 0");
            let _ = writeln!(out, "target: {}", targets.join(" "));
            for e in ball.edges() {
                let _ = writeln!(out, "{} {} {}", e.source, e.label(), e.target);
            }
        }
        GraphFormat::Dot => {
            let _ = writeln!(out, "digraph cayley {{");
            for (v, w) in ball.vertices().iter().enumerate() {
                let _ = writeln!(out, "  {v} [label=\"{w}\", layer={}];", ball.layer(v));
            }
            for e in ball.edges() {
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.source, e.target, e.label());
            }
            out.push_str("}\n");
        }
    }
    out
}

/// An edge from an adjacency file; `generator` is present for labelled lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyEdge {
    pub source: usize,
    pub target: usize,
    pub generator: Option<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub vertex_count: usize,
    pub root: usize,
    pub targets: Vec<usize>,
    pub edges: Vec<AdjacencyEdge>,
}

/// Reads the adjacency format. Edge lines are `u gI± v` or plain `u v`.
pub fn parse_adjacency(text: &str) -> Result<AdjacencyGraph> {
    let mut vertex_count = None;
    let mut root = 0;
    let mut targets = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| Error::InvalidGraph(format!("line {}: {why}: {line:?}", lineno + 1));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad("expected a vertex index"));
        if let Some(v) = line.strip_prefix("vertices:") {
            vertex_count = Some(num(v.trim())?);
        } else if let Some(v) = line.strip_prefix("root:") {
            root = num(v.trim())?;
        } else if let Some(v) = line.strip_prefix("target:") {
            targets = Some(v.split_whitespace().map(num).collect::<Result<Vec<_>>>()?);
        } else {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let edge = match parts.as_slice() {
                [u, v] => AdjacencyEdge {
                    source: num(u)?,
                    target: num(v)?,
                    generator: None,
                },
                [u, label, v] => {
                    let (g, positive) = label
                        .strip_prefix('g')
                        .and_then(|l| {
                            let sign = l.chars().last()?;
                            let idx: usize = l[..l.len() - 1].parse().ok()?;
                            (idx >= 1 && (sign == '+' || sign == '-')).then(|| (idx - 1, sign == '+'))
                        })
                        .ok_or_else(|| bad("bad generator label"))?;
                    AdjacencyEdge {
                        source: num(u)?,
                        target: num(v)?,
                        generator: Some((g, positive)),
                    }
                }
                _ => return Err(bad("expected `u v` or `u gI± v`")),
            };
            edges.push(edge);
        }
    }
    let max_seen = edges
        .iter()
        .flat_map(|e| [e.source, e.target])
        .chain(std::iter::once(root))
        .max()
        .unwrap_or(0);
    let vertex_count = vertex_count.unwrap_or(max_seen + 1);
    let targets = targets.ok_or_else(|| Error::InvalidGraph("missing `target:` line".into()))?;
    if max_seen >= vertex_count || targets.iter().any(|&t| t >= vertex_count) {
        return Err(Error::InvalidGraph(format!("vertex index out of range 0..{vertex_count}")));
    }
    Ok(AdjacencyGraph {
        vertex_count,
        root,
        targets,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegrp::FiniteGroup;
    use crate::smallcancel::{default_coefficients, make_family, one_sixth, Presentation};
    use std::sync::Arc;

    fn tree_ball(k: usize, r: usize) -> CayleyBall {
        let o = GroupOracle::free(k).unwrap();
        build_ball(&o, &GeneratingSet::standard(k).unwrap(), r, 1 << 22).unwrap()
    }

    fn tree_count(k: u64, r: u32) -> u64 {
        1 + (1..=r).map(|i| 2 * k * (2 * k - 1).pow(i - 1)).sum::<u64>()
    }

    #[test]
    fn tree_counts() {
        assert_eq!(tree_ball(2, 2).vertex_count(), 17);
        for k in 1..=3 {
            for r in 0..=6 {
                assert_eq!(tree_ball(k, r).vertex_count() as u64, tree_count(k as u64, r as u32), "k={k} r={r}");
            }
        }
        assert_eq!(tree_ball(2, 6).vertex_count(), 1457);
    }

    #[test]
    fn duplicate_generators_collapse() {
        let o = GroupOracle::free(2).unwrap();
        let a = Word::parse("a", 2).unwrap();
        let gens = GeneratingSet::new(vec![a.clone(), a], "dup").unwrap();
        let ball = build_ball(&o, &gens, 1, 100).unwrap();
        assert_eq!(ball.vertex_count(), 3);
        assert_eq!(ball.edges().len(), 4);
    }

    #[test]
    fn ball_invariants() {
        // S3 with a transposition and a 3-cycle: the whole group appears
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let t = s3.index_of("(1 2)").unwrap();
        let c = s3.index_of("(1 2 3)").unwrap();
        let o = GroupOracle::finite_table(s3, vec![t, c]).unwrap();
        let ball = build_ball(&o, &GeneratingSet::standard(2).unwrap(), 4, 100).unwrap();
        assert_eq!(ball.vertex_count(), 6);
        check_invariants(&o, &ball);

        let o = GroupOracle::free(2).unwrap();
        check_invariants(&o, &tree_ball(2, 4));
    }

    fn check_invariants(o: &GroupOracle, ball: &CayleyBall) {
        assert!(ball.audit_edges(o, 1).unwrap());
        for u in 0..ball.vertex_count() {
            for v in u + 1..ball.vertex_count() {
                assert!(!o.are_equal(ball.representative(u), ball.representative(v)).unwrap());
            }
            if ball.layer(u) > 0 {
                assert!(ball
                    .edges()
                    .iter()
                    .any(|e| e.target == u && ball.layer(e.source) + 1 == ball.layer(u)));
            }
            if ball.layer(u) < ball.radius() {
                assert_eq!(ball.out_edges(u).len(), 2 * ball.generating_set().len());
            }
        }
        // each edge has its reverse, unless the reverse starts on the outer sphere
        for e in ball.edges() {
            if ball.layer(e.target) < ball.radius() {
                assert!(ball
                    .out_edges(e.target)
                    .iter()
                    .any(|f| f.target == e.source && f.generator == e.generator));
            }
        }
    }

    #[test]
    fn family_ball_is_a_tree_ball() {
        let rels = make_family(&[1, 2, 3], &default_coefficients()).unwrap();
        let p = Presentation::new(2, rels).unwrap().verified(one_sixth()).unwrap();
        let o = GroupOracle::small_cancellation(Arc::new(p)).unwrap();
        let gens = crate::groupcert::xn_generating_set(2, 6).unwrap();
        let ball = build_ball(&o, &gens, 3, 10_000).unwrap();
        assert_eq!(ball.vertex_count() as u64, tree_count(2, 3));
        assert!(ball.audit_edges(&o, 20).unwrap());
    }

    #[test]
    fn quotient_ball_identifies_through_the_oracle() {
        let r = Word::parse("aaabaaBabABBB", 2).unwrap();
        let p = Presentation::new(2, vec![r]).unwrap().verified(one_sixth()).unwrap();
        let o = GroupOracle::small_cancellation(Arc::new(p)).unwrap();
        let ball = build_ball(&o, &GeneratingSet::standard(2).unwrap(), 7, 100_000).unwrap();
        // the relator closes a loop of length 13 inside radius 7
        assert!((ball.vertex_count() as u64) < tree_count(2, 7));
        check_invariants(&o, &ball);
    }

    #[test]
    fn budget_is_enforced() {
        let o = GroupOracle::free(2).unwrap();
        assert!(matches!(
            build_ball(&o, &GeneratingSet::standard(2).unwrap(), 3, 20),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn boundaries() {
        let ball = tree_ball(2, 4);
        let root = VertexSet::new([0]).unwrap();
        assert_eq!(inner_boundary(&ball, &root).unwrap(), vec![0]);
        for s in 0..4 {
            let a = VertexSet::new(ball.sub_ball(s)).unwrap();
            assert_eq!(inner_boundary(&ball, &a).unwrap(), ball.sphere(s));
        }
        let outer = VertexSet::new(ball.sphere(4)).unwrap();
        assert!(inner_boundary(&ball, &outer).is_err());
        // the full interior minus its boundary: the root is interior
        let interior = VertexSet::new(ball.sub_ball(3)).unwrap();
        assert!(!inner_boundary(&ball, &interior).unwrap().contains(&0));
    }

    #[test]
    fn tree_cheeger_ratios() {
        let ball = tree_ball(2, 6);
        let bound = cheeger_upper_bound(&ball, &CandidateFamily::SubBalls).unwrap();
        for s in 1..=5u32 {
            let expected = Ratio::new(4 * 3u64.pow(s - 1), 2 * 3u64.pow(s) - 1);
            assert_eq!(bound.ratios[s as usize], expected);
        }
        assert_eq!(bound.ratio, Ratio::new(324, 485));
        assert_eq!(bound.best_index, 5);

        let single = CandidateFamily::Explicit(vec![VertexSet::new([7]).unwrap()]);
        assert_eq!(cheeger_upper_bound(&ball, &single).unwrap().ratio, Ratio::from_integer(1));
        assert!(cheeger_upper_bound(&ball, &CandidateFamily::Explicit(vec![])).is_err());

        let six = tree_ball(3, 5);
        let r = cheeger_upper_bound(&six, &CandidateFamily::SubBalls).unwrap().ratio;
        let four_fifths = Ratio::new(4, 5);
        assert!(r > four_fifths && r - four_fifths < Ratio::new(1, 100));
    }

    #[test]
    fn random_family_is_seeded_and_antitone() {
        let ball = tree_ball(2, 5);
        let fam = CandidateFamily::RandomConnected { count: 20, size: 30, seed: 7 };
        let a = cheeger_upper_bound(&ball, &fam).unwrap();
        assert_eq!(a, cheeger_upper_bound(&ball, &fam).unwrap());
        assert!(a.best_set.len() <= 30);

        let mut sets: Vec<VertexSet> = Vec::new();
        let mut last = Ratio::from_integer(2);
        for s in 0..5 {
            sets.push(VertexSet::new(ball.sub_ball(s)).unwrap());
            sets.push(a.best_set.clone());
            let r = cheeger_upper_bound(&ball, &CandidateFamily::Explicit(sets.clone())).unwrap().ratio;
            assert!(r <= last);
            last = r;
        }
    }

    #[test]
    fn export_and_parse() {
        let ball = tree_ball(1, 1);
        let text = export_graph(&ball, GraphFormat::Adjacency);
        assert_eq!(text, "vertices: 3\nroot: 0\ntarget: 1 2\n0 g1+ 1\n0 g1- 2\n");
        let r0 = tree_ball(2, 0);
        assert_eq!(export_graph(&r0, GraphFormat::Adjacency), "vertices: 1\nroot: 0\ntarget: 0\n");

        let ball = tree_ball(2, 3);
        let g = parse_adjacency(&export_graph(&ball, GraphFormat::Adjacency)).unwrap();
        assert_eq!(g.vertex_count, ball.vertex_count());
        assert_eq!(g.edges.len(), ball.edges().len());
        assert_eq!(g.targets, ball.sphere(3));
        let dot = export_graph(&ball, GraphFormat::Dot);
        assert!(dot.starts_with("digraph cayley {") && dot.contains("0 -> 1 [label=\"g1+\"]"));

        assert!(parse_adjacency("root: 0\n0 1\n").is_err());
        assert!(parse_adjacency("vertices: 2\ntarget: 1\n0 g0+ 1\n").is_err());
        assert!(parse_adjacency("vertices: 2\ntarget: 5\n0 1\n").is_err());
        assert_eq!(parse_adjacency("target: 2\n0 1\n1 2\n").unwrap().vertex_count, 3);
    }
}
