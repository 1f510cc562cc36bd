//! Triple systems: the core data model.
//!
//! Vertices are dense 0-based indices below `n`.  A [`TripleSystem`] is an
//! immutable, duplicate-free, sorted collection of [`Triple`]s together with a
//! pair-degree index; every operation is a pure function and "mutation" means
//! building a new system.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An edge of a triple system: three distinct vertices in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == b || a == c || b == c {
            return Err(Error::BadTriple(vec![a, b, c]));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Triple(v))
    }

    pub fn from_slice(s: &[usize]) -> Result<Self> {
        if s.len() != 3 {
            return Err(Error::BadTriple(s.to_vec()));
        }
        Triple::new(s[0], s[1], s[2])
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn contains_pair(&self, x: usize, y: usize) -> bool {
        self.contains(x) && self.contains(y)
    }

    /// The three 2-subsets, in lexicographic order.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    /// The vertex left after removing the pair `{x, y}`.
    pub fn third(&self, x: usize, y: usize) -> Option<usize> {
        if !self.contains_pair(x, y) {
            return None;
        }
        self.0.iter().copied().find(|&v| v != x && v != y)
    }

    /// Bitmask of the vertex set (vertices must be < 128).
    pub fn mask(&self) -> u128 {
        (1u128 << self.0[0]) | (1u128 << self.0[1]) | (1u128 << self.0[2])
    }

    pub fn map(&self, perm: &[usize]) -> Result<Triple> {
        Triple::new(perm[self.0[0]], perm[self.0[1]], perm[self.0[2]])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// Index from unordered vertex pairs to the triples containing them.
///
/// The total list length is `3 * |triples|`; the degree of a pair is the
/// length of its list.
#[derive(Debug, Clone, Default)]
pub struct PairDegreeIndex {
    map: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PairDegreeIndex {
    fn build(triples: &[Triple]) -> Self {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in triples.iter().enumerate() {
            for p in t.pairs() {
                map.entry(p).or_default().push(i);
            }
        }
        PairDegreeIndex { map }
    }

    pub fn degree(&self, x: usize, y: usize) -> usize {
        self.triples_with(x, y).len()
    }

    /// Indices of the triples containing the pair `{x, y}`.
    pub fn triples_with(&self, x: usize, y: usize) -> &[usize] {
        let key = if x < y { (x, y) } else { (y, x) };
        self.map.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<usize>)> {
        self.map.iter()
    }
}

/// A 3-uniform hypergraph on vertex set `{0, .., n-1}`.
///
/// Triples are stored sorted and deduplicated, so iteration order is
/// deterministic and two equal systems compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    n: usize,
    triples: Vec<Triple>,
    pairs: PairDegreeIndex,
}

impl TripleSystem {
    /// Build a system from raw 3-sets. Rejects out-of-range vertices and
    /// malformed entries; duplicate triples collapse to one.
    pub fn build<I, S>(n: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut triples = Vec::new();
        for s in sets {
            let t = Triple::from_slice(s.as_ref())?;
            for v in t.vertices() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            triples.push(t);
        }
        Ok(Self::from_triples(n, triples))
    }

    /// Build from already-validated triples (still sorts, dedups and checks range).
    pub fn from_triples(n: usize, mut triples: Vec<Triple>) -> Self {
        debug_assert!(triples.iter().all(|t| t.vertices()[2] < n));
        triples.sort_unstable();
        triples.dedup();
        let pairs = PairDegreeIndex::build(&triples);
        TripleSystem { n, triples, pairs }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_triples(n, Vec::new())
    }

    /// The complete 3-graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push(Triple([a, b, c]));
                }
            }
        }
        Self::from_triples(n, triples)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    pub fn pair_index(&self) -> &PairDegreeIndex {
        &self.pairs
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Number of triples containing the pair `{x, y}`.
    pub fn pair_degree(&self, x: usize, y: usize) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidParameter(format!(
                "pair degree needs two distinct vertices, got {x} twice"
            )));
        }
        Ok(self.pairs.degree(x, y))
    }

    /// Number of triples containing the vertex `x`.
    pub fn vertex_degree(&self, x: usize) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.triples.iter().filter(|t| t.contains(x)).count())
    }

    /// The pairs of `t` contained in no other triple of the system, in
    /// lexicographic order. `t` must be a triple of the system.
    pub fn own_pairs(&self, t: &Triple) -> Result<Vec<(usize, usize)>> {
        if !self.contains(t) {
            return Err(Error::TripleNotInSystem(t.vertices()));
        }
        Ok(t.pairs()
            .into_iter()
            .filter(|&(x, y)| self.pairs.degree(x, y) == 1)
            .collect())
    }

    /// The shadow: the graph of all pairs covered by some triple.
    pub fn shadow(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for t in &self.triples {
            for (x, y) in t.pairs() {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// The link of `x`: a graph on the same vertex range where `{y, z}` is an
    /// edge iff `xyz` is a triple. The vertex `x` itself is isolated in it.
    pub fn link(&self, x: usize) -> Result<Graph> {
        self.check_vertex(x)?;
        let mut g = Graph::empty(self.n);
        for t in &self.triples {
            if t.contains(x) {
                let rest: Vec<usize> = t.vertices().into_iter().filter(|&v| v != x).collect();
                g.add_edge(rest[0], rest[1]);
            }
        }
        Ok(g)
    }

    /// Relabel all vertices through a permutation of `{0, .., n-1}`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TripleSystem> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation length {} does not match n = {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let triples = self
            .triples
            .iter()
            .map(|t| t.map(perm))
            .collect::<Result<Vec<_>>>()?;
        Ok(TripleSystem::from_triples(self.n, triples))
    }

    /// The sub-system induced by the given triples, kept on the same vertex set.
    pub fn subsystem(&self, indices: &[usize]) -> TripleSystem {
        let triples = indices.iter().map(|&i| self.triples[i]).collect();
        TripleSystem::from_triples(self.n, triples)
    }

    /// Same triples on a densely relabeled support (used for pattern matching
    /// of small sub-systems).
    pub fn densify(&self) -> TripleSystem {
        let mut used: Vec<usize> = Vec::new();
        for t in &self.triples {
            for v in t.vertices() {
                if !used.contains(&v) {
                    used.push(v);
                }
            }
        }
        used.sort_unstable();
        let pos = |v: usize| used.binary_search(&v).unwrap();
        let triples = self
            .triples
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                Triple([pos(a), pos(b), pos(c)])
            })
            .collect();
        TripleSystem::from_triples(used.len(), triples)
    }

    /// Sorted multiset of vertex degrees.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for t in &self.triples {
            for v in t.vertices() {
                d[v] += 1;
            }
        }
        d.sort_unstable();
        d
    }

    /// Sorted multiset of nonzero pair degrees.
    pub fn pair_degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pairs.iter().map(|(_, l)| l.len()).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.triples.len())?;
        for t in &self.triples {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[[usize; 3]]) -> TripleSystem {
        TripleSystem::build(n, sets.iter().copied()).unwrap()
    }

    #[test]
    fn build_complete_k4() {
        let f = sys(4, &[[0, 1, 3], [0, 2, 3], [1, 2, 3], [0, 1, 2]]);
        assert_eq!(f.len(), 4);
        assert_eq!(f, TripleSystem::complete(4));
    }

    #[test]
    fn build_dedups() {
        let f = sys(3, &[[0, 1, 2], [2, 1, 0]]);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            TripleSystem::build(3, [[0, 1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(matches!(
            TripleSystem::build(4, [[0, 1, 1]]),
            Err(Error::BadTriple(_))
        ));
        assert!(matches!(
            TripleSystem::build(4, [vec![0, 1], vec![0, 1, 2]]),
            Err(Error::BadTriple(_))
        ));
    }

    #[test]
    fn pair_degree_basics() {
        let f = sys(3, &[[0, 1, 2]]);
        assert_eq!(f.pair_degree(0, 1).unwrap(), 1);
        // configuration C = {124,134,234} (1-based): pair {3,4} lies in two triples
        let c = sys(4, &[[0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(f.pair_degree(1, 0).unwrap(), 1);
        assert_eq!(c.pair_degree(2, 3).unwrap(), 2);
        assert!(c.pair_degree(0, 0).is_err());
        assert!(c.pair_degree(0, 9).is_err());
    }

    #[test]
    fn own_pairs_isolated_triple() {
        let f = sys(3, &[[0, 1, 2]]);
        let t = Triple::new(0, 1, 2).unwrap();
        assert_eq!(f.own_pairs(&t).unwrap(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn own_pairs_in_c() {
        // C = {124,134,234}: the triple 124 has exactly the own pair {1,2}
        let c = sys(4, &[[0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        let t = Triple::new(0, 1, 3).unwrap();
        assert_eq!(c.own_pairs(&t).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn own_pairs_cross_pairs_of_shared_pair() {
        // two triples sharing the pair {2,3}: the cross pairs are own
        let f = sys(4, &[[2, 3, 0], [2, 3, 1]]);
        let t = Triple::new(0, 2, 3).unwrap();
        assert_eq!(f.own_pairs(&t).unwrap(), vec![(0, 2), (0, 3)]);
        let missing = Triple::new(0, 1, 2).unwrap();
        assert!(f.own_pairs(&missing).is_err());
    }

    #[test]
    fn shadow_of_single_triple_is_triangle() {
        let f = sys(3, &[[0, 1, 2]]);
        let g = f.shadow();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
    }

    #[test]
    fn shadow_of_cluster_is_k4() {
        let f = TripleSystem::complete(4);
        assert_eq!(f.shadow().edge_count(), 6);
    }

    #[test]
    fn link_in_complete_k4_is_triangle() {
        let f = TripleSystem::complete(4);
        let l = f.link(0).unwrap();
        assert_eq!(l.edge_count(), 3);
        assert!(l.has_edge(1, 2) && l.has_edge(1, 3) && l.has_edge(2, 3));
        assert!(f.link(4).is_err());
    }

    #[test]
    fn link_of_d_center_is_path() {
        // D = {123,134,235} (1-based) => 0-based {012,023,124}; link of 2 is the path 3-0-1-4
        let d = sys(5, &[[0, 1, 2], [0, 2, 3], [1, 2, 4]]);
        let l = d.link(2).unwrap();
        assert_eq!(l.edge_count(), 3);
        assert!(l.has_edge(0, 3) && l.has_edge(0, 1) && l.has_edge(1, 4));
    }

    #[test]
    fn pair_degree_sum_is_three_m() {
        let f = sys(6, &[[0, 1, 3], [0, 2, 4], [1, 2, 5], [0, 1, 2]]);
        let total: usize = f.pair_index().iter().map(|(_, l)| l.len()).sum();
        assert_eq!(total, 3 * f.len());
    }
}
