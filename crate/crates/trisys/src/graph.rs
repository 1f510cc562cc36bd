//! Simple graphs and tournaments on dense vertex indices.
//!
//! Adjacency is kept as one `u128` row per vertex, which caps graphs at 128
//! vertices; everything in this crate operates well below that.

use num_integer::Integer;

use crate::error::{Error, Result};

pub const MAX_GRAPH_VERTICES: usize = 128;

/// A loopless simple graph on `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GRAPH_VERTICES, "graph too large: {n} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors_mask(&self, u: usize) -> u128 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut m = self.adj[u] >> (u + 1) << (u + 1);
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out.push((u, v));
                m &= m - 1;
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        for (u, v) in self.edges() {
            if self.adj[u] & self.adj[v] != 0 {
                return false;
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                let mut m = self.adj[u];
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut frontier = vec![s];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                let mut m = self.adj[u];
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if dist[v] == usize::MAX {
                        dist[v] = d;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Relabel vertices through a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Proper 2-coloring per component, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                let mut m = self.adj[u];
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            stack.push(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }
}

/// The balanced complete bipartite graph on `n` vertices, parts
/// `{0..floor(n/2)}` and the rest.
pub fn turan_bipartite(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    let a = n / 2;
    for u in 0..a {
        for v in a..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// The path-2 graph T(G): `{x, y}` is an edge iff some `z` has `xz, zy` in G.
pub fn path2_graph(g: &Graph) -> Graph {
    let n = g.n();
    let mut t = Graph::empty(n);
    for z in 0..n {
        let m = g.neighbors_mask(z);
        let mut mx = m;
        while mx != 0 {
            let x = mx.trailing_zeros() as usize;
            mx &= mx - 1;
            let mut my = mx;
            while my != 0 {
                let y = my.trailing_zeros() as usize;
                my &= my - 1;
                t.add_edge(x, y);
            }
        }
    }
    t
}

/// All pairs at graph distance greater than 2 (disconnected pairs included),
/// in lexicographic order.
pub fn remote_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        let dist = g.distances(u);
        for (v, &d) in dist.iter().enumerate().skip(u + 1) {
            if d > 2 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Shape of one connected component, as used by the equality analysis of the
/// path-2 edge bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ComponentShape {
    /// K_{d,d}, d >= 1
    Balanced(usize),
    /// K_{s,s+1}, s >= 0 (s = 0 is an isolated vertex)
    OffByOne(usize),
    /// K_{d,d} minus one edge, d >= 2
    BalancedMinusEdge(usize),
    Other,
}

fn component_shape(g: &Graph, comp: &[usize]) -> ComponentShape {
    if comp.len() == 1 {
        return ComponentShape::OffByOne(0);
    }
    // 2-color within the component
    let mut color = vec![None; g.n()];
    color[comp[0]] = Some(false);
    let mut stack = vec![comp[0]];
    while let Some(u) = stack.pop() {
        let cu = color[u].unwrap();
        let mut m = g.neighbors_mask(u);
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            match color[v] {
                None => {
                    color[v] = Some(!cu);
                    stack.push(v);
                }
                Some(cv) if cv == cu => return ComponentShape::Other,
                _ => {}
            }
        }
    }
    let a = comp.iter().filter(|&&v| color[v] == Some(false)).count();
    let b = comp.len() - a;
    let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    let (lo, hi) = (a.min(b), a.max(b));
    if edges == lo * hi {
        if lo == hi {
            ComponentShape::Balanced(lo)
        } else if hi == lo + 1 {
            ComponentShape::OffByOne(lo)
        } else {
            ComponentShape::Other
        }
    } else if lo == hi && lo >= 2 && edges == lo * hi - 1 {
        ComponentShape::BalancedMinusEdge(lo)
    } else {
        ComponentShape::Other
    }
}

/// Equality classes for `|E(T(G))| >= |E(G)| - floor(n/2)`.
///
/// `L1`/`L2` are the equality cases (even/odd `n`), `L3`/`L4` the two
/// one-below-equality cases for even `n`; everything else is `Strict`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityClass {
    L1,
    L2,
    L3,
    L4,
    Strict,
}

/// Deficit `|E(G)| - floor(n/2) - |E(T(G))|` (never positive) together with
/// the structural equality class of `G`.
pub fn classify_g13(g: &Graph) -> (i64, EqualityClass) {
    let n = g.n();
    let t = path2_graph(g);
    let deficit = g.edge_count() as i64 - (n / 2) as i64 - t.edge_count() as i64;

    let shapes: Vec<ComponentShape> = g
        .components()
        .iter()
        .map(|c| component_shape(g, c))
        .collect();
    let balanced = shapes
        .iter()
        .filter(|s| matches!(s, ComponentShape::Balanced(_)))
        .count();
    let off_by_one = shapes
        .iter()
        .filter(|s| matches!(s, ComponentShape::OffByOne(_)))
        .count();
    let minus_edge = shapes
        .iter()
        .filter(|s| matches!(s, ComponentShape::BalancedMinusEdge(_)))
        .count();
    let total = shapes.len();

    let class = if deficit == 0 && n % 2 == 0 && total > 0 && balanced == total {
        EqualityClass::L1
    } else if deficit == 0 && n % 2 == 1 && off_by_one == 1 && balanced == total - 1 {
        EqualityClass::L2
    } else if deficit == -1 && n % 2 == 0 && minus_edge == 1 && balanced == total - 1 {
        EqualityClass::L3
    } else if deficit == -1 && n % 2 == 0 && off_by_one == 2 && balanced == total - 2 {
        EqualityClass::L4
    } else {
        EqualityClass::Strict
    };
    (deficit, class)
}

/// Check `|E(T(G))| >= |E(G)| - l` for a maximal matching of size `l`;
/// returns whether the bound is tight. Errors if the matching is not a
/// maximal matching of `G`.
pub fn path2_matching_bound(g: &Graph, matching: &[(usize, usize)]) -> Result<bool> {
    let mut covered = 0u128;
    for &(u, v) in matching {
        if !g.has_edge(u, v) {
            return Err(Error::Precondition(format!(
                "matching edge ({u}, {v}) is not an edge of the graph"
            )));
        }
        let m = (1u128 << u) | (1u128 << v);
        if covered & m != 0 {
            return Err(Error::Precondition("matching edges overlap".into()));
        }
        covered |= m;
    }
    for (u, v) in g.edges() {
        if covered & (1 << u) == 0 && covered & (1 << v) == 0 {
            return Err(Error::Precondition(format!(
                "matching is not maximal: edge ({u}, {v}) is uncovered"
            )));
        }
    }
    let t = path2_graph(g);
    let lhs = t.edge_count() as i64;
    let rhs = g.edge_count() as i64 - matching.len() as i64;
    assert!(lhs >= rhs, "path-2 matching bound violated");
    Ok(lhs == rhs)
}

fn gcd_of_degrees(g: &Graph) -> usize {
    g.degrees().into_iter().fold(0usize, |acc, d| acc.gcd(&d))
}

/// Divisibility test for decomposing the complete graph `K_n` into copies of
/// `H`: `|E(H)|` divides `C(n,2)` and the degree gcd of `H` divides `n-1`.
pub fn decomposition_divisibility(h: &Graph, n: usize) -> Result<bool> {
    let eh = h.edge_count();
    if eh == 0 {
        return Err(Error::Precondition("H must have at least one edge".into()));
    }
    let total = n * (n.saturating_sub(1)) / 2;
    Ok(total % eh == 0 && (n.saturating_sub(1)) % gcd_of_degrees(h) == 0)
}

/// Divisibility test for decomposing a (dense) graph `G` into copies of `H`:
/// `|E(H)|` divides `|E(G)|` and the degree gcd of `H` divides that of `G`.
pub fn decomposition_divisibility_dense(h: &Graph, g: &Graph) -> Result<bool> {
    let eh = h.edge_count();
    if eh == 0 {
        return Err(Error::Precondition("H must have at least one edge".into()));
    }
    let gcd_g = gcd_of_degrees(g);
    Ok(g.edge_count() % eh == 0 && gcd_g % gcd_of_degrees(h) == 0)
}

/// A tournament: a complete orientation of `K_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    k: usize,
    beats: Vec<u128>,
}

impl Tournament {
    /// Build from an explicit arc list; every unordered pair must get exactly
    /// one direction.
    pub fn from_arcs(k: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        assert!(k <= MAX_GRAPH_VERTICES);
        let mut beats = vec![0u128; k];
        for &(u, v) in arcs {
            if u >= k {
                return Err(Error::VertexOutOfRange { vertex: u, n: k });
            }
            if v >= k {
                return Err(Error::VertexOutOfRange { vertex: v, n: k });
            }
            if u == v || beats[u] >> v & 1 == 1 || beats[v] >> u & 1 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "arc ({u}, {v}) repeats or reverses an existing arc"
                )));
            }
            beats[u] |= 1 << v;
        }
        let t = Tournament { k, beats };
        for u in 0..k {
            for v in u + 1..k {
                if !t.beats(u, v) && !t.beats(v, u) {
                    return Err(Error::InvalidParameter(format!(
                        "pair ({u}, {v}) is unoriented"
                    )));
                }
            }
        }
        Ok(t)
    }

    /// The transitive tournament: `i` beats `j` iff `i > j`, so vertex `i`
    /// has out-degree `i`.
    pub fn transitive(k: usize) -> Self {
        assert!(k <= MAX_GRAPH_VERTICES);
        let beats = (0..k).map(|i| (1u128 << i) - 1).collect();
        Tournament { k, beats }
    }

    /// Uniformly random orientation from the given RNG.
    pub fn random<R: rand::Rng>(k: usize, rng: &mut R) -> Self {
        assert!(k <= MAX_GRAPH_VERTICES);
        let mut beats = vec![0u128; k];
        for u in 0..k {
            for v in u + 1..k {
                if rng.gen::<bool>() {
                    beats[u] |= 1 << v;
                } else {
                    beats[v] |= 1 << u;
                }
            }
        }
        Tournament { k, beats }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.beats[u] >> v & 1 == 1
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.beats[u].count_ones() as usize
    }

    /// A tournament is transitive iff it has no directed 3-cycle.
    pub fn is_transitive(&self) -> bool {
        for u in 0..self.k {
            for v in 0..self.k {
                if u != v && self.beats(u, v) {
                    // anything v beats that also beats u closes a cycle
                    if self.beats[v] & self.beats_into_mask(u) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn beats_into_mask(&self, u: usize) -> u128 {
        let mut m = 0u128;
        for w in 0..self.k {
            if w != u && self.beats(w, u) {
                m |= 1 << w;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_edge_counts() {
        assert_eq!(turan_bipartite(5).edge_count(), 6);
        assert_eq!(turan_bipartite(4).edge_count(), 4);
        assert!(turan_bipartite(6).is_triangle_free());
    }

    #[test]
    fn path2_of_path3_is_single_edge() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let t = path2_graph(&g);
        assert_eq!(t.edge_count(), 1);
        assert!(t.has_edge(0, 2));
    }

    #[test]
    fn path2_of_k22_is_two_disjoint_edges() {
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let t = path2_graph(&g);
        assert_eq!(t.edge_count(), 2);
        assert!(t.has_edge(0, 1) && t.has_edge(2, 3));
    }

    #[test]
    fn path2_of_matching_is_empty() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(path2_graph(&g).edge_count(), 0);
    }

    #[test]
    fn remote_pairs_examples() {
        // C5 has diameter 2
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(remote_pairs(&c5).is_empty());
        // path on 4 vertices: only the endpoints are remote
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(remote_pairs(&p4), vec![(0, 3)]);
        assert!(remote_pairs(&turan_bipartite(6)).is_empty());
    }

    #[test]
    fn triangle_free_examples() {
        assert!(turan_bipartite(6).is_triangle_free());
        assert!(!Graph::complete(3).is_triangle_free());
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.is_triangle_free());
    }

    #[test]
    fn g13_k33_is_l1() {
        let (d, c) = classify_g13(&turan_bipartite(6));
        assert_eq!((d, c), (0, EqualityClass::L1));
    }

    #[test]
    fn g13_k23_is_l2() {
        let mut g = Graph::empty(5);
        for u in 0..2 {
            for v in 2..5 {
                g.add_edge(u, v);
            }
        }
        let (d, c) = classify_g13(&g);
        assert_eq!((d, c), (0, EqualityClass::L2));
    }

    #[test]
    fn g13_k22_minus_edge_is_l3() {
        let mut g = turan_bipartite(4);
        g.remove_edge(1, 3);
        let (d, c) = classify_g13(&g);
        assert_eq!((d, c), (-1, EqualityClass::L3));
    }

    #[test]
    fn matching_bound_cases() {
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(path2_matching_bound(&k22, &[(0, 2), (1, 3)]).unwrap());
        let k3 = Graph::complete(3);
        assert!(!path2_matching_bound(&k3, &[(0, 1)]).unwrap());
        // non-maximal matching is rejected
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path2_matching_bound(&p4, &[(1, 2)]).is_ok());
        assert!(path2_matching_bound(&p4, &[(0, 1)]).is_err());
    }

    #[test]
    fn divisibility_k4() {
        let k4 = Graph::complete(4);
        assert!(decomposition_divisibility(&k4, 13).unwrap());
        assert!(!decomposition_divisibility(&k4, 14).unwrap());
        for n in 0..1000 {
            let expected = n % 12 == 1 || n % 12 == 4;
            assert_eq!(decomposition_divisibility(&k4, n).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn divisibility_k3_steiner() {
        let k3 = Graph::complete(3);
        assert!(decomposition_divisibility(&k3, 7).unwrap());
        assert!(!decomposition_divisibility(&k3, 8).unwrap());
    }

    #[test]
    fn transitive_tournament_has_no_cycle() {
        assert!(Tournament::transitive(3).is_transitive());
        let cyclic = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cyclic.is_transitive());
    }

    #[test]
    fn tournament_rejects_incomplete_or_doubled() {
        assert!(Tournament::from_arcs(3, &[(0, 1), (1, 2)]).is_err());
        assert!(Tournament::from_arcs(2, &[(0, 1), (1, 0)]).is_err());
    }
}
