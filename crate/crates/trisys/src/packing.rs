//! Exact search for edge-disjoint K4 packings.
//!
//! Backtracking over the lexicographically smallest uncovered edge, trying
//! every K4 completion; when the host graph is complete the first block is
//! pinned to `{0,1,2,3}`, which is the standard symmetry break for pairwise
//! balanced designs.  A full packing partitions the edge set; exhausting the
//! tree proves nonexistence, which is reported distinctly from running out
//! of the node budget.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const FULL_PACKING_VERTEX_LIMIT: usize = 16;

struct Pack<'a> {
    g: &'a Graph,
    covered: Vec<u128>,
    blocks: Vec<[usize; 4]>,
    nodes: u64,
    limit: u64,
}

impl Pack<'_> {
    fn first_uncovered(&self) -> Option<(usize, usize)> {
        for u in 0..self.g.n() {
            // uncovered neighbors v with v > u
            let m = self.g.neighbors_mask(u) & !self.covered[u] & !((1u128 << (u + 1)) - 1);
            if m != 0 {
                return Some((u, m.trailing_zeros() as usize));
            }
        }
        None
    }

    fn pair_free(&self, a: usize, b: usize) -> bool {
        self.g.has_edge(a, b) && self.covered[a] >> b & 1 == 0
    }

    fn cover_block(&mut self, b: [usize; 4], on: bool) {
        for i in 0..4 {
            for j in i + 1..4 {
                let (x, y) = (b[i], b[j]);
                if on {
                    self.covered[x] |= 1 << y;
                    self.covered[y] |= 1 << x;
                } else {
                    self.covered[x] &= !(1 << y);
                    self.covered[y] &= !(1 << x);
                }
            }
        }
    }

    fn solve(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::NodeLimitExceeded(self.limit));
        }
        let (u, v) = match self.first_uncovered() {
            None => return Ok(true),
            Some(e) => e,
        };
        // candidates w < x completing {u, v} to a K4 with all six pairs uncovered
        let both = self.g.neighbors_mask(u) & self.g.neighbors_mask(v);
        let mut mw = both & !self.covered[u] & !self.covered[v];
        while mw != 0 {
            let w = mw.trailing_zeros() as usize;
            mw &= mw - 1;
            let mut mx = both & !self.covered[u] & !self.covered[v] & !((1u128 << (w + 1)) - 1);
            while mx != 0 {
                let x = mx.trailing_zeros() as usize;
                mx &= mx - 1;
                if !self.pair_free(w, x) {
                    continue;
                }
                let mut block = [u, v, w, x];
                block.sort_unstable();
                self.cover_block(block, true);
                self.blocks.push(block);
                if self.solve()? {
                    return Ok(true);
                }
                self.blocks.pop();
                self.cover_block(block, false);
            }
        }
        Ok(false)
    }
}

/// Find edge-disjoint K4 blocks in `g`.
///
/// With `require_full` the blocks must partition `E(g)` and the search is
/// exhaustive (up to [`FULL_PACKING_VERTEX_LIMIT`] vertices): failure means
/// proven nonexistence. Without it, a greedy maximal packing is returned.
/// `node_limit` bounds the backtracking tree.
pub fn find_k4_packing(
    g: &Graph,
    require_full: bool,
    node_limit: u64,
) -> Result<Vec<[usize; 4]>> {
    if require_full {
        if g.n() > FULL_PACKING_VERTEX_LIMIT {
            return Err(Error::LimitExceeded {
                n: g.n(),
                limit: FULL_PACKING_VERTEX_LIMIT,
            });
        }
        let k4 = Graph::complete(4);
        if !crate::graph::decomposition_divisibility_dense(&k4, g)? {
            return Err(Error::PackingInfeasible);
        }
    }
    let mut pack = Pack {
        g,
        covered: vec![0; g.n()],
        blocks: Vec::new(),
        nodes: 0,
        limit: node_limit,
    };
    // symmetry break: on a complete graph the first block may be fixed
    let complete = g.edge_count() == g.n() * (g.n().saturating_sub(1)) / 2;
    if complete && g.n() >= 4 && require_full {
        pack.cover_block([0, 1, 2, 3], true);
        pack.blocks.push([0, 1, 2, 3]);
    }
    if require_full {
        if pack.solve()? {
            Ok(pack.blocks)
        } else {
            Err(Error::PackingInfeasible)
        }
    } else {
        greedy(g)
    }
}

fn greedy(g: &Graph) -> Result<Vec<[usize; 4]>> {
    let mut pack = Pack {
        g,
        covered: vec![0; g.n()],
        blocks: Vec::new(),
        nodes: 0,
        limit: u64::MAX,
    };
    while let Some((u, v)) = pack.first_uncovered() {
        let both = g.neighbors_mask(u) & g.neighbors_mask(v);
        let mut found = false;
        let mut mw = both & !pack.covered[u] & !pack.covered[v];
        'outer: while mw != 0 {
            let w = mw.trailing_zeros() as usize;
            mw &= mw - 1;
            let mut mx = both & !pack.covered[u] & !pack.covered[v] & !((1u128 << (w + 1)) - 1);
            while mx != 0 {
                let x = mx.trailing_zeros() as usize;
                mx &= mx - 1;
                if pack.pair_free(w, x) {
                    let mut block = [u, v, w, x];
                    block.sort_unstable();
                    pack.cover_block(block, true);
                    pack.blocks.push(block);
                    found = true;
                    break 'outer;
                }
            }
        }
        if !found {
            // leave this edge uncovered permanently
            pack.covered[u] |= 1 << v;
            pack.covered[v] |= 1 << u;
        }
    }
    Ok(pack.blocks)
}

/// Check that blocks are K4 subgraphs with pairwise disjoint edge sets; with
/// `full`, that they cover every edge of `g`.
pub fn verify_packing(g: &Graph, blocks: &[[usize; 4]], full: bool) -> bool {
    let mut covered = vec![0u128; g.n()];
    for b in blocks {
        for i in 0..4 {
            for j in i + 1..4 {
                let (x, y) = (b[i], b[j]);
                if x == y || !g.has_edge(x, y) || covered[x] >> y & 1 == 1 {
                    return false;
                }
                covered[x] |= 1 << y;
                covered[y] |= 1 << x;
            }
        }
    }
    if full {
        let covered_count: usize =
            covered.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2;
        covered_count == g.edge_count()
    } else {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_packs_itself() {
        let blocks = find_k4_packing(&Graph::complete(4), true, 1_000).unwrap();
        assert_eq!(blocks, vec![[0, 1, 2, 3]]);
    }

    #[test]
    fn k6_full_packing_proven_infeasible() {
        assert_eq!(
            find_k4_packing(&Graph::complete(6), true, 1_000_000),
            Err(Error::PackingInfeasible)
        );
    }

    #[test]
    fn k13_has_a_full_packing() {
        let g = Graph::complete(13);
        let blocks = find_k4_packing(&g, true, 50_000_000).unwrap();
        assert_eq!(blocks.len(), 13);
        assert!(verify_packing(&g, &blocks, true));
    }

    #[test]
    fn greedy_packing_is_edge_disjoint() {
        let g = Graph::complete(9);
        let blocks = find_k4_packing(&g, false, u64::MAX).unwrap();
        assert!(verify_packing(&g, &blocks, false));
        assert!(!blocks.is_empty());
    }
}
