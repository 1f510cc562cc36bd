//! Exact canonical forms and isomorphism tests for small triple systems.
//!
//! The canonical form of a system is the lexicographically greatest value,
//! over all vertex relabelings, of a fixed-length serialization: vertices are
//! assigned new labels 0, 1, .. in turn, and placing label `k` appends one
//! presence bit for every pair `{i, j}` of earlier labels (is `{i, j, k}` a
//! triple?).  Chunk lengths depend only on the level, so prefixes of partial
//! assignments compare positionally and the maximum is found by depth-first
//! search that only branches on chunk-maximal candidates, compares against
//! the best-known full string, and prunes candidates equivalent under
//! automorphisms discovered from repeated maxima.  The search is exhaustive:
//! equal canonical strings hold if and only if the systems are isomorphic.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::system::TripleSystem;

/// Default vertex-count limit for canonical forms. Larger systems are
/// rejected rather than canonicalized heuristically.
pub const DEFAULT_CANON_LIMIT: usize = 12;

/// Hard cap: label bookkeeping uses 32-bit vertex masks.
const HARD_CAP: usize = 32;

struct Searcher {
    n: usize,
    members: HashSet<u32>,
    assigned: Vec<usize>,
    used: u32,
    current: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    gens: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PathCmp {
    EqualToBest,
    AboveBest,
}

impl Searcher {
    fn new(ts: &TripleSystem) -> Self {
        let members = ts
            .triples()
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                (1u32 << a) | (1u32 << b) | (1u32 << c)
            })
            .collect();
        Searcher {
            n: ts.n(),
            members,
            assigned: Vec::with_capacity(ts.n()),
            used: 0,
            current: Vec::new(),
            best: None,
            gens: Vec::new(),
        }
    }

    fn has_triple(&self, a: usize, b: usize, c: usize) -> bool {
        self.members
            .contains(&((1u32 << a) | (1u32 << b) | (1u32 << c)))
    }

    /// Presence bits contributed by giving `u` the next label, one per pair
    /// of already-assigned labels in lexicographic order.
    fn chunk_for(&self, u: usize) -> Vec<u8> {
        let k = self.assigned.len();
        let mut chunk = Vec::with_capacity(k * (k.saturating_sub(1)) / 2);
        for i in 0..k {
            for j in i + 1..k {
                chunk.push(self.has_triple(self.assigned[i], self.assigned[j], u) as u8);
            }
        }
        chunk
    }

    fn record_leaf(&mut self, cmp: PathCmp) -> bool {
        match (&mut self.best, cmp) {
            (None, _) | (Some(_), PathCmp::AboveBest) => {
                self.best = Some((self.current.clone(), self.assigned.clone()));
                true
            }
            (Some((_, best_assigned)), PathCmp::EqualToBest) => {
                // Two labelings with identical strings compose to an automorphism.
                let mut new_of_old = vec![0usize; self.n];
                for (new, &old) in self.assigned.iter().enumerate() {
                    new_of_old[old] = new;
                }
                let mut auto = vec![0usize; self.n];
                for old in 0..self.n {
                    auto[old] = best_assigned[new_of_old[old]];
                }
                if auto.iter().enumerate().any(|(i, &v)| i != v)
                    && self.gens.len() < 64
                    && !self.gens.contains(&auto)
                {
                    self.gens.push(auto);
                }
                false
            }
        }
    }

    fn dfs(&mut self, cmp: PathCmp) -> bool {
        let k = self.assigned.len();
        if k == self.n {
            return self.record_leaf(cmp);
        }

        // Evaluate every unassigned vertex, keep only chunk-maximal ones.
        let mut max_chunk: Option<Vec<u8>> = None;
        let mut candidates: Vec<usize> = Vec::new();
        for u in 0..self.n {
            if self.used >> u & 1 == 1 {
                continue;
            }
            let chunk = self.chunk_for(u);
            match &max_chunk {
                None => {
                    max_chunk = Some(chunk);
                    candidates.push(u);
                }
                Some(m) => match chunk.cmp(m) {
                    std::cmp::Ordering::Greater => {
                        max_chunk = Some(chunk);
                        candidates.clear();
                        candidates.push(u);
                    }
                    std::cmp::Ordering::Equal => candidates.push(u),
                    std::cmp::Ordering::Less => {}
                },
            }
        }
        let max_chunk = max_chunk.unwrap();

        let mut cmp = cmp;
        if cmp == PathCmp::EqualToBest {
            if let Some((best_str, _)) = &self.best {
                let off = self.current.len();
                let best_slice = &best_str[off..off + max_chunk.len()];
                match max_chunk.as_slice().cmp(best_slice) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => cmp = PathCmp::AboveBest,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }

        let mut updated = false;
        let mut tried: Vec<usize> = Vec::new();
        for &u in &candidates {
            if self.pruned_by_automorphism(u, &tried) {
                continue;
            }
            tried.push(u);
            self.assigned.push(u);
            self.used |= 1 << u;
            self.current.extend_from_slice(&max_chunk);
            let child_updated = self.dfs(cmp);
            self.current.truncate(self.current.len() - max_chunk.len());
            self.used &= !(1 << u);
            self.assigned.pop();
            if child_updated {
                updated = true;
                // The new best came from under this node and shares our
                // prefix including this chunk.
                cmp = PathCmp::EqualToBest;
            }
        }
        updated
    }

    /// Skip `u` when a known automorphism fixing the assigned prefix maps it
    /// onto an already-tried sibling.
    fn pruned_by_automorphism(&self, u: usize, tried: &[usize]) -> bool {
        'gen: for g in &self.gens {
            for &a in &self.assigned {
                if g[a] != a {
                    continue 'gen;
                }
            }
            if tried.contains(&g[u]) {
                return true;
            }
        }
        false
    }
}

fn pack(n: usize, m: usize, bits: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 + bits.len() / 8 + 1);
    out.push(n as u8);
    out.push((m & 0xff) as u8);
    out.push((m >> 8) as u8);
    let mut acc = 0u8;
    for (i, &b) in bits.iter().enumerate() {
        acc = acc << 1 | b;
        if i % 8 == 7 {
            out.push(acc);
            acc = 0;
        }
    }
    if bits.len() % 8 != 0 {
        acc <<= 8 - bits.len() % 8;
        out.push(acc);
    }
    out
}

fn run(ts: &TripleSystem, limit: usize) -> Result<(Vec<u8>, Vec<usize>)> {
    let n = ts.n();
    if n > limit.min(HARD_CAP) {
        return Err(Error::LimitExceeded {
            n,
            limit: limit.min(HARD_CAP),
        });
    }
    let mut s = Searcher::new(ts);
    s.dfs(PathCmp::AboveBest);
    let (bits, assigned) = s.best.unwrap_or((Vec::new(), Vec::new()));
    let mut new_of_old = vec![0usize; n];
    for (new, &old) in assigned.iter().enumerate() {
        new_of_old[old] = new;
    }
    Ok((pack(n, ts.len(), &bits), new_of_old))
}

/// Canonical byte string of the system; equal strings iff isomorphic.
/// Errors for `n` above the default limit.
pub fn canonical_form(ts: &TripleSystem) -> Result<Vec<u8>> {
    canonical_form_with_limit(ts, DEFAULT_CANON_LIMIT)
}

/// Canonical byte string with a caller-chosen vertex limit (hard cap 32).
pub fn canonical_form_with_limit(ts: &TripleSystem, limit: usize) -> Result<Vec<u8>> {
    run(ts, limit).map(|(s, _)| s)
}

/// Canonical string plus a relabeling (old -> new) realizing it.
pub fn canonical_labeling_with_limit(
    ts: &TripleSystem,
    limit: usize,
) -> Result<(Vec<u8>, Vec<usize>)> {
    run(ts, limit)
}

/// The canonical representative of the isomorphism class.
pub fn canonical_relabel(ts: &TripleSystem, limit: usize) -> Result<TripleSystem> {
    let (_, perm) = run(ts, limit)?;
    ts.relabel(&perm)
}

/// Isomorphism test: cheap invariants first, canonical forms as the decider.
///
/// Systems whose invariants already differ are resolved without touching the
/// canonical-form limit, so mismatched pairs can be far larger than it.
pub fn are_isomorphic(a: &TripleSystem, b: &TripleSystem) -> Result<bool> {
    are_isomorphic_with_limit(a, b, DEFAULT_CANON_LIMIT)
}

pub fn are_isomorphic_with_limit(
    a: &TripleSystem,
    b: &TripleSystem,
    limit: usize,
) -> Result<bool> {
    if a.n() != b.n() || a.len() != b.len() {
        return Ok(false);
    }
    if a.degree_multiset() != b.degree_multiset() {
        return Ok(false);
    }
    if a.pair_degree_multiset() != b.pair_degree_multiset() {
        return Ok(false);
    }
    Ok(canonical_form_with_limit(a, limit)? == canonical_form_with_limit(b, limit)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::TripleSystem;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sys(n: usize, sets: &[[usize; 3]]) -> TripleSystem {
        TripleSystem::build(n, sets.iter().copied()).unwrap()
    }

    #[test]
    fn relabeled_single_triple_matches() {
        let a = sys(4, &[[0, 1, 2]]);
        let b = sys(4, &[[1, 2, 3]]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn five_ring_relabelings_match() {
        let ring = sys(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut perm: Vec<usize> = (0..5).collect();
        for _ in 0..20 {
            perm.shuffle(&mut rng);
            let relabeled = ring.relabel(&perm).unwrap();
            assert_eq!(
                canonical_form(&ring).unwrap(),
                canonical_form(&relabeled).unwrap()
            );
        }
    }

    #[test]
    fn different_systems_differ() {
        // the two 4-triple triangle-free systems on 6 vertices
        let crown = sys(6, &[[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]);
        let two_crowns = sys(6, &[[0, 1, 4], [0, 1, 5], [2, 3, 4], [2, 3, 5]]);
        assert_ne!(
            canonical_form(&crown).unwrap(),
            canonical_form(&two_crowns).unwrap()
        );
        assert!(!are_isomorphic(&crown, &two_crowns).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let ts = TripleSystem::empty(13);
        assert_eq!(
            canonical_form(&ts),
            Err(Error::LimitExceeded { n: 13, limit: 12 })
        );
        assert!(canonical_form_with_limit(&ts, 14).is_ok());
    }

    #[test]
    fn random_relabel_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..120 {
            let n = 4 + (trial % 5); // up to 8
            let complete = TripleSystem::complete(n);
            let all = complete.triples().to_vec();
            let m = 1 + (trial * 7 % 9).min(all.len() - 1);
            let chosen: Vec<_> = all
                .choose_multiple(&mut rng, m)
                .map(|t| t.vertices())
                .collect();
            let f = TripleSystem::build(n, chosen).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let g = f.relabel(&perm).unwrap();
            assert_eq!(canonical_form(&f).unwrap(), canonical_form(&g).unwrap());
            assert!(are_isomorphic(&f, &g).unwrap());
        }
    }

    #[test]
    fn canonical_relabel_is_idempotent_class_rep() {
        let ring = sys(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]]);
        let rep = canonical_relabel(&ring, 12).unwrap();
        assert_eq!(
            canonical_form(&rep).unwrap(),
            canonical_form(&ring).unwrap()
        );
        let rep2 = canonical_relabel(&rep, 12).unwrap();
        assert_eq!(rep, rep2);
    }

    #[test]
    fn heavy_symmetry_case_terminates_quickly() {
        // apex vertex joined to every edge of a complete bipartite graph:
        // the automorphism group is large, which exercises generator pruning
        let mut triples = Vec::new();
        for a in 1..7 {
            for b in 7..13 {
                triples.push([0usize, a, b]);
            }
        }
        let f = TripleSystem::build(13, triples).unwrap();
        let c1 = canonical_form_with_limit(&f, 13).unwrap();
        let mut perm: Vec<usize> = (0..13).collect();
        perm.rotate_left(5);
        let c2 = canonical_form_with_limit(&f.relabel(&perm).unwrap(), 13).unwrap();
        assert_eq!(c1, c2);
    }
}
