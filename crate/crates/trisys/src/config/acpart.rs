//! The pair partition of an AC-free system.
//!
//! Triples split into ring triples `R` (members of five-rings), `F1` (one
//! own pair) and `F2` (at least two own pairs).  The vertex pairs then split
//! into five edge-disjoint graphs: `G_R` (pairs inside rings), `G1` (the own
//! pairs of `F1`), `G2` (two selected own pairs per `F2` triple), `G3`
//! (pairs joined by a path of length 2 in `G1`) and `G4` (everything else).
//! For `F2` triples with three own pairs the lexicographically smallest two
//! are selected, so the partition is deterministic.

use std::collections::BTreeSet;

use crate::config::{is_free, Config};
use crate::error::{Error, Result};
use crate::graph::{path2_graph, Graph};
use crate::system::TripleSystem;

/// Five-rings contained in the system, as sorted 5-tuples of triple indices.
pub fn five_rings(ts: &TripleSystem) -> Vec<[usize; 5]> {
    let n = ts.n();
    let mut active: Vec<usize> = (0..n)
        .filter(|&v| ts.vertex_degree(v).unwrap_or(0) > 0)
        .collect();
    active.sort_unstable();
    let mut found: BTreeSet<[usize; 5]> = BTreeSet::new();

    let lookup = |a: usize, b: usize, c: usize| -> Option<usize> {
        let t = crate::system::Triple::new(a, b, c).ok()?;
        ts.triples().binary_search(&t).ok()
    };

    let k = active.len();
    if k < 5 {
        return Vec::new();
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    for e in d + 1..k {
                        let verts =
                            [active[a], active[b], active[c], active[d], active[e]];
                        check_ring(&verts, &lookup, &mut found);
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

fn check_ring(
    verts: &[usize; 5],
    lookup: &impl Fn(usize, usize, usize) -> Option<usize>,
    found: &mut BTreeSet<[usize; 5]>,
) {
    // try all cyclic orders with verts[0] fixed first
    let mut rest = [verts[1], verts[2], verts[3], verts[4]];
    permute4(&mut rest, &mut |order| {
        let seq = [verts[0], order[0], order[1], order[2], order[3]];
        let mut indices = [0usize; 5];
        for i in 0..5 {
            match lookup(seq[i], seq[(i + 1) % 5], seq[(i + 2) % 5]) {
                Some(t) => indices[i] = t,
                None => return,
            }
        }
        indices.sort_unstable();
        found.insert(indices);
    });
}

fn permute4(items: &mut [usize; 4], f: &mut impl FnMut(&[usize; 4])) {
    fn heap(k: usize, items: &mut [usize; 4], f: &mut impl FnMut(&[usize; 4])) {
        if k == 1 {
            f(items);
            return;
        }
        for i in 0..k {
            heap(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(4, items, f);
}

/// The triple partition and the five pair graphs of an AC-free system.
#[derive(Debug, Clone)]
pub struct AcPairPartition {
    /// Triples lying in five-rings.
    pub ring_triples: Vec<usize>,
    /// Non-ring triples with exactly one own pair.
    pub f1: Vec<usize>,
    /// Non-ring triples with at least two own pairs.
    pub f2: Vec<usize>,
    pub g_r: Graph,
    pub g1: Graph,
    pub g2: Graph,
    pub g3: Graph,
    pub g4: Graph,
}

impl AcPairPartition {
    /// G4 edges covered by no triple at all.
    pub fn uncovered_g4(&self, ts: &TripleSystem) -> Vec<(usize, usize)> {
        self.g4
            .edges()
            .into_iter()
            .filter(|&(x, y)| ts.pair_index().degree(x, y) == 0)
            .collect()
    }
}

pub fn ac_pair_partition(ts: &TripleSystem) -> Result<AcPairPartition> {
    if !is_free(ts, &[Config::A, Config::C]) {
        return Err(Error::Precondition(
            "pair partition requires an AC-free system".into(),
        ));
    }
    let n = ts.n();
    let rings = five_rings(ts);
    let ring_set: BTreeSet<usize> = rings.iter().flatten().copied().collect();

    let mut g_r = Graph::empty(n);
    for &i in &ring_set {
        for (x, y) in ts.triples()[i].pairs() {
            g_r.add_edge(x, y);
        }
    }

    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut g1 = Graph::empty(n);
    let mut g2 = Graph::empty(n);
    for (i, t) in ts.triples().iter().enumerate() {
        if ring_set.contains(&i) {
            continue;
        }
        let own = ts.own_pairs(t)?;
        match own.len() {
            0 => {
                return Err(Error::Precondition(format!(
                    "triple {t} has no own pair; the system is not AC-free"
                )))
            }
            1 => {
                f1.push(i);
                g1.add_edge(own[0].0, own[0].1);
            }
            _ => {
                f2.push(i);
                for &(x, y) in own.iter().take(2) {
                    g2.add_edge(x, y);
                }
            }
        }
    }

    let g3 = path2_graph(&g1);

    // the four graphs built so far must be pairwise edge-disjoint
    let mut g4 = Graph::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            let covered = [&g_r, &g1, &g2, &g3]
                .iter()
                .filter(|g| g.has_edge(x, y))
                .count();
            match covered {
                0 => g4.add_edge(x, y),
                1 => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "pair ({x}, {y}) lands in two partition graphs; the system is not AC-free"
                    )))
                }
            }
        }
    }

    Ok(AcPairPartition {
        ring_triples: ring_set.into_iter().collect(),
        f1,
        f2,
        g_r,
        g1,
        g2,
        g3,
        g4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> TripleSystem {
        TripleSystem::build(5, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]]).unwrap()
    }

    #[test]
    fn five_ring_detection_finds_the_ring() {
        let rings = five_rings(&ring());
        assert_eq!(rings, vec![[0, 1, 2, 3, 4]]);
    }

    #[test]
    fn ring_partition_puts_everything_in_r() {
        let p = ac_pair_partition(&ring()).unwrap();
        assert_eq!(p.ring_triples.len(), 5);
        assert!(p.f1.is_empty() && p.f2.is_empty());
        assert_eq!(p.g_r.edge_count(), 10);
        assert_eq!(p.g1.edge_count() + p.g2.edge_count() + p.g3.edge_count(), 0);
        assert_eq!(p.g4.edge_count(), 0);
    }

    #[test]
    fn partition_rejects_non_ac_free_input() {
        assert!(ac_pair_partition(&Config::C.pattern()).is_err());
        assert!(ac_pair_partition(&Config::A.pattern()).is_err());
    }

    #[test]
    fn partition_covers_all_pairs() {
        // two disjoint triples: all own pairs, F2 only
        let f = TripleSystem::build(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let p = ac_pair_partition(&f).unwrap();
        assert_eq!(p.f2.len(), 2);
        assert_eq!(p.g2.edge_count(), 4);
        let total = p.g_r.edge_count()
            + p.g1.edge_count()
            + p.g2.edge_count()
            + p.g3.edge_count()
            + p.g4.edge_count();
        assert_eq!(total, 15);
    }
}
