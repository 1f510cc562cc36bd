//! Design-based constructions for systems avoiding `D` (and optionally `B`
//! or `B` and `C`): complement graphs with the right divisibility residues,
//! assembly of cluster/crown packings, and the block construction over
//! decompositions into a fixed dense graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::find_k4_packing;
use crate::system::{Triple, TripleSystem};

fn triangles_on(g: &mut Graph, start: usize, count: usize) {
    for t in 0..count {
        let base = start + 3 * t;
        g.add_edge(base, base + 1);
        g.add_edge(base, base + 2);
        g.add_edge(base + 1, base + 2);
    }
}

/// The complement graph whose removal leaves a K4-decomposable remainder,
/// chosen per residue class of `n` mod 12. For `n = 6, 9 (mod 12)` this is
/// the variant whose leftover triples keep only `D` excluded; see
/// [`complement_spec_bd`] for the `BD` variant.
pub fn complement_spec(n: usize) -> Result<Graph> {
    complement_spec_impl(n, false)
}

/// As [`complement_spec`], but for `n = 6, 9 (mod 12)` uses the variant
/// whose assembled system also avoids `B` (one triple smaller).
pub fn complement_spec_bd(n: usize) -> Result<Graph> {
    complement_spec_impl(n, true)
}

fn complement_spec_impl(n: usize, bd: bool) -> Result<Graph> {
    let r = n % 12;
    let fail = |min: usize| {
        Err(Error::InvalidParameter(format!(
            "residue class {r} (mod 12) needs n >= {min}, got {n}"
        )))
    };
    let mut g = Graph::empty(n);
    match r {
        1 | 4 => {} // full packing exists; nothing to remove
        0 | 3 => {
            if n < 3 {
                return fail(3);
            }
            triangles_on(&mut g, 0, n / 3);
        }
        2 | 8 => {
            if n < 2 {
                return fail(2);
            }
            for i in 0..n / 2 {
                g.add_edge(2 * i, 2 * i + 1);
            }
        }
        5 | 11 => {
            if n < 5 {
                return fail(5);
            }
            for i in 0..(n - 5) / 2 {
                g.add_edge(2 * i, 2 * i + 1);
            }
            // star on the last five vertices
            for leaf in n - 4..n {
                g.add_edge(n - 5, leaf);
            }
        }
        6 | 9 => {
            if bd {
                if n < 9 {
                    return fail(9);
                }
                triangles_on(&mut g, 0, (n - 9) / 3);
                // four triangles sharing the vertex n-9
                let hub = n - 9;
                for t in 0..4 {
                    let (a, b) = (n - 8 + 2 * t, n - 7 + 2 * t);
                    g.add_edge(hub, a);
                    g.add_edge(hub, b);
                    g.add_edge(a, b);
                }
            } else {
                if n < 6 {
                    return fail(6);
                }
                triangles_on(&mut g, 0, (n - 6) / 3);
                // a 4-page book on the last six vertices
                let (x, y) = (n - 6, n - 5);
                g.add_edge(x, y);
                for leaf in n - 4..n {
                    g.add_edge(x, leaf);
                    g.add_edge(y, leaf);
                }
            }
        }
        7 | 10 => {
            if n < 7 {
                return fail(7);
            }
            // triangular prism on the first six vertices
            triangles_on(&mut g, 0, 2);
            for i in 0..3 {
                g.add_edge(i, i + 3);
            }
        }
        _ => unreachable!(),
    }
    Ok(g)
}

/// One crown to lay on leftover edges: a fixed pair plus leaves (a single
/// leaf is a bare triangle).
pub type CrownSpec = ((usize, usize), Vec<usize>);

/// Assemble a D-free system from edge-disjoint K4 blocks (4 triples each)
/// and crowns on the remaining edges. Blocks and crowns must have pairwise
/// edge-disjoint shadows, otherwise components merge and the guarantee is
/// void; overlaps are reported as errors.
pub fn assemble_dfree(
    n: usize,
    blocks: &[[usize; 4]],
    crowns: &[CrownSpec],
) -> Result<TripleSystem> {
    let mut cover = Graph::empty(n);
    let mut claim = |x: usize, y: usize| -> Result<()> {
        if x == y || x >= n || y >= n {
            return Err(Error::InvalidParameter(format!("bad edge ({x}, {y})")));
        }
        if cover.has_edge(x, y) {
            return Err(Error::InvalidParameter(format!(
                "edge ({x}, {y}) used by two building blocks"
            )));
        }
        cover.add_edge(x, y);
        Ok(())
    };

    let mut triples = Vec::new();
    for &b in blocks {
        for i in 0..4 {
            for j in i + 1..4 {
                claim(b[i], b[j])?;
            }
        }
        let [p, q, r, s] = b;
        triples.push(Triple::new(p, q, r)?);
        triples.push(Triple::new(p, q, s)?);
        triples.push(Triple::new(p, r, s)?);
        triples.push(Triple::new(q, r, s)?);
    }
    for ((x, y), leaves) in crowns {
        claim(*x, *y)?;
        for &leaf in leaves {
            claim(*x, leaf)?;
            claim(*y, leaf)?;
            triples.push(Triple::new(*x, *y, leaf)?);
        }
    }
    let out = TripleSystem::from_triples(n, triples);
    debug_assert!(crate::config::components::dfree_by_components(&out));
    Ok(out)
}

/// D-free (indeed BD-free) system of size `n(n-1)/3` for `n = 1, 4 (mod
/// 12)`: four triples in every block of a full K4 packing of `K_n`. The
/// packing search runs at desk scale only.
pub fn dfree_from_full_packing(n: usize) -> Result<TripleSystem> {
    if n % 12 != 1 && n % 12 != 4 {
        return Err(Error::InvalidParameter(format!(
            "full packings need n = 1, 4 (mod 12), got {n}"
        )));
    }
    if n > crate::packing::FULL_PACKING_VERTEX_LIMIT {
        return Err(Error::DecompositionUnavailable(format!(
            "packing search is limited to {} vertices, got {n}",
            crate::packing::FULL_PACKING_VERTEX_LIMIT
        )));
    }
    let blocks = find_k4_packing(&Graph::complete(n), true, 100_000_000)?;
    assemble_dfree(n, &blocks, &[])
}

/// One placed copy of the block graph `H_m`: pairs `A_1..A_{C(m,2)}` and a
/// hub set `B` of size `m`; the edges are the complete graphs on each
/// `A_i + B`.
#[derive(Debug, Clone)]
pub struct HmCopy {
    pub pairs: Vec<[usize; 2]>,
    pub b: Vec<usize>,
}

impl HmCopy {
    fn m(&self) -> usize {
        self.b.len()
    }

    fn validate(&self, n: usize) -> Result<()> {
        let m = self.m();
        if m < 2 || self.pairs.len() != m * (m - 1) / 2 {
            return Err(Error::InvalidParameter(format!(
                "a copy needs {} pairs and {} hub vertices",
                m * (m - 1) / 2,
                m
            )));
        }
        let mut seen = 0u128;
        for v in self.pairs.iter().flatten().chain(self.b.iter()) {
            if *v >= n {
                return Err(Error::VertexOutOfRange { vertex: *v, n });
            }
            if seen >> v & 1 == 1 {
                return Err(Error::InvalidParameter(format!("vertex {v} repeats in a copy")));
            }
            seen |= 1 << v;
        }
        Ok(())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = std::collections::BTreeSet::new();
        for a in &self.pairs {
            let mut clique: Vec<usize> = a.to_vec();
            clique.extend_from_slice(&self.b);
            for i in 0..clique.len() {
                for j in i + 1..clique.len() {
                    let (x, y) = (clique[i].min(clique[j]), clique[i].max(clique[j]));
                    out.insert((x, y));
                }
            }
        }
        out.into_iter().collect()
    }
}

/// The abstract block graph `H_m` on `m^2` vertices: `C(m,2)` matched pairs
/// followed by the hub set `B`, each `A_i + B` complete.
pub fn h_m_graph(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 2, got {m}")));
    }
    let copy = abstract_hm_copy(m, 0);
    let mut g = Graph::empty(m * m);
    for (u, v) in copy.edges() {
        g.add_edge(u, v);
    }
    Ok(g)
}

fn abstract_hm_copy(m: usize, offset: usize) -> HmCopy {
    let np = m * (m - 1) / 2;
    HmCopy {
        pairs: (0..np).map(|i| [offset + 2 * i, offset + 2 * i + 1]).collect(),
        b: (2 * np..2 * np + m).map(|v| offset + v).collect(),
    }
}

/// Blocks-as-copies view of a K4 packing (the `m = 2` case: one pair plus a
/// two-element hub per block).
pub fn hm_copies_from_k4_blocks(blocks: &[[usize; 4]]) -> Vec<HmCopy> {
    blocks
        .iter()
        .map(|b| HmCopy {
            pairs: vec![[b[0], b[1]]],
            b: vec![b[2], b[3]],
        })
        .collect()
}

/// The block construction over an edge decomposition of `K_n` into copies
/// of `H_m`: inside every copy, all triples `A_i + {b}`. The result avoids
/// `B`, `C` and `D`, with `(1/2) (m/(m+1)) C(n,2)` triples.
pub fn bcd_construction(n: usize, m: usize, copies: &[HmCopy]) -> Result<TripleSystem> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 2, got {m}")));
    }
    let mut cover = Graph::empty(n);
    for copy in copies {
        if copy.m() != m {
            return Err(Error::InvalidParameter(
                "copy hub size does not match m".into(),
            ));
        }
        copy.validate(n)?;
        for (u, v) in copy.edges() {
            if cover.has_edge(u, v) {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {v}) covered twice; not a decomposition"
                )));
            }
            cover.add_edge(u, v);
        }
    }
    if cover.edge_count() != n * (n - 1) / 2 {
        return Err(Error::Precondition(format!(
            "copies cover {} of {} edges; not a decomposition",
            cover.edge_count(),
            n * (n - 1) / 2
        )));
    }
    let mut triples = Vec::new();
    for copy in copies {
        for a in &copy.pairs {
            for &b in &copy.b {
                triples.push(Triple::new(a[0], a[1], b)?);
            }
        }
    }
    Ok(TripleSystem::from_triples(n, triples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::components::dfree_by_components;
    use crate::config::{is_free, Config};
    use num_integer::Integer;

    #[test]
    fn complement_divisibility_for_all_residues() {
        for n in 12..=120 {
            for g in [complement_spec(n).unwrap(), complement_spec_bd(n).unwrap()] {
                let binom = n * (n - 1) / 2;
                assert_eq!(g.edge_count() % 6, binom % 6, "n={n}");
                for v in 0..n {
                    assert_eq!(g.degree(v) % 3, (n - 1) % 3, "n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn complement_matching_case() {
        let g = complement_spec(14).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert!(g.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn assemble_cluster_plus_crown() {
        let f = assemble_dfree(7, &[[0, 1, 2, 3]], &[((4, 5), vec![6])]).unwrap();
        assert_eq!(f.len(), 5);
        assert!(dfree_by_components(&f));
        // overlapping blocks rejected
        assert!(assemble_dfree(8, &[[0, 1, 2, 3], [0, 1, 4, 5]], &[]).is_err());
    }

    #[test]
    fn h_m_graph_invariants() {
        for m in 2..=6 {
            let g = h_m_graph(m).unwrap();
            assert_eq!(g.edge_count(), m * (m - 1) * (m + 1), "m={m}");
            let gcd = g.degrees().iter().fold(0usize, |a, &d| a.gcd(&d));
            assert_eq!(gcd, m + 1, "m={m}");
        }
        assert_eq!(h_m_graph(2).unwrap().edge_count(), 6);
    }

    #[test]
    fn bcd_on_thirteen_points() {
        let blocks = find_k4_packing(&Graph::complete(13), true, 100_000_000).unwrap();
        let copies = hm_copies_from_k4_blocks(&blocks);
        let f = bcd_construction(13, 2, &copies).unwrap();
        assert_eq!(f.len(), 26);
        assert!(is_free(&f, &[Config::B, Config::C, Config::D]));
    }

    #[test]
    fn bcd_rejects_non_decompositions() {
        let copies = hm_copies_from_k4_blocks(&[[0, 1, 2, 3]]);
        assert!(bcd_construction(13, 2, &copies).is_err());
    }
}
