//! Generators for the named extremal constructions.

pub mod classf;
pub mod designs;

use crate::config::{is_free, Config};
use crate::error::{Error, Result};
use crate::graph::Tournament;
use crate::system::{Triple, TripleSystem};

/// Matching-plus-singletons construction: partition `k` pairs `A_i` and a
/// rest `B`, take all `k (n - 2k)` triples `A_i + {b}`. Triangle-free for
/// every `k`; maximal at `k` near `n/4`.
pub fn gyarfas(n: usize, k: usize) -> Result<TripleSystem> {
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < 2k < n, got n = {n}, k = {k}"
        )));
    }
    let mut triples = Vec::with_capacity(k * (n - 2 * k));
    for i in 0..k {
        for b in 2 * k..n {
            triples.push(Triple::new(2 * i, 2 * i + 1, b)?);
        }
    }
    Ok(TripleSystem::from_triples(n, triples))
}

/// The values of `k` maximizing `k (n - 2k)`; two values iff `n = 2 mod 4`.
pub fn optimal_k(n: usize) -> Vec<usize> {
    let mut best = Vec::new();
    let mut best_val = 0i64;
    for k in 1..n.div_ceil(2) {
        if 2 * k >= n {
            break;
        }
        let val = (k * (n - 2 * k)) as i64;
        match val.cmp(&best_val) {
            std::cmp::Ordering::Greater => {
                best_val = val;
                best = vec![k];
            }
            std::cmp::Ordering::Equal => best.push(k),
            std::cmp::Ordering::Less => {}
        }
    }
    best
}

/// All triples through the fixed vertex 0.
pub fn full_star(n: usize) -> Result<TripleSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("full star needs n >= 3, got {n}")));
    }
    let mut triples = Vec::new();
    for a in 1..n {
        for b in a + 1..n {
            triples.push(Triple::new(0, a, b)?);
        }
    }
    Ok(TripleSystem::from_triples(n, triples))
}

/// The complete 3-partite system with part sizes as equal as possible.
pub fn complete_3partite(n: usize) -> Result<TripleSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("3-partite needs n >= 3, got {n}")));
    }
    let s1 = n / 3;
    let s2 = (n + 1) / 3;
    let mut triples = Vec::new();
    for a in 0..s1 {
        for b in s1..s1 + s2 {
            for c in s1 + s2..n {
                triples.push(Triple::new(a, b, c)?);
            }
        }
    }
    Ok(TripleSystem::from_triples(n, triples))
}

/// The tournament construction: matching edges `e_i = {2i, 2i+1}` are the
/// tournament vertices; an arc `e_i -> e_j` contributes the two triples
/// `e_i + {v}`, `v in e_j`. With `odd_extra` a final unmatched vertex joins
/// every matching edge. Size is always `floor((n-1)^2 / 4)` where
/// `n = 2k + odd_extra`.
pub fn tournament_construction(t: &Tournament, odd_extra: bool) -> TripleSystem {
    let k = t.k();
    let n = 2 * k + usize::from(odd_extra);
    let mut triples = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && t.beats(i, j) {
                triples.push(Triple::new(2 * i, 2 * i + 1, 2 * j).unwrap());
                triples.push(Triple::new(2 * i, 2 * i + 1, 2 * j + 1).unwrap());
            }
        }
    }
    if odd_extra {
        for i in 0..k {
            triples.push(Triple::new(2 * i, 2 * i + 1, n - 1).unwrap());
        }
    }
    TripleSystem::from_triples(n, triples)
}

/// Tournament construction over the transitive tournament on `floor(n/2)`
/// matching edges.
pub fn tournament_transitive_system(n: usize) -> TripleSystem {
    tournament_construction(&Tournament::transitive(n / 2), n % 2 == 1)
}

/// Augmented tournament construction for even `n >= 4`: the transitive
/// `F_T` plus the two missing triples on the union of the two lowest
/// out-degree matching edges.
pub fn ft_plus(n: usize) -> Result<TripleSystem> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("need even n >= 4, got {n}")));
    }
    let base = tournament_transitive_system(n);
    let mut triples = base.triples().to_vec();
    triples.push(Triple::new(0, 1, 2)?);
    triples.push(Triple::new(0, 1, 3)?);
    let out = TripleSystem::from_triples(n, triples);
    debug_assert!(is_free(&out, &[Config::A, Config::D]));
    Ok(out)
}

/// Modified tournament construction for odd `n >= 5`: on the singleton and
/// the two lowest out-degree edges, two triples through the unmatched vertex
/// are swapped for the two missing ones on the low edges.
pub fn ft_pm(n: usize) -> Result<TripleSystem> {
    if n < 5 || n % 2 != 1 {
        return Err(Error::InvalidParameter(format!("need odd n >= 5, got {n}")));
    }
    let base = tournament_transitive_system(n);
    let drop1 = Triple::new(0, 1, n - 1)?;
    let drop2 = Triple::new(2, 3, n - 1)?;
    let mut triples: Vec<Triple> = base
        .triples()
        .iter()
        .copied()
        .filter(|t| *t != drop1 && *t != drop2)
        .collect();
    triples.push(Triple::new(0, 1, 2)?);
    triples.push(Triple::new(0, 1, 3)?);
    let out = TripleSystem::from_triples(n, triples);
    debug_assert!(is_free(&out, &[Config::A, Config::D]));
    Ok(out)
}

/// All triples made of the apex 0 and an edge of the balanced complete
/// bipartite graph on the remaining vertices.
pub fn turan_star(n: usize) -> Result<TripleSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("apex construction needs n >= 3, got {n}")));
    }
    Ok(turan_star_unchecked(n))
}

pub(crate) fn turan_star_unchecked(n: usize) -> TripleSystem {
    let mut triples = Vec::new();
    let half = 1 + (n - 1) / 2;
    for a in 1..half {
        for b in half..n {
            triples.push(Triple::new(0, a, b).unwrap());
        }
    }
    TripleSystem::from_triples(n, triples)
}

/// The five triples of consecutive vertices around a 5-cycle.
pub fn five_ring() -> TripleSystem {
    TripleSystem::build(5, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]])
        .expect("five-ring is valid")
}

/// Add two new vertices and all triples through the new pair. Preserves
/// AC-freeness (checked in debug builds).
pub fn two_extension(f: &TripleSystem) -> TripleSystem {
    let n = f.n();
    let mut triples = f.triples().to_vec();
    for v in 0..n {
        triples.push(Triple::new(n, n + 1, v).unwrap());
    }
    let out = TripleSystem::from_triples(n + 2, triples);
    debug_assert!(is_free(&out, &[Config::A, Config::C]) || !is_free(f, &[Config::A, Config::C]));
    out
}

/// Add four new vertices `p, q, r, s`: all triples through `pq` and through
/// `rs`, plus the connectors `pqr` and `qrs`.
pub fn four_extension(f: &TripleSystem) -> TripleSystem {
    let n = f.n();
    let (p, q, r, s) = (n, n + 1, n + 2, n + 3);
    let mut triples = f.triples().to_vec();
    for v in 0..n {
        triples.push(Triple::new(p, q, v).unwrap());
        triples.push(Triple::new(r, s, v).unwrap());
    }
    triples.push(Triple::new(p, q, r).unwrap());
    triples.push(Triple::new(q, r, s).unwrap());
    let out = TripleSystem::from_triples(n + 4, triples);
    debug_assert!(is_free(&out, &[Config::A, Config::C]) || !is_free(f, &[Config::A, Config::C]));
    out
}

fn k4_triples(block: [usize; 4]) -> [Triple; 4] {
    let [a, b, c, d] = block;
    [
        Triple::new(a, b, c).unwrap(),
        Triple::new(a, b, d).unwrap(),
        Triple::new(a, c, d).unwrap(),
        Triple::new(b, c, d).unwrap(),
    ]
}

/// Eight complete blocks on the rows and columns of a 4x4 lattice; vertex
/// `(i, j)` is flattened as `4i + j`.
pub fn lattice_q44() -> TripleSystem {
    let mut triples = Vec::new();
    for i in 0..4 {
        let row = [4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3];
        let col = [i, i + 4, i + 8, i + 12];
        triples.extend(k4_triples(row));
        triples.extend(k4_triples(col));
    }
    TripleSystem::from_triples(16, triples)
}

/// The complete catalogs of ABD-extremal systems for n = 8, 9, 10.
pub fn small_abd_extremals(n: usize) -> Result<Vec<TripleSystem>> {
    let blocks = |n: usize, bs: &[[usize; 4]], extra: &[[usize; 3]]| -> TripleSystem {
        let mut triples = Vec::new();
        for &b in bs {
            triples.extend(k4_triples(b));
        }
        for &e in extra {
            triples.push(Triple::new(e[0], e[1], e[2]).unwrap());
        }
        TripleSystem::from_triples(n, triples)
    };
    let out = match n {
        8 => vec![
            gyarfas(8, 2)?,
            blocks(8, &[[0, 1, 2, 3], [0, 4, 5, 6]], &[]),
            blocks(8, &[[0, 1, 2, 3], [4, 5, 6, 7]], &[]),
        ],
        9 => vec![
            gyarfas(9, 2)?,
            blocks(9, &[[0, 1, 2, 3], [0, 4, 5, 6]], &[[1, 7, 8], [4, 7, 8]]),
        ],
        10 => vec![
            gyarfas(10, 2)?,
            gyarfas(10, 3)?,
            blocks(10, &[[0, 1, 2, 3], [0, 4, 5, 6], [0, 7, 8, 9]], &[]),
            blocks(10, &[[0, 1, 2, 3], [3, 4, 5, 6], [6, 7, 8, 9]], &[]),
        ],
        other => {
            return Err(Error::InvalidParameter(format!(
                "catalog covers n = 8, 9, 10 only, got {other}"
            )))
        }
    };
    Ok(out)
}

/// A cluster: all four (or the three lexicographically smallest) triples on
/// one 4-set.
pub fn cluster(n: usize, vertices: [usize; 4], full: bool) -> Result<TripleSystem> {
    let mut sorted = vertices;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("cluster needs 4 distinct vertices".into()));
    }
    let mut triples = k4_triples(sorted).to_vec();
    triples.sort_unstable();
    if !full {
        triples.pop();
    }
    TripleSystem::build(n, triples.iter().map(|t| t.vertices()))
}

/// A k-crown: `k` triples through the fixed pair.
pub fn crown(n: usize, pair: (usize, usize), leaves: &[usize]) -> Result<TripleSystem> {
    let mut triples = Vec::new();
    for &leaf in leaves {
        triples.push(Triple::new(pair.0, pair.1, leaf)?);
    }
    let ts = TripleSystem::build(n, triples.iter().map(|t| t.vertices()))?;
    if ts.len() != leaves.len() {
        return Err(Error::InvalidParameter("crown leaves must be distinct".into()));
    }
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::config::components::{classify_component, contiguity_components, ComponentClass};
    use crate::config::find_occurrences;

    #[test]
    fn gyarfas_sizes() {
        assert_eq!(gyarfas(8, 2).unwrap().len(), 8);
        assert_eq!(gyarfas(5, 1).unwrap().len(), 3);
        let a = gyarfas(6, 1).unwrap();
        let b = gyarfas(6, 2).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(b.len(), 4);
        assert!(!are_isomorphic(&a, &b).unwrap());
        assert!(gyarfas(4, 2).is_err());
    }

    #[test]
    fn optimal_k_values() {
        assert_eq!(optimal_k(8), vec![2]);
        assert_eq!(optimal_k(6), vec![1, 2]);
        assert_eq!(optimal_k(3), vec![1]);
        for n in 3..200 {
            let ks = optimal_k(n);
            let size = ks[0] * (n - 2 * ks[0]);
            assert_eq!(size, n * n / 8, "n={n}");
            assert_eq!(ks.len() == 2, n % 4 == 2, "n={n}");
        }
    }

    #[test]
    fn full_star_sizes_and_freeness() {
        assert_eq!(full_star(5).unwrap().len(), 6);
        assert_eq!(full_star(3).unwrap().len(), 1);
        let f = full_star(7).unwrap();
        assert_eq!(f.len(), 15);
        assert!(is_free(&f, &[Config::APlus, Config::BPlus, Config::A, Config::B]));
    }

    #[test]
    fn three_partite_sizes_and_freeness() {
        assert_eq!(complete_3partite(6).unwrap().len(), 8);
        assert_eq!(complete_3partite(3).unwrap().len(), 1);
        let f = complete_3partite(7).unwrap();
        assert_eq!(f.len(), 12);
        assert!(is_free(&f, &[Config::B, Config::C]));
    }

    #[test]
    fn tournament_sizes() {
        let f5 = tournament_transitive_system(5);
        assert_eq!(f5.len(), 4);
        let f6 = tournament_transitive_system(6);
        assert_eq!(f6.len(), 6);
        assert!(is_free(&f6, &[Config::A, Config::C, Config::D]));
    }

    #[test]
    fn cyclic_tournament_contains_a() {
        let t = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = tournament_construction(&t, false);
        assert!(is_free(&f, &[Config::C, Config::D]));
        assert!(!is_free(&f, &[Config::A]));
    }

    #[test]
    fn ft_plus_examples() {
        let f4 = ft_plus(4).unwrap();
        assert_eq!(f4.len(), 4);
        assert!(are_isomorphic(&f4, &TripleSystem::complete(4)).unwrap());
        assert_eq!(ft_plus(6).unwrap().len(), 8);
        assert!(ft_plus(5).is_err());
    }

    #[test]
    fn ft_pm_examples() {
        let f5 = ft_pm(5).unwrap();
        assert_eq!(f5.len(), 4);
        assert!(is_free(&f5, &[Config::A, Config::D]));
        assert!(ft_pm(6).is_err());
    }

    #[test]
    fn turan_star_sizes_and_freeness() {
        assert_eq!(turan_star(5).unwrap().len(), 4);
        assert_eq!(turan_star(4).unwrap().len(), 2);
        let f = turan_star(9).unwrap();
        assert_eq!(f.len(), 16);
        assert!(is_free(&f, &[Config::A, Config::B, Config::C]));
    }

    #[test]
    fn five_ring_basics() {
        let r = five_ring();
        assert_eq!(r.len(), 5);
        assert!(is_free(&r, &[Config::A, Config::C]));
        assert_eq!(find_occurrences(&r, Config::B).len(), 5);
    }

    #[test]
    fn repeated_two_extension_is_the_transitive_tournament_system() {
        let mut f = TripleSystem::empty(0);
        for _ in 0..4 {
            f = two_extension(&f);
        }
        assert_eq!(f, tournament_transitive_system(8));
    }

    #[test]
    fn four_extension_of_ring() {
        let f = four_extension(&five_ring());
        assert_eq!(f.n(), 9);
        assert_eq!(f.len(), 17);
        assert!(is_free(&f, &[Config::A, Config::C]));
    }

    #[test]
    fn double_two_extension_vs_four_extension() {
        let base = turan_star(4).unwrap();
        let a = two_extension(&two_extension(&base));
        let b = four_extension(&base);
        let sa: std::collections::BTreeSet<_> = a.triples().iter().collect();
        let sb: std::collections::BTreeSet<_> = b.triples().iter().collect();
        assert_eq!(sa.difference(&sb).count(), 1);
        assert_eq!(sb.difference(&sa).count(), 1);
    }

    #[test]
    fn lattice_q44_shape() {
        let q = lattice_q44();
        assert_eq!(q.n(), 16);
        assert_eq!(q.len(), 32);
        assert!(is_free(&q, &[Config::A, Config::B, Config::D]));
    }

    #[test]
    fn small_abd_catalogs() {
        for (n, count) in [(8, 3), (9, 2), (10, 4)] {
            let list = small_abd_extremals(n).unwrap();
            assert_eq!(list.len(), count);
            for f in &list {
                assert_eq!(f.len(), n * n / 8, "n={n}");
                assert!(is_free(f, &[Config::A, Config::B, Config::D]));
            }
            // pairwise non-isomorphic
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    assert!(!are_isomorphic(&list[i], &list[j]).unwrap());
                }
            }
        }
        assert!(small_abd_extremals(11).is_err());
    }

    #[test]
    fn cluster_and_crown_round_trip() {
        let cl = cluster(4, [0, 1, 2, 3], true).unwrap();
        assert_eq!(cl, TripleSystem::complete(4));
        let comps = contiguity_components(&cl);
        assert_eq!(classify_component(&cl, &comps[0]), ComponentClass::Cluster);
        let cr = crown(6, (0, 1), &[2, 3, 4]).unwrap();
        assert_eq!(cr.len(), 3);
        let comps = contiguity_components(&cr);
        assert_eq!(classify_component(&cr, &comps[0]), ComponentClass::Crown(3));
        assert!(crown(6, (0, 1), &[2, 2]).is_err());
    }
}
