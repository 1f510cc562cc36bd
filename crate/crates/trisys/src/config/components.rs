//! Contiguity structure and the characterizations it supports.
//!
//! Two triples are contiguous when they share two vertices.  A system with
//! no `D` decomposes into contiguity components that are each either a
//! cluster (3 or 4 triples on one 4-set) or a crown (k triples through one
//! fixed pair); equivalently, every link is a disjoint union of triangles
//! and stars.  Both characterizations are implemented and cross-checked
//! against the direct detector in the test suites.

use crate::config::{contains_config, Config};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::system::{Triple, TripleSystem};

/// Partition of the triples into contiguity components (indices into the
/// system's triple list), ordered by smallest member.
pub fn contiguity_components(ts: &TripleSystem) -> Vec<Vec<usize>> {
    let masks: Vec<u128> = ts.triples().iter().map(Triple::mask).collect();
    let m = masks.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    // union via the shared-pair index: triples sharing a pair are contiguous
    for (_, list) in ts.pair_index().iter() {
        for w in list.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Shape of one contiguity component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentClass {
    /// 3 or 4 triples on a single 4-set (shadow K4).
    Cluster,
    /// k triples all through one fixed pair (shadow book B_k).
    Crown(usize),
    Other,
}

/// Classify a set of triples as cluster, crown, or neither. The predicates
/// are purely structural, so a disconnected input simply comes out `Other`.
pub fn classify_component(ts: &TripleSystem, component: &[usize]) -> ComponentClass {
    if component.is_empty() {
        return ComponentClass::Other;
    }
    let masks: Vec<u128> = component
        .iter()
        .map(|&i| ts.triples()[i].mask())
        .collect();
    let support = masks.iter().fold(0u128, |a, m| a | m);
    if (3..=4).contains(&component.len()) && support.count_ones() == 4 {
        return ComponentClass::Cluster;
    }
    let common = masks.iter().fold(!0u128, |a, m| a & m);
    if common.count_ones() == 2 {
        return ComponentClass::Crown(component.len());
    }
    if component.len() == 1 {
        return ComponentClass::Crown(1);
    }
    ComponentClass::Other
}

/// D-freeness via the component characterization: every contiguity component
/// is a cluster or a crown.
pub fn dfree_by_components(ts: &TripleSystem) -> bool {
    contiguity_components(ts)
        .iter()
        .all(|c| classify_component(ts, c) != ComponentClass::Other)
}

/// Is this graph, restricted to the vertices other than `skip`, a disjoint
/// union of triangles and stars? Returns the number of star components
/// (isolated vertices and single edges count as stars).
fn triangles_and_stars(g: &Graph, skip: usize) -> Option<usize> {
    let mut stars = 0;
    for comp in g.components() {
        if comp == [skip] {
            continue;
        }
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let k = comp.len();
        if k == 3 && edges == 3 {
            continue; // triangle
        }
        // a star K_{1,k-1} has k-1 edges and a center of degree k-1
        if edges == k - 1 && comp.iter().any(|&v| g.degree(v) == k - 1) {
            stars += 1;
            continue;
        }
        return None;
    }
    Some(stars)
}

/// D-freeness via the link characterization: every link is a vertex-disjoint
/// union of triangles and stars.
pub fn dfree_by_links(ts: &TripleSystem) -> bool {
    (0..ts.n()).all(|x| {
        let link = ts.link(x).expect("vertex in range");
        triangles_and_stars(&link, x).is_some()
    })
}

/// For a D-free system, evaluate `(1/3) * sum_x (n - 1 - st(link(x)))`,
/// which must equal the number of triples. Errors if some link is not a
/// disjoint union of triangles and stars.
pub fn star_count_size(ts: &TripleSystem) -> Result<usize> {
    let n = ts.n();
    let mut total = 0usize;
    for x in 0..n {
        let link = ts.link(x)?;
        let stars = triangles_and_stars(&link, x).ok_or_else(|| {
            Error::Precondition(format!(
                "link of vertex {x} is not a disjoint union of triangles and stars"
            ))
        })?;
        total += n - 1 - stars;
    }
    debug_assert_eq!(total % 3, 0);
    Ok(total / 3)
}

/// CD-freeness via own pairs: every triple has at least two own pairs.
pub fn cd_free_by_own_pairs(ts: &TripleSystem) -> bool {
    ts.triples()
        .iter()
        .all(|t| ts.own_pairs(t).map(|p| p.len() >= 2).unwrap_or(false))
}

/// Convenience used in tests: the direct-detector answer for D-freeness.
pub fn dfree_by_detector(ts: &TripleSystem) -> bool {
    !contains_config(ts, Config::D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::is_free;

    fn sys(n: usize, sets: &[[usize; 3]]) -> TripleSystem {
        TripleSystem::build(n, sets.iter().copied()).unwrap()
    }

    #[test]
    fn disjoint_triples_make_two_components() {
        let f = sys(5, &[[0, 1, 4], [2, 3, 4]]);
        // sharing only vertex 4 is not contiguity
        assert_eq!(contiguity_components(&f).len(), 2);
    }

    #[test]
    fn complete_k4_is_one_cluster() {
        let f = TripleSystem::complete(4);
        let comps = contiguity_components(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(classify_component(&f, &comps[0]), ComponentClass::Cluster);
    }

    #[test]
    fn config_d_is_one_component_but_other() {
        let d = Config::D.pattern();
        let comps = contiguity_components(&d);
        assert_eq!(comps.len(), 1);
        assert_eq!(classify_component(&d, &comps[0]), ComponentClass::Other);
        assert!(!dfree_by_components(&d));
        assert!(!dfree_by_links(&d));
    }

    #[test]
    fn three_triples_on_four_vertices_is_cluster() {
        let f = sys(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]);
        let comps = contiguity_components(&f);
        assert_eq!(classify_component(&f, &comps[0]), ComponentClass::Cluster);
    }

    #[test]
    fn crown_is_detected() {
        let f = sys(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let comps = contiguity_components(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(classify_component(&f, &comps[0]), ComponentClass::Crown(3));
    }

    #[test]
    fn dfree_routes_agree_on_k4() {
        let f = TripleSystem::complete(4);
        assert!(dfree_by_components(&f));
        assert!(dfree_by_links(&f));
        assert!(is_free(&f, &[Config::D]));
    }

    #[test]
    fn star_count_identity_examples() {
        // complete K4: each link is a triangle
        assert_eq!(star_count_size(&TripleSystem::complete(4)).unwrap(), 4);
        // single triple on 3 vertices: each link is a single edge (one star)
        assert_eq!(star_count_size(&sys(3, &[[0, 1, 2]])).unwrap(), 1);
        // precondition violation reports an error
        assert!(star_count_size(&Config::D.pattern()).is_err());
    }

    #[test]
    fn cd_free_examples() {
        assert!(!cd_free_by_own_pairs(&Config::C.pattern()));
        // a 2-crown has two own pairs per triple
        let f = sys(4, &[[0, 2, 3], [1, 2, 3]]);
        assert!(cd_free_by_own_pairs(&f));
    }
}
