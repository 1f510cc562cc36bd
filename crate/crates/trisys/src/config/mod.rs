//! Detection of the four triangle configurations (and their augmented
//! variants), general hypergraph 3-cycles, and the structural
//! characterizations built on them.
//!
//! Three triples that pairwise intersect are classified by their pairwise
//! intersection sizes and union size; the four triangle patterns are exactly
//!
//! * `A`: intersections (1,1,1) on 6 vertices, e.g. `{124, 135, 236}`,
//! * `B`: intersections (1,1,2) on 5 vertices, e.g. `{125, 134, 234}`,
//! * `C`: intersections (2,2,2) on 4 vertices, e.g. `{124, 134, 234}`,
//! * `D`: intersections (1,2,2) on 5 vertices, e.g. `{123, 134, 235}`.
//!
//! `A+`/`B+` add the central triple (`123` in the examples above).
//! The anchored detectors below enumerate candidate triple sets through the
//! pair and vertex indexes of the host system instead of scanning all
//! 3-subsets; `naive` keeps the definition-based reference implementation.

pub mod acpart;
pub mod components;
pub mod naive;
pub mod q4;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::system::{Triple, TripleSystem};

/// One of the forbidden configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Config {
    A,
    B,
    C,
    D,
    APlus,
    BPlus,
}

impl Config {
    pub const TRIANGLES: [Config; 4] = [Config::A, Config::B, Config::C, Config::D];

    /// The pattern as a concrete system on its natural vertex count.
    pub fn pattern(self) -> TripleSystem {
        let (n, sets): (usize, &[[usize; 3]]) = match self {
            Config::A => (6, &[[0, 1, 3], [0, 2, 4], [1, 2, 5]]),
            Config::B => (5, &[[0, 1, 4], [0, 2, 3], [1, 2, 3]]),
            Config::C => (4, &[[0, 1, 3], [0, 2, 3], [1, 2, 3]]),
            Config::D => (5, &[[0, 1, 2], [0, 2, 3], [1, 2, 4]]),
            Config::APlus => (6, &[[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 5]]),
            Config::BPlus => (5, &[[0, 1, 2], [0, 1, 4], [0, 2, 3], [1, 2, 3]]),
        };
        TripleSystem::build(n, sets.iter().copied()).expect("patterns are valid")
    }

    pub fn triple_count(self) -> usize {
        match self {
            Config::APlus | Config::BPlus => 4,
            _ => 3,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Config::A | Config::APlus => 6,
            Config::C => 4,
            _ => 5,
        }
    }

    pub fn is_triangle(self) -> bool {
        self.triple_count() == 3
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Config::A => "A",
            Config::B => "B",
            Config::C => "C",
            Config::D => "D",
            Config::APlus => "A+",
            Config::BPlus => "B+",
        };
        f.write_str(s)
    }
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Config::A),
            "B" | "b" => Ok(Config::B),
            "C" | "c" => Ok(Config::C),
            "D" | "d" => Ok(Config::D),
            "A+" | "a+" | "Aplus" | "APlus" => Ok(Config::APlus),
            "B+" | "b+" | "Bplus" | "BPlus" => Ok(Config::BPlus),
            other => Err(Error::Parse(format!("unknown configuration {other:?}"))),
        }
    }
}

/// An ordered, duplicate-free set of configurations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ConfigSet(Vec<Config>);

impl ConfigSet {
    pub fn new(mut configs: Vec<Config>) -> Self {
        configs.sort_unstable();
        configs.dedup();
        ConfigSet(configs)
    }

    pub fn configs(&self) -> &[Config] {
        &self.0
    }

    pub fn contains(&self, c: Config) -> bool {
        self.0.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, other: &ConfigSet) -> bool {
        self.0.iter().all(|c| other.contains(*c))
    }

    pub fn only_triangles(&self) -> bool {
        self.0.iter().all(|c| c.is_triangle())
    }

    /// All 15 non-empty subsets of `{A, B, C, D}`, in a fixed order.
    pub fn all_triangle_subsets() -> Vec<ConfigSet> {
        let mut out = Vec::new();
        for mask in 1u8..16 {
            let cs: Vec<Config> = Config::TRIANGLES
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            out.push(ConfigSet::new(cs));
        }
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }
}

impl fmt::Display for ConfigSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ConfigSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut configs = Vec::new();
        if s.contains(',') {
            for part in s.split(',') {
                configs.push(part.parse()?);
            }
        } else {
            // compact form like "ABD" or "AB+D"
            let mut chars = s.chars().peekable();
            while let Some(ch) = chars.next() {
                let mut token = ch.to_string();
                if chars.peek() == Some(&'+') {
                    token.push(chars.next().unwrap());
                }
                configs.push(token.parse()?);
            }
        }
        Ok(ConfigSet::new(configs))
    }
}

impl FromIterator<Config> for ConfigSet {
    fn from_iter<T: IntoIterator<Item = Config>>(iter: T) -> Self {
        ConfigSet::new(iter.into_iter().collect())
    }
}

/// A located embedding of a configuration: the triples of the host system
/// that induce the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub config: Config,
    pub triples: Vec<Triple>,
}

/// Classify three pairwise-distinct triples: which triangle configuration,
/// if any, do they form?
pub fn classify3(t1: u128, t2: u128, t3: u128) -> Option<Config> {
    let s12 = (t1 & t2).count_ones();
    let s13 = (t1 & t3).count_ones();
    let s23 = (t2 & t3).count_ones();
    if s12 == 0 || s13 == 0 || s23 == 0 {
        return None;
    }
    let union = (t1 | t2 | t3).count_ones();
    let mut s = [s12, s13, s23];
    s.sort_unstable();
    match (s, union) {
        ([1, 1, 1], 6) => Some(Config::A),
        ([1, 1, 2], 5) => Some(Config::B),
        ([2, 2, 2], 4) => Some(Config::C),
        ([1, 2, 2], 5) => Some(Config::D),
        _ => None,
    }
}

/// Shared per-system lookup tables for the anchored scans.
struct Index<'a> {
    ts: &'a TripleSystem,
    masks: Vec<u128>,
    by_vertex: Vec<Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(ts: &'a TripleSystem) -> Self {
        let masks: Vec<u128> = ts.triples().iter().map(Triple::mask).collect();
        let mut by_vertex = vec![Vec::new(); ts.n()];
        for (i, t) in ts.triples().iter().enumerate() {
            for v in t.vertices() {
                by_vertex[v].push(i);
            }
        }
        Index { ts, masks, by_vertex }
    }

    fn triple_index(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let t = Triple::new(a, b, c).ok()?;
        self.ts.triples().binary_search(&t).ok()
    }
}

/// Visitor-based scans; returning `true` from the visitor stops the scan.
fn scan_c(idx: &Index, visit: &mut impl FnMut([usize; 3]) -> bool) -> bool {
    for (&(x, y), list) in idx.ts.pair_index().iter() {
        for (ai, &i) in list.iter().enumerate() {
            for &j in &list[ai + 1..] {
                let a = idx.ts.triples()[i].third(x, y).unwrap();
                let b = idx.ts.triples()[j].third(x, y).unwrap();
                for (p, q, r) in [(x, a, b), (y, a, b)] {
                    if let Some(k) = idx.triple_index(p, q, r) {
                        let mut occ = [i, j, k];
                        occ.sort_unstable();
                        if visit(occ) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn scan_b(idx: &Index, visit: &mut impl FnMut([usize; 3]) -> bool) -> bool {
    for (&(x, y), list) in idx.ts.pair_index().iter() {
        let pair_mask = (1u128 << x) | (1u128 << y);
        for (ai, &i) in list.iter().enumerate() {
            for &j in &list[ai + 1..] {
                let a = idx.ts.triples()[i].third(x, y).unwrap();
                let b = idx.ts.triples()[j].third(x, y).unwrap();
                for &k in idx.ts.pair_index().triples_with(a, b) {
                    if idx.masks[k] & pair_mask != 0 {
                        continue;
                    }
                    let mut occ = [i, j, k];
                    occ.sort_unstable();
                    if visit(occ) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scan_d(idx: &Index, visit: &mut impl FnMut([usize; 3]) -> bool) -> bool {
    for (c_idx, t) in idx.ts.triples().iter().enumerate() {
        let pairs = t.pairs();
        for pi in 0..3 {
            for qi in pi + 1..3 {
                let (px, py) = pairs[pi];
                let (qx, qy) = pairs[qi];
                for &i in idx.ts.pair_index().triples_with(px, py) {
                    if i == c_idx {
                        continue;
                    }
                    let u = idx.ts.triples()[i].third(px, py).unwrap();
                    for &j in idx.ts.pair_index().triples_with(qx, qy) {
                        if j == c_idx {
                            continue;
                        }
                        let v = idx.ts.triples()[j].third(qx, qy).unwrap();
                        if u == v {
                            continue;
                        }
                        let mut occ = [c_idx, i, j];
                        occ.sort_unstable();
                        if visit(occ) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn scan_a(idx: &Index, visit: &mut impl FnMut([usize; 3]) -> bool) -> bool {
    for x in 0..idx.ts.n() {
        let list = &idx.by_vertex[x];
        let xbit = 1u128 << x;
        for (ai, &i) in list.iter().enumerate() {
            for &j in &list[ai + 1..] {
                if idx.masks[i] & idx.masks[j] != xbit {
                    continue;
                }
                for y in idx.ts.triples()[i].vertices() {
                    if y == x {
                        continue;
                    }
                    for z in idx.ts.triples()[j].vertices() {
                        if z == x {
                            continue;
                        }
                        for &k in idx.ts.pair_index().triples_with(y, z) {
                            let tk = idx.masks[k];
                            if tk & xbit != 0 {
                                continue;
                            }
                            if (tk & idx.masks[i]).count_ones() == 1
                                && (tk & idx.masks[j]).count_ones() == 1
                            {
                                let mut occ = [i, j, k];
                                occ.sort_unstable();
                                if visit(occ) {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// For an A occurrence, the three pairwise-shared vertices (the central
/// triangle); for a B occurrence, the candidates completing it to B+.
fn plus_completions(idx: &Index, occ: [usize; 3], config: Config) -> Vec<usize> {
    let [i, j, k] = occ;
    let (mi, mj, mk) = (idx.masks[i], idx.masks[j], idx.masks[k]);
    let mut out = Vec::new();
    match config {
        Config::A => {
            let center = (mi & mj) | (mi & mk) | (mj & mk);
            let mut vs = [0usize; 3];
            let mut m = center;
            for slot in vs.iter_mut() {
                *slot = m.trailing_zeros() as usize;
                m &= m - 1;
            }
            if let Some(c) = idx.triple_index(vs[0], vs[1], vs[2]) {
                out.push(c);
            }
        }
        Config::B => {
            // find the contiguous duo and the shared pair
            let duos = [(i, j, k), (i, k, j), (j, k, i)];
            for (d1, d2, _lone) in duos {
                let shared = idx.masks[d1] & idx.masks[d2];
                if shared.count_ones() != 2 {
                    continue;
                }
                let a = (idx.masks[d1] & !shared).trailing_zeros() as usize;
                let b = (idx.masks[d2] & !shared).trailing_zeros() as usize;
                let mut m = shared;
                while m != 0 {
                    let p = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if let Some(c) = idx.triple_index(a, b, p) {
                        out.push(c);
                    }
                }
                break;
            }
        }
        _ => unreachable!("plus completions only exist for A and B"),
    }
    out
}

fn scan_config(idx: &Index, config: Config, visit: &mut impl FnMut(Vec<usize>) -> bool) -> bool {
    match config {
        Config::A => scan_a(idx, &mut |occ| visit(occ.to_vec())),
        Config::B => scan_b(idx, &mut |occ| visit(occ.to_vec())),
        Config::C => scan_c(idx, &mut |occ| visit(occ.to_vec())),
        Config::D => scan_d(idx, &mut |occ| visit(occ.to_vec())),
        Config::APlus => scan_a(idx, &mut |occ| {
            for c in plus_completions(idx, occ, Config::A) {
                let mut full = vec![occ[0], occ[1], occ[2], c];
                full.sort_unstable();
                if visit(full) {
                    return true;
                }
            }
            false
        }),
        Config::BPlus => scan_b(idx, &mut |occ| {
            for c in plus_completions(idx, occ, Config::B) {
                let mut full = vec![occ[0], occ[1], occ[2], c];
                full.sort_unstable();
                if visit(full) {
                    return true;
                }
            }
            false
        }),
    }
}

/// Every unordered triple set of the system inducing the pattern, each
/// listed once, in lexicographic index order.
pub fn find_occurrences(ts: &TripleSystem, config: Config) -> Vec<Occurrence> {
    let idx = Index::new(ts);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    scan_config(&idx, config, &mut |occ| {
        seen.insert(occ);
        false
    });
    seen.into_iter()
        .map(|indices| Occurrence {
            config,
            triples: indices.iter().map(|&i| ts.triples()[i]).collect(),
        })
        .collect()
}

/// Does the system contain the configuration at all?
pub fn contains_config(ts: &TripleSystem, config: Config) -> bool {
    let idx = Index::new(ts);
    scan_config(&idx, config, &mut |_| true)
}

/// True iff none of the given configurations occurs; short-circuits.
pub fn is_free(ts: &TripleSystem, forbidden: &[Config]) -> bool {
    let idx = Index::new(ts);
    for &config in forbidden {
        if scan_config(&idx, config, &mut |_| true) {
            return false;
        }
    }
    true
}

/// A 3-cycle in the general hypergraph sense: three distinct edges and three
/// distinct vertices linked cyclically. Works for edges of any sizes.
pub fn mixed_family_has_triangle(edges: &[u128]) -> bool {
    find_triangle_in_masks(edges).is_some()
}

fn find_triangle_in_masks(edges: &[u128]) -> Option<([usize; 3], [usize; 3])> {
    let m = edges.len();
    for i in 0..m {
        for j in i + 1..m {
            if edges[i] & edges[j] == 0 {
                continue;
            }
            for k in j + 1..m {
                if edges[i] & edges[k] == 0 || edges[j] & edges[k] == 0 {
                    continue;
                }
                if let Some(cycle) = cycle_assignment(edges[i], edges[j], edges[k]) {
                    return Some(([i, j, k], cycle));
                }
            }
        }
    }
    None
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Distinct vertices x1 in E3&E1, x2 in E1&E2, x3 in E2&E3, lexicographically
/// least if one exists.
fn cycle_assignment(e1: u128, e2: u128, e3: u128) -> Option<[usize; 3]> {
    for x1 in bits(e3 & e1) {
        for x2 in bits(e1 & e2) {
            if x2 == x1 {
                continue;
            }
            for x3 in bits(e2 & e3) {
                if x3 != x1 && x3 != x2 {
                    return Some([x1, x2, x3]);
                }
            }
        }
    }
    None
}

/// All 3-cycles of the system per the general definition: each unordered set
/// of three triples that closes a cycle, with one witness vertex cycle.
pub fn find_general_triangles(ts: &TripleSystem) -> Vec<(Vec<Triple>, [usize; 3])> {
    let masks: Vec<u128> = ts.triples().iter().map(Triple::mask).collect();
    let m = masks.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if masks[i] & masks[j] == 0 {
                continue;
            }
            for k in j + 1..m {
                if masks[i] & masks[k] == 0 || masks[j] & masks[k] == 0 {
                    continue;
                }
                if let Some(cycle) = cycle_assignment(masks[i], masks[j], masks[k]) {
                    out.push((
                        vec![ts.triples()[i], ts.triples()[j], ts.triples()[k]],
                        cycle,
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[[usize; 3]]) -> TripleSystem {
        TripleSystem::build(n, sets.iter().copied()).unwrap()
    }

    fn five_ring() -> TripleSystem {
        sys(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]])
    }

    #[test]
    fn patterns_detect_themselves() {
        for c in [Config::A, Config::B, Config::C, Config::D, Config::APlus, Config::BPlus] {
            let p = c.pattern();
            let occs = find_occurrences(&p, c);
            assert_eq!(occs.len(), 1, "{c}");
            assert_eq!(occs[0].triples.len(), c.triple_count());
        }
    }

    #[test]
    fn classify_matches_patterns() {
        for c in Config::TRIANGLES {
            let p = c.pattern();
            let m: Vec<u128> = p.triples().iter().map(|t| t.mask()).collect();
            assert_eq!(classify3(m[0], m[1], m[2]), Some(c));
        }
        // 3-crown and sunflower are not triangles
        let crown = sys(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let m: Vec<u128> = crown.triples().iter().map(|t| t.mask()).collect();
        assert_eq!(classify3(m[0], m[1], m[2]), None);
        let sunflower = sys(7, &[[0, 1, 2], [0, 3, 4], [0, 5, 6]]);
        let m: Vec<u128> = sunflower.triples().iter().map(|t| t.mask()).collect();
        assert_eq!(classify3(m[0], m[1], m[2]), None);
    }

    #[test]
    fn five_ring_has_five_b_occurrences() {
        let ring = five_ring();
        assert_eq!(find_occurrences(&ring, Config::B).len(), 5);
        assert!(is_free(&ring, &[Config::A, Config::C]));
    }

    #[test]
    fn complete_k4_contains_c_four_times() {
        let f = TripleSystem::complete(4);
        assert_eq!(find_occurrences(&f, Config::C).len(), 4);
        assert!(is_free(&f, &[Config::A, Config::B, Config::D]));
    }

    #[test]
    fn general_triangles_in_c() {
        let c = Config::C.pattern();
        assert!(!find_general_triangles(&c).is_empty());
    }

    #[test]
    fn config_set_parsing() {
        let s: ConfigSet = "A,B,D".parse().unwrap();
        assert_eq!(s.to_string(), "ABD");
        let s2: ConfigSet = "ABD".parse().unwrap();
        assert_eq!(s, s2);
        let s3: ConfigSet = "AB+".parse().unwrap();
        assert!(s3.contains(Config::BPlus));
        assert_eq!(ConfigSet::all_triangle_subsets().len(), 15);
    }
}
