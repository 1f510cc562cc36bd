//! Exact computation of `ex(n, S)` by branch and bound over candidate
//! triples.
//!
//! Candidates are the `C(n,3)` triples in lexicographic order; the search
//! adds them in increasing order, keeping an admissibility mask that drops
//! any candidate whose addition would close a forbidden configuration with
//! two (or, for the augmented patterns, three) triples already chosen.
//! Symmetry is broken by orderly generation: a prefix of up to three triples
//! is extended only when its sorted index vector is lexicographically least
//! over all relabelings, which is compatible with the drop-largest parent
//! rule.  Optimality always comes from exhausting the pruned tree; the
//! closed-form catalog can optionally tighten the bound but is off by
//! default so oracle runs stay independent of the formulas they confirm.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::canon::{canonical_form_with_limit, canonical_relabel};
use crate::config::{classify3, Config, ConfigSet};
use crate::constructions;
use crate::error::{Error, Result};
use crate::formula::{formula_value, FormulaStatus};
use crate::system::{Triple, TripleSystem};

/// Searches above this many vertices need [`SearchOptions::allow_nine`].
pub const DEFAULT_SEARCH_LIMIT: usize = 8;
/// Hard cap: candidate sets are 128-bit masks.
pub const MAX_SEARCH_N: usize = 9;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub enumerate: bool,
    pub node_limit: u64,
    pub threads: usize,
    /// Permit n = 9 (still exact, considerably slower).
    pub allow_nine: bool,
    /// Use unconditionally valid catalog values as additional pruning bounds.
    /// Off by default so that oracle-vs-formula comparisons are not circular.
    pub use_formula_bound: bool,
    /// Orderly-generation depth (lex-min prefix checks up to this size).
    pub orderly_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            enumerate: false,
            node_limit: u64::MAX,
            threads: 1,
            allow_nine: false,
            use_formula_bound: false,
            orderly_depth: 3,
        }
    }
}

/// Outcome of one exact search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub forbidden: ConfigSet,
    pub max_size: usize,
    /// Canonical representatives; all optimum classes when enumerating,
    /// otherwise the canonically smallest optimum found.
    pub witnesses: Vec<TripleSystem>,
    pub class_count: Option<usize>,
    pub nodes_expanded: u64,
    pub proved_optimal: bool,
}

/// A construction matching the catalog value, used to prime the search.
pub fn lower_bound_witness(n: usize, set: &ConfigSet) -> Result<TripleSystem> {
    use constructions as cons;
    let has = |c: Config| set.contains(c);
    let mask = (has(Config::A) as u8)
        | (has(Config::B) as u8) << 1
        | (has(Config::C) as u8) << 2
        | (has(Config::D) as u8) << 3;
    let no_construction = || Error::NoConstruction(format!("n = {n}, forbidden = {set}"));

    // below every pattern size the complete system is free
    let v_min = set
        .configs()
        .iter()
        .map(|c| c.vertex_count())
        .min()
        .unwrap_or(usize::MAX);
    if n < v_min {
        return Ok(TripleSystem::complete(n));
    }

    match mask {
        0b0000 => Ok(TripleSystem::complete(n)),
        0b1111 => cons::gyarfas(n, cons::optimal_k(n)[0]),
        0b1100 | 0b1101 => Ok(cons::tournament_transitive_system(n)),
        0b1001 => {
            if n % 2 == 0 {
                cons::ft_plus(n)
            } else {
                cons::ft_pm(n)
            }
        }
        0b0111 => cons::turan_star(n),
        0b0101 => {
            if n % 2 == 0 || n == 3 {
                cons::turan_star(n)
            } else {
                let mut f = cons::five_ring();
                while f.n() < n {
                    f = cons::two_extension(&f);
                }
                Ok(f)
            }
        }
        0b0011 | 0b0001 => cons::full_star(n),
        0b0010 | 0b0110 => cons::complete_3partite(n),
        0b1011 => match n {
            7 => {
                let mut t = Vec::new();
                for b in [[0usize, 1, 2, 3], [0, 4, 5, 6]] {
                    for skip in 0..4 {
                        let v: Vec<usize> =
                            (0..4).filter(|&i| i != skip).map(|i| b[i]).collect();
                        t.push([v[0], v[1], v[2]]);
                    }
                }
                TripleSystem::build(7, t)
            }
            _ if n >= 8 => cons::gyarfas(n, cons::optimal_k(n)[0]),
            _ => Err(no_construction()),
        },
        0b1000 | 0b1010 => cons::designs::dfree_from_full_packing(n).map_err(|_| no_construction()),
        0b1110 => {
            if n % 12 == 1 || n % 12 == 4 {
                let blocks = crate::packing::find_k4_packing(
                    &crate::graph::Graph::complete(n),
                    true,
                    100_000_000,
                )
                .map_err(|_| no_construction())?;
                let copies = cons::designs::hm_copies_from_k4_blocks(&blocks);
                cons::designs::bcd_construction(n, 2, &copies)
            } else {
                Err(no_construction())
            }
        }
        0b0100 => Err(no_construction()),
        _ => Err(no_construction()),
    }
}

/// Unconditionally valid upper bound from the catalog, if any.
fn table_upper_bound(n: usize, set: &ConfigSet) -> Option<usize> {
    let mut best: Option<usize> = None;
    for sub in ConfigSet::all_triangle_subsets() {
        if !sub.is_subset_of(set) {
            continue;
        }
        let eval = match formula_value(n, &sub) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let usable = match (eval.status, sub.to_string().as_str()) {
            (FormulaStatus::Exact, _) => true,
            // the mod-12 row values are valid upper bounds at every n
            (FormulaStatus::ExactForLargeN, "D" | "BD") => true,
            _ => false,
        };
        if usable {
            if let Some(v) = eval.value {
                let v = v as usize;
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
    }
    best
}

struct SearchContext {
    n: usize,
    masks: Vec<u128>,
    candidates: Vec<Triple>,
    forbidden: Vec<Config>,
    extended: bool,
    enumerate: bool,
    node_limit: u64,
    canon_limit: usize,
    bound_cap: Option<usize>,
    orderly_depth: usize,
    shared_best: AtomicUsize,
}

#[derive(Default)]
struct TaskState {
    nodes: u64,
    aborted: bool,
    /// canonical form -> representative, for every system at the current best size
    hits: std::collections::BTreeMap<Vec<u8>, TripleSystem>,
    hits_size: usize,
}

impl SearchContext {
    fn candidate_admissible(&self, chosen: &[usize], adding: usize, cand: usize) -> bool {
        let mc = self.masks[cand];
        let ma = self.masks[adding];
        if !self.extended {
            for &f in chosen {
                if let Some(c) = classify3(mc, ma, self.masks[f]) {
                    if self.forbidden.contains(&c) {
                        return false;
                    }
                }
            }
            if let Some(c) = classify3(mc, ma, ma) {
                // degenerate, cannot happen: kept for clarity of intent
                let _ = c;
            }
            true
        } else {
            // triangles among {cand, adding, f}
            for &f in chosen {
                if let Some(c) = classify3(mc, ma, self.masks[f]) {
                    if self.forbidden.contains(&c) {
                        return false;
                    }
                }
            }
            // augmented patterns among {cand, adding, f, g}
            for (i, &f) in chosen.iter().enumerate() {
                for &g in &chosen[i + 1..] {
                    if let Some(c) = classify4_plus(mc, ma, self.masks[f], self.masks[g]) {
                        if self.forbidden.contains(&c) {
                            return false;
                        }
                    }
                }
            }
            true
        }
    }

    fn record(&self, state: &mut TaskState, chosen: &[usize]) {
        let size = chosen.len();
        let best = self.shared_best.load(Ordering::Relaxed);
        if size < best || (size == best && size < state.hits_size) {
            return;
        }
        if size > best {
            self.shared_best.fetch_max(size, Ordering::Relaxed);
        }
        if size > state.hits_size {
            state.hits.clear();
            state.hits_size = size;
        }
        if size == state.hits_size {
            let ts = self.system_of(chosen);
            let key = canonical_form_with_limit(&ts, self.canon_limit).expect("within limit");
            if self.enumerate {
                state
                    .hits
                    .entry(key)
                    .or_insert_with(|| canonical_relabel(&ts, self.canon_limit).expect("ok"));
            } else {
                // keep only the canonically least witness
                let keep = state
                    .hits
                    .keys()
                    .next()
                    .map(|k| key < *k)
                    .unwrap_or(true);
                if keep {
                    state.hits.clear();
                    state.hits.insert(
                        key,
                        canonical_relabel(&ts, self.canon_limit).expect("ok"),
                    );
                }
            }
        }
    }

    fn system_of(&self, chosen: &[usize]) -> TripleSystem {
        TripleSystem::from_triples(
            self.n,
            chosen.iter().map(|&i| self.candidates[i]).collect(),
        )
    }

    fn dfs(&self, chosen: &mut Vec<usize>, adm: u128, from: usize, state: &mut TaskState) {
        state.nodes += 1;
        if state.nodes > self.node_limit {
            state.aborted = true;
            return;
        }
        self.record(state, chosen);

        let mut iter = adm >> from << from;
        while iter != 0 {
            let i = iter.trailing_zeros() as usize;
            iter &= iter - 1;

            // admissibility after adding i: drop conflicts with i
            let mut next_adm = adm & !((1u128 << (i + 1)) - 1);
            let mut scan = next_adm;
            chosen.push(i);
            while scan != 0 {
                let j = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if !self.candidate_admissible(&chosen[..chosen.len() - 1], i, j) {
                    next_adm &= !(1u128 << j);
                }
            }

            // bound: even taking every remaining admissible candidate
            let mut potential = chosen.len() + next_adm.count_ones() as usize;
            if let Some(cap) = self.bound_cap {
                potential = potential.min(cap);
            }
            let best = self.shared_best.load(Ordering::Relaxed);
            let viable = if self.enumerate {
                potential >= best
            } else {
                potential > best || (potential == best && chosen.len() == potential)
            };
            let orderly_ok = chosen.len() > self.orderly_depth
                || self.is_lexmin_prefix(chosen);
            if viable && orderly_ok {
                self.dfs(chosen, next_adm, i + 1, state);
            }
            chosen.pop();
            if state.aborted {
                return;
            }
        }
    }

    /// Is the sorted candidate-index vector of this prefix lexicographically
    /// least over all vertex relabelings?
    fn is_lexmin_prefix(&self, chosen: &[usize]) -> bool {
        let current: Vec<usize> = chosen.to_vec();
        let triples: Vec<[usize; 3]> = chosen
            .iter()
            .map(|&i| self.candidates[i].vertices())
            .collect();

        let mut label = vec![usize::MAX; self.n];
        for (fi, f) in triples.iter().enumerate() {
            let mut order = [0usize, 1, 2];
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            for p in perms {
                order = p;
                // map f's vertices onto labels 0,1,2 in this order
                for slot in label.iter_mut() {
                    *slot = usize::MAX;
                }
                for (new, &pos) in order.iter().enumerate() {
                    label[f[pos]] = new;
                }
                // remaining span vertices, to be permuted over labels 3..
                let mut rest: Vec<usize> = Vec::new();
                for t in &triples {
                    for &v in t {
                        if label[v] == usize::MAX && !rest.contains(&v) {
                            rest.push(v);
                        }
                    }
                }
                rest.sort_unstable();
                if self.smaller_assignment_exists(&triples, fi, &mut label, &mut rest, &current) {
                    return false;
                }
            }
        }
        true
    }

    fn smaller_assignment_exists(
        &self,
        triples: &[[usize; 3]],
        pinned: usize,
        label: &mut [usize],
        rest: &mut Vec<usize>,
        current: &[usize],
    ) -> bool {
        let k = rest.len();
        let mut found = false;
        permute(rest, 0, &mut |order| {
            if found {
                return;
            }
            for (offset, &v) in order.iter().enumerate() {
                label[v] = 3 + offset;
            }
            let mut indices: Vec<usize> = Vec::with_capacity(triples.len());
            for t in triples {
                let mut img = [label[t[0]], label[t[1]], label[t[2]]];
                img.sort_unstable();
                let tr = Triple::new(img[0], img[1], img[2]).expect("distinct");
                let idx = self
                    .candidates
                    .binary_search(&tr)
                    .expect("image stays in range");
                indices.push(idx);
            }
            indices.sort_unstable();
            if indices.as_slice() < current {
                found = true;
            }
            for &v in order.iter() {
                label[v] = usize::MAX;
            }
        });
        let _ = (k, pinned);
        found
    }
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Four triples forming an augmented pattern (a triangle plus its central
/// triple)?
fn classify4_plus(m1: u128, m2: u128, m3: u128, m4: u128) -> Option<Config> {
    let ms = [m1, m2, m3, m4];
    for leave in 0..4 {
        let mut rest = Vec::with_capacity(3);
        for (i, &m) in ms.iter().enumerate() {
            if i != leave {
                rest.push(m);
            }
        }
        let central = ms[leave];
        match classify3(rest[0], rest[1], rest[2]) {
            Some(Config::A) => {
                let shared =
                    (rest[0] & rest[1]) | (rest[0] & rest[2]) | (rest[1] & rest[2]);
                if central == shared {
                    return Some(Config::APlus);
                }
            }
            Some(Config::B) => {
                // duo shares a pair; central = both extras plus one shared vertex
                for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                    let shared = rest[a] & rest[b];
                    if shared.count_ones() != 2 {
                        continue;
                    }
                    let extras = (rest[a] ^ rest[b]) & !shared;
                    let _ = c;
                    if (central & extras) == extras
                        && (central & shared).count_ones() == 1
                        && central.count_ones() == 3
                    {
                        return Some(Config::BPlus);
                    }
                }
            }
            _ => {}
        }
    }
    None
}

/// Exact maximum size of an `S`-free system on `n` vertices, with witnesses.
pub fn max_free(n: usize, set: &ConfigSet, enumerate: bool) -> Result<SearchResult> {
    let opts = SearchOptions { enumerate, ..SearchOptions::default() };
    max_free_with(n, set, &opts)
}

pub fn max_free_with(n: usize, set: &ConfigSet, opts: &SearchOptions) -> Result<SearchResult> {
    if !set.only_triangles() {
        return Err(Error::InvalidParameter(
            "search over augmented patterns goes through max_free_extended".into(),
        ));
    }
    max_free_impl(n, set, opts)
}

/// As [`max_free_with`], additionally accepting `A+`/`B+` in the forbidden
/// set.
pub fn max_free_extended(n: usize, set: &ConfigSet, opts: &SearchOptions) -> Result<SearchResult> {
    max_free_impl(n, set, opts)
}

fn max_free_impl(n: usize, set: &ConfigSet, opts: &SearchOptions) -> Result<SearchResult> {
    let limit = if opts.allow_nine { MAX_SEARCH_N } else { DEFAULT_SEARCH_LIMIT };
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }

    let candidates = TripleSystem::complete(n).triples().to_vec();
    let masks: Vec<u128> = candidates.iter().map(Triple::mask).collect();
    let extended = !set.only_triangles();

    let ctx = SearchContext {
        n,
        masks,
        candidates,
        forbidden: set.configs().to_vec(),
        extended,
        enumerate: opts.enumerate,
        node_limit: opts.node_limit,
        canon_limit: n.max(crate::canon::DEFAULT_CANON_LIMIT),
        bound_cap: if opts.use_formula_bound && set.only_triangles() && !set.is_empty() {
            table_upper_bound(n, set)
        } else {
            None
        },
        orderly_depth: opts.orderly_depth,
        shared_best: AtomicUsize::new(0),
    };

    // prime with a known construction when one exists
    if let Ok(witness) = lower_bound_witness(n, set) {
        debug_assert!(crate::config::is_free(&witness, set.configs()));
        ctx.shared_best.store(witness.len(), Ordering::Relaxed);
    }

    let mut state = TaskState::default();
    if opts.threads <= 1 {
        let mut chosen = Vec::new();
        ctx.dfs(&mut chosen, !0u128 >> (128 - ctx.candidates.len().max(1)), 0, &mut state);
        if ctx.candidates.is_empty() {
            state.nodes += 1;
            ctx.record(&mut state, &[]);
        }
    } else {
        state = parallel_search(&ctx, opts.threads)?;
    }

    // the empty system is always free; make sure it is recorded
    if state.hits.is_empty() {
        ctx.record(&mut state, &[]);
    }

    let max_size = state.hits_size.max(ctx.shared_best.load(Ordering::Relaxed));
    let witnesses: Vec<TripleSystem> = state.hits.into_values().collect();
    Ok(SearchResult {
        n,
        forbidden: set.clone(),
        max_size,
        class_count: if opts.enumerate { Some(witnesses.len()) } else { None },
        witnesses,
        nodes_expanded: state.nodes,
        proved_optimal: !state.aborted,
    })
}

fn parallel_search(ctx: &SearchContext, threads: usize) -> Result<TaskState> {
    // sequential pass down to depth 2, collecting depth-2 frontier states
    struct Frontier {
        chosen: Vec<usize>,
        adm: u128,
        from: usize,
    }
    let mut frontier: Vec<Frontier> = Vec::new();
    let mut seed = TaskState::default();
    let full = !0u128 >> (128 - ctx.candidates.len().max(1));

    ctx.record(&mut seed, &[]);
    seed.nodes += 1;
    let mut chosen = Vec::new();
    let mut iter = full;
    while iter != 0 {
        let i = iter.trailing_zeros() as usize;
        iter &= iter - 1;
        chosen.push(i);
        if ctx.is_lexmin_prefix(&chosen) {
            seed.nodes += 1;
            ctx.record(&mut seed, &chosen);
            let mut adm = full & !((1u128 << (i + 1)) - 1);
            let mut scan = adm;
            while scan != 0 {
                let j = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if !ctx.candidate_admissible(&[], i, j) {
                    adm &= !(1u128 << j);
                }
            }
            frontier.push(Frontier { chosen: chosen.clone(), adm, from: i + 1 });
        }
        chosen.pop();
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let results: Vec<TaskState> = pool.install(|| {
        frontier
            .par_iter()
            .map(|f| {
                let mut st = TaskState::default();
                let mut chosen = f.chosen.clone();
                ctx.dfs(&mut chosen, f.adm, f.from, &mut st);
                st
            })
            .collect()
    });

    // deterministic merge: global best size, union of canonical maps at it
    let mut merged = seed;
    for st in results {
        merged.nodes += st.nodes;
        merged.aborted |= st.aborted;
        if st.hits_size > merged.hits_size {
            merged.hits = st.hits;
            merged.hits_size = st.hits_size;
        } else if st.hits_size == merged.hits_size {
            for (k, v) in st.hits {
                merged.hits.entry(k).or_insert(v);
            }
        }
    }
    if !ctx.enumerate && merged.hits.len() > 1 {
        let first = merged.hits.keys().next().cloned().unwrap();
        merged.hits.retain(|k, _| *k == first);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> ConfigSet {
        s.parse().unwrap()
    }

    #[test]
    fn nothing_forbidden_gives_complete() {
        let r = max_free(5, &ConfigSet::default(), false).unwrap();
        assert_eq!(r.max_size, 10);
        assert!(r.proved_optimal);
    }

    #[test]
    fn all_four_forbidden_small() {
        assert_eq!(max_free(4, &set("ABCD"), false).unwrap().max_size, 2);
        assert_eq!(max_free(5, &set("ABCD"), false).unwrap().max_size, 3);
        assert_eq!(max_free(6, &set("ABCD"), false).unwrap().max_size, 4);
    }

    #[test]
    fn ac_at_five_is_the_ring() {
        let r = max_free(5, &set("AC"), true).unwrap();
        assert_eq!(r.max_size, 5);
        assert_eq!(r.class_count, Some(1));
        assert!(crate::canon::are_isomorphic(&r.witnesses[0], &constructions::five_ring()).unwrap());
    }

    #[test]
    fn enumerate_abcd_at_six_finds_both_partitions() {
        let r = max_free(6, &set("ABCD"), true).unwrap();
        assert_eq!(r.max_size, 4);
        assert_eq!(r.class_count, Some(2));
    }

    #[test]
    fn witnesses_are_free_and_right_sized() {
        for s in ["CD", "AD", "BC"] {
            let r = max_free(6, &set(s), false).unwrap();
            let w = &r.witnesses[0];
            assert_eq!(w.len(), r.max_size);
            assert!(crate::config::is_free(w, set(s).configs()));
        }
    }

    #[test]
    fn search_limit_applies() {
        assert!(max_free(9, &set("ABCD"), false).is_err());
        let opts = SearchOptions { allow_nine: true, ..Default::default() };
        assert!(max_free_with(9, &set("ABCD"), &opts).is_ok());
        assert!(max_free_with(10, &set("ABCD"), &opts).is_err());
    }

    #[test]
    fn node_limit_reports_unproved() {
        let opts = SearchOptions { node_limit: 5, ..Default::default() };
        let r = max_free_with(7, &set("CD"), &opts).unwrap();
        assert!(!r.proved_optimal);
    }

    #[test]
    fn plus_patterns_require_extended_entry_point() {
        let s: ConfigSet = "A+B+".parse().unwrap();
        assert!(max_free(6, &s, false).is_err());
        let opts = SearchOptions::default();
        let r = max_free_extended(5, &s, &opts).unwrap();
        // full star on 5 has 6 triples and avoids both augmented patterns
        assert_eq!(r.max_size, 6);
    }

    #[test]
    fn thread_count_does_not_change_the_answer() {
        let seq = max_free(6, &set("AC"), true).unwrap();
        let opts = SearchOptions { enumerate: true, threads: 3, ..Default::default() };
        let par = max_free_with(6, &set("AC"), &opts).unwrap();
        assert_eq!(seq.max_size, par.max_size);
        assert_eq!(seq.class_count, par.class_count);
        let a: Vec<_> = seq.witnesses.iter().map(|w| w.to_string()).collect();
        let b: Vec<_> = par.witnesses.iter().map(|w| w.to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn lower_bound_witnesses_match_catalog() {
        for (n, s) in [(8, "ABCD"), (5, "AC"), (6, "CD"), (7, "ABD")] {
            let set: ConfigSet = s.parse().unwrap();
            let w = lower_bound_witness(n, &set).unwrap();
            assert!(crate::config::is_free(&w, set.configs()));
            let v = formula_value(n, &set).unwrap().value.unwrap();
            assert_eq!(w.len() as u64, v, "{s} at {n}");
        }
    }
}
