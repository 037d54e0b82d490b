//! Exhaustive generation of bicyclic graphs at small orders, plus degree
//! sequence realizability (Erdős–Gallai) and deterministic witness
//! construction (Havel–Hakimi followed by degree-preserving 2-swaps).
//!
//! Generation walks `(n + 1)`-subsets of the candidate edge set in
//! lexicographic order with three prunes: a running degree cap, a union-find
//! bound on how many components the remaining edge budget can still join,
//! and a freeze rule for vertices whose candidate edges have all been
//! passed. With `dedup` on, a graph is emitted only if it is the
//! lexicographically minimal labeling within its isomorphism class, so each
//! unlabeled graph appears exactly once.
//!
//! Work splits across threads by partitioning on the first two chosen edge
//! indices; per-prefix results merge in prefix order, so any job count
//! produces byte-identical output to a single-threaded run.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::formats::graph6_from_bits;
use crate::graph::Graph;
use crate::histogram::{check_bicyclic_identities, DegreeHistogram, HistogramError};

/// Hard representation limit: adjacency rows in `u16`, edge-subset masks in
/// `u64` (`C(11,2) = 55` candidate edges).
pub const MAX_ENUM_ORDER: usize = 11;

/// Default budget guard; exhaustive search beyond this takes long enough
/// that callers must opt in explicitly.
pub const DEFAULT_ENUM_CAP: usize = 9;

const MAX_VERTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {0} is below 4, the smallest bicyclic order")]
    OrderTooSmall(usize),
    #[error(
        "order {n} exceeds the enumeration budget {cap}; raise the cap explicitly to override"
    )]
    OverBudget { n: usize, cap: usize },
    #[error("order {n} exceeds the hard limit {limit} of this enumerator")]
    OrderAboveLimit { n: usize, limit: usize },
    #[error("at most one of the exact and at-most degree filters may be set")]
    ConflictingFilters,
    #[error("degree filter {value} outside 3..={max}")]
    FilterOutOfRange { value: usize, max: usize },
    #[error("worker pool: {0}")]
    WorkerPool(String),
}

/// What to enumerate and how.
#[derive(Debug, Clone)]
pub struct EnumSpec {
    pub n: usize,
    /// Keep only graphs whose maximum degree is exactly this value.
    pub delta_exact: Option<usize>,
    /// Keep only graphs whose maximum degree is at most this value.
    pub delta_at_most: Option<usize>,
    /// Emit one representative per isomorphism class.
    pub dedup: bool,
    /// Worker count; `0` and `1` both mean single-threaded.
    pub jobs: usize,
    /// Budget guard, [`DEFAULT_ENUM_CAP`] unless overridden.
    pub cap: usize,
}

impl EnumSpec {
    pub fn new(n: usize) -> Self {
        EnumSpec {
            n,
            delta_exact: None,
            delta_at_most: None,
            dedup: false,
            jobs: 1,
            cap: DEFAULT_ENUM_CAP,
        }
    }
}

/// Outcome of an enumeration run. `argmax_graph6` holds the canonical
/// graph6 form of every isomorphism class attaining `max_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumSummary {
    pub count: u64,
    pub max_f: Option<u64>,
    pub argmax_graph6: BTreeSet<String>,
}

pub fn enumerate_bicyclic(spec: &EnumSpec) -> Result<EnumSummary, EnumError> {
    let searcher = Searcher::from_spec(spec, false)?;
    let acc = searcher.run(spec.jobs)?;
    Ok(acc.into_summary())
}

/// Like [`enumerate_bicyclic`], additionally returning every emitted graph
/// in deterministic (single-threaded depth-first) order.
pub fn enumerate_bicyclic_collect(spec: &EnumSpec) -> Result<(EnumSummary, Vec<Graph>), EnumError> {
    let searcher = Searcher::from_spec(spec, true)?;
    let acc = searcher.run(spec.jobs)?;
    let graphs = acc
        .collected
        .iter()
        .map(|&mask| searcher.graph_from_mask(mask))
        .collect();
    Ok((acc.into_summary(), graphs))
}

/// Stream every emitted graph to `visit` without buffering, in the same
/// deterministic order as [`enumerate_bicyclic_collect`]. Always runs
/// single-threaded; `spec.jobs` is ignored.
pub fn enumerate_bicyclic_visit<F: FnMut(&Graph)>(
    spec: &EnumSpec,
    mut visit: F,
) -> Result<EnumSummary, EnumError> {
    let searcher = Searcher::from_spec(spec, false)?;
    let mut acc = Acc::default();
    let st = State::fresh(searcher.n);
    searcher.walk(&st, 0, searcher.m, 0, &mut |s, _| {
        if searcher.complete(s, &mut acc) {
            visit(&searcher.graph_from_mask(s.chosen));
        }
    });
    Ok(acc.into_summary())
}

// ---------------------------------------------------------------------------
// search core
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct State {
    adj: [u16; MAX_VERTS],
    deg: [u8; MAX_VERTS],
    parent: [u8; MAX_VERTS],
    size: [u8; MAX_VERTS],
    components: u8,
    max_deg: u8,
    chosen: u64,
}

impl State {
    fn fresh(n: usize) -> Self {
        let mut parent = [0u8; MAX_VERTS];
        for (v, slot) in parent.iter_mut().enumerate() {
            *slot = v as u8;
        }
        State {
            adj: [0; MAX_VERTS],
            deg: [0; MAX_VERTS],
            parent,
            size: [1; MAX_VERTS],
            components: n as u8,
            max_deg: 0,
            chosen: 0,
        }
    }

    fn root(&self, mut v: u8) -> u8 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    fn add_edge(&mut self, idx: usize, a: u8, b: u8) {
        self.adj[a as usize] |= 1 << b;
        self.adj[b as usize] |= 1 << a;
        self.deg[a as usize] += 1;
        self.deg[b as usize] += 1;
        self.max_deg = self
            .max_deg
            .max(self.deg[a as usize])
            .max(self.deg[b as usize]);
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
                (ra, rb)
            } else {
                (rb, ra)
            };
            self.parent[small as usize] = big;
            self.size[big as usize] += self.size[small as usize];
            self.components -= 1;
        }
        self.chosen |= 1 << idx;
    }
}

struct Searcher {
    n: usize,
    m: usize,
    pairs: Vec<(u8, u8)>,
    cap_deg: u8,
    delta_exact: Option<u8>,
    dedup: bool,
    collect: bool,
}

#[derive(Default)]
struct Acc {
    count: u64,
    max_f: Option<u64>,
    argmax: BTreeSet<String>,
    collected: Vec<u64>,
}

impl Acc {
    fn into_summary(self) -> EnumSummary {
        EnumSummary {
            count: self.count,
            max_f: self.max_f,
            argmax_graph6: self.argmax,
        }
    }
}

fn merge(mut a: Acc, b: Acc) -> Acc {
    a.count += b.count;
    match (a.max_f, b.max_f) {
        (None, Some(_)) => {
            a.max_f = b.max_f;
            a.argmax = b.argmax;
        }
        (Some(x), Some(y)) if y > x => {
            a.max_f = b.max_f;
            a.argmax = b.argmax;
        }
        (Some(x), Some(y)) if y == x => {
            a.argmax.extend(b.argmax);
        }
        _ => {}
    }
    a.collected.extend(b.collected);
    a
}

impl Searcher {
    fn from_spec(spec: &EnumSpec, collect: bool) -> Result<Self, EnumError> {
        let n = spec.n;
        if n < 4 {
            return Err(EnumError::OrderTooSmall(n));
        }
        if n > MAX_ENUM_ORDER {
            return Err(EnumError::OrderAboveLimit {
                n,
                limit: MAX_ENUM_ORDER,
            });
        }
        if n > spec.cap {
            return Err(EnumError::OverBudget { n, cap: spec.cap });
        }
        if spec.delta_exact.is_some() && spec.delta_at_most.is_some() {
            return Err(EnumError::ConflictingFilters);
        }
        for filter in [spec.delta_exact, spec.delta_at_most].into_iter().flatten() {
            if !(3..=n - 1).contains(&filter) {
                return Err(EnumError::FilterOutOfRange {
                    value: filter,
                    max: n - 1,
                });
            }
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in (a + 1)..n {
                pairs.push((a as u8, b as u8));
            }
        }
        let cap_deg = spec.delta_exact.or(spec.delta_at_most).unwrap_or(n - 1) as u8;
        Ok(Searcher {
            n,
            m: n + 1,
            pairs,
            cap_deg,
            delta_exact: spec.delta_exact.map(|d| d as u8),
            dedup: spec.dedup,
            collect,
        })
    }

    /// Depth-first over increasing edge indices; `leaf` fires when `need`
    /// drops to `stop_need`. With `stop_need = 0` every leaf is a complete,
    /// connected candidate; with a larger value leaves are resumable
    /// prefixes whose continuation starts at the passed index.
    fn walk<F: FnMut(&State, usize)>(
        &self,
        st: &State,
        start: usize,
        need: usize,
        stop_need: usize,
        leaf: &mut F,
    ) {
        if need == stop_need {
            leaf(st, start);
            return;
        }
        let total = self.pairs.len();
        let mut j = start;
        while j + need <= total {
            let (a, b) = self.pairs[j];
            if st.deg[a as usize] < self.cap_deg && st.deg[b as usize] < self.cap_deg {
                let mut child = *st;
                child.add_edge(j, a, b);
                // the remaining budget must still be able to join all
                // components, and to lift some vertex to the exact target
                let feasible = (child.components as usize) <= need
                    && self
                        .delta_exact
                        .is_none_or(|dx| child.max_deg as usize + need > dx as usize);
                if feasible {
                    self.walk(&child, j + 1, need - 1, stop_need, leaf);
                }
            }
            j += 1;
            if j < total {
                let next_a = self.pairs[j].0;
                if next_a > a {
                    // rows below next_a are final in this frame; an isolated
                    // vertex there can never be reached again
                    for v in a..next_a {
                        if st.deg[v as usize] == 0 {
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Apply the completion filters and record the graph; returns whether it
    /// was emitted.
    fn complete(&self, st: &State, acc: &mut Acc) -> bool {
        debug_assert_eq!(st.components, 1, "pruning keeps only connected leaves");
        if let Some(dx) = self.delta_exact {
            if st.max_deg != dx {
                return false;
            }
        }
        if self.dedup && !is_canonical(&st.adj, &st.deg, self.n) {
            return false;
        }
        let f: u64 = (0..self.n).map(|v| (st.deg[v] as u64).pow(3)).sum();
        acc.count += 1;
        if self.collect {
            acc.collected.push(st.chosen);
        }
        if acc.max_f.is_none_or(|mf| f > mf) {
            acc.max_f = Some(f);
            acc.argmax.clear();
            acc.argmax.insert(self.canonical_string(st));
        } else if acc.max_f == Some(f) {
            let s = self.canonical_string(st);
            acc.argmax.insert(s);
        }
        true
    }

    fn canonical_string(&self, st: &State) -> String {
        if self.dedup {
            // emitted graphs already carry the canonical labeling
            graph6_from_bits(self.n, |i, j| (st.adj[i] >> j) & 1 == 1)
        } else {
            canonical_g6(&st.adj, &st.deg, self.n)
        }
    }

    fn run(&self, jobs: usize) -> Result<Acc, EnumError> {
        #[cfg(feature = "parallel")]
        if jobs > 1 {
            return self.run_parallel(jobs);
        }
        let _ = jobs;
        Ok(self.run_sequential())
    }

    fn run_sequential(&self) -> Acc {
        let mut acc = Acc::default();
        let st = State::fresh(self.n);
        self.walk(&st, 0, self.m, 0, &mut |s, _| {
            self.complete(s, &mut acc);
        });
        acc
    }

    #[cfg(feature = "parallel")]
    fn run_parallel(&self, jobs: usize) -> Result<Acc, EnumError> {
        use rayon::prelude::*;

        let mut prefixes: Vec<(State, usize)> = Vec::new();
        let st = State::fresh(self.n);
        self.walk(&st, 0, self.m, self.m - 2, &mut |s, start| {
            prefixes.push((*s, start));
        });

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| EnumError::WorkerPool(e.to_string()))?;
        let accs: Vec<Acc> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|(s, start)| {
                    let mut acc = Acc::default();
                    self.walk(s, *start, self.m - 2, 0, &mut |st, _| {
                        self.complete(st, &mut acc);
                    });
                    acc
                })
                .collect()
        });
        Ok(accs.into_iter().fold(Acc::default(), merge))
    }

    fn graph_from_mask(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &(a, b))| (a as u32, b as u32));
        Graph::new(self.n, edges).expect("enumerated edges form a simple graph")
    }
}

// ---------------------------------------------------------------------------
// canonical forms
// ---------------------------------------------------------------------------

/// Swapping `v` and `w` is an automorphism (twin vertices, adjacent or not).
fn twins(adj: &[u16; MAX_VERTS], v: usize, w: usize) -> bool {
    let mask = (1u16 << v) | (1u16 << w);
    (adj[v] | mask) == (adj[w] | mask)
}

/// Upper-triangle column `j` packed with row 0 as the most significant bit,
/// so comparing column sequences equals comparing graph6 bit streams.
fn columns_of(adj: &[u16; MAX_VERTS], n: usize) -> [u16; MAX_VERTS] {
    let mut cols = [0u16; MAX_VERTS];
    for (j, col) in cols.iter_mut().enumerate().take(n).skip(1) {
        let mut c = 0u16;
        for row in adj.iter().take(j) {
            c = (c << 1) | ((row >> j) & 1);
        }
        *col = c;
    }
    cols
}

fn column_against(adj: &[u16; MAX_VERTS], assigned: &[u8], v: usize) -> u16 {
    let mut col = 0u16;
    for &orig in assigned {
        col = (col << 1) | ((adj[orig as usize] >> v) & 1);
    }
    col
}

/// True when this labeling is the minimal adjacency bit string over all
/// degree-descending relabelings, i.e. the canonical representative.
fn is_canonical(adj: &[u16; MAX_VERTS], deg: &[u8; MAX_VERTS], n: usize) -> bool {
    if (1..n).any(|t| deg[t - 1] < deg[t]) {
        return false;
    }
    let own = columns_of(adj, n);
    let mut assigned = [0u8; MAX_VERTS];
    !smaller_exists(adj, deg, n, &own, &mut assigned, 0, 0)
}

fn smaller_exists(
    adj: &[u16; MAX_VERTS],
    deg: &[u8; MAX_VERTS],
    n: usize,
    own: &[u16; MAX_VERTS],
    assigned: &mut [u8; MAX_VERTS],
    used: u16,
    t: usize,
) -> bool {
    if t == n {
        return false;
    }
    for v in 0..n {
        if used & (1 << v) != 0 || deg[v] != deg[t] {
            continue;
        }
        // among unused interchangeable vertices only the smallest matters
        if (0..v).any(|w| used & (1 << w) == 0 && twins(adj, w, v)) {
            continue;
        }
        let col = column_against(adj, &assigned[..t], v);
        if col < own[t] {
            return true;
        }
        if col == own[t] {
            assigned[t] = v as u8;
            if smaller_exists(adj, deg, n, own, assigned, used | (1 << v), t + 1) {
                return true;
            }
        }
    }
    false
}

/// Minimal column sequence over degree-descending relabelings, found by a
/// layered search that keeps every prefix still attaining the minimum.
#[allow(clippy::needless_range_loop)] // v doubles as a bitmask position
fn canonical_columns(adj: &[u16; MAX_VERTS], deg: &[u8; MAX_VERTS], n: usize) -> [u16; MAX_VERTS] {
    let mut profile: Vec<u8> = (0..n).map(|v| deg[v]).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));

    #[derive(Clone)]
    struct Partial {
        assigned: [u8; MAX_VERTS],
        used: u16,
    }

    let mut frontier = vec![Partial {
        assigned: [0; MAX_VERTS],
        used: 0,
    }];
    let mut cols = [0u16; MAX_VERTS];
    for (t, &want) in profile.iter().enumerate() {
        let mut best_col: Option<u16> = None;
        let mut next: Vec<Partial> = Vec::new();
        for pa in &frontier {
            for v in 0..n {
                if pa.used & (1 << v) != 0 || deg[v] != want {
                    continue;
                }
                if (0..v).any(|w| pa.used & (1 << w) == 0 && twins(adj, w, v)) {
                    continue;
                }
                let col = column_against(adj, &pa.assigned[..t], v);
                if best_col.is_some_and(|b| col > b) {
                    continue;
                }
                if best_col != Some(col) {
                    best_col = Some(col);
                    next.clear();
                }
                let mut q = pa.clone();
                q.assigned[t] = v as u8;
                q.used |= 1 << v;
                next.push(q);
            }
        }
        cols[t] = best_col.expect("every degree class has members left");
        frontier = next;
    }
    cols
}

fn canonical_g6(adj: &[u16; MAX_VERTS], deg: &[u8; MAX_VERTS], n: usize) -> String {
    let cols = canonical_columns(adj, deg, n);
    graph6_from_bits(n, |i, j| (cols[j] >> (j - 1 - i)) & 1 == 1)
}

/// Canonical graph6 form: equal strings exactly for isomorphic graphs.
/// Supported for orders up to [`MAX_ENUM_ORDER`].
pub fn canonical_graph6(g: &Graph) -> Result<String, EnumError> {
    let n = g.n();
    if n > MAX_ENUM_ORDER {
        return Err(EnumError::OrderAboveLimit {
            n,
            limit: MAX_ENUM_ORDER,
        });
    }
    let mut adj = [0u16; MAX_VERTS];
    let mut deg = [0u8; MAX_VERTS];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    Ok(canonical_g6(&adj, &deg, n))
}

// ---------------------------------------------------------------------------
// degree sequence realizability
// ---------------------------------------------------------------------------

/// Erdős–Gallai test. The input is treated as a multiset (sorted internally):
/// graphical iff the sum is even and every prefix `q` satisfies
/// `sum_{i<=q} d_i <= q(q-1) + sum_{i>q} min(d_i, q)`.
pub fn erdos_gallai(seq: &[u64]) -> bool {
    let mut d: Vec<u64> = seq.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let total: u128 = d.iter().map(|&x| x as u128).sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let mut prefix: u128 = 0;
    for q in 1..=d.len() {
        prefix += d[q - 1] as u128;
        let tail: u128 = d[q..].iter().map(|&x| (x as u128).min(q as u128)).sum();
        if prefix > (q as u128) * (q as u128 - 1) + tail {
            return false;
        }
    }
    true
}

/// A connected graph with this histogram and `m = n + 1` exists iff the
/// degree multiset is graphical and the bicyclic identities hold (the edge
/// count then exceeds `n - 1`, so 2-swaps can always merge components).
pub fn bicyclic_realizable(h: &DegreeHistogram) -> Result<bool, HistogramError> {
    if !check_bicyclic_identities(h).holds() {
        return Ok(false);
    }
    let degrees = h.degree_multiset()?;
    let seq: Vec<u64> = degrees.iter().map(|&d| d as u64).collect();
    Ok(erdos_gallai(&seq))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("histogram is not realizable as a connected graph with m = n + 1")]
    NotRealizable,
    #[error(transparent)]
    Histogram(#[from] HistogramError),
}

/// Build a connected graph with histogram exactly `h` and `m = n + 1`.
///
/// Havel–Hakimi with a fixed vertex order produces a simple realization;
/// 2-swaps (remove `{a,b}`, `{c,d}`, add `{a,c}`, `{b,d}`) then merge
/// components without touching degrees, always taking the first valid swap,
/// so the output is deterministic.
pub fn realize(h: &DegreeHistogram) -> Result<Graph, RealizeError> {
    if !bicyclic_realizable(h)? {
        return Err(RealizeError::NotRealizable);
    }
    let degrees = h.degree_multiset()?;
    let n = degrees.len();

    let mut remaining = degrees;
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    loop {
        let mut v = 0;
        for u in 1..n {
            if remaining[u] > remaining[v] {
                v = u;
            }
        }
        let need = remaining[v];
        if need == 0 {
            break;
        }
        remaining[v] = 0;
        let mut order: Vec<usize> = (0..n).filter(|&u| u != v && remaining[u] > 0).collect();
        order.sort_by(|&a, &b| remaining[b].cmp(&remaining[a]).then(a.cmp(&b)));
        if order.len() < need {
            return Err(RealizeError::NotRealizable);
        }
        for &u in order.iter().take(need) {
            remaining[u] -= 1;
            edges.insert(ordered(v, u));
        }
    }

    // merge components: steal a cycle edge from a component that has one
    loop {
        let (count, labels) = component_labels(n, &edges);
        if count <= 1 {
            break;
        }
        let cycle_edge = edges
            .iter()
            .copied()
            .find(|&e| {
                let mut reduced = edges.clone();
                reduced.remove(&e);
                component_labels(n, &reduced).0 == count
            })
            .expect("some component has more edges than vertices");
        let home = labels[cycle_edge.0 as usize];
        let other_edge = edges
            .iter()
            .copied()
            .find(|&(c, _)| labels[c as usize] != home)
            .expect("every component has an edge");
        edges.remove(&cycle_edge);
        edges.remove(&other_edge);
        edges.insert(ordered(cycle_edge.0 as usize, other_edge.0 as usize));
        edges.insert(ordered(cycle_edge.1 as usize, other_edge.1 as usize));
    }

    let g = Graph::new(n, edges).expect("swaps preserve simplicity");
    debug_assert!(g.is_bicyclic());
    Ok(g)
}

fn ordered(a: usize, b: usize) -> (u32, u32) {
    (a.min(b) as u32, a.max(b) as u32)
}

fn component_labels(n: usize, edges: &BTreeSet<(u32, u32)>) -> (usize, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] == v {
            v
        } else {
            let r = find(parent, parent[v]);
            parent[v] = r;
            r
        }
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut roots: Vec<usize> = labels.clone();
    roots.sort_unstable();
    roots.dedup();
    (roots.len(), labels)
}
