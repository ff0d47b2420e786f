//! Exact maximum k-AP-free sets by branch and bound.
//!
//! Every proper k-AP is stored as a k-set of indices. The search chooses
//! points in increasing index order; a point becomes inadmissible once the
//! other k - 1 points of some progression through it are chosen. A node is
//! cut when an upper bound on what it can still reach does not beat the best
//! set known. The bound is the smaller of |chosen| + |candidates| and a
//! coset-partition bound: for a subgroup H whose cosets each hold at most
//! cap(H) points of any free set, the reachable size is at most
//! sum over cosets of min(cap(H), live points in the coset). Coordinate
//! hyperplanes refine this by taking, inside each hyperplane coset, the best
//! cyclic-line partition of that coset.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{decode_into, encode_digits, GroupParams};
use crate::pointset::PointSet;

/// Largest group handled by the exhaustive search.
pub const MAX_SEARCH_POINTS: u64 = 1024;

/// Cyclic-line partitions used by the bound, at most.
const MAX_LINE_PARTITIONS: usize = 64;

/// Lines of this order or less get their cap from a nested search.
const MAX_LINE_ORDER: u32 = 32;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub time_budget: Duration,
    /// Fix 0 in the set. Freeness is translation invariant, so some optimal
    /// set contains 0.
    pub assume_zero: bool,
    pub parallel: bool,
    /// Warm start; must be free.
    pub initial: Option<PointSet>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_budget: Duration::from_secs(600),
            assume_zero: true,
            parallel: false,
            initial: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    #[serde(skip)]
    pub best: PointSet,
    pub size: usize,
    /// The search tree was exhausted, so `size` is the maximum.
    pub optimal: bool,
    pub nodes: u64,
    #[serde(serialize_with = "crate::serialize_duration_ms")]
    pub elapsed: Duration,
}

/// The k-uniform hypergraph of proper k-APs on Z_m^n.
struct Hypergraph {
    points: usize,
    k: usize,
    /// Flattened sorted k-sets.
    edges: Vec<u32>,
    /// Edge ids through each point.
    incident: Vec<Vec<u32>>,
}

impl Hypergraph {
    fn build(p: &GroupParams, k: usize) -> Self {
        let points = p.index_len().expect("checked by caller") as usize;
        let m = p.m();
        let n = p.n() as usize;
        let mut a = vec![0u32; n];
        let mut d = vec![0u32; n];
        let mut cur = vec![0u32; n];
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let orders: Vec<u32> = (0..points as u64)
            .map(|i| {
                decode_into(i, m, &mut d);
                d.iter().map(|&x| m / gcd(x, m)).fold(1, lcm)
            })
            .collect();
        for ai in 0..points as u64 {
            decode_into(ai, m, &mut a);
            for di in 1..points as u64 {
                if (orders[di as usize] as usize) < k {
                    continue;
                }
                decode_into(di, m, &mut d);
                let mut terms = Vec::with_capacity(k);
                cur.copy_from_slice(&a);
                for t in 0..k {
                    if t > 0 {
                        for (c, &x) in cur.iter_mut().zip(&d) {
                            *c = (*c + x) % m;
                        }
                    }
                    terms.push(encode_digits(&cur, m) as u32);
                }
                terms.sort_unstable();
                seen.insert(terms);
            }
        }
        let mut edges = Vec::with_capacity(seen.len() * k);
        let mut incident = vec![Vec::new(); points];
        for (id, e) in seen.into_iter().enumerate() {
            for &v in &e {
                incident[v as usize].push(id as u32);
            }
            edges.extend(e);
        }
        Hypergraph {
            points,
            k,
            edges,
            incident,
        }
    }

    fn edge(&self, id: u32) -> &[u32] {
        let s = id as usize * self.k;
        &self.edges[s..s + self.k]
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// A partition of the group into cosets of one subgroup.
struct Partition {
    part_of: Vec<u32>,
    parts: usize,
    cap: u32,
}

/// A coordinate-hyperplane partition refined by line partitions inside it.
struct Refined {
    outer: Partition,
    /// (line partition index, outer part of each of its parts)
    inner: Vec<(usize, Vec<u32>)>,
}

struct Bounds {
    lines: Vec<Partition>,
    planes: Vec<Refined>,
}

impl Bounds {
    fn empty() -> Self {
        Bounds {
            lines: Vec::new(),
            planes: Vec::new(),
        }
    }

    fn build(p: &GroupParams, k: usize, deadline: Instant) -> Self {
        let m = p.m();
        let n = p.n();
        let points = p.index_len().expect("checked by caller");
        let mut digits = vec![0u32; n as usize];
        // cyclic subgroups <g> of order >= k, keyed by their element set
        let mut line_sets: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for g in 1..points {
            decode_into(g, m, &mut digits);
            let order = digits.iter().map(|&x| m / gcd(x, m)).fold(1, lcm);
            if (order as usize) < k || order > MAX_LINE_ORDER || order as u64 == points {
                continue;
            }
            let mut elems = Vec::with_capacity(order as usize);
            let mut cur = vec![0u32; n as usize];
            for _ in 0..order {
                elems.push(encode_digits(&cur, m) as u32);
                for (c, &x) in cur.iter_mut().zip(&digits) {
                    *c = (*c + x) % m;
                }
            }
            elems.sort_unstable();
            line_sets.entry(elems).or_insert(order);
            if line_sets.len() >= MAX_LINE_PARTITIONS {
                break;
            }
        }
        let mut caps: BTreeMap<u32, Option<u32>> = BTreeMap::new();
        let mut lines = Vec::new();
        let mut line_support = Vec::new();
        for (elems, order) in line_sets {
            let cap = *caps.entry(order).or_insert_with(|| exact_cap(order, 1, k, deadline));
            let Some(cap) = cap else { continue };
            let mut support = 0u32;
            for &e in &elems {
                decode_into(e as u64, m, &mut digits);
                for (j, &x) in digits.iter().enumerate() {
                    if x != 0 {
                        support |= 1 << j;
                    }
                }
            }
            lines.push(coset_partition(p, &elems, cap));
            line_support.push(support);
        }
        let mut planes = Vec::new();
        if n >= 2 {
            if let Some(cap) = exact_cap(m, n - 1, k, deadline) {
                for skip in 0..n {
                    // hyperplane = points with coordinate `skip` zero
                    let part_of: Vec<u32> = (0..points)
                        .map(|i| {
                            decode_into(i, m, &mut digits);
                            digits[skip as usize]
                        })
                        .collect();
                    let outer = Partition {
                        part_of,
                        parts: m as usize,
                        cap,
                    };
                    let inner = lines
                        .iter()
                        .enumerate()
                        .filter(|(li, _)| line_support[*li] >> skip & 1 == 0)
                        .map(|(li, l)| {
                            let mut map = vec![0u32; l.parts];
                            for (pt, &lp) in l.part_of.iter().enumerate() {
                                map[lp as usize] = outer.part_of[pt];
                            }
                            (li, map)
                        })
                        .collect();
                    planes.push(Refined { outer, inner });
                }
            }
        }
        Bounds { lines, planes }
    }

    /// Upper bound on the largest free subset of `live`. Stops early once
    /// some partition gives a value `cut` accepts.
    fn evaluate(&self, live: &[u32], scratch: &mut Scratch, cut: impl Fn(usize) -> bool) -> usize {
        let mut best = live.len();
        scratch.line_counts.resize(self.lines.len(), Vec::new());
        for (li, l) in self.lines.iter().enumerate() {
            let counts = &mut scratch.line_counts[li];
            counts.clear();
            counts.resize(l.parts, 0);
            for &v in live {
                counts[l.part_of[v as usize] as usize] += 1;
            }
            let total: usize = counts.iter().map(|&c| c.min(l.cap) as usize).sum();
            best = best.min(total);
            if cut(best) {
                return best;
            }
        }
        for pl in &self.planes {
            let o = &pl.outer;
            let refined = &mut scratch.refined;
            refined.clear();
            refined.resize(o.parts, 0);
            for &v in live {
                refined[o.part_of[v as usize] as usize] += 1;
            }
            for r in refined.iter_mut() {
                *r = (*r).min(o.cap);
            }
            for (li, map) in &pl.inner {
                let cap = self.lines[*li].cap;
                let acc = &mut scratch.acc;
                acc.clear();
                acc.resize(o.parts, 0);
                for (lp, &c) in scratch.line_counts[*li].iter().enumerate() {
                    acc[map[lp] as usize] += c.min(cap);
                }
                for (r, &a) in refined.iter_mut().zip(acc.iter()) {
                    *r = (*r).min(a);
                }
            }
            best = best.min(refined.iter().map(|&r| r as usize).sum());
            if cut(best) {
                return best;
            }
        }
        best
    }
}

#[derive(Default)]
struct Scratch {
    line_counts: Vec<Vec<u32>>,
    refined: Vec<u32>,
    acc: Vec<u32>,
}

fn coset_partition(p: &GroupParams, subgroup: &[u32], cap: u32) -> Partition {
    let m = p.m();
    let points = p.index_len().expect("small group") as usize;
    let n = p.n() as usize;
    let mut part_of = vec![u32::MAX; points];
    let mut parts = 0u32;
    let mut x = vec![0u32; n];
    let mut h = vec![0u32; n];
    for start in 0..points {
        if part_of[start] != u32::MAX {
            continue;
        }
        decode_into(start as u64, m, &mut x);
        for &e in subgroup {
            decode_into(e as u64, m, &mut h);
            let sum: Vec<u32> = x.iter().zip(&h).map(|(a, b)| (a + b) % m).collect();
            part_of[encode_digits(&sum, m) as usize] = parts;
        }
        parts += 1;
    }
    Partition {
        part_of,
        parts: parts as usize,
        cap,
    }
}

/// r_k(Z_m^n) if a nested search proves it before `deadline`.
fn exact_cap(m: u32, n: u32, k: usize, deadline: Instant) -> Option<u32> {
    let p = GroupParams::new(m, n).ok()?;
    let left = deadline.checked_duration_since(Instant::now())?;
    let cfg = SearchConfig {
        time_budget: left,
        ..SearchConfig::default()
    };
    let r = max_apfree(&p, k, &cfg).ok()?;
    r.optimal.then_some(r.size as u32)
}

/// Search state: chosen points and how many progressions forbid each point.
#[derive(Clone)]
struct State {
    chosen: Vec<u32>,
    is_chosen: Vec<bool>,
    on_edge: Vec<u8>,
    forbid: Vec<u32>,
}

impl State {
    fn new(h: &Hypergraph) -> Self {
        State {
            chosen: Vec::new(),
            is_chosen: vec![false; h.points],
            on_edge: vec![0; h.edges.len() / h.k.max(1)],
            forbid: vec![0; h.points],
        }
    }

    fn push(&mut self, h: &Hypergraph, v: u32) {
        self.chosen.push(v);
        self.is_chosen[v as usize] = true;
        for &e in &h.incident[v as usize] {
            let c = &mut self.on_edge[e as usize];
            *c += 1;
            if *c as usize == h.k - 1 {
                let last = h.edge(e).iter().find(|&&u| u != v && !self.is_chosen[u as usize]);
                if let Some(&u) = last {
                    self.forbid[u as usize] += 1;
                }
            }
        }
    }

    fn pop(&mut self, h: &Hypergraph) {
        let v = self.chosen.pop().expect("nonempty");
        self.is_chosen[v as usize] = false;
        for &e in &h.incident[v as usize] {
            let c = &mut self.on_edge[e as usize];
            if *c as usize == h.k - 1 {
                let last = h.edge(e).iter().find(|&&u| u != v && !self.is_chosen[u as usize]);
                if let Some(&u) = last {
                    self.forbid[u as usize] -= 1;
                }
            }
            *c -= 1;
        }
    }

    fn admissible(&self, v: u32) -> bool {
        self.forbid[v as usize] == 0
    }
}

struct Shared {
    global_best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    deadline: Instant,
}

struct Worker<'a> {
    h: &'a Hypergraph,
    bounds: &'a Bounds,
    shared: &'a Shared,
    state: State,
    /// Best size this worker must beat.
    floor: usize,
    best: Option<Vec<u32>>,
    nodes: u64,
    scratch: Scratch,
    live: Vec<u32>,
}

impl<'a> Worker<'a> {
    fn new(h: &'a Hypergraph, bounds: &'a Bounds, shared: &'a Shared, state: State, floor: usize) -> Self {
        Worker {
            h,
            bounds,
            shared,
            state,
            floor,
            best: None,
            nodes: 0,
            scratch: Scratch::default(),
            live: Vec::new(),
        }
    }

    fn cut(&self, bound: usize) -> bool {
        // equal-size sets found elsewhere do not cut, so every worker finds
        // its own lexicographically first optimum
        bound <= self.floor || bound < self.shared.global_best.load(Ordering::Relaxed)
    }

    fn record(&mut self) {
        let size = self.state.chosen.len();
        if size > self.floor {
            self.floor = size;
            self.best = Some(self.state.chosen.clone());
            self.shared.global_best.fetch_max(size, Ordering::Relaxed);
        }
    }

    fn dfs(&mut self, cands: &[u32]) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            self.shared.nodes.fetch_add(1024, Ordering::Relaxed);
            if Instant::now() >= self.shared.deadline {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        if self.shared.aborted.load(Ordering::Relaxed) {
            return;
        }
        self.record();
        if cands.is_empty() || self.cut(self.state.chosen.len() + cands.len()) {
            return;
        }
        if self.bound_cuts(cands) {
            return;
        }
        let mut next = Vec::with_capacity(cands.len());
        for (i, &c) in cands.iter().enumerate() {
            if self.cut(self.state.chosen.len() + cands.len() - i) {
                break;
            }
            self.state.push(self.h, c);
            next.clear();
            next.extend(cands[i + 1..].iter().copied().filter(|&u| self.state.admissible(u)));
            let child = std::mem::take(&mut next);
            self.dfs(&child);
            next = child;
            self.state.pop(self.h);
        }
    }

    /// Whether the partition bound on chosen ∪ `cands` cuts.
    fn bound_cuts(&mut self, cands: &[u32]) -> bool {
        self.live.clear();
        self.live.extend_from_slice(&self.state.chosen);
        self.live.extend_from_slice(cands);
        let floor = self.floor;
        let global = self.shared.global_best.load(Ordering::Relaxed);
        let bound = self
            .bounds
            .evaluate(&self.live, &mut self.scratch, |b| b <= floor || b < global);
        self.cut(bound)
    }
}

fn check_params(p: &GroupParams, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::usage(format!("progression length must be >= 3, got {k}")));
    }
    match p.index_len() {
        Some(len) if len <= MAX_SEARCH_POINTS => Ok(()),
        _ => Err(Error::usage(format!(
            "{p} has more than {MAX_SEARCH_POINTS} points; too large for exhaustive search"
        ))),
    }
}

/// Scan indices in increasing order, keeping each point that closes no
/// proper k-AP with the points kept so far.
pub fn greedy_lower(p: &GroupParams, k: usize) -> Result<PointSet> {
    check_params(p, k)?;
    let h = Hypergraph::build(p, k);
    let mut state = State::new(&h);
    for v in 0..h.points as u32 {
        if state.admissible(v) {
            state.push(&h, v);
        }
    }
    PointSet::from_indices(*p, state.chosen.iter().map(|&v| v as u64).collect())
}

/// Largest subset of Z_m^n without a proper k-AP. Among maximum sets the
/// lexicographically first (by sorted indices) is returned, in both
/// sequential and parallel mode. When the budget runs out the best set found
/// so far is returned with `optimal = false`.
pub fn max_apfree(p: &GroupParams, k: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    check_params(p, k)?;
    if cfg.time_budget.is_zero() {
        return Err(Error::usage("time budget must be positive"));
    }
    let started = Instant::now();
    let deadline = started + cfg.time_budget;
    let h = Hypergraph::build(p, k);

    let mut floor_set: Option<Vec<u32>> = None;
    let mut floor = 0usize;
    if let Some(init) = &cfg.initial {
        if init.params() != *p {
            return Err(Error::usage(format!("initial set lives in {}, not {p}", init.params())));
        }
        if crate::verifier::find_witness(init, k)?.is_some() {
            return Err(Error::validation("initial set contains a proper progression"));
        }
        if !init.is_empty() {
            // search for sets of the same size too, keeping the result canonical
            floor = init.len() - 1;
            floor_set = Some(init.members().iter().map(|&v| v as u32).collect());
        }
    }

    let bounds = if h.points > 8 {
        Bounds::build(p, k, deadline)
    } else {
        Bounds::empty()
    };
    let shared = Shared {
        global_best: AtomicUsize::new(floor),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        deadline,
    };

    let mut root = State::new(&h);
    if cfg.assume_zero {
        root.push(&h, 0);
    }
    let start = root.chosen.last().map_or(0, |&v| v + 1);
    let cands: Vec<u32> = (start..h.points as u32).filter(|&v| root.admissible(v)).collect();

    let mut found: Vec<(Vec<u32>, u64)> = Vec::new();
    if cfg.parallel && !cands.is_empty() {
        // root itself, then one task per child of the root
        let mut w = Worker::new(&h, &bounds, &shared, root.clone(), floor);
        w.record();
        found.push((w.best.take().unwrap_or_default(), 1));
        let results: Vec<(Vec<u32>, u64)> = (0..cands.len())
            .into_par_iter()
            .map(|i| {
                let mut state = root.clone();
                state.push(&h, cands[i]);
                let next: Vec<u32> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| state.admissible(u))
                    .collect();
                let mut w = Worker::new(&h, &bounds, &shared, state, floor);
                w.dfs(&next);
                (w.best.unwrap_or_default(), w.nodes)
            })
            .collect();
        found.extend(results);
    } else {
        let mut w = Worker::new(&h, &bounds, &shared, root, floor);
        w.dfs(&cands);
        found.push((w.best.unwrap_or_default(), w.nodes));
    }

    let nodes = found.iter().map(|(_, n)| n).sum();
    let mut best = found
        .into_iter()
        .map(|(s, _)| s)
        .filter(|s| s.len() > floor)
        .min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    if best.is_none() {
        best = floor_set;
    }
    let best = best.unwrap_or_default();
    let optimal = !shared.aborted.load(Ordering::Relaxed);
    let set = PointSet::from_indices(*p, best.iter().map(|&v| v as u64).collect())?;
    Ok(SearchResult {
        size: set.len(),
        best: set,
        optimal,
        nodes,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::find_witness;

    fn params(m: u32, n: u32) -> GroupParams {
        GroupParams::new(m, n).unwrap()
    }

    fn run(m: u32, n: u32, k: usize, cfg: &SearchConfig) -> SearchResult {
        let r = max_apfree(&params(m, n), k, cfg).unwrap();
        assert!(find_witness(&r.best, k).unwrap().is_none());
        r
    }

    /// Largest free subset by trying every subset.
    fn naive_max(m: u32, n: u32, k: usize) -> usize {
        let p = params(m, n);
        let len = p.index_len().unwrap();
        (0u64..1 << len)
            .filter(|mask| {
                let idx: Vec<u64> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
                let s = PointSet::from_indices(p, idx).unwrap();
                find_witness(&s, k).unwrap().is_none()
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_lower(&params(4, 1), 3).unwrap().members(), &[0, 1]);
        assert_eq!(greedy_lower(&params(3, 1), 3).unwrap().members(), &[0, 1]);
        for (m, n, k) in [(4, 2, 3), (5, 2, 3), (4, 3, 4), (7, 1, 3)] {
            let g = greedy_lower(&params(m, n), k).unwrap();
            assert!(find_witness(&g, k).unwrap().is_none());
        }
        assert!(greedy_lower(&params(4, 1), 2).is_err());
    }

    #[test]
    fn small_exact_values() {
        let cfg = SearchConfig::default();
        for (m, n, k, want) in [
            (4, 1, 3, 2),
            (4, 2, 3, 6),
            (4, 1, 4, 3),
            (4, 2, 4, 10),
            (3, 2, 3, 4),
            (5, 1, 3, 2),
        ] {
            let r = run(m, n, k, &cfg);
            assert!(r.optimal);
            assert_eq!(r.size, want, "m={m} n={n} k={k}");
        }
    }

    #[test]
    fn matches_naive_on_tiny_groups() {
        let cfg = SearchConfig::default();
        for (m, n) in [
            (2, 1),
            (3, 1),
            (4, 1),
            (5, 1),
            (7, 1),
            (2, 2),
            (3, 2),
            (4, 2),
            (2, 3),
            (2, 4),
            (8, 1),
            (9, 1),
            (11, 1),
            (13, 1),
            (16, 1),
        ] {
            for k in 3..=4 {
                let len = params(m, n).index_len().unwrap();
                if len > 16 {
                    continue;
                }
                assert_eq!(run(m, n, k, &cfg).size, naive_max(m, n, k), "m={m} n={n} k={k}");
            }
        }
    }

    #[test]
    fn assume_zero_and_parallel_agree() {
        let on = SearchConfig::default();
        let off = SearchConfig {
            assume_zero: false,
            ..SearchConfig::default()
        };
        let par = SearchConfig {
            parallel: true,
            ..SearchConfig::default()
        };
        for (m, n) in [(2, 3), (3, 2), (4, 2), (5, 2), (7, 2), (3, 3), (2, 6), (17, 1)] {
            let a = run(m, n, 3, &on);
            let b = run(m, n, 3, &off);
            let c = run(m, n, 3, &par);
            assert_eq!(a.size, b.size, "m={m} n={n}");
            assert_eq!(a.best, b.best);
            assert_eq!(a.best, c.best);
            assert!(a.optimal && b.optimal && c.optimal);
        }
    }

    #[test]
    fn warm_start_keeps_canonical_answer() {
        let p = params(4, 2);
        let g = greedy_lower(&p, 3).unwrap();
        let cold = run(4, 2, 3, &SearchConfig::default());
        let warm = run(
            4,
            2,
            3,
            &SearchConfig {
                initial: Some(g),
                ..SearchConfig::default()
            },
        );
        assert_eq!(cold.best, warm.best);
    }

    #[test]
    fn deterministic_node_counts() {
        let a = run(5, 2, 3, &SearchConfig::default());
        let b = run(5, 2, 3, &SearchConfig::default());
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn monotone_in_dimension() {
        let cfg = SearchConfig::default();
        for (m, k, top) in [(3, 3, 3), (4, 3, 3), (4, 4, 2), (2, 3, 4), (5, 3, 2)] {
            let sizes: Vec<usize> = (1..=top).map(|n| run(m, n, k, &cfg).size).collect();
            assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "m={m} k={k}: {sizes:?}");
        }
    }

    #[test]
    fn tiny_budget_reports_not_optimal() {
        let cfg = SearchConfig {
            time_budget: Duration::from_millis(1),
            ..SearchConfig::default()
        };
        let r = run(4, 3, 3, &cfg);
        assert!(!r.optimal);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(max_apfree(&params(4, 6), 3, &SearchConfig::default()).is_err());
        assert!(max_apfree(&params(4, 2), 2, &SearchConfig::default()).is_err());
        let zero = SearchConfig {
            time_budget: Duration::ZERO,
            ..SearchConfig::default()
        };
        assert!(max_apfree(&params(4, 2), 3, &zero).is_err());
    }
}
