//! Subset systems: the F_2^n view of subsets of Z_4^n.
//!
//! A point a of Z_4^n splits coordinatewise as a_j = r_j + 2 q_j with
//! r, q in {0,1}^n. The system assigns to every x = r the set
//! A(x) = { q : r + 2q in S }. 3-AP-freeness of S corresponds to property (*),
//! 4-AP-freeness to property (**).

use std::fmt;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::pointset::PointSet;

/// Largest dimension a system may have (4^n bits of storage).
pub const MAX_SYSTEM_DIM: u32 = 12;

/// Largest dimension accepted by [`random_subspace_system`].
pub const MAX_RANDOM_DIM: u32 = 5;

#[derive(Clone, PartialEq, Eq)]
pub struct SubsetSystem {
    n: u32,
    words: usize,
    masks: Vec<u64>,
}

impl fmt::Debug for SubsetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for x in 0..self.len() {
            if !self.is_empty_at(x) {
                m.entry(&x, &self.members(x));
            }
        }
        m.finish()
    }
}

/// A replayable failure of property (*) or (**).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "property")]
pub enum StarViolation {
    /// a1 != a2 in A(x), y = x + a1 + a2, and A(y) is nonempty.
    #[serde(rename = "*")]
    Star { x: u32, a1: u32, a2: u32, y: u32 },
    /// x != y and x + y lies in both A(x) + A(x) and A(y) + A(y).
    #[serde(rename = "**")]
    StarStar { x: u32, y: u32 },
}

impl StarViolation {
    pub fn replays(&self, sys: &SubsetSystem) -> bool {
        match *self {
            StarViolation::Star { x, a1, a2, y } => {
                a1 != a2
                    && sys.contains(x as usize, a1)
                    && sys.contains(x as usize, a2)
                    && y == x ^ a1 ^ a2
                    && !sys.is_empty_at(y as usize)
            }
            StarViolation::StarStar { x, y } => {
                x != y && sys.sumset(x as usize).contains(&(x ^ y)) && sys.sumset(y as usize).contains(&(x ^ y))
            }
        }
    }
}

impl SubsetSystem {
    /// The all-empty system over F_2^n.
    pub fn empty(n: u32) -> Result<Self> {
        if !(1..=MAX_SYSTEM_DIM).contains(&n) {
            return Err(Error::usage(format!(
                "subset systems need 1 <= n <= {MAX_SYSTEM_DIM}, got {n}"
            )));
        }
        let len = 1usize << n;
        let words = len.div_ceil(64);
        Ok(SubsetSystem {
            n,
            words,
            masks: vec![0; words * len],
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of index points, 2^n.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        self.total_size() == 0
    }

    fn part(&self, x: usize) -> &[u64] {
        &self.masks[x * self.words..(x + 1) * self.words]
    }

    fn check_elem(&self, v: u32) -> Result<()> {
        if (v as usize) < self.len() {
            Ok(())
        } else {
            Err(Error::validation(format!("{v} is not in F_2^{}", self.n)))
        }
    }

    pub fn insert(&mut self, x: u32, q: u32) -> Result<()> {
        self.check_elem(x)?;
        self.check_elem(q)?;
        let w = x as usize * self.words + q as usize / 64;
        self.masks[w] |= 1 << (q % 64);
        Ok(())
    }

    pub fn set_part(&mut self, x: u32, members: &[u32]) -> Result<()> {
        self.check_elem(x)?;
        let start = x as usize * self.words;
        self.masks[start..start + self.words].fill(0);
        for &q in members {
            self.insert(x, q)?;
        }
        Ok(())
    }

    #[inline]
    pub fn contains(&self, x: usize, q: u32) -> bool {
        (q as usize) < self.len() && self.part(x)[q as usize / 64] >> (q % 64) & 1 == 1
    }

    pub fn is_empty_at(&self, x: usize) -> bool {
        self.part(x).iter().all(|&w| w == 0)
    }

    pub fn size_at(&self, x: usize) -> usize {
        self.part(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sorted members of A(x).
    pub fn members(&self, x: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for (wi, &w) in self.part(x).iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push(wi as u32 * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// sum_x |A(x)|.
    pub fn total_size(&self) -> usize {
        self.masks.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The full sumset A(x) + A(x) (contains 0 whenever A(x) is nonempty).
    pub fn sumset(&self, x: usize) -> Vec<u32> {
        let members = self.members(x);
        let mut seen = vec![false; self.len()];
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                seen[(a ^ b) as usize] = true;
            }
        }
        (0..self.len() as u32).filter(|&v| seen[v as usize]).collect()
    }

    /// Replaces A(x) by its translate A(x) + c.
    pub fn translate_part(&mut self, x: u32, c: u32) -> Result<()> {
        self.check_elem(c)?;
        let moved: Vec<u32> = self.members(x as usize).iter().map(|&q| q ^ c).collect();
        self.set_part(x, &moved)
    }

    /// First failure of (*) in (x, a1, a2) order.
    pub fn check_star(&self) -> Option<StarViolation> {
        for x in 0..self.len() {
            let members = self.members(x);
            for (i, &a1) in members.iter().enumerate() {
                for &a2 in &members[i + 1..] {
                    let y = x as u32 ^ a1 ^ a2;
                    if !self.is_empty_at(y as usize) {
                        return Some(StarViolation::Star { x: x as u32, a1, a2, y });
                    }
                }
            }
        }
        None
    }

    /// First failure of (**) in (x, y) order, x < y.
    ///
    /// Uses the full sumsets. For x != y the element x + y is nonzero, so the
    /// restricted sumsets would give the same verdict.
    pub fn check_star_star(&self) -> Option<StarViolation> {
        let len = self.len();
        let words = self.words;
        let mut sums = vec![0u64; words * len];
        let mut nonempty = Vec::new();
        for x in 0..len {
            let members = self.members(x);
            if members.is_empty() {
                continue;
            }
            nonempty.push(x);
            let row = &mut sums[x * words..(x + 1) * words];
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    let s = (a ^ b) as usize;
                    row[s / 64] |= 1 << (s % 64);
                }
            }
        }
        let has = |x: usize, v: usize| sums[x * words + v / 64] >> (v % 64) & 1 == 1;
        for (i, &x) in nonempty.iter().enumerate() {
            for &y in &nonempty[i + 1..] {
                let s = x ^ y;
                if has(x, s) && has(y, s) {
                    return Some(StarViolation::StarStar {
                        x: x as u32,
                        y: y as u32,
                    });
                }
            }
        }
        None
    }

    /// The subset of Z_4^n with points r + 2q for q in A(r).
    pub fn materialize(&self) -> PointSet {
        let params = GroupParams::new(4, self.n).expect("n >= 1");
        let mut idx = Vec::with_capacity(self.total_size());
        for r in 0..self.len() {
            for q in self.members(r) {
                idx.push(lift_index(r as u32, q, self.n));
            }
        }
        PointSet::from_indices(params, idx).expect("indices below 4^n")
    }

    /// Inverse of [`SubsetSystem::materialize`].
    pub fn from_point_set(s: &PointSet) -> Result<Self> {
        let p = s.params();
        if p.m() != 4 {
            return Err(Error::usage(format!(
                "subset systems describe Z_4^n, got modulus {}",
                p.m()
            )));
        }
        let mut sys = SubsetSystem::empty(p.n())?;
        for v in s.vecs() {
            let (mut r, mut q) = (0u32, 0u32);
            for (j, &d) in v.digits.iter().enumerate() {
                r |= (d & 1) << j;
                q |= (d >> 1) << j;
            }
            sys.insert(r, q)?;
        }
        Ok(sys)
    }

    /// "capsys v1" text: header lines, then one line per nonempty A(x).
    pub fn to_capsys(&self) -> String {
        let mut out = String::new();
        out.push_str("capsys v1\n");
        let _ = writeln!(out, "n={}", self.n);
        for x in 0..self.len() {
            let members = self.members(x);
            if members.is_empty() {
                continue;
            }
            out.push_str(&bits(x as u32, self.n));
            out.push(':');
            for q in members {
                out.push(' ');
                out.push_str(&bits(q, self.n));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_capsys(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == "capsys v1" => {}
            _ => return Err(Error::parse(1, "expected header 'capsys v1'")),
        }
        let n: u32 = lines
            .next()
            .and_then(|(_, l)| l.trim().strip_prefix("n=")?.parse().ok())
            .ok_or_else(|| Error::parse(2, "expected 'n=<n>'"))?;
        let mut sys = SubsetSystem::empty(n).map_err(|e| Error::parse(2, e.to_string()))?;
        for (no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(no + 1, "expected '<x>: <members>'"))?;
            let x = parse_bits(head.trim(), n).ok_or_else(|| Error::parse(no + 1, "bad index"))?;
            for tok in rest.split_whitespace() {
                let q = parse_bits(tok, n).ok_or_else(|| Error::parse(no + 1, "bad member"))?;
                sys.insert(x, q)?;
            }
        }
        Ok(sys)
    }
}

/// Encoded Z_4^n index of the point with digits r_j + 2 q_j.
pub(crate) fn lift_index(r: u32, q: u32, n: u32) -> u64 {
    (0..n)
        .rev()
        .fold(0u64, |acc, j| acc * 4 + ((r >> j & 1) + 2 * (q >> j & 1)) as u64)
}

fn bits(v: u32, n: u32) -> String {
    (0..n).map(|j| if v >> j & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str, n: u32) -> Option<u32> {
    if s.len() != n as usize {
        return None;
    }
    s.chars().enumerate().try_fold(0u32, |acc, (j, c)| match c {
        '0' => Some(acc),
        '1' => Some(acc | 1 << j),
        _ => None,
    })
}

/// Alias kept for symmetry with [`SubsetSystem::materialize`].
pub fn system_from_set(s: &PointSet) -> Result<SubsetSystem> {
    SubsetSystem::from_point_set(s)
}

pub fn total_size(sys: &SubsetSystem) -> usize {
    sys.total_size()
}

/// True iff `members` is nonempty, contains 0 and is closed under XOR.
pub fn is_linear_subspace(members: &[u32]) -> bool {
    if members.is_empty() || !members.contains(&0) {
        return false;
    }
    let set: std::collections::HashSet<u32> = members.iter().copied().collect();
    members.iter().all(|&a| members.iter().all(|&b| set.contains(&(a ^ b))))
}

/// Every linear subspace of F_2^n, ordered by dimension then by elements.
pub fn all_subspaces(n: u32) -> Vec<Vec<u32>> {
    let size = 1u32 << n;
    let mut seen = std::collections::BTreeSet::new();
    let mut layer = vec![vec![0u32]];
    seen.insert(vec![0u32]);
    let mut out = vec![vec![0u32]];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for space in &layer {
            for v in 1..size {
                if space.contains(&v) {
                    continue;
                }
                let mut bigger: Vec<u32> = space.iter().flat_map(|&s| [s, s ^ v]).collect();
                bigger.sort_unstable();
                if seen.insert(bigger.clone()) {
                    next.push(bigger);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A random system satisfying (*) whose nonempty parts are linear subspaces.
///
/// Index points are visited in a seeded random order. Each receives either
/// the empty set or a subspace V for which no y in x + (V \ {0}) already
/// carries a nonempty set, chosen uniformly among the admissible options;
/// those y are then forced empty.
pub fn random_subspace_system(n: u32, seed: u64) -> Result<SubsetSystem> {
    if !(1..=MAX_RANDOM_DIM).contains(&n) {
        return Err(Error::usage(format!(
            "random subspace systems need 1 <= n <= {MAX_RANDOM_DIM}, got {n}"
        )));
    }
    let spaces = all_subspaces(n);
    let len = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..len as u32).collect();
    order.shuffle(&mut rng);

    let mut nonempty = vec![false; len];
    let mut forced_empty = vec![false; len];
    let mut sys = SubsetSystem::empty(n)?;
    for x in order {
        if forced_empty[x as usize] {
            continue;
        }
        let admissible: Vec<&Vec<u32>> = spaces
            .iter()
            .filter(|v| v.iter().all(|&a| a == 0 || !nonempty[(x ^ a) as usize]))
            .collect();
        let pick = rng.gen_range(0..=admissible.len());
        if pick == admissible.len() {
            continue;
        }
        let chosen = admissible[pick];
        sys.set_part(x, chosen)?;
        nonempty[x as usize] = true;
        for &a in chosen {
            if a != 0 {
                forced_empty[(x ^ a) as usize] = true;
            }
        }
    }
    if let Some(v) = sys.check_star() {
        return Err(Error::construction(format!(
            "random subspace system violates (*): {v:?}"
        )));
    }
    Ok(sys)
}
