//! Finite subsets of Z_m^n and the "capset v1" text format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{decode_into, encode_digits, GroupParams, GroupVec};

/// How membership queries are answered.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lookup {
    Dense(Vec<u64>),
    Hash(HashSet<u64>),
}

/// A set of points of Z_m^n, stored as strictly increasing encoded indices
/// plus a membership structure (bitset when m^n fits the dense cap).
#[derive(Clone, Debug)]
pub struct PointSet {
    params: GroupParams,
    members: Vec<u64>,
    lookup: Lookup,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.members == other.members
    }
}

impl Eq for PointSet {}

impl PointSet {
    pub fn empty(params: GroupParams) -> Result<Self> {
        Self::from_indices(params, Vec::new())
    }

    /// Builds a set from arbitrary indices; sorts and removes duplicates.
    pub fn from_indices(params: GroupParams, mut members: Vec<u64>) -> Result<Self> {
        let len = params
            .index_len()
            .ok_or_else(|| Error::validation(format!("{params} is too large for indexed point sets")))?;
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= len {
                return Err(Error::validation(format!("index {last} out of range for {params}")));
            }
        }
        let lookup = match params.dense_len() {
            Some(dense) => {
                let mut bits = vec![0u64; dense.div_ceil(64)];
                for &i in &members {
                    bits[(i / 64) as usize] |= 1 << (i % 64);
                }
                Lookup::Dense(bits)
            }
            None => Lookup::Hash(members.iter().copied().collect()),
        };
        Ok(PointSet {
            params,
            members,
            lookup,
        })
    }

    pub fn from_vecs<'a, I>(params: GroupParams, vecs: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupVec>,
    {
        let idx = vecs.into_iter().map(|v| params.encode(v)).collect::<Result<Vec<_>>>()?;
        Self::from_indices(params, idx)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted encoded indices.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.lookup, Lookup::Dense(_))
    }

    #[inline]
    pub fn contains_index(&self, i: u64) -> bool {
        match &self.lookup {
            Lookup::Dense(bits) => bits.get((i / 64) as usize).is_some_and(|w| w >> (i % 64) & 1 == 1),
            Lookup::Hash(set) => set.contains(&i),
        }
    }

    pub fn contains(&self, v: &GroupVec) -> bool {
        self.params.check(v).is_ok() && self.contains_index(encode_digits(&v.digits, self.params.m()))
    }

    pub fn vec_at(&self, pos: usize) -> GroupVec {
        let mut digits = vec![0; self.params.n() as usize];
        decode_into(self.members[pos], self.params.m(), &mut digits);
        GroupVec { digits }
    }

    pub fn vecs(&self) -> impl Iterator<Item = GroupVec> + '_ {
        (0..self.members.len()).map(|i| self.vec_at(i))
    }

    /// All members decoded into one flat digit buffer (n digits per member).
    pub(crate) fn flat_digits(&self) -> Vec<u32> {
        let n = self.params.n() as usize;
        let mut out = vec![0; n * self.members.len()];
        for (chunk, &i) in out.chunks_mut(n).zip(&self.members) {
            decode_into(i, self.params.m(), chunk);
        }
        out
    }

    pub fn translate(&self, c: &GroupVec) -> Result<PointSet> {
        self.params.check(c)?;
        let moved: Vec<GroupVec> = self.vecs().map(|v| self.params.add(&v, c)).collect();
        PointSet::from_vecs(self.params, &moved)
    }

    /// Members whose position in the sorted list passes `keep`.
    pub fn filter_positions(&self, mut keep: impl FnMut(usize) -> bool) -> PointSet {
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &x)| x)
            .collect();
        PointSet::from_indices(self.params, members).expect("subset of a valid set")
    }

    pub fn with_index(&self, i: u64) -> Result<PointSet> {
        let mut members = self.members.clone();
        members.push(i);
        PointSet::from_indices(self.params, members)
    }

    /// Serializes to the canonical "capset v1" text.
    pub fn to_capset(&self) -> String {
        let mut out = String::with_capacity(16 + self.len() * 2 * self.params.n() as usize);
        out.push_str("capset v1\n");
        let _ = writeln!(out, "m={} n={}", self.params.m(), self.params.n());
        for v in self.vecs() {
            for (j, d) in v.digits.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{d}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses "capset v1" text. Vector lines may come in any order; the
    /// result is canonical.
    pub fn parse_capset(text: &str) -> Result<PointSet> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == "capset v1" => {}
            _ => return Err(Error::parse(1, "expected header 'capset v1'")),
        }
        let (m, n) = match lines.next() {
            Some((_, l)) => parse_mn(l).ok_or_else(|| Error::parse(2, "expected 'm=<m> n=<n>'"))?,
            None => return Err(Error::parse(2, "missing 'm=<m> n=<n>' line")),
        };
        let params = GroupParams::new(m, n).map_err(|e| Error::parse(2, e.to_string()))?;
        let mut vecs = Vec::new();
        for (no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let digits = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(no + 1, e.to_string()))?;
            let v = params.vec(digits).map_err(|e| Error::parse(no + 1, e.to_string()))?;
            vecs.push(v);
        }
        PointSet::from_vecs(params, &vecs)
    }
}

fn parse_mn(line: &str) -> Option<(u32, u32)> {
    let mut it = line.split_whitespace();
    let m = it.next()?.strip_prefix("m=")?.parse().ok()?;
    let n = it.next()?.strip_prefix("n=")?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((m, n))
}
