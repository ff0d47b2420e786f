//! Value types for the group Z_m^n.
//!
//! Vectors are indexed little-endian: digit 0 is the least significant
//! place of the mixed-radix index, so `index = sum_j digits[j] * m^j`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group that may use a dense (bitset / flat array) representation.
pub const DENSE_CAP: u64 = 1 << 31;

/// The group Z_m^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    m: u32,
    n: u32,
}

impl GroupParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::usage(format!("modulus must be >= 2, got {m}")));
        }
        if n < 1 {
            return Err(Error::usage("dimension must be >= 1"));
        }
        Ok(GroupParams { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// m^n, exact.
    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.m).pow(self.n)
    }

    /// m^n when it fits in a u64 (the range of encoded indices).
    pub fn index_len(&self) -> Option<u64> {
        (self.m as u64).checked_pow(self.n)
    }

    /// m^n when the group is small enough for dense representations.
    pub fn dense_len(&self) -> Option<usize> {
        self.index_len().filter(|&len| len <= DENSE_CAP).map(|len| len as usize)
    }

    pub fn zero(&self) -> GroupVec {
        GroupVec {
            digits: vec![0; self.n as usize],
        }
    }

    pub fn vec(&self, digits: Vec<u32>) -> Result<GroupVec> {
        let v = GroupVec { digits };
        self.check(&v)?;
        Ok(v)
    }

    pub fn check(&self, v: &GroupVec) -> Result<()> {
        if v.digits.len() != self.n as usize {
            return Err(Error::validation(format!(
                "vector has {} coordinates, expected {}",
                v.digits.len(),
                self.n
            )));
        }
        if let Some(&d) = v.digits.iter().find(|&&d| d >= self.m) {
            return Err(Error::validation(format!(
                "digit {d} out of range for modulus {}",
                self.m
            )));
        }
        Ok(())
    }

    pub fn encode(&self, v: &GroupVec) -> Result<u64> {
        self.check(v)?;
        if self.index_len().is_none() {
            return Err(Error::validation(format!(
                "Z_{}^{} is too large for u64 indices",
                self.m, self.n
            )));
        }
        Ok(encode_digits(&v.digits, self.m))
    }

    pub fn decode(&self, index: u64) -> Result<GroupVec> {
        match self.index_len() {
            Some(len) if index < len => {}
            _ => {
                return Err(Error::validation(format!(
                    "index {index} out of range for Z_{}^{}",
                    self.m, self.n
                )))
            }
        }
        let mut digits = vec![0; self.n as usize];
        decode_into(index, self.m, &mut digits);
        Ok(GroupVec { digits })
    }

    pub fn add(&self, a: &GroupVec, b: &GroupVec) -> GroupVec {
        let m = self.m as u64;
        GroupVec {
            digits: a
                .digits
                .iter()
                .zip(&b.digits)
                .map(|(&x, &y)| ((x as u64 + y as u64) % m) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupVec) -> GroupVec {
        GroupVec {
            digits: a.digits.iter().map(|&x| if x == 0 { 0 } else { self.m - x }).collect(),
        }
    }

    pub fn sub(&self, a: &GroupVec, b: &GroupVec) -> GroupVec {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: u64, a: &GroupVec) -> GroupVec {
        let m = self.m as u64;
        let c = c % m;
        GroupVec {
            digits: a.digits.iter().map(|&x| ((x as u64 * c) % m) as u32).collect(),
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{}", self.m, self.n)
    }
}

pub(crate) fn encode_digits(digits: &[u32], m: u32) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * m as u64 + d as u64)
}

pub(crate) fn decode_into(mut index: u64, m: u32, out: &mut [u32]) {
    let m = m as u64;
    for slot in out.iter_mut() {
        *slot = (index % m) as u32;
        index /= m;
    }
}

/// An element of Z_m^n. Only meaningful together with its [`GroupParams`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupVec {
    pub digits: Vec<u32>,
}

impl GroupVec {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for GroupVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// The progression start, start + diff, ..., start + (k-1) diff.
pub fn ap_terms(start: &GroupVec, diff: &GroupVec, k: usize, p: &GroupParams) -> Result<Vec<GroupVec>> {
    if k < 1 {
        return Err(Error::usage("progression length must be >= 1"));
    }
    p.check(start)?;
    p.check(diff)?;
    let mut terms = Vec::with_capacity(k);
    let mut cur = start.clone();
    for _ in 0..k {
        let next = p.add(&cur, diff);
        terms.push(cur);
        cur = next;
    }
    Ok(terms)
}

/// True iff all terms are pairwise distinct.
pub fn is_proper(terms: &[GroupVec]) -> bool {
    let mut sorted: Vec<&GroupVec> = terms.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// A proper k-term progression found inside a set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub start: GroupVec,
    pub diff: GroupVec,
    pub k: usize,
    pub terms: Vec<GroupVec>,
}

impl ApWitness {
    pub fn new(start: GroupVec, diff: GroupVec, k: usize, p: &GroupParams) -> Result<Self> {
        let terms = ap_terms(&start, &diff, k, p)?;
        Ok(ApWitness { start, diff, k, terms })
    }

    /// Recomputes the terms from (start, diff) and checks they match and are proper.
    pub fn replays(&self, p: &GroupParams) -> bool {
        match ap_terms(&self.start, &self.diff, self.k, p) {
            Ok(t) => t == self.terms && is_proper(&t),
            Err(_) => false,
        }
    }
}

impl fmt::Display for ApWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "start={} diff={} terms=", self.start, self.diff)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
