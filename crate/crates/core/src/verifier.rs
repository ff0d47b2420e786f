//! Detection of proper k-term arithmetic progressions.
//!
//! Every ordered pair (a, b) of distinct members is taken as the first two
//! terms of a progression with difference b - a; the remaining k - 2 terms
//! are generated and looked up. Cost is O(|S|^2 k n) regardless of m^n.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ap_terms, is_proper, ApWitness, GroupParams, GroupVec};
use crate::pointset::PointSet;

/// Below this many members the scan stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipKind {
    Dense,
    Hash,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub k: usize,
    pub pairs_scanned: u64,
    pub witness: Option<ApWitness>,
    pub membership: MembershipKind,
    #[serde(serialize_with = "crate::serialize_duration_ms")]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn is_free(&self) -> bool {
        self.witness.is_none()
    }
}

/// The lexicographically first proper k-AP in `s` (ordered by the encoded
/// indices of its first two terms), if any.
pub fn find_witness(s: &PointSet, k: usize) -> Result<Option<ApWitness>> {
    Ok(verify(s, k)?.witness)
}

pub fn verify(s: &PointSet, k: usize) -> Result<VerifyReport> {
    if k < 3 {
        return Err(Error::usage(format!("progression length must be >= 3, got {k}")));
    }
    let started = Instant::now();
    let params = s.params();
    let membership = if s.is_dense() {
        MembershipKind::Dense
    } else {
        MembershipKind::Hash
    };
    let scanner = Scanner::new(s, k);
    let pairs = AtomicU64::new(0);
    let len = s.len();

    let hit = if len >= PARALLEL_THRESHOLD {
        (0..len)
            .into_par_iter()
            .find_map_first(|i| scanner.scan_from(i, &pairs))
    } else {
        (0..len).find_map(|i| scanner.scan_from(i, &pairs))
    };

    let witness = match hit {
        Some((i, j)) => {
            let a = s.vec_at(i);
            let b = s.vec_at(j);
            let d = params.sub(&b, &a);
            Some(ApWitness::new(a, d, k, &params)?)
        }
        None => None,
    };
    Ok(VerifyReport {
        k,
        pairs_scanned: pairs.into_inner(),
        witness,
        membership,
        elapsed: started.elapsed(),
    })
}

struct Scanner<'a> {
    set: &'a PointSet,
    digits: Vec<u32>,
    strides: Vec<u64>,
    m: u32,
    n: usize,
    k: usize,
}

impl<'a> Scanner<'a> {
    fn new(set: &'a PointSet, k: usize) -> Self {
        let p = set.params();
        let n = p.n() as usize;
        let mut strides = Vec::with_capacity(n);
        let mut acc = 1u64;
        for _ in 0..n {
            strides.push(acc);
            acc = acc.wrapping_mul(p.m() as u64);
        }
        Scanner {
            set,
            digits: set.flat_digits(),
            strides,
            m: p.m(),
            n,
            k,
        }
    }

    /// First partner j (ascending) such that members i, j start a proper k-AP.
    fn scan_from(&self, i: usize, pairs: &AtomicU64) -> Option<(usize, usize)> {
        let n = self.n;
        let m = self.m;
        let a = &self.digits[i * n..(i + 1) * n];
        let mut diff = vec![0u32; n];
        let mut cur = vec![0u32; n];
        let mut scanned = 0u64;
        let mut found = None;
        for j in 0..self.set.len() {
            if j == i {
                continue;
            }
            scanned += 1;
            let b = &self.digits[j * n..(j + 1) * n];
            for t in 0..n {
                diff[t] = if b[t] >= a[t] { b[t] - a[t] } else { b[t] + m - a[t] };
                cur[t] = b[t];
            }
            let mut all_in = true;
            for _ in 2..self.k {
                let mut idx = 0u64;
                for t in 0..n {
                    let next = cur[t] + diff[t];
                    cur[t] = if next >= m { next - m } else { next };
                    idx += cur[t] as u64 * self.strides[t];
                }
                if !self.set.contains_index(idx) {
                    all_in = false;
                    break;
                }
            }
            if all_in && order_at_least(&diff, m, self.k) {
                found = Some((i, j));
                break;
            }
        }
        pairs.fetch_add(scanned, Ordering::Relaxed);
        found
    }
}

/// True iff s * diff != 0 for every 1 <= s < k, i.e. the k terms are distinct.
fn order_at_least(diff: &[u32], m: u32, k: usize) -> bool {
    (1..k as u64).all(|s| diff.iter().any(|&d| !(d as u64 * s).is_multiple_of(m as u64)))
}

/// Randomized falsification for sets known only through a membership oracle.
///
/// Each trial draws a member `a` from `sampler` and a uniform nonzero
/// difference, and checks whether the k-term progression lies in the set and
/// is proper. Returning `None` is not a proof of freeness. The generator is
/// ChaCha8 seeded from `seed`.
pub fn sample_check<M, S>(
    params: &GroupParams,
    member: M,
    mut sampler: S,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<Option<ApWitness>>
where
    M: Fn(&GroupVec) -> bool,
    S: FnMut(&mut ChaCha8Rng) -> GroupVec,
{
    if k < 3 {
        return Err(Error::usage(format!("progression length must be >= 3, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n() as usize;
    for _ in 0..trials {
        let a = sampler(&mut rng);
        params.check(&a)?;
        let d = loop {
            let digits: Vec<u32> = (0..n).map(|_| rng.gen_range(0..params.m())).collect();
            if digits.iter().any(|&x| x != 0) {
                break GroupVec { digits };
            }
        };
        let terms = ap_terms(&a, &d, k, params)?;
        if terms.iter().all(&member) && is_proper(&terms) {
            return Ok(Some(ApWitness {
                start: a,
                diff: d,
                k,
                terms,
            }));
        }
    }
    Ok(None)
}
