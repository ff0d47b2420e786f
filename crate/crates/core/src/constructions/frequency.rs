//! Equal-frequency ("Salem–Spencer") sets: every allowed digit occurs the
//! same number of times in every vector.
//!
//! When the alphabet size does not divide n, the trailing coordinates are
//! held constant at the smallest digit. Constant coordinates only ever carry
//! constant progressions, so freeness is unaffected.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::digits::DigitSet;
use crate::error::{Error, Result};
use crate::group::{GroupParams, GroupVec};
use crate::pointset::PointSet;

/// Refuse to enumerate sets larger than this.
pub const MATERIALIZE_CAP: u64 = 50_000_000;

/// (sum c_i)! / prod c_i!, exact.
pub fn multinomial(counts: &[u32]) -> BigUint {
    let mut total = 0u32;
    let mut acc = BigUint::from(1u32);
    for &c in counts {
        for i in 1..=c {
            total += 1;
            acc = acc * BigUint::from(total) / BigUint::from(i);
        }
    }
    acc
}

/// Number of coordinates carrying each digit, and the padded tail length.
fn layout(alphabet: usize, n: u32) -> (u32, u32) {
    let per = n / alphabet as u32;
    (per, n - per * alphabet as u32)
}

/// Size of the equal-frequency set over `alphabet` digits in dimension n.
pub fn equal_frequency_size(alphabet: usize, n: u32) -> BigUint {
    let (per, _) = layout(alphabet, n);
    multinomial(&vec![per; alphabet])
}

/// Calls `f` with every arrangement of the multiset given by `counts`
/// (digit, multiplicity), in lexicographic order.
fn for_each_arrangement(counts: &mut [(u32, u32)], out: &mut Vec<u32>, len: usize, f: &mut impl FnMut(&[u32])) {
    if out.len() == len {
        f(out);
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 == 0 {
            continue;
        }
        counts[i].1 -= 1;
        out.push(counts[i].0);
        for_each_arrangement(counts, out, len, f);
        out.pop();
        counts[i].1 += 1;
    }
}

fn materialize_frequency(params: GroupParams, digits: &[u32], n: u32) -> Result<PointSet> {
    let (per, _pad) = layout(digits.len(), n);
    let size = equal_frequency_size(digits.len(), n);
    if size > BigUint::from(MATERIALIZE_CAP) || params.index_len().is_none() {
        return Err(Error::usage(format!(
            "equal-frequency set of size {size} in {params} is too large to materialize"
        )));
    }
    let pad_digit = *digits.iter().min().expect("nonempty alphabet");
    let body = (per as usize) * digits.len();
    let mut counts: Vec<(u32, u32)> = digits.iter().map(|&d| (d, per)).collect();
    counts.sort_unstable();
    let m = params.m() as u64;
    // index contribution of the constant tail
    let tail: u64 = (body..n as usize).fold(0u64, |acc, j| acc + pad_digit as u64 * m.pow(j as u32));
    let mut idx = Vec::new();
    let mut buf = Vec::with_capacity(body);
    for_each_arrangement(&mut counts, &mut buf, body, &mut |v| {
        let head = v.iter().rev().fold(0u64, |acc, &d| acc * m + d as u64);
        idx.push(head + tail);
    });
    PointSet::from_indices(params, idx)
}

/// Digits {0, ..., (m-1)/2} with equal frequencies; 3-AP-free for odd m >= 5.
pub fn salem_spencer_odd(m: u32, n: u32) -> Result<PointSet> {
    if m.is_multiple_of(2) || m < 5 {
        return Err(Error::usage(format!("salem_spencer_odd needs odd m >= 5, got {m}")));
    }
    let params = GroupParams::new(m, n)?;
    let digits: Vec<u32> = (0..=(m - 1) / 2).collect();
    materialize_frequency(params, &digits, n)
}

/// Equal-frequency set over an arbitrary digit set; requires n >= |D|.
pub fn equal_frequency_set(d: &DigitSet, n: u32) -> Result<PointSet> {
    if (n as usize) < d.digits.len() {
        return Err(Error::usage(format!("need n >= |D| = {}, got n = {n}", d.digits.len())));
    }
    let params = GroupParams::new(d.m, n)?;
    materialize_frequency(params, &d.digits, n)
}

/// Digits {0..6} modulo 11 with equal frequencies; free of proper 4-APs.
pub fn mod11_k4(n: u32) -> Result<PointSet> {
    if n < 7 {
        return Err(Error::usage(format!("mod11_k4 needs n >= 7, got {n}")));
    }
    equal_frequency_set(&DigitSet::mod11(), n)
}

/// Membership test for the (possibly unmaterializable) equal-frequency set.
pub fn equal_frequency_member(d: &DigitSet, n: u32) -> impl Fn(&GroupVec) -> bool + '_ {
    let (per, _) = layout(d.digits.len(), n);
    let body = per as usize * d.digits.len();
    let pad = *d.digits.iter().min().expect("nonempty alphabet");
    move |v: &GroupVec| {
        if v.digits.len() != n as usize || v.digits[body..].iter().any(|&x| x != pad) {
            return false;
        }
        let mut counts = std::collections::HashMap::new();
        for &x in &v.digits[..body] {
            *counts.entry(x).or_insert(0u32) += 1;
        }
        counts.len() == d.digits.len() && d.digits.iter().all(|x| counts.get(x) == Some(&per))
    }
}

/// Uniform sampler over the equal-frequency set: shuffle the canonical vector.
pub fn equal_frequency_sampler(d: &DigitSet, n: u32) -> impl FnMut(&mut ChaCha8Rng) -> GroupVec + '_ {
    let (per, pad) = layout(d.digits.len(), n);
    let pad_digit = *d.digits.iter().min().expect("nonempty alphabet");
    let body: Vec<u32> = d
        .digits
        .iter()
        .flat_map(|&x| std::iter::repeat_n(x, per as usize))
        .collect();
    move |rng: &mut ChaCha8Rng| {
        let mut digits = body.clone();
        digits.shuffle(rng);
        digits.extend(std::iter::repeat_n(pad_digit, pad as usize));
        GroupVec { digits }
    }
}
