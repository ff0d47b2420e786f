//! Code-based and support-based subset systems for 3-AP-free sets in Z_4^n.

use num_bigint::BigUint;
use serde::Serialize;

use crate::codes::{code_size, lexicode, min_distance, BinaryCode, CodeTable, TableName};
use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::pointset::PointSet;
use crate::reformulation::SubsetSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub i: u32,
    pub binom: u128,
    pub code_size: u64,
    pub value: u128,
}

/// The best value of sum_{i=t+1}^{n} binom(n,i) C(i,i-t) over t in [0, n].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundBreakdown {
    pub n: u32,
    pub table: TableName,
    pub t: u32,
    pub terms: Vec<BoundTerm>,
    pub total: u128,
}

impl BoundBreakdown {
    /// "80+40+4".
    pub fn terms_expr(&self) -> String {
        self.terms
            .iter()
            .map(|t| t.value.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn bound_for_t(n: u32, t: u32, table: &CodeTable, fallback_greedy: bool) -> Result<Vec<BoundTerm>> {
    (t + 1..=n)
        .map(|i| {
            let c = code_size(i, i - t, table, fallback_greedy)?;
            let b = binomial(n, i);
            Ok(BoundTerm {
                i,
                binom: b,
                code_size: c,
                value: b * c as u128,
            })
        })
        .collect()
}

/// Table-only evaluation of the coding bound; misses are errors.
pub fn bound_theorem_const(n: u32, table: &CodeTable) -> Result<BoundBreakdown> {
    bound_theorem_const_with(n, table, false)
}

/// As [`bound_theorem_const`], optionally filling table gaps with greedy
/// lexicode sizes. Ties in the maximum go to the smallest t.
pub fn bound_theorem_const_with(n: u32, table: &CodeTable, fallback_greedy: bool) -> Result<BoundBreakdown> {
    if n < 1 {
        return Err(Error::usage("n must be >= 1"));
    }
    let mut best: Option<BoundBreakdown> = None;
    for t in 0..=n {
        let terms = bound_for_t(n, t, table, fallback_greedy)?;
        let total: u128 = terms.iter().map(|x| x.value).sum();
        if best.as_ref().is_none_or(|b| total > b.total) {
            best = Some(BoundBreakdown {
                n,
                table: table.name,
                t,
                terms,
                total,
            });
        }
    }
    Ok(best.expect("t = n always evaluated"))
}

/// Greedy code generator for [`coding_system`].
pub fn greedy_codes(length: u32, d: u32) -> Result<BinaryCode> {
    lexicode(length, d)
}

/// The coding construction: A(y) is empty for Hamming weight |y| <= t, and
/// for |y| = i > t it is a distance-(i - t) code of length i placed on the
/// support of y (code coordinate j goes to the j-th set bit of y).
pub fn coding_system<G>(n: u32, t: u32, mut codegen: G) -> Result<SubsetSystem>
where
    G: FnMut(u32, u32) -> Result<BinaryCode>,
{
    if t > n {
        return Err(Error::usage(format!("need 0 <= t <= n, got t={t}, n={n}")));
    }
    let mut sys = SubsetSystem::empty(n)?;
    let mut codes: Vec<Option<BinaryCode>> = vec![None; n as usize + 1];
    for i in t + 1..=n {
        let need = i - t;
        let code = codegen(i, need)?;
        if code.length != i {
            return Err(Error::construction(format!(
                "code generator returned length {} for requested length {i}",
                code.length
            )));
        }
        let mut sorted = code.words.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != code.words.len() || code.words.iter().any(|&w| w >> i != 0) {
            return Err(Error::construction(format!("invalid codewords for length {i}")));
        }
        if let Some(d) = min_distance(&code) {
            if d < need {
                return Err(Error::construction(format!(
                    "code of length {i} has distance {d}, need {need}"
                )));
            }
        }
        codes[i as usize] = Some(code);
    }
    for y in 0..(1u32 << n) {
        let weight = y.count_ones();
        if weight <= t {
            continue;
        }
        let code = codes[weight as usize].as_ref().expect("built above");
        let support: Vec<u32> = (0..n).filter(|j| y >> j & 1 == 1).collect();
        let embedded: Vec<u32> = code
            .words
            .iter()
            .map(|&w| {
                support
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| w >> j & 1 == 1)
                    .fold(0u32, |acc, (_, &pos)| acc | 1 << pos)
            })
            .collect();
        sys.set_part(y, &embedded)?;
    }
    Ok(sys)
}

/// A(x) = every vector supported inside supp(x) when |supp(x)| = r, else empty.
pub fn komlos_system(n: u32, r: u32) -> Result<SubsetSystem> {
    if r > n {
        return Err(Error::usage(format!("need 0 <= r <= n, got r={r}, n={n}")));
    }
    let mut sys = SubsetSystem::empty(n)?;
    for x in 0..(1u32 << n) {
        if x.count_ones() != r {
            continue;
        }
        // all submasks of x
        let mut subs = Vec::with_capacity(1 << r);
        let mut v = x;
        loop {
            subs.push(v);
            if v == 0 {
                break;
            }
            v = (v - 1) & x;
        }
        sys.set_part(x, &subs)?;
    }
    Ok(sys)
}

/// All vectors of Z_4^n with exactly floor(n/3) coordinates equal to 1 and
/// every other coordinate in {0, 2}.
pub fn komlos_set(n: u32) -> Result<PointSet> {
    let params = GroupParams::new(4, n)?;
    if params.dense_len().is_none() {
        return Err(Error::usage(format!("{params} is too large to materialize")));
    }
    let ones = n / 3;
    let mut idx = Vec::new();
    for ones_mask in 0..(1u32 << n) {
        if ones_mask.count_ones() != ones {
            continue;
        }
        let rest: Vec<u32> = (0..n).filter(|j| ones_mask >> j & 1 == 0).collect();
        for twos in 0..(1u32 << rest.len()) {
            let mut index = 0u64;
            for j in (0..n).rev() {
                let digit = if ones_mask >> j & 1 == 1 {
                    1
                } else {
                    let pos = rest.iter().position(|&r| r == j).expect("j in rest");
                    2 * (twos >> pos & 1)
                };
                index = index * 4 + digit as u64;
            }
            idx.push(index);
        }
    }
    PointSet::from_indices(params, idx)
}

/// binom(n, floor(n/3)) * 2^(n - floor(n/3)), exact.
pub fn komlos_size(n: u32) -> BigUint {
    BigUint::from(binomial(n, n / 3)) << (n - n / 3)
}
