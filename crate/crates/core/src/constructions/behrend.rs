//! Behrend spheres in the digit box, with exact integer radii.
//!
//! Digits range over [0, (m-1)/2] for odd m and [0, m/2] for even m. The
//! squared distance to the box centre is scaled by 16 so that it is an
//! integer: a digit a contributes (4a - (m-1))^2 (odd) or (4a - m)^2 (even).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::pointset::PointSet;

use super::frequency::MATERIALIZE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(m: u32) -> Self {
        if m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Which shell was taken, and how many lattice points it has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellSpec {
    pub m: u32,
    pub n: u32,
    /// Centre is `center_numerator / 4` in every coordinate.
    pub center_numerator: u32,
    /// 16 times the squared radius.
    pub r_prime: u64,
    pub count: u128,
}

impl ShellSpec {
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

/// Scaled weights of the allowed digits, indexed by digit.
pub fn digit_weights(m: u32) -> Result<Vec<u64>> {
    if m < 4 {
        return Err(Error::usage(format!("Behrend shells need m >= 4, got {m}")));
    }
    let (top, centre) = match Parity::of(m) {
        Parity::Odd => ((m - 1) / 2, (m - 1) as i64),
        Parity::Even => (m / 2, m as i64),
    };
    Ok((0..=top)
        .map(|a| {
            let off = 4 * a as i64 - centre;
            (off * off) as u64
        })
        .collect())
}

/// `table[j][r]` = number of ways coordinates j..n can reach scaled radius r.
fn suffix_table(weights: &[u64], n: u32) -> Result<Vec<Vec<u128>>> {
    let max_w = *weights.iter().max().expect("nonempty");
    let max_r = (max_w * n as u64) as usize;
    let mut table = vec![vec![0u128; max_r + 1]; n as usize + 1];
    table[n as usize][0] = 1;
    for j in (0..n as usize).rev() {
        let (done, todo) = table.split_at_mut(j + 1);
        let cur = &mut done[j];
        let next = &todo[0];
        for (r, &ways) in next.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for &w in weights {
                let slot = &mut cur[r + w as usize];
                *slot = slot
                    .checked_add(ways)
                    .ok_or_else(|| Error::usage("shell counts overflow u128"))?;
            }
        }
    }
    Ok(table)
}

/// Exact number of digit vectors on each scaled radius.
pub fn shell_counts(m: u32, n: u32) -> Result<BTreeMap<u64, u128>> {
    GroupParams::new(m, n)?;
    let weights = digit_weights(m)?;
    let table = suffix_table(&weights, n)?;
    Ok(table[0]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (r as u64, c))
        .collect())
}

/// The count-maximizing scaled radius (smallest on ties).
pub fn best_radius(counts: &BTreeMap<u64, u128>) -> Option<(u64, u128)> {
    counts
        .iter()
        .fold(None, |best: Option<(u64, u128)>, (&r, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((r, c)),
        })
}

/// Every digit vector on the chosen shell. Without `r_prime` the largest
/// shell is used. A radius with no lattice points yields an empty set and a
/// spec with `count == 0`.
pub fn behrend_shell(m: u32, n: u32, r_prime: Option<u64>) -> Result<(PointSet, ShellSpec)> {
    let params = GroupParams::new(m, n)?;
    let weights = digit_weights(m)?;
    let table = suffix_table(&weights, n)?;
    let r = match r_prime {
        Some(r) => r,
        None => {
            let counts: BTreeMap<u64, u128> = table[0]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(r, &c)| (r as u64, c))
                .collect();
            best_radius(&counts).expect("some shell is nonempty").0
        }
    };
    let count = table[0].get(r as usize).copied().unwrap_or(0);
    let spec = ShellSpec {
        m,
        n,
        center_numerator: match Parity::of(m) {
            Parity::Odd => m - 1,
            Parity::Even => m,
        },
        r_prime: r,
        count,
    };
    if count > MATERIALIZE_CAP as u128 || params.index_len().is_none() {
        return Err(Error::usage(format!(
            "shell with {count} points in {params} is too large to materialize"
        )));
    }
    let mut idx = Vec::with_capacity(count as usize);
    if count > 0 {
        let mut digits = vec![0u32; n as usize];
        walk(&table, &weights, 0, r, &mut digits, m as u64, &mut idx);
    }
    let set = PointSet::from_indices(params, idx)?;
    debug_assert_eq!(set.len() as u128, count);
    Ok((set, spec))
}

fn walk(
    table: &[Vec<u128>],
    weights: &[u64],
    j: usize,
    remaining: u64,
    digits: &mut [u32],
    m: u64,
    out: &mut Vec<u64>,
) {
    if j == digits.len() {
        out.push(digits.iter().rev().fold(0u64, |acc, &d| acc * m + d as u64));
        return;
    }
    for (a, &w) in weights.iter().enumerate() {
        if w > remaining {
            continue;
        }
        let rest = remaining - w;
        if table[j + 1].get(rest as usize).copied().unwrap_or(0) == 0 {
            continue;
        }
        digits[j] = a as u32;
        walk(table, weights, j + 1, rest, digits, m, out);
    }
}

/// sigma_m and the admissible constant C_m = 1 / (3 sqrt(3) sigma_m).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoreticalConstants {
    pub m: u32,
    pub sigma_m: f64,
    pub c_m: f64,
    pub parity: Parity,
}

impl TheoreticalConstants {
    /// Number of allowed digits: (m+1)/2 for odd m, (m+2)/2 for even m.
    pub fn base(&self) -> u32 {
        match self.parity {
            Parity::Odd => self.m.div_ceil(2),
            Parity::Even => (self.m + 2) / 2,
        }
    }

    /// The guaranteed largest-shell size C_m * base^n / sqrt(n).
    pub fn shell_floor(&self, n: u32) -> f64 {
        self.c_m * (self.base() as f64).powi(n as i32) / (n as f64).sqrt()
    }
}

pub fn theoretical_constants(m: u32) -> Result<TheoreticalConstants> {
    if m <= 3 {
        return Err(Error::usage(format!("constants need m >= 4, got {m}")));
    }
    let x = m as f64;
    let parity = Parity::of(m);
    let poly = match parity {
        Parity::Odd => x.powi(4) + 4.0 * x.powi(3) - 14.0 * x * x - 36.0 * x + 45.0,
        Parity::Even => x.powi(4) + 8.0 * x.powi(3) + 4.0 * x * x - 48.0 * x,
    };
    let sigma_m = (poly / 2880.0).sqrt();
    Ok(TheoreticalConstants {
        m,
        sigma_m,
        c_m: 1.0 / (3.0 * 3f64.sqrt() * sigma_m),
        parity,
    })
}
