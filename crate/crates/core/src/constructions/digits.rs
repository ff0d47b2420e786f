//! Digit alphabets D ⊆ Z_m and the digit-level analysis of progressions
//! whose terms all lie in D.
//!
//! An equal-frequency set over D is k-AP-free when every nonconstant
//! progression in D is ruled out by the balance of digit counts across
//! positions. [`classify_digit_aps`] lists those progressions, checks the
//! family's structural claims and runs an elimination cascade on them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SalemOdd,
    SalemEven,
    Mod11,
    PrimePowerA,
    PrimePowerB,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::SalemOdd => "salem-odd",
            Family::SalemEven => "salem-even",
            Family::Mod11 => "mod11",
            Family::PrimePowerA => "prime-power-a",
            Family::PrimePowerB => "prime-power-b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitSet {
    pub m: u32,
    /// Sorted, distinct, all < m.
    pub digits: Vec<u32>,
    /// The marked digit p^(s-1)-1 for family A, {0..p-1} for family B.
    pub special: Vec<u32>,
    pub family: Family,
    pub p: Option<u32>,
    pub s: Option<u32>,
}

impl DigitSet {
    /// {0, ..., (m-1)/2} for odd m >= 5.
    pub fn salem_odd(m: u32) -> Result<Self> {
        if m.is_multiple_of(2) || m < 5 {
            return Err(Error::usage(format!("salem-odd digits need odd m >= 5, got {m}")));
        }
        Ok(Self::plain(m, (0..=(m - 1) / 2).collect(), Family::SalemOdd))
    }

    /// {0, ..., m/2} for even m >= 4.
    pub fn salem_even(m: u32) -> Result<Self> {
        if m % 2 == 1 || m < 4 {
            return Err(Error::usage(format!("salem-even digits need even m >= 4, got {m}")));
        }
        Ok(Self::plain(m, (0..=m / 2).collect(), Family::SalemEven))
    }

    /// {0, ..., 6} modulo 11.
    pub fn mod11() -> Self {
        Self::plain(11, (0..7).collect(), Family::Mod11)
    }

    fn plain(m: u32, digits: Vec<u32>, family: Family) -> Self {
        DigitSet {
            m,
            digits,
            special: Vec::new(),
            family,
            p: None,
            s: None,
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.digits.binary_search(&x).is_ok()
    }

    /// Progression length the family is built to avoid.
    pub fn default_k(&self) -> u32 {
        match (self.family, self.p, self.s) {
            (Family::SalemOdd | Family::SalemEven, _, _) => 3,
            (Family::Mod11, _, _) => 4,
            (Family::PrimePowerA, Some(p), Some(s)) => p.pow(s - 1) + 1,
            (Family::PrimePowerB, Some(p), _) => p + 1,
            _ => 3,
        }
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "family={} m={} |D|={} D={{{}}}",
            self.family,
            self.m,
            self.len(),
            list(&self.digits)
        )?;
        if !self.special.is_empty() {
            write!(f, " special={{{}}}", list(&self.special))?;
        }
        Ok(())
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn prime_power(p: u32, s: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::usage(format!("p must be prime, got {p}")));
    }
    p.checked_pow(s)
        .filter(|&m| m <= 1 << 24)
        .ok_or_else(|| Error::usage(format!("{p}^{s} is too large")))
}

/// Z_m minus {i p^(s-1) - 1 : i = 2..p}, m = p^s; special digit p^(s-1) - 1.
pub fn primepower_digits_a(p: u32, s: u32) -> Result<DigitSet> {
    if s < 2 {
        return Err(Error::usage(format!("prime-power-a needs s >= 2, got {s}")));
    }
    let m = prime_power(p, s)?;
    let q = p.pow(s - 1);
    let removed: HashSet<u32> = (2..=p).map(|i| i * q - 1).collect();
    Ok(DigitSet {
        m,
        digits: (0..m).filter(|x| !removed.contains(x)).collect(),
        special: vec![q - 1],
        family: Family::PrimePowerA,
        p: Some(p),
        s: Some(s),
    })
}

/// (Z_m minus (D1 ∪ D2)) ∪ D3 with D1 = multiples of p^(s-2),
/// D2 = {i p^(s-1) + j : 1 <= j <= p-1}, D3 = {0..p-1} (marked special).
pub fn primepower_digits_b(p: u32, s: u32) -> Result<DigitSet> {
    if s < 3 {
        return Err(Error::usage(format!("prime-power-b needs s >= 3, got {s}")));
    }
    let m = prime_power(p, s)?;
    let d1 = p.pow(s - 2);
    let d2 = p.pow(s - 1);
    let digits = (0..m)
        .filter(|&x| x < p || (x % d1 != 0 && !(x % d2 >= 1 && x % d2 < p)))
        .collect();
    Ok(DigitSet {
        m,
        digits,
        special: (0..p).collect(),
        family: Family::PrimePowerB,
        p: Some(p),
        s: Some(s),
    })
}

/// Every progression (a, a+d, ..., a+(k-1)d) mod m with d != 0 and all terms
/// in D, ordered by (a, d).
pub fn digit_progressions(d: &DigitSet, k: u32) -> Vec<Vec<u32>> {
    let m = d.m as u64;
    let mut out = Vec::new();
    for &a in &d.digits {
        for step in 1..m {
            let terms: Vec<u32> = (0..k as u64).map(|i| ((a as u64 + i * step) % m) as u32).collect();
            if terms.iter().all(|&x| d.contains(x)) {
                out.push(terms);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum CascadeStep {
    /// Digit never occurs at some position, so no pattern using it survives.
    Digit { digit: u32, remaining: Vec<Vec<u32>> },
    /// Two balance equations add up to a one-signed combination.
    Forced {
        patterns: Vec<Vec<u32>>,
        remaining: Vec<Vec<u32>>,
    },
}

impl CascadeStep {
    pub fn remaining(&self) -> &[Vec<u32>] {
        match self {
            CascadeStep::Digit { remaining, .. } | CascadeStep::Forced { remaining, .. } => remaining,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeReport {
    pub steps: Vec<CascadeStep>,
    pub survivors: Vec<Vec<u32>>,
    /// Every survivor has equal first and last term.
    pub certified: bool,
}

/// Balance-equation rule is quadratic in the number of equations; skip it
/// beyond this many patterns.
pub const PAIR_RULE_MAX_PATTERNS: usize = 200;

/// Eliminate patterns that cannot occur with positive multiplicity in a set
/// where every digit has the same count at every position.
///
/// Rule 1: a digit missing from some position removes every pattern that
/// uses it. Rule 2: for digit x and positions j, j', the count of patterns
/// with x at j minus those with x at j' is zero; when two such equations sum
/// to a nonzero combination with one sign, its support is eliminated
/// (smallest support first, then lexicographic). Rule 1 is retried after
/// every step.
pub fn frequency_cascade(patterns: &[Vec<u32>], k: u32, allow_pair_rule: bool) -> CascadeReport {
    let mut live: BTreeSet<Vec<u32>> = patterns.iter().cloned().collect();
    let mut steps = Vec::new();
    let k = k as usize;
    loop {
        if let Some(x) = missing_digit(&live, k) {
            live.retain(|t| !t.contains(&x));
            steps.push(CascadeStep::Digit {
                digit: x,
                remaining: live.iter().cloned().collect(),
            });
            continue;
        }
        if !allow_pair_rule || live.len() > PAIR_RULE_MAX_PATTERNS {
            break;
        }
        let Some(forced) = forced_support(&live, k) else {
            break;
        };
        for t in &forced {
            live.remove(t);
        }
        steps.push(CascadeStep::Forced {
            patterns: forced,
            remaining: live.iter().cloned().collect(),
        });
    }
    let survivors: Vec<Vec<u32>> = live.into_iter().collect();
    let certified = survivors.iter().all(|t| t.first() == t.last());
    CascadeReport {
        steps,
        survivors,
        certified,
    }
}

fn missing_digit(live: &BTreeSet<Vec<u32>>, k: usize) -> Option<u32> {
    let used: BTreeSet<u32> = live.iter().flatten().copied().collect();
    used.into_iter()
        .find(|&x| (0..k).any(|j| !live.iter().any(|t| t[j] == x)))
}

fn forced_support(live: &BTreeSet<Vec<u32>>, k: usize) -> Option<Vec<Vec<u32>>> {
    let pats: Vec<&Vec<u32>> = live.iter().collect();
    let digits: BTreeSet<u32> = live.iter().flatten().copied().collect();
    let mut eqs: Vec<Vec<i32>> = Vec::new();
    for &x in &digits {
        for j in 0..k {
            for jj in j + 1..k {
                let e: Vec<i32> = pats.iter().map(|t| (t[j] == x) as i32 - (t[jj] == x) as i32).collect();
                if e.iter().any(|&c| c != 0) {
                    eqs.push(e.iter().map(|c| -c).collect());
                    eqs.push(e);
                }
            }
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for (i, a) in eqs.iter().enumerate() {
        for b in &eqs[i + 1..] {
            let mut support = Vec::new();
            let mut signed = true;
            for (t, (&x, &y)) in a.iter().zip(b).enumerate() {
                match x + y {
                    0 => {}
                    s if s > 0 => support.push(t),
                    _ => {
                        signed = false;
                        break;
                    }
                }
            }
            if !signed || support.is_empty() {
                continue;
            }
            // patterns are sorted, so index order is lexicographic order
            let better = best
                .as_ref()
                .is_none_or(|cur| (support.len(), &support) < (cur.len(), cur));
            if better {
                best = Some(support);
            }
        }
    }
    best.map(|s| s.into_iter().map(|i| pats[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitViolation {
    pub terms: Vec<u32>,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitReport {
    pub family: Family,
    pub m: u32,
    pub k: u32,
    pub digit_count: usize,
    pub progressions: usize,
    pub classes: BTreeMap<&'static str, usize>,
    pub violations: Vec<DigitViolation>,
    pub cascade: CascadeReport,
}

impl DigitReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn classify_a(t: &[u32], special: u32) -> std::result::Result<&'static str, &'static str> {
    let first_last = t[0] == t[t.len() - 1];
    let has_special = t.contains(&special);
    let ends_special = t[0] == special || t[t.len() - 1] == special;
    if has_special {
        if ends_special {
            Err("special digit at an end position")
        } else {
            Ok("special-interior")
        }
    } else if first_last {
        Ok("first-equals-last")
    } else {
        Err("distinct ends without the special digit")
    }
}

fn classify_b(t: &[u32], low: &[u32]) -> std::result::Result<&'static str, &'static str> {
    let in_low = |x: &u32| low.contains(x);
    if t[0] == 0 {
        return Err("starts with 0");
    }
    if !t.contains(&0) && in_low(&t[0]) {
        return Err("starts in the low digits without containing 0");
    }
    if t.contains(&0) {
        return Ok("contains-0-interior");
    }
    if t.iter().any(in_low) {
        return Ok("low-digit-interior");
    }
    if t[0] == t[t.len() - 1] {
        Ok("first-equals-last")
    } else {
        Err("distinct ends avoiding the low digits")
    }
}

/// Enumerate every nonconstant in-D progression of length k, check the
/// family's structural claims and run the elimination cascade.
pub fn classify_digit_aps(d: &DigitSet, k: u32) -> Result<DigitReport> {
    if k < 3 {
        return Err(Error::usage(format!("k must be >= 3, got {k}")));
    }
    let progs = digit_progressions(d, k);
    let mut classes = BTreeMap::new();
    let mut violations = Vec::new();
    for t in &progs {
        let verdict = match d.family {
            Family::PrimePowerA => classify_a(t, d.special[0]),
            Family::PrimePowerB => classify_b(t, &d.special),
            _ => Ok(if t[0] == t[t.len() - 1] {
                "first-equals-last"
            } else {
                "distinct-ends"
            }),
        };
        match verdict {
            Ok(class) => *classes.entry(class).or_insert(0) += 1,
            Err(reason) => violations.push(DigitViolation {
                terms: t.clone(),
                reason,
            }),
        }
    }
    let cascade = frequency_cascade(&progs, k, true);
    if matches!(d.family, Family::SalemOdd | Family::SalemEven | Family::Mod11) {
        for t in cascade.survivors.iter().filter(|t| t.first() != t.last()) {
            violations.push(DigitViolation {
                terms: t.clone(),
                reason: "survives the elimination cascade",
            });
        }
    }
    Ok(DigitReport {
        family: d.family,
        m: d.m,
        k,
        digit_count: d.len(),
        progressions: progs.len(),
        classes,
        violations,
        cascade,
    })
}
