//! Small subset systems satisfying the 4-AP condition (**), giving 4-AP-free
//! sets of size 3, 10, 36 and 128 in Z_4^n for n = 1..4.
//!
//! Bit i of an index is coordinate e_(i+1): e1 = 1, e2 = 2, e3 = 4, e4 = 8.

use crate::error::{Error, Result};
use crate::reformulation::SubsetSystem;

/// x ↦ φ(x) on F_2^2, nonzero x only.
const PHI2: [u32; 4] = [0, 1, 3, 2];

/// x ↦ φ(x) on F_2^3, indexed by x: e1 ↦ e1, e2 ↦ e1+e2, e3 ↦ e1+e2+e3.
const PHI3: [u32; 8] = [0, 1, 3, 6, 7, 4, 5, 2];

/// Vectors w of F_2^n with <v, w> = 0.
fn perp(v: u32, n: u32) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|w| (v & w).count_ones().is_multiple_of(2))
        .collect()
}

pub fn r4_system(n: u32) -> Result<SubsetSystem> {
    let mut sys = SubsetSystem::empty(n)?;
    let full: Vec<u32> = (0..1u32 << n).collect();
    match n {
        1 => {
            sys.set_part(0, &full)?;
            sys.set_part(1, &[0])?;
        }
        2 | 3 => {
            let phi: &[u32] = if n == 2 { &PHI2 } else { &PHI3 };
            sys.set_part(0, &full)?;
            for x in 1..1u32 << n {
                sys.set_part(x, &perp(phi[x as usize], n))?;
            }
        }
        4 => {
            for x in 0..8u32 {
                let part = perp(PHI3[x as usize] | 8, 4);
                sys.set_part(x, &part)?;
                sys.set_part(x | 8, &part)?;
            }
        }
        _ => return Err(Error::usage(format!("r4_system needs 1 <= n <= 4, got {n}"))),
    }
    Ok(sys)
}
