//! Fixed tables for the two exceptional boards.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::group::{permutation_parity, GroupElement};

/// Index of the point at infinity on the projective line over F5.
pub const INFINITY: u32 = 5;

/// Image of `z` under `(a z + b) / (c z + d)` on `{0,1,2,3,4,∞}`.
fn mobius(a: u32, b: u32, c: u32, d: u32, z: u32) -> u32 {
    if z == INFINITY {
        return if c == 0 { INFINITY } else { a * inv5(c) % 5 };
    }
    let num = (a * z + b) % 5;
    let den = (c * z + d) % 5;
    if den == 0 {
        INFINITY
    } else {
        num * inv5(den) % 5
    }
}

fn inv5(v: u32) -> u32 {
    // 1*1, 2*3, 4*4 are 1 mod 5
    [0, 1, 3, 2, 4][v as usize % 5]
}

/// Every fractional linear map of P¹(F5) as a permutation of `[0..5)`
/// with `∞ = 5`. A map sends point `i` to `perm[i]`.
pub fn pgl25() -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if (a * d + 25 - b * c) % 5 == 0 {
                        continue;
                    }
                    out.insert((0..6).map(|z| mobius(a, b, c, d, z)).collect());
                }
            }
        }
    }
    out
}

/// Double transpositions and the identity on four points.
pub fn klein_four() -> BTreeSet<Vec<u32>> {
    [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        .iter()
        .map(|p| p.to_vec())
        .collect()
}

/// Even permutations of four points.
pub fn alternating4() -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut p = vec![0u32, 1, 2, 3];
    permute(&mut p, 0, &mut |q| {
        if permutation_parity(q) == 0 {
            out.insert(q.to_vec());
        }
    });
    out
}

fn permute(p: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Reads `q: σ ↦ Σx mod 3` off a subgroup of `S(3, 4)` in which the rotation
/// sum is determined by the permutation.
pub fn calibrate_q(group: &[GroupElement]) -> Result<BTreeMap<Vec<u32>, u32>> {
    let mut q: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for el in group {
        if el.modulus() % 3 != 0 {
            return Err(Error::NotDivisor { a: 3, m: el.modulus() });
        }
        let eta = (el.rotation_sum() % 3) as u32;
        match q.insert(el.sigma().to_vec(), eta) {
            Some(prev) if prev != eta => {
                return Err(Error::Undecided(format!(
                    "rotation sum mod 3 is not a function of the permutation {:?}",
                    el.sigma()
                )))
            }
            _ => {}
        }
    }
    Ok(q)
}
