//! Exhaustive minimum-distance search.
//!
//! The distance of a stabilizer code is the least weight of a Pauli operator
//! that commutes with every stabilizer but is not itself in the stabilizer
//! group. Signs are irrelevant and ignored. The search visits weights in
//! increasing order, supports in increasing mask order and, on each support,
//! letter assignments in X < Y < Z order, so the witness is deterministic.

use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::error::Error;
use crate::par::{masks_of_size, Exec};
use crate::pauli::PauliString;

/// Recommended upper bound on `n` for the brute-force search.
pub const DISTANCE_MAX_N: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: usize,
    pub witness: PauliString,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceOutcome {
    Found(DistanceResult),
    /// No logical operator of weight `<= max_weight` exists.
    ExceedsMaxWeight(usize),
}

impl DistanceOutcome {
    pub fn distance(&self) -> Option<usize> {
        match self {
            DistanceOutcome::Found(r) => Some(r.d),
            DistanceOutcome::ExceedsMaxWeight(_) => None,
        }
    }
}

/// Serializable summary used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub d: Option<usize>,
    pub witness: Option<String>,
    pub max_weight: usize,
}

impl DistanceSummary {
    pub fn new(outcome: &DistanceOutcome, max_weight: usize) -> Self {
        match outcome {
            DistanceOutcome::Found(r) => DistanceSummary {
                d: Some(r.d),
                witness: Some(r.witness.to_string()),
                max_weight,
            },
            DistanceOutcome::ExceedsMaxWeight(_) => DistanceSummary {
                d: None,
                witness: None,
                max_weight,
            },
        }
    }
}

/// Packed sign-free stabilizer group: `x` in the low 64 bits, `z` in the high.
struct PackedGroup {
    generators: Vec<(u64, u64)>,
    // echelon rows keyed by their lowest set bit
    echelon: Vec<(u32, u128)>,
}

impl PackedGroup {
    fn new(code: &StabilizerCode) -> Self {
        let generators: Vec<(u64, u64)> = code
            .stabilizers()
            .iter()
            .map(|p| p.masks().expect("n <= 64"))
            .collect();
        let mut echelon: Vec<(u32, u128)> = Vec::new();
        for &(x, z) in &generators {
            let v = reduce(&echelon, pack(x, z));
            if v != 0 {
                let pivot = v.trailing_zeros();
                for (_, row) in echelon.iter_mut() {
                    if (*row >> pivot) & 1 == 1 {
                        *row ^= v;
                    }
                }
                echelon.push((pivot, v));
            }
        }
        PackedGroup {
            generators,
            echelon,
        }
    }

    fn commutes_with_all(&self, x: u64, z: u64) -> bool {
        self.generators
            .iter()
            .all(|&(sx, sz)| ((x & sz).count_ones() + (z & sx).count_ones()).is_multiple_of(2))
    }

    fn contains(&self, x: u64, z: u64) -> bool {
        reduce(&self.echelon, pack(x, z)) == 0
    }
}

fn pack(x: u64, z: u64) -> u128 {
    x as u128 | ((z as u128) << 64)
}

fn reduce(echelon: &[(u32, u128)], mut v: u128) -> u128 {
    for &(pivot, row) in echelon {
        if (v >> pivot) & 1 == 1 {
            v ^= row;
        }
    }
    v
}

/// Searches all Paulis of weight `1..=max_weight` for a nontrivial logical.
pub fn min_distance_brute(code: &StabilizerCode, max_weight: usize) -> Result<DistanceOutcome, Error> {
    min_distance_brute_with(code, max_weight, Exec::default())
}

pub fn min_distance_brute_with(
    code: &StabilizerCode,
    max_weight: usize,
    exec: Exec,
) -> Result<DistanceOutcome, Error> {
    let n = code.n();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "distance search",
            n,
            cap: 64,
        });
    }
    let group = PackedGroup::new(code);
    for w in 1..=max_weight.min(n) {
        let supports = masks_of_size(n, w);
        let hit = exec.find_map_first(&supports, |&support| search_support(&group, support));
        if let Some((x, z)) = hit {
            return Ok(DistanceOutcome::Found(DistanceResult {
                d: w,
                witness: PauliString::from_masks(n, x, z),
            }));
        }
    }
    Ok(DistanceOutcome::ExceedsMaxWeight(max_weight))
}

fn search_support(group: &PackedGroup, support: u64) -> Option<(u64, u64)> {
    let qubits: Vec<u32> = (0..64).filter(|&i| (support >> i) & 1 == 1).collect();
    let w = qubits.len() as u32;
    // letters per qubit: 0 = X, 1 = Y, 2 = Z; the first qubit is the most
    // significant digit.
    for code in 0..3u64.pow(w) {
        let mut rest = code;
        let (mut x, mut z) = (0u64, 0u64);
        for &q in qubits.iter().rev() {
            let bit = 1u64 << q;
            match rest % 3 {
                0 => x |= bit,
                1 => {
                    x |= bit;
                    z |= bit;
                }
                _ => z |= bit,
            }
            rest /= 3;
        }
        if group.commutes_with_all(x, z) && !group.contains(x, z) {
            return Some((x, z));
        }
    }
    None
}
