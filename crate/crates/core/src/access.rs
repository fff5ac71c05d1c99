//! Access structure of the secret sharing scheme defined by a stabilizer code.
//!
//! The secret `s ∈ GF(2)^k` is encoded as the codeword stabilized by all
//! stabilizers and by `(-1)^{s_i} logical_z[i]`. The shares in a set `a` can
//! learn exactly the functionals `c·s` for which some element
//! `S · Π Z̄_i^{c_i}` of that group is supported inside `a`. So the
//! information rank of `a` is the rank of the logical-Z coefficient vectors
//! of group elements vanishing outside `a`.
//!
//! Per subset this is one elimination of the `n` group generators, pivoting on
//! the columns outside `a` first: generators that reduce to zero outside `a`
//! span the supported subgroup and their accumulated tags carry its logical
//! content.

use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::error::Error;
use crate::par::{masks_of_size, Exec};

/// Default cap on `n` for exhaustive subset enumeration.
pub const DEFAULT_MAX_N: usize = 20;

/// A subset of the `n` share indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShareSet {
    n: usize,
    mask: u64,
}

impl ShareSet {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self, Error> {
        if n > 64 {
            return Err(Error::CapExceeded {
                what: "share set",
                n,
                cap: 64,
            });
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::ShareOutOfRange {
                index: 63 - mask.leading_zeros() as usize,
                n,
            });
        }
        Ok(ShareSet { n, mask })
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, Error> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= n || i >= 64 {
                return Err(Error::ShareOutOfRange { index: i, n });
            }
            mask |= 1 << i;
        }
        ShareSet::from_mask(n, mask)
    }

    pub fn empty(n: usize) -> Self {
        ShareSet { n, mask: 0 }
    }

    pub fn all(n: usize) -> Self {
        ShareSet {
            n,
            mask: full_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && (self.mask >> i) & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Self {
        ShareSet {
            n: self.n,
            mask: !self.mask & full_mask(self.n),
        }
    }

    pub fn is_subset_of(&self, other: &ShareSet) -> bool {
        self.mask & !other.mask == 0
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessLabel {
    Qualified,
    Partial,
    Forbidden,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    pub rank: usize,
    pub label: AccessLabel,
}

impl SubsetClass {
    fn from_rank(rank: usize, k: usize) -> Self {
        let label = if rank == k {
            AccessLabel::Qualified
        } else if rank == 0 {
            AccessLabel::Forbidden
        } else {
            AccessLabel::Partial
        };
        SubsetClass { rank, label }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Smallest size at which every share set is qualified.
    pub r: usize,
    /// Largest size at which every share set is forbidden.
    pub t: usize,
    pub gap: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeTally {
    pub size: usize,
    pub qualified: u64,
    pub partial: u64,
    pub forbidden: u64,
}

impl SizeTally {
    pub fn total(&self) -> u64 {
        self.qualified + self.partial + self.forbidden
    }
}

/// Packed group generators of a code: stabilizers with tag 0 and
/// `logical_z[i]` with tag `e_i`.
#[derive(Clone, Debug)]
pub struct ShareScheme {
    n: usize,
    k: usize,
    generators: Vec<(u64, u64, u64)>,
}

impl ShareScheme {
    pub fn new(code: &StabilizerCode) -> Result<Self, Error> {
        let n = code.n();
        if n > 64 {
            return Err(Error::CapExceeded {
                what: "access analysis",
                n,
                cap: 64,
            });
        }
        let stabs = code
            .stabilizers()
            .iter()
            .map(|p| (p.masks().expect("n <= 64"), 0u64));
        let logicals = code
            .logical_z()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.masks().expect("n <= 64"), 1u64 << i));
        let generators = stabs
            .chain(logicals)
            .map(|((x, z), tag)| (x, z, tag))
            .collect();
        Ok(ShareScheme {
            n,
            k: code.k(),
            generators,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of independent secret functionals recoverable from `mask`.
    pub fn info_rank(&self, mask: u64) -> usize {
        let outside = !mask & full_mask(self.n);
        // (restricted symplectic part, tag); pivots keyed by lowest set bit
        let mut basis: Vec<(u32, u128, u64)> = Vec::with_capacity(self.generators.len());
        let mut kernel_tags: Vec<(u32, u64)> = Vec::new();
        for &(x, z, tag) in &self.generators {
            let mut v = (x & outside) as u128 | (((z & outside) as u128) << 64);
            let mut t = tag;
            for &(p, bv, bt) in &basis {
                if (v >> p) & 1 == 1 {
                    v ^= bv;
                    t ^= bt;
                }
            }
            if v != 0 {
                basis.push((v.trailing_zeros(), v, t));
                continue;
            }
            for &(p, kt) in &kernel_tags {
                if (t >> p) & 1 == 1 {
                    t ^= kt;
                }
            }
            if t != 0 {
                kernel_tags.push((t.trailing_zeros(), t));
            }
        }
        kernel_tags.len()
    }

    pub fn classify_mask(&self, mask: u64) -> SubsetClass {
        SubsetClass::from_rank(self.info_rank(mask), self.k)
    }

    fn check_cap(&self, max_n: usize) -> Result<(), Error> {
        if self.n > max_n || self.n > 63 {
            return Err(Error::CapExceeded {
                what: "subset enumeration",
                n: self.n,
                cap: max_n.min(63),
            });
        }
        Ok(())
    }

    /// Thresholds by size-major search, stopping at the first size that has
    /// a counterexample.
    pub fn thresholds(&self, max_n: usize, exec: Exec) -> Result<Thresholds, Error> {
        self.check_cap(max_n)?;
        let n = self.n;
        let mut t = 0;
        for size in 0..=n {
            let masks = masks_of_size(n, size);
            if exec.any(&masks, |&m| self.info_rank(m) != 0) {
                break;
            }
            t = size;
        }
        let mut r = n;
        for size in (0..=n).rev() {
            let masks = masks_of_size(n, size);
            if exec.any(&masks, |&m| self.info_rank(m) != self.k) {
                break;
            }
            r = size;
        }
        Ok(Thresholds { r, t, gap: r - t })
    }

    /// Qualified/partial/forbidden counts for every subset size.
    pub fn summary(&self, max_n: usize, exec: Exec) -> Result<Vec<SizeTally>, Error> {
        self.check_cap(max_n)?;
        let n = self.n;
        let counts = exec.fold_range(
            1u64 << n,
            || vec![[0u64; 3]; n + 1],
            |mut acc, mask| {
                let slot = match self.classify_mask(mask).label {
                    AccessLabel::Qualified => 0,
                    AccessLabel::Partial => 1,
                    AccessLabel::Forbidden => 2,
                };
                acc[mask.count_ones() as usize][slot] += 1;
                acc
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for i in 0..3 {
                        x[i] += y[i];
                    }
                }
                a
            },
        );
        Ok(counts
            .into_iter()
            .enumerate()
            .map(|(size, [q, p, f])| SizeTally {
                size,
                qualified: q,
                partial: p,
                forbidden: f,
            })
            .collect())
    }
}

pub fn subset_info_rank(code: &StabilizerCode, a: &ShareSet) -> Result<usize, Error> {
    check_set(code, a)?;
    Ok(ShareScheme::new(code)?.info_rank(a.mask()))
}

pub fn classify(code: &StabilizerCode, a: &ShareSet) -> Result<SubsetClass, Error> {
    check_set(code, a)?;
    Ok(ShareScheme::new(code)?.classify_mask(a.mask()))
}

pub fn thresholds(code: &StabilizerCode, max_n: usize) -> Result<Thresholds, Error> {
    ShareScheme::new(code)?.thresholds(max_n, Exec::default())
}

pub fn access_summary(code: &StabilizerCode, max_n: usize) -> Result<Vec<SizeTally>, Error> {
    ShareScheme::new(code)?.summary(max_n, Exec::default())
}

fn check_set(code: &StabilizerCode, a: &ShareSet) -> Result<(), Error> {
    if a.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: a.n(),
        });
    }
    Ok(())
}
