//! Threshold-gap bounds, evaluated exactly.
//!
//! * quantum upper bound for an `[[n,k,d]]` code: `r - t <= n + 2 - 2d`
//! * classical lower bound with `q`-ary shares: `r - t >= (r + 1)/q`
//! * linear classical lower bound, for every `0 <= m <= k-1`:
//!   `r - t >= (q^m - 1)/(q^{m+1} - 1)·(n+2) + (q^{m+1} - q^m)/(q^{m+1} - 1)·(k - 2m)`
//!
//! A code beats every classical scheme with 1-bit shares when
//! `n + 2 - 2d < (n + 2 - d)/2`, and every linear one when the quantum upper
//! bound falls below the linear lower bound for some `m`.
//!
//! The printed form of the linear criterion compares `n + 2 - d` (not
//! `n + 2 - 2d`) against the linear bound. Combining the two bounds gives
//! `n + 2 - 2d`, and only that form reproduces the published `[[27,3,9]]` and
//! `[[28,3,9]]` entries, so [`Eq5Mode::Corrected`] is the default and
//! [`Eq5Mode::Literal`] keeps the printed form available.
//!
//! Everything here is integer or big-rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for Rational {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Domain(format!("not a fraction: {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// `(n, k, d)` of a binary quantum code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

impl CodeParams {
    pub fn new(n: u64, k: u64, d: u64) -> Result<Self, Error> {
        if k < 1 || k > n {
            return Err(Error::Domain(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        if d < 1 || d > n {
            return Err(Error::Domain(format!("need 1 <= d <= n, got n={n}, d={d}")));
        }
        Ok(CodeParams { n, k, d })
    }

    /// Quantum Singleton bound `k <= n - 2d + 2`.
    pub fn satisfies_singleton(&self) -> bool {
        self.k as i128 <= self.n as i128 - 2 * self.d as i128 + 2
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// `n + 2 - 2d`, unclamped.
pub fn quantum_gap_upper(p: &CodeParams) -> i128 {
    p.n as i128 + 2 - 2 * p.d as i128
}

/// `(r + 1)/q`.
pub fn classical_gap_lower(q: u64, r: u64) -> Result<Rational, Error> {
    if q < 2 {
        return Err(Error::Domain(format!("share alphabet q must be >= 2, got {q}")));
    }
    if r < 1 {
        return Err(Error::Domain(format!("reconstruction threshold r must be >= 1, got {r}")));
    }
    Ok(Rational::new(BigInt::from(r) + 1, q))
}

/// Linear-scheme lower bound at a given `m`.
pub fn linear_gap_lower(q: u64, n: u64, k: u64, m: u64) -> Result<Rational, Error> {
    if q < 2 {
        return Err(Error::Domain(format!("share alphabet q must be >= 2, got {q}")));
    }
    if m >= k {
        return Err(Error::Domain(format!("m must lie in [0, k-1] = [0, {}], got {m}", k as i128 - 1)));
    }
    let q = BigInt::from(q);
    let q_m: BigInt = Pow::pow(&q, m);
    let q_m1: BigInt = &q_m * &q;
    let denom = &q_m1 - BigInt::one();
    let first = Rational::new(&q_m - BigInt::one(), denom.clone()) * Rational::integer(BigInt::from(n) + 2);
    let second = Rational::new(&q_m1 - &q_m, denom)
        * Rational::integer(BigInt::from(k) - 2 * BigInt::from(m));
    Ok(first + second)
}

/// `n + 2 - 2d < (n + 2 - d)/2`, compared as `2(n + 2 - 2d) < n + 2 - d`.
pub fn supremacy_eq4(p: &CodeParams) -> bool {
    let lhs = Rational::integer(quantum_gap_upper(p));
    let rhs = Rational::new(p.n as i128 + 2 - p.d as i128, 2);
    lhs.cmp(&rhs) == Ordering::Less
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eq5Mode {
    /// Left side `n + 2 - 2d`.
    #[default]
    Corrected,
    /// Left side `n + 2 - d`, as printed.
    Literal,
}

impl Eq5Mode {
    pub fn lhs(self, p: &CodeParams) -> i128 {
        match self {
            Eq5Mode::Corrected => quantum_gap_upper(p),
            Eq5Mode::Literal => p.n as i128 + 2 - p.d as i128,
        }
    }
}

impl fmt::Display for Eq5Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eq5Mode::Corrected => "corrected",
            Eq5Mode::Literal => "literal",
        })
    }
}

impl FromStr for Eq5Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corrected" => Ok(Eq5Mode::Corrected),
            "literal" => Ok(Eq5Mode::Literal),
            other => Err(Error::Domain(format!("unknown eq5 mode {other:?}"))),
        }
    }
}

/// Smallest `m` in `[0, k-1]` whose linear lower bound exceeds the mode's
/// left side.
pub fn supremacy_eq5(p: &CodeParams, q: u64, mode: Eq5Mode) -> Result<Option<u64>, Error> {
    let lhs = Rational::integer(mode.lhs(p));
    for m in 0..p.k {
        if lhs < linear_gap_lower(q, p.n, p.k, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearBound {
    pub m: u64,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub params: CodeParams,
    pub q: u64,
    pub quantum_gap_upper: i128,
    /// `(r+1)/q` at the worst-case `r = n - d + 1`.
    pub classical_gap_lower: Rational,
    pub eq4: bool,
    pub eq5_mode: Eq5Mode,
    pub eq5_witness: Option<u64>,
    pub linear_lower_by_m: Vec<LinearBound>,
}

impl GapReport {
    pub fn flagged(&self) -> bool {
        self.eq4 || self.eq5_witness.is_some()
    }
}

pub fn gap_report(p: &CodeParams, q: u64, mode: Eq5Mode) -> Result<GapReport, Error> {
    let linear_lower_by_m = (0..p.k)
        .map(|m| {
            Ok(LinearBound {
                m,
                bound: linear_gap_lower(q, p.n, p.k, m)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(GapReport {
        params: *p,
        q,
        quantum_gap_upper: quantum_gap_upper(p),
        classical_gap_lower: classical_gap_lower(q, p.n - p.d + 1)?,
        eq4: supremacy_eq4(p),
        eq5_mode: mode,
        eq5_witness: supremacy_eq5(p, q, mode)?,
        linear_lower_by_m,
    })
}
