//! n-qubit Pauli operators in the binary symplectic picture.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::gf2::{self, BitVec};

/// Pauli operator `±P_0 ⊗ … ⊗ P_{n-1}` stored as X and Z bit vectors.
///
/// Qubit `i` carries I, X, Z or Y according to `(x[i], z[i])` = (0,0), (1,0),
/// (0,1), (1,1). As an operator, Y is the Hermitian `iXZ`, so every letter
/// string is Hermitian.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            negative: false,
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec) -> Result<Self, Error> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliString {
            x,
            z,
            negative: false,
        })
    }

    /// Builds from packed masks, bit `i` = qubit `i`. Requires `n <= 64`.
    pub fn from_masks(n: usize, x: u64, z: u64) -> Self {
        PauliString {
            x: BitVec::from_u64(n, x),
            z: BitVec::from_u64(n, z),
            negative: false,
        }
    }

    /// Single-qubit letter on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: char) -> Result<Self, Error> {
        let mut p = PauliString::identity(n);
        p.set_letter(qubit, letter)?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn with_sign(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }

    pub fn letter(&self, qubit: usize) -> char {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn set_letter(&mut self, qubit: usize, letter: char) -> Result<(), Error> {
        let (x, z) = letter_bits(letter).ok_or_else(|| {
            Error::InvariantViolation(format!("unknown Pauli letter {letter:?}"))
        })?;
        self.x.set(qubit, x);
        self.z.set(qubit, z);
        Ok(())
    }

    pub fn weight(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.x.get(i) || self.z.get(i))
            .count()
    }

    /// Qubits acted on non-trivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.x.get(i) || self.z.get(i))
            .collect()
    }

    /// Symplectic pairing; `true` means the two operators anticommute.
    pub fn symplectic_inner(&self, other: &PauliString) -> Result<bool, Error> {
        gf2::symplectic_inner(&self.x, &self.z, &other.x, &other.z)
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool, Error> {
        Ok(!self.symplectic_inner(other)?)
    }

    /// The `x ‖ z` row of length 2n, sign dropped.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Packed `(x, z)` masks. `None` when `n > 64`.
    pub fn masks(&self) -> Option<(u64, u64)> {
        if self.n() > 64 {
            return None;
        }
        let w = |v: &BitVec| v.words().first().copied().unwrap_or(0);
        Some((w(&self.x), w(&self.z)))
    }

    /// Number of Y letters, i.e. `|x ∧ z|`.
    pub fn y_count(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.x.get(i) && self.z.get(i))
            .count()
    }
}

fn letter_bits(letter: char) -> Option<(bool, bool)> {
    match letter {
        'I' => Some((false, false)),
        'X' => Some((true, false)),
        'Y' => Some((true, true)),
        'Z' => Some((false, true)),
        _ => None,
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `[+|-]` followed by letters from `IXYZ`, qubit 0 first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut p = PauliString::identity(body.chars().count());
        for (i, c) in body.chars().enumerate() {
            p.set_letter(i, c)?;
        }
        Ok(p.with_sign(negative))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        for i in 0..self.n() {
            write!(f, "{}", self.letter(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}
