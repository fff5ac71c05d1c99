//! Dense statevector ground truth for the access structure.
//!
//! Each secret is encoded by projecting computational basis states onto the
//! joint eigenspace of the stabilizers and signed logical-Z operators. The
//! reduced states of a share set are then compared pairwise by trace
//! distance, which for stabilizer schemes is always exactly 0 or 1.
//!
//! Qubit `q` is bit `q` of the amplitude index.

use faer::{c64, Mat, Side};
use serde::{Deserialize, Serialize};

use crate::access::{full_mask, ShareScheme, ShareSet};
use crate::code::StabilizerCode;
use crate::error::Error;
use crate::par::Exec;
use crate::pauli::PauliString;

pub type C64 = c64;

/// Largest `n` for which a codeword is materialized.
pub const ENCODE_MAX_N: usize = 14;
/// Largest `n` for all-secrets / all-subsets sweeps.
pub const SWEEP_MAX_N: usize = 10;
/// Largest share set whose reduced state is built.
pub const REDUCED_MAX_QUBITS: usize = 12;
/// Trace distances within this of 0 or 1 count as exactly 0 or 1.
pub const DISTANCE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Normalizes the given amplitudes. Panics if the length is not `2^n`.
    pub fn new(n: usize, amplitudes: Vec<C64>) -> Self {
        assert_eq!(amplitudes.len(), 1usize << n, "need 2^n amplitudes");
        let mut s = StateVector { n, amplitudes };
        let norm = s.norm();
        for a in &mut s.amplitudes {
            *a /= norm;
        }
        s
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << n];
        amplitudes[index] = C64::new(1.0, 0.0);
        StateVector { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliString) -> C64 {
        let applied = apply_pauli(p, &self.amplitudes);
        self.amplitudes
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn with_phase(&self, phase: C64) -> Self {
        StateVector {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }
}

/// `P|ψ⟩` for a Pauli with `Y = iXZ` per qubit.
fn apply_pauli(p: &PauliString, amps: &[C64]) -> Vec<C64> {
    let (x, z) = p.masks().expect("n <= 64");
    let global = match (p.y_count() % 4, p.is_negative()) {
        (0, false) | (2, true) => C64::new(1.0, 0.0),
        (1, false) | (3, true) => C64::new(0.0, 1.0),
        (2, false) | (0, true) => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (b, &a) in amps.iter().enumerate() {
        let b = b as u64;
        let sign = if (z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[(b ^ x) as usize] = a * global * sign;
    }
    out
}

/// `(I + P)/2` applied in place.
fn project(p: &PauliString, amps: &mut [C64]) {
    let applied = apply_pauli(p, amps);
    for (a, b) in amps.iter_mut().zip(applied) {
        *a = (*a + b) * 0.5;
    }
}

/// Encodes the classical secret `s` (bit `i` = `secret[i]`).
pub fn encode_secret(code: &StabilizerCode, secret: &[bool]) -> Result<StateVector, Error> {
    let n = code.n();
    if n > ENCODE_MAX_N {
        return Err(Error::CapExceeded {
            what: "statevector encoding",
            n,
            cap: ENCODE_MAX_N,
        });
    }
    if secret.len() != code.k() {
        return Err(Error::SecretLength {
            expected: code.k(),
            found: secret.len(),
        });
    }
    let projectors: Vec<PauliString> = code
        .stabilizers()
        .iter()
        .cloned()
        .chain(
            code.logical_z()
                .iter()
                .zip(secret)
                .map(|(z, &bit)| z.clone().with_sign(bit)),
        )
        .collect();
    for seed in 0..(1usize << n) {
        let mut amps = StateVector::basis(n, seed).amplitudes;
        for p in &projectors {
            project(p, &mut amps);
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr > 1e-12 {
            return Ok(StateVector::new(n, amps));
        }
    }
    Err(Error::EmptyCodespace)
}

/// Bits of `value` as a secret of length `k`, bit 0 first.
pub fn secret_bits(value: usize, k: usize) -> Vec<bool> {
    (0..k).map(|i| (value >> i) & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedState {
    qubits: Vec<usize>,
    matrix: Mat<C64>,
}

impl ReducedState {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)]).sum()
    }

    /// Largest `|ρ - ρ†|` entry.
    pub fn hermiticity_error(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Partial trace over the complement of `a`. Qubit `a[j]` (ascending) becomes
/// bit `j` of the reduced index.
pub fn reduced_density(state: &StateVector, a: &ShareSet) -> Result<ReducedState, Error> {
    let n = state.n();
    if a.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: a.n(),
        });
    }
    if a.len() > REDUCED_MAX_QUBITS {
        return Err(Error::CapExceeded {
            what: "reduced density matrix",
            n: a.len(),
            cap: REDUCED_MAX_QUBITS,
        });
    }
    let kept = a.indices();
    let traced = a.complement().indices();
    let rows = 1usize << kept.len();
    let cols = 1usize << traced.len();
    let mut m = Mat::<C64>::zeros(rows, cols);
    for (b, &amp) in state.amplitudes().iter().enumerate() {
        let i = gather(b, &kept);
        let e = gather(b, &traced);
        m[(i, e)] = amp;
    }
    let matrix = &m * m.adjoint();
    Ok(ReducedState {
        qubits: kept,
        matrix,
    })
}

fn gather(b: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &q)| acc | (((b >> q) & 1) << j))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &Mat<C64>) -> Vec<f64> {
    let mut ev = m
        .self_adjoint_eigenvalues(Side::Lower)
        .unwrap_or_else(|_| vec![f64::NAN; m.nrows()]);
    ev.sort_by(f64::total_cmp);
    ev
}

/// `½ Σ |λ_i(ρ - σ)|`.
pub fn trace_distance(rho: &ReducedState, sigma: &ReducedState) -> f64 {
    let diff = &rho.matrix - &sigma.matrix;
    0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum PairRelation {
    Equal,
    Orthogonal,
    Intermediate(f64),
}

fn relate(rho: &ReducedState, sigma: &ReducedState) -> PairRelation {
    let diff = &rho.matrix - &sigma.matrix;
    // ‖D‖₁ ≤ √dim ‖D‖_F certifies equality without an eigensolve.
    let bound = 0.5 * (diff.nrows() as f64).sqrt() * diff.norm_l2();
    if bound <= DISTANCE_TOL {
        return PairRelation::Equal;
    }
    let td = 0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>();
    if td <= DISTANCE_TOL {
        PairRelation::Equal
    } else if td >= 1.0 - DISTANCE_TOL {
        PairRelation::Orthogonal
    } else {
        PairRelation::Intermediate(td)
    }
}

/// `log2` of the number of perfectly distinguishable classes among the
/// reduced states of `states` on `a`. Each state is compared with the
/// representative of every class found so far.
pub fn distinguishability_rank_of_states(states: &[StateVector], a: &ShareSet) -> Result<usize, Error> {
    let mut reps: Vec<(usize, ReducedState)> = Vec::new();
    for (s, state) in states.iter().enumerate() {
        let rho = reduced_density(state, a)?;
        let mut class = None;
        for (r, rep) in &reps {
            match relate(&rho, rep) {
                PairRelation::Equal if class.is_none() => class = Some(*r),
                PairRelation::Equal | PairRelation::Orthogonal => {}
                PairRelation::Intermediate(distance) => {
                    return Err(Error::IntermediateDistinguishability { a: *r, b: s, distance })
                }
            }
        }
        if class.is_none() {
            reps.push((s, rho));
        }
    }
    let classes = reps.len();
    if !classes.is_power_of_two() {
        return Err(Error::NonPowerOfTwoClasses(classes));
    }
    Ok(classes.trailing_zeros() as usize)
}

/// Encodes all `2^k` secrets.
pub fn encode_all(code: &StabilizerCode) -> Result<Vec<StateVector>, Error> {
    check_sweep_cap(code.n(), SWEEP_MAX_N)?;
    (0..1usize << code.k())
        .map(|v| encode_secret(code, &secret_bits(v, code.k())))
        .collect()
}

pub fn distinguishability_rank(code: &StabilizerCode, a: &ShareSet) -> Result<usize, Error> {
    let states = encode_all(code)?;
    distinguishability_rank_of_states(&states, a)
}

fn check_sweep_cap(n: usize, max_n: usize) -> Result<(), Error> {
    let cap = max_n.min(SWEEP_MAX_N);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "oracle sweep",
            n,
            cap,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub shares: Vec<usize>,
    pub algebraic_rank: usize,
    pub oracle_rank: Option<usize>,
    pub oracle_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub subsets_checked: u64,
    /// Lowest-mask disagreement, if any.
    pub first_disagreement: Option<Disagreement>,
}

/// Compares the algebraic information rank with the oracle on every subset.
pub fn cross_check(code: &StabilizerCode, max_n: usize, exec: Exec) -> Result<CrossCheck, Error> {
    check_sweep_cap(code.n(), max_n)?;
    let n = code.n();
    let scheme = ShareScheme::new(code)?;
    let states = encode_all(code)?;
    let masks: Vec<u64> = (0..=full_mask(n)).collect();
    let first_disagreement = exec.find_map_first(&masks, |&mask| {
        let a = ShareSet::from_mask(n, mask).expect("mask in range");
        let algebraic_rank = scheme.info_rank(mask);
        match distinguishability_rank_of_states(&states, &a) {
            Ok(r) if r == algebraic_rank => None,
            Ok(r) => Some(Disagreement {
                shares: a.indices(),
                algebraic_rank,
                oracle_rank: Some(r),
                oracle_error: None,
            }),
            Err(e) => Some(Disagreement {
                shares: a.indices(),
                algebraic_rank,
                oracle_rank: None,
                oracle_error: Some(e.to_string()),
            }),
        }
    });
    Ok(CrossCheck {
        subsets_checked: masks.len() as u64,
        first_disagreement,
    })
}
