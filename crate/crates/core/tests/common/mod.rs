//! Random valid stabilizer codes for property and oracle tests.
//!
//! Start from the unencoded tableau (stabilizers `Z_k..Z_{n-1}`, logical pairs
//! `(Z_i, X_i)`) and conjugate every operator by a random Clifford circuit of
//! H, S and CNOT gates. Conjugation is symplectic, so all commutation
//! relations and ranks carry over.

#![allow(dead_code)]

use qshare::{PauliString, StabilizerCode};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
struct Op {
    x: u64,
    z: u64,
}

fn h(ops: &mut [Op], q: usize) {
    for op in ops {
        let (bx, bz) = ((op.x >> q) & 1, (op.z >> q) & 1);
        op.x = (op.x & !(1 << q)) | (bz << q);
        op.z = (op.z & !(1 << q)) | (bx << q);
    }
}

fn s(ops: &mut [Op], q: usize) {
    for op in ops {
        op.z ^= op.x & (1 << q);
    }
}

fn cnot(ops: &mut [Op], c: usize, t: usize) {
    for op in ops {
        op.x ^= ((op.x >> c) & 1) << t;
        op.z ^= ((op.z >> t) & 1) << c;
    }
}

pub fn random_code(rng: &mut impl Rng, n: usize, k: usize) -> StabilizerCode {
    assert!(1 <= k && k <= n && n <= 64);
    // layout: [stabilizers (n-k) | logical_z (k) | logical_x (k)]
    let mut ops: Vec<Op> = (k..n).map(|j| Op { x: 0, z: 1 << j }).collect();
    ops.extend((0..k).map(|i| Op { x: 0, z: 1 << i }));
    ops.extend((0..k).map(|i| Op { x: 1 << i, z: 0 }));
    for _ in 0..(4 * n * n + 8) {
        match rng.gen_range(0..3) {
            0 => h(&mut ops, rng.gen_range(0..n)),
            1 => s(&mut ops, rng.gen_range(0..n)),
            _ if n > 1 => {
                let c = rng.gen_range(0..n);
                let mut t = rng.gen_range(0..n - 1);
                if t >= c {
                    t += 1;
                }
                cnot(&mut ops, c, t);
            }
            _ => h(&mut ops, 0),
        }
    }
    let to_p = |o: &Op| PauliString::from_masks(n, o.x, o.z);
    let stabs = ops[..n - k].iter().map(to_p).collect();
    let lz = ops[n - k..n].iter().map(to_p).collect();
    let lx = ops[n..].iter().map(to_p).collect();
    StabilizerCode::new(format!("random_{n}_{k}"), n, k, stabs, lz, lx)
        .expect("Clifford images of a valid tableau are valid")
}

/// `count` codes with `n` in `n_range` and `1 <= k <= min(n, k_max)`.
pub fn random_codes(seed: u64, count: usize, n_range: std::ops::RangeInclusive<usize>, k_max: usize) -> Vec<StabilizerCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.clone());
            let k = rng.gen_range(1..=n.min(k_max));
            random_code(&mut rng, n, k)
        })
        .collect()
}

/// Builtins plus the bundled `[[4,2,2]]` file: codes on which qualified
/// sets and forbidden complements coincide.
pub fn duality_test_codes() -> Vec<StabilizerCode> {
    let mut codes: Vec<StabilizerCode> = qshare::code::BUILTIN_NAMES
        .iter()
        .map(|n| qshare::builtin(n).unwrap())
        .collect();
    let text = include_str!("../../../../fixtures/codes/four_two_two.code");
    codes.push(qshare::parse_code(text).unwrap());
    codes
}

/// Image of `code` under a random qubit permutation and random single-qubit
/// Cliffords. Supports and logical tags are preserved.
pub fn local_image(rng: &mut impl Rng, code: &StabilizerCode) -> StabilizerCode {
    let n = code.n();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut ops: Vec<Op> = code
        .stabilizers()
        .iter()
        .chain(code.logical_z())
        .chain(code.logical_x())
        .map(|p| {
            let (x, z) = p.masks().unwrap();
            let mv = |m: u64| (0..n).fold(0u64, |acc, i| acc | (((m >> i) & 1) << perm[i]));
            Op { x: mv(x), z: mv(z) }
        })
        .collect();
    for q in 0..n {
        for _ in 0..rng.gen_range(0..4) {
            if rng.gen_bool(0.5) {
                h(&mut ops, q);
            } else {
                s(&mut ops, q);
            }
        }
    }
    let k = code.k();
    let to_p = |o: &Op| PauliString::from_masks(n, o.x, o.z);
    StabilizerCode::new(
        format!("{}_image", code.name()),
        n,
        k,
        ops[..n - k].iter().map(to_p).collect(),
        ops[n - k..n].iter().map(to_p).collect(),
        ops[n..].iter().map(to_p).collect(),
    )
    .unwrap()
}
