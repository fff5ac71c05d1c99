//! Secret sharing with a classical secret and quantum shares.
//!
//! A binary `[[n, k, d]]` stabilizer code turns a `k`-bit secret into `n`
//! qubit shares. This crate computes the exact access structure of such a
//! scheme ([`access`]), cross-checks it against a dense statevector
//! simulation ([`oracle`]), measures the code distance ([`distance`]) and
//! decides with exact arithmetic whether the resulting threshold gap is out of
//! reach of classical (or linear classical) schemes ([`bounds`], [`tables`]).
//!
//! ```
//! use qshare::{access, code};
//!
//! let five = code::builtin("five_qubit").unwrap();
//! let th = access::thresholds(&five, access::DEFAULT_MAX_N).unwrap();
//! assert_eq!((th.r, th.t, th.gap), (3, 2, 1));
//! ```

pub mod access;
pub mod bounds;
pub mod code;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod par;
pub mod pauli;
pub mod tables;

pub use access::{AccessLabel, ShareScheme, ShareSet, SubsetClass, Thresholds};
pub use bounds::{CodeParams, Eq5Mode, GapReport, Rational};
pub use code::{builtin, parse_code, verify_code, StabilizerCode};
pub use error::Error;
pub use par::Exec;
pub use pauli::PauliString;
