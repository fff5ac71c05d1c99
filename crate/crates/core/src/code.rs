//! Stabilizer code representation, the line-oriented code file format,
//! structural validation and the bundled builtin codes.
//!
//! File format (UTF-8, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! name: five_qubit
//! n: 5
//! k: 1
//! stabilizer: XZZXI
//! ...
//! logical_z: ZZZZZ
//! logical_x: XXXXX
//! ```
//!
//! There must be exactly `n - k` stabilizer lines and `k` lines of each
//! logical kind; `logical_z[i]` and `logical_x[i]` form the pair for secret
//! bit `i`. Generator signs are dropped on load.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf2::{BitVec, GF2Matrix};
use crate::pauli::PauliString;

pub const BUILTIN_NAMES: [&str; 3] = ["five_qubit", "steane", "trivial_1"];

const FIVE_QUBIT: &str = "\
# The [[5,1,3]] perfect code.
name: five_qubit
n: 5
k: 1
stabilizer: XZZXI
stabilizer: IXZZX
stabilizer: XIXZZ
stabilizer: ZXIXZ
logical_z: ZZZZZ
logical_x: XXXXX
";

const STEANE: &str = "\
# CSS code built from the [7,4,3] Hamming code.
name: steane
n: 7
k: 1
stabilizer: IIIXXXX
stabilizer: IXXIIXX
stabilizer: XIXIXIX
stabilizer: IIIZZZZ
stabilizer: IZZIIZZ
stabilizer: ZIZIZIZ
logical_z: ZZZZZZZ
logical_x: XXXXXXX
";

const TRIVIAL_1: &str = "\
name: trivial_1
n: 1
k: 1
logical_z: Z
logical_x: X
";

/// A binary `[[n, k]]` stabilizer code with an explicit logical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    stabilizers: Vec<PauliString>,
    logical_z: Vec<PauliString>,
    logical_x: Vec<PauliString>,
}

impl StabilizerCode {
    /// Builds and validates a code. Signs are reset to `+`.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        k: usize,
        stabilizers: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        logical_x: Vec<PauliString>,
    ) -> Result<Self, Error> {
        let code = Self::new_unchecked(name, n, k, stabilizers, logical_z, logical_x);
        code.validate()?;
        Ok(code)
    }

    /// Builds a code without validation; [`verify_code`] reports what is wrong
    /// with it.
    pub fn new_unchecked(
        name: impl Into<String>,
        n: usize,
        k: usize,
        stabilizers: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        logical_x: Vec<PauliString>,
    ) -> Self {
        let unsign = |v: Vec<PauliString>| v.into_iter().map(|p| p.with_sign(false)).collect();
        StabilizerCode {
            name: name.into(),
            n,
            k,
            stabilizers: unsign(stabilizers),
            logical_z: unsign(logical_z),
            logical_x: unsign(logical_x),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    /// Stabilizer generators as length-2n symplectic rows.
    pub fn stabilizer_matrix(&self) -> GF2Matrix {
        let rows = self.stabilizers.iter().map(|p| p.symplectic_row()).collect();
        GF2Matrix::from_rows(2 * self.n, rows).expect("validated lengths")
    }

    fn validate(&self) -> Result<(), Error> {
        self.check_lengths()?;
        // Commutation among stabilizers is checked before counts so that an
        // anticommuting generator set is reported as such.
        if let Some(msg) = stabilizer_commutation_failure(&self.stabilizers) {
            return Err(Error::InvariantViolation(msg));
        }
        self.check_counts()?;
        let report = verify_code(self);
        match report.first_failure() {
            Some(check) => Err(Error::InvariantViolation(check.detail.clone())),
            None => Ok(()),
        }
    }

    fn check_lengths(&self) -> Result<(), Error> {
        let all = self
            .stabilizers
            .iter()
            .chain(&self.logical_z)
            .chain(&self.logical_x);
        for p in all {
            if p.n() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    found: p.n(),
                });
            }
        }
        Ok(())
    }

    fn check_counts(&self) -> Result<(), Error> {
        if self.k == 0 {
            return Err(Error::InvariantViolation(
                "k must be at least 1 (the secret needs a logical qubit)".to_string(),
            ));
        }
        if self.k > self.n {
            return Err(Error::InvariantViolation(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        let expect = [
            ("stabilizer", self.n - self.k, self.stabilizers.len()),
            ("logical_z", self.k, self.logical_z.len()),
            ("logical_x", self.k, self.logical_x.len()),
        ];
        for (what, expected, found) in expect {
            if expected != found {
                return Err(Error::CountMismatch {
                    what,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }

    /// Serializes to the code file format; `parse_code` inverts it.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "k: {}", self.k)?;
        for p in &self.stabilizers {
            writeln!(f, "stabilizer: {p}")?;
        }
        for p in &self.logical_z {
            writeln!(f, "logical_z: {p}")?;
        }
        for p in &self.logical_x {
            writeln!(f, "logical_x: {p}")?;
        }
        Ok(())
    }
}

impl FromStr for StabilizerCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_code(s)
    }
}

fn stabilizer_commutation_failure(stabilizers: &[PauliString]) -> Option<String> {
    for (i, a) in stabilizers.iter().enumerate() {
        for (j, b) in stabilizers.iter().enumerate().skip(i + 1) {
            if a.n() == b.n() && a.symplectic_inner(b).unwrap_or(false) {
                return Some(format!(
                    "stabilizer {} anticommutes with stabilizer {}",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    None
}

/// Parses the code file format and validates the result.
pub fn parse_code(text: &str) -> Result<StabilizerCode, Error> {
    let mut name = None;
    let mut n = None;
    let mut k = None;
    let mut stabilizers = Vec::new();
    let mut logical_z = Vec::new();
    let mut logical_x = Vec::new();
    // (line, column, length) of each Pauli value, for deferred length checks
    let mut spans = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let column = leading_ws(content) + 1;
            return Err(syntax(line_no, column, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value_raw = &content[colon + 1..];
        let value = value_raw.trim();
        let value_col = content[..colon + 1].chars().count() + leading_ws(value_raw) + 1;

        match key {
            "name" => set_once(&mut name, value.to_string(), line_no, "name")?,
            "n" | "k" => {
                let parsed = value.parse::<usize>().map_err(|_| {
                    syntax(line_no, value_col, &format!("expected a non-negative integer for {key}"))
                })?;
                let slot = if key == "n" { &mut n } else { &mut k };
                set_once(slot, parsed, line_no, key)?;
            }
            "stabilizer" | "logical_z" | "logical_x" => {
                let pauli = parse_pauli(value, line_no, value_col)?;
                spans.push((line_no, value_col, pauli.n()));
                match key {
                    "stabilizer" => stabilizers.push(pauli),
                    "logical_z" => logical_z.push(pauli),
                    _ => logical_x.push(pauli),
                }
            }
            other => {
                let column = leading_ws(content) + 1;
                return Err(syntax(line_no, column, &format!("unknown key {other:?}")));
            }
        }
    }

    let n = n.ok_or_else(|| syntax(last_line + 1, 1, "missing `n:` line"))?;
    let k = k.ok_or_else(|| syntax(last_line + 1, 1, "missing `k:` line"))?;
    for (line, column, len) in spans {
        if len != n {
            return Err(syntax(
                line,
                column,
                &format!("Pauli string has {len} letters, expected n = {n}"),
            ));
        }
    }
    StabilizerCode::new(
        name.unwrap_or_else(|| "unnamed".to_string()),
        n,
        k,
        stabilizers,
        logical_z,
        logical_x,
    )
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), Error> {
    if slot.is_some() {
        return Err(syntax(line, 1, &format!("duplicate `{key}:` line")));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_pauli(value: &str, line: usize, column: usize) -> Result<PauliString, Error> {
    let body = value.strip_prefix(['+', '-']).unwrap_or(value);
    let offset = value.len() - body.len();
    if body.is_empty() {
        return Err(syntax(line, column, "empty Pauli string"));
    }
    if let Some((i, c)) = body
        .chars()
        .enumerate()
        .find(|(_, c)| !matches!(c, 'I' | 'X' | 'Y' | 'Z'))
    {
        return Err(syntax(
            line,
            column + offset + i,
            &format!("invalid Pauli letter {c:?}"),
        ));
    }
    body.parse()
}

/// Returns a bundled code by name.
pub fn builtin(name: &str) -> Result<StabilizerCode, Error> {
    let text = match name {
        "five_qubit" => FIVE_QUBIT,
        "steane" => STEANE,
        "trivial_1" => TRIVIAL_1,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(parse_code(text).expect("builtin codes are valid"))
}

/// Source text of a builtin code.
pub fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "five_qubit" => Some(FIVE_QUBIT),
        "steane" => Some(STEANE),
        "trivial_1" => Some(TRIVIAL_1),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_COUNTS: &str = "generator counts";
pub const CHECK_LENGTHS: &str = "operator lengths";
pub const CHECK_STABILIZERS_COMMUTE: &str = "stabilizers commute";
pub const CHECK_LOGICALS_COMMUTE_WITH_STABILIZERS: &str = "logicals commute with stabilizers";
pub const CHECK_LOGICAL_PAIRS_ANTICOMMUTE: &str = "logical pairs anticommute";
pub const CHECK_DISTINCT_LOGICALS_COMMUTE: &str = "distinct logicals commute";
pub const CHECK_STABILIZERS_INDEPENDENT: &str = "stabilizers independent";
pub const CHECK_FULL_RANK: &str = "stabilizers and logicals have rank n+k";

/// Checks every structural invariant of a stabilizer code.
pub fn verify_code(code: &StabilizerCode) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, failure: Option<String>| {
        checks.push(Check {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| "ok".to_string()),
        })
    };

    let counts = code.check_counts().err().map(|e| e.to_string());
    push(CHECK_COUNTS, counts);

    let lengths_err = code.check_lengths().err();
    let lengths_ok = lengths_err.is_none();
    push(CHECK_LENGTHS, lengths_err.map(|e| e.to_string()));
    if !lengths_ok {
        return ValidationReport { checks };
    }

    push(
        CHECK_STABILIZERS_COMMUTE,
        stabilizer_commutation_failure(&code.stabilizers),
    );

    let anti = |a: &PauliString, b: &PauliString| a.symplectic_inner(b).expect("lengths checked");

    let mut failure = None;
    'outer: for (kind, logicals) in [("logical_z", &code.logical_z), ("logical_x", &code.logical_x)] {
        for (i, l) in logicals.iter().enumerate() {
            for (j, s) in code.stabilizers.iter().enumerate() {
                if anti(l, s) {
                    failure = Some(format!(
                        "{kind} {} anticommutes with stabilizer {}",
                        i + 1,
                        j + 1
                    ));
                    break 'outer;
                }
            }
        }
    }
    push(CHECK_LOGICALS_COMMUTE_WITH_STABILIZERS, failure);

    let failure = code
        .logical_z
        .iter()
        .zip(&code.logical_x)
        .enumerate()
        .find(|(_, (z, x))| !anti(z, x))
        .map(|(i, _)| format!("logical_z {0} commutes with logical_x {0}", i + 1));
    push(CHECK_LOGICAL_PAIRS_ANTICOMMUTE, failure);

    let mut failure = None;
    'pairs: for i in 0..code.k.min(code.logical_z.len()).min(code.logical_x.len()) {
        for j in 0..code.logical_z.len().min(code.logical_x.len()) {
            if i == j {
                continue;
            }
            let pairs = [
                ("logical_z", &code.logical_z[i], "logical_x", &code.logical_x[j]),
                ("logical_z", &code.logical_z[i], "logical_z", &code.logical_z[j]),
                ("logical_x", &code.logical_x[i], "logical_x", &code.logical_x[j]),
            ];
            for (ka, a, kb, b) in pairs {
                if anti(a, b) {
                    failure = Some(format!("{ka} {} anticommutes with {kb} {}", i + 1, j + 1));
                    break 'pairs;
                }
            }
        }
    }
    push(CHECK_DISTINCT_LOGICALS_COMMUTE, failure);

    let stab_rank = code.stabilizer_matrix().rank();
    let failure = (stab_rank != code.stabilizers.len()).then(|| {
        format!(
            "stabilizer rows have rank {stab_rank}, expected {}",
            code.stabilizers.len()
        )
    });
    push(CHECK_STABILIZERS_INDEPENDENT, failure);

    let mut all = code.stabilizer_matrix();
    for p in code.logical_z.iter().chain(&code.logical_x) {
        all.push_row(p.symplectic_row()).expect("lengths checked");
    }
    let full = all.rank();
    let failure = (full != code.n + code.k)
        .then(|| format!("all generator rows have rank {full}, expected {}", code.n + code.k));
    push(CHECK_FULL_RANK, failure);

    ValidationReport { checks }
}

/// Whether the sign-free Pauli lies in the stabilizer row span.
pub fn in_stabilizer_span(code: &StabilizerCode, p: &PauliString) -> Result<bool, Error> {
    code.stabilizer_matrix().in_row_span(&p.symplectic_row())
}

/// `x ‖ z` row from packed masks, for callers working with `u64` registers.
pub fn row_from_masks(n: usize, x: u64, z: u64) -> BitVec {
    BitVec::from_u64(n, x).concat(&BitVec::from_u64(n, z))
}
