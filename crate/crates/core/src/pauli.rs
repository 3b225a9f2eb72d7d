//! The φ representation: a phase-stripped n-qudit Pauli becomes a length-2n
//! integer vector holding X powers in the first half and Z powers in the
//! second. Vectors either live over GF(q) ("finite") or over the plain
//! integers ("unbounded"). Phases are discarded on entry; nothing downstream
//! consumes them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modular::{normalize, PrimeModulus};

/// Tag deciding whether entries reduce mod a prime or stay exact integers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modulus {
    Finite(PrimeModulus),
    Unbounded,
}

impl Modulus {
    pub fn reduce(self, a: i64) -> i64 {
        match self {
            Modulus::Finite(q) => normalize(a, q),
            Modulus::Unbounded => a,
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Finite(q) => serializer.serialize_u64(q.value()),
            Modulus::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

/// Integer vector `(x_1 .. x_n | z_1 .. z_n)` for one n-register Pauli.
///
/// Finite vectors keep every entry in `[0, q)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PhiVector {
    entries: Vec<i64>,
    modulus: Modulus,
}

impl PhiVector {
    pub fn new(entries: Vec<i64>, modulus: Modulus) -> Result<Self> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch);
        }
        let entries = entries.into_iter().map(|e| modulus.reduce(e)).collect();
        Ok(Self { entries, modulus })
    }

    pub fn zero(n: usize, modulus: Modulus) -> Self {
        Self {
            entries: vec![0; 2 * n],
            modulus,
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// X power on register `r` (0-based).
    pub fn x_at(&self, r: usize) -> i64 {
        self.entries[r]
    }

    /// Z power on register `r` (0-based).
    pub fn z_at(&self, r: usize) -> i64 {
        self.entries[self.n() + r]
    }

    /// Component-wise group composition: addition, reduced when finite.
    pub fn compose(&self, other: &PhiVector) -> Result<PhiVector> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        if self.entries.len() != other.entries.len() {
            return Err(Error::LengthMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.modulus.reduce(a + b))
            .collect();
        Ok(Self {
            entries,
            modulus: self.modulus,
        })
    }

    /// Number of registers carrying a non-identity operator.
    pub fn weight(&self) -> usize {
        let n = self.n();
        (0..n)
            .filter(|&r| self.entries[r] != 0 || self.entries[n + r] != 0)
            .count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for PhiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let join = |s: &[i64]| {
            s.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "({} | {})",
            join(&self.entries[..n]),
            join(&self.entries[n..])
        )
    }
}

/// One non-identity factor `X^a Z^b` on a single register (1-based).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PauliTerm {
    pub register: usize,
    pub x_power: i64,
    pub z_power: i64,
}

/// Places each term's X power at position `register` and its Z power at
/// position `register + n`, reducing mod q. Registers are 1-based and must
/// be distinct.
pub fn phi_of_pauli(terms: &[PauliTerm], n: usize, q: PrimeModulus) -> Result<PhiVector> {
    let mut entries = vec![0i64; 2 * n];
    let mut seen = vec![false; n];
    for t in terms {
        if t.register == 0 || t.register > n {
            return Err(Error::RegisterOutOfRange {
                register: t.register,
                n,
            });
        }
        if seen[t.register - 1] {
            return Err(Error::DuplicateRegister(t.register));
        }
        seen[t.register - 1] = true;
        entries[t.register - 1] = normalize(t.x_power, q);
        entries[t.register - 1 + n] = normalize(t.z_power, q);
    }
    PhiVector::new(entries, Modulus::Finite(q))
}

/// Parses one whitespace-separated token per register. Tokens are
/// `I`, `X`, `Z`, `Y` (q = 2 only), `X^a`, `Z^b`, or `X^aZ^b`.
pub fn parse_pauli_string(text: &str, q: PrimeModulus) -> Result<PhiVector> {
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    for (column, token) in tokens_with_columns(text) {
        let (x, z) = parse_token(token, q, column)?;
        xs.push(x);
        zs.push(z);
    }
    if xs.is_empty() {
        return Err(Error::SyntaxError {
            line: 1,
            column: 1,
            message: "empty Pauli string".into(),
        });
    }
    xs.extend(zs);
    PhiVector::new(xs, Modulus::Finite(q))
}

/// Inverse of [`parse_pauli_string`] on its canonical output form. `Y` is
/// never emitted; the q = 2 vector (1 | 1) prints as `XZ`.
pub fn format_pauli_string(v: &PhiVector) -> String {
    let n = v.n();
    (0..n)
        .map(|r| format_register(v.x_at(r), v.z_at(r)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_register(x: i64, z: i64) -> String {
    if x == 0 && z == 0 {
        return "I".to_string();
    }
    let mut s = String::new();
    match x {
        0 => {}
        1 => s.push('X'),
        _ => s.push_str(&format!("X^{x}")),
    }
    match z {
        0 => {}
        1 => s.push('Z'),
        _ => s.push_str(&format!("Z^{z}")),
    }
    s
}

pub(crate) fn tokens_with_columns(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_token(token: &str, q: PrimeModulus, column: usize) -> Result<(i64, i64)> {
    let syntax = |message: String| Error::SyntaxError {
        line: 1,
        column,
        message,
    };
    match token {
        "I" => return Ok((0, 0)),
        "Y" => {
            return if q.value() == 2 {
                Ok((1, 1))
            } else {
                Err(Error::YRequiresQubit)
            }
        }
        _ => {}
    }
    let bytes = token.as_bytes();
    let mut pos = 0usize;
    let mut read_part = |letter: u8| -> Result<Option<i64>> {
        if pos >= bytes.len() || bytes[pos] != letter {
            return Ok(None);
        }
        pos += 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(syntax(format!("missing exponent in `{token}`")));
            }
            let exp: i64 = token[start..pos]
                .parse()
                .map_err(|_| syntax(format!("bad exponent in `{token}`")))?;
            Ok(Some(exp))
        } else {
            Ok(Some(1))
        }
    };
    let x = read_part(b'X')?;
    let z = read_part(b'Z')?;
    if pos != bytes.len() || (x.is_none() && z.is_none()) {
        return Err(syntax(format!("unrecognized Pauli token `{token}`")));
    }
    Ok((normalize(x.unwrap_or(0), q), normalize(z.unwrap_or(0), q)))
}
