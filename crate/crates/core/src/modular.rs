//! Exact arithmetic over prime fields: primality, inverses, row reduction,
//! row-space solving, and the big-integer threshold formula.
//!
//! Every residue is kept as its least non-negative representative in
//! `[0, m)` so matrices compare bit-exactly.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// A verified prime modulus.
///
/// Construction fails for composites, units, and anything that does not fit
/// a signed 64-bit word (entries are stored as `i64`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(value: u64) -> Result<Self> {
        if value > i64::MAX as u64 {
            return Err(Error::ModulusTooLarge(value));
        }
        if !is_prime(value) {
            return Err(Error::NonPrimeModulus(value));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub(crate) fn as_i64(self) -> i64 {
        self.0 as i64
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division. Inputs in scope are small (local dimensions
/// and scan targets), so nothing probabilistic is needed.
pub fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    if v.is_multiple_of(2) {
        return v == 2;
    }
    let mut f = 3u64;
    while f * f <= v {
        if v.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Least non-negative residue of `a` mod `m`.
pub fn normalize(a: i64, m: PrimeModulus) -> i64 {
    let m = m.as_i64() as i128;
    ((a as i128 % m + m) % m) as i64
}

/// Multiplicative inverse in `[1, m)`, by the extended Euclidean algorithm.
pub fn mod_inverse(a: i64, m: PrimeModulus) -> Result<i64> {
    let a = normalize(a, m);
    if a == 0 {
        return Err(Error::ZeroNoInverse { modulus: m.value() });
    }
    let (mut r0, mut r1) = (m.as_i64() as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1, "modulus is prime, so gcd must be 1");
    Ok(normalize(t0 as i64, m))
}

/// One elementary row operation over a prime field. Row indices are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum RowOp {
    Swap { a: usize, b: usize },
    Scale { row: usize, factor: i64 },
    AddMul { dst: usize, src: usize, factor: i64 },
}

/// Outcome of [`rref_mod`].
#[derive(Clone, Debug)]
pub struct RrefResult {
    pub reduced: Mat,
    pub rank: usize,
    /// Replaying these on the input reproduces `reduced` exactly.
    pub ops: Vec<RowOp>,
    /// Pivot columns in the order they were used; `pivot_cols[i]` pairs with row `i`.
    pub pivot_cols: Vec<usize>,
}

/// Reduced row-echelon form over GF(q), with pivots chosen along
/// `column_order` (a permutation of the column indices).
pub fn rref_mod(m: &Mat, q: PrimeModulus, column_order: &[usize]) -> Result<RrefResult> {
    let cols = m.cols();
    if column_order.len() != cols {
        return Err(Error::DimensionMismatch(format!(
            "column order has {} entries for {} columns",
            column_order.len(),
            cols
        )));
    }
    let mut seen = vec![false; cols];
    for &c in column_order {
        if c >= cols || seen[c] {
            return Err(Error::DimensionMismatch(
                "column order is not a permutation".into(),
            ));
        }
        seen[c] = true;
    }

    let mut a = m.reduced_mod(q);
    let rows = a.rows();
    let mut ops = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;

    for &col in column_order {
        if pivot_row == rows {
            break;
        }
        let Some(r) = (pivot_row..rows).find(|&r| a[(r, col)] != 0) else {
            continue;
        };
        if r != pivot_row {
            a.swap_rows(pivot_row, r);
            ops.push(RowOp::Swap { a: pivot_row, b: r });
        }
        let pivot = a[(pivot_row, col)];
        if pivot != 1 {
            let inv = mod_inverse(pivot, q)?;
            scale_row(&mut a, pivot_row, inv, q);
            ops.push(RowOp::Scale {
                row: pivot_row,
                factor: inv,
            });
        }
        for i in 0..rows {
            if i != pivot_row && a[(i, col)] != 0 {
                let factor = normalize(-a[(i, col)], q);
                add_mul_row(&mut a, i, pivot_row, factor, q);
                ops.push(RowOp::AddMul {
                    dst: i,
                    src: pivot_row,
                    factor,
                });
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }

    Ok(RrefResult {
        reduced: a,
        rank: pivot_row,
        ops,
        pivot_cols,
    })
}

/// [`rref_mod`] with the natural left-to-right column order.
pub fn rref(m: &Mat, q: PrimeModulus) -> Result<RrefResult> {
    let order: Vec<usize> = (0..m.cols()).collect();
    rref_mod(m, q, &order)
}

fn scale_row(a: &mut Mat, row: usize, factor: i64, q: PrimeModulus) {
    for c in 0..a.cols() {
        a[(row, c)] = mul_mod(a[(row, c)], factor, q);
    }
}

fn add_mul_row(a: &mut Mat, dst: usize, src: usize, factor: i64, q: PrimeModulus) {
    for c in 0..a.cols() {
        let add = mul_mod(a[(src, c)], factor, q);
        a[(dst, c)] = normalize(a[(dst, c)] + add, q);
    }
}

pub(crate) fn mul_mod(a: i64, b: i64, q: PrimeModulus) -> i64 {
    let m = q.as_i64() as i128;
    (((a as i128 * b as i128) % m + m) % m) as i64
}

/// Replays a row-op log, reducing mod `q` throughout.
pub fn apply_row_ops(m: &Mat, ops: &[RowOp], q: PrimeModulus) -> Result<Mat> {
    let rows = m.rows();
    let check = |r: usize| -> Result<()> {
        if r >= rows {
            Err(Error::RowOutOfRange { row: r + 1, rows })
        } else {
            Ok(())
        }
    };
    let mut a = m.reduced_mod(q);
    for op in ops {
        match *op {
            RowOp::Swap { a: x, b: y } => {
                check(x)?;
                check(y)?;
                a.swap_rows(x, y);
            }
            RowOp::Scale { row, factor } => {
                check(row)?;
                scale_row(&mut a, row, factor, q);
            }
            RowOp::AddMul { dst, src, factor } => {
                check(dst)?;
                check(src)?;
                add_mul_row(&mut a, dst, src, factor, q);
            }
        }
    }
    Ok(a)
}

/// Coefficients `c` with `c · m = v` over GF(q), or `None` when `v` is not
/// in the row space. Solved as the transposed linear system.
pub fn solve_in_rowspace(m: &Mat, v: &[i64], q: PrimeModulus) -> Result<Option<Vec<i64>>> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let k = m.rows();
    let mut aug = Mat::zeros(m.cols(), k + 1);
    for r in 0..m.cols() {
        for c in 0..k {
            aug[(r, c)] = m[(c, r)];
        }
        aug[(r, k)] = v[r];
    }
    let rr = rref(&aug, q)?;
    let mut coeffs = vec![0i64; k];
    for (row, &col) in rr.pivot_cols.iter().enumerate() {
        if col == k {
            return Ok(None); // pivot in the right-hand side: inconsistent
        }
        coeffs[col] = rr.reduced[(row, k)];
    }
    Ok(Some(coeffs))
}

/// Basis of the null space `{x : a · x = 0}` over GF(q). Free columns are
/// taken in ascending order, so the basis is deterministic.
pub fn null_space(a: &Mat, q: PrimeModulus) -> Result<Vec<Vec<i64>>> {
    let rr = rref(a, q)?;
    let cols = a.cols();
    let pivot_set: Vec<usize> = rr.pivot_cols.clone();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![0i64; cols];
        v[f] = 1;
        for (row, &pc) in pivot_set.iter().enumerate() {
            v[pc] = normalize(-rr.reduced[(row, f)], q);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Exact evaluation of `B^(2(d-1)) * [2(d-1)]^(d-1)`.
///
/// For `d = 1` both exponents vanish and the value is defined to be 1
/// (taking 0^0 = 1), so every prime clears the threshold.
pub fn eval_p_star(b: &BigUint, d: u64) -> BigUint {
    if d == 1 {
        return BigUint::from(1u8);
    }
    let e: u32 = (2 * (d - 1)).try_into().expect("distance out of range");
    let half: u32 = (d - 1).try_into().expect("distance out of range");
    b.pow(e) * BigUint::from(2 * (d - 1)).pow(half)
}
