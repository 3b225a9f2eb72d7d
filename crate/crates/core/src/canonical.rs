//! Reduction of a code to the identity-led form `[I_k X2 | Z1 Z2]` using
//! row operations over GF(q), register swaps, and Hadamard column swaps,
//! with a replayable log of every step taken.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modular::{mod_inverse, mul_mod, normalize, rref, PrimeModulus};

/// One reversible step. Rows and registers are 1-based here: the log is an
/// external artifact meant to be read (and replayed) by humans and other
/// tools.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TransformStep {
    RowSwap {
        a: usize,
        b: usize,
    },
    RowScale {
        row: usize,
        factor: i64,
    },
    /// `row[dst] += factor * row[src]` over GF(q).
    RowAdd {
        dst: usize,
        src: usize,
        factor: i64,
    },
    RegisterSwap {
        a: usize,
        b: usize,
    },
    HadamardSwap {
        register: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct TransformLog(pub Vec<TransformStep>);

impl TransformLog {
    pub fn steps(&self) -> &[TransformStep] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A code whose left X block is exactly `I_k`, plus the log that got it
/// there.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CanonicalForm {
    code: CodeSpec,
    log: TransformLog,
}

impl CanonicalForm {
    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    pub fn log(&self) -> &TransformLog {
        &self.log
    }

    /// X columns of registers k+1..n (k x (n-k)).
    pub fn x2(&self) -> Mat {
        self.block(self.code.k(), self.code.n())
    }

    /// Z columns of registers 1..k (k x k).
    pub fn z1(&self) -> Mat {
        let n = self.code.n();
        self.block(n, n + self.code.k())
    }

    /// Z columns of registers k+1..n (k x (n-k)).
    pub fn z2(&self) -> Mat {
        let n = self.code.n();
        self.block(n + self.code.k(), 2 * n)
    }

    fn block(&self, from: usize, to: usize) -> Mat {
        let m = self.code.matrix();
        Mat::from_fn(m.rows(), to - from, |r, c| m[(r, from + c)])
    }
}

/// Applies one step to a working matrix. Shared by the canonicalizer and
/// [`replay`] so a log always replays through the exact same arithmetic.
fn apply_step(m: &mut Mat, n: usize, q: PrimeModulus, step: TransformStep) -> Result<()> {
    let rows = m.rows();
    let row_index = |r: usize| -> Result<usize> {
        if r == 0 || r > rows {
            Err(Error::RowOutOfRange { row: r, rows })
        } else {
            Ok(r - 1)
        }
    };
    let reg_index = |i: usize| -> Result<usize> {
        if i == 0 || i > n {
            Err(Error::RegisterOutOfRange { register: i, n })
        } else {
            Ok(i - 1)
        }
    };
    match step {
        TransformStep::RowSwap { a, b } => {
            let (a, b) = (row_index(a)?, row_index(b)?);
            m.swap_rows(a, b);
        }
        TransformStep::RowScale { row, factor } => {
            let r = row_index(row)?;
            for c in 0..m.cols() {
                m[(r, c)] = mul_mod(m[(r, c)], factor, q);
            }
        }
        TransformStep::RowAdd { dst, src, factor } => {
            let (d, s) = (row_index(dst)?, row_index(src)?);
            for c in 0..m.cols() {
                let add = mul_mod(m[(s, c)], factor, q);
                m[(d, c)] = normalize(m[(d, c)] + add, q);
            }
        }
        TransformStep::RegisterSwap { a, b } => {
            let (a, b) = (reg_index(a)?, reg_index(b)?);
            m.swap_cols(a, b);
            m.swap_cols(n + a, n + b);
        }
        TransformStep::HadamardSwap { register } => {
            let i = reg_index(register)?;
            for r in 0..rows {
                let x = m[(r, i)];
                let z = m[(r, n + i)];
                m[(r, i)] = normalize(-z, q);
                m[(r, n + i)] = x;
            }
        }
    }
    Ok(())
}

/// Brings the generators to `[I_k X2 | Z1 Z2]` over GF(q).
///
/// Pivot search scans registers left to right and rows top to bottom, and
/// only falls back to a Hadamard swap when no unpivoted row has a nonzero X
/// entry in any remaining register. Elimination clears each pivot column in
/// all other rows, so the result is a reduced echelon form on the X half.
pub fn canonicalize(code: &CodeSpec) -> Result<CanonicalForm> {
    let q = code.q();
    let n = code.n();
    let k = code.k();
    let mut m = code.matrix().reduced_mod(q);
    if rref(&m, q)?.rank < k {
        return Err(Error::DependentGenerators);
    }
    if k > n {
        // The X block is k x n, so an identity block cannot fit.
        return Err(Error::CanonicalFormUnreachable);
    }

    let mut log = Vec::new();
    let push = |m: &mut Mat, log: &mut Vec<TransformStep>, step| -> Result<()> {
        apply_step(m, n, q, step)?;
        log.push(step);
        Ok(())
    };

    for r in 0..k {
        // X entries first, across every remaining register.
        let mut found = (r..n)
            .flat_map(|col| (r..k).map(move |row| (col, row)))
            .find(|&(col, row)| m[(row, col)] != 0);
        if found.is_none() {
            // Only Z entries left: Hadamard the first register that has one.
            let z = (r..n)
                .flat_map(|col| (r..k).map(move |row| (col, row)))
                .find(|&(col, row)| m[(row, n + col)] != 0);
            let Some((col, row)) = z else {
                return Err(Error::CanonicalFormUnreachable);
            };
            push(
                &mut m,
                &mut log,
                TransformStep::HadamardSwap { register: col + 1 },
            )?;
            found = Some((col, row));
        }
        let (col, row) = found.expect("pivot located above");
        if col != r {
            push(
                &mut m,
                &mut log,
                TransformStep::RegisterSwap {
                    a: r + 1,
                    b: col + 1,
                },
            )?;
        }
        if row != r {
            push(
                &mut m,
                &mut log,
                TransformStep::RowSwap {
                    a: r + 1,
                    b: row + 1,
                },
            )?;
        }
        let pivot = m[(r, r)];
        if pivot != 1 {
            push(
                &mut m,
                &mut log,
                TransformStep::RowScale {
                    row: r + 1,
                    factor: mod_inverse(pivot, q)?,
                },
            )?;
        }
        for i in 0..k {
            if i != r && m[(i, r)] != 0 {
                let factor = normalize(-m[(i, r)], q);
                push(
                    &mut m,
                    &mut log,
                    TransformStep::RowAdd {
                        dst: i + 1,
                        src: r + 1,
                        factor,
                    },
                )?;
            }
        }
    }

    let code = CodeSpec::new(q, n, m.row_vecs())?.with_declared(code.declared_c, code.declared_d);
    Ok(CanonicalForm {
        code,
        log: TransformLog(log),
    })
}

/// Replays a log over GF(q) on (the mod-q reduction of) a code.
pub fn replay(log: &TransformLog, code: &CodeSpec) -> Result<CodeSpec> {
    let q = code.q();
    let n = code.n();
    let mut m = code.matrix().reduced_mod(q);
    for &step in log.steps() {
        apply_step(&mut m, n, q, step)?;
    }
    Ok(CodeSpec::new(q, n, m.row_vecs())?.with_declared(code.declared_c, code.declared_d))
}
