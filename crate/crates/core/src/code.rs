//! A code is a set of independent generator rows in the φ representation,
//! together with its local dimension q.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modular::{normalize, rref, PrimeModulus};
use crate::pauli::{Modulus, PhiVector};

/// `k` generator rows of length `2n` over local dimension `q`.
///
/// Finite codes keep entries in `[0, q)`. Unbounded codes keep exact
/// integers and can be re-read at any prime via [`CodeSpec::reduced`];
/// independence is still checked mod `q` at construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CodeSpec {
    q: PrimeModulus,
    n: usize,
    matrix: Mat,
    unbounded: bool,
    pub declared_c: Option<u64>,
    pub declared_d: Option<u64>,
}

impl CodeSpec {
    pub fn new(q: PrimeModulus, n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(q, n, rows, false)
    }

    pub fn new_unbounded(q: PrimeModulus, n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(q, n, rows, true)
    }

    fn build(q: PrimeModulus, n: usize, rows: Vec<Vec<i64>>, unbounded: bool) -> Result<Self> {
        let k = rows.len();
        if k == 0 || n == 0 {
            return Err(Error::DimensionMismatch(
                "need at least one generator and one register".into(),
            ));
        }
        if k > 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "{k} generators exceed the 2n = {} bound",
                2 * n
            )));
        }
        if rows.iter().any(|r| r.len() != 2 * n) {
            return Err(Error::DimensionMismatch(format!(
                "every row must have 2n = {} entries",
                2 * n
            )));
        }
        let mut matrix = Mat::from_rows(&rows)?;
        if !unbounded {
            matrix = matrix.reduced_mod(q);
        }
        if rref(&matrix, q)?.rank < k {
            return Err(Error::DependentGenerators);
        }
        Ok(Self {
            q,
            n,
            matrix,
            unbounded,
            declared_c: None,
            declared_d: None,
        })
    }

    pub fn with_declared(mut self, c: Option<u64>, d: Option<u64>) -> Self {
        self.declared_c = c;
        self.declared_d = d;
        self
    }

    pub fn q(&self) -> PrimeModulus {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn is_unbounded(&self) -> bool {
        self.unbounded
    }

    pub fn modulus(&self) -> Modulus {
        if self.unbounded {
            Modulus::Unbounded
        } else {
            Modulus::Finite(self.q)
        }
    }

    /// Generator `i` (0-based) as a φ vector carrying this code's modulus tag.
    pub fn generator(&self, i: usize) -> PhiVector {
        PhiVector::new(self.matrix.row(i).to_vec(), self.modulus())
            .expect("rows have even length by construction")
    }

    /// The same generators read over a (possibly different) prime `p`.
    /// Declared metadata only survives when the dimension is unchanged.
    pub fn reduced(&self, p: PrimeModulus) -> Result<CodeSpec> {
        let rows = self.matrix.reduced_mod(p).row_vecs();
        let code = CodeSpec::new(p, self.n, rows)?;
        if p == self.q {
            Ok(code.with_declared(self.declared_c, self.declared_d))
        } else {
            Ok(code)
        }
    }

    /// Exchanges registers `i` and `j` (1-based): columns `(i, i+n)` and
    /// `(j, j+n)` swap in every generator.
    pub fn register_swap(&self, i: usize, j: usize) -> Result<CodeSpec> {
        let (i0, j0) = (self.check_register(i)?, self.check_register(j)?);
        let mut m = self.matrix.clone();
        m.swap_cols(i0, j0);
        m.swap_cols(self.n + i0, self.n + j0);
        Ok(Self {
            matrix: m,
            ..self.clone()
        })
    }

    /// Conjugates register `i` (1-based) by the Fourier/Hadamard gate:
    /// `(x_i, z_i) -> (-z_i, x_i)`, with the sign on the incoming X column.
    pub fn hadamard_swap(&self, i: usize) -> Result<CodeSpec> {
        let i0 = self.check_register(i)?;
        let mut m = self.matrix.clone();
        for r in 0..m.rows() {
            let x = m[(r, i0)];
            let z = m[(r, self.n + i0)];
            m[(r, i0)] = if self.unbounded {
                -z
            } else {
                normalize(-z, self.q)
            };
            m[(r, self.n + i0)] = x;
        }
        Ok(Self {
            matrix: m,
            ..self.clone()
        })
    }

    fn check_register(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            Err(Error::RegisterOutOfRange {
                register: i,
                n: self.n,
            })
        } else {
            Ok(i - 1)
        }
    }
}
