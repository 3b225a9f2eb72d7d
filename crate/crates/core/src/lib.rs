//! Exact-arithmetic tools for qudit stabilizer and entanglement-assisted
//! codes in the integer symplectic representation.
//!
//! Generators live as length-2n integer vectors (X powers | Z powers),
//! either reduced mod a prime local dimension q or kept as exact integers.
//! On top of that representation the crate provides:
//!
//! - commutator bookkeeping: symplectic products, commutator matrices, and
//!   the minimal number of entangled pairs a generator set needs;
//! - canonicalization to the identity-led form `[I_k X2 | Z1 Z2]` with a
//!   replayable step log;
//! - the lift that adds a strictly lower triangular, q-divisible matrix to
//!   the Z1 block so all generators commute at a chosen new prime p while
//!   the code is unchanged mod q, turning an entanglement-assisted code
//!   over q into an entanglement-free stabilizer code over p;
//! - the entry bound B and the prime threshold p* above which the lift is
//!   guaranteed to preserve distance;
//! - brute-force detection distance with an independent exhaustive oracle;
//! - exact rate accounting and a flat-file format plus CLI for all of it.
//!
//! Everything is exact: entries are `i64`, bounds are big integers, rates
//! are rationals. No floating point anywhere.
//!
//! # Quick start
//!
//! ```
//! use ldikit::{min_entanglement, transform, verify, CodeSpec, PrimeModulus};
//!
//! // A four-qubit code whose first two generators anticommute: one
//! // entangled pair is needed to operate it over qubits.
//! let code = CodeSpec::new(
//!     PrimeModulus::new(2)?,
//!     4,
//!     vec![
//!         vec![0, 1, 0, 0, 1, 0, 1, 0],
//!         vec![0, 0, 0, 0, 1, 1, 0, 1],
//!         vec![1, 1, 1, 0, 1, 0, 0, 1],
//!         vec![0, 1, 1, 1, 1, 1, 1, 0],
//!     ],
//! )?;
//! assert_eq!(min_entanglement(&code)?.c, 1);
//!
//! // Lift it to generators that commute mod 5. Read at 5, the code is an
//! // ordinary stabilizer code; read mod 2, it is unchanged.
//! let five = PrimeModulus::new(5)?;
//! let result = transform(&code, five)?;
//! assert!(verify(&result).passed());
//! let at_five = CodeSpec::new(five, 4, result.output.reduced_mod(five).row_vecs())?;
//! assert_eq!(min_entanglement(&at_five)?.c, 0);
//! # Ok::<(), ldikit::Error>(())
//! ```

pub mod canonical;
pub mod code;
pub mod codefile;
pub mod distance;
pub mod error;
pub mod matrix;
pub mod modular;
pub mod pauli;
pub mod rates;
pub mod symplectic;
pub mod transform;

pub use canonical::{canonicalize, replay, CanonicalForm, TransformLog, TransformStep};
pub use code::CodeSpec;
pub use codefile::{format_code_file, parse_code_file};
pub use distance::{detection_distance, nondegeneracy_check, oracle_distance, DistanceReport};
pub use error::{Error, Result};
pub use matrix::Mat;
pub use modular::{
    eval_p_star, is_prime, mod_inverse, normalize, rref, rref_mod, solve_in_rowspace, PrimeModulus,
};
pub use pauli::{
    format_pauli_string, parse_pauli_string, phi_of_pauli, Modulus, PauliTerm, PhiVector,
};
pub use rates::{rates, RatesReport};
pub use symplectic::{
    commutator_matrix, in_group, min_entanglement, symplectic_product, undetectable_kernel,
    CommutatorMatrix, EntanglementReport,
};
pub use transform::{
    decompose, decompose_with, entry_bound, prime_scan, threshold, transform, transform_with,
    verify, verify_output, BoundsReport, InvarianceLabel, MagnitudeMode, TransformResult,
    VerificationReport,
};
