//! Symplectic products, commutator matrices, minimal entanglement, the
//! undetectable-error kernel, and group membership.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modular::{null_space, rref, solve_in_rowspace, PrimeModulus};
use crate::pauli::{Modulus, PhiVector};

/// `a ⊙ b = Σ_r [b_z(r)·a_x(r) − b_x(r)·a_z(r)]`, reduced when the modulus
/// is finite and exact over the integers otherwise. Two operators commute
/// over q exactly when their product vanishes mod q.
pub fn symplectic_product(a: &PhiVector, b: &PhiVector, modulus: Modulus) -> Result<i64> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch);
    }
    let mut acc: i128 = 0;
    for r in 0..a.n() {
        acc += b.z_at(r) as i128 * a.x_at(r) as i128;
        acc -= b.x_at(r) as i128 * a.z_at(r) as i128;
    }
    let value = i64::try_from(acc).expect("symplectic product overflows i64");
    Ok(modulus.reduce(value))
}

/// All pairwise products of a code's generators. Antisymmetric with a zero
/// diagonal by construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CommutatorMatrix {
    matrix: Mat,
    modulus: Modulus,
}

impl CommutatorMatrix {
    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Upper-triangle pairs `(i, j, value)` with a nonzero product,
    /// 1-based and ordered.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize, i64)> {
        let k = self.matrix.rows();
        let mut out = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if self.matrix[(i, j)] != 0 {
                    out.push((i + 1, j + 1, self.matrix[(i, j)]));
                }
            }
        }
        out
    }
}

pub fn commutator_matrix(code: &CodeSpec, modulus: Modulus) -> CommutatorMatrix {
    let k = code.k();
    let gens: Vec<PhiVector> = (0..k).map(|i| code.generator(i)).collect();
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            let v = symplectic_product(&gens[i], &gens[j], modulus)
                .expect("generators share one length");
            m[(i, j)] = v;
            m[(j, i)] = modulus.reduce(-v);
        }
    }
    CommutatorMatrix { matrix: m, modulus }
}

/// Entanglement accounting for one generator set: `c` pairs must be backed
/// by shared entanglement, `s = k - 2c` generators commute outright.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EntanglementReport {
    pub c: usize,
    pub s: usize,
    /// 1-based `(i, j, value)` with `i < j` and a nonzero product mod q.
    pub noncommuting_pairs: Vec<(usize, usize, i64)>,
}

/// Minimal number of entangled pairs: half the rank of the mod-q commutator
/// matrix (the rank of an antisymmetric matrix over a field is even).
pub fn min_entanglement(code: &CodeSpec) -> Result<EntanglementReport> {
    let q = code.q();
    let k = code.k();
    if rref(code.matrix(), q)?.rank < k {
        return Err(Error::DependentGenerators);
    }
    let cm = commutator_matrix(code, Modulus::Finite(q));
    let rank = rref(cm.matrix(), q)?.rank;
    debug_assert_eq!(rank % 2, 0, "antisymmetric rank must be even");
    Ok(EntanglementReport {
        c: rank / 2,
        s: k - rank,
        noncommuting_pairs: cm.nonzero_pairs(),
    })
}

/// Rows of the syndrome map: the error `e` is undetectable at `p` exactly
/// when `syndrome_matrix(code, p) · e = 0`.
pub(crate) fn syndrome_matrix(m: &Mat, p: PrimeModulus) -> Mat {
    let n = m.cols() / 2;
    let mp = m.reduced_mod(p);
    Mat::from_fn(m.rows(), m.cols(), |r, c| {
        if c < n {
            mp[(r, n + c)]
        } else {
            crate::modular::normalize(-mp[(r, c - n)], p)
        }
    })
}

/// Basis over GF(p) of the errors with zero syndrome against every
/// generator. Dimension is `2n - rank_p`(syndrome map).
pub fn undetectable_kernel(code: &CodeSpec, p: PrimeModulus) -> Result<Vec<PhiVector>> {
    let syn = syndrome_matrix(code.matrix(), p);
    let basis = null_space(&syn, p)?;
    basis
        .into_iter()
        .map(|v| PhiVector::new(v, Modulus::Finite(p)))
        .collect()
}

/// Whether `e` lies in the GF(p) row space of the generators.
pub fn in_group(code: &CodeSpec, e: &PhiVector, p: PrimeModulus) -> Result<bool> {
    if e.n() != code.n() {
        return Err(Error::LengthMismatch);
    }
    let mp = code.matrix().reduced_mod(p);
    let ep: Vec<i64> = e
        .entries()
        .iter()
        .map(|&x| crate::modular::normalize(x, p))
        .collect();
    Ok(solve_in_rowspace(&mp, &ep, p)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::normalize;

    fn q(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    fn phi(entries: &[i64], m: Modulus) -> PhiVector {
        PhiVector::new(entries.to_vec(), m).unwrap()
    }

    #[test]
    fn product_of_vector_with_itself_vanishes() {
        let v = phi(&[1, 2, 0, 3, 4, 1], Modulus::Finite(q(5)));
        assert_eq!(
            symplectic_product(&v, &v, Modulus::Finite(q(5))).unwrap(),
            0
        );
        assert_eq!(symplectic_product(&v, &v, Modulus::Unbounded).unwrap(), 0);
    }

    #[test]
    fn x_against_z_crosses_once() {
        let f = Modulus::Finite(q(2));
        let x = phi(&[1, 0], f);
        let z = phi(&[0, 1], f);
        assert_eq!(symplectic_product(&x, &z, f).unwrap(), 1);
    }

    #[test]
    fn product_rejects_length_mismatch() {
        let f = Modulus::Finite(q(2));
        let a = phi(&[1, 0], f);
        let b = phi(&[1, 0, 0, 0], f);
        assert_eq!(symplectic_product(&a, &b, f), Err(Error::LengthMismatch));
    }

    /// First two generators of the four-qubit entanglement-assisted example.
    #[test]
    fn known_anticommuting_pair() {
        let f = Modulus::Finite(q(2));
        let r1 = phi(&[0, 1, 0, 0, 1, 0, 1, 0], f);
        let r2 = phi(&[0, 0, 0, 0, 1, 1, 0, 1], f);
        assert_eq!(symplectic_product(&r1, &r2, f).unwrap(), 1);
    }

    fn four_qubit_example() -> CodeSpec {
        CodeSpec::new(
            q(2),
            4,
            vec![
                vec![0, 1, 0, 0, 1, 0, 1, 0],
                vec![0, 0, 0, 0, 1, 1, 0, 1],
                vec![1, 1, 1, 0, 1, 0, 0, 1],
                vec![0, 1, 1, 1, 1, 1, 1, 0],
            ],
        )
        .unwrap()
    }

    fn integer_dual_example() -> CodeSpec {
        CodeSpec::new_unbounded(
            q(5),
            4,
            vec![
                vec![0, 11, 3, 4, 12, 11, 11, 12],
                vec![14, 6, 14, 9, 13, 8, 5, 0],
                vec![4, 13, 10, 11, 10, 1, 3, 2],
                vec![0, 13, 4, 9, 11, 5, 0, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_generator_commutator_is_zero() {
        let c = CodeSpec::new(q(3), 1, vec![vec![1, 2]]).unwrap();
        let cm = commutator_matrix(&c, Modulus::Finite(q(3)));
        assert!(cm.is_zero());
        assert_eq!(cm.matrix().rows(), 1);
    }

    /// Brute-force check of all six pairs against an independent product
    /// computed straight from the row entries.
    #[test]
    fn four_qubit_example_has_one_noncommuting_pair() {
        let code = four_qubit_example();
        let cm = commutator_matrix(&code, Modulus::Finite(q(2)));
        let m = code.matrix();
        for i in 0..4 {
            for j in 0..4 {
                let mut dot = 0i64;
                for r in 0..4 {
                    dot += m[(j, 4 + r)] * m[(i, r)] - m[(j, r)] * m[(i, 4 + r)];
                }
                assert_eq!(cm.matrix()[(i, j)], normalize(dot, q(2)));
            }
        }
        assert_eq!(cm.nonzero_pairs(), vec![(1, 2, 1)]);
    }

    #[test]
    fn dual_example_commutes_mod_three() {
        let code = integer_dual_example();
        assert!(commutator_matrix(&code, Modulus::Finite(q(3))).is_zero());
    }

    #[test]
    fn min_entanglement_examples() {
        // Mutually commuting set.
        let c = CodeSpec::new(q(2), 2, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(min_entanglement(&c).unwrap().c, 0);

        let four = four_qubit_example();
        let rep = min_entanglement(&four).unwrap();
        assert_eq!((rep.c, rep.s), (1, 2));

        let dual = integer_dual_example();
        let rep5 = min_entanglement(&dual).unwrap();
        assert_eq!((rep5.c, rep5.s), (2, 0));
        let rep3 = min_entanglement(&dual.reduced(q(3)).unwrap()).unwrap();
        assert_eq!((rep3.c, rep3.s), (0, 4));
    }

    #[test]
    fn kernel_of_single_x_generator() {
        let c = CodeSpec::new(q(2), 1, vec![vec![1, 0]]).unwrap();
        let basis = undetectable_kernel(&c, q(2)).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].entries(), &[1, 0]);
    }

    #[test]
    fn full_rank_syndrome_map_has_trivial_kernel() {
        let c = CodeSpec::new(q(2), 1, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(undetectable_kernel(&c, q(2)).unwrap().is_empty());
    }

    #[test]
    fn dual_example_kernel_mod_three_is_the_rowspace() {
        let code = integer_dual_example();
        let p = q(3);
        let basis = undetectable_kernel(&code, p).unwrap();
        assert_eq!(basis.len(), 4);
        for v in &basis {
            assert!(in_group(&code, v, p).unwrap());
        }
        // And every generator has zero syndrome, so the two spaces coincide.
        for i in 0..4 {
            let g = code.generator(i);
            for j in 0..4 {
                let h = code.generator(j);
                assert_eq!(symplectic_product(&g, &h, Modulus::Finite(p)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn in_group_examples() {
        let c = CodeSpec::new(q(2), 2, vec![vec![1, 0, 0, 0]]).unwrap();
        let zero = PhiVector::zero(2, Modulus::Finite(q(2)));
        assert!(in_group(&c, &zero, q(2)).unwrap());
        assert!(in_group(&c, &c.generator(0), q(2)).unwrap());
        let z1 = phi(&[0, 1, 0, 0], Modulus::Finite(q(2)));
        assert!(!in_group(&c, &z1, q(2)).unwrap());
        let short = phi(&[1, 0], Modulus::Finite(q(2)));
        assert_eq!(in_group(&c, &short, q(2)), Err(Error::LengthMismatch));
    }
}
