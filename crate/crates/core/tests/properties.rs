//! Randomized invariants for the φ algebra, the canonicalizer, and the
//! file format.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ldikit::{
    canonicalize, format_code_file, format_pauli_string, min_entanglement, parse_code_file,
    parse_pauli_string, replay, rref, symplectic_product, undetectable_kernel, CodeSpec, Mat,
    Modulus, PhiVector, PrimeModulus,
};

fn pm(v: u64) -> PrimeModulus {
    PrimeModulus::new(v).unwrap()
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64), Just(7u64)]
}

fn finite_vector() -> impl Strategy<Value = PhiVector> {
    (small_prime(), 1usize..5).prop_flat_map(|(q, n)| {
        prop::collection::vec(0i64..q as i64, 2 * n)
            .prop_map(move |entries| PhiVector::new(entries, Modulus::Finite(pm(q))).unwrap())
    })
}

fn vector_pair() -> impl Strategy<Value = (PhiVector, PhiVector)> {
    (small_prime(), 1usize..5).prop_flat_map(|(q, n)| {
        let one = prop::collection::vec(0i64..q as i64, 2 * n)
            .prop_map(move |entries| PhiVector::new(entries, Modulus::Finite(pm(q))).unwrap());
        (one.clone(), one)
    })
}

proptest! {
    #[test]
    fn compose_commutes_and_associates((a, b) in vector_pair()) {
        prop_assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
        let c = a.compose(&a).unwrap();
        prop_assert_eq!(
            a.compose(&b).unwrap().compose(&c).unwrap(),
            a.compose(&b.compose(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn q_fold_composition_is_identity(v in finite_vector()) {
        let Modulus::Finite(q) = v.modulus() else { unreachable!() };
        let mut acc = PhiVector::zero(v.n(), v.modulus());
        for _ in 0..q.value() {
            acc = acc.compose(&v).unwrap();
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn weight_is_subadditive((a, b) in vector_pair()) {
        prop_assert!(a.compose(&b).unwrap().weight() <= a.weight() + b.weight());
    }

    #[test]
    fn pauli_string_round_trip(v in finite_vector()) {
        let Modulus::Finite(q) = v.modulus() else { unreachable!() };
        let s = format_pauli_string(&v);
        let back = parse_pauli_string(&s, q).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(format_pauli_string(&back), s);
    }

    #[test]
    fn rref_preserves_rowspace_and_replays(
        q in small_prime(),
        rows in 1usize..4,
        cols in 1usize..5,
        seed in any::<u64>(),
    ) {
        let q = pm(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Mat::from_fn(rows, cols, |_, _| rng.random_range(0..q.value() as i64));
        let rr = rref(&m, q).unwrap();
        prop_assert_eq!(ldikit::modular::apply_row_ops(&m, &rr.ops, q).unwrap(), rr.reduced.clone());
        for r in 0..rows {
            prop_assert!(ldikit::solve_in_rowspace(&rr.reduced, m.row(r), q).unwrap().is_some());
            prop_assert!(ldikit::solve_in_rowspace(&m, rr.reduced.row(r), q).unwrap().is_some());
        }
    }
}

fn random_code(rng: &mut ChaCha8Rng, qv: u64, n: usize, k: usize) -> Option<CodeSpec> {
    for _ in 0..64 {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..2 * n).map(|_| rng.random_range(0..qv as i64)).collect())
            .collect();
        if let Ok(code) = CodeSpec::new(pm(qv), n, rows) {
            return Some(code);
        }
    }
    None
}

/// Column operations are weight-preserving symplectic maps, and row
/// operations fix the row space; the kernel weight multiset is invariant
/// under the whole canonicalization.
fn next_odometer(digits: &mut [i64], base: i64) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < base {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

fn kernel_weights(code: &CodeSpec, q: PrimeModulus) -> Vec<usize> {
    let basis = undetectable_kernel(code, q).unwrap();
    let mut weights = Vec::new();
    let mut coeffs = vec![0i64; basis.len()];
    while next_odometer(&mut coeffs, q.value() as i64) {
        let mut v = PhiVector::zero(code.n(), Modulus::Finite(q));
        for (b, &coef) in coeffs.iter().enumerate() {
            for _ in 0..coef {
                v = v.compose(&basis[b]).unwrap();
            }
        }
        weights.push(v.weight());
    }
    weights.sort_unstable();
    weights
}

#[test]
fn canonical_x_block_is_identity_on_200_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca0);
    let mut done = 0;
    while done < 200 {
        let qv = [2u64, 3, 5][rng.random_range(0..3)];
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=n);
        let Some(code) = random_code(&mut rng, qv, n, k) else {
            continue;
        };
        let Ok(canon) = canonicalize(&code) else {
            continue; // register-degenerate draws cannot reach the form
        };
        let m = canon.code().matrix();
        for r in 0..k {
            for c in 0..k {
                assert_eq!(m[(r, c)], i64::from(r == c), "draw {done}");
            }
        }
        assert_eq!(
            min_entanglement(&code).unwrap().c,
            min_entanglement(canon.code()).unwrap().c,
            "draw {done}"
        );
        assert_eq!(&replay(canon.log(), &code).unwrap(), canon.code());
        let again = canonicalize(canon.code()).unwrap();
        assert_eq!(again.code(), canon.code(), "idempotence, draw {done}");
        done += 1;
    }
}

#[test]
fn canonicalization_preserves_kernel_weight_multiset() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbee);
    let mut done = 0;
    while done < 40 {
        let qv = [2u64, 3][rng.random_range(0..2)];
        let n = rng.random_range(1..=3);
        let k = rng.random_range(1..=n);
        let Some(code) = random_code(&mut rng, qv, n, k) else {
            continue;
        };
        let Ok(canon) = canonicalize(&code) else {
            continue;
        };
        let q = pm(qv);
        assert_eq!(
            kernel_weights(&code, q),
            kernel_weights(canon.code(), q),
            "draw {done}"
        );
        done += 1;
    }
}

#[test]
fn swaps_preserve_weights_and_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a9);
    for _ in 0..100 {
        let qv = [2u64, 3, 5][rng.random_range(0..3)];
        let n = rng.random_range(2..=4);
        let k = rng.random_range(1..=n);
        let Some(code) = random_code(&mut rng, qv, n, k) else {
            continue;
        };
        let i = rng.random_range(1..=n);
        let j = rng.random_range(1..=n);
        let swapped = code.register_swap(i, j).unwrap();
        let hadamarded = code.hadamard_swap(i).unwrap();
        let f = Modulus::Finite(pm(qv));
        for a in 0..k {
            assert_eq!(code.generator(a).weight(), swapped.generator(a).weight());
            assert_eq!(code.generator(a).weight(), hadamarded.generator(a).weight());
            for b in 0..k {
                let orig = symplectic_product(&code.generator(a), &code.generator(b), f).unwrap();
                for variant in [&swapped, &hadamarded] {
                    assert_eq!(
                        symplectic_product(&variant.generator(a), &variant.generator(b), f)
                            .unwrap(),
                        orig
                    );
                }
            }
        }
    }
}

#[test]
fn kernel_dimension_matches_rank_nullity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd);
    for _ in 0..60 {
        let qv = [2u64, 3, 5][rng.random_range(0..3)];
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=n);
        let Some(code) = random_code(&mut rng, qv, n, k) else {
            continue;
        };
        let q = pm(qv);
        let basis = undetectable_kernel(&code, q).unwrap();
        // Independent generators give the syndrome map full rank k.
        assert_eq!(basis.len(), 2 * n - k);
        for v in &basis {
            for g in 0..k {
                assert_eq!(
                    symplectic_product(v, &code.generator(g), Modulus::Finite(q)).unwrap(),
                    0
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn code_file_round_trip(
        q in small_prime(),
        n in 1usize..4,
        seed in any::<u64>(),
        unbounded in any::<bool>(),
        declare_c in prop::option::of(0u64..3),
        declare_d in prop::option::of(1u64..4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.random_range(1..=n);
        let range = if unbounded { -20i64..20 } else { 0i64..q as i64 };
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..2 * n).map(|_| rng.random_range(range.clone())).collect())
            .collect();
        let code = if unbounded {
            CodeSpec::new_unbounded(pm(q), n, rows)
        } else {
            CodeSpec::new(pm(q), n, rows)
        };
        prop_assume!(code.is_ok());
        let code = code.unwrap().with_declared(declare_c, declare_d);
        let text = format_code_file(&code);
        prop_assert_eq!(parse_code_file(&text).unwrap(), code);
    }
}
