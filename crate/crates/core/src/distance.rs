//! Brute-force detection distance at a given prime, plus an independent
//! exhaustive oracle used to cross-check it on small instances.
//!
//! An error is undetectable when it has zero syndrome against every
//! generator. `d_pure` is the lowest weight of a nonzero undetectable
//! error. `d` additionally excludes the isotropic part (row space ∩
//! kernel), the undetectable errors that are group members and so act
//! trivially; it is absent when the kernel and the isotropic part
//! coincide, as they do for any commuting generator set of full length.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modular::{normalize, null_space, rref, PrimeModulus, RrefResult};
use crate::pauli::{Modulus, PhiVector};
use crate::symplectic::syndrome_matrix;

/// Hard ceiling on any subgroup or full-space enumeration.
const ENUM_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    /// Min weight of a nonzero zero-syndrome error.
    pub d_pure: Option<usize>,
    /// Min weight of a zero-syndrome error outside the isotropic part.
    pub d: Option<usize>,
    /// Achiever of `d` when present, of `d_pure` otherwise. Ties break to
    /// the lexicographically smallest support, then assignment.
    pub witness: Option<PhiVector>,
    /// Some nonzero isotropic element is lighter than `d`.
    pub degenerate: bool,
    /// The search hit `max_weight` before settling its target.
    pub cap_hit: bool,
    /// Candidates enumerated per weight class by the error scan; a fully
    /// enumerated class `w` holds exactly `C(n, w) * (p^2 - 1)^w`. Empty
    /// when the answer came from subgroup enumeration instead.
    pub candidates_per_weight: Vec<u64>,
}

impl DistanceReport {
    /// The single reported detection distance: `d` when it exists,
    /// `d_pure` otherwise.
    pub fn distance(&self) -> Option<usize> {
        self.d.or(self.d_pure)
    }
}

/// Ordering key for tie-breaking among same-weight candidates.
type Key = (usize, Vec<usize>, Vec<(i64, i64)>);

fn candidate_key(v: &[i64]) -> Key {
    let n = v.len() / 2;
    let support: Vec<usize> = (0..n).filter(|&r| v[r] != 0 || v[n + r] != 0).collect();
    let pairs: Vec<(i64, i64)> = support.iter().map(|&r| (v[r], v[n + r])).collect();
    (support.len(), support, pairs)
}

fn in_space(rr: &RrefResult, v: &[i64], p: PrimeModulus) -> bool {
    let mut res: Vec<i64> = v.iter().map(|&e| normalize(e, p)).collect();
    for (row, &pc) in rr.pivot_cols.iter().enumerate() {
        let f = res[pc];
        if f != 0 {
            for (c, e) in res.iter_mut().enumerate() {
                *e = normalize(*e - f * rr.reduced[(row, c)], p);
            }
        }
    }
    res.iter().all(|&e| e == 0)
}

fn row_product_mod(a: &[i64], b: &[i64], p: PrimeModulus) -> i64 {
    let n = a.len() / 2;
    let mut acc: i128 = 0;
    for r in 0..n {
        acc += b[n + r] as i128 * a[r] as i128;
        acc -= b[r] as i128 * a[n + r] as i128;
    }
    normalize(acc.rem_euclid(p.as_i64() as i128) as i64, p)
}

/// Basis of row space ∩ kernel: row combinations whose syndrome against
/// every generator vanishes mod p.
pub(crate) fn isotropic_basis(m: &Mat, p: PrimeModulus) -> Result<Vec<Vec<i64>>> {
    let mp = m.reduced_mod(p);
    let rr = rref(&mp, p)?;
    let dim_row = rr.rank;
    let k = mp.rows();
    let pairings = Mat::from_fn(dim_row, k, |j, i| {
        row_product_mod(rr.reduced.row(j), mp.row(i), p)
    });
    let mu_basis = null_space(&pairings.transpose(), p)?;
    let cols = mp.cols();
    let mut basis = Vec::with_capacity(mu_basis.len());
    for mu in mu_basis {
        let mut v = vec![0i64; cols];
        for (j, &coef) in mu.iter().enumerate() {
            if coef != 0 {
                for (c, e) in v.iter_mut().enumerate() {
                    *e = normalize(*e + coef * rr.reduced[(j, c)], p);
                }
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

fn checked_space_size(p: PrimeModulus, dim: usize) -> Option<u128> {
    (p.value() as u128)
        .checked_pow(dim as u32)
        .filter(|&t| t <= ENUM_CAP)
}

/// Minimum-key nonzero element of the span of `basis`, by full enumeration.
fn min_weight_in_span(basis: &[Vec<i64>], p: PrimeModulus) -> Option<(Key, Vec<i64>)> {
    if basis.is_empty() {
        return None;
    }
    let cols = basis[0].len();
    let mut coeffs = vec![0i64; basis.len()];
    let mut best: Option<(Key, Vec<i64>)> = None;
    while next_digit_vector(&mut coeffs, p.as_i64()) {
        let v = span_element(basis, &coeffs, cols, p);
        if v.iter().all(|&e| e == 0) {
            continue;
        }
        let key = candidate_key(&v);
        if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best = Some((key, v));
        }
    }
    best
}

fn span_element(basis: &[Vec<i64>], coeffs: &[i64], cols: usize, p: PrimeModulus) -> Vec<i64> {
    let mut v = vec![0i64; cols];
    for (b, &coef) in coeffs.iter().enumerate() {
        if coef != 0 {
            for (dst, &src) in v.iter_mut().zip(&basis[b]) {
                *dst = normalize(*dst + coef * src, p);
            }
        }
    }
    v
}

fn next_digit_vector(digits: &mut [i64], base: i64) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < base {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if c[i] != i + n - w {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_odometer(idx: &mut [usize], base: usize) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < base {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

/// Enumerates candidate errors by increasing weight and reports the first
/// undetectable hits. Supports are visited in lexicographic order and
/// per-register assignments in lexicographic `(x, z)` order, so the first
/// hit is also the tie-break winner.
pub fn detection_distance(m: &Mat, p: PrimeModulus, max_weight: usize) -> DistanceReport {
    let n = m.cols() / 2;
    let k = m.rows();
    let mp = m.reduced_mod(p);
    let gen_rref = rref(&mp, p).expect("natural column order is valid");
    let syn = syndrome_matrix(&mp, p);
    let dim_ker = 2 * n - rref(&syn, p).expect("natural column order is valid").rank;
    let dim_iso = isotropic_basis(&mp, p)
        .expect("isotropic basis always exists")
        .len();
    let d_exists = dim_ker > dim_iso;

    let empty = |cap_hit: bool| DistanceReport {
        d_pure: None,
        d: None,
        witness: None,
        degenerate: false,
        cap_hit,
        candidates_per_weight: Vec::new(),
    };
    if dim_ker == 0 {
        return empty(false);
    }

    // Kernel == isotropic part: `d` is absent and `d_pure` is the lightest
    // subgroup element, cheaper to find by spanning the kernel directly.
    if !d_exists && checked_space_size(p, dim_ker).is_some() {
        let basis = null_space(&syn, p).expect("kernel basis exists");
        let best = min_weight_in_span(&basis, p);
        return match best {
            Some((key, v)) if key.0 <= max_weight => DistanceReport {
                d_pure: Some(key.0),
                d: None,
                witness: Some(PhiVector::new(v, Modulus::Finite(p)).expect("even length")),
                degenerate: false,
                cap_hit: false,
                candidates_per_weight: Vec::new(),
            },
            Some(_) => empty(true),
            None => empty(false),
        };
    }

    let pairs_list: Vec<(i64, i64)> = (0..p.as_i64())
        .flat_map(|x| (0..p.as_i64()).map(move |z| (x, z)))
        .filter(|&(x, z)| (x, z) != (0, 0))
        .collect();

    let top = max_weight.min(n);
    let mut counts = vec![0u64; top];
    let mut d_pure: Option<usize> = None;
    let mut witness_pure: Option<Vec<i64>> = None;
    let mut d: Option<usize> = None;
    let mut witness: Option<Vec<i64>> = None;

    'outer: for w in 1..=top {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut idx = vec![0usize; w];
            loop {
                counts[w - 1] += 1;
                let mut undetected = true;
                for row in 0..k {
                    let mut acc: i128 = 0;
                    for (pos, &reg) in support.iter().enumerate() {
                        let (ex, ez) = pairs_list[idx[pos]];
                        acc += mp[(row, n + reg)] as i128 * ex as i128;
                        acc -= mp[(row, reg)] as i128 * ez as i128;
                    }
                    if acc.rem_euclid(p.as_i64() as i128) != 0 {
                        undetected = false;
                        break;
                    }
                }
                if undetected {
                    let mut e = vec![0i64; 2 * n];
                    for (pos, &reg) in support.iter().enumerate() {
                        let (ex, ez) = pairs_list[idx[pos]];
                        e[reg] = ex;
                        e[n + reg] = ez;
                    }
                    if d_pure.is_none() {
                        d_pure = Some(w);
                        witness_pure = Some(e.clone());
                    }
                    if !d_exists {
                        break 'outer;
                    }
                    if !in_space(&gen_rref, &e, p) {
                        d = Some(w);
                        witness = Some(e);
                        break 'outer;
                    }
                }
                if !next_odometer(&mut idx, pairs_list.len()) {
                    break;
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }

    let goal_met = if d_exists {
        d.is_some()
    } else {
        d_pure.is_some()
    };
    let degenerate = match (d_pure, d) {
        (Some(dp), Some(dd)) => dp < dd,
        (Some(_), None) => d_exists, // the true d lies beyond the cap
        _ => false,
    };
    let witness_vec = witness.or(witness_pure);
    DistanceReport {
        d_pure,
        d,
        witness: witness_vec.map(|v| PhiVector::new(v, Modulus::Finite(p)).expect("even length")),
        degenerate,
        cap_hit: !goal_met,
        candidates_per_weight: counts,
    }
}

/// Ground truth by exhaustive scan of every one of the `p^(2n)` vectors.
/// Enumeration and syndrome evaluation are written independently of the
/// weight-class search above.
pub fn oracle_distance(m: &Mat, p: PrimeModulus) -> Result<DistanceReport> {
    let n = m.cols() / 2;
    let k = m.rows();
    if checked_space_size(p, 2 * n).is_none() {
        return Err(Error::InstanceTooLarge(format!(
            "{}^{} vectors exceed the enumeration cap",
            p.value(),
            2 * n
        )));
    }
    let mp = m.reduced_mod(p);
    let gen_rref = rref(&mp, p)?;

    let mut v = vec![0i64; 2 * n];
    let mut best_pure: Option<(Key, Vec<i64>)> = None;
    let mut best_d: Option<(Key, Vec<i64>)> = None;
    while next_digit_vector(&mut v, p.as_i64()) {
        let mut undetected = true;
        for row in 0..k {
            let mut acc: i128 = 0;
            for r in 0..n {
                acc += mp[(row, n + r)] as i128 * v[r] as i128;
                acc -= mp[(row, r)] as i128 * v[n + r] as i128;
            }
            if acc.rem_euclid(p.as_i64() as i128) != 0 {
                undetected = false;
                break;
            }
        }
        if !undetected {
            continue;
        }
        let key = candidate_key(&v);
        if best_pure.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best_pure = Some((key.clone(), v.clone()));
        }
        if !in_space(&gen_rref, &v, p) && best_d.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best_d = Some((key, v.clone()));
        }
    }

    let d_pure = best_pure.as_ref().map(|(key, _)| key.0);
    let d = best_d.as_ref().map(|(key, _)| key.0);
    let degenerate = matches!((d_pure, d), (Some(dp), Some(dd)) if dp < dd);
    let witness = best_d
        .or(best_pure)
        .map(|(_, v)| PhiVector::new(v, Modulus::Finite(p)).expect("even length"));
    Ok(DistanceReport {
        d_pure,
        d,
        witness,
        degenerate,
        cap_hit: false,
        candidates_per_weight: Vec::new(),
    })
}

/// True when every nonzero element of the isotropic part weighs at least
/// `d`, i.e. the code is non-degenerate at that distance.
pub fn nondegeneracy_check(code: &CodeSpec, p: PrimeModulus, d: usize) -> Result<bool> {
    let basis = isotropic_basis(code.matrix(), p)?;
    if checked_space_size(p, basis.len()).is_none() {
        return Err(Error::InstanceTooLarge(format!(
            "isotropic part has {}^{} elements",
            p.value(),
            basis.len()
        )));
    }
    let mut coeffs = vec![0i64; basis.len()];
    while next_digit_vector(&mut coeffs, p.as_i64()) {
        let v = span_element(&basis, &coeffs, basis[0].len(), p);
        if v.iter().any(|&e| e != 0) && candidate_key(&v).0 < d {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    fn integer_dual_rows() -> Vec<Vec<i64>> {
        vec![
            vec![0, 11, 3, 4, 12, 11, 11, 12],
            vec![14, 6, 14, 9, 13, 8, 5, 0],
            vec![4, 13, 10, 11, 10, 1, 3, 2],
            vec![0, 13, 4, 9, 11, 5, 0, 0],
        ]
    }

    fn five_qubit_rows() -> Vec<Vec<i64>> {
        vec![
            vec![1, 0, 0, 1, 0, 0, 1, 1, 0, 0],
            vec![0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![1, 0, 1, 0, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 1, 0, 1, 0, 0, 0, 1],
        ]
    }

    #[test]
    fn dual_example_mod_three() {
        let m = Mat::from_rows(&integer_dual_rows()).unwrap();
        let report = detection_distance(&m, q(3), 4);
        assert_eq!(report.d_pure, Some(3));
        assert_eq!(report.d, None); // kernel equals the group itself
        assert_eq!(report.distance(), Some(3));
        assert!(!report.degenerate);
        assert!(!report.cap_hit);
    }

    #[test]
    fn dual_example_mod_five() {
        let m = Mat::from_rows(&integer_dual_rows()).unwrap();
        let report = detection_distance(&m, q(5), 4);
        assert_eq!(report.d_pure, Some(2));
        assert_eq!(report.d, Some(2));
        assert!(!report.degenerate);
    }

    #[test]
    fn single_x_generator() {
        let m = Mat::from_rows(&[vec![1, 0]]).unwrap();
        let report = detection_distance(&m, q(2), 1);
        assert_eq!(report.d_pure, Some(1));
        assert_eq!(report.witness.as_ref().unwrap().entries(), &[1, 0]);
    }

    #[test]
    fn oracle_matches_on_examples() {
        let dual = Mat::from_rows(&integer_dual_rows()).unwrap();
        for p in [3u64, 5] {
            let scan = detection_distance(&dual, q(p), 4);
            let oracle = oracle_distance(&dual, q(p)).unwrap();
            assert_eq!(scan.d_pure, oracle.d_pure, "p = {p}");
            assert_eq!(scan.d, oracle.d, "p = {p}");
            assert_eq!(scan.degenerate, oracle.degenerate, "p = {p}");
            assert_eq!(scan.witness, oracle.witness, "p = {p}");
        }
    }

    #[test]
    fn oracle_rejects_oversized_instances() {
        let m = Mat::from_rows(&[vec![0; 40]]).unwrap();
        assert!(matches!(
            oracle_distance(&m, q(5)),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn five_qubit_code_has_distance_three() {
        let m = Mat::from_rows(&five_qubit_rows()).unwrap();
        let report = detection_distance(&m, q(2), 5);
        let oracle = oracle_distance(&m, q(2)).unwrap();
        assert_eq!(report.d_pure, Some(3));
        assert_eq!(report.d, Some(3));
        assert_eq!(oracle.d, Some(3));
        assert!(!report.degenerate);
    }

    #[test]
    fn candidate_counts_match_closed_form() {
        // Cap at weight 2; the lightest undetectable error has weight 3,
        // so both classes are enumerated in full.
        let m = Mat::from_rows(&five_qubit_rows()).unwrap();
        let report = detection_distance(&m, q(2), 2);
        assert!(report.cap_hit);
        assert_eq!(report.d, None);
        // C(5,1) * 3^1 and C(5,2) * 3^2 for p = 2.
        assert_eq!(report.candidates_per_weight, vec![15, 90]);
    }

    #[test]
    fn witness_reverifies() {
        let m = Mat::from_rows(&integer_dual_rows()).unwrap();
        for p in [3u64, 5] {
            let p = q(p);
            let report = detection_distance(&m, p, 4);
            let w = report.witness.as_ref().unwrap();
            assert_eq!(w.weight(), report.distance().unwrap());
            let mp = m.reduced_mod(p);
            for row in 0..mp.rows() {
                assert_eq!(row_product_mod(w.entries(), mp.row(row), p), 0);
            }
        }
    }

    #[test]
    fn adding_a_generator_cannot_lower_d_pure() {
        let base = Mat::from_rows(&[vec![0, 1, 0, 0, 1, 0, 1, 0]]).unwrap();
        let bigger =
            Mat::from_rows(&[vec![0, 1, 0, 0, 1, 0, 1, 0], vec![1, 0, 1, 0, 0, 1, 0, 0]]).unwrap();
        let d1 = detection_distance(&base, q(2), 4).d_pure.unwrap();
        let d2 = detection_distance(&bigger, q(2), 4).d_pure.unwrap();
        assert!(d2 >= d1);
    }

    #[test]
    fn nondegeneracy_examples() {
        // Trivial isotropic part: vacuously non-degenerate.
        let dual = CodeSpec::new_unbounded(q(5), 4, integer_dual_rows()).unwrap();
        assert!(nondegeneracy_check(&dual, q(5), 4).unwrap());
        // Contains a weight-1 group member.
        let x1 = CodeSpec::new(q(2), 2, vec![vec![1, 0, 0, 0]]).unwrap();
        assert!(!nondegeneracy_check(&x1, q(2), 2).unwrap());
        assert!(nondegeneracy_check(&x1, q(2), 1).unwrap());
        // All 81 group elements of the mod-3 reading weigh at least 3.
        assert!(nondegeneracy_check(&dual, q(3), 3).unwrap());
    }

    #[test]
    fn full_syndrome_rank_leaves_empty_kernel() {
        let m = Mat::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let report = detection_distance(&m, q(2), 1);
        assert_eq!(report.d_pure, None);
        assert_eq!(report.d, None);
        assert!(!report.cap_hit);
    }
}
