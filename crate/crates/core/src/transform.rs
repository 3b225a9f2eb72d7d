//! Lifting a canonicalized code to integer generators that commute at a new
//! prime `p` while staying untouched mod the original `q`.
//!
//! For each pair `i > j` the integer product `c_ij` splits as
//! `alpha_ij + m_ij*q` with `alpha_ij = c_ij mod q`. With `nu = q mod p`
//! and `n_ij = -nu^{-1} * alpha_ij`, the entry `L_ij = (m_ij - n_ij) * q`
//! is divisible by q, and subtracting it from the pair's product leaves
//! `alpha_ij + n_ij*q`, a multiple of p. Adding the strictly lower
//! triangular `L` to the Z1 block therefore kills every pairwise product
//! mod p: the identity X block guarantees that the only cross term the
//! added rows contribute is `-L_ij` itself.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::canonical::{canonicalize, CanonicalForm};
use crate::code::CodeSpec;
use crate::distance::{detection_distance, DistanceReport};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modular::{eval_p_star, mod_inverse, normalize, rref, PrimeModulus};
use crate::pauli::Modulus;
use crate::symplectic::symplectic_product;

/// How the `n_ij` representative is chosen.
///
/// `Exact` keeps `n_ij = -nu^{-1} * alpha_ij` with `nu^{-1}` the least
/// positive inverse. `Minimize` re-centers `n_ij` into `(-p/2, p/2]`, which
/// shrinks entry magnitudes but makes them depend on the chosen residue.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnitudeMode {
    #[default]
    Exact,
    Minimize,
}

/// The per-pair bookkeeping of the lift. Indices are 1-based with `i > j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PairDecomposition {
    pub i: usize,
    pub j: usize,
    pub c_ij: i64,
    pub alpha_ij: i64,
    pub m_ij: i64,
    pub n_ij: i64,
    pub l_ij: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CommutatorDecomposition {
    pub p: u64,
    pub nu: i64,
    pub nu_inv: i64,
    pub mode: MagnitudeMode,
    pub pairs: Vec<PairDecomposition>,
}

/// Whether the lifted generators work at every prime at once or only at the
/// requested one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvarianceLabel {
    /// Every pairwise integer product is exactly zero; one matrix serves
    /// all primes.
    Ldi,
    /// Entries depend on the target prime through `nu^{-1}`.
    EffectivelyLdi,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TransformResult {
    pub source: CanonicalForm,
    pub target_p: PrimeModulus,
    pub l: Mat,
    /// `[I_k X2 | Z1+L Z2]` over the integers.
    pub output: Mat,
    pub decomposition: CommutatorDecomposition,
    pub label: InvarianceLabel,
}

/// Splits every pairwise integer commutator of the canonical generators for
/// the target prime `p`. Fails with [`Error::SameModulus`] when `p = q`,
/// where `nu = 0` has no inverse.
pub fn decompose(canon: &CanonicalForm, p: PrimeModulus) -> Result<CommutatorDecomposition> {
    decompose_with(canon, p, MagnitudeMode::Exact)
}

pub fn decompose_with(
    canon: &CanonicalForm,
    p: PrimeModulus,
    mode: MagnitudeMode,
) -> Result<CommutatorDecomposition> {
    let q = canon.code().q();
    if p == q {
        return Err(Error::SameModulus(q.value()));
    }
    let nu = normalize(q.as_i64(), p);
    let nu_inv = mod_inverse(nu, p)?;
    let k = canon.code().k();
    let qv = q.as_i64();
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for i in 1..k {
        for j in 0..i {
            let c_ij = symplectic_product(
                &canon.code().generator(i),
                &canon.code().generator(j),
                Modulus::Unbounded,
            )?;
            let alpha_ij = normalize(c_ij, q);
            let m_ij = (c_ij - alpha_ij) / qv;
            let n_ij = match mode {
                MagnitudeMode::Exact => -nu_inv * alpha_ij,
                MagnitudeMode::Minimize => {
                    let r = normalize(-nu_inv * alpha_ij, p);
                    if r > p.as_i64() / 2 {
                        r - p.as_i64()
                    } else {
                        r
                    }
                }
            };
            debug_assert_eq!(normalize(alpha_ij + n_ij * qv, p), 0);
            pairs.push(PairDecomposition {
                i: i + 1,
                j: j + 1,
                c_ij,
                alpha_ij,
                m_ij,
                n_ij,
                l_ij: (m_ij - n_ij) * qv,
            });
        }
    }
    Ok(CommutatorDecomposition {
        p: p.value(),
        nu,
        nu_inv,
        mode,
        pairs,
    })
}

/// Canonicalizes, decomposes, and adds `L` to the Z1 block. The three
/// output invariants (mod-q equality, mod-p commutation, L shape) are
/// re-checked before returning.
pub fn transform(code: &CodeSpec, p: PrimeModulus) -> Result<TransformResult> {
    transform_with(code, p, MagnitudeMode::Exact)
}

pub fn transform_with(
    code: &CodeSpec,
    p: PrimeModulus,
    mode: MagnitudeMode,
) -> Result<TransformResult> {
    let canon = canonicalize(code)?;
    let dec = decompose_with(&canon, p, mode)?;
    let k = canon.code().k();
    let n = canon.code().n();
    let mut l = Mat::zeros(k, k);
    for pair in &dec.pairs {
        l[(pair.i - 1, pair.j - 1)] = pair.l_ij;
    }
    let mut output = canon.code().matrix().clone();
    for i in 0..k {
        for j in 0..k {
            output[(i, n + j)] += l[(i, j)];
        }
    }
    let label = if dec.pairs.iter().all(|pr| pr.alpha_ij == 0) {
        InvarianceLabel::Ldi
    } else {
        InvarianceLabel::EffectivelyLdi
    };
    let result = TransformResult {
        source: canon,
        target_p: p,
        l,
        output,
        decomposition: dec,
        label,
    };
    let report = verify(&result);
    assert!(
        report.passed(),
        "lift construction violated its own invariants: {report:?}"
    );
    Ok(result)
}

/// Independent re-check of a transform's postconditions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    /// Output reduces entry-wise mod q to the canonical source.
    pub mod_q_preserved: bool,
    /// Every pairwise product of output rows vanishes mod p.
    pub mod_p_commuting: bool,
    /// L is strictly lower triangular with every entry divisible by q.
    pub l_valid: bool,
    pub max_entry_observed: i64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mod_q_preserved && self.mod_p_commuting && self.l_valid
    }
}

pub fn verify(result: &TransformResult) -> VerificationReport {
    let q = result.source.code().q();
    let p = result.target_p;
    let canonical = result.source.code().matrix();
    let mod_q_preserved = &result.output.reduced_mod(q) == canonical;
    let l_valid = l_shape_ok(&result.l, q);
    VerificationReport {
        mod_q_preserved,
        mod_p_commuting: rows_commute_mod(&result.output, p),
        l_valid,
        max_entry_observed: result.output.max_abs_entry(),
    }
}

/// Re-checks a lifted generator matrix from its entries alone: the mod-q
/// reduction must be its own canonical form, the difference must be a
/// q-divisible strictly-lower-triangular addition confined to Z1, and all
/// rows must commute mod p.
pub fn verify_output(mat: &Mat, q: PrimeModulus, p: PrimeModulus) -> Result<VerificationReport> {
    if !mat.cols().is_multiple_of(2) {
        return Err(Error::DimensionMismatch("odd row length".into()));
    }
    let n = mat.cols() / 2;
    let k = mat.rows();
    let reduced = mat.reduced_mod(q);
    let base = CodeSpec::new(q, n, reduced.row_vecs())?;
    let canon = canonicalize(&base)?;
    let mod_q_preserved = &reduced == canon.code().matrix();

    let mut l_valid = true;
    let mut l = Mat::zeros(k, k);
    for r in 0..k {
        for c in 0..2 * n {
            let diff = mat[(r, c)] - reduced[(r, c)];
            let in_z1 = c >= n && c < n + k;
            if in_z1 {
                l[(r, c - n)] = diff;
            } else if diff != 0 {
                l_valid = false;
            }
        }
    }
    l_valid = l_valid && l_shape_ok(&l, q);

    Ok(VerificationReport {
        mod_q_preserved,
        mod_p_commuting: rows_commute_mod(mat, p),
        l_valid,
        max_entry_observed: mat.max_abs_entry(),
    })
}

fn l_shape_ok(l: &Mat, q: PrimeModulus) -> bool {
    let k = l.rows();
    for r in 0..k {
        for c in 0..k {
            let e = l[(r, c)];
            if c >= r && e != 0 {
                return false;
            }
            if e.rem_euclid(q.as_i64()) != 0 {
                return false;
            }
        }
    }
    true
}

fn rows_commute_mod(m: &Mat, p: PrimeModulus) -> bool {
    let n = m.cols() / 2;
    for i in 0..m.rows() {
        for j in (i + 1)..m.rows() {
            let mut acc: i128 = 0;
            for r in 0..n {
                acc += m[(j, n + r)] as i128 * m[(i, r)] as i128;
                acc -= m[(j, r)] as i128 * m[(i, n + r)] as i128;
            }
            if acc.rem_euclid(p.as_i64() as i128) != 0 {
                return false;
            }
        }
    }
    true
}

fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_biguint_as_string<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Entry bound `B = [2 + (n-k)(q-1)](q-1)` and, when a distance is given,
/// the threshold `p* = B^(2(d-1)) [2(d-1)]^(d-1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoundsReport {
    #[serde(serialize_with = "biguint_as_string")]
    pub b: BigUint,
    #[serde(serialize_with = "opt_biguint_as_string")]
    pub p_star: Option<BigUint>,
    pub d_used: Option<u64>,
    pub max_entry_observed: i64,
}

pub fn entry_bound(code: &CodeSpec) -> BoundsReport {
    let q = code.q().as_i64() as i128;
    let n = code.n() as i128;
    let k = code.k() as i128;
    let b = (2 + (n - k) * (q - 1)) * (q - 1);
    let b = if b < 0 { 0u128 } else { b as u128 };
    BoundsReport {
        b: BigUint::from(b),
        p_star: None,
        d_used: None,
        max_entry_observed: code.matrix().max_abs_entry(),
    }
}

pub fn threshold(code: &CodeSpec, d: u64) -> BoundsReport {
    let mut report = entry_bound(code);
    report.p_star = Some(eval_p_star(&report.b, d));
    report.d_used = Some(d);
    report
}

/// One prime's worth of scan output. A failed transform (for example
/// `p = q`) records its error without aborting the rest of the scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub p: u64,
    pub error: Option<String>,
    pub label: Option<InvarianceLabel>,
    pub verification: Option<VerificationReport>,
    pub distance: Option<DistanceReport>,
    /// Output distance at least matches the source distance, when both are
    /// known.
    pub preserved: Option<bool>,
}

/// Transforms, verifies, and measures the code at each listed prime.
///
/// The source distance used for the `preserved` flag is the declared one
/// when present, otherwise a brute-force measurement at q capped at
/// `max_weight`.
pub fn prime_scan(code: &CodeSpec, primes: &[u64], max_weight: Option<usize>) -> Vec<ScanEntry> {
    let cap = max_weight.unwrap_or(code.n());
    let source_d: Option<usize> = code
        .declared_d
        .map(|d| d as usize)
        .or_else(|| detection_distance(code.matrix(), code.q(), cap).distance());
    primes
        .iter()
        .map(|&pv| {
            let p = match PrimeModulus::new(pv) {
                Ok(p) => p,
                Err(e) => {
                    return ScanEntry {
                        p: pv,
                        error: Some(e.to_string()),
                        label: None,
                        verification: None,
                        distance: None,
                        preserved: None,
                    }
                }
            };
            match transform(code, p) {
                Ok(result) => {
                    let verification = verify(&result);
                    let distance = detection_distance(&result.output, p, cap);
                    let preserved = match (source_d, distance.distance()) {
                        (Some(s), Some(o)) => Some(o >= s),
                        _ => None,
                    };
                    ScanEntry {
                        p: pv,
                        error: None,
                        label: Some(result.label),
                        verification: Some(verification),
                        distance: Some(distance),
                        preserved,
                    }
                }
                Err(e) => ScanEntry {
                    p: pv,
                    error: Some(e.to_string()),
                    label: None,
                    verification: None,
                    distance: None,
                    preserved: None,
                },
            }
        })
        .collect()
}

/// Rank of the output matrix mod `p`; the surviving identity block forces
/// this to stay `k` at every prime.
pub fn output_rank(result: &TransformResult, p: PrimeModulus) -> usize {
    rref(&result.output, p).map(|r| r.rank).unwrap_or(0)
}
