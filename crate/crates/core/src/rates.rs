//! The three rate conventions, kept as exact rationals.
//!
//! They differ in how the cost of shared entanglement is counted: the
//! entanglement-assisted rate treats it as free, the trade-off rate prices
//! it separately, and the catalytic rate charges it like a transmitted
//! particle.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

fn ratio_as_string<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ratio_pair_as_strings<S: Serializer>(
    (a, b): &(Ratio<i64>, Ratio<i64>),
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq([a.to_string(), b.to_string()])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RatesReport {
    /// `(n + c - k) / n`.
    #[serde(serialize_with = "ratio_as_string")]
    pub ea: Ratio<i64>,
    /// `((n + c - k) / n, c / n)`.
    #[serde(serialize_with = "ratio_pair_as_strings")]
    pub tradeoff: (Ratio<i64>, Ratio<i64>),
    /// `(n - k) / n`.
    #[serde(serialize_with = "ratio_as_string")]
    pub catalytic: Ratio<i64>,
}

pub fn rates(n: usize, k: usize, c: usize) -> RatesReport {
    let (n, k, c) = (n as i64, k as i64, c as i64);
    RatesReport {
        ea: Ratio::new(n + c - k, n),
        tradeoff: (Ratio::new(n + c - k, n), Ratio::new(c, n)),
        catalytic: Ratio::new(n - k, n),
    }
}
