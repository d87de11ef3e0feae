//! Complexity of a `kG`-module, estimated two independent ways: from the size
//! of the rank variety over small fields, and from the growth of the Betti
//! numbers of the minimal resolution.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::{KGModule, DEFAULT_POINT_BUDGET};
use crate::error::Result;

/// Resolution steps used for the growth fit.
pub const BETTI_FIT_RANGE: RangeInclusive<usize> = 4..=12;
const VARIETY_DEGREES: [u32; 3] = [1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityEstimate {
    /// `(e, N_e)`: number of `GF(p^e)`-points of the projectivised variety.
    pub point_counts: Vec<(u32, usize)>,
    /// `round(log_q(N_e (q − 1) + 1))` for each `e`.
    pub variety_dims: Vec<u32>,
    /// The estimate at the largest `e`.
    pub by_variety: u32,
    /// The variety estimate agrees at `e = 2` and `e = 3`.
    pub variety_stable: bool,
    /// `b_0..b_12`.
    pub betti: Vec<usize>,
    pub by_betti: u32,
}

impl ComplexityEstimate {
    pub fn agree(&self) -> bool {
        self.variety_stable && self.by_variety == self.by_betti
    }

    pub fn value(&self) -> u32 {
        self.by_variety
    }
}

/// Nearest integer to `log_q(x)` for `x ≥ 1`, without floating point:
/// `d` with `q^{d − 1/2} ≤ x < q^{d + 1/2}`, i.e. `q^{2d−1} ≤ x² < q^{2d+1}`.
pub(crate) fn round_log(x: u128, q: u128) -> u32 {
    debug_assert!(x >= 1 && q >= 2);
    let x2 = x * x;
    let mut d = 0u32;
    let mut upper = q; // q^{2d+1}
    while x2 >= upper {
        d += 1;
        upper = upper.saturating_mul(q * q);
    }
    d
}

/// Growth-rate estimate from Betti numbers: zero tail ⇒ 0, otherwise
/// `round(slope of log b_t against log t) + 1` over [`BETTI_FIT_RANGE`].
pub(crate) fn betti_complexity(betti: &[usize]) -> u32 {
    let tail: Vec<(f64, f64)> = BETTI_FIT_RANGE
        .filter_map(|t| betti.get(t).map(|&b| (t, b)))
        .filter(|&(_, b)| b > 0)
        .map(|(t, b)| (libm::log(t as f64), libm::log(b as f64)))
        .collect();
    if tail.is_empty() {
        return 0;
    }
    if tail.len() == 1 {
        return 1;
    }
    let n = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = tail.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = (sxy / sxx).max(0.0);
    libm::round(slope) as u32 + 1
}

impl KGModule {
    pub fn complexity_estimate(&self) -> Result<ComplexityEstimate> {
        self.complexity_estimate_with_budget(DEFAULT_POINT_BUDGET)
    }

    pub fn complexity_estimate_with_budget(&self, budget: u128) -> Result<ComplexityEstimate> {
        let mut point_counts = Vec::new();
        let mut variety_dims = Vec::new();
        for e in VARIETY_DEGREES {
            let v = self.enumerate_variety_with_budget(e, budget)?;
            let q = (self.group().p() as u128).pow(e);
            let n = v.len() as u128;
            point_counts.push((e, v.len()));
            variety_dims.push(round_log(n * (q - 1) + 1, q));
        }
        let by_variety = *variety_dims.last().expect("nonempty");
        let variety_stable = variety_dims[1] == variety_dims[2];
        let betti = self.betti_numbers(*BETTI_FIT_RANGE.end());
        let by_betti = betti_complexity(&betti);
        Ok(ComplexityEstimate {
            point_counts,
            variety_dims,
            by_variety,
            variety_stable,
            betti,
            by_betti,
        })
    }
}
