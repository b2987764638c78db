//! Pure integer arithmetic of Brill-Noether theory: the number rho, Clifford
//! index, Hodge discriminant, Serre adjoints, expected maximal loci, and
//! Pflueger's gonality-refined rho.

use crate::arith::{div_floor, floor_g_minus_2sqrtg_plus_1, isqrt, mul};
use crate::error::{Error, Result};
use num_rational::Ratio;
use std::fmt;

/// Exact rational scalar used wherever a bound is not an integer.
pub type Rat = Ratio<i128>;

/// A linear system of rank `r` and degree `d` on a genus-`g` curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearSeries {
    pub g: i64,
    pub r: i64,
    pub d: i64,
}

impl LinearSeries {
    pub fn new(g: i64, r: i64, d: i64) -> Self {
        LinearSeries { g, r, d }
    }

    pub fn rho(&self) -> i64 {
        rho(self.g, self.r, self.d)
    }

    pub fn gamma(&self) -> i64 {
        clifford_gamma(self.r, self.d)
    }
}

impl fmt::Display for LinearSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g^{}_{} (genus {})", self.r, self.d, self.g)
    }
}

/// The Brill-Noether number `rho(g, r, d) = g - (r+1)(g - d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    let v = g as i128 - mul((r + 1) as i128, (g - d + r) as i128);
    i64::try_from(v).expect("rho out of i64 range")
}

/// The Clifford index `gamma(r, d) = d - 2r` of a series.
pub fn clifford_gamma(r: i64, d: i64) -> i64 {
    d - 2 * r
}

/// Discriminant `Delta(g, r, d) = 4(g-1)(r-1) - d^2` of the associated lattice.
pub fn hodge_delta(g: i64, r: i64, d: i64) -> i64 {
    let v = mul(4, mul((g - 1) as i128, (r - 1) as i128)) - mul(d as i128, d as i128);
    i64::try_from(v).expect("delta out of i64 range")
}

/// Serre adjoint `(g, g - d + r - 1, 2g - 2 - d)`.
pub fn serre_adjoint(s: LinearSeries) -> Result<LinearSeries> {
    let r = s.g - s.d + s.r - 1;
    if r < 0 {
        return Err(Error::NegativeRank(r));
    }
    Ok(LinearSeries::new(s.g, r, 2 * s.g - 2 - s.d))
}

/// General Clifford index `floor((g-1)/2)` of a genus-`g` curve.
pub fn general_clifford_index(g: i64) -> i64 {
    div_floor((g - 1) as i128, 2) as i64
}

/// Generic gonality `floor((g+3)/2)`.
pub fn generic_gonality(g: i64) -> i64 {
    div_floor((g + 3) as i128, 2) as i64
}

/// Degree of the expected maximal pencil, `floor((g+1)/2)`.
pub fn submaximal_gonality(g: i64) -> i64 {
    div_floor((g + 1) as i128, 2) as i64
}

/// Classification record for one linear series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesClassification {
    pub rho: i64,
    pub gamma: i64,
    pub delta: i64,
    pub bn_special: bool,
    pub noncomputing: bool,
    pub in_l2_window: bool,
}

/// Classify a series: speciality, non-computing property, and membership in
/// the Clifford-index window used by the sublattice scans.
pub fn classify(s: LinearSeries) -> SeriesClassification {
    let rho_v = rho(s.g, s.r, s.d);
    let gamma = clifford_gamma(s.r, s.d);
    let delta = hodge_delta(s.g, s.r, s.d);
    let bn_special = rho_v < 0;
    let noncomputing = bn_special && gamma > general_clifford_index(s.g);
    let in_l2_window = submaximal_gonality(s.g) <= gamma
        && gamma <= floor_g_minus_2sqrtg_plus_1(s.g)
        && s.r >= 1
        && s.r <= div_floor((s.g - 1 - gamma) as i128, 2) as i64;
    SeriesClassification {
        rho: rho_v,
        gamma,
        delta,
        bn_special,
        noncomputing,
        in_l2_window,
    }
}

/// The expected maximal loci of genus `g`: for each rank `r`, the largest
/// degree `d` in `[2r, g-1]` with `rho(g, r, d) < 0` and
/// `rho(g, r-1, d-1) >= 0`. Ranks admitting no such degree are omitted.
pub fn expected_maximal_loci(g: i64) -> Vec<LinearSeries> {
    assert!(g >= 2, "expected_maximal_loci needs g >= 2");
    let mut out = Vec::new();
    let mut r = 1i64;
    while 2 * r < g {
        // rho(g, r, d) < 0  <=>  d <= ceil(r(g+r+1)/(r+1)) - 1
        let d_rho = div_floor(mul(r as i128, (g + r + 1) as i128) - 1, (r + 1) as i128) as i64;
        // rho(g, r-1, d-1) >= 0  <=>  d >= g + r - floor(g/r)
        let d_low = g + r - div_floor(g as i128, r as i128) as i64;
        let d = d_rho.min(g - 1);
        if d >= d_low.max(2 * r) {
            debug_assert!(rho(g, r, d) < 0);
            debug_assert!(rho(g, r - 1, d - 1) >= 0);
            out.push(LinearSeries::new(g, r, d));
        }
        r += 1;
    }
    out
}

/// The conjectured maximal loci: the expected ones, except that in genus 7,
/// 8, 9 the known containments leave a single maximal locus.
pub fn conjectured_maximal_loci(g: i64) -> Vec<LinearSeries> {
    assert!(g >= 3, "conjectured_maximal_loci needs g >= 3");
    match g {
        7 => vec![LinearSeries::new(7, 1, 4)],
        8 => vec![LinearSeries::new(8, 2, 7)],
        9 => vec![LinearSeries::new(9, 1, 5)],
        _ => expected_maximal_loci(g),
    }
}

/// Pflueger's gonality-bounded Brill-Noether number
/// `rho_k = max over l in 0..=r' of rho(g, r-l, d) - l*k`, where
/// `r' = min(r, g - d + r - 1)`.
pub fn rho_pflueger(g: i64, r: i64, d: i64, k: i64) -> Result<i64> {
    let adj_rank = g - d + r - 1;
    if adj_rank < 0 {
        return Err(Error::BadGonality(adj_rank));
    }
    let r_cap = r.min(adj_rank);
    let mut best: Option<i64> = None;
    for l in 0..=r_cap {
        let term = rho(g, r - l, d) - l * k;
        best = Some(best.map_or(term, |b| b.max(term)));
    }
    Ok(best.expect("r' >= 0 guarantees at least one term"))
}

/// One sampled row of the constraint-region curves in the `(r, gamma)` plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSample {
    pub r: Rat,
    /// `gamma_rho(r) = g - r - g/(r+1)`, exact.
    pub gamma_rho: Rat,
    /// `gamma_delta(r) = 2 sqrt((g-1)(r-1)) - 2r`, floored to 1e-6.
    pub gamma_delta: Rat,
}

/// Sample both boundary curves for `r` from 1 to `g-1` in steps of `r_step`.
///
/// `gamma_rho` is exact rational arithmetic; `gamma_delta` involves a square
/// root and is truncated to six decimal places (no floating point is used).
pub fn region_samples(g: i64, r_step: Rat) -> Vec<RegionSample> {
    assert!(g >= 2);
    assert!(r_step > Rat::from_integer(0), "step must be positive");
    let mut out = Vec::new();
    let mut r = Rat::from_integer(1);
    let r_max = Rat::from_integer((g - 1) as i128);
    let g_rat = Rat::from_integer(g as i128);
    let one = Rat::from_integer(1);
    while r <= r_max {
        let gamma_rho = g_rat - r - g_rat / (r + one);
        let gamma_delta = sqrt_floored_millionths((g_rat - one) * (r - one)) * Rat::from_integer(2)
            - Rat::from_integer(2) * r;
        out.push(RegionSample {
            r,
            gamma_rho,
            gamma_delta,
        });
        r += r_step;
    }
    out
}

/// `floor(10^6 sqrt(x)) / 10^6` for a nonnegative rational `x`.
fn sqrt_floored_millionths(x: Rat) -> Rat {
    assert!(x >= Rat::from_integer(0));
    let p = *x.numer();
    let q = *x.denom();
    let scale: i128 = 1_000_000;
    // sqrt(p/q) = sqrt(p*q)/q, so floor(scale*sqrt(p/q)) = floor(sqrt(scale^2 p q))/q
    // up to the final integer division, which only rounds further down.
    let s = isqrt(mul(mul(scale, scale), mul(p, q))) / q;
    Rat::new(s, scale)
}

/// Exact comparison `gamma_rho(r) > gamma_delta(r)` at integer `r`.
///
/// Rearranged to compare a positive rational against `2 sqrt((g-1)(r-1))` by
/// squaring, so no square root is ever evaluated.
pub fn hyperbola_above_parabola(g: i64, r: i64) -> bool {
    assert!(g >= 2 && r >= 1);
    // gamma_rho(r) + 2r = g + r - g/(r+1), always positive in range.
    let lhs = Rat::from_integer((g + r) as i128) - Rat::new(g as i128, (r + 1) as i128);
    debug_assert!(lhs > Rat::from_integer(0));
    let rhs_sq = Rat::from_integer(4 * mul((g - 1) as i128, (r - 1) as i128));
    lhs * lhs > rhs_sq
}
