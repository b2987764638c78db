//! Secant-space numerology: expected dimensions of secant linear spaces,
//! projections, the Berzolari trisecant count, and the exhaustive scan for
//! containments induced by expected secants of expected maximal series.

use crate::bn::{classify, expected_maximal_loci, serre_adjoint, LinearSeries};
use crate::error::{Error, Result};

/// A `k`-secant `l`-dimensional linear space to a degree-`d` curve in
/// projective `r`-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecantConfig {
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub l: i64,
}

impl SecantConfig {
    pub fn new(r: i64, d: i64, k: i64, l: i64) -> Result<Self> {
        if !(0 <= l && l < r && k > l) {
            return Err(Error::BadParameters(format!(
                "need 0 <= l < r and k >= l + 1, got r={r}, k={k}, l={l}"
            )));
        }
        Ok(SecantConfig { r, d, k, l })
    }
}

/// Expected dimension `k - (k - l - 1)(r - l)` of the family of `k`-secant
/// `l`-planes.
pub fn secant_expected_dim(c: SecantConfig) -> i64 {
    c.k - (c.k - c.l - 1) * (c.r - c.l)
}

/// Projection from a `k`-secant `l`-plane: a `g^{r-l-1}_{d-k}`.
pub fn projected_series(g: i64, r: i64, d: i64, k: i64, l: i64) -> Result<LinearSeries> {
    let r2 = r - l - 1;
    let d2 = d - k;
    if r2 < 0 || d2 < 0 {
        return Err(Error::DegenerateProjection(r2, d2));
    }
    Ok(LinearSeries::new(g, r2, d2))
}

/// Berzolari's count `(d-2)(d-3)(d-4)/6 - g(d-4)` of trisecant lines to a
/// degree-`d` genus-`g` curve in projective 4-space.
pub fn berzolari_trisecants(d: i64, g: i64) -> i64 {
    assert!(d >= 4);
    (d - 2) * (d - 3) * (d - 4) / 6 - g * (d - 4)
}

/// Double points of the plane image of a degree-`d` genus-`g` curve:
/// `(d-1)(d-2)/2 - g`.
pub fn plane_double_points(d: i64, g: i64) -> i64 {
    (d - 1) * (d - 2) / 2 - g
}

/// A containment produced by an expected secant configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecantHit {
    pub g: i64,
    pub source: LinearSeries,
    pub config: SecantConfig,
    pub expected_dim: i64,
    /// Expected count, attached when the dimension is zero and a classical
    /// formula covers the configuration.
    pub count: Option<i64>,
    pub projected: LinearSeries,
}

fn secant_count_for_genus(c: SecantConfig, g: i64) -> Option<i64> {
    match (c.k, c.l, c.r) {
        (2, 0, 2) => Some(plane_double_points(c.d, g)),
        (3, 1, 4) => Some(berzolari_trisecants(c.d, g)),
        _ => None,
    }
}

/// Scan all genera up to `g_max` for Brill-Noether special series obtained
/// by projecting an expected maximal series (or its Serre adjoint) from an
/// expected secant space.
///
/// A configuration of expected dimension zero is kept only when a classical
/// count formula certifies a positive number of secant spaces; rank-zero
/// projections and projections onto the Serre adjoint of the source are
/// discarded.
pub fn scan_unexpected_containments(g_max: i64) -> Vec<SecantHit> {
    assert!(g_max >= 3);
    let mut out = Vec::new();
    for g in 3..=g_max {
        let mut sources = Vec::new();
        for s in expected_maximal_loci(g) {
            sources.push(s);
            if let Ok(adj) = serre_adjoint(s) {
                if !sources.contains(&adj) {
                    sources.push(adj);
                }
            }
        }
        sources.sort();
        for source in sources {
            for l in 0..=source.r.saturating_sub(2) {
                for k in (l + 1)..=source.d {
                    let config = SecantConfig {
                        r: source.r,
                        d: source.d,
                        k,
                        l,
                    };
                    let dim = secant_expected_dim(config);
                    if dim < 0 {
                        continue;
                    }
                    let count = secant_count_for_genus(config, g);
                    if dim == 0 {
                        match count {
                            Some(c) if c > 0 => {}
                            _ => continue,
                        }
                    }
                    let Ok(projected) = projected_series(g, source.r, source.d, k, l) else {
                        continue;
                    };
                    if projected.r < 1 {
                        continue;
                    }
                    if !classify(projected).bn_special {
                        continue;
                    }
                    if serre_adjoint(source).ok() == Some(projected) {
                        continue;
                    }
                    out.push(SecantHit {
                        g,
                        source,
                        config,
                        expected_dim: dim,
                        count,
                        projected,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_dims() {
        let c = SecantConfig::new(4, 10, 3, 1).unwrap();
        assert_eq!(secant_expected_dim(c), 0);
        let c = SecantConfig::new(2, 6, 2, 0).unwrap();
        assert_eq!(secant_expected_dim(c), 0);
        for r in 2..8 {
            for l in 0..r - 1 {
                let c = SecantConfig::new(r, 12, l + 1, l).unwrap();
                assert_eq!(secant_expected_dim(c), l + 1);
            }
        }
        assert!(SecantConfig::new(3, 10, 2, 3).is_err());
    }

    #[test]
    fn projections_known_cases() {
        assert_eq!(
            projected_series(8, 4, 10, 3, 1).unwrap(),
            LinearSeries::new(8, 2, 7)
        );
        assert_eq!(
            projected_series(7, 2, 6, 2, 0).unwrap(),
            LinearSeries::new(7, 1, 4)
        );
        assert_eq!(
            projected_series(9, 2, 7, 2, 0).unwrap(),
            LinearSeries::new(9, 1, 5)
        );
        assert!(matches!(
            projected_series(8, 2, 6, 8, 0),
            Err(Error::DegenerateProjection(1, -2))
        ));
    }

    #[test]
    fn projection_bookkeeping() {
        for r in 1..6 {
            for d in 2 * r..20 {
                for l in 0..r {
                    for k in l + 1..=d {
                        if let Ok(p) = projected_series(12, r, d, k, l) {
                            assert_eq!(p.d + k, d);
                            assert_eq!(p.r + l + 1, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn berzolari_known_values() {
        assert_eq!(berzolari_trisecants(10, 8), 8);
        for g in 0..30 {
            assert_eq!(berzolari_trisecants(4, g), 0);
        }
        assert_eq!(berzolari_trisecants(5, 0), 1);
    }

    #[test]
    fn scan_finds_exactly_the_low_genus_cases() {
        assert!(scan_unexpected_containments(6).is_empty());
        let hits = scan_unexpected_containments(23);
        let genera: Vec<i64> = hits.iter().map(|h| h.g).collect();
        assert_eq!(genera, vec![7, 8, 9]);
        let g8 = hits.iter().find(|h| h.g == 8).unwrap();
        assert_eq!(g8.source, LinearSeries::new(8, 4, 10));
        assert_eq!(g8.projected, LinearSeries::new(8, 2, 7));
        assert_eq!(g8.count, Some(8));
    }

    #[test]
    fn scan_to_200_stays_in_low_genus() {
        // any additional hit is surfaced loudly, not suppressed
        let hits = scan_unexpected_containments(200);
        let genera: Vec<i64> = hits.iter().map(|h| h.g).collect();
        assert_eq!(genera, vec![7, 8, 9], "unexpected secant hits: {hits:?}");
    }
}
