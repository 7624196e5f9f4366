//! Risk functionals on second-order distributions and the training
//! utility value.
//!
//! All risks are under the symmetric 0/1 loss, the loss the benchmark's
//! accuracy metric corresponds to. For a posterior point estimate `q̄`
//! the classifier's conditional risk is `min(q̄, 1 − q̄)` — the point
//! risk. The distribution-aware expected risk integrates that same
//! conditional risk over the second-order distribution instead of
//! evaluating it at the mean: `E[min(Q, 1 − Q)]`. By concavity of `min`
//! the expected risk never exceeds the point risk, and their gap is
//! largest exactly where the posterior is both uncertain and poorly
//! estimated. Weighting the gap by the local density yields the training
//! utility value that drives query selection.

use crate::distributions::{beta_mean, expected_min, BetaParams};
use crate::error::{Error, Result};

/// Per-candidate risk decomposition.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RiskBreakdown {
    /// `min(q̄, 1 − q̄)` at the posterior mean.
    pub point_risk: f64,
    /// `E[min(Q, 1 − Q)]` over the second-order distribution.
    pub expected_risk: f64,
    /// `point_risk − expected_risk`, nonnegative.
    pub gap: f64,
    /// Local density weight.
    pub density: f64,
    /// `gap · density`.
    pub tuv: f64,
}

/// Conditional risk of the plug-in classifier at the posterior mean.
pub fn point_risk(p: BetaParams) -> f64 {
    let mean = beta_mean(p);
    mean.min(1.0 - mean)
}

/// Expected conditional risk under the second-order distribution.
pub fn expected_risk(p: BetaParams) -> f64 {
    expected_min(p)
}

/// Training utility value: the risk gap weighted by local density.
pub fn tuv(p: BetaParams, density: f64) -> Result<RiskBreakdown> {
    if !(density >= 0.0 && density.is_finite()) {
        return Err(Error::Domain(alloc::format!(
            "density weight must be nonnegative and finite, got {density}"
        )));
    }
    let point_risk = point_risk(p);
    // expected_min is clamped to the Jensen bound, so the gap cannot go
    // negative even at the ulp level.
    let expected_risk = expected_risk(p);
    let gap = point_risk - expected_risk;
    Ok(RiskBreakdown {
        point_risk,
        expected_risk,
        gap,
        density,
        tuv: gap * density,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(a: f64, b: f64) -> BetaParams {
        BetaParams::new(a, b).unwrap()
    }

    #[test]
    fn point_risk_examples() {
        assert_eq!(point_risk(beta(1.0, 1.0)), 0.5);
        assert!((point_risk(beta(2.5, 0.5)) - 1.0 / 6.0).abs() < 1e-15);
        assert!((point_risk(beta(0.5, 4.5)) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn expected_risk_examples() {
        assert!((expected_risk(beta(1.0, 1.0)) - 0.25).abs() < 1e-14);
        let arcsine = 0.5 - core::f64::consts::FRAC_1_PI;
        assert!((expected_risk(beta(0.5, 0.5)) - arcsine).abs() < 1e-13);
    }

    #[test]
    fn bernoulli_extreme_via_discrete_path() {
        // A second-order distribution with all mass at the extremes has
        // maximal point risk but zero expected risk.
        use crate::distributions::{discrete_expected_min, DiscreteSecondOrder};
        let d = DiscreteSecondOrder::new(alloc::vec![(0.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(discrete_expected_min(&d), 0.0);
    }

    #[test]
    fn tuv_examples() {
        let r = tuv(beta(1.0, 1.0), 1.0).unwrap();
        assert!((r.gap - 0.25).abs() < 1e-14);
        assert!((r.tuv - 0.25).abs() < 1e-14);

        let r = tuv(beta(0.5, 0.5), 1.0).unwrap();
        assert!((r.gap - core::f64::consts::FRAC_1_PI).abs() < 1e-13);

        let r = tuv(beta(7.0, 0.6), 0.0).unwrap();
        assert_eq!(r.tuv, 0.0);

        assert!(tuv(beta(1.0, 1.0), -0.5).is_err());
        assert!(tuv(beta(1.0, 1.0), f64::NAN).is_err());
    }

    #[test]
    fn gap_shrinks_with_total_evidence_at_fixed_mean() {
        // at mean ½ the gap decreases as evidence accumulates
        let g1 = tuv(beta(0.5, 0.5), 1.0).unwrap().gap;
        let g2 = tuv(beta(5.0, 5.0), 1.0).unwrap().gap;
        let g3 = tuv(beta(50.0, 50.0), 1.0).unwrap().gap;
        assert!(g1 > g2 && g2 > g3, "{g1} > {g2} > {g3} violated");
    }

    #[test]
    fn gap_vanishes_with_one_sided_evidence() {
        let g1 = tuv(beta(1.5, 0.5), 1.0).unwrap().gap;
        let g5 = tuv(beta(5.5, 0.5), 1.0).unwrap().gap;
        let g20 = tuv(beta(20.5, 0.5), 1.0).unwrap().gap;
        assert!(g20 < g5 && g5 < g1, "{g20} < {g5} < {g1} violated");
    }

    #[test]
    fn tuv_linear_in_density() {
        let p = beta(0.8, 1.3);
        let base = tuv(p, 1.0).unwrap().tuv;
        for &w in &[0.0, 0.25, 2.0, 17.5] {
            let r = tuv(p, w).unwrap();
            assert!((r.tuv - base * w).abs() < 1e-15 * (1.0 + base * w));
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn jensen_gap_nonnegative(la in -3.0f64..6.5, lb in -3.0f64..6.5) {
            let p = BetaParams::new(la.exp(), lb.exp()).unwrap();
            prop_assert!(point_risk(p) >= expected_risk(p));
            let r = tuv(p, 1.0).unwrap();
            prop_assert!(r.gap >= 0.0);
        }

        #[test]
        fn gap_strictly_positive_with_mass_on_both_sides(la in -1.5f64..3.0, lb in -1.5f64..3.0) {
            // moderate shapes put Beta mass on both sides of ½
            let p = BetaParams::new(la.exp(), lb.exp()).unwrap();
            let r = tuv(p, 1.0).unwrap();
            prop_assert!(r.gap > 0.0);
        }
    }
}
