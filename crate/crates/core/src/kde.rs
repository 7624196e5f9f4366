//! Gaussian kernel density machinery: class evidence sums, bandwidth
//! selection, pool density estimates, the Beta second-order distribution
//! of the posterior, and the plug-in classifier.
//!
//! For a normalized isotropic Gaussian kernel with bandwidth `h` in `d`
//! dimensions, the per-class evidence at a query point is
//!
//! ```text
//! k_y = 2^{d/2} · Σ_{i : y_i = y} exp(−‖x − x_i‖² / 2h²)
//! ```
//!
//! and the posterior `p(+1 | x)` is distributed as
//! `Beta(delta + k_pos, delta + k_neg)`. The point estimate is the Beta
//! mean `(delta + k_pos) / (2 delta + k_pos + k_neg)`; the classifier
//! thresholds it at ½. The regularizer `delta` keeps estimates proper in
//! regions without labeled evidence.

use alloc::vec::Vec;

use num_traits::Float;

use crate::distributions::BetaParams;
use crate::error::{Error, Result};

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Neg,
    Pos,
}

impl Class {
    /// The conventional `−1` / `+1` encoding.
    pub fn sign(self) -> i8 {
        match self {
            Class::Neg => -1,
            Class::Pos => 1,
        }
    }

    pub fn flip(self) -> Class {
        match self {
            Class::Neg => Class::Pos,
            Class::Pos => Class::Neg,
        }
    }
}

impl core::fmt::Display for Class {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Class::Neg => write!(f, "-1"),
            Class::Pos => write!(f, "+1"),
        }
    }
}

/// A feature vector with its revealed label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub x: Vec<f64>,
    pub y: Class,
}

/// Kernel evidence accumulated per class at one query point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ClassEvidence {
    pub pos: f64,
    pub neg: f64,
}

impl ClassEvidence {
    pub fn add(&mut self, class: Class, weight: f64) {
        match class {
            Class::Pos => self.pos += weight,
            Class::Neg => self.neg += weight,
        }
    }

    pub fn total(&self) -> f64 {
        self.pos + self.neg
    }
}

/// Immutable kernel configuration shared by every query of one
/// active-learning pass: bandwidth, feature dimension, the regularizer,
/// and the cached squared-kernel integral `C₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelConfig {
    bandwidth: f64,
    dim: usize,
    delta: f64,
    c2: f64,
    // cached factors of the evidence summand, hot in selection loops
    dim_scale: f64,
    inv_two_h2: f64,
}

impl KernelConfig {
    pub fn new(dim: usize, bandwidth: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Domain(alloc::format!(
                "regularizer delta must be positive and finite, got {delta}"
            )));
        }
        let c2 = gaussian_c2(dim, bandwidth)?;
        Ok(Self {
            bandwidth,
            dim,
            delta,
            c2,
            dim_scale: 2.0_f64.powf(dim as f64 / 2.0),
            inv_two_h2: 1.0 / (2.0 * bandwidth * bandwidth),
        })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `C₂ = (2h√π)^{−d}`, cached at construction.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// One evidence summand: `2^{d/2} exp(−‖x − xi‖² / 2h²)`.
    pub fn evidence_weight(&self, x: &[f64], xi: &[f64]) -> Result<f64> {
        let d2 = self.squared_distance(x, xi)?;
        Ok(self.dim_scale * (-d2 * self.inv_two_h2).exp())
    }

    /// Second-order distribution from accumulated evidence:
    /// `Beta(delta + k_pos, delta + k_neg)`.
    pub fn posterior(&self, ev: ClassEvidence) -> BetaParams {
        BetaParams::new(self.delta + ev.pos, self.delta + ev.neg)
            .expect("positive delta keeps both shapes positive")
    }

    /// Point estimate (Beta mean) from accumulated evidence.
    pub fn point_estimate(&self, ev: ClassEvidence) -> f64 {
        (self.delta + ev.pos) / (2.0 * self.delta + ev.total())
    }

    /// Plug-in classifier; exact ties go to the negative class.
    pub fn predict(&self, ev: ClassEvidence) -> Class {
        if self.point_estimate(ev) > 0.5 {
            Class::Pos
        } else {
            Class::Neg
        }
    }

    fn squared_distance(&self, x: &[f64], xi: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        Ok(x.iter()
            .zip(xi)
            .map(|(a, b)| (a - b) * (a - b))
            .sum())
    }
}

/// Squared integral of the normalized isotropic Gaussian kernel,
/// `C₂ = ∫ K²(u) du = (2h√π)^{−d}`.
pub fn gaussian_c2(dim: usize, bandwidth: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::Domain(alloc::string::String::from(
            "kernel dimension must be at least 1",
        )));
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::Domain(alloc::format!(
            "bandwidth must be positive and finite, got {bandwidth}"
        )));
    }
    Ok((2.0 * bandwidth * core::f64::consts::PI.sqrt()).powi(-(dim as i32)))
}

/// Normal reference bandwidth: `h = σ̄ · m^{−1/(d+4)}` with `σ̄` the
/// geometric mean of the per-dimension sample standard deviations of the
/// whole pool. Computed once per training fold and held fixed, so utility
/// values stay comparable across iterations.
pub fn normal_reference_bandwidth(pool_size: usize, per_dim_std: &[f64]) -> Result<f64> {
    if pool_size < 2 {
        return Err(Error::Domain(alloc::format!(
            "bandwidth selection needs at least 2 points, got {pool_size}"
        )));
    }
    if per_dim_std.is_empty() {
        return Err(Error::EmptyInput(alloc::string::String::from(
            "per-dimension standard deviations",
        )));
    }
    for &s in per_dim_std {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain(alloc::format!(
                "degenerate dimension: standard deviation {s}"
            )));
        }
    }
    let d = per_dim_std.len() as f64;
    let mean_log = per_dim_std.iter().map(|s| s.ln()).sum::<f64>() / d;
    Ok(mean_log.exp() * (pool_size as f64).powf(-1.0 / (d + 4.0)))
}

/// Kernel evidence per class at `x`, summed over the labeled set.
pub fn evidence(x: &[f64], labeled: &[LabeledPoint], cfg: &KernelConfig) -> Result<ClassEvidence> {
    let mut ev = ClassEvidence::default();
    for point in labeled {
        ev.add(point.y, cfg.evidence_weight(x, &point.x)?);
    }
    Ok(ev)
}

/// Second-order distribution of the posterior at `x`.
pub fn second_order(
    x: &[f64],
    labeled: &[LabeledPoint],
    cfg: &KernelConfig,
) -> Result<BetaParams> {
    Ok(cfg.posterior(evidence(x, labeled, cfg)?))
}

/// Kernel density estimate over an unlabeled pool:
/// `(1/m) Σ (2πh²)^{−d/2} exp(−‖x − x_i‖² / 2h²)`.
pub fn density_estimate(x: &[f64], pool: &[Vec<f64>], cfg: &KernelConfig) -> Result<f64> {
    if pool.is_empty() {
        return Err(Error::EmptyInput(alloc::string::String::from(
            "density estimation pool",
        )));
    }
    let h2 = cfg.bandwidth() * cfg.bandwidth();
    let norm = (2.0 * core::f64::consts::PI * h2).powf(-(cfg.dim() as f64) / 2.0);
    let mut sum = 0.0;
    for p in pool {
        let d2 = cfg.squared_distance(x, p)?;
        sum += (-d2 / (2.0 * h2)).exp();
    }
    Ok(norm * sum / pool.len() as f64)
}

/// Point estimate of the posterior `p(+1 | x)` from the labeled set.
pub fn point_estimate(x: &[f64], labeled: &[LabeledPoint], cfg: &KernelConfig) -> Result<f64> {
    Ok(cfg.point_estimate(evidence(x, labeled, cfg)?))
}

/// Classify `x` against the labeled set; exact ties go to `Class::Neg`.
pub fn predict(x: &[f64], labeled: &[LabeledPoint], cfg: &KernelConfig) -> Result<Class> {
    Ok(cfg.predict(evidence(x, labeled, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg(dim: usize, h: f64) -> KernelConfig {
        KernelConfig::new(dim, h, 0.5).unwrap()
    }

    #[test]
    fn gaussian_c2_known_values() {
        // 1/(2√π) and 1/(4π)
        assert!((gaussian_c2(1, 1.0).unwrap() - 0.28209479177387814).abs() < 1e-15);
        assert!((gaussian_c2(2, 1.0).unwrap() - 0.07957747154594767).abs() < 1e-15);
    }

    #[test]
    fn gaussian_c2_bandwidth_scaling() {
        for d in 1..=5 {
            for &h in &[0.25, 1.0, 3.0] {
                let lhs = gaussian_c2(d, h).unwrap();
                let rhs = h.powi(-(d as i32)) * gaussian_c2(d, 1.0).unwrap();
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
            }
        }
        assert!(gaussian_c2(0, 1.0).is_err());
        assert!(gaussian_c2(2, 0.0).is_err());
        assert!(gaussian_c2(2, -1.0).is_err());
    }

    #[test]
    fn kernel_config_caches_c2() {
        let c = cfg(3, 0.7);
        assert!((c.c2() - gaussian_c2(3, 0.7).unwrap()).abs() < 1e-15);
        assert!(KernelConfig::new(3, 0.7, 0.0).is_err());
    }

    #[test]
    fn bandwidth_examples() {
        let h = normal_reference_bandwidth(100, &[1.0, 1.0]).unwrap();
        assert!((h - 100.0_f64.powf(-1.0 / 6.0)).abs() < 1e-15);
        let h = normal_reference_bandwidth(1000, &[1.0; 4]).unwrap();
        assert!((h - 1000.0_f64.powf(-1.0 / 8.0)).abs() < 1e-15);
        let h = normal_reference_bandwidth(100, &[2.0, 2.0]).unwrap();
        assert!((h - 2.0 * 100.0_f64.powf(-1.0 / 6.0)).abs() < 1e-14);
    }

    #[test]
    fn bandwidth_rejects_degenerate_input() {
        assert!(normal_reference_bandwidth(1, &[1.0]).is_err());
        assert!(normal_reference_bandwidth(10, &[]).is_err());
        assert!(normal_reference_bandwidth(10, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn evidence_coincident_point() {
        let c = cfg(2, 1.0);
        let labeled = vec![LabeledPoint {
            x: vec![0.3, -0.4],
            y: Class::Pos,
        }];
        let ev = evidence(&[0.3, -0.4], &labeled, &c).unwrap();
        assert!((ev.pos - 2.0).abs() < 1e-15);
        assert_eq!(ev.neg, 0.0);
    }

    #[test]
    fn evidence_at_sqrt2_bandwidths() {
        let h = 0.8;
        let c = cfg(2, h);
        let dist = h * 2.0_f64.sqrt();
        let labeled = vec![LabeledPoint {
            x: vec![dist, 0.0],
            y: Class::Pos,
        }];
        let ev = evidence(&[0.0, 0.0], &labeled, &c).unwrap();
        assert!((ev.pos - 2.0 * (-1.0_f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn evidence_empty_and_mismatched() {
        let c = cfg(2, 1.0);
        let ev = evidence(&[0.0, 0.0], &[], &c).unwrap();
        assert_eq!(ev, ClassEvidence::default());
        let labeled = vec![LabeledPoint {
            x: vec![0.0],
            y: Class::Pos,
        }];
        assert!(evidence(&[0.0, 0.0], &labeled, &c).is_err());
        assert!(evidence(&[0.0], &labeled, &c).is_err());
    }

    #[test]
    fn odd_dimension_scale() {
        // 2^{3/2} for d = 3
        let c = cfg(3, 1.0);
        let w = c.evidence_weight(&[0.0; 3], &[0.0; 3]).unwrap();
        assert!((w - 8.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn second_order_examples() {
        let c = cfg(2, 1.0);
        let p = second_order(&[0.0, 0.0], &[], &c).unwrap();
        assert_eq!((p.alpha(), p.beta()), (0.5, 0.5));

        let labeled = vec![LabeledPoint {
            x: vec![0.0, 0.0],
            y: Class::Pos,
        }];
        let p = second_order(&[0.0, 0.0], &labeled, &c).unwrap();
        assert!((p.alpha() - 2.5).abs() < 1e-14);
        assert_eq!(p.beta(), 0.5);
    }

    #[test]
    fn density_examples() {
        let c = cfg(1, 1.0);
        let pool = vec![vec![0.0]];
        let d = density_estimate(&[0.0], &pool, &c).unwrap();
        assert!((d - 0.3989422804014327).abs() < 1e-15);

        // averaging m identical points changes nothing
        let pool_m = vec![vec![0.0]; 7];
        let dm = density_estimate(&[0.0], &pool_m, &c).unwrap();
        assert!((d - dm).abs() < 1e-15);

        assert!(density_estimate(&[0.0], &[], &c).is_err());
    }

    #[test]
    fn density_matches_brute_force() {
        // independent double-loop Parzen sum
        let c = cfg(2, 0.6);
        let pool: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![t.sin() * 1.3, (t * 0.7).cos() - 0.2]
            })
            .collect();
        let x = [0.25, -0.6];
        let h: f64 = 0.6;
        let mut expected = 0.0;
        for p in &pool {
            let d2 = (x[0] - p[0]).powi(2) + (x[1] - p[1]).powi(2);
            expected += (2.0 * core::f64::consts::PI * h * h).recip() * (-d2 / (2.0 * h * h)).exp();
        }
        expected /= pool.len() as f64;
        let got = density_estimate(&x, &pool, &c).unwrap();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn point_estimate_examples() {
        let c = cfg(2, 1.0);
        assert_eq!(point_estimate(&[0.0, 0.0], &[], &c).unwrap(), 0.5);

        let ev = ClassEvidence { pos: 4.0, neg: 1.0 };
        assert!((c.point_estimate(ev) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn point_estimate_delta_limit() {
        // as delta → 0 the estimate approaches the raw evidence ratio
        let c = KernelConfig::new(2, 1.0, 1e-12).unwrap();
        for &(pos, neg) in &[(0.3, 1.7), (5.0, 2.0), (0.01, 0.04)] {
            let ev = ClassEvidence { pos, neg };
            let regularized = c.point_estimate(ev);
            let raw = pos / (pos + neg);
            assert!((regularized - raw).abs() < 1e-10);
        }
    }

    #[test]
    fn predict_examples_and_tie() {
        let c = cfg(2, 1.0);
        assert_eq!(c.predict(ClassEvidence { pos: 2.0, neg: 0.0 }), Class::Pos);
        assert_eq!(c.predict(ClassEvidence { pos: 0.0, neg: 2.0 }), Class::Neg);
        assert_eq!(c.predict(ClassEvidence { pos: 1.5, neg: 1.5 }), Class::Neg);
        assert_eq!(c.predict(ClassEvidence::default()), Class::Neg);
    }
}
