//! Rank-based comparison of strategies across datasets: per-dataset
//! ranks with average-rank tie handling, the Friedman omnibus test (both
//! the classical chi-squared statistic and the Iman-Davenport F
//! correction), and the two-tailed Nemenyi post-hoc test with its
//! critical-difference thresholds.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::distributions::{reg_inc_beta, reg_inc_gamma_upper, BetaParams};
use crate::error::{Error, Result};

/// Per-dataset ranks (1 = best, ties averaged) and column mean ranks.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RankMatrix {
    /// datasets × strategies.
    pub ranks: Vec<Vec<f64>>,
    pub mean_ranks: Vec<f64>,
}

impl RankMatrix {
    pub fn n_datasets(&self) -> usize {
        self.ranks.len()
    }

    pub fn n_strategies(&self) -> usize {
        self.mean_ranks.len()
    }
}

/// Ranks a score matrix row by row; `higher_is_better` decides the
/// direction. Ties receive the average of the positions they straddle.
pub fn ranks(scores: &[Vec<f64>], higher_is_better: bool) -> Result<RankMatrix> {
    let n = scores.len();
    if n == 0 {
        return Err(Error::EmptyInput(String::from("score matrix")));
    }
    let k = scores[0].len();
    if k < 2 {
        return Err(Error::Invalid(String::from(
            "ranking needs at least 2 strategies",
        )));
    }

    let mut rank_rows = Vec::with_capacity(n);
    for row in scores {
        if row.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: row.len(),
            });
        }
        if row.iter().any(|s| s.is_nan()) {
            return Err(Error::Domain(String::from("scores must not be NaN")));
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            let cmp = row[a].partial_cmp(&row[b]).expect("NaN rejected above");
            if higher_is_better {
                cmp.reverse()
            } else {
                cmp
            }
        });
        let mut rank_row = alloc::vec![0.0; k];
        let mut i = 0;
        while i < k {
            let mut j = i;
            while j + 1 < k && row[order[j + 1]] == row[order[i]] {
                j += 1;
            }
            // positions i..=j share the average rank
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for &col in &order[i..=j] {
                rank_row[col] = avg;
            }
            i = j + 1;
        }
        rank_rows.push(rank_row);
    }

    let mean_ranks = (0..k)
        .map(|j| rank_rows.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    Ok(RankMatrix {
        ranks: rank_rows,
        mean_ranks,
    })
}

/// Friedman test results: the classical chi-squared statistic and the
/// Iman-Davenport F correction, with upper-tail p-values for both.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FriedmanResult {
    pub chi2: f64,
    pub p_chi2: f64,
    pub f_stat: f64,
    pub p_f: f64,
    pub datasets: usize,
    pub strategies: usize,
}

/// Friedman test over a rank matrix.
pub fn friedman(r: &RankMatrix) -> Result<FriedmanResult> {
    friedman_from_mean_ranks(&r.mean_ranks, r.n_datasets())
}

/// Friedman test from mean ranks directly:
///
/// ```text
/// chi2_F = 12N / (k(k+1)) * (sum R_j^2 - k(k+1)^2/4)
/// F_F    = (N - 1) chi2_F / (N(k-1) - chi2_F)
/// ```
///
/// with upper tails from chi-squared(k-1) and F(k-1, (k-1)(N-1)). A
/// degenerate statistic (`chi2_F = N(k-1)`, identical orderings on every
/// dataset) reports `p_f = 0`.
pub fn friedman_from_mean_ranks(mean_ranks: &[f64], n_datasets: usize) -> Result<FriedmanResult> {
    let k = mean_ranks.len();
    let n = n_datasets;
    if k < 2 {
        return Err(Error::Invalid(String::from(
            "Friedman test needs at least 2 strategies",
        )));
    }
    if n < 2 {
        return Err(Error::Invalid(String::from(
            "Friedman test needs at least 2 datasets",
        )));
    }
    let kf = k as f64;
    let nf = n as f64;
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    let chi2 = 12.0 * nf / (kf * (kf + 1.0)) * (sum_sq - kf * (kf + 1.0) * (kf + 1.0) / 4.0);
    let chi2 = chi2.max(0.0);
    let p_chi2 = reg_inc_gamma_upper((kf - 1.0) / 2.0, chi2 / 2.0)?;

    let denom = nf * (kf - 1.0) - chi2;
    let (f_stat, p_f) = if denom <= 1e-12 {
        (f64::INFINITY, 0.0)
    } else {
        let f = (nf - 1.0) * chi2 / denom;
        let d1 = kf - 1.0;
        let d2 = (kf - 1.0) * (nf - 1.0);
        // upper tail of F(d1, d2) via the incomplete beta
        let x = d2 / (d2 + d1 * f);
        let p = reg_inc_beta(x, BetaParams::new(d2 / 2.0, d1 / 2.0)?)?;
        (f, p)
    };
    Ok(FriedmanResult {
        chi2,
        p_chi2,
        f_stat,
        p_f,
        datasets: n,
        strategies: k,
    })
}

/// Significance levels with embedded Nemenyi critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Alpha {
    P01,
    P05,
    P10,
}

impl Alpha {
    pub const ALL: [Alpha; 3] = [Alpha::P01, Alpha::P05, Alpha::P10];

    pub fn value(self) -> f64 {
        match self {
            Alpha::P01 => 0.01,
            Alpha::P05 => 0.05,
            Alpha::P10 => 0.10,
        }
    }
}

// Critical values q_alpha for the two-tailed Nemenyi test, k = 2..=10:
// upper-alpha quantiles of the studentized range at infinite degrees of
// freedom divided by sqrt(2) (the convention of Demsar, JMLR 7, 2006).
const NEMENYI_Q_01: [f64; 9] = [2.576, 2.913, 3.113, 3.255, 3.364, 3.452, 3.526, 3.591, 3.647];
const NEMENYI_Q_05: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];
const NEMENYI_Q_10: [f64; 9] = [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920];

/// Critical difference of mean ranks for the two-tailed Nemenyi test:
/// `CD = q_alpha * sqrt(k(k+1) / 6N)`, for `2 <= k <= 10`.
pub fn nemenyi_cd(k: usize, n_datasets: usize, alpha: Alpha) -> Result<f64> {
    if !(2..=10).contains(&k) {
        return Err(Error::Invalid(alloc::format!(
            "Nemenyi critical values are tabulated for 2..=10 strategies, got {k}"
        )));
    }
    if n_datasets == 0 {
        return Err(Error::EmptyInput(String::from("datasets")));
    }
    let q = match alpha {
        Alpha::P01 => NEMENYI_Q_01[k - 2],
        Alpha::P05 => NEMENYI_Q_05[k - 2],
        Alpha::P10 => NEMENYI_Q_10[k - 2],
    };
    let kf = k as f64;
    Ok(q * (kf * (kf + 1.0) / (6.0 * n_datasets as f64)).sqrt())
}

/// Pairwise significance at one level: strategy index pairs whose mean
/// rank difference exceeds the critical difference.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NemenyiLevel {
    pub alpha: f64,
    pub critical_difference: f64,
    /// `(i, j)` with `i < j`, significant at this level.
    pub significant: Vec<(usize, usize)>,
}

/// Full comparison report over a benchmark's score table.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BenchmarkReport {
    pub datasets: Vec<String>,
    pub strategies: Vec<String>,
    /// datasets × strategies score table the report was built from.
    pub scores: Vec<Vec<f64>>,
    pub rank_matrix: RankMatrix,
    pub friedman: FriedmanResult,
    pub nemenyi: Vec<NemenyiLevel>,
    /// Per dataset: indices of the best and second-best strategy.
    pub best: Vec<(usize, usize)>,
}

/// Builds the comparison report: ranks, the Friedman test, Nemenyi
/// significance flags at 1%, 5% and 10%, and per-dataset best markers.
pub fn compare(
    datasets: Vec<String>,
    strategies: Vec<String>,
    scores: Vec<Vec<f64>>,
) -> Result<BenchmarkReport> {
    if strategies.len() < 2 {
        return Err(Error::Invalid(String::from(
            "comparison needs at least 2 strategies",
        )));
    }
    if datasets.len() < 2 {
        return Err(Error::Invalid(String::from(
            "comparison needs at least 2 datasets",
        )));
    }
    if scores.len() != datasets.len() {
        return Err(Error::DimensionMismatch {
            expected: datasets.len(),
            got: scores.len(),
        });
    }
    let rank_matrix = ranks(&scores, true)?;
    if rank_matrix.n_strategies() != strategies.len() {
        return Err(Error::DimensionMismatch {
            expected: strategies.len(),
            got: rank_matrix.n_strategies(),
        });
    }
    let friedman = friedman(&rank_matrix)?;

    let k = strategies.len();
    let mut nemenyi = Vec::with_capacity(Alpha::ALL.len());
    for alpha in Alpha::ALL {
        let cd = nemenyi_cd(k, datasets.len(), alpha)?;
        let mut significant = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if (rank_matrix.mean_ranks[i] - rank_matrix.mean_ranks[j]).abs() > cd {
                    significant.push((i, j));
                }
            }
        }
        nemenyi.push(NemenyiLevel {
            alpha: alpha.value(),
            critical_difference: cd,
            significant,
        });
    }

    let best = scores
        .iter()
        .map(|row| {
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&a, &b| {
                row[b]
                    .partial_cmp(&row[a])
                    .expect("NaN rejected")
                    .then(a.cmp(&b))
            });
            (order[0], order[1])
        })
        .collect();

    Ok(BenchmarkReport {
        datasets,
        strategies,
        scores,
        rank_matrix,
        friedman,
        nemenyi,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn ranks_simple_row() {
        let r = ranks(&[vec![0.9, 0.8, 0.7, 0.6]], true).unwrap();
        assert_eq!(r.ranks[0], vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn ranks_average_ties() {
        let r = ranks(&[vec![0.8, 0.8, 0.6, 0.5]], true).unwrap();
        assert_eq!(r.ranks[0], vec![1.5, 1.5, 3.0, 4.0]);
    }

    #[test]
    fn ranks_direction_and_errors() {
        let r = ranks(&[vec![1.0, 3.0, 2.0]], false).unwrap();
        assert_eq!(r.ranks[0], vec![1.0, 3.0, 2.0]);
        assert!(ranks(&[vec![f64::NAN, 1.0]], true).is_err());
        assert!(ranks(&[], true).is_err());
        assert!(ranks(&[vec![1.0]], true).is_err());
    }

    #[test]
    fn rank_row_sums_are_fixed() {
        let rows = vec![
            vec![0.1, 0.5, 0.5, 0.9],
            vec![0.4, 0.4, 0.4, 0.4],
            vec![0.2, 0.3, 0.1, 0.8],
        ];
        let r = ranks(&rows, true).unwrap();
        for row in &r.ranks {
            let sum: f64 = row.iter().sum();
            assert!((sum - 10.0).abs() < 1e-12, "row sum {sum}");
        }
    }

    #[test]
    fn friedman_no_differences() {
        let rows = vec![vec![0.5; 4]; 6];
        let r = ranks(&rows, true).unwrap();
        let f = friedman(&r).unwrap();
        assert!(f.chi2.abs() < 1e-12);
        assert!((f.p_chi2 - 1.0).abs() < 1e-12);
        assert!((f.p_f - 1.0).abs() < 1e-9);
    }

    #[test]
    fn friedman_published_mean_ranks() {
        // 32 datasets, 4 strategies, mean ranks as reported for the UCI
        // benchmark
        let f = friedman_from_mean_ranks(&[3.09, 2.56, 2.97, 1.38], 32).unwrap();
        assert!((f.chi2 - 35.08).abs() < 0.05, "chi2 = {}", f.chi2);
        assert!(f.p_chi2 < 1.2e-7, "p_chi2 = {}", f.p_chi2);
        // the Iman-Davenport tail lands around 2.5e-9
        assert!(f.p_f > 1e-10 && f.p_f < 1e-8, "p_f = {}", f.p_f);
    }

    #[test]
    fn friedman_degenerate_orderings() {
        // the same strict ordering on every dataset maxes the statistic
        let rows = vec![vec![0.9, 0.7, 0.5, 0.3]; 8];
        let r = ranks(&rows, true).unwrap();
        let f = friedman(&r).unwrap();
        assert!((f.chi2 - 8.0 * 3.0).abs() < 1e-9);
        assert_eq!(f.p_f, 0.0);
        assert!(f.f_stat.is_infinite());
    }

    #[test]
    fn friedman_chi2_invariant_under_column_permutation() {
        let rows = vec![
            vec![0.9, 0.5, 0.7],
            vec![0.4, 0.6, 0.5],
            vec![0.3, 0.2, 0.8],
            vec![0.55, 0.54, 0.53],
        ];
        let swapped: Vec<Vec<f64>> = rows.iter().map(|r| vec![r[2], r[0], r[1]]).collect();
        let a = friedman(&ranks(&rows, true).unwrap()).unwrap();
        let b = friedman(&ranks(&swapped, true).unwrap()).unwrap();
        assert!((a.chi2 - b.chi2).abs() < 1e-12);
    }

    #[test]
    fn nemenyi_reference_thresholds() {
        // the k = 4, N = 32 thresholds used for the UCI comparison
        let cd01 = nemenyi_cd(4, 32, Alpha::P01).unwrap();
        assert!((cd01 - 1.004).abs() <= 0.002, "cd01 = {cd01}");
        let cd10 = nemenyi_cd(4, 32, Alpha::P10).unwrap();
        assert!((cd10 - 0.739).abs() <= 0.002, "cd10 = {cd10}");
    }

    #[test]
    fn nemenyi_scaling_and_monotonicity() {
        let base = nemenyi_cd(4, 32, Alpha::P05).unwrap();
        let quadrupled = nemenyi_cd(4, 128, Alpha::P05).unwrap();
        assert!((base / 2.0 - quadrupled).abs() < 1e-12);
        // decreasing in N, increasing in k
        for k in 2..=9 {
            assert!(
                nemenyi_cd(k + 1, 32, Alpha::P05).unwrap() > nemenyi_cd(k, 32, Alpha::P05).unwrap()
            );
        }
        for n in [4, 8, 16, 32] {
            assert!(
                nemenyi_cd(4, 2 * n, Alpha::P05).unwrap() < nemenyi_cd(4, n, Alpha::P05).unwrap()
            );
        }
        assert!(nemenyi_cd(1, 32, Alpha::P05).is_err());
        assert!(nemenyi_cd(11, 32, Alpha::P05).is_err());
    }

    #[test]
    fn compare_identical_scores_has_no_flags() {
        let report = compare(
            vec!["d1".to_string(), "d2".to_string()],
            vec!["a".to_string(), "b".to_string()],
            vec![vec![0.7, 0.7], vec![0.6, 0.6]],
        )
        .unwrap();
        for level in &report.nemenyi {
            assert!(level.significant.is_empty());
        }
        assert!((report.friedman.p_chi2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn compare_zip_groupings_block() {
        // ten two-class digit groupings, four strategies
        let scores = vec![
            vec![0.777, 0.807, 0.829, 0.832],
            vec![0.786, 0.808, 0.831, 0.837],
            vec![0.782, 0.819, 0.832, 0.830],
            vec![0.774, 0.811, 0.817, 0.830],
            vec![0.793, 0.810, 0.828, 0.838],
            vec![0.782, 0.797, 0.825, 0.833],
            vec![0.777, 0.813, 0.824, 0.846],
            vec![0.777, 0.805, 0.815, 0.830],
            vec![0.750, 0.805, 0.815, 0.821],
            vec![0.791, 0.799, 0.825, 0.840],
        ];
        let names: Vec<String> = (0..10).map(|i| alloc::format!("g{i}")).collect();
        let strategies = vec![
            "rs".to_string(),
            "us".to_string(),
            "ers".to_string(),
            "deal".to_string(),
        ];
        let report = compare(names, strategies, scores).unwrap();
        let expected = [4.0, 3.0, 1.9, 1.1];
        for (got, want) in report.rank_matrix.mean_ranks.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        // the best strategy is marked on every grouping
        for (i, &(best, _)) in report.best.iter().enumerate() {
            if i == 2 {
                assert_eq!(best, 2);
            } else {
                assert_eq!(best, 3);
            }
        }
    }
}
