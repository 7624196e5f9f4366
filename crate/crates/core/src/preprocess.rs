//! Dataset preprocessing: categorical encoding, imputation,
//! standardization, binary class grouping, PCA, and automatic dimension
//! selection.
//!
//! The pipeline is split into a fitting half and an application half so
//! that cross-validation stays leak-free: [`fit_rows`] learns every
//! statistic (imputation means, indicator outcome sets, standardization
//! stats, the PCA basis and its dimension) from the training rows only,
//! and [`transform_rows`] applies the fitted transform to any rows —
//! including held-out test folds, which are never allowed to contribute
//! their own statistics. [`FittedTransform`] doubles as the provenance
//! record: applying it to the same rows always reproduces the same
//! matrix bit for bit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::kde::Class;

/// Minimum number of retained principal components.
pub const MIN_COMPONENTS: usize = 2;

/// A raw feature column: continuous or categorical, with missing cells.
#[derive(Debug, Clone, PartialEq)]
pub enum RawColumn {
    Continuous {
        name: String,
        values: Vec<Option<f64>>,
    },
    Categorical {
        name: String,
        values: Vec<Option<String>>,
    },
}

impl RawColumn {
    pub fn name(&self) -> &str {
        match self {
            RawColumn::Continuous { name, .. } => name,
            RawColumn::Categorical { name, .. } => name,
        }
    }

    fn len(&self) -> usize {
        match self {
            RawColumn::Continuous { values, .. } => values.len(),
            RawColumn::Categorical { values, .. } => values.len(),
        }
    }
}

/// An ingested table: feature columns plus one label column.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    name: String,
    features: Vec<RawColumn>,
    labels: Vec<String>,
}

impl RawTable {
    pub fn new(name: String, features: Vec<RawColumn>, labels: Vec<String>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::Invalid(String::from(
                "a table needs at least one feature column",
            )));
        }
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyInput(String::from("table rows")));
        }
        for col in &features {
            if col.len() != n {
                return Err(Error::Invalid(alloc::format!(
                    "column '{}' has {} rows, label column has {n}",
                    col.name(),
                    col.len()
                )));
            }
        }
        let mut distinct: Vec<&String> = labels.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::SingleClass);
        }
        Ok(Self {
            name,
            features,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn features(&self) -> &[RawColumn] {
        &self.features
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Replaces each categorical outcome by indicator columns: a column with
/// `c` distinct observed outcomes becomes `c − 1` binary indicators.
/// Missing values form their own outcome, ordered first; the
/// lexicographically last observed value is the dropped reference.
///
/// Returns the retained indicator outcomes (`None` is the missing
/// outcome) alongside the materialized 0/1 columns.
pub fn encode_categorical(
    values: &[Option<String>],
) -> Result<(Vec<Option<String>>, Vec<Vec<f64>>)> {
    let mut has_missing = false;
    let mut observed: Vec<&str> = Vec::new();
    for v in values {
        match v {
            None => has_missing = true,
            Some(s) => observed.push(s),
        }
    }
    observed.sort_unstable();
    observed.dedup();

    let outcome_count = observed.len() + usize::from(has_missing);
    if outcome_count < 2 {
        return Err(Error::Invalid(String::from(
            "categorical column with a single outcome produces no indicator columns",
        )));
    }

    // the reference category is the lexicographically last observed value;
    // if the column is all-missing plus one value, that value is dropped
    // and the missing indicator remains
    let mut outcomes: Vec<Option<String>> = Vec::new();
    if has_missing {
        outcomes.push(None);
    }
    for v in &observed[..observed.len().saturating_sub(1)] {
        outcomes.push(Some(v.to_string()));
    }

    let columns = outcomes
        .iter()
        .map(|outcome| {
            values
                .iter()
                .map(|cell| f64::from(u8::from(cell.as_deref() == outcome.as_deref())))
                .collect()
        })
        .collect();
    Ok((outcomes, columns))
}

/// Replaces missing cells by the mean of the observed cells.
pub fn impute_continuous(values: &[Option<f64>]) -> Result<Vec<f64>> {
    let mean = observed_mean(values)?;
    Ok(values.iter().map(|v| v.unwrap_or(mean)).collect())
}

fn observed_mean(values: &[Option<f64>]) -> Result<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values.iter().flatten() {
        sum += v;
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyInput(String::from(
            "continuous column with no observed values",
        )));
    }
    Ok(sum / count as f64)
}

/// Per-column standardization statistics (sample standard deviation,
/// divisor `n − 1`).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ColumnStats {
    pub mean: f64,
    pub std: f64,
}

fn fit_column_stats(column: &[f64]) -> Result<ColumnStats> {
    let n = column.len();
    if n < 2 {
        return Err(Error::Invalid(String::from(
            "standardization needs at least 2 rows",
        )));
    }
    let mean = column.iter().sum::<f64>() / n as f64;
    let var = column.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    Ok(ColumnStats {
        mean,
        std: var.sqrt(),
    })
}

/// Mean-centers every column and scales it to unit sample variance.
/// Zero-variance columns are dropped; their indices are reported so the
/// caller can record the drop.
pub fn standardize(columns: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Vec<ColumnStats>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut stats = Vec::new();
    let mut dropped = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let s = fit_column_stats(col)?;
        if s.std <= 0.0 {
            dropped.push(i);
            continue;
        }
        out.push(col.iter().map(|v| (v - s.mean) / s.std).collect());
        stats.push(s);
    }
    Ok((out, stats, dropped))
}

/// How to group original class labels into a binary problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Grouping {
    /// Sort classes by descending count and greedily assign each to the
    /// currently lighter group, approximating equal abundance.
    Auto,
    /// Explicit positive group; the negative group defaults to the
    /// complement of the positive one.
    Explicit {
        positive: Vec<String>,
        negative: Option<Vec<String>>,
    },
}

/// Record of the applied class grouping.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GroupingRecord {
    pub positive: Vec<String>,
    pub negative: Vec<String>,
    /// `|n₊ − n₋| / n`
    pub imbalance: f64,
}

/// Maps original labels onto `{−1, +1}`.
///
/// Already-binary problems map lexicographically (first class negative).
/// Multi-class problems are grouped per [`Grouping`].
pub fn binarize_classes(
    labels: &[String],
    grouping: &Grouping,
) -> Result<(Vec<Class>, GroupingRecord)> {
    if labels.is_empty() {
        return Err(Error::EmptyInput(String::from("label column")));
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(l.as_str()).or_insert(0) += 1;
    }
    if counts.len() < 2 {
        return Err(Error::SingleClass);
    }

    let (positive, negative): (Vec<String>, Vec<String>) = match grouping {
        Grouping::Explicit { positive, negative } => {
            for c in positive.iter().chain(negative.iter().flatten()) {
                if !counts.contains_key(c.as_str()) {
                    return Err(Error::Invalid(alloc::format!(
                        "grouping references unknown class '{c}'"
                    )));
                }
            }
            let pos: Vec<String> = positive.clone();
            let neg: Vec<String> = match negative {
                Some(neg) => neg.clone(),
                None => counts
                    .keys()
                    .filter(|c| !positive.iter().any(|p| p == *c))
                    .map(|c| c.to_string())
                    .collect(),
            };
            if pos.is_empty() || neg.is_empty() {
                return Err(Error::Invalid(String::from(
                    "class grouping yields an empty side",
                )));
            }
            if let Some(overlap) = pos.iter().find(|p| neg.contains(p)) {
                return Err(Error::Invalid(alloc::format!(
                    "class '{overlap}' appears in both groups"
                )));
            }
            (pos, neg)
        }
        Grouping::Auto => {
            if counts.len() == 2 {
                let mut names: Vec<&str> = counts.keys().copied().collect();
                names.sort_unstable();
                (vec![names[1].to_string()], vec![names[0].to_string()])
            } else {
                // descending count, ties by name, greedily into the
                // lighter group (ties favour the positive group)
                let mut ordered: Vec<(&str, usize)> =
                    counts.iter().map(|(k, v)| (*k, *v)).collect();
                ordered.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
                let mut pos: Vec<String> = Vec::new();
                let mut neg: Vec<String> = Vec::new();
                let (mut n_pos, mut n_neg) = (0usize, 0usize);
                for (name, count) in ordered {
                    if n_pos <= n_neg {
                        pos.push(name.to_string());
                        n_pos += count;
                    } else {
                        neg.push(name.to_string());
                        n_neg += count;
                    }
                }
                (pos, neg)
            }
        }
    };

    let classes: Vec<Class> = labels
        .iter()
        .map(|l| {
            if positive.iter().any(|p| p == l) {
                Ok(Class::Pos)
            } else if negative.iter().any(|p| p == l) {
                Ok(Class::Neg)
            } else {
                Err(Error::Invalid(alloc::format!(
                    "label '{l}' is not covered by the class grouping"
                )))
            }
        })
        .collect::<Result<_>>()?;

    let n_pos = classes.iter().filter(|c| **c == Class::Pos).count();
    let n_neg = classes.len() - n_pos;
    let record = GroupingRecord {
        positive,
        negative,
        imbalance: (n_pos as f64 - n_neg as f64).abs() / classes.len() as f64,
    };
    Ok((classes, record))
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues in descending order with matching unit-norm eigenvectors
/// (as rows), each oriented so its largest-magnitude entry is positive.
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| {
            let mut vec_col: Vec<f64> = (0..n).map(|row| v[row][col]).collect();
            let lead = vec_col
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            if vec_col[lead] < 0.0 {
                for e in &mut vec_col {
                    *e = -*e;
                }
            }
            vec_col
        })
        .collect();
    (eigenvalues, eigenvectors)
}

fn covariance(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::Invalid(String::from(
            "covariance needs at least 2 rows",
        )));
    }
    let p = rows[0].len();
    let mut means = vec![0.0; p];
    for row in rows {
        if row.len() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: row.len(),
            });
        }
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }
    let mut cov = vec![vec![0.0; p]; p];
    for row in rows {
        for i in 0..p {
            let di = row[i] - means[i];
            for j in i..p {
                cov[i][j] += di * (row[j] - means[j]);
            }
        }
    }
    for i in 0..p {
        for j in i..p {
            cov[i][j] /= (n - 1) as f64;
            cov[j][i] = cov[i][j];
        }
    }
    Ok(cov)
}

/// Principal component analysis: eigendecomposition of the sample
/// covariance, keeping the top `d` directions (descending eigenvalue,
/// largest-magnitude entry positive). Returns the basis rows and the
/// projected rows.
///
/// Rows are projected as given; centering is the standardization step's
/// job, so a full-rank projection round-trips exactly.
pub fn pca(x: &[Vec<f64>], d: usize) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    if x.is_empty() {
        return Err(Error::EmptyInput(String::from("PCA input matrix")));
    }
    if d == 0 {
        return Err(Error::Domain(String::from(
            "must retain at least one component",
        )));
    }
    let cov = covariance(x)?;
    let (eigenvalues, eigenvectors) = jacobi_eigen(cov);
    let tol = eigenvalues.first().copied().unwrap_or(0.0).max(0.0) * 1e-12;
    let rank = eigenvalues.iter().filter(|&&l| l > tol).count();
    if d > rank {
        return Err(Error::Domain(alloc::format!(
            "requested {d} components but the data has rank {rank}"
        )));
    }
    let basis: Vec<Vec<f64>> = eigenvectors.into_iter().take(d).collect();
    let projected = project(x, &basis);
    Ok((basis, projected))
}

fn project(rows: &[Vec<f64>], basis: &[Vec<f64>]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|row| {
            basis
                .iter()
                .map(|axis| axis.iter().zip(row).map(|(a, v)| a * v).sum())
                .collect()
        })
        .collect()
}

/// Selects the number of components from the eigenvalue scree by the
/// two-group profile likelihood: every split is scored by the Gaussian
/// log-likelihood of the two groups under a pooled common variance, and
/// the best split wins, floored at [`MIN_COMPONENTS`].
pub fn select_dimension(eigenvalues: &[f64]) -> Result<usize> {
    let p = eigenvalues.len();
    if p < 2 {
        return Err(Error::Invalid(String::from(
            "dimension selection needs at least 2 eigenvalues",
        )));
    }
    for w in eigenvalues.windows(2) {
        if w[1] > w[0] + 1e-12 * w[0].abs().max(1.0) {
            return Err(Error::Invalid(String::from(
                "eigenvalues must be in descending order",
            )));
        }
    }
    if eigenvalues.iter().any(|&l| l < -1e-9 || !l.is_finite()) {
        return Err(Error::Domain(String::from(
            "eigenvalues must be nonnegative and finite",
        )));
    }

    let mut best_q = 1usize;
    let mut best_ll = f64::NEG_INFINITY;
    for q in 1..p {
        let (head, tail) = eigenvalues.split_at(q);
        let mu1 = head.iter().sum::<f64>() / head.len() as f64;
        let mu2 = tail.iter().sum::<f64>() / tail.len() as f64;
        let ss: f64 = head.iter().map(|l| (l - mu1) * (l - mu1)).sum::<f64>()
            + tail.iter().map(|l| (l - mu2) * (l - mu2)).sum::<f64>();
        let pooled_var = ss / p as f64;
        // zero pooled variance is a perfect two-group fit
        let ll = if pooled_var > 0.0 {
            -(p as f64) / 2.0 * pooled_var.ln()
        } else {
            f64::INFINITY
        };
        if ll > best_ll {
            best_ll = ll;
            best_q = q;
        }
    }
    Ok(best_q.max(MIN_COMPONENTS))
}

/// One encoded (post-encoding, pre-standardization) feature column.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum EncodedFeature {
    Continuous {
        source: String,
        impute_mean: f64,
    },
    /// Indicator for one categorical outcome; `None` is the
    /// missing-value outcome.
    Indicator {
        source: String,
        outcome: Option<String>,
    },
}

impl EncodedFeature {
    fn describe(&self) -> String {
        match self {
            EncodedFeature::Continuous { source, .. } => source.clone(),
            EncodedFeature::Indicator { source, outcome } => match outcome {
                Some(o) => alloc::format!("{source}={o}"),
                None => alloc::format!("{source}=<missing>"),
            },
        }
    }
}

/// A fitted preprocessing transform; also the provenance record.
///
/// Every statistic in here was learned from the rows passed to
/// [`fit_rows`]; applying the transform never recomputes any of them.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FittedTransform {
    /// Encoded columns in order, before the zero-variance drop.
    pub features: Vec<EncodedFeature>,
    /// Standardization stats for the kept columns, aligned with `kept`.
    pub stats: Vec<ColumnStats>,
    /// Which encoded columns survived the zero-variance drop.
    pub kept: Vec<bool>,
    /// Covariance eigenvalues of the standardized kept columns,
    /// descending.
    pub eigenvalues: Vec<f64>,
    /// Selected dimension.
    pub dim: usize,
    /// PCA basis: `dim` rows over the kept standardized columns.
    pub rotation: Vec<Vec<f64>>,
    /// Human-readable notes: dropped columns and other non-fatal events.
    pub warnings: Vec<String>,
}

/// Fits the full preprocessing pipeline on a subset of table rows.
pub fn fit_rows(table: &RawTable, rows: &[usize]) -> Result<FittedTransform> {
    if rows.len() < 2 {
        return Err(Error::Invalid(String::from(
            "pipeline fitting needs at least 2 rows",
        )));
    }
    for &r in rows {
        if r >= table.n_rows() {
            return Err(Error::Invalid(alloc::format!(
                "row index {r} out of range for table with {} rows",
                table.n_rows()
            )));
        }
    }

    let mut features: Vec<EncodedFeature> = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    for col in table.features() {
        match col {
            RawColumn::Continuous { name, values } => {
                let subset: Vec<Option<f64>> = rows.iter().map(|&r| values[r]).collect();
                let mean = observed_mean(&subset).map_err(|_| {
                    Error::EmptyInput(alloc::format!(
                        "continuous column '{name}' has no observed values in the training rows"
                    ))
                })?;
                features.push(EncodedFeature::Continuous {
                    source: name.clone(),
                    impute_mean: mean,
                });
                columns.push(subset.iter().map(|v| v.unwrap_or(mean)).collect());
            }
            RawColumn::Categorical { name, values } => {
                let subset: Vec<Option<String>> =
                    rows.iter().map(|&r| values[r].clone()).collect();
                match encode_categorical(&subset) {
                    Ok((outcomes, cols)) => {
                        for (outcome, col) in outcomes.into_iter().zip(cols) {
                            features.push(EncodedFeature::Indicator {
                                source: name.clone(),
                                outcome,
                            });
                            columns.push(col);
                        }
                    }
                    Err(_) => {
                        warnings.push(alloc::format!(
                            "categorical column '{name}' has a single outcome; dropped"
                        ));
                    }
                }
            }
        }
    }

    if features.is_empty() {
        return Err(Error::Invalid(String::from(
            "no usable feature columns after encoding",
        )));
    }

    let mut stats: Vec<ColumnStats> = Vec::new();
    let mut kept: Vec<bool> = Vec::new();
    let mut standardized: Vec<Vec<f64>> = Vec::new();
    for (feature, col) in features.iter().zip(&columns) {
        let s = fit_column_stats(col)?;
        if s.std <= 0.0 {
            kept.push(false);
            warnings.push(alloc::format!(
                "column '{}' has zero variance in the training rows; dropped",
                feature.describe()
            ));
            continue;
        }
        kept.push(true);
        stats.push(s);
        standardized.push(col.iter().map(|v| (v - s.mean) / s.std).collect());
    }

    if standardized.len() < MIN_COMPONENTS {
        return Err(Error::Invalid(alloc::format!(
            "only {} usable feature columns; need at least {MIN_COMPONENTS}",
            standardized.len()
        )));
    }

    // column-major → row-major for the covariance
    let n = rows.len();
    let p = standardized.len();
    let mut matrix = vec![vec![0.0; p]; n];
    for (j, col) in standardized.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            matrix[i][j] = *v;
        }
    }
    let cov = covariance(&matrix)?;
    let (mut eigenvalues, eigenvectors) = jacobi_eigen(cov);
    for l in &mut eigenvalues {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    let dim = select_dimension(&eigenvalues)?.min(p);
    let rotation: Vec<Vec<f64>> = eigenvectors.into_iter().take(dim).collect();

    Ok(FittedTransform {
        features,
        stats,
        kept,
        eigenvalues,
        dim,
        rotation,
        warnings,
    })
}

/// Applies a fitted transform to table rows, producing the projected
/// feature matrix. Test folds go through here with their training fold's
/// transform — never their own statistics.
pub fn transform_rows(
    t: &FittedTransform,
    table: &RawTable,
    rows: &[usize],
) -> Result<Vec<Vec<f64>>> {
    let mut by_name: BTreeMap<&str, &RawColumn> = BTreeMap::new();
    for col in table.features() {
        by_name.insert(col.name(), col);
    }

    let mut out = Vec::with_capacity(rows.len());
    for &r in rows {
        if r >= table.n_rows() {
            return Err(Error::Invalid(alloc::format!(
                "row index {r} out of range for table with {} rows",
                table.n_rows()
            )));
        }
        let mut encoded = Vec::with_capacity(t.stats.len());
        let mut stat_idx = 0usize;
        for (feature, keep) in t.features.iter().zip(&t.kept) {
            let value = match feature {
                EncodedFeature::Continuous {
                    source,
                    impute_mean,
                } => match by_name.get(source.as_str()) {
                    Some(RawColumn::Continuous { values, .. }) => {
                        values[r].unwrap_or(*impute_mean)
                    }
                    _ => {
                        return Err(Error::Invalid(alloc::format!(
                            "continuous column '{source}' missing from table"
                        )))
                    }
                },
                EncodedFeature::Indicator { source, outcome } => match by_name.get(source.as_str())
                {
                    Some(RawColumn::Categorical { values, .. }) => {
                        f64::from(u8::from(values[r].as_deref() == outcome.as_deref()))
                    }
                    _ => {
                        return Err(Error::Invalid(alloc::format!(
                            "categorical column '{source}' missing from table"
                        )))
                    }
                },
            };
            if *keep {
                let s = &t.stats[stat_idx];
                encoded.push((value - s.mean) / s.std);
                stat_idx += 1;
            }
        }
        out.push(
            t.rotation
                .iter()
                .map(|axis| axis.iter().zip(&encoded).map(|(a, v)| a * v).sum())
                .collect(),
        );
    }
    Ok(out)
}

/// Fits on all rows and transforms them: the whole-dataset convenience
/// used when exporting a portable projected dataset.
pub fn fit_transform(table: &RawTable) -> Result<(FittedTransform, Vec<Vec<f64>>)> {
    let rows: Vec<usize> = (0..table.n_rows()).collect();
    let t = fit_rows(table, &rows)?;
    let x = transform_rows(&t, table, &rows)?;
    Ok((t, x))
}

/// A preprocessed dataset: projected features plus binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Class>,
}

impl Dataset {
    pub fn new(name: String, x: Vec<Vec<f64>>, y: Vec<Class>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Invalid(alloc::format!(
                "{} feature rows but {} labels",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::EmptyInput(String::from("dataset rows")));
        }
        let dim = x[0].len();
        for row in &x {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Ok(Self { name, x, y })
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn dim(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn dimension_selection_is_scale_invariant(
            raw in proptest::collection::vec(0.01f64..100.0, 3..12),
            scale in 0.001f64..1000.0,
        ) {
            let mut eigenvalues = raw;
            eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let scaled: Vec<f64> = eigenvalues.iter().map(|l| l * scale).collect();
            prop_assert_eq!(
                select_dimension(&eigenvalues).unwrap(),
                select_dimension(&scaled).unwrap()
            );
        }

        #[test]
        fn indicators_are_binary_and_count_correctly(
            cells in proptest::collection::vec(proptest::option::weighted(0.85, 0..5u8), 4..40),
        ) {
            let values: Vec<Option<String>> = cells
                .iter()
                .map(|c| c.map(|v| alloc::format!("v{v}")))
                .collect();
            let mut distinct: Vec<&Option<String>> = values.iter().collect();
            distinct.sort();
            distinct.dedup();
            prop_assume!(distinct.len() >= 2);
            let (outcomes, cols) = encode_categorical(&values).unwrap();
            prop_assert_eq!(outcomes.len(), distinct.len() - 1);
            prop_assert_eq!(cols.len(), outcomes.len());
            for col in &cols {
                for v in col {
                    prop_assert!(*v == 0.0 || *v == 1.0);
                }
            }
        }
    }
}
