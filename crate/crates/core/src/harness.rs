//! The evaluation protocol: stratified cross-validation, simulated
//! active-learning runs producing learning curves, the full-data
//! reference accuracy, the truncation rule, area-under-learning-curve
//! scoring, and the XOR synthetic scenario.
//!
//! Everything here is a pure function of its inputs. Per-cell randomness
//! is derived from the experiment's master seed through [`mix_seed`], a
//! fixed SplitMix64 absorption chain over stable tags (dataset name
//! hash, strategy tag, fold, repeat), so cells can run in any order — or
//! concurrently — without changing a single bit of the output.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::kde::{self, Class, ClassEvidence, KernelConfig, LabeledPoint};
use crate::preprocess::Dataset;
use crate::strategies::{PoolState, Selector, StrategyKind};

/// Learning curves are scored at most this deep, regardless of how long
/// the runs were.
pub const TRUNCATION_CAP: usize = 200;

/// Truncation threshold as a fraction of the full-data accuracy.
pub const TRUNCATION_FRACTION: f64 = 0.9;

const TAG_CV: u64 = 1;
const TAG_RUN: u64 = 2;
const TAG_XOR_TRAIN: u64 = 3;
const TAG_XOR_TEST: u64 = 4;
const TAG_XOR_INIT: u64 = 5;

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-seed from the master seed and a list of tags by a
/// SplitMix64 absorption chain. The rule is fixed: changing any tag or
/// the tag order changes the result, and the derivation is independent
/// of evaluation order.
pub fn mix_seed(master: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &tag in tags {
        state = splitmix64(state ^ splitmix64(tag));
    }
    state
}

/// FNV-1a hash of a name, used to give each dataset a stable seed tag.
pub fn name_tag(name: &str) -> u64 {
    let mut hash: u64 = 0xCBF2_9CE4_8422_2325;
    for b in name.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// Experiment configuration shared by every cell of a benchmark run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub strategies: Vec<StrategyKind>,
    pub folds: usize,
    /// Repeats per fold for seeded strategies; the deterministic
    /// strategy always runs once per fold.
    pub repeats: usize,
    pub max_iters: usize,
    pub master_seed: u64,
    pub delta: f64,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            strategies: vec![
                StrategyKind::Random,
                StrategyKind::Uncertainty,
                StrategyKind::ers_default(),
                StrategyKind::Deal,
            ],
            folds: 10,
            repeats: 5,
            max_iters: 200,
            master_seed: 0,
            delta: 0.5,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.strategies.is_empty() {
            return Err(Error::EmptyInput(String::from("strategy list")));
        }
        if self.folds < 2 {
            return Err(Error::Invalid(String::from("need at least 2 folds")));
        }
        if self.repeats < 1 || self.max_iters < 1 {
            return Err(Error::Invalid(String::from(
                "repeats and max_iters must be at least 1",
            )));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Domain(alloc::format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn repeats_for(&self, strategy: StrategyKind) -> usize {
        if strategy.is_seeded() {
            self.repeats
        } else {
            1
        }
    }

    pub fn cv_seed(&self, dataset: &str) -> u64 {
        mix_seed(self.master_seed, &[name_tag(dataset), TAG_CV])
    }

    pub fn run_seed(
        &self,
        dataset: &str,
        strategy: StrategyKind,
        fold: usize,
        repeat: usize,
    ) -> u64 {
        mix_seed(
            self.master_seed,
            &[
                name_tag(dataset),
                TAG_RUN,
                strategy.tag(),
                fold as u64,
                repeat as u64,
            ],
        )
    }
}

/// A cross-validation fold assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct CvSplit {
    /// Fold id per point.
    pub assignment: Vec<usize>,
    pub folds: usize,
    /// False when a class had fewer members than folds and the split
    /// fell back to an unstratified shuffle.
    pub stratified: bool,
}

impl CvSplit {
    pub fn training_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] != fold)
            .collect()
    }

    pub fn test_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    pub fn min_training_size(&self) -> usize {
        let n = self.assignment.len();
        (0..self.folds)
            .map(|f| n - self.assignment.iter().filter(|&&a| a == f).count())
            .min()
            .unwrap_or(0)
    }
}

/// Stratified fold assignment: each class is shuffled and dealt
/// round-robin, so per-class counts differ by at most one across folds.
/// Falls back to an unstratified shuffle when a class has fewer members
/// than folds.
pub fn cv_split(labels: &[Class], folds: usize, seed: u64) -> Result<CvSplit> {
    let n = labels.len();
    if folds < 2 {
        return Err(Error::Invalid(String::from("need at least 2 folds")));
    }
    if n < folds {
        return Err(Error::Invalid(alloc::format!(
            "cannot split {n} points into {folds} folds"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut neg: Vec<usize> = (0..n).filter(|&i| labels[i] == Class::Neg).collect();
    let mut pos: Vec<usize> = (0..n).filter(|&i| labels[i] == Class::Pos).collect();

    let stratified = neg.len() >= folds && pos.len() >= folds;
    let mut assignment = vec![0usize; n];
    if stratified {
        neg.shuffle(&mut rng);
        pos.shuffle(&mut rng);
        for (counter, &idx) in neg.iter().chain(pos.iter()).enumerate() {
            assignment[idx] = counter % folds;
        }
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        for (counter, &idx) in all.iter().enumerate() {
            assignment[idx] = counter % folds;
        }
    }
    Ok(CvSplit {
        assignment,
        folds,
        stratified,
    })
}

/// One (dataset, strategy, fold, repeat) learning curve: test accuracy
/// indexed by labeled-set size, recorded from the very first
/// acquisition.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub dataset: String,
    pub strategy: StrategyKind,
    pub fold: usize,
    pub repeat: usize,
    pub accuracies: Vec<f64>,
}

/// Borrowed view of one fold's train/test data.
#[derive(Debug, Clone, Copy)]
pub struct FoldData<'a> {
    pub train_x: &'a [Vec<f64>],
    pub train_y: &'a [Class],
    pub test_x: &'a [Vec<f64>],
    pub test_y: &'a [Class],
}

fn per_dim_std(points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::Invalid(String::from(
            "bandwidth selection needs at least 2 points",
        )));
    }
    let d = points[0].len();
    let mut mean = vec![0.0; d];
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        for (m, v) in mean.iter_mut().zip(p) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0; d];
    for p in points {
        for ((v, m), x) in var.iter_mut().zip(&mean).zip(p) {
            *v += (x - m) * (x - m);
        }
    }
    Ok(var
        .into_iter()
        .map(|v| (v / (n - 1) as f64).sqrt())
        .collect())
}

/// Kernel configuration for one training fold: normal reference
/// bandwidth over the whole fold pool, fixed for the fold's lifetime.
pub fn fold_kernel_config(train_x: &[Vec<f64>], delta: f64) -> Result<KernelConfig> {
    let stds = per_dim_std(train_x)?;
    let h = kde::normal_reference_bandwidth(train_x.len(), &stds)?;
    KernelConfig::new(stds.len(), h, delta)
}

/// Runs one simulated active-learning pass over a fold: select, reveal,
/// retrain (incrementally), and record test accuracy after every
/// acquisition. `initial_labeled` points are revealed before the loop
/// without recording accuracy — they model a given starting
/// configuration rather than acquisitions.
pub fn run_fold(
    fold: &FoldData<'_>,
    initial_labeled: &[usize],
    strategy: StrategyKind,
    delta: f64,
    max_len: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if fold.train_x.len() != fold.train_y.len() || fold.test_x.len() != fold.test_y.len() {
        return Err(Error::Invalid(String::from(
            "feature and label lengths disagree",
        )));
    }
    if fold.test_x.is_empty() {
        return Err(Error::EmptyInput(String::from("test fold")));
    }
    let has_pos = fold.train_y.contains(&Class::Pos);
    let has_neg = fold.train_y.contains(&Class::Neg);
    if !(has_pos && has_neg) {
        return Err(Error::SingleClass);
    }

    let cfg = fold_kernel_config(fold.train_x, delta)?;
    let mut state = PoolState::from_fold(cfg.clone(), fold.train_x.to_vec())?;
    let mut test_evidence = vec![ClassEvidence::default(); fold.test_x.len()];

    fn reveal(
        fold: &FoldData<'_>,
        cfg: &KernelConfig,
        state: &mut PoolState,
        test_evidence: &mut [ClassEvidence],
        idx: usize,
    ) -> Result<()> {
        let class = fold.train_y[idx];
        state.add_label(idx, class)?;
        for (ev, tx) in test_evidence.iter_mut().zip(fold.test_x) {
            ev.add(class, cfg.evidence_weight(tx, &fold.train_x[idx])?);
        }
        Ok(())
    }

    for &idx in initial_labeled {
        reveal(fold, &cfg, &mut state, &mut test_evidence, idx)?;
    }

    let mut selector = Selector::new(strategy, seed);
    let mut accuracies = Vec::with_capacity(max_len);
    for _ in 0..max_len {
        if state.is_exhausted() {
            break;
        }
        let idx = selector.select(&state)?;
        reveal(fold, &cfg, &mut state, &mut test_evidence, idx)?;
        let correct = test_evidence
            .iter()
            .zip(fold.test_y)
            .filter(|(ev, y)| cfg.predict(**ev) == **y)
            .count();
        accuracies.push(correct as f64 / fold.test_y.len() as f64);
    }
    Ok(accuracies)
}

struct FoldOwned {
    train_x: Vec<Vec<f64>>,
    train_y: Vec<Class>,
    test_x: Vec<Vec<f64>>,
    test_y: Vec<Class>,
}

impl FoldOwned {
    fn view(&self) -> FoldData<'_> {
        FoldData {
            train_x: &self.train_x,
            train_y: &self.train_y,
            test_x: &self.test_x,
            test_y: &self.test_y,
        }
    }
}

fn materialize_fold(dataset: &Dataset, split: &CvSplit, fold: usize) -> FoldOwned {
    let train_rows = split.training_rows(fold);
    let test_rows = split.test_rows(fold);
    FoldOwned {
        train_x: train_rows.iter().map(|&r| dataset.x[r].clone()).collect(),
        train_y: train_rows.iter().map(|&r| dataset.y[r]).collect(),
        test_x: test_rows.iter().map(|&r| dataset.x[r].clone()).collect(),
        test_y: test_rows.iter().map(|&r| dataset.y[r]).collect(),
    }
}

/// Runs one cell of the benchmark on a fixed projected dataset: splits
/// it, simulates the strategy on the given fold, and records the curve.
/// Curve lengths are equalized across folds (capped by the smallest
/// training fold), so curves can be averaged position by position.
pub fn run_learning_curve(
    plan: &ExperimentPlan,
    dataset: &Dataset,
    strategy: StrategyKind,
    fold: usize,
    repeat: usize,
) -> Result<LearningCurve> {
    plan.validate()?;
    if fold >= plan.folds {
        return Err(Error::Invalid(alloc::format!(
            "fold {fold} out of range for {} folds",
            plan.folds
        )));
    }
    let split = cv_split(&dataset.y, plan.folds, plan.cv_seed(&dataset.name))?;
    let max_len = plan.max_iters.min(split.min_training_size());
    let data = materialize_fold(dataset, &split, fold);
    let accuracies = run_fold(
        &data.view(),
        &[],
        strategy,
        plan.delta,
        max_len,
        plan.run_seed(&dataset.name, strategy, fold, repeat),
    )?;
    Ok(LearningCurve {
        dataset: dataset.name.clone(),
        strategy,
        fold,
        repeat,
        accuracies,
    })
}

/// Accuracy of the classifier trained on one fully labeled fold.
pub fn fold_accuracy(
    train_x: &[Vec<f64>],
    train_y: &[Class],
    test_x: &[Vec<f64>],
    test_y: &[Class],
    delta: f64,
) -> Result<f64> {
    if test_x.is_empty() {
        return Err(Error::EmptyInput(String::from("test fold")));
    }
    let cfg = fold_kernel_config(train_x, delta)?;
    let labeled: Vec<LabeledPoint> = train_x
        .iter()
        .zip(train_y)
        .map(|(x, y)| LabeledPoint {
            x: x.clone(),
            y: *y,
        })
        .collect();
    let mut correct = 0usize;
    for (x, y) in test_x.iter().zip(test_y) {
        if kde::predict(x, &labeled, &cfg)? == *y {
            correct += 1;
        }
    }
    Ok(correct as f64 / test_y.len() as f64)
}

/// Reference accuracy with everything labeled: the mean of the per-fold
/// accuracies with each training fold fully labeled.
pub fn full_data_accuracy(dataset: &Dataset, folds: usize, seed: u64, delta: f64) -> Result<f64> {
    let split = cv_split(&dataset.y, folds, seed)?;
    full_data_accuracy_with_split(dataset, &split, delta)
}

fn full_data_accuracy_with_split(dataset: &Dataset, split: &CvSplit, delta: f64) -> Result<f64> {
    let mut sum = 0.0;
    for fold in 0..split.folds {
        let data = materialize_fold(dataset, split, fold);
        sum += fold_accuracy(
            &data.train_x,
            &data.train_y,
            &data.test_x,
            &data.test_y,
            delta,
        )?;
    }
    Ok(sum / split.folds as f64)
}

/// Position-wise mean of equal-length curves.
pub fn mean_curve(curves: &[&[f64]]) -> Result<Vec<f64>> {
    let first = curves
        .first()
        .ok_or_else(|| Error::EmptyInput(String::from("curve set")))?;
    let len = first.len();
    for c in curves {
        if c.len() != len {
            return Err(Error::Invalid(String::from(
                "curves must have identical lengths before truncation",
            )));
        }
    }
    Ok((0..len)
        .map(|t| curves.iter().map(|c| c[t]).sum::<f64>() / curves.len() as f64)
        .collect())
}

/// Scoring depth: the first iteration at which the worst strategy's mean
/// curve reaches [`TRUNCATION_FRACTION`] of the full-data accuracy,
/// capped at [`TRUNCATION_CAP`] and at the shortest curve. If the
/// threshold is never reached the cap applies.
pub fn truncation_point(mean_curves: &[Vec<f64>], full_accuracy: f64) -> Result<usize> {
    if mean_curves.is_empty() {
        return Err(Error::EmptyInput(String::from("mean curves")));
    }
    let shortest = mean_curves.iter().map(Vec::len).min().unwrap_or(0);
    if shortest == 0 {
        return Err(Error::EmptyInput(String::from("mean curve entries")));
    }
    let cap = TRUNCATION_CAP.min(shortest);
    let threshold = TRUNCATION_FRACTION * full_accuracy;
    for t in 0..cap {
        let worst = mean_curves
            .iter()
            .map(|c| c[t])
            .fold(f64::INFINITY, f64::min);
        if worst >= threshold {
            return Ok(t + 1);
        }
    }
    Ok(cap)
}

/// Area under the learning curve: the mean accuracy over labeled-set
/// sizes `1..=t`.
pub fn alc(curve: &[f64], t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::Invalid(String::from(
            "truncation point must be at least 1",
        )));
    }
    if t > curve.len() {
        return Err(Error::Invalid(alloc::format!(
            "truncation {t} exceeds curve length {}",
            curve.len()
        )));
    }
    Ok(curve[..t].iter().sum::<f64>() / t as f64)
}

/// Per-(dataset, strategy) summary of the truncated curves.
#[derive(Debug, Clone, PartialEq)]
pub struct AlcSummary {
    pub dataset: String,
    pub strategy: StrategyKind,
    pub truncation: usize,
    pub alc_mean: f64,
    pub alc_std: f64,
    pub full_accuracy: f64,
}

/// Everything the benchmark produces for one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetOutcome {
    pub curves: Vec<LearningCurve>,
    pub summaries: Vec<AlcSummary>,
    pub truncation: usize,
    pub full_accuracy: f64,
}

/// Aggregates finished curves into per-strategy summaries: mean curves,
/// the shared truncation point, and ALC mean/std per strategy.
pub fn summarize_dataset(
    plan: &ExperimentPlan,
    dataset_name: &str,
    curves: Vec<LearningCurve>,
    full_accuracy: f64,
) -> Result<DatasetOutcome> {
    let mut mean_curves = Vec::with_capacity(plan.strategies.len());
    for &strategy in &plan.strategies {
        let slices: Vec<&[f64]> = curves
            .iter()
            .filter(|c| c.strategy == strategy)
            .map(|c| c.accuracies.as_slice())
            .collect();
        mean_curves.push(mean_curve(&slices)?);
    }
    let truncation = truncation_point(&mean_curves, full_accuracy)?;

    let mut summaries = Vec::with_capacity(plan.strategies.len());
    for &strategy in &plan.strategies {
        let alcs: Vec<f64> = curves
            .iter()
            .filter(|c| c.strategy == strategy)
            .map(|c| alc(&c.accuracies, truncation))
            .collect::<Result<_>>()?;
        let mean = alcs.iter().sum::<f64>() / alcs.len() as f64;
        let std = if alcs.len() > 1 {
            (alcs.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (alcs.len() - 1) as f64)
                .sqrt()
        } else {
            0.0
        };
        summaries.push(AlcSummary {
            dataset: String::from(dataset_name),
            strategy,
            truncation,
            alc_mean: mean,
            alc_std: std,
            full_accuracy,
        });
    }
    Ok(DatasetOutcome {
        curves,
        summaries,
        truncation,
        full_accuracy,
    })
}

/// Runs the whole protocol on one fixed projected dataset, sequentially.
pub fn run_dataset(plan: &ExperimentPlan, dataset: &Dataset) -> Result<DatasetOutcome> {
    plan.validate()?;
    let split = cv_split(&dataset.y, plan.folds, plan.cv_seed(&dataset.name))?;
    let full_accuracy = full_data_accuracy_with_split(dataset, &split, plan.delta)?;
    let mut curves = Vec::new();
    for &strategy in &plan.strategies {
        for fold in 0..plan.folds {
            for repeat in 0..plan.repeats_for(strategy) {
                curves.push(run_learning_curve(plan, dataset, strategy, fold, repeat)?);
            }
        }
    }
    summarize_dataset(plan, &dataset.name, curves, full_accuracy)
}

/// Default blob spread of the XOR scenario.
pub const XOR_DEFAULT_SPREAD: f64 = 0.35;

/// Quadrant of a 2-D point by coordinate signs:
/// `0: (+,+), 1: (−,+), 2: (−,−), 3: (+,−)`.
pub fn quadrant(x: &[f64]) -> usize {
    match (x[0] >= 0.0, x[1] >= 0.0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// The XOR scenario: four Gaussian blobs at `(±1, ±1)`, diagonal blobs
/// sharing a class, plus a 10-point starting configuration labeled in
/// only three of the four quadrants (quadrant 0 is left empty). The
/// nearest labeled evidence then predicts the empty quadrant wrong with
/// a deceptively confident evidence ratio.
#[derive(Debug, Clone)]
pub struct XorScenario {
    pub train: Dataset,
    pub test: Dataset,
    /// Starting labeled configuration: indices into `train`.
    pub initial_labeled: Vec<usize>,
    /// The quadrant with no initial labels (always 0).
    pub empty_quadrant: usize,
}

const XOR_CENTERS: [(f64, f64); 4] = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];

fn xor_class(q: usize) -> Class {
    if q % 2 == 0 {
        Class::Pos
    } else {
        Class::Neg
    }
}

fn xor_sample(per_quadrant: usize, spread: f64, seed: u64, name: &str) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = rand_distr::Normal::new(0.0, spread)
        .map_err(|_| Error::Domain(alloc::format!("invalid spread {spread}")))?;
    let mut x = Vec::with_capacity(4 * per_quadrant);
    let mut y = Vec::with_capacity(4 * per_quadrant);
    for (q, (cx, cy)) in XOR_CENTERS.iter().enumerate() {
        for _ in 0..per_quadrant {
            x.push(vec![
                cx + noise.sample(&mut rng),
                cy + noise.sample(&mut rng),
            ]);
            y.push(xor_class(q));
        }
    }
    Dataset::new(String::from(name), x, y)
}

/// Generates the XOR scenario: train and test sets of `4 · per_quadrant`
/// points each, and the 3-quadrant starting labels (four from quadrant
/// 2, three each from quadrants 1 and 3).
pub fn xor_dataset(per_quadrant: usize, spread: f64, seed: u64) -> Result<XorScenario> {
    if per_quadrant < 10 {
        return Err(Error::Invalid(alloc::format!(
            "need at least 10 points per quadrant, got {per_quadrant}"
        )));
    }
    let train = xor_sample(
        per_quadrant,
        spread,
        mix_seed(seed, &[TAG_XOR_TRAIN]),
        "xor-train",
    )?;
    let test = xor_sample(
        per_quadrant,
        spread,
        mix_seed(seed, &[TAG_XOR_TEST]),
        "xor-test",
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[TAG_XOR_INIT]));
    let mut initial_labeled = Vec::with_capacity(10);
    for (q, count) in [(2usize, 4usize), (1, 3), (3, 3)] {
        let base = q * per_quadrant;
        let picks = rand::seq::index::sample(&mut rng, per_quadrant, count);
        for p in picks.iter() {
            initial_labeled.push(base + p);
        }
    }
    initial_labeled.sort_unstable();
    Ok(XorScenario {
        train,
        test,
        initial_labeled,
        empty_quadrant: 0,
    })
}

impl XorScenario {
    fn fold(&self) -> FoldData<'_> {
        FoldData {
            train_x: &self.train.x,
            train_y: &self.train.y,
            test_x: &self.test.x,
            test_y: &self.test.y,
        }
    }

    /// The first query a strategy makes from the starting configuration.
    pub fn first_query(&self, strategy: StrategyKind, delta: f64, seed: u64) -> Result<usize> {
        let cfg = fold_kernel_config(&self.train.x, delta)?;
        let mut state = PoolState::from_fold(cfg, self.train.x.to_vec())?;
        for &idx in &self.initial_labeled {
            state.add_label(idx, self.train.y[idx])?;
        }
        Selector::new(strategy, seed).select(&state)
    }

    /// Learning curve of a strategy starting from the 10-label
    /// configuration; accuracies are recorded per new acquisition.
    pub fn run(
        &self,
        strategy: StrategyKind,
        delta: f64,
        max_iters: usize,
        seed: u64,
    ) -> Result<Vec<f64>> {
        run_fold(
            &self.fold(),
            &self.initial_labeled,
            strategy,
            delta,
            max_iters,
            seed,
        )
    }
}
