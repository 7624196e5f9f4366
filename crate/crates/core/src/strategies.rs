//! Query-selection strategies over a labeled/unlabeled pool.
//!
//! Four strategies are implemented against the same kernel density
//! classifier:
//!
//! - [`deal_select`] — the distributional strategy: picks the unlabeled
//!   point with the largest training utility value (risk gap times
//!   density). Deterministic; needs no initialization phase because with
//!   an empty labeled set the risk gap is constant and the criterion
//!   reduces to the highest-density point.
//! - [`us_select`] — uncertainty sampling: picks the point whose raw
//!   evidence ratio sits closest to ½, i.e. pure boundary refinement.
//! - [`ers_select`] — error reduction sampling: one-step lookahead over
//!   hypothetical labels, picking the candidate that minimizes the
//!   label-averaged expected pool risk after the update.
//! - [`rs_select`] — uniform random sampling.
//!
//! [`PoolState`] carries per-candidate evidence caches that are updated
//! incrementally as labels arrive (one kernel summand per new label), so
//! per-iteration selection stays cheap even for the lookahead strategy.
//! Densities are estimated once per fold and never change. All ties break
//! to the lowest pool index, and the seeded strategies draw from an
//! explicit generator, so a whole run is reproducible from its seeds.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kde::{density_estimate, Class, ClassEvidence, KernelConfig, LabeledPoint};
use crate::risk;

/// Default candidate/evaluation subsample size for error reduction
/// sampling. Exact lookahead is quadratic in the pool size; 250 keeps a
/// 20k-point pool tractable while leaving small pools exact.
pub const DEFAULT_ERS_SUBSAMPLE: usize = 250;

/// Which query strategy to run, with strategy-specific parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Random,
    Uncertainty,
    ErrorReduction {
        candidate_subsample: usize,
        eval_subsample: usize,
    },
    Deal,
}

impl StrategyKind {
    /// Error reduction sampling with the default subsample sizes.
    pub fn ers_default() -> Self {
        StrategyKind::ErrorReduction {
            candidate_subsample: DEFAULT_ERS_SUBSAMPLE,
            eval_subsample: DEFAULT_ERS_SUBSAMPLE,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Random => "rs",
            StrategyKind::Uncertainty => "us",
            StrategyKind::ErrorReduction { .. } => "ers",
            StrategyKind::Deal => "deal",
        }
    }

    /// Whether the strategy consumes randomness (selection or
    /// initialization). Only the distributional strategy is fully
    /// deterministic and can run from the very first query.
    pub fn is_seeded(&self) -> bool {
        !matches!(self, StrategyKind::Deal)
    }

    /// Stable tag for seed derivation.
    pub fn tag(&self) -> u64 {
        match self {
            StrategyKind::Random => 1,
            StrategyKind::Uncertainty => 2,
            StrategyKind::ErrorReduction { .. } => 3,
            StrategyKind::Deal => 4,
        }
    }
}

/// An unlabeled pool member: its stable index within the training fold,
/// coordinates, cached kernel evidence against the current labeled set,
/// and the fold density estimate (computed once, immutable).
#[derive(Debug, Clone)]
pub struct PoolPoint {
    index: usize,
    x: Vec<f64>,
    evidence: ClassEvidence,
    density: f64,
}

impl PoolPoint {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn evidence(&self) -> ClassEvidence {
        self.evidence
    }

    pub fn density(&self) -> f64 {
        self.density
    }
}

/// Partition of a training fold into labeled and unlabeled points.
///
/// Hidden labels live with the caller (the harness reveals one per
/// query); strategies only ever see evidence from already-revealed
/// labels. Adding a label updates every cached evidence with a single
/// kernel summand, which by additivity of the evidence sum is exact.
#[derive(Debug, Clone)]
pub struct PoolState {
    cfg: KernelConfig,
    labeled: Vec<LabeledPoint>,
    unlabeled: Vec<PoolPoint>,
}

impl PoolState {
    /// Builds the pool over a full training fold, all points unlabeled.
    /// Densities are estimated once from the entire fold (labeled and
    /// unlabeled points alike, since labeling does not move a point).
    pub fn from_fold(cfg: KernelConfig, points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput(String::from("training fold")));
        }
        let mut unlabeled = Vec::with_capacity(points.len());
        for (index, x) in points.iter().enumerate() {
            let density = density_estimate(x, &points, &cfg)?;
            unlabeled.push(PoolPoint {
                index,
                x: x.clone(),
                evidence: ClassEvidence::default(),
                density,
            });
        }
        Ok(Self {
            cfg,
            labeled: Vec::new(),
            unlabeled,
        })
    }

    pub fn cfg(&self) -> &KernelConfig {
        &self.cfg
    }

    pub fn labeled(&self) -> &[LabeledPoint] {
        &self.labeled
    }

    /// Unlabeled points in ascending index order.
    pub fn unlabeled(&self) -> &[PoolPoint] {
        &self.unlabeled
    }

    pub fn is_exhausted(&self) -> bool {
        self.unlabeled.is_empty()
    }

    pub fn has_both_classes(&self) -> bool {
        let mut pos = false;
        let mut neg = false;
        for lp in &self.labeled {
            match lp.y {
                Class::Pos => pos = true,
                Class::Neg => neg = true,
            }
        }
        pos && neg
    }

    /// Reveals the label of an unlabeled point, moving it into the
    /// labeled set and updating every remaining evidence cache.
    pub fn add_label(&mut self, index: usize, class: Class) -> Result<()> {
        let slot = self
            .unlabeled
            .iter()
            .position(|p| p.index == index)
            .ok_or_else(|| {
                Error::Invalid(alloc::format!("index {index} is not in the unlabeled pool"))
            })?;
        let point = self.unlabeled.remove(slot);
        for p in &mut self.unlabeled {
            let w = self.cfg.evidence_weight(&p.x, &point.x)?;
            p.evidence.add(class, w);
        }
        self.labeled.push(LabeledPoint {
            x: point.x,
            y: class,
        });
        Ok(())
    }
}

fn empty_pool() -> Error {
    Error::EmptyInput(String::from("unlabeled pool"))
}

/// Distributional selection: the unlabeled index with the largest
/// training utility value; ties break to the lowest index.
pub fn deal_select(state: &PoolState) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for p in state.unlabeled() {
        let breakdown = risk::tuv(state.cfg().posterior(p.evidence), p.density)?;
        if best.map_or(true, |(score, _)| breakdown.tuv > score) {
            best = Some((breakdown.tuv, p.index));
        }
    }
    best.map(|(_, i)| i).ok_or_else(empty_pool)
}

/// Uncertainty sampling: the unlabeled index whose evidence ratio
/// `k_pos / (k_pos + k_neg)` is closest to ½; ties break to the lowest
/// index.
///
/// The margin uses the raw evidence ratio rather than the regularized
/// point estimate: boundary refinement must rank a point with strong
/// one-sided evidence as confident even when the absolute evidence is
/// small, which the regularizer would mask. A point with no evidence at
/// all gets the maximal margin ½ — it is nowhere near the boundary.
pub fn us_select(state: &PoolState) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for p in state.unlabeled() {
        let ev = p.evidence();
        let total = ev.total();
        let margin = if total > 0.0 {
            (ev.pos / total - 0.5).abs()
        } else {
            0.5
        };
        if best.map_or(true, |(m, _)| margin < m) {
            best = Some((margin, p.index));
        }
    }
    best.map(|(_, i)| i).ok_or_else(empty_pool)
}

/// Error reduction sampling: over a seeded candidate subsample, pick the
/// index minimizing the label-expected post-update pool risk
///
/// ```text
/// Σ_y q̄(y|x) · mean over eval points u of min(q̄⁺(+1|u), 1 − q̄⁺(+1|u))
/// ```
///
/// where `q̄⁺` is the point estimate after hypothetically adding `(x, y)`.
/// The evaluation set is a seeded permutation prefix of the pool minus
/// the candidate itself; with subsamples covering the whole pool this is
/// the exact lookahead. Ties break to the lowest index.
pub fn ers_select(
    state: &PoolState,
    rng: &mut ChaCha8Rng,
    candidate_subsample: usize,
    eval_subsample: usize,
) -> Result<usize> {
    if candidate_subsample == 0 || eval_subsample == 0 {
        return Err(Error::Invalid(String::from(
            "ERS subsample sizes must be at least 1",
        )));
    }
    let u = state.unlabeled();
    if u.is_empty() {
        return Err(empty_pool());
    }
    if u.len() == 1 {
        return Ok(u[0].index);
    }

    let cand_n = candidate_subsample.min(u.len());
    let mut cand_slots: Vec<usize> = rand::seq::index::sample(rng, u.len(), cand_n).into_vec();
    // ascending slot order makes the strict-less comparison break ties
    // toward the lowest pool index
    cand_slots.sort_unstable();
    let perm: Vec<usize> = rand::seq::index::sample(rng, u.len(), u.len()).into_vec();
    let eval_take = eval_subsample.min(u.len() - 1);

    let cfg = state.cfg();
    let delta = cfg.delta();
    let mut best: Option<(f64, usize)> = None;
    for slot in cand_slots {
        let cand = &u[slot];
        let q_pos = cfg.point_estimate(cand.evidence);
        let mut risk_pos = 0.0;
        let mut risk_neg = 0.0;
        let mut taken = 0usize;
        for &e_slot in &perm {
            if e_slot == slot {
                continue;
            }
            if taken == eval_take {
                break;
            }
            taken += 1;
            let e = &u[e_slot];
            let w = cfg.evidence_weight(&e.x, &cand.x)?;
            let total = 2.0 * delta + e.evidence.total() + w;
            let q_if_pos = (delta + e.evidence.pos + w) / total;
            let q_if_neg = (delta + e.evidence.pos) / total;
            risk_pos += q_if_pos.min(1.0 - q_if_pos);
            risk_neg += q_if_neg.min(1.0 - q_if_neg);
        }
        let scale = taken as f64;
        let score = (q_pos * risk_pos + (1.0 - q_pos) * risk_neg) / scale;
        if best.map_or(true, |(s, _)| score < s) {
            best = Some((score, cand.index));
        }
    }
    Ok(best.expect("candidate set is nonempty").1)
}

/// Uniform random selection, deterministic given the generator state.
pub fn rs_select(state: &PoolState, rng: &mut ChaCha8Rng) -> Result<usize> {
    let u = state.unlabeled();
    if u.is_empty() {
        return Err(empty_pool());
    }
    Ok(u[rng.gen_range(0..u.len())].index)
}

/// A strategy bound to its random stream, including the initialization
/// protocol: seeded strategies query uniformly at random until the
/// labeled set contains both classes, then hand over to the strategy
/// proper. The distributional strategy runs from the very first query
/// (on an empty labeled set its criterion is the density alone).
#[derive(Debug, Clone)]
pub struct Selector {
    kind: StrategyKind,
    rng: ChaCha8Rng,
}

impl Selector {
    pub fn new(kind: StrategyKind, seed: u64) -> Self {
        Self {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn select(&mut self, state: &PoolState) -> Result<usize> {
        match self.kind {
            StrategyKind::Deal => deal_select(state),
            _ if !state.has_both_classes() => rs_select(state, &mut self.rng),
            StrategyKind::Random => rs_select(state, &mut self.rng),
            StrategyKind::Uncertainty => us_select(state),
            StrategyKind::ErrorReduction {
                candidate_subsample,
                eval_subsample,
            } => ers_select(state, &mut self.rng, candidate_subsample, eval_subsample),
        }
    }
}
