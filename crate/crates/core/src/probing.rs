//! Class prior estimation by probing with cost-sensitive classifiers.
//!
//! For costs t on a grid 0 = t₀ < t₁ < … < tₙ < 1, the weighted
//! classification loss of a predicted-positive region H is
//!
//! ```text
//! L(H, t) = (1−t)·P[positive ∧ Hᶜ] + t·P[negative ∧ H]
//! ```
//!
//! whose population minimizer is {posterior > t}. The algorithm:
//!
//! 1. fit a nearly optimal classifier H(tᵢ) per grid cost ([`fit_ensemble`]);
//! 2. aggregate them into Z = Σ (tᵢ − tᵢ₋₁)·1_{H(tᵢ)}, a step
//!    approximation of the posterior;
//! 3. wherever thresholding Z beats a fitted classifier, replace it, and
//!    repeat until no replacement helps ([`refine`]);
//! 4. read the estimate off the target sample as
//!    q̂ = Σ (tᵢ − tᵢ₋₁)·Q̂[H(tᵢ)] ([`estimate_prior`]) — a Riemann sum of
//!    ∫ Q[posterior > t] dt = E_Q[posterior], so with the exact posterior
//!    family q̂ matches the probability average up to the grid spacing.
//!
//! Classifiers here are covariate thresholds, which is the Bayes family for
//! the binormal testbed; [`LossEvaluator`] scores them either from the
//! analytic model or from a labeled sample.

use crate::binormal::{posterior_inverse, BinormalParams};
use crate::error::{Error, Result};
use crate::estimators::ThresholdClassifier;
use crate::samples::{LabeledSample, UnlabeledSample};

/// Strictly increasing costs 0 = t₀ < t₁ < … < tₙ < 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CostGrid {
    levels: Vec<f64>,
}

impl CostGrid {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidCostGrid(
                "need at least t0 = 0 and one positive cost".into(),
            ));
        }
        if levels[0] != 0.0 {
            return Err(Error::InvalidCostGrid(format!(
                "grid must start at 0, got {}",
                levels[0]
            )));
        }
        if levels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidCostGrid("costs must be strictly increasing".into()));
        }
        let last = *levels.last().unwrap();
        if !(last < 1.0) {
            return Err(Error::InvalidCostGrid(format!(
                "largest cost must stay below 1, got {last}"
            )));
        }
        Ok(Self { levels })
    }

    /// Uniform grid tᵢ = i·t_max/n for i = 0..=n.
    pub fn uniform(n: usize, t_max: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCostGrid("need at least one cost".into()));
        }
        if !(t_max > 0.0 && t_max < 1.0) {
            return Err(Error::InvalidCostGrid(format!(
                "t_max must lie in (0,1), got {t_max}"
            )));
        }
        Self::new((0..=n).map(|i| i as f64 * t_max / n as f64).collect())
    }

    /// All grid levels including t₀ = 0.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Number of positive costs (and classifiers).
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    /// The cost tᵢ for classifier index i (0-based: cost(0) = t₁).
    pub fn cost(&self, index: usize) -> f64 {
        self.levels[index + 1]
    }

    /// The weights tᵢ − tᵢ₋₁, one per classifier.
    pub fn deltas(&self) -> Vec<f64> {
        self.levels.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_spacing(&self) -> f64 {
        self.levels
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    pub fn t_max(&self) -> f64 {
        *self.levels.last().unwrap()
    }
}

/// Joint class/covariate probabilities for scoring threshold classifiers,
/// either from the analytic binormal model or from a labeled sample.
#[derive(Debug, Clone)]
pub enum LossEvaluator {
    Analytic(BinormalParams),
    Empirical(EmpiricalJoint),
}

impl LossEvaluator {
    pub fn analytic(params: BinormalParams) -> Self {
        Self::Analytic(params)
    }

    pub fn empirical(source: &LabeledSample) -> Self {
        Self::Empirical(EmpiricalJoint::from_sample(source))
    }

    fn backend_name(&self) -> &'static str {
        match self {
            Self::Analytic(_) => "analytic",
            Self::Empirical(_) => "empirical",
        }
    }

    /// P[positive ∧ X ≤ c] — the mass a threshold-c classifier misses.
    pub fn missed_positive_mass(&self, c: f64) -> f64 {
        match self {
            Self::Analytic(params) => {
                params.p * crate::normal::norm_cdf((c - params.nu) / params.sigma)
            }
            Self::Empirical(joint) => joint.positives_at_or_below(c) as f64 / joint.len() as f64,
        }
    }

    /// P[negative ∧ X > c] — the mass a threshold-c classifier flags.
    pub fn flagged_negative_mass(&self, c: f64) -> f64 {
        match self {
            Self::Analytic(params) => {
                (1.0 - params.p) * crate::normal::norm_cdf_c((c - params.mu) / params.sigma)
            }
            Self::Empirical(joint) => {
                (joint.total_negatives() - joint.negatives_at_or_below(c)) as f64
                    / joint.len() as f64
            }
        }
    }
}

/// Sorted labeled sample with prefix class counts; answers joint
/// class/threshold queries in O(log n).
#[derive(Debug, Clone)]
pub struct EmpiricalJoint {
    xs: Vec<f64>,
    pos_prefix: Vec<usize>,
}

impl EmpiricalJoint {
    fn from_sample(source: &LabeledSample) -> Self {
        let mut pairs: Vec<(f64, u8)> = source.pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let xs: Vec<f64> = pairs.iter().map(|&(x, _)| x).collect();
        let mut pos_prefix = Vec::with_capacity(xs.len() + 1);
        pos_prefix.push(0);
        let mut acc = 0usize;
        for &(_, y) in &pairs {
            acc += y as usize;
            pos_prefix.push(acc);
        }
        Self { xs, pos_prefix }
    }

    fn len(&self) -> usize {
        self.xs.len()
    }

    fn rank(&self, c: f64) -> usize {
        self.xs.partition_point(|&x| x <= c)
    }

    fn positives_at_or_below(&self, c: f64) -> usize {
        self.pos_prefix[self.rank(c)]
    }

    fn negatives_at_or_below(&self, c: f64) -> usize {
        let r = self.rank(c);
        r - self.pos_prefix[r]
    }

    fn total_positives(&self) -> usize {
        *self.pos_prefix.last().unwrap()
    }

    fn total_negatives(&self) -> usize {
        self.len() - self.total_positives()
    }

    /// Distinct covariate values, ascending.
    fn unique_values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &x in &self.xs {
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
        out
    }
}

/// Cost-sensitive classification loss
/// L(H, t) = (1−t)·P[positive ∧ Hᶜ] + t·P[negative ∧ H].
pub fn weighted_loss(h: &ThresholdClassifier, t: f64, src: &LossEvaluator) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidCostGrid(format!(
            "cost must lie in [0,1], got {t}"
        )));
    }
    Ok((1.0 - t) * src.missed_positive_mass(h.threshold)
        + t * src.flagged_negative_mass(h.threshold))
}

/// How the per-cost classifiers are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierFamily {
    /// Exact posterior thresholds {posterior > tᵢ}; needs the analytic
    /// backend.
    Bayes,
    /// Best threshold from a sweep over the sample values; needs the
    /// empirical backend.
    EmpiricalThreshold,
}

impl ClassifierFamily {
    fn name(&self) -> &'static str {
        match self {
            Self::Bayes => "bayes",
            Self::EmpiricalThreshold => "empirical-threshold",
        }
    }
}

/// One classifier per positive grid cost plus the aggregate score
/// Z(x) = Σ (tᵢ − tᵢ₋₁)·1{x > cᵢ}.
#[derive(Debug, Clone)]
pub struct ProbingEnsemble {
    grid: CostGrid,
    classifiers: Vec<ThresholdClassifier>,
}

impl ProbingEnsemble {
    pub fn new(grid: CostGrid, classifiers: Vec<ThresholdClassifier>) -> Result<Self> {
        if classifiers.len() != grid.n() {
            return Err(Error::InvalidStructure(format!(
                "{} classifiers for {} grid costs",
                classifiers.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, classifiers })
    }

    pub fn grid(&self) -> &CostGrid {
        &self.grid
    }

    pub fn classifiers(&self) -> &[ThresholdClassifier] {
        &self.classifiers
    }

    /// The aggregate score, a nondecreasing step function of the covariate
    /// with values in [0, tₙ].
    pub fn z(&self, x: f64) -> f64 {
        self.grid
            .deltas()
            .iter()
            .zip(&self.classifiers)
            .filter(|(_, clf)| clf.predict(x))
            .map(|(delta, _)| delta)
            .sum()
    }

    /// The covariate threshold c with {Z > t} = {x > c}; +∞ when Z never
    /// exceeds t.
    fn z_threshold(&self, t: f64) -> f64 {
        let mut jumps: Vec<(f64, f64)> = self
            .classifiers
            .iter()
            .zip(self.grid.deltas())
            .map(|(clf, delta)| (clf.threshold, delta))
            .collect();
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut acc = 0.0;
        for (threshold, delta) in jumps {
            acc += delta;
            if acc > t {
                return threshold;
            }
        }
        f64::INFINITY
    }

    /// Per-classifier losses at their grid costs.
    pub fn per_index_losses(&self, src: &LossEvaluator) -> Result<Vec<f64>> {
        self.classifiers
            .iter()
            .enumerate()
            .map(|(i, clf)| weighted_loss(clf, self.grid.cost(i), src))
            .collect()
    }

    /// Sum of the per-classifier losses.
    pub fn total_loss(&self, src: &LossEvaluator) -> Result<f64> {
        Ok(self.per_index_losses(src)?.iter().sum())
    }
}

/// Fits one nearly loss-minimal classifier per positive grid cost.
pub fn fit_ensemble(
    grid: &CostGrid,
    src: &LossEvaluator,
    family: ClassifierFamily,
) -> Result<ProbingEnsemble> {
    let classifiers = match (family, src) {
        (ClassifierFamily::Bayes, LossEvaluator::Analytic(params)) => (0..grid.n())
            .map(|i| ThresholdClassifier::new(posterior_inverse(params, grid.cost(i))))
            .collect(),
        (ClassifierFamily::EmpiricalThreshold, LossEvaluator::Empirical(joint)) => {
            let mut candidates = vec![f64::NEG_INFINITY];
            candidates.extend(joint.unique_values());
            (0..grid.n())
                .map(|i| best_threshold(&candidates, grid.cost(i), src))
                .collect::<Result<Vec<_>>>()?
        }
        (family, src) => {
            return Err(Error::FamilyBackendMismatch {
                family: family.name(),
                backend: src.backend_name(),
            })
        }
    };
    ProbingEnsemble::new(grid.clone(), classifiers)
}

/// Loss-minimizing candidate threshold; ties go to the larger threshold
/// (the smaller predicted-positive region).
fn best_threshold(candidates: &[f64], t: f64, src: &LossEvaluator) -> Result<ThresholdClassifier> {
    let mut best = ThresholdClassifier::new(f64::NEG_INFINITY);
    let mut best_loss = f64::INFINITY;
    for &c in candidates {
        let clf = ThresholdClassifier::new(c);
        let loss = weighted_loss(&clf, t, src)?;
        if loss <= best_loss {
            best_loss = loss;
            best = clf;
        }
    }
    Ok(best)
}

/// Replacements must beat the incumbent loss by more than this to count,
/// which guarantees termination on backends with finitely many loss values.
pub const IMPROVEMENT_EPS: f64 = 1e-12;

/// Result of the replacement loop.
#[derive(Debug, Clone)]
pub struct RefineOutcome {
    pub ensemble: ProbingEnsemble,
    /// Full passes over the grid that were run.
    pub iterations: usize,
    /// Whether a pass with no replacement was reached within the budget.
    pub converged: bool,
    /// Classifiers replaced in total.
    pub replacements: usize,
    /// Losses of the final classifiers at their grid costs.
    pub per_index_losses: Vec<f64>,
}

/// Iterates the aggregate-and-replace step: recompute Z, and for every j
/// where thresholding Z at tⱼ beats the current classifier by more than
/// [`IMPROVEMENT_EPS`], swap it in. Stops after a pass with no replacement
/// (converged) or after `max_iter` passes. Per-index losses never increase,
/// so the total loss is non-increasing.
pub fn refine(
    ens: &ProbingEnsemble,
    src: &LossEvaluator,
    max_iter: usize,
) -> Result<RefineOutcome> {
    let mut current = ens.clone();
    let mut iterations = 0;
    let mut converged = false;
    let mut replacements = 0;
    while iterations < max_iter {
        iterations += 1;
        let snapshot = current.clone();
        let mut replaced = false;
        for j in 0..current.grid.n() {
            let t_j = current.grid.cost(j);
            let candidate = ThresholdClassifier::new(snapshot.z_threshold(t_j));
            let candidate_loss = weighted_loss(&candidate, t_j, src)?;
            let incumbent_loss = weighted_loss(&current.classifiers[j], t_j, src)?;
            if candidate_loss < incumbent_loss - IMPROVEMENT_EPS {
                current.classifiers[j] = candidate;
                replaced = true;
                replacements += 1;
            }
        }
        if !replaced {
            converged = true;
            break;
        }
    }
    let per_index_losses = current.per_index_losses(src)?;
    Ok(RefineOutcome {
        ensemble: current,
        iterations,
        converged,
        replacements,
        per_index_losses,
    })
}

/// The estimate and the per-classifier target frequencies behind it.
#[derive(Debug, Clone)]
pub struct PriorEstimate {
    /// q̂ = Σ (tᵢ − tᵢ₋₁)·Q̂[H(tᵢ)], always in [0, tₙ].
    pub q_hat: f64,
    pub per_index_target_freq: Vec<f64>,
}

/// Evaluates the ensemble's Riemann sum on the target sample.
pub fn estimate_prior(ens: &ProbingEnsemble, target: &UnlabeledSample) -> PriorEstimate {
    let mut xs = target.values().to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    let per_index_target_freq: Vec<f64> = ens
        .classifiers
        .iter()
        .map(|clf| (xs.len() - xs.partition_point(|&x| x <= clf.threshold)) as f64 / m)
        .collect();
    let q_hat = ens
        .grid
        .deltas()
        .iter()
        .zip(&per_index_target_freq)
        .map(|(delta, freq)| delta * freq)
        .sum();
    PriorEstimate {
        q_hat,
        per_index_target_freq,
    }
}

/// Everything the full pipeline produces: the estimate, the refinement
/// trace and the per-index diagnostics.
#[derive(Debug, Clone)]
pub struct ProbingResult {
    pub ensemble: ProbingEnsemble,
    pub q_hat: f64,
    pub iterations: usize,
    pub converged: bool,
    pub per_index_losses: Vec<f64>,
    pub per_index_target_freq: Vec<f64>,
}

impl ProbingResult {
    /// The summary row `q_hat,iterations,converged`.
    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.q_hat, self.iterations, self.converged)
    }

    /// Per-index rows `i,t_i,loss_i,target_freq_i`.
    pub fn csv_detail_rows(&self) -> String {
        let mut out = String::new();
        for i in 0..self.ensemble.grid().n() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                i + 1,
                self.ensemble.grid().cost(i),
                self.per_index_losses[i],
                self.per_index_target_freq[i]
            ));
        }
        out
    }
}

/// Fit, refine, estimate.
pub fn run_probing(
    grid: &CostGrid,
    src: &LossEvaluator,
    family: ClassifierFamily,
    target: &UnlabeledSample,
    max_iter: usize,
) -> Result<ProbingResult> {
    let fitted = fit_ensemble(grid, src, family)?;
    let refined = refine(&fitted, src, max_iter)?;
    let estimate = estimate_prior(&refined.ensemble, target);
    Ok(ProbingResult {
        ensemble: refined.ensemble,
        q_hat: estimate.q_hat,
        iterations: refined.iterations,
        converged: refined.converged,
        per_index_losses: refined.per_index_losses,
        per_index_target_freq: estimate.per_index_target_freq,
    })
}
