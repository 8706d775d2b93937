//! Sample-based class prior estimators.
//!
//! All estimators consume an unlabeled target sample and return an
//! [`EstimatorReport`] with the clipped estimate, the raw value and
//! whatever rates the method used:
//!
//! * [`pa_estimate`] — probability average: mean of a posterior over the
//!   target covariates. Consistent under covariate shift with the exact
//!   posterior; responds to prior probability shift with damped slope.
//! * [`cc_estimate`] — classify & count: fraction the classifier calls
//!   positive.
//! * [`acc_estimate`] — adjusted count: (CC − fpr)/(tpr − fpr) with rates
//!   estimated on the labeled source sample. Consistent under prior
//!   probability shift.
//! * [`mean_matching_estimate`] — solves E[X] = qν + (1−q)μ for q; another
//!   prior-probability-shift estimator.
//! * [`discretized_estimate`] — the empirical single-threshold shortcut:
//!   target frequency of {X ≤ x} glued to the analytic source conditionals.
//!   Biased whenever the one-bit discretization is not sufficient.

use crate::binormal::{class_given_above, class_given_below, BinormalParams};
use crate::error::{Error, Result};
use crate::samples::{LabeledSample, UnlabeledSample};

/// Predicts positive exactly when the covariate exceeds the threshold.
/// `±∞` are valid sentinels for the always-negative / always-positive
/// classifiers. Monotone scores reduce to this family by mapping the
/// threshold through the score's inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdClassifier {
    pub threshold: f64,
}

impl ThresholdClassifier {
    pub fn new(threshold: f64) -> Self {
        Self { threshold }
    }

    /// The always-positive classifier.
    pub fn accept_all() -> Self {
        Self::new(f64::NEG_INFINITY)
    }

    /// The always-negative classifier.
    pub fn reject_all() -> Self {
        Self::new(f64::INFINITY)
    }

    pub fn predict(&self, x: f64) -> bool {
        x > self.threshold
    }
}

/// Which estimator produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorMethod {
    ProbabilityAverage,
    ClassifyCount,
    AdjustedCount,
    MeanMatching,
    Discretized,
    Probing,
}

impl EstimatorMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::ProbabilityAverage => "pa",
            Self::ClassifyCount => "cc",
            Self::AdjustedCount => "acc",
            Self::MeanMatching => "mean_matching",
            Self::Discretized => "discretized",
            Self::Probing => "probing",
        }
    }
}

/// A class prior estimate with its diagnostics.
#[derive(Debug, Clone)]
pub struct EstimatorReport {
    pub method: EstimatorMethod,
    /// Estimate clipped to [0,1].
    pub estimate: f64,
    pub n_target: usize,
    /// Set whenever the raw value fell outside [0,1].
    pub clipped: bool,
    /// The unclipped value.
    pub raw: f64,
    /// (tpr, fpr) for rate-adjusted methods.
    pub rates: Option<(f64, f64)>,
}

impl EstimatorReport {
    pub fn from_raw(method: EstimatorMethod, raw: f64, n_target: usize) -> Self {
        let estimate = raw.clamp(0.0, 1.0);
        Self {
            method,
            estimate,
            n_target,
            clipped: estimate != raw,
            raw,
            rates: None,
        }
    }

    /// One CSV row: `method,estimate,n_target,clipped,raw`.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.method.tag(),
            self.estimate,
            self.n_target,
            self.clipped,
            self.raw
        )
    }
}

/// Probability average: the mean of `posterior` over the target covariates.
pub fn pa_estimate<F>(posterior: F, target: &UnlabeledSample) -> EstimatorReport
where
    F: Fn(f64) -> f64,
{
    let mean = target.values().iter().map(|&x| posterior(x)).sum::<f64>() / target.len() as f64;
    EstimatorReport::from_raw(EstimatorMethod::ProbabilityAverage, mean, target.len())
}

/// Classify & count: the fraction of target covariates predicted positive.
pub fn cc_estimate(clf: &ThresholdClassifier, target: &UnlabeledSample) -> EstimatorReport {
    let positives = target.values().iter().filter(|&&x| clf.predict(x)).count();
    EstimatorReport::from_raw(
        EstimatorMethod::ClassifyCount,
        positives as f64 / target.len() as f64,
        target.len(),
    )
}

/// True- and false-positive rates of a classifier on a labeled sample.
pub fn source_rates(clf: &ThresholdClassifier, source: &LabeledSample) -> Result<(f64, f64)> {
    let (mut pos, mut neg, mut tp, mut fp) = (0usize, 0usize, 0usize, 0usize);
    for &(x, y) in source.pairs() {
        if y == 1 {
            pos += 1;
            tp += clf.predict(x) as usize;
        } else {
            neg += 1;
            fp += clf.predict(x) as usize;
        }
    }
    if pos == 0 {
        return Err(Error::MissingClass { class: 1 });
    }
    if neg == 0 {
        return Err(Error::MissingClass { class: 0 });
    }
    Ok((tp as f64 / pos as f64, fp as f64 / neg as f64))
}

/// Smallest rate separation that still counts as informative.
const RATE_GAP_FLOOR: f64 = 1e-6;

/// Adjusted count: (CC − fpr) / (tpr − fpr), clipped to [0,1], with the
/// rates estimated on the full labeled source sample.
pub fn acc_estimate(
    clf: &ThresholdClassifier,
    source: &LabeledSample,
    target: &UnlabeledSample,
) -> Result<EstimatorReport> {
    let (tpr, fpr) = source_rates(clf, source)?;
    if (tpr - fpr).abs() < RATE_GAP_FLOOR {
        return Err(Error::UninformativeClassifier { tpr, fpr });
    }
    let cc = cc_estimate(clf, target).raw;
    let raw = (cc - fpr) / (tpr - fpr);
    let mut report = EstimatorReport::from_raw(EstimatorMethod::AdjustedCount, raw, target.len());
    report.rates = Some((tpr, fpr));
    Ok(report)
}

/// Mean matching: q solving E[X] = qν + (1−q)μ, i.e.
/// (target mean − μ)/(ν − μ), clipped to [0,1].
pub fn mean_matching_estimate(
    params: &BinormalParams,
    target: &UnlabeledSample,
) -> Result<EstimatorReport> {
    if params.nu == params.mu {
        return Err(Error::InvalidParams(
            "mean matching needs distinct class means".into(),
        ));
    }
    let raw = (target.mean() - params.mu) / (params.nu - params.mu);
    Ok(EstimatorReport::from_raw(
        EstimatorMethod::MeanMatching,
        raw,
        target.len(),
    ))
}

/// The empirical single-threshold estimate: target frequency of {X ≤ x}
/// weighted into the analytic source conditionals of the binormal model.
pub fn discretized_estimate(
    params: &BinormalParams,
    x_threshold: f64,
    target: &UnlabeledSample,
) -> EstimatorReport {
    let below = target
        .values()
        .iter()
        .filter(|&&x| x <= x_threshold)
        .count() as f64
        / target.len() as f64;
    let raw = below * class_given_below(params, x_threshold)
        + (1.0 - below) * class_given_above(params, x_threshold);
    EstimatorReport::from_raw(EstimatorMethod::Discretized, raw, target.len())
}
