//! Sample containers for source (labeled) and target (unlabeled) draws.

use crate::error::{Error, Result};

/// I.i.d. draws of (covariate, label) pairs from the source distribution.
#[derive(Debug, Clone)]
pub struct LabeledSample {
    pairs: Vec<(f64, u8)>,
    seed: u64,
}

impl LabeledSample {
    /// Wraps pairs of (covariate, label). Labels must be 0 or 1 and the
    /// sample must be nonempty.
    pub fn new(pairs: Vec<(f64, u8)>, seed: u64) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((x, y)) = pairs.iter().find(|(_, y)| *y > 1) {
            return Err(Error::InvalidStructure(format!(
                "label {y} at covariate {x} is not binary"
            )));
        }
        Ok(Self { pairs, seed })
    }

    pub fn pairs(&self) -> &[(f64, u8)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Seed of the generator that produced the sample (0 for external data).
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Covariates of the positive class.
    pub fn positives(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().filter(|(_, y)| *y == 1).map(|(x, _)| *x)
    }

    /// Covariates of the negative class.
    pub fn negatives(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().filter(|(_, y)| *y == 0).map(|(x, _)| *x)
    }

    /// Fraction of positive labels.
    pub fn label_mean(&self) -> f64 {
        let pos = self.pairs.iter().filter(|(_, y)| *y == 1).count();
        pos as f64 / self.pairs.len() as f64
    }
}

/// I.i.d. covariate draws from the target distribution; labels unobserved.
#[derive(Debug, Clone)]
pub struct UnlabeledSample {
    values: Vec<f64>,
    seed: u64,
}

impl UnlabeledSample {
    pub fn new(values: Vec<f64>, seed: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Self { values, seed })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.values.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n as f64 - 1.0)
    }
}
