//! The equal-variance binormal model and its class prior geometry.
//!
//! The source distribution mixes two normal class-conditionals
//! N(ν, σ²) (positive) and N(μ, σ²) (negative) with positive weight p, so
//! the posterior positive-class probability is logistic in the covariate:
//! η(x) = (1 + exp(a·x + b))⁻¹ with a = (μ−ν)/σ² < 0. The target covariate
//! distribution is N(τ, σ_Q²) with σ_Q chosen to match the source covariate
//! variance.
//!
//! Under covariate shift the target prior is E_Q[η(X)] ([`true_target_prior`]).
//! Discretizing the covariate into {X ≤ x} versus {X > x} and pretending
//! covariate shift still holds for that two-cell information set yields the
//! [`pseudo_prior`] curve, which misses the true prior for every threshold —
//! the information loss breaks covariate shift. [`figure1_curves`] quantifies
//! the companion effect: when the true shift moves the class prior, an
//! estimator that trusts the fixed-p posterior responds with slope
//! m₁ − m₀ < 1.

use crate::error::{Error, Result};
use crate::normal::{norm_cdf, norm_cdf_c};
use crate::quadrature::{gaussian_expectation, QuadratureConfig};
use crate::samples::{LabeledSample, UnlabeledSample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution, Normal};

/// Parameters of the equal-variance binormal model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinormalParams {
    /// Negative-class mean.
    pub mu: f64,
    /// Positive-class mean; must exceed `mu`.
    pub nu: f64,
    /// Shared standard deviation, positive.
    pub sigma: f64,
    /// Source positive-class prior, in (0,1).
    pub p: f64,
    /// Target covariate mean.
    pub tau: f64,
}

impl BinormalParams {
    pub fn new(mu: f64, nu: f64, sigma: f64, p: f64, tau: f64) -> Result<Self> {
        if !(mu < nu) {
            return Err(Error::InvalidParams(format!(
                "class means must satisfy mu < nu, got mu={mu}, nu={nu}"
            )));
        }
        if !(sigma > 0.0) {
            return Err(Error::InvalidParams(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParams(format!(
                "source prior must lie in (0,1), got {p}"
            )));
        }
        if !tau.is_finite() {
            return Err(Error::InvalidParams(format!("tau must be finite, got {tau}")));
        }
        Ok(Self {
            mu,
            nu,
            sigma,
            p,
            tau,
        })
    }

    /// Standard deviation of the target covariate distribution, chosen so
    /// the variance matches the source covariate variance:
    /// σ_Q² = σ² + p(1−p)(μ−ν)².
    pub fn target_sigma(&self) -> f64 {
        (self.sigma * self.sigma
            + self.p * (1.0 - self.p) * (self.mu - self.nu) * (self.mu - self.nu))
            .sqrt()
    }
}

impl Default for BinormalParams {
    /// The worked-example configuration: μ=0, ν=1.5, σ=1, p=0.3, τ=2.5.
    fn default() -> Self {
        Self {
            mu: 0.0,
            nu: 1.5,
            sigma: 1.0,
            p: 0.3,
            tau: 2.5,
        }
    }
}

/// Coefficients of the logistic posterior η(x) = (1 + exp(a·x + b))⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorCoefficients {
    pub a: f64,
    pub b: f64,
}

/// a = (μ−ν)/σ² and b = (ν²−μ²)/(2σ²) + ln((1−p)/p).
pub fn coefficients(params: &BinormalParams) -> PosteriorCoefficients {
    let s2 = params.sigma * params.sigma;
    PosteriorCoefficients {
        a: (params.mu - params.nu) / s2,
        b: (params.nu * params.nu - params.mu * params.mu) / (2.0 * s2)
            + ((1.0 - params.p) / params.p).ln(),
    }
}

/// Posterior positive-class probability η(x) = (1 + exp(a·x + b))⁻¹,
/// strictly increasing in x.
pub fn posterior(params: &BinormalParams, x: f64) -> f64 {
    let PosteriorCoefficients { a, b } = coefficients(params);
    let z = a * x + b;
    if z >= 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

/// The covariate at which the posterior crosses level `t`:
/// x = (ln((1−t)/t) − b)/a. Returns ∓∞ at t = 1 and t = 0.
pub fn posterior_inverse(params: &BinormalParams, t: f64) -> f64 {
    let PosteriorCoefficients { a, b } = coefficients(params);
    (((1.0 - t) / t).ln() - b) / a
}

/// Target positive-class prior under covariate shift:
/// E[η(X)] for X ~ N(τ, σ_Q²), by quadrature.
pub fn true_target_prior(params: &BinormalParams, quad: &QuadratureConfig) -> Result<f64> {
    gaussian_expectation(
        |x| posterior(params, x),
        params.tau,
        params.target_sigma(),
        quad,
    )
}

/// P[positive ∧ X ≤ x] = p·Φ((x−ν)/σ).
fn pos_mass_below(params: &BinormalParams, x: f64) -> f64 {
    params.p * norm_cdf((x - params.nu) / params.sigma)
}

/// P[X ≤ x] under the source covariate mixture.
fn source_mass_below(params: &BinormalParams, x: f64) -> f64 {
    pos_mass_below(params, x) + (1.0 - params.p) * norm_cdf((x - params.mu) / params.sigma)
}

/// Smallest denominator before switching to the analytic limit of a
/// conditional probability.
const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Source posterior of the positive class given {X ≤ x}; tends to 0 as
/// x → −∞.
pub fn class_given_below(params: &BinormalParams, x: f64) -> f64 {
    let below = source_mass_below(params, x);
    if below < DENOMINATOR_FLOOR {
        return 0.0;
    }
    pos_mass_below(params, x) / below
}

/// Source posterior of the positive class given {X > x}; tends to 1 as
/// x → +∞, because the positive class dominates the upper tail.
pub fn class_given_above(params: &BinormalParams, x: f64) -> f64 {
    let pos_above = params.p * norm_cdf_c((x - params.nu) / params.sigma);
    let above = pos_above + (1.0 - params.p) * norm_cdf_c((x - params.mu) / params.sigma);
    if above < DENOMINATOR_FLOOR {
        return 1.0;
    }
    pos_above / above
}

/// The class prior estimate obtained by pretending that covariate shift
/// holds for the two-cell information set {X ≤ x} / {X > x}:
/// Q[X ≤ x]·P[pos | X ≤ x] + Q[X > x]·P[pos | X > x].
///
/// A convex combination of the two source conditionals; equals the true
/// prior only if the discretization were sufficient, which a single
/// threshold on a continuous covariate never is.
pub fn pseudo_prior(params: &BinormalParams, x: f64) -> f64 {
    let q_below = norm_cdf((x - params.tau) / params.target_sigma());
    q_below * class_given_below(params, x) + (1.0 - q_below) * class_given_above(params, x)
}

/// One row of the pseudo-prior-versus-true-prior table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoPriorRow {
    pub x: f64,
    pub pseudo_prior: f64,
    pub true_prior: f64,
}

/// Evaluates [`pseudo_prior`] over a sorted threshold grid next to the
/// constant [`true_target_prior`].
pub fn figure2_curve(
    params: &BinormalParams,
    x_grid: &[f64],
    quad: &QuadratureConfig,
) -> Result<Vec<PseudoPriorRow>> {
    if x_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidStructure("threshold grid must be sorted".into()));
    }
    let true_prior = true_target_prior(params, quad)?;
    Ok(x_grid
        .iter()
        .map(|&x| PseudoPriorRow {
            x,
            pseudo_prior: pseudo_prior(params, x),
            true_prior,
        })
        .collect())
}

/// One row of the estimator-response table under prior probability shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorSweepRow {
    /// True target prior (the mixture weight).
    pub q: f64,
    /// Response of a Fisher-consistent prior-probability-shift estimator:
    /// the identity.
    pub pps_estimate: f64,
    /// Response of averaging the fixed-p posterior over the shifted
    /// covariate distribution: affine with slope m₁ − m₀ < 1.
    pub cs_estimate: f64,
}

/// Class-conditional means of the posterior, m₀ = E[η(X) | negative] and
/// m₁ = E[η(X) | positive].
pub fn posterior_class_means(
    params: &BinormalParams,
    quad: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let m0 = gaussian_expectation(|x| posterior(params, x), params.mu, params.sigma, quad)?;
    let m1 = gaussian_expectation(|x| posterior(params, x), params.nu, params.sigma, quad)?;
    Ok((m0, m1))
}

/// Sweeps the true mixture weight q over `q_grid` and tabulates the
/// identity response against the fixed-posterior average
/// q·m₁ + (1−q)·m₀. The two lines intersect at q = p.
pub fn figure1_curves(
    params: &BinormalParams,
    q_grid: &[f64],
    quad: &QuadratureConfig,
) -> Result<Vec<PriorSweepRow>> {
    if q_grid.iter().any(|&q| !(0.0..=1.0).contains(&q)) {
        return Err(Error::InvalidStructure(
            "mixture weights must lie in [0,1]".into(),
        ));
    }
    let (m0, m1) = posterior_class_means(params, quad)?;
    Ok(q_grid
        .iter()
        .map(|&q| PriorSweepRow {
            q,
            pps_estimate: q,
            cs_estimate: q * m1 + (1.0 - q) * m0,
        })
        .collect())
}

/// Draws n labeled source pairs: label ~ Bernoulli(p), covariate ~
/// N(ν, σ²) given a positive label and N(μ, σ²) otherwise. Deterministic
/// given the seed.
pub fn sample_source(params: &BinormalParams, n: usize, seed: u64) -> Result<LabeledSample> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let label = Bernoulli::new(params.p).expect("validated prior");
    let pos = Normal::new(params.nu, params.sigma).expect("validated sigma");
    let neg = Normal::new(params.mu, params.sigma).expect("validated sigma");
    let pairs = (0..n)
        .map(|_| {
            if label.sample(&mut rng) {
                (pos.sample(&mut rng), 1)
            } else {
                (neg.sample(&mut rng), 0)
            }
        })
        .collect();
    LabeledSample::new(pairs, seed)
}

/// Draws n target covariates from the covariate-shift target N(τ, σ_Q²).
pub fn sample_target_cs(params: &BinormalParams, n: usize, seed: u64) -> Result<UnlabeledSample> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Normal::new(params.tau, params.target_sigma()).expect("validated params");
    UnlabeledSample::new((0..n).map(|_| dist.sample(&mut rng)).collect(), seed)
}

/// Draws n target covariates from the prior-probability-shift target: the
/// source class-conditionals remixed with weight q.
pub fn sample_target_pps(
    params: &BinormalParams,
    q: f64,
    n: usize,
    seed: u64,
) -> Result<UnlabeledSample> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParams(format!(
            "mixture weight must lie in [0,1], got {q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let label = Bernoulli::new(q).expect("validated weight");
    let pos = Normal::new(params.nu, params.sigma).expect("validated sigma");
    let neg = Normal::new(params.mu, params.sigma).expect("validated sigma");
    let values = (0..n)
        .map(|_| {
            if label.sample(&mut rng) {
                pos.sample(&mut rng)
            } else {
                neg.sample(&mut rng)
            }
        })
        .collect();
    UnlabeledSample::new(values, seed)
}
