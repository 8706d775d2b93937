//! The experiment commands behind the subcommands.

use crate::config::RunConfig;
use crate::output::{csv_document, fmt_sig};
use anyhow::{bail, Context, Result};
use covshift_core::binormal::{
    figure1_curves, figure2_curve, posterior, posterior_inverse, sample_source, sample_target_cs,
    sample_target_pps,
};
use covshift_core::estimators::{
    acc_estimate, cc_estimate, discretized_estimate, mean_matching_estimate, pa_estimate,
    EstimatorMethod, EstimatorReport, ThresholdClassifier,
};
use covshift_core::finite_space::theorem_sweep;
use covshift_core::probing::{run_probing, ClassifierFamily, CostGrid, LossEvaluator};
use covshift_core::samples::{LabeledSample, UnlabeledSample};
use std::fs;
use std::path::{Path, PathBuf};

fn write_out(config: &RunConfig, name: &str, header: &str, rows: &[String]) -> Result<PathBuf> {
    fs::create_dir_all(&config.out)
        .with_context(|| format!("creating output directory {}", config.out.display()))?;
    let path = config.out.join(name);
    fs::write(&path, csv_document(header, rows, config.seed))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Writes `figure1.csv`: identity versus fixed-posterior-average response
/// over the mixture weight grid.
pub fn cmd_figure1(config: &RunConfig) -> Result<()> {
    let params = config.params()?;
    let step = config.figure1_q_step;
    if !(step > 0.0 && step <= 1.0) {
        bail!("figure1.q_step must lie in (0,1], got {step}");
    }
    let n = (1.0 / step).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(1.0)).collect();
    let rows = figure1_curves(&params, &grid, &config.quadrature())?;
    let rows: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{}",
                fmt_sig(r.q),
                fmt_sig(r.pps_estimate),
                fmt_sig(r.cs_estimate)
            )
        })
        .collect();
    let path = write_out(config, "figure1.csv", "q,pps_estimate,cs_estimate", &rows)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Writes `figure2.csv`: pseudo-prior curve against the constant true
/// prior over the threshold grid.
pub fn cmd_figure2(config: &RunConfig) -> Result<()> {
    let params = config.params()?;
    let (lo, hi, step) = (
        config.figure2_x_min,
        config.figure2_x_max,
        config.figure2_x_step,
    );
    if step.is_nan() || step <= 0.0 || hi.is_nan() || hi <= lo {
        bail!("figure2 grid needs x_min < x_max and a positive step");
    }
    let n = ((hi - lo) / step).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    let rows = figure2_curve(&params, &grid, &config.quadrature())?;
    let rows: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{}",
                fmt_sig(r.x),
                fmt_sig(r.pseudo_prior),
                fmt_sig(r.true_prior)
            )
        })
        .collect();
    let path = write_out(config, "figure2.csv", "x,pseudo_prior,true_prior", &rows)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Writes `verdicts.csv` and returns whether sufficiency and inheritance
/// agreed on every enumerated case. A disagreement is a falsifier and maps
/// to exit code 2.
pub fn cmd_theorem_check(config: &RunConfig) -> Result<bool> {
    let rows = theorem_sweep(&config.sweep())?;
    let all_agree = rows.iter().all(|r| r.agree());
    let rows: Vec<String> = rows
        .iter()
        .map(|r| format!("{},{},{},{}", r.n, r.sufficient, r.inherited, r.agree()))
        .collect();
    let path = write_out(config, "verdicts.csv", "n,sufficient,inherited,agree", &rows)?;
    eprintln!("wrote {} ({} cases)", path.display(), rows.len());
    if !all_agree {
        eprintln!("sufficiency and inheritance disagreed on at least one case");
    }
    Ok(all_agree)
}

/// Writes `probing.csv` comparing every estimator on a covariate-shift and
/// a prior-probability-shift target, plus per-target probing summaries and
/// per-index dumps.
pub fn cmd_probing(config: &RunConfig) -> Result<()> {
    let params = config.params()?;
    let quad_posterior = |x: f64| posterior(&params, x);
    let seed = config.seed;

    let source = sample_source(&params, config.n_source, seed.wrapping_add(1))?;
    let cs_target = sample_target_cs(&params, config.n_target, seed.wrapping_add(2))?;
    let pps_target = sample_target_pps(
        &params,
        config.probing_pps_weight,
        config.n_target,
        seed.wrapping_add(3),
    )?;

    let split = posterior_inverse(&params, 0.5);
    let clf = ThresholdClassifier::new(split);
    let grid = CostGrid::uniform(config.probing_grid_points, config.probing_t_max)?;
    let src = LossEvaluator::analytic(params);

    let mut rows = Vec::new();
    for (tag, target) in [("cs", &cs_target), ("pps", &pps_target)] {
        let mut push = |r: EstimatorReport| rows.push(format!("{tag},{}", report_row(&r)));
        push(pa_estimate(quad_posterior, target));
        push(cc_estimate(&clf, target));
        push(acc_estimate(&clf, &source, target)?);
        push(mean_matching_estimate(&params, target)?);
        push(discretized_estimate(&params, split, target));

        let probing = run_probing(
            &grid,
            &src,
            ClassifierFamily::Bayes,
            target,
            config.probing_max_iter,
        )?;
        rows.push(format!(
            "{tag},{}",
            report_row(&EstimatorReport::from_raw(
                EstimatorMethod::Probing,
                probing.q_hat,
                target.len(),
            ))
        ));

        write_out(
            config,
            &format!("probing_result_{tag}.csv"),
            "q_hat,iterations,converged",
            &[format!(
                "{},{},{}",
                fmt_sig(probing.q_hat),
                probing.iterations,
                probing.converged
            )],
        )?;
        let detail: Vec<String> = (0..probing.ensemble.grid().n())
            .map(|i| {
                format!(
                    "{},{},{},{}",
                    i + 1,
                    fmt_sig(probing.ensemble.grid().cost(i)),
                    fmt_sig(probing.per_index_losses[i]),
                    fmt_sig(probing.per_index_target_freq[i])
                )
            })
            .collect();
        write_out(
            config,
            &format!("probing_detail_{tag}.csv"),
            "i,t_i,loss_i,target_freq_i",
            &detail,
        )?;
    }

    let path = write_out(
        config,
        "probing.csv",
        "target,method,estimate,n_target,clipped,raw",
        &rows,
    )?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn report_row(r: &EstimatorReport) -> String {
    format!(
        "{},{},{},{},{}",
        r.method.tag(),
        fmt_sig(r.estimate),
        r.n_target,
        r.clipped,
        fmt_sig(r.raw)
    )
}

/// Arguments of the one-shot `estimate` subcommand.
#[derive(Debug)]
pub struct EstimateArgs {
    pub method: String,
    pub target: PathBuf,
    pub source: Option<PathBuf>,
    pub threshold: Option<f64>,
}

/// Runs one estimator on covariates read from files and prints the report
/// CSV to stdout.
pub fn cmd_estimate(config: &RunConfig, args: &EstimateArgs) -> Result<()> {
    let params = config.params()?;
    let target = read_unlabeled(&args.target)?;
    let threshold = || {
        args.threshold
            .with_context(|| format!("method {} needs --threshold", args.method))
    };
    let source = || -> Result<LabeledSample> {
        let path = args
            .source
            .as_ref()
            .with_context(|| format!("method {} needs --source", args.method))?;
        read_labeled(path)
    };

    let report = match args.method.as_str() {
        "pa" => pa_estimate(|x| posterior(&params, x), &target),
        "cc" => cc_estimate(&ThresholdClassifier::new(threshold()?), &target),
        "acc" => acc_estimate(&ThresholdClassifier::new(threshold()?), &source()?, &target)?,
        "mean-matching" => mean_matching_estimate(&params, &target)?,
        "discretized" => discretized_estimate(&params, threshold()?, &target),
        "probing" => {
            let grid = CostGrid::uniform(config.probing_grid_points, config.probing_t_max)?;
            let (src, family) = match &args.source {
                Some(path) => (
                    LossEvaluator::empirical(&read_labeled(path)?),
                    ClassifierFamily::EmpiricalThreshold,
                ),
                None => (LossEvaluator::analytic(params), ClassifierFamily::Bayes),
            };
            let result = run_probing(&grid, &src, family, &target, config.probing_max_iter)?;
            EstimatorReport::from_raw(EstimatorMethod::Probing, result.q_hat, target.len())
        }
        other => bail!(
            "unknown method {other:?}; expected pa, cc, acc, mean-matching, discretized or probing"
        ),
    };

    print!(
        "{}",
        csv_document(
            "method,estimate,n_target,clipped,raw",
            &[report_row(&report)],
            config.seed,
        )
    );
    Ok(())
}

/// One covariate per line; a second label column, if present, is ignored.
fn read_unlabeled(path: &Path) -> Result<UnlabeledSample> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut values = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let mut fields = line.split_whitespace();
        let x = parse_field(fields.next(), "covariate", path, lineno)?;
        values.push(x);
    }
    UnlabeledSample::new(values, 0)
        .with_context(|| format!("{} holds no covariates", path.display()))
}

/// One covariate and one 0/1 label per line.
fn read_labeled(path: &Path) -> Result<LabeledSample> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut pairs = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let mut fields = line.split_whitespace();
        let x: f64 = parse_field(fields.next(), "covariate", path, lineno)?;
        let y: u8 = parse_field(fields.next(), "label", path, lineno)?;
        pairs.push((x, y));
    }
    LabeledSample::new(pairs, 0)
        .with_context(|| format!("{} is not a labeled sample", path.display()))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    what: &str,
    path: &Path,
    lineno: usize,
) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let field =
        field.with_context(|| format!("{}:{lineno}: missing {what}", path.display()))?;
    field
        .parse()
        .map_err(|e| anyhow::anyhow!("{}:{lineno}: bad {what} {field:?}: {e}", path.display()))
}
