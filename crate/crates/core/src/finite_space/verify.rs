//! Brute-force verification of the sufficiency/inheritance equivalence, the
//! posterior-drift transfer property, and the domain-invariance implication.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    conditional_measure, is_covariate_shift, is_sufficient, reweight, DriftFunction, Event,
    FiniteMeasure, FiniteSpace, Partition, Reweighting,
};
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// Outcome of probing whether covariate shift is inherited by a coarsening.
#[derive(Debug, Clone)]
pub struct Theorem1Verdict {
    /// The coarser partition carries the same posterior as the finer one
    /// under the source measure.
    pub sufficient: bool,
    /// Every probed target measure with the source posterior on the finer
    /// partition also kept it on the coarser one.
    pub inherited: bool,
    /// A probed measure that broke inheritance, when one exists.
    pub witness: Option<FiniteMeasure>,
}

/// Probes whether covariate shift with respect to the finer partition `h`
/// is inherited by the coarser partition `g`.
///
/// The probe set consists of P conditioned on every P-positive cell of `h`
/// (these alone refute inheritance whenever sufficiency fails) plus
/// `n_random` random cell-constant reweightings of P. Every probe keeps the
/// posterior given `h` by construction, so `inherited` reports whether all
/// of them also keep the posterior given `g`. The contract under test is
/// `sufficient == inherited`; it also covers class events measurable with
/// respect to `h`, where the posterior is an indicator.
pub fn verify_theorem1(
    p: &FiniteMeasure,
    a: &Event,
    g: &Partition,
    h: &Partition,
    n_random: usize,
    seed: u64,
    tol: f64,
) -> Result<Theorem1Verdict> {
    if !g.coarsens(h) {
        return Err(Error::NotACoarsening);
    }
    let pa = p.mass_of(a);
    if !(pa > 0.0 && pa < 1.0) {
        return Err(Error::DegenerateClassPrior { value: pa });
    }

    let sufficient = is_sufficient(p, a, g, h, tol)?;

    let mut inherited = true;
    let mut witness = None;
    let mut check = |q: FiniteMeasure| -> Result<()> {
        if witness.is_none() && !is_covariate_shift(p, &q, a, g, tol)? {
            inherited = false;
            witness = Some(q);
        }
        Ok(())
    };

    for c in 0..h.num_cells() {
        let cell = h.cell_event(c);
        if p.mass_of(&cell) > 0.0 {
            check(conditional_measure(p, &cell)?)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        let density = Reweighting::random(p.clone(), h.clone(), &mut rng)?;
        check(reweight(p, &density)?)?;
    }

    Ok(Theorem1Verdict {
        sufficient,
        inherited,
        witness,
    })
}

/// Builds the target measure with cell masses Q[C] = h(C)·P[C] on the finer
/// partition and drifted posterior Q[A|C] = f(P[A|C]), then checks that the
/// drift relation also holds at the level of the coarser partition `g`,
/// within [`DEFAULT_TOL`]. Guaranteed to hold whenever `g` is sufficient
/// for `h` with respect to `a` under `p`.
pub fn verify_proposition1(
    p: &FiniteMeasure,
    a: &Event,
    g: &Partition,
    h: &Partition,
    f: &DriftFunction,
    density: &Reweighting,
) -> Result<bool> {
    if p.space() != a.space() || p.space() != g.space() || p.space() != h.space() {
        return Err(Error::SpaceMismatch);
    }
    if !g.coarsens(h) || !density.partition().coarsens(h) {
        return Err(Error::NotACoarsening);
    }

    let q = drifted_measure(p, a, h, f, density)?;

    for coarse_cell in g.cells() {
        let qd: f64 = coarse_cell.iter().map(|&i| q.atom(i)).sum();
        if qd == 0.0 {
            continue;
        }
        let qd_in_a: f64 = coarse_cell
            .iter()
            .filter(|&&i| a.contains(i))
            .map(|&i| q.atom(i))
            .sum();
        let pd: f64 = coarse_cell.iter().map(|&i| p.atom(i)).sum();
        let pd_in_a: f64 = coarse_cell
            .iter()
            .filter(|&&i| a.contains(i))
            .map(|&i| p.atom(i))
            .sum();
        let drifted = f.eval(pd_in_a / pd);
        if (qd_in_a / qd - drifted).abs() > DEFAULT_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Measure with cell masses from `density` and per-cell posterior drifted
/// through `f`; within each cell the class and non-class mass follows the
/// shape of `p` (uniform where `p` vanishes).
fn drifted_measure(
    p: &FiniteMeasure,
    a: &Event,
    h: &Partition,
    f: &DriftFunction,
    density: &Reweighting,
) -> Result<FiniteMeasure> {
    let expectation: f64 = h
        .cells()
        .iter()
        .map(|cell| {
            density.density_at(cell[0]) * cell.iter().map(|&i| p.atom(i)).sum::<f64>()
        })
        .sum();
    if (expectation - 1.0).abs() > super::MASS_TOL {
        return Err(Error::DensityNotNormalized { expectation });
    }

    let mut mass = vec![0.0; p.space().len()];
    for (c, cell) in h.cells().iter().enumerate() {
        let pc: f64 = cell.iter().map(|&i| p.atom(i)).sum();
        let qc = density.density_at(cell[0]) * pc;
        if qc == 0.0 {
            continue;
        }
        let eta = cell
            .iter()
            .filter(|&&i| a.contains(i))
            .map(|&i| p.atom(i))
            .sum::<f64>()
            / pc;
        let target = f.eval(eta);
        if !(0.0..=1.0).contains(&target) {
            return Err(Error::InvalidDriftFunction(format!(
                "{}: value {target} at {eta} is outside [0,1]",
                f.name()
            )));
        }
        spread(&mut mass, p, cell, a, qc * target, true).map_err(|_| {
            Error::UnrealizableDrift { cell: c }
        })?;
        spread(&mut mass, p, cell, a, qc * (1.0 - target), false)
            .map_err(|_| Error::UnrealizableDrift { cell: c })?;
    }
    FiniteMeasure::new(p.space().clone(), mass)
}

/// Distributes `total` over the members of `cell` that are inside (or
/// outside) `a`, proportionally to `p` when possible, uniformly otherwise.
fn spread(
    mass: &mut [f64],
    p: &FiniteMeasure,
    cell: &[usize],
    a: &Event,
    total: f64,
    inside: bool,
) -> std::result::Result<(), ()> {
    if total == 0.0 {
        return Ok(());
    }
    let part: Vec<usize> = cell
        .iter()
        .copied()
        .filter(|&i| a.contains(i) == inside)
        .collect();
    if part.is_empty() {
        return Err(());
    }
    let p_part: f64 = part.iter().map(|&i| p.atom(i)).sum();
    if p_part > 0.0 {
        for &i in &part {
            mass[i] += total * p.atom(i) / p_part;
        }
    } else {
        for &i in &part {
            mass[i] += total / part.len() as f64;
        }
    }
    Ok(())
}

/// Checks the implication "identical posteriors along a statistic T plus an
/// identical joint law of (class, T) imply covariate shift for the full
/// covariate information".
///
/// Premises, each within `tol`:
/// 1. under P the posterior given `h` is a function of `t`;
/// 2. under Q the posterior given `h` is a function of `t`;
/// 3. P and Q agree on class ∩ T-cell masses for both classes.
///
/// Returns [`is_covariate_shift`] of (p, q) on `h`; errors with the name of
/// the first failing premise.
pub fn he_implication_check(
    p: &FiniteMeasure,
    q: &FiniteMeasure,
    a: &Event,
    t: &Partition,
    h: &Partition,
    tol: f64,
) -> Result<bool> {
    if p.space() != q.space() || p.space() != a.space() || p.space() != t.space() {
        return Err(Error::SpaceMismatch);
    }
    if !t.coarsens(h) {
        return Err(Error::NotACoarsening);
    }
    if !is_sufficient(p, a, t, h, tol)? {
        return Err(Error::PremiseViolated(
            "source posterior given the full information set is not a function of the statistic"
                .into(),
        ));
    }
    if !is_sufficient(q, a, t, h, tol)? {
        return Err(Error::PremiseViolated(
            "target posterior given the full information set is not a function of the statistic"
                .into(),
        ));
    }
    let comp = a.complement();
    for cell in t.cells() {
        let d1 = p.mass_of_cell_in(cell, a) - q.mass_of_cell_in(cell, a);
        let d0 = p.mass_of_cell_in(cell, &comp) - q.mass_of_cell_in(cell, &comp);
        if d1.abs() > tol || d0.abs() > tol {
            return Err(Error::PremiseViolated(
                "joint law of class and statistic differs between source and target".into(),
            ));
        }
    }
    is_covariate_shift(p, q, a, h, tol)
}

/// A randomized instance on the three-bit space {0,1}³ (class bit y,
/// informative feature bit f, independent feature bit g) where the class
/// depends on f while g is independent of (class, f). The full covariate
/// partition `h` separates (f, g); the coarsening `g` keeps only the
/// independent bit, so it is never sufficient and covariate shift is not
/// inherited by it.
#[derive(Debug, Clone)]
pub struct InsufficiencyExample {
    pub p: FiniteMeasure,
    /// The class event {y = 1}.
    pub a: Event,
    /// Partition by the informative feature bit.
    pub f: Partition,
    /// Partition by the feature bit independent of class and f.
    pub g: Partition,
    /// Full covariate partition, the join of `f` and `g`.
    pub h: Partition,
}

/// Builds a seeded [`InsufficiencyExample`]. The law is a product: the
/// (y, f) marginal is drawn with all four atoms at least 0.05 and posterior
/// gap |P[y=1|f=1] − P[y=1|f=0]| ≥ 0.1, and the g bit is drawn independent
/// with mass in [0.2, 0.8].
pub fn insufficiency_example(seed: u64) -> InsufficiencyExample {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // joint law r[y][f] on the (y, f) bits
    let r = loop {
        let raw: Vec<f64> = (0..4).map(|_| rng.random_range(0.05..1.0f64)).collect();
        let sum: f64 = raw.iter().sum();
        let r: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        if r.iter().any(|&w| w < 0.05) {
            continue;
        }
        // r indexed by 2*y + f
        let post_f0 = r[2] / (r[0] + r[2]);
        let post_f1 = r[3] / (r[1] + r[3]);
        if (post_f1 - post_f0).abs() >= 0.1 {
            break r;
        }
    };
    let s1: f64 = rng.random_range(0.2..0.8);

    let labels: Vec<String> = (0..8)
        .map(|i| format!("y{}f{}g{}", (i >> 2) & 1, (i >> 1) & 1, i & 1))
        .collect();
    let space = FiniteSpace::new(labels).expect("labels are valid");
    let mass: Vec<f64> = (0..8)
        .map(|i| {
            let (y, f_bit, g_bit) = ((i >> 2) & 1, (i >> 1) & 1, i & 1);
            r[2 * y + f_bit] * if g_bit == 1 { s1 } else { 1.0 - s1 }
        })
        .collect();
    let p = FiniteMeasure::new(space.clone(), mass).expect("product masses sum to 1");

    let bit_partition = |bit: usize| {
        Partition::new(
            &space,
            vec![
                (0..8).filter(|i| (i >> bit) & 1 == 0).collect(),
                (0..8).filter(|i| (i >> bit) & 1 == 1).collect(),
            ],
        )
        .expect("bit partition is valid")
    };
    let f = bit_partition(1);
    let g = bit_partition(0);
    let h = f.join(&g).expect("same space");
    let a = Event::new(&space, (0..8).filter(|i| (i >> 2) & 1 == 1)).expect("class event");

    InsufficiencyExample { p, a, f, g, h }
}
