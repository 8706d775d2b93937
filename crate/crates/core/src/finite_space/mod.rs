//! Binary classification on finite probability spaces.
//!
//! On a finite sample space every sub-σ-algebra is generated by a unique
//! partition, so information sets are represented as [`Partition`]s and
//! conditional probabilities as per-cell values. This makes statements like
//! "the posteriors under the source and target distributions coincide"
//! checkable by direct enumeration:
//!
//! * [`is_covariate_shift`] — posteriors given a partition agree between two
//!   measures, almost surely under the target;
//! * [`is_prior_probability_shift`] — class-conditional cell distributions
//!   agree while the class priors may differ;
//! * [`is_sufficient`] — a coarser partition carries the same posterior as a
//!   finer one under the source measure;
//! * [`reweight`] — builds a target measure from a cell-constant density,
//!   which always preserves the posterior (the constructive direction);
//! * [`verify::verify_theorem1`] — probes whether covariate shift survives
//!   coarsening, which happens exactly under sufficiency.
//!
//! Conditional probabilities on null cells are represented as `None`, never
//! as 0 or NaN; almost-sure comparisons skip cells that are null under the
//! governing measure. A target-positive cell with zero source mass makes the
//! shift predicates error rather than answer, because no amount of source
//! data could reveal the posterior there.

mod enumerate;
mod text;
mod verify;

pub use enumerate::{coarsenings, partitions, theorem_sweep, SweepConfig, SweepRow};
pub use text::{
    parse_measure, parse_partition, parse_space, write_measure, write_partition, write_space,
    write_verdict,
};
pub use verify::{
    he_implication_check, insufficiency_example, verify_proposition1, verify_theorem1,
    InsufficiencyExample, Theorem1Verdict,
};

use crate::error::{Error, Result};
use rand::Rng;

/// Tolerance for checking that masses form a probability measure and that
/// densities have unit expectation.
pub const MASS_TOL: f64 = 1e-12;

/// A finite sample space: an ordered sequence of distinct outcome labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    outcomes: Vec<String>,
}

impl FiniteSpace {
    /// Builds a space from outcome labels. Labels must be distinct, nonempty
    /// and free of separators (commas, colons, whitespace); at least two
    /// outcomes are required.
    pub fn new<I, S>(outcomes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.len() < 2 {
            return Err(Error::InvalidStructure(format!(
                "a sample space needs at least 2 outcomes, got {}",
                outcomes.len()
            )));
        }
        for (i, id) in outcomes.iter().enumerate() {
            if id.is_empty() || id.contains([',', ':']) || id.contains(char::is_whitespace) {
                return Err(Error::InvalidStructure(format!(
                    "outcome label {i} ({id:?}) is empty or contains a separator"
                )));
            }
            if outcomes[..i].contains(id) {
                return Err(Error::InvalidStructure(format!(
                    "duplicate outcome label {id:?}"
                )));
            }
        }
        Ok(Self { outcomes })
    }

    /// Space with outcomes labeled `"0"`, `"1"`, ..., `"n-1"`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }
}

/// A probability measure on a [`FiniteSpace`]: one non-negative mass per
/// outcome, summing to 1 within [`MASS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasure {
    space: FiniteSpace,
    mass: Vec<f64>,
}

impl FiniteMeasure {
    pub fn new(space: FiniteSpace, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} masses for {} outcomes",
                mass.len(),
                space.len()
            )));
        }
        for (i, &m) in mass.iter().enumerate() {
            if !(m >= 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "mass {m} at outcome {i} is negative or NaN"
                )));
            }
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!(
                "masses sum to {sum}, not 1"
            )));
        }
        Ok(Self { space, mass })
    }

    /// Uniform measure.
    pub fn uniform(space: FiniteSpace) -> Self {
        let n = space.len();
        Self {
            space,
            mass: vec![1.0 / n as f64; n],
        }
    }

    /// Random measure with every atom mass bounded away from zero,
    /// normalized to total mass 1.
    pub fn random_positive<R: Rng + ?Sized>(space: FiniteSpace, rng: &mut R) -> Self {
        let raw: Vec<f64> = (0..space.len())
            .map(|_| rng.random_range(0.05..1.0))
            .collect();
        let sum: f64 = raw.iter().sum();
        Self {
            space,
            mass: raw.into_iter().map(|w| w / sum).collect(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn atom(&self, outcome: usize) -> f64 {
        self.mass[outcome]
    }

    /// Total mass of an event.
    pub fn mass_of(&self, event: &Event) -> f64 {
        event.members.iter().map(|&i| self.mass[i]).sum()
    }

    fn mass_of_cell(&self, cell: &[usize]) -> f64 {
        cell.iter().map(|&i| self.mass[i]).sum()
    }

    fn mass_of_cell_in(&self, cell: &[usize], event: &Event) -> f64 {
        cell.iter()
            .filter(|&&i| event.contains(i))
            .map(|&i| self.mass[i])
            .sum()
    }
}

/// A subset of the outcomes of a [`FiniteSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    space: FiniteSpace,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Event {
    pub fn new<I: IntoIterator<Item = usize>>(space: &FiniteSpace, members: I) -> Result<Self> {
        let mut mask = vec![false; space.len()];
        for i in members {
            if i >= space.len() {
                return Err(Error::InvalidStructure(format!(
                    "outcome index {i} out of range for a space of size {}",
                    space.len()
                )));
            }
            mask[i] = true;
        }
        let members = (0..space.len()).filter(|&i| mask[i]).collect();
        Ok(Self {
            space: space.clone(),
            members,
            mask,
        })
    }

    pub fn from_labels<'a, I: IntoIterator<Item = &'a str>>(
        space: &FiniteSpace,
        labels: I,
    ) -> Result<Self> {
        let mut members = Vec::new();
        for label in labels {
            let i = space.index_of(label).ok_or_else(|| {
                Error::InvalidStructure(format!("unknown outcome label {label:?}"))
            })?;
            members.push(i);
        }
        Self::new(space, members)
    }

    pub fn full(space: &FiniteSpace) -> Self {
        Self::new(space, 0..space.len()).expect("full event is valid")
    }

    pub fn complement(&self) -> Self {
        let members: Vec<usize> = (0..self.space.len())
            .filter(|&i| !self.mask[i])
            .collect();
        Self::new(&self.space, members).expect("complement is valid")
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.mask[outcome]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A partition of a [`FiniteSpace`] into disjoint nonempty cells covering
/// every outcome; the generator of a sub-σ-algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    space: FiniteSpace,
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    pub fn new(space: &FiniteSpace, cells: Vec<Vec<usize>>) -> Result<Self> {
        let n = space.len();
        let mut cell_of = vec![usize::MAX; n];
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidStructure(format!("cell {c} is empty")));
            }
            for &i in cell {
                if i >= n {
                    return Err(Error::InvalidStructure(format!(
                        "outcome index {i} out of range in cell {c}"
                    )));
                }
                if cell_of[i] != usize::MAX {
                    return Err(Error::InvalidStructure(format!(
                        "outcome {i} appears in cells {} and {c}",
                        cell_of[i]
                    )));
                }
                cell_of[i] = c;
            }
        }
        if let Some(i) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidStructure(format!(
                "outcome {i} is not covered by any cell"
            )));
        }
        let cells = cells
            .into_iter()
            .map(|mut cell| {
                cell.sort_unstable();
                cell
            })
            .collect();
        Ok(Self {
            space: space.clone(),
            cells,
            cell_of,
        })
    }

    /// Finest partition: one cell per outcome.
    pub fn singletons(space: &FiniteSpace) -> Self {
        Self::new(space, (0..space.len()).map(|i| vec![i]).collect())
            .expect("singleton partition is valid")
    }

    /// Coarsest partition: a single cell.
    pub fn trivial(space: &FiniteSpace) -> Self {
        Self::new(space, vec![(0..space.len()).collect()]).expect("trivial partition is valid")
    }

    /// The two-cell partition {A, Aᶜ} generated by a nontrivial event.
    pub fn from_event(event: &Event) -> Result<Self> {
        let co = event.complement();
        if event.is_empty() || co.is_empty() {
            return Err(Error::InvalidStructure(
                "the generating event must be nonempty and proper".into(),
            ));
        }
        Self::new(
            &event.space,
            vec![event.members.clone(), co.members().to_vec()],
        )
    }

    /// Common refinement of two partitions on the same space; generates the
    /// join of the two σ-algebras. Cells are ordered by first occurrence in
    /// outcome order.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let n = self.space.len();
        let mut key_to_cell: Vec<((usize, usize), Vec<usize>)> = Vec::new();
        for i in 0..n {
            let key = (self.cell_of[i], other.cell_of[i]);
            match key_to_cell.iter_mut().find(|(k, _)| *k == key) {
                Some((_, cell)) => cell.push(i),
                None => key_to_cell.push((key, vec![i])),
            }
        }
        Partition::new(
            &self.space,
            key_to_cell.into_iter().map(|(_, cell)| cell).collect(),
        )
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Index of the cell containing an outcome.
    pub fn cell_of(&self, outcome: usize) -> usize {
        self.cell_of[outcome]
    }

    /// The cell with the given index, as an [`Event`].
    pub fn cell_event(&self, cell: usize) -> Event {
        Event::new(&self.space, self.cells[cell].iter().copied()).expect("cell is a valid event")
    }

    /// Whether `self` is a coarsening of `finer`: every cell of `finer` lies
    /// inside a single cell of `self`. Reflexive.
    pub fn coarsens(&self, finer: &Partition) -> bool {
        self.space == finer.space
            && finer
                .cells
                .iter()
                .all(|cell| cell.iter().all(|&i| self.cell_of[i] == self.cell_of[cell[0]]))
    }

    /// Whether an event is a union of cells (measurable with respect to the
    /// generated σ-algebra).
    pub fn is_measurable(&self, event: &Event) -> bool {
        self.cells.iter().all(|cell| {
            let inside = cell.iter().filter(|&&i| event.contains(i)).count();
            inside == 0 || inside == cell.len()
        })
    }
}

/// A [0,1]-valued function constant on the cells of a partition, with an
/// explicit "undefined" marker (`None`) on cells that are null under the
/// governing measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFunction {
    partition: Partition,
    values: Vec<Option<f64>>,
}

impl CellFunction {
    pub fn new(partition: Partition, values: Vec<Option<f64>>) -> Result<Self> {
        if values.len() != partition.num_cells() {
            return Err(Error::InvalidStructure(format!(
                "{} values for {} cells",
                values.len(),
                partition.num_cells()
            )));
        }
        for (c, v) in values.iter().enumerate() {
            if let Some(v) = v {
                if !(0.0..=1.0).contains(v) {
                    return Err(Error::InvalidStructure(format!(
                        "value {v} on cell {c} is outside [0,1]"
                    )));
                }
            }
        }
        Ok(Self { partition, values })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn value_on_cell(&self, cell: usize) -> Option<f64> {
        self.values[cell]
    }

    pub fn value_at(&self, outcome: usize) -> Option<f64> {
        self.values[self.partition.cell_of(outcome)]
    }
}

/// A non-negative density that is constant on the cells of a partition and
/// has unit expectation under its base measure.
#[derive(Debug, Clone)]
pub struct Reweighting {
    base: FiniteMeasure,
    partition: Partition,
    density: Vec<f64>,
}

impl Reweighting {
    pub fn new(base: FiniteMeasure, partition: Partition, density: Vec<f64>) -> Result<Self> {
        if base.space != partition.space {
            return Err(Error::SpaceMismatch);
        }
        if density.len() != partition.num_cells() {
            return Err(Error::InvalidStructure(format!(
                "{} density values for {} cells",
                density.len(),
                partition.num_cells()
            )));
        }
        if let Some((c, &d)) = density.iter().enumerate().find(|(_, &d)| !(d >= 0.0)) {
            return Err(Error::InvalidStructure(format!(
                "density {d} on cell {c} is negative or NaN"
            )));
        }
        let expectation = expectation_of(&base, &partition, &density);
        if (expectation - 1.0).abs() > MASS_TOL {
            return Err(Error::DensityNotNormalized { expectation });
        }
        Ok(Self {
            base,
            partition,
            density,
        })
    }

    /// Scales raw non-negative cell weights to unit expectation under the
    /// base measure.
    pub fn normalized(
        base: FiniteMeasure,
        partition: Partition,
        raw: Vec<f64>,
    ) -> Result<Self> {
        if base.space != partition.space {
            return Err(Error::SpaceMismatch);
        }
        if raw.len() != partition.num_cells() {
            return Err(Error::InvalidStructure(format!(
                "{} weights for {} cells",
                raw.len(),
                partition.num_cells()
            )));
        }
        let expectation = expectation_of(&base, &partition, &raw);
        if !(expectation > 0.0) {
            return Err(Error::DensityNotNormalized { expectation });
        }
        let density = raw.into_iter().map(|w| w / expectation).collect();
        Self::new(base, partition, density)
    }

    /// Random density: per-cell weights drawn log-uniformly from
    /// [e⁻², e²], then normalized to unit expectation.
    pub fn random<R: Rng + ?Sized>(
        base: FiniteMeasure,
        partition: Partition,
        rng: &mut R,
    ) -> Result<Self> {
        let raw: Vec<f64> = (0..partition.num_cells())
            .map(|_| rng.random_range(-2.0..2.0f64).exp())
            .collect();
        Self::normalized(base, partition, raw)
    }

    pub fn base(&self) -> &FiniteMeasure {
        &self.base
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn density_at(&self, outcome: usize) -> f64 {
        self.density[self.partition.cell_of(outcome)]
    }
}

fn expectation_of(base: &FiniteMeasure, partition: &Partition, density: &[f64]) -> f64 {
    partition
        .cells()
        .iter()
        .zip(density)
        .map(|(cell, &d)| d * base.mass_of_cell(cell))
        .sum()
}

/// A monotone nondecreasing map from [0,1] to [0,1], validated on a
/// 101-point grid at construction.
pub struct DriftFunction {
    name: String,
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for DriftFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("DriftFunction")
            .field("name", &self.name)
            .finish()
    }
}

impl DriftFunction {
    pub fn new<F>(name: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        let mut prev = f(0.0);
        for k in 0..=100u32 {
            let x = f64::from(k) / 100.0;
            let y = f(x);
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidDriftFunction(format!(
                    "{name}: value {y} at {x} is outside [0,1]"
                )));
            }
            if y < prev {
                return Err(Error::InvalidDriftFunction(format!(
                    "{name}: decreases at {x}"
                )));
            }
            prev = y;
        }
        Ok(Self {
            name,
            f: Box::new(f),
        })
    }

    pub fn identity() -> Self {
        Self::new("identity", |x| x).expect("identity is monotone")
    }

    pub fn square() -> Self {
        Self::new("square", |x| x * x).expect("square is monotone on [0,1]")
    }

    /// x ↦ clamp(slope·x + intercept, 0, 1) for slope ≥ 0.
    pub fn clipped_affine(slope: f64, intercept: f64) -> Result<Self> {
        if !(slope >= 0.0) {
            return Err(Error::InvalidDriftFunction(format!(
                "clipped affine slope {slope} must be non-negative"
            )));
        }
        Self::new(format!("affine({slope},{intercept})"), move |x| {
            (slope * x + intercept).clamp(0.0, 1.0)
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

fn ensure_same_space(spaces: &[&FiniteSpace]) -> Result<()> {
    if spaces.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// Conditional probability of an event given a partition: on each cell C
/// with P[C] > 0 the value is P[A ∩ C] / P[C]; null cells carry `None`.
pub fn conditional_prob(p: &FiniteMeasure, a: &Event, h: &Partition) -> Result<CellFunction> {
    ensure_same_space(&[p.space(), a.space(), h.space()])?;
    let values = h
        .cells()
        .iter()
        .map(|cell| {
            let pc = p.mass_of_cell(cell);
            if pc > 0.0 {
                Some((p.mass_of_cell_in(cell, a) / pc).clamp(0.0, 1.0))
            } else {
                None
            }
        })
        .collect();
    CellFunction::new(h.clone(), values)
}

/// Whether Q is absolutely continuous with respect to P on the σ-algebra
/// generated by a partition: every P-null cell is Q-null.
pub fn is_absolutely_continuous(
    p: &FiniteMeasure,
    q: &FiniteMeasure,
    h: &Partition,
) -> Result<bool> {
    ensure_same_space(&[p.space(), q.space(), h.space()])?;
    Ok(h.cells()
        .iter()
        .all(|cell| p.mass_of_cell(cell) > 0.0 || q.mass_of_cell(cell) == 0.0))
}

/// Whether P and Q have the same posterior for `a` given the partition,
/// almost surely under Q: on every cell with Q-mass and P-mass positive the
/// conditional probabilities differ by at most `tol`; Q-null cells are
/// ignored. A Q-positive cell with zero P-mass is an error — the posterior
/// there cannot be learned from the source distribution.
pub fn is_covariate_shift(
    p: &FiniteMeasure,
    q: &FiniteMeasure,
    a: &Event,
    h: &Partition,
    tol: f64,
) -> Result<bool> {
    ensure_same_space(&[p.space(), q.space(), a.space(), h.space()])?;
    for (c, cell) in h.cells().iter().enumerate() {
        let qc = q.mass_of_cell(cell);
        if qc == 0.0 {
            continue;
        }
        let pc = p.mass_of_cell(cell);
        if pc == 0.0 {
            return Err(Error::IndeterminatePosterior { cell: c });
        }
        let p_post = p.mass_of_cell_in(cell, a) / pc;
        let q_post = q.mass_of_cell_in(cell, a) / qc;
        if (p_post - q_post).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether P and Q have the same class-conditional cell distributions:
/// for every cell C and both classes, P[C | class] and Q[C | class] differ
/// by at most `tol`. Requires nondegenerate class priors under both
/// measures.
pub fn is_prior_probability_shift(
    p: &FiniteMeasure,
    q: &FiniteMeasure,
    a: &Event,
    h: &Partition,
    tol: f64,
) -> Result<bool> {
    ensure_same_space(&[p.space(), q.space(), a.space(), h.space()])?;
    let comp = a.complement();
    for (m, event) in [(p, a), (p, &comp), (q, a), (q, &comp)] {
        let mass = m.mass_of(event);
        if !(mass > 0.0) {
            return Err(Error::DegenerateClassPrior { value: mass });
        }
    }
    let (pa, qa) = (p.mass_of(a), q.mass_of(a));
    let (pa0, qa0) = (p.mass_of(&comp), q.mass_of(&comp));
    for cell in h.cells() {
        let d1 = p.mass_of_cell_in(cell, a) / pa - q.mass_of_cell_in(cell, a) / qa;
        let d0 = p.mass_of_cell_in(cell, &comp) / pa0 - q.mass_of_cell_in(cell, &comp) / qa0;
        if d1.abs() > tol || d0.abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the coarser partition `g` is statistically sufficient for the
/// finer partition `h` with respect to the event `a` under P: on every
/// P-positive cell of `h`, the posterior given `h` equals the posterior
/// given `g` within `tol`.
pub fn is_sufficient(
    p: &FiniteMeasure,
    a: &Event,
    g: &Partition,
    h: &Partition,
    tol: f64,
) -> Result<bool> {
    ensure_same_space(&[p.space(), a.space(), g.space(), h.space()])?;
    if !g.coarsens(h) {
        return Err(Error::NotACoarsening);
    }
    for cell in h.cells() {
        let pc = p.mass_of_cell(cell);
        if pc == 0.0 {
            continue;
        }
        let coarse_cell = &g.cells()[g.cell_of(cell[0])];
        let pd = p.mass_of_cell(coarse_cell);
        let fine_post = p.mass_of_cell_in(cell, a) / pc;
        let coarse_post = p.mass_of_cell_in(coarse_cell, a) / pd;
        if (fine_post - coarse_post).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies a cell-constant density to a measure: Q[{ω}] = h(ω)·P[{ω}].
/// The density must have unit expectation under `p` (within [`MASS_TOL`]).
/// The result has the same posterior as `p` given any partition that the
/// density's partition coarsens, for every event.
pub fn reweight(p: &FiniteMeasure, h: &Reweighting) -> Result<FiniteMeasure> {
    ensure_same_space(&[p.space(), h.partition().space()])?;
    let expectation = expectation_of(p, h.partition(), h.density());
    if (expectation - 1.0).abs() > MASS_TOL {
        return Err(Error::DensityNotNormalized { expectation });
    }
    let mass = (0..p.space().len())
        .map(|i| h.density_at(i) * p.atom(i))
        .collect();
    FiniteMeasure::new(p.space().clone(), mass)
}

/// P conditioned on an event: Q[M] = P[M ∩ C] / P[C]. Errors when the
/// conditioning event is P-null.
pub fn conditional_measure(p: &FiniteMeasure, c: &Event) -> Result<FiniteMeasure> {
    ensure_same_space(&[p.space(), c.space()])?;
    let pc = p.mass_of(c);
    if !(pc > 0.0) {
        return Err(Error::NullConditioningEvent);
    }
    let mass = (0..p.space().len())
        .map(|i| if c.contains(i) { p.atom(i) / pc } else { 0.0 })
        .collect();
    FiniteMeasure::new(p.space().clone(), mass)
}

#[cfg(test)]
mod tests;
