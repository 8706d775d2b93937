//! Exhaustive enumeration of partitions and coarsenings, and the
//! sufficiency-inheritance sweep over small spaces.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::verify::{insufficiency_example, verify_theorem1};
use super::{Event, FiniteMeasure, FiniteSpace, Partition};
use crate::error::{Error, Result};

/// All partitions of a space, enumerated through restricted growth strings
/// in lexicographic order. The count is the Bell number of the space size.
pub fn partitions(space: &FiniteSpace) -> Vec<Partition> {
    let n = space.len();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    grow(space, &mut assignment, 1, 1, &mut out);
    out
}

fn grow(
    space: &FiniteSpace,
    assignment: &mut Vec<usize>,
    pos: usize,
    blocks: usize,
    out: &mut Vec<Partition>,
) {
    let n = space.len();
    if pos == n {
        let mut cells = vec![Vec::new(); blocks];
        for (i, &c) in assignment.iter().enumerate() {
            cells[c].push(i);
        }
        out.push(Partition::new(space, cells).expect("growth string is a partition"));
        return;
    }
    for c in 0..=blocks {
        assignment[pos] = c;
        let next_blocks = blocks.max(c + 1);
        grow(space, assignment, pos + 1, next_blocks, out);
    }
}

/// All coarsenings of a partition (including the partition itself and the
/// trivial partition): every way of merging its cells into groups.
pub fn coarsenings(p: &Partition) -> Vec<Partition> {
    let k = p.num_cells();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; k];
    grow_groups(p, &mut assignment, 1, 1, &mut out);
    out
}

fn grow_groups(
    p: &Partition,
    assignment: &mut Vec<usize>,
    pos: usize,
    groups: usize,
    out: &mut Vec<Partition>,
) {
    let k = p.num_cells();
    if pos == k {
        let mut cells = vec![Vec::new(); groups];
        for (c, &grp) in assignment.iter().enumerate() {
            cells[grp].extend(p.cells()[c].iter().copied());
        }
        out.push(Partition::new(p.space(), cells).expect("merged cells form a partition"));
        return;
    }
    for grp in 0..=groups {
        assignment[pos] = grp;
        grow_groups(p, assignment, pos + 1, groups.max(grp + 1), out);
    }
}

/// Settings for [`theorem_sweep`].
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Largest space size to enumerate (inclusive).
    pub max_outcomes: usize,
    /// Randomized (measure, event) draws per (finer, coarser) pair.
    pub draws_per_structure: usize,
    /// Random reweighting probes inside each verdict.
    pub random_densities: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            max_outcomes: 6,
            draws_per_structure: 20,
            random_densities: 5,
            seed: 0,
            tol: crate::DEFAULT_TOL,
        }
    }
}

/// One checked case of the sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    /// Space size.
    pub n: usize,
    pub sufficient: bool,
    pub inherited: bool,
}

impl SweepRow {
    /// The equivalence under test.
    pub fn agree(&self) -> bool {
        self.sufficient == self.inherited
    }
}

/// Enumerates every partition `h` of every space with 2..=max_outcomes
/// outcomes and every coarsening `g` of `h`, draws randomized positive
/// measures and class events for each pair, and records whether sufficiency
/// and inheritance agree. The singleton partition is skipped (every event
/// is measurable there) and so are draws where the class event would be a
/// union of cells. The randomized instance from [`insufficiency_example`]
/// is appended as a known not-sufficient, not-inherited case.
pub fn theorem_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.max_outcomes < 2 {
        return Err(Error::InvalidStructure(format!(
            "sweep needs max_outcomes >= 2, got {}",
            config.max_outcomes
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for n in 2..=config.max_outcomes {
        let space = FiniteSpace::indexed(n)?;
        for h in partitions(&space) {
            if h.cells().iter().all(|cell| cell.len() == 1) {
                continue;
            }
            for g in coarsenings(&h) {
                for _ in 0..config.draws_per_structure {
                    let p = FiniteMeasure::random_positive(space.clone(), &mut rng);
                    let a = random_nonmeasurable_event(&space, &h, &mut rng);
                    let verdict = verify_theorem1(
                        &p,
                        &a,
                        &g,
                        &h,
                        config.random_densities,
                        rng.next_u64(),
                        config.tol,
                    )?;
                    rows.push(SweepRow {
                        n,
                        sufficient: verdict.sufficient,
                        inherited: verdict.inherited,
                    });
                }
            }
        }
    }

    let example = insufficiency_example(config.seed ^ 0x9e37_79b9_7f4a_7c15);
    let verdict = verify_theorem1(
        &example.p,
        &example.a,
        &example.g,
        &example.h,
        config.random_densities,
        rng.next_u64(),
        config.tol,
    )?;
    rows.push(SweepRow {
        n: example.p.space().len(),
        sufficient: verdict.sufficient,
        inherited: verdict.inherited,
    });
    Ok(rows)
}

/// A nonempty proper event that is not a union of cells of `h`. Falls back
/// to splitting the first multi-outcome cell if rejection sampling runs
/// long.
fn random_nonmeasurable_event<R: Rng + ?Sized>(
    space: &FiniteSpace,
    h: &Partition,
    rng: &mut R,
) -> Event {
    let n = space.len();
    for _ in 0..200 {
        let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if members.is_empty() || members.len() == n {
            continue;
        }
        let event = Event::new(space, members).expect("indices in range");
        if !h.is_measurable(&event) {
            return event;
        }
    }
    let cell = h
        .cells()
        .iter()
        .find(|cell| cell.len() > 1)
        .expect("caller skips the singleton partition");
    Event::new(space, [cell[0]]).expect("splitting a cell is nonmeasurable")
}
