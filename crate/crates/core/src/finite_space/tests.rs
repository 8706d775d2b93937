use super::*;
use crate::DEFAULT_TOL;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space4() -> FiniteSpace {
    FiniteSpace::indexed(4).unwrap()
}

fn uniform4() -> FiniteMeasure {
    FiniteMeasure::uniform(space4())
}

fn halves(space: &FiniteSpace) -> Partition {
    Partition::new(space, vec![vec![0, 1], vec![2, 3]]).unwrap()
}

fn event(space: &FiniteSpace, members: &[usize]) -> Event {
    Event::new(space, members.iter().copied()).unwrap()
}

fn measure(space: &FiniteSpace, mass: &[f64]) -> FiniteMeasure {
    FiniteMeasure::new(space.clone(), mass.to_vec()).unwrap()
}

mod structure {
    use super::*;

    #[test]
    fn space_rejects_duplicates_separators_and_tiny_sizes() {
        assert!(FiniteSpace::new(["a", "a"]).is_err());
        assert!(FiniteSpace::new(["a,b", "c"]).is_err());
        assert!(FiniteSpace::new(["a"]).is_err());
        assert!(FiniteSpace::new(["a", "b c"]).is_err());
        assert!(FiniteSpace::new(["a", "b"]).is_ok());
    }

    #[test]
    fn measure_rejects_bad_masses() {
        let s = space4();
        assert!(FiniteMeasure::new(s.clone(), vec![0.5, 0.5, 0.0, -0.0001]).is_err());
        assert!(FiniteMeasure::new(s.clone(), vec![0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(FiniteMeasure::new(s.clone(), vec![0.5, 0.5]).is_err());
        assert!(FiniteMeasure::new(s, vec![0.25; 4]).is_ok());
    }

    #[test]
    fn partition_rejects_overlap_gap_and_empty_cells() {
        let s = space4();
        assert!(Partition::new(&s, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Partition::new(&s, vec![vec![0, 1], vec![2]]).is_err());
        assert!(Partition::new(&s, vec![vec![0, 1, 2, 3], vec![]]).is_err());
        assert!(Partition::new(&s, vec![vec![0, 1], vec![2, 3]]).is_ok());
    }

    #[test]
    fn join_of_crossing_partitions_is_singletons() {
        let s = space4();
        let p1 = halves(&s);
        let p2 = Partition::new(&s, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let joined = p1.join(&p2).unwrap();
        assert_eq!(joined, Partition::singletons(&s));
    }

    #[test]
    fn coarsens_is_reflexive_and_ordered() {
        let s = space4();
        let h = Partition::singletons(&s);
        let g = halves(&s);
        assert!(g.coarsens(&g));
        assert!(g.coarsens(&h));
        assert!(!h.coarsens(&g));
        assert!(Partition::trivial(&s).coarsens(&g));
        let crossing = Partition::new(&s, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(!g.coarsens(&crossing));
    }

    #[test]
    fn measurability_of_events() {
        let s = space4();
        let g = halves(&s);
        assert!(g.is_measurable(&event(&s, &[0, 1])));
        assert!(g.is_measurable(&event(&s, &[0, 1, 2, 3])));
        assert!(g.is_measurable(&event(&s, &[])));
        assert!(!g.is_measurable(&event(&s, &[0])));
        assert!(!g.is_measurable(&event(&s, &[0, 2])));
    }

    #[test]
    fn drift_function_validation() {
        assert!(DriftFunction::new("dec", |x| 1.0 - x).is_err());
        assert!(DriftFunction::new("big", |x| 1.5 * x).is_err());
        assert!(DriftFunction::clipped_affine(-1.0, 0.5).is_err());
        let f = DriftFunction::clipped_affine(2.0, -0.5).unwrap();
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.eval(0.5), 0.5);
        assert_eq!(f.eval(1.0), 1.0);
    }

    #[test]
    fn reweighting_normalization() {
        let p = uniform4();
        let h = halves(p.space());
        let err = Reweighting::new(p.clone(), h.clone(), vec![2.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::DensityNotNormalized { .. }));
        let rw = Reweighting::normalized(p.clone(), h.clone(), vec![2.0, 1.0]).unwrap();
        let e: f64 = h
            .cells()
            .iter()
            .zip(rw.density())
            .map(|(cell, d)| d * cell.iter().map(|&i| p.atom(i)).sum::<f64>())
            .sum();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_reweighting_has_unit_expectation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = FiniteMeasure::random_positive(space4(), &mut rng);
            let h = halves(p.space());
            let rw = Reweighting::random(p.clone(), h.clone(), &mut rng).unwrap();
            let e: f64 = h
                .cells()
                .iter()
                .zip(rw.density())
                .map(|(cell, d)| d * cell.iter().map(|&i| p.atom(i)).sum::<f64>())
                .sum();
            assert!((e - 1.0).abs() < 1e-12);
        }
    }
}

mod conditionals {
    use super::*;

    #[test]
    fn conditional_prob_on_cell_unions() {
        let p = uniform4();
        let h = halves(p.space());
        let cf = conditional_prob(&p, &event(p.space(), &[0, 1]), &h).unwrap();
        assert_eq!(cf.values(), &[Some(1.0), Some(0.0)]);
    }

    #[test]
    fn conditional_prob_symmetric_event() {
        let p = uniform4();
        let h = halves(p.space());
        let cf = conditional_prob(&p, &event(p.space(), &[0, 2]), &h).unwrap();
        assert_eq!(cf.values(), &[Some(0.5), Some(0.5)]);
    }

    #[test]
    fn conditional_prob_marks_null_cells_undefined() {
        let s = space4();
        let p = measure(&s, &[0.5, 0.5, 0.0, 0.0]);
        let cf = conditional_prob(&p, &event(&s, &[0, 2]), &halves(&s)).unwrap();
        assert_eq!(cf.values(), &[Some(0.5), None]);
        assert_eq!(cf.value_at(0), Some(0.5));
        assert_eq!(cf.value_at(3), None);
    }

    #[test]
    fn mismatched_spaces_error() {
        let p = uniform4();
        let other = FiniteSpace::new(["a", "b", "c", "d"]).unwrap();
        let a = Event::new(&other, [0]).unwrap();
        assert!(matches!(
            conditional_prob(&p, &a, &halves(p.space())),
            Err(Error::SpaceMismatch)
        ));
    }

    #[test]
    fn conditional_measure_examples() {
        let s = space4();
        let p = uniform4();
        assert_eq!(
            conditional_measure(&p, &Event::full(&s)).unwrap().mass(),
            p.mass()
        );
        let q = conditional_measure(&p, &event(&s, &[0, 1])).unwrap();
        assert_eq!(q.mass(), &[0.5, 0.5, 0.0, 0.0]);

        let p = measure(&s, &[0.1, 0.2, 0.3, 0.4]);
        let q = conditional_measure(&p, &event(&s, &[1, 3])).unwrap();
        assert!((q.atom(1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((q.atom(3) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(q.atom(0), 0.0);

        let p = measure(&s, &[0.5, 0.5, 0.0, 0.0]);
        assert!(matches!(
            conditional_measure(&p, &event(&s, &[2, 3])),
            Err(Error::NullConditioningEvent)
        ));
    }

    #[test]
    fn tower_property_over_random_structures() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3usize, 4, 5, 6] {
            let space = FiniteSpace::indexed(n).unwrap();
            let all = partitions(&space);
            for _ in 0..25 {
                let p = FiniteMeasure::random_positive(space.clone(), &mut rng);
                let h = all[rng.random_range(0..all.len())].clone();
                let coarser = coarsenings(&h);
                let g = coarser[rng.random_range(0..coarser.len())].clone();
                let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                let a = Event::new(&space, members).unwrap();

                let fine = conditional_prob(&p, &a, &h).unwrap();
                let coarse = conditional_prob(&p, &a, &g).unwrap();
                for (d, coarse_cell) in g.cells().iter().enumerate() {
                    let pd: f64 = coarse_cell.iter().map(|&i| p.atom(i)).sum();
                    let mut avg = 0.0;
                    for (c, cell) in h.cells().iter().enumerate() {
                        if g.cell_of(cell[0]) == d {
                            let pc: f64 = cell.iter().map(|&i| p.atom(i)).sum();
                            avg += pc / pd * fine.value_on_cell(c).unwrap();
                        }
                    }
                    assert!((avg - coarse.value_on_cell(d).unwrap()).abs() <= 1e-12);
                }
            }
        }
    }
}

mod absolute_continuity {
    use super::*;

    #[test]
    fn identical_measures_are_absolutely_continuous() {
        let p = uniform4();
        let h = Partition::singletons(p.space());
        assert!(is_absolutely_continuous(&p, &p, &h).unwrap());
    }

    #[test]
    fn mutually_singular_measures_are_not() {
        let s = space4();
        let p = measure(&s, &[0.5, 0.5, 0.0, 0.0]);
        let q = measure(&s, &[0.0, 0.0, 0.5, 0.5]);
        assert!(!is_absolutely_continuous(&p, &q, &Partition::singletons(&s)).unwrap());
    }

    #[test]
    fn positive_cell_masses_make_everything_continuous() {
        let s = space4();
        let p = uniform4();
        let q = measure(&s, &[0.9, 0.1, 0.0, 0.0]);
        assert!(is_absolutely_continuous(&p, &q, &halves(&s)).unwrap());
    }
}

mod covariate_shift {
    use super::*;

    #[test]
    fn identity_is_covariate_shift() {
        let p = uniform4();
        let h = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        assert!(is_covariate_shift(&p, &p, &a, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn reweighted_measures_keep_the_posterior() {
        // the constructive direction, randomized
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [4usize, 6] {
            let space = FiniteSpace::indexed(n).unwrap();
            let all = partitions(&space);
            for _ in 0..50 {
                let p = FiniteMeasure::random_positive(space.clone(), &mut rng);
                let h = all[rng.random_range(0..all.len())].clone();
                let rw = Reweighting::random(p.clone(), h.clone(), &mut rng).unwrap();
                let q = reweight(&p, &rw).unwrap();
                let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                let a = Event::new(&space, members).unwrap();
                assert!(is_covariate_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
            }
        }
    }

    #[test]
    fn posterior_change_is_detected() {
        let s = space4();
        let p = uniform4();
        let q = measure(&s, &[0.4, 0.0, 0.3, 0.3]);
        let a = event(&s, &[0, 2]);
        // Q[A | {0,1}] = 1.0 while P[A | {0,1}] = 0.5
        assert!(!is_covariate_shift(&p, &q, &a, &halves(&s), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn target_positive_source_null_cell_is_indeterminate() {
        let s = space4();
        let p = measure(&s, &[0.5, 0.5, 0.0, 0.0]);
        let q = uniform4();
        let a = event(&s, &[0, 2]);
        let err =
            is_covariate_shift(&p, &q, &a, &Partition::singletons(&s), DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, Error::IndeterminatePosterior { cell: 2 }));
    }

    #[test]
    fn measurable_class_event_shifts_freely() {
        // when A is a union of cells the posterior is its indicator, so any
        // absolutely continuous Q qualifies
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let s = space4();
        let h = halves(&s);
        let a = event(&s, &[0, 1]);
        for _ in 0..50 {
            let q = FiniteMeasure::random_positive(s.clone(), &mut rng);
            let p = FiniteMeasure::random_positive(s.clone(), &mut rng);
            assert!(is_covariate_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
        }
    }

    #[test]
    fn independent_class_reduces_to_equal_priors() {
        // product law on 2 x 3 outcomes: class bit × feature column
        let space = FiniteSpace::indexed(6).unwrap();
        let h = Partition::new(&space, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let a = Event::new(&space, [3, 4, 5]).unwrap();
        let product = |alpha: f64, beta: [f64; 3]| {
            let mass: Vec<f64> = (0..6)
                .map(|i| {
                    let class = i / 3;
                    let col = i % 3;
                    (if class == 1 { alpha } else { 1.0 - alpha }) * beta[col]
                })
                .collect();
            FiniteMeasure::new(space.clone(), mass).unwrap()
        };
        let p = product(0.3, [0.2, 0.3, 0.5]);
        let q_same = product(0.3, [0.6, 0.3, 0.1]);
        let q_diff = product(0.4, [0.2, 0.3, 0.5]);
        assert!(is_covariate_shift(&p, &q_same, &a, &h, DEFAULT_TOL).unwrap());
        assert!(!is_covariate_shift(&p, &q_diff, &a, &h, DEFAULT_TOL).unwrap());

        // trivial information set: the special case
        let trivial = Partition::trivial(&space);
        assert!(is_covariate_shift(&p, &q_same, &a, &trivial, DEFAULT_TOL).unwrap());
        assert!(!is_covariate_shift(&p, &q_diff, &a, &trivial, DEFAULT_TOL).unwrap());
    }
}

mod prior_shift {
    use super::*;

    #[test]
    fn identity_is_prior_probability_shift() {
        let p = uniform4();
        let a = event(p.space(), &[0, 1]);
        let h = halves(p.space());
        assert!(is_prior_probability_shift(&p, &p, &a, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn resampled_class_weights_keep_class_conditionals() {
        let s = space4();
        let p = measure(&s, &[0.1, 0.2, 0.3, 0.4]);
        let a = event(&s, &[0, 1]);
        let q_weight = 0.8;
        let pa = p.mass_of(&a);
        let mass: Vec<f64> = (0..4)
            .map(|i| {
                if a.contains(i) {
                    q_weight * p.atom(i) / pa
                } else {
                    (1.0 - q_weight) * p.atom(i) / (1.0 - pa)
                }
            })
            .collect();
        let q = measure(&s, &mass);
        for h in [halves(&s), Partition::singletons(&s)] {
            assert!(is_prior_probability_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
        }
        assert!((q.mass_of(&a) - q_weight).abs() < 1e-12);
    }

    #[test]
    fn nonconstant_reweighting_breaks_class_conditionals() {
        let s = space4();
        let p = uniform4();
        let h = halves(&s);
        let a = event(&s, &[0]);
        let rw = Reweighting::new(p.clone(), h.clone(), vec![1.6, 0.4]).unwrap();
        let q = reweight(&p, &rw).unwrap();
        // P[{0,1} | not-A] = 1/3 while Q[{0,1} | not-A] = 2/3
        assert!(!is_prior_probability_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn degenerate_class_mass_errors() {
        let p = uniform4();
        let a = Event::full(p.space());
        let err = is_prior_probability_shift(&p, &p, &a, &halves(p.space()), DEFAULT_TOL)
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateClassPrior { .. }));
    }
}

mod sufficiency {
    use super::*;

    #[test]
    fn equal_partitions_are_sufficient() {
        let p = uniform4();
        let h = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        assert!(is_sufficient(&p, &a, &h, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn alternating_event_defeats_merging() {
        let p = uniform4();
        let h = Partition::singletons(p.space());
        let g = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        // per-outcome posteriors 1,0,1,0 against merged value 0.5
        assert!(!is_sufficient(&p, &a, &g, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn block_event_survives_merging() {
        let p = uniform4();
        let h = Partition::singletons(p.space());
        let g = halves(p.space());
        let a = event(p.space(), &[0, 1]);
        assert!(is_sufficient(&p, &a, &g, &h, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn non_coarsening_is_a_structural_error() {
        let p = uniform4();
        let h = halves(p.space());
        let crossing = Partition::new(p.space(), vec![vec![0, 2], vec![1, 3]]).unwrap();
        let a = event(p.space(), &[0]);
        assert!(matches!(
            is_sufficient(&p, &a, &crossing, &h, DEFAULT_TOL),
            Err(Error::NotACoarsening)
        ));
    }
}

mod reweighting_op {
    use super::*;

    #[test]
    fn unit_density_is_identity() {
        let p = uniform4();
        let h = halves(p.space());
        let rw = Reweighting::new(p.clone(), h, vec![1.0, 1.0]).unwrap();
        assert_eq!(reweight(&p, &rw).unwrap().mass(), p.mass());
    }

    #[test]
    fn cell_density_scales_cell_masses() {
        let p = uniform4();
        let h = halves(p.space());
        let rw = Reweighting::new(p.clone(), h, vec![2.0, 0.0]).unwrap();
        assert_eq!(reweight(&p, &rw).unwrap().mass(), &[0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn reweighted_measure_shifts_for_every_event() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in [4usize, 5, 6] {
            let space = FiniteSpace::indexed(n).unwrap();
            let all = partitions(&space);
            for _ in 0..10 {
                let p = FiniteMeasure::random_positive(space.clone(), &mut rng);
                let h = all[rng.random_range(0..all.len())].clone();
                let rw = Reweighting::random(p.clone(), h.clone(), &mut rng).unwrap();
                let q = reweight(&p, &rw).unwrap();
                for bits in 0..(1u32 << n) {
                    let members: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
                    let a = Event::new(&space, members).unwrap();
                    assert!(is_covariate_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
                }
            }
        }
    }
}

mod theorem {
    use super::*;

    #[test]
    fn equal_partitions_always_inherit() {
        let p = uniform4();
        let h = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        let v = verify_theorem1(&p, &a, &h, &h, 5, 42, DEFAULT_TOL).unwrap();
        assert!(v.sufficient);
        assert!(v.inherited);
        assert!(v.witness.is_none());
    }

    #[test]
    fn sufficient_merging_inherits() {
        let p = uniform4();
        let h = Partition::singletons(p.space());
        let g = halves(p.space());
        let a = event(p.space(), &[0, 1]);
        let v = verify_theorem1(&p, &a, &g, &h, 5, 42, DEFAULT_TOL).unwrap();
        assert!(v.sufficient);
        assert!(v.inherited);
    }

    #[test]
    fn insufficiency_example_breaks_inheritance_with_prior_moving_witness() {
        for seed in [0u64, 1, 2, 99] {
            let ex = insufficiency_example(seed);
            let v = verify_theorem1(&ex.p, &ex.a, &ex.g, &ex.h, 5, seed, DEFAULT_TOL).unwrap();
            assert!(!v.sufficient, "seed {seed}");
            assert!(!v.inherited, "seed {seed}");
            let witness = v.witness.expect("violations produce a witness");
            let pa = ex.p.mass_of(&ex.a);
            let qa = witness.mass_of(&ex.a);
            assert!(
                (pa - qa).abs() > 1e-6,
                "seed {seed}: witness prior {qa} matches source prior {pa}"
            );
        }
    }

    #[test]
    fn insufficiency_example_is_a_product_law() {
        let ex = insufficiency_example(3);
        let p = &ex.p;
        // marginal of the g bit and of each (y, f) pair
        for i in 0..8usize {
            let (y, f_bit, g_bit) = ((i >> 2) & 1, (i >> 1) & 1, i & 1);
            let yf: f64 = (0..8)
                .filter(|&j| (j >> 2) & 1 == y && (j >> 1) & 1 == f_bit)
                .map(|j| p.atom(j))
                .sum();
            let g_mass: f64 = (0..8)
                .filter(|&j| j & 1 == g_bit)
                .map(|j| p.atom(j))
                .sum();
            assert!((p.atom(i) - yf * g_mass).abs() <= 1e-12);
        }
        assert!(!is_sufficient(&ex.p, &ex.a, &ex.g, &ex.h, DEFAULT_TOL).unwrap());
        assert!(!ex.h.is_measurable(&ex.a));
        assert_eq!(ex.h.num_cells(), 4);
        assert!(ex.g.coarsens(&ex.h));
        assert!(ex.f.coarsens(&ex.h));
    }

    #[test]
    fn preconditions_are_enforced() {
        let p = uniform4();
        let s = p.space().clone();
        let h = Partition::singletons(&s);
        let g = halves(&s);
        let sparse = measure(&s, &[0.5, 0.5, 0.0, 0.0]);
        assert!(matches!(
            verify_theorem1(&sparse, &event(&s, &[2, 3]), &g, &h, 0, 0, DEFAULT_TOL),
            Err(Error::DegenerateClassPrior { .. })
        ));
        let crossing = Partition::new(&s, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(matches!(
            verify_theorem1(&p, &event(&s, &[0]), &crossing, &g, 0, 0, DEFAULT_TOL),
            Err(Error::NotACoarsening)
        ));
    }

    #[test]
    fn measurable_class_events_still_agree() {
        // the posterior is the indicator of the event; the equivalence holds
        // with both verdicts true when the merged cells stay pure and both
        // false when they mix
        let p = uniform4();
        let s = p.space().clone();
        let h = halves(&s);
        let g = Partition::trivial(&s);
        let pure = verify_theorem1(&p, &event(&s, &[0, 1]), &h, &h, 3, 0, DEFAULT_TOL).unwrap();
        assert!(pure.sufficient && pure.inherited);
        let mixed = verify_theorem1(&p, &event(&s, &[0, 1]), &g, &h, 3, 0, DEFAULT_TOL).unwrap();
        assert!(!mixed.sufficient && !mixed.inherited);
    }

    #[test]
    fn conditional_measures_stay_inside_the_shift_class() {
        // P conditioned on a cell is absolutely continuous and keeps the
        // posterior given any partition measuring that cell
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let space = FiniteSpace::indexed(5).unwrap();
        let all = partitions(&space);
        for _ in 0..40 {
            let p = FiniteMeasure::random_positive(space.clone(), &mut rng);
            let h = all[rng.random_range(0..all.len())].clone();
            for c in 0..h.num_cells() {
                let q = conditional_measure(&p, &h.cell_event(c)).unwrap();
                assert!(is_absolutely_continuous(&p, &q, &h).unwrap());
                for bits in 1..(1u32 << 5) - 1 {
                    let members: Vec<usize> = (0..5).filter(|&i| bits >> i & 1 == 1).collect();
                    let a = Event::new(&space, members).unwrap();
                    assert!(is_covariate_shift(&p, &q, &a, &h, DEFAULT_TOL).unwrap());
                }
            }
        }
    }
}

mod drift {
    use super::*;

    fn sufficient_instance() -> (FiniteMeasure, Event, Partition, Partition) {
        let p = uniform4();
        let s = p.space().clone();
        let h = Partition::singletons(&s);
        let g = halves(&s);
        let a = event(&s, &[0, 1]);
        (p, a, g, h)
    }

    #[test]
    fn identity_drift_reduces_to_inheritance() {
        let (p, a, g, h) = sufficient_instance();
        let rw = Reweighting::normalized(p.clone(), h.clone(), vec![2.0, 1.0, 0.5, 0.25]).unwrap();
        assert!(verify_proposition1(&p, &a, &g, &h, &DriftFunction::identity(), &rw).unwrap());
    }

    #[test]
    fn square_drift_transfers_to_the_coarsening() {
        let (p, a, g, h) = sufficient_instance();
        let rw = Reweighting::normalized(p.clone(), h.clone(), vec![1.0, 3.0, 2.0, 0.1]).unwrap();
        assert!(verify_proposition1(&p, &a, &g, &h, &DriftFunction::square(), &rw).unwrap());
    }

    #[test]
    fn insufficient_pair_may_break_the_drift_relation() {
        // not asserted either way; recorded for visibility
        let ex = insufficiency_example(7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rw = Reweighting::random(ex.p.clone(), ex.h.clone(), &mut rng).unwrap();
        let held =
            verify_proposition1(&ex.p, &ex.a, &ex.g, &ex.h, &DriftFunction::square(), &rw)
                .unwrap();
        println!("drift relation on an insufficient pair: {held}");
    }

    #[test]
    fn positive_drift_on_an_empty_class_slice_is_unrealizable() {
        let p = uniform4();
        let s = p.space().clone();
        let h = halves(&s);
        let a = event(&s, &[0]);
        let f = DriftFunction::clipped_affine(1.0, 0.3).unwrap();
        let rw = Reweighting::new(p.clone(), h.clone(), vec![1.0, 1.0]).unwrap();
        // cell {2,3} has no class outcomes but f(0) = 0.3 demands mass there
        let err = verify_proposition1(&p, &a, &h, &h, &f, &rw).unwrap_err();
        assert!(matches!(err, Error::UnrealizableDrift { cell: 1 }));
    }
}

mod he_implication {
    use super::*;

    #[test]
    fn equal_statistic_and_measure_holds_trivially() {
        let p = uniform4();
        let h = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        assert!(he_implication_check(&p, &p, &a, &h, &h, DEFAULT_TOL).unwrap());
    }

    /// Instance with the premises enforced exactly: two statistic cells,
    /// each holding two covariate cells, each of those holding one class
    /// and one non-class outcome; posteriors are constant per statistic
    /// cell and shared between the measures, cell splits differ.
    fn premise_instance(seed: u64) -> (FiniteMeasure, FiniteMeasure, Event, Partition, Partition) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(8).unwrap();
        // outcome 4*s + 2*c + y: statistic cell s, covariate cell c, class y
        let t = Partition::new(
            &space,
            vec![(0..4).collect(), (4..8).collect()],
        )
        .unwrap();
        let h = Partition::new(
            &space,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        )
        .unwrap();
        let a = Event::new(&space, [1, 3, 5, 7]).unwrap();

        let m1: f64 = rng.random_range(0.2..0.8);
        let masses = |rng: &mut ChaCha8Rng| {
            let mut mass = vec![0.0; 8];
            for (s_cell, m) in [(0usize, m1), (1, 1.0 - m1)] {
                let theta: f64 = 0.1 + 0.8 * ((s_cell as f64) * 0.3 + 0.2);
                let w: f64 = rng.random_range(0.2..0.8);
                for (c_cell, wc) in [(0usize, w), (1, 1.0 - w)] {
                    let base = 4 * s_cell + 2 * c_cell;
                    mass[base + 1] = m * wc * theta;
                    mass[base] = m * wc * (1.0 - theta);
                }
            }
            FiniteMeasure::new(space.clone(), mass).unwrap()
        };
        let p = masses(&mut rng);
        let q = masses(&mut rng);
        (p, q, a, t, h)
    }

    #[test]
    fn enforced_premises_always_yield_covariate_shift() {
        for seed in 0..200u64 {
            let (p, q, a, t, h) = premise_instance(seed);
            assert!(
                he_implication_check(&p, &q, &a, &t, &h, DEFAULT_TOL).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn violated_premises_are_named() {
        let s = space4();
        let p = uniform4();
        let h = Partition::singletons(&s);
        let t = Partition::trivial(&s);

        // posterior given singletons is the indicator of {0}: not a function
        // of the trivial statistic
        let err = he_implication_check(&p, &p, &event(&s, &[0]), &t, &h, DEFAULT_TOL).unwrap_err();
        match err {
            Error::PremiseViolated(msg) => assert!(msg.contains("source posterior"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }

        // constant posteriors but different class masses at the statistic level
        let halves_part = halves(&s);
        let a = event(&s, &[0, 2]);
        let q = measure(&s, &[0.4, 0.1, 0.4, 0.1]);
        let err =
            he_implication_check(&p, &q, &a, &t, &halves_part, DEFAULT_TOL).unwrap_err();
        match err {
            Error::PremiseViolated(msg) => assert!(msg.contains("joint law"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}

mod enumeration {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, bell) in [(2usize, 2usize), (3, 5), (4, 15), (5, 52), (6, 203)] {
            let space = FiniteSpace::indexed(n).unwrap();
            assert_eq!(partitions(&space).len(), bell, "n = {n}");
        }
    }

    #[test]
    fn coarsenings_of_singletons_are_all_partitions() {
        let space = FiniteSpace::indexed(4).unwrap();
        let singles = Partition::singletons(&space);
        assert_eq!(coarsenings(&singles).len(), 15);
        let halves_part = halves(&space);
        let c = coarsenings(&halves_part);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&halves_part));
        assert!(c.contains(&Partition::trivial(&space)));
        for g in &c {
            assert!(g.coarsens(&halves_part));
        }
    }

    #[test]
    fn small_sweep_agrees_everywhere() {
        let rows = theorem_sweep(&SweepConfig {
            max_outcomes: 4,
            draws_per_structure: 5,
            random_densities: 3,
            seed: 9,
            tol: DEFAULT_TOL,
        })
        .unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(SweepRow::agree));
        // the appended counterexample is the only n = 8 row
        let last = rows.last().unwrap();
        assert_eq!(last.n, 8);
        assert!(!last.sufficient);
        assert!(!last.inherited);
    }
}

mod serialization {
    use super::*;

    #[test]
    fn measure_round_trip_is_exact() {
        let s = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let p = FiniteMeasure::new(s, vec![0.1, 0.2, 0.7]).unwrap();
        let text = write_measure(&p);
        assert!(text.starts_with("outcomes: a,b,c\n"));
        let back = parse_measure(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn partition_round_trip() {
        let s = space4();
        let p = halves(&s);
        let text = write_partition(&p);
        assert_eq!(text, "outcomes: 0,1,2,3\ncell: 0,1\ncell: 2,3\n");
        assert_eq!(parse_partition(&text).unwrap(), p);
    }

    #[test]
    fn random_measures_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let p = FiniteMeasure::random_positive(space4(), &mut rng);
            assert_eq!(parse_measure(&write_measure(&p)).unwrap(), p);
        }
    }

    #[test]
    fn verdict_formats_witness_and_absence() {
        let p = uniform4();
        let h = halves(p.space());
        let a = event(p.space(), &[0, 2]);
        let v = verify_theorem1(&p, &a, &h, &h, 2, 1, DEFAULT_TOL).unwrap();
        let text = write_verdict(&v);
        assert_eq!(text, "sufficient: true\ninherited: true\nwitness_mass: none\n");

        let ex = insufficiency_example(1);
        let v = verify_theorem1(&ex.p, &ex.a, &ex.g, &ex.h, 2, 1, DEFAULT_TOL).unwrap();
        let text = write_verdict(&v);
        assert!(text.contains("sufficient: false\ninherited: false\nwitness_mass: 0"));
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(parse_measure("mass: 0.5,0.5\n").is_err());
        assert!(parse_measure("outcomes: a,b\nmass: 0.5,abc\n").is_err());
        assert!(parse_partition("outcomes: a,b\n").is_err());
        assert!(parse_partition("outcomes: a,b\ncell: a\n").is_err());
    }
}
