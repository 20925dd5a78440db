use ecd_core::selftest::{brute_force_degree, check_invariants};
use ecd_core::spin::{
    example1_step, field_orbit, observable_value, oracle_observable_value, rotation_apply,
    SpinDynamicsConfig, SpinObservable, SpinState, UnitVector3,
};
use ecd_core::{
    chaos_degree, ecd_of_sequence, empirical_pair, Binning, EmpiricalJoint, EmpiricalMarginal,
    PartitionSpec, Window,
};
use proptest::prelude::*;

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn unit() -> impl Strategy<Value = UnitVector3> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("away from zero", |v| norm(*v) > 0.1)
        .prop_map(|v| UnitVector3::normalize(v).unwrap())
}

fn in_ball() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0).prop_filter("inside unit ball", |v| norm(*v) <= 1.0)
}

proptest! {
    #[test]
    fn short_windows_satisfy_all_invariants(
        xs in prop::collection::vec(-3.0f64..3.0, 202..260),
        span in 1usize..=199,
        bins in 1u32..=8,
    ) {
        let skip = xs.len() - span - 2;
        prop_assert_eq!(check_invariants(&xs, Window { skip, span }, bins), Ok(()));
    }

    #[test]
    fn coarse_valued_windows_satisfy_all_invariants(
        xs in prop::collection::vec(0u8..4, 30..120),
        span in 1usize..=27,
        bins in 1u32..=8,
    ) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        prop_assert_eq!(check_invariants(&xs, Window { skip: 0, span }, bins), Ok(()));
    }

    #[test]
    fn degree_matches_brute_force(
        xs in prop::collection::vec(0.0f64..1.0, 100..200),
        bins in 1u32..=8,
    ) {
        let w = Window { skip: 0, span: xs.len() - 2 };
        let p = PartitionSpec::interval(0.0, 1.0, bins).unwrap();
        let r = ecd_of_sequence(&xs, w, &Binning::Fixed(p)).unwrap();
        let brute = brute_force_degree(&xs, 0, w.span, 0.0, 1.0, bins as usize);
        prop_assert!((r.degree - brute).abs() < 1e-12);
    }

    #[test]
    fn one_successor_per_bin_gives_zero(
        succ in prop::collection::vec(0u64..6, 6),
        weights in prop::collection::vec(1u64..50, 6),
    ) {
        let p = PartitionSpec::interval(0.0, 1.0, 6).unwrap();
        let total: u64 = weights.iter().sum();
        let w = Window::new(0, (total - 1) as usize).unwrap();
        let joint = EmpiricalJoint::from_counts(
            p.clone(), w, (0..6u64).map(|i| ((i, succ[i as usize]), weights[i as usize]))).unwrap();
        let marg = EmpiricalMarginal::from_counts(
            p, w, (0..6u64).map(|i| (i, weights[i as usize]))).unwrap();
        prop_assert_eq!(chaos_degree(&joint, &marg).unwrap().degree, 0.0);
    }

    #[test]
    fn planar_windows_are_bounded(
        pts in prop::collection::vec(prop::array::uniform2(-1.0f64..1.0), 50..150),
        bins in 1u32..=5,
    ) {
        let w = Window { skip: 0, span: pts.len() - 2 };
        let p = PartitionSpec::bounding(pts.iter(), bins).unwrap();
        let (m, j) = empirical_pair(&pts, w, &p).unwrap();
        prop_assert_eq!(j.row_marginal(), m.clone());
        let r = chaos_degree(&j, &m).unwrap();
        prop_assert!(r.degree >= 0.0);
        prop_assert!(r.degree <= (r.occupied_bins as f64).ln() + 1e-12);
    }

    #[test]
    fn closed_form_rotation_matches_matrix_conjugation(
        rho in in_ball(),
        a in prop::array::uniform3(-5.0f64..5.0),
        e in unit(),
        wt in -10.0f64..10.0,
    ) {
        let rho = SpinState::new(rho).unwrap();
        let a = SpinObservable::new(a).unwrap();
        let closed = observable_value(&rho, &a, &e, wt);
        let oracle = oracle_observable_value(&rho, &a, &e, wt);
        prop_assert!((closed - oracle).abs() < 1e-10);
        prop_assert!((norm(rotation_apply(wt, &e, a.get())) - norm(a.get())).abs() < 1e-10);
    }

    #[test]
    fn field_recurrence_stays_on_sphere(e in unit(), theta in -7.0f64..7.0) {
        let mut e = e;
        for _ in 0..2_000 {
            e = example1_step(&e, theta);
        }
        prop_assert!((norm(e.get()) - 1.0).abs() < 1e-9);
    }
}

/// One step from a unit vector lands on the sphere, checked along 10⁵
/// iterates at randomized angles. Long runs at θ = π are not covered: there
/// the norm error is multiplied by 4 e3² per step, whose log-average is zero,
/// so it performs an unbounded random walk.
#[test]
fn field_recurrence_preserves_unit_norm_per_step() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let theta = rng.random_range(0.0..std::f64::consts::PI);
        let mut e = UnitVector3::diagonal();
        for _ in 0..10_000 {
            let next = example1_step(&e, theta);
            worst = worst.max((norm(next.get()) - 1.0).abs());
            e = UnitVector3::normalize(next.get()).unwrap();
        }
    }
    assert!(worst < 1e-9, "{worst:e}");
}

#[test]
fn field_recurrence_norm_over_long_runs_off_pi() {
    for theta in [0.3, 1.1, 2.2, 2.9, 3.1] {
        let cfg = SpinDynamicsConfig {
            theta,
            ..Default::default()
        };
        let worst = field_orbit(&cfg, 100_001)
            .unwrap()
            .iter()
            .map(|e| (norm(*e) - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "theta {theta}: {worst:e}");
    }
}
