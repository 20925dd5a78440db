//! Built-in consistency checks, runnable from the command line.
//!
//! Each check recomputes its quantity along an independent route: a nested-loop
//! histogram for the chaos degree, explicit 2×2 matrix conjugation for the
//! rotated observable, and direct logistic iteration for the spin recurrence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::channel_from;
use crate::degree::{chaos_degree, chaos_degree_via_channel, ecd_of_sequence, Binning};
use crate::empirical::{empirical_joint, empirical_marginal, Window};
use crate::maps::{orbit, MapSpec, Orbit};
use crate::partition::PartitionSpec;
use crate::spin::theorem::ZeroDegreeChannel;
use crate::spin::{
    field_orbit, logistic_equivalence, logistic_parameter, norm, observable_value,
    oracle_observable_value, rotation_apply, Matrix2c, SpinDynamicsConfig, SpinObservable,
    SpinState, UnitVector3, Vec3,
};

const SEED: u64 = 0x5eed_ecd0;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Runs every check; the suite passes when every outcome does.
pub fn run_all() -> Vec<CheckOutcome> {
    let mut out = zero_degree_suite(&[2, 10, 100]);
    out.push(logistic_equivalence_check(16, 1_000));
    out.push(rotation_oracle_check(1_000));
    out.push(structural_invariants_check(64));
    out
}

/// Brute-force chaos degree: dense `M × M` histogram, bin membership tested
/// against explicit edges `[lo + i(R-r)/M, lo + (i+1)(R-r)/M)`, last bin closed.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_degree(
    xs: &[f64],
    skip: usize,
    span: usize,
    lo: f64,
    hi: f64,
    bins: usize,
) -> f64 {
    let width = hi - lo;
    let member = |x: f64, i: usize| {
        if width == 0.0 {
            return i == 0;
        }
        let lower = lo + (i as f64) * width / bins as f64;
        let upper = lo + ((i + 1) as f64) * width / bins as f64;
        (x >= lower && x < upper) || (i == bins - 1 && x >= lower && x <= hi)
    };
    let n = (span + 1) as f64;
    let mut degree = 0.0;
    for i in 0..bins {
        let mut pi = 0.0;
        for k in skip..=skip + span {
            if member(xs[k], i) {
                pi += 1.0;
            }
        }
        pi /= n;
        for j in 0..bins {
            let mut pij = 0.0;
            for k in skip..=skip + span {
                if member(xs[k], i) && member(xs[k + 1], j) {
                    pij += 1.0;
                }
            }
            pij /= n;
            if pij > 0.0 {
                degree += pij * (pi / pij).ln();
            }
        }
    }
    degree
}

/// Constant-record channels give `D = 0` exactly at every resolution.
pub fn zero_degree_suite(resolutions: &[u32]) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let x = SpinObservable::new(random_vector(&mut rng, 2.0)).expect("finite");
    let rho = SpinState::new(random_in_ball(&mut rng)).expect("in ball");
    let rho0 = SpinState::new(random_in_ball(&mut rng)).expect("in ball");
    let u = Matrix2c::spin_rotation(random_unit(&mut rng).get(), rng.random_range(0.0..6.0))
        .scale(num_complex::Complex64::from_polar(1.0, 0.37));
    let window = Window::new(100, 2_000).expect("nonzero span");
    let bound = norm(x.get()).max(f64::MIN_POSITIVE);

    let cases = [
        ZeroDegreeChannel::FixedUnitary(u),
        ZeroDegreeChannel::Identity,
        ZeroDegreeChannel::Constant(rho0),
        ZeroDegreeChannel::Projective,
    ];
    cases
        .iter()
        .map(|case| {
            let xs = case.observable_sequence(&x, &rho, window.joint_len());
            let mut worst = 0.0f64;
            let mut failure = None;
            for &m in resolutions {
                let fixed = PartitionSpec::interval(-bound, bound, m).map(Binning::Fixed);
                for binning in [Ok(Binning::Auto { bins: m }), fixed] {
                    match binning.and_then(|b| ecd_of_sequence(&xs, window, &b)) {
                        Ok(r) => worst = worst.max(r.degree),
                        Err(e) => failure = Some(format!("M={m}: {e}")),
                    }
                }
            }
            let passed = failure.is_none() && worst == 0.0;
            let detail =
                failure.unwrap_or_else(|| format!("max D = {worst} over M in {resolutions:?}"));
            CheckOutcome::new(format!("zero degree: {}", case.name()), passed, detail)
        })
        .collect()
}

/// The spin recurrence agrees step by step with the logistic map, and the
/// two records score identically under a shared partition.
pub fn logistic_equivalence_check(thetas: usize, steps: usize) -> CheckOutcome {
    let partition = PartitionSpec::interval(0.0, 1.0, 100).expect("valid");
    let window = Window::new(steps / 10, steps - steps / 10 - 2).expect("nonzero span");
    let mut worst_step = 0.0f64;
    let mut worst_degree = 0.0f64;
    for k in 1..=thetas {
        let theta = std::f64::consts::PI * k as f64 / thetas as f64;
        let cfg = SpinDynamicsConfig {
            theta,
            ..Default::default()
        };
        let e3: Vec<f64> = match field_orbit(&cfg, steps) {
            Ok(es) => es.iter().map(|e| e[2]).collect(),
            Err(e) => return CheckOutcome::new("logistic equivalence", false, e.to_string()),
        };
        let z = match logistic_equivalence(&e3, theta) {
            Ok(z) => z,
            Err(e) => {
                return CheckOutcome::new("logistic equivalence", false, format!("θ={theta}: {e}"))
            }
        };
        let mu = logistic_parameter(theta);
        let mut direct = Vec::with_capacity(z.len());
        direct.push(z[0]);
        direct.extend(z.windows(2).map(|w| mu * w[0] * (1.0 - w[0])));
        for (a, b) in z.iter().zip(&direct) {
            worst_step = worst_step.max((a - b).abs());
        }
        let scored =
            ecd_of_sequence(&z, window, &Binning::Fixed(partition.clone())).and_then(|a| {
                Ok((
                    a,
                    ecd_of_sequence(&direct, window, &Binning::Fixed(partition.clone()))?,
                ))
            });
        match scored {
            Ok((a, b)) => worst_degree = worst_degree.max((a.degree - b.degree).abs()),
            Err(e) => return CheckOutcome::new("logistic equivalence", false, e.to_string()),
        }
    }
    CheckOutcome::new(
        "logistic equivalence",
        worst_step <= 1e-12 && worst_degree <= 1e-12,
        format!("{thetas} angles: max step deviation {worst_step:e}, max |ΔD| {worst_degree:e}"),
    )
}

/// Closed-form rotation against `tr(X V ρ V†)`; rotation keeps lengths.
pub fn rotation_oracle_check(samples: usize) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x0120);
    let mut worst_value = 0.0f64;
    let mut worst_length = 0.0f64;
    for _ in 0..samples {
        let rho = SpinState::new(random_in_ball(&mut rng)).expect("in ball");
        let a = SpinObservable::new(random_vector(&mut rng, 3.0)).expect("finite");
        let e = random_unit(&mut rng);
        let wt = rng.random_range(-10.0..10.0);
        let closed = observable_value(&rho, &a, &e, wt);
        let oracle = oracle_observable_value(&rho, &a, &e, wt);
        worst_value = worst_value.max((closed - oracle).abs());
        let rotated = rotation_apply(wt, &e, a.get());
        worst_length = worst_length.max((norm(rotated) - norm(a.get())).abs());
    }
    CheckOutcome::new(
        "rotation oracle",
        worst_value <= 1e-10 && worst_length <= 1e-10,
        format!("{samples} samples: max |Δx| {worst_value:e}, max |Δ|Ra|| {worst_length:e}"),
    )
}

/// Marginal consistency, channel stochasticity, degree bounds, agreement of
/// the two degree formulas and of the brute-force histogram, on short
/// windows (`m + 1 ≤ 200`, `M ≤ 8`).
pub fn structural_invariants_check(trials: usize) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x0006);
    for t in 0..trials {
        let xs = random_orbit(&mut rng);
        let span = rng.random_range(1..=199usize);
        let skip = rng.random_range(0..=xs.len() - span - 2);
        let bins = rng.random_range(1..=8u32);
        if let Err(msg) = check_invariants(&xs, Window { skip, span }, bins) {
            return CheckOutcome::new("structural invariants", false, format!("trial {t}: {msg}"));
        }
    }
    CheckOutcome::new(
        "structural invariants",
        true,
        format!("{trials} random windows"),
    )
}

/// All structural invariants for one window under its automatic partition.
pub fn check_invariants(xs: &[f64], window: Window, bins: u32) -> Result<(), String> {
    let part = PartitionSpec::bounding(xs[window.joint_range()].iter(), bins)
        .map_err(|e| e.to_string())?;
    let marginal = empirical_marginal(xs, window, &part).map_err(|e| e.to_string())?;
    let joint = empirical_joint(xs, window, &part).map_err(|e| e.to_string())?;
    if joint.row_marginal() != marginal {
        return Err("row marginal differs from marginal".into());
    }
    for (i, pi) in marginal.probs() {
        let row: f64 = joint
            .probs()
            .filter(|((r, _), _)| *r == i)
            .map(|(_, p)| p)
            .sum();
        if (row - pi).abs() > 1e-12 {
            return Err(format!("Σ_j p_{i}j = {row} vs p_{i} = {pi}"));
        }
    }
    let channel = channel_from(&joint, &marginal).map_err(|e| e.to_string())?;
    for (i, row) in channel.rows() {
        let s: f64 = row.values().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(format!("channel row {i} sums to {s}"));
        }
    }
    let pushed = channel.apply(&marginal);
    let next = joint.column_marginal();
    for (j, q) in next.probs() {
        let got = pushed.get(&j).copied().unwrap_or(0.0);
        if (got - q).abs() > 1e-12 {
            return Err(format!("Λ*p at {j}: {got} vs {q}"));
        }
    }
    let report = chaos_degree(&joint, &marginal).map_err(|e| e.to_string())?;
    let d = report.degree;
    if !(d >= 0.0 && d <= (report.occupied_bins as f64).ln() + 1e-12) {
        return Err(format!("D = {d} outside [0, ln {}]", report.occupied_bins));
    }
    let via = chaos_degree_via_channel(&joint, &marginal).map_err(|e| e.to_string())?;
    if (d - via).abs() > 1e-12 {
        return Err(format!("log-ratio {d} vs conditional-entropy {via}"));
    }
    let brute = brute_force_degree(
        xs,
        window.skip,
        window.span,
        part.lo()[0],
        part.hi()[0],
        bins as usize,
    );
    if (d - brute).abs() > 1e-12 {
        return Err(format!("D = {d} vs brute force {brute}"));
    }
    Ok(())
}

fn random_orbit(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let len = rng.random_range(210..400);
    match rng.random_range(0..3) {
        0 => {
            let mu = rng.random_range(2.8..4.0);
            let x0 = rng.random_range(0.01..0.99);
            match orbit(&MapSpec::Logistic { mu, x0 }, len) {
                Ok(Orbit::Line(v)) => v,
                _ => unreachable!("logistic orbit in domain"),
            }
        }
        1 => (0..len).map(|_| rng.random_range(-5.0..5.0)).collect(),
        _ => {
            // few distinct levels, so bins share values and rows branch
            let levels: Vec<f64> = (0..rng.random_range(1..6))
                .map(|_| rng.random::<f64>())
                .collect();
            (0..len)
                .map(|_| levels[rng.random_range(0..levels.len())])
                .collect()
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, scale: f64) -> Vec3 {
    std::array::from_fn(|_| rng.random_range(-scale..scale))
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitVector3 {
    loop {
        let v = random_vector(rng, 1.0);
        let n = norm(v);
        if n > 0.1 && n <= 1.0 {
            return UnitVector3::normalize(v).expect("nonzero");
        }
    }
}

fn random_in_ball(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = random_vector(rng, 1.0);
        if norm(v) <= 1.0 {
            return v;
        }
    }
}
