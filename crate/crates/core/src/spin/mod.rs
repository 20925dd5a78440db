//! Spin-1/2 in a piecewise-constant magnetic field.
//!
//! The field direction `e_n` follows one of two discrete recurrences and each
//! step rotates the observable `X = a·σ` about `e_n` by `ωτ`. The scalar record
//! `x_n = (ρ⃗, R(ωτ, e_n) a⃗)` is then scored by the chaos degree. For the first
//! recurrence `z_n = (1 - e_n³)/2` obeys the logistic map with
//! `μ = 4 sin²(θ/2)`.

mod matrix;
pub mod theorem;

pub use matrix::Matrix2c;

use std::f64::consts::FRAC_PI_4;

use crate::degree::{ecd_of_sequence, Binning, EcdReport};
use crate::empirical::Window;
use crate::error::{EcdError, Result};
use crate::maps::DIVERGENCE_RADIUS;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Tolerance on `|e| = 1`.
pub const UNIT_TOLERANCE: f64 = 1e-9;
/// Allowed excess of `|ρ⃗|` over 1.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Per-step tolerance of the logistic change of variables.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

/// Field direction on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3(Vec3);

impl UnitVector3 {
    pub const Z: UnitVector3 = UnitVector3([0.0, 0.0, 1.0]);

    pub fn new(e: Vec3) -> Result<Self> {
        let n = norm(e);
        if (n - 1.0).abs() <= UNIT_TOLERANCE {
            Ok(Self(e))
        } else {
            Err(EcdError::Domain {
                what: "field direction",
                detail: format!("|{e:?}| = {n}"),
            })
        }
    }

    /// `v / |v|`, for nonzero finite `v`.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let n = norm(v);
        if n > 0.0 && n.is_finite() {
            Ok(Self([v[0] / n, v[1] / n, v[2] / n]))
        } else {
            Err(EcdError::Domain {
                what: "field direction",
                detail: format!("cannot normalise {v:?}"),
            })
        }
    }

    /// `(1, 1, 1)/√3`.
    pub fn diagonal() -> Self {
        let s = 1.0 / 3f64.sqrt();
        Self([s, s, s])
    }

    pub fn get(&self) -> Vec3 {
        self.0
    }
}

/// Observable `X = a⃗·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable(Vec3);

impl SpinObservable {
    pub fn new(a: Vec3) -> Result<Self> {
        if a.iter().all(|v| v.is_finite()) {
            Ok(Self(a))
        } else {
            Err(EcdError::Domain {
                what: "observable",
                detail: format!("{a:?}"),
            })
        }
    }

    pub fn get(&self) -> Vec3 {
        self.0
    }

    pub fn matrix(&self) -> Matrix2c {
        Matrix2c::sigma_dot(self.0)
    }
}

/// Qubit state as a Bloch vector, `ρ = ½(I + σ·ρ⃗)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState(Vec3);

impl SpinState {
    pub fn new(rho: Vec3) -> Result<Self> {
        let n = norm(rho);
        if n <= 1.0 + STATE_TOLERANCE {
            Ok(Self(rho))
        } else {
            Err(EcdError::Domain {
                what: "state",
                detail: format!("|{rho:?}| = {n} > 1"),
            })
        }
    }

    pub fn get(&self) -> Vec3 {
        self.0
    }

    pub fn density(&self) -> Matrix2c {
        Matrix2c::density(self.0)
    }
}

/// One step of the sphere-preserving field recurrence.
///
/// ```text
/// e1' = (1 - cos θ) e3 e1 - sin θ e2
/// e2' = (1 - cos θ) e3 e2 + sin θ e1
/// e3' = cos θ + (1 - cos θ) e3²
/// ```
/// The output is not renormalised.
pub fn example1_step(e: &UnitVector3, theta: f64) -> UnitVector3 {
    let [e1, e2, e3] = e.0;
    let (s, c) = theta.sin_cos();
    let k = 1.0 - c;
    UnitVector3([k * e3 * e1 - s * e2, k * e3 * e2 + s * e1, c + k * e3 * e3])
}

/// One step of the second recurrence, with `a = 2(1 - cos θ)`:
///
/// ```text
/// e1' = (-1 + a e3²) e1 - 2 sin θ e3 e2
/// e2' = (-1 + a e3²) e2 - 2 sin θ e3 e1
/// e3' = (1 - a) e3 + a e3²
/// ```
/// This map does not preserve the unit sphere.
pub fn example2_step(e: Vec3, theta: f64) -> Vec3 {
    let [e1, e2, e3] = e;
    let (s, c) = theta.sin_cos();
    let a = example2_parameter(theta);
    let g = -1.0 + 2.0 * (1.0 - c) * e3 * e3;
    [
        g * e1 - 2.0 * s * e3 * e2,
        g * e2 - 2.0 * s * e3 * e1,
        (1.0 - a) * e3 + a * e3 * e3,
    ]
}

/// `a = 2(1 - cos θ)`, in `[0, 4]`.
pub fn example2_parameter(theta: f64) -> f64 {
    2.0 * (1.0 - theta.cos())
}

/// `θ ∈ [0, π]` with `2(1 - cos θ) = a`, for `a ∈ [0, 4]`.
pub fn theta_for_example2_parameter(a: f64) -> Result<f64> {
    if (0.0..=4.0).contains(&a) {
        Ok((1.0 - a / 2.0).clamp(-1.0, 1.0).acos())
    } else {
        Err(EcdError::Domain {
            what: "example-2 parameter",
            detail: format!("a = {a} not in [0, 4]"),
        })
    }
}

/// Logistic parameter `4 sin²(θ/2)` equivalent to the first recurrence.
pub fn logistic_parameter(theta: f64) -> f64 {
    let s = (theta / 2.0).sin();
    4.0 * s * s
}

fn rotate(omega_tau: f64, e: Vec3, a: Vec3) -> Vec3 {
    let (s, c) = omega_tau.sin_cos();
    let ea = dot(e, a);
    let w = cross(e, a);
    std::array::from_fn(|k| (a[k] - e[k] * ea) * c + e[k] * ea - w[k] * s)
}

/// `R(ωτ, e) a = [a - e(e·a)] cos ωτ + e(e·a) - (e × a) sin ωτ`.
pub fn rotation_apply(omega_tau: f64, e: &UnitVector3, a: Vec3) -> Vec3 {
    rotate(omega_tau, e.0, a)
}

/// `x = (ρ⃗, R(ωτ, e) a⃗)`.
pub fn observable_value(
    rho: &SpinState,
    a: &SpinObservable,
    e: &UnitVector3,
    omega_tau: f64,
) -> f64 {
    dot(rho.0, rotation_apply(omega_tau, e, a.0))
}

/// `Re tr(X V ρ V†)` with `V = exp(-i (ωτ/2) e·σ)`, evaluated with explicit
/// 2×2 complex matrices. Independent of [`observable_value`].
pub fn oracle_observable_value(
    rho: &SpinState,
    a: &SpinObservable,
    e: &UnitVector3,
    omega_tau: f64,
) -> f64 {
    let v = Matrix2c::spin_rotation(e.0, omega_tau);
    (a.matrix() * v.conjugate(rho.density())).trace().re
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinExample {
    /// Sphere-preserving recurrence, logistic in `z = (1 - e3)/2`.
    Example1,
    /// Recurrence with `e3' = (1 - a) e3 + a e3²`.
    Example2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ObservableMode {
    /// `x_n = (ρ⃗, R(ωτ, e_n) a⃗)`.
    Full,
    /// `x'_n = (e_n³)²`.
    #[default]
    Reduced,
}

impl std::str::FromStr for ObservableMode {
    type Err = EcdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ObservableMode::Full),
            "reduced" => Ok(ObservableMode::Reduced),
            other => Err(EcdError::InvalidArgument(format!(
                "unknown observable mode {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDynamicsConfig {
    pub example: SpinExample,
    pub theta: f64,
    pub omega_tau: f64,
    /// Initial field direction. Must be a unit vector for [`SpinExample::Example1`];
    /// taken as-is for [`SpinExample::Example2`].
    pub e0: Vec3,
    pub a: SpinObservable,
    pub rho: SpinState,
    pub observable: ObservableMode,
}

impl Default for SpinDynamicsConfig {
    fn default() -> Self {
        Self {
            example: SpinExample::Example1,
            theta: std::f64::consts::PI,
            omega_tau: FRAC_PI_4,
            e0: UnitVector3::diagonal().0,
            a: SpinObservable([0.0, 0.0, 1.0]),
            rho: SpinState([0.0, 0.0, 1.0]),
            observable: ObservableMode::Reduced,
        }
    }
}

impl SpinDynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("theta", self.theta), ("omega_tau", self.omega_tau)] {
            if !v.is_finite() {
                return Err(EcdError::Domain {
                    what,
                    detail: format!("{v}"),
                });
            }
        }
        if !self.e0.iter().all(|v| v.is_finite()) {
            return Err(EcdError::Domain {
                what: "initial field",
                detail: format!("{:?}", self.e0),
            });
        }
        if self.example == SpinExample::Example1 {
            UnitVector3::new(self.e0)?;
        }
        SpinObservable::new(self.a.0)?;
        SpinState::new(self.rho.0)?;
        Ok(())
    }
}

/// Field directions `e_0, …, e_{length-1}`.
///
/// Example 2 is not bounded: once `|e_n|` exceeds [`DIVERGENCE_RADIUS`] the
/// orbit is rejected with [`EcdError::Diverged`].
pub fn field_orbit(config: &SpinDynamicsConfig, length: usize) -> Result<Vec<Vec3>> {
    config.validate()?;
    if length == 0 {
        return Err(EcdError::InvalidArgument(
            "orbit length must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(length);
    match config.example {
        SpinExample::Example1 => {
            let mut e = UnitVector3::new(config.e0)?;
            out.push(e.0);
            for _ in 1..length {
                e = example1_step(&e, config.theta);
                out.push(e.0);
            }
        }
        SpinExample::Example2 => {
            let mut e = config.e0;
            out.push(e);
            for step in 1..length {
                e = example2_step(e, config.theta);
                let r = norm(e);
                if r.is_nan() || r > DIVERGENCE_RADIUS {
                    return Err(EcdError::Diverged { step });
                }
                out.push(e);
            }
        }
    }
    Ok(out)
}

fn observe(config: &SpinDynamicsConfig, e: Vec3) -> f64 {
    match config.observable {
        ObservableMode::Reduced => e[2] * e[2],
        ObservableMode::Full => {
            // Example 2 leaves the sphere: rotate about the direction of e_n,
            // and treat a vanishing field as no rotation.
            let n = norm(e);
            if n == 0.0 {
                return dot(config.rho.0, config.a.0);
            }
            let axis = [e[0] / n, e[1] / n, e[2] / n];
            dot(config.rho.0, rotate(config.omega_tau, axis, config.a.0))
        }
    }
}

/// Observable record `x_0, …, x_{length-1}` of the configured dynamics.
pub fn spin_orbit(config: &SpinDynamicsConfig, length: usize) -> Result<Vec<f64>> {
    Ok(field_orbit(config, length)?
        .into_iter()
        .map(|e| observe(config, e))
        .collect())
}

/// Chaos degree of the spin observable record, with `[r, R]` taken over the window.
pub fn spin_ecd(config: &SpinDynamicsConfig, window: Window, bins: u32) -> Result<EcdReport> {
    let xs = spin_orbit(config, window.joint_len())?;
    ecd_of_sequence(&xs, window, &Binning::Auto { bins })
}

/// Maps third field components to `z_n = (1 - e3_n)/2` and checks
/// `z_{n+1} = 4 b z_n (1 - z_n)`, `b = sin²(θ/2)`, at every step.
pub fn logistic_equivalence(e3_orbit: &[f64], theta: f64) -> Result<Vec<f64>> {
    let mu = logistic_parameter(theta);
    let z: Vec<f64> = e3_orbit.iter().map(|e3| 0.5 * (1.0 - e3)).collect();
    for (k, pair) in z.windows(2).enumerate() {
        let deviation = (pair[1] - mu * pair[0] * (1.0 - pair[0])).abs();
        if deviation.is_nan() || deviation > EQUIVALENCE_TOLERANCE {
            return Err(EcdError::EquivalenceViolation {
                index: k + 1,
                deviation,
            });
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn example2_escapes_beyond_a_three() {
        let at = |a: f64| SpinDynamicsConfig {
            example: SpinExample::Example2,
            theta: theta_for_example2_parameter(a).unwrap(),
            ..Default::default()
        };
        assert!(spin_orbit(&at(3.0), 20_000).is_ok());
        assert!(matches!(
            spin_orbit(&at(3.2), 20_000),
            Err(EcdError::Diverged { .. })
        ));
    }

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn example1_examples() {
        for theta in [0.0, 0.4, 2.0, PI] {
            let e = example1_step(&UnitVector3::Z, theta).get();
            assert!(close(e, [0.0, 0.0, 1.0], 1e-15), "{e:?}");
        }
        let e = example1_step(&UnitVector3::new([1.0, 0.0, 0.0]).unwrap(), FRAC_PI_2).get();
        assert!(close(e, [0.0, 1.0, 0.0], 1e-15), "{e:?}");
        let e = example1_step(&UnitVector3::new([0.6, 0.0, 0.8]).unwrap(), FRAC_PI_2).get();
        assert!(close(e, [0.48, 0.6, 0.64], 1e-15), "{e:?}");
        assert!((norm(e) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn example2_examples() {
        assert!(close(
            example2_step([0.0, 0.0, 1.0], 1.3),
            [0.0, 0.0, 1.0],
            1e-15
        ));
        assert!(close(
            example2_step([0.0, 0.0, 0.5], FRAC_PI_2),
            [0.0, 0.0, 0.0],
            1e-15
        ));
        assert_eq!(example2_step([0.0, 0.0, 0.0], 2.2), [0.0, 0.0, 0.0]);
        assert!((example2_parameter(FRAC_PI_2) - 2.0).abs() < 1e-15);
        assert!(
            (example2_parameter(theta_for_example2_parameter(3.3).unwrap()) - 3.3).abs() < 1e-12
        );
        assert!(theta_for_example2_parameter(4.5).is_err());
    }

    #[test]
    fn rotation_examples() {
        let e = UnitVector3::diagonal();
        let a = [0.3, -1.2, 2.0];
        assert_eq!(rotation_apply(0.0, &e, a), a);
        let along = [2.0 * e.get()[0], 2.0 * e.get()[1], 2.0 * e.get()[2]];
        assert!(close(rotation_apply(1.1, &e, along), along, 1e-15));
        let r = rotation_apply(FRAC_PI_2, &UnitVector3::Z, [1.0, 0.0, 0.0]);
        assert!(close(r, [0.0, -1.0, 0.0], 1e-15), "{r:?}");
    }

    #[test]
    fn observable_examples() {
        let rho = SpinState::new([0.1, 0.5, -0.3]).unwrap();
        let a = SpinObservable::new([1.0, 2.0, 3.0]).unwrap();
        let e = UnitVector3::diagonal();
        assert!((observable_value(&rho, &a, &e, 0.0) - dot(rho.get(), a.get())).abs() < 1e-15);

        let z_rho = SpinState::new([0.0, 0.0, 1.0]).unwrap();
        let z_a = SpinObservable::new([0.0, 0.0, 1.0]).unwrap();
        for wt in [0.0, 0.7, PI, 4.0] {
            assert!((observable_value(&z_rho, &z_a, &UnitVector3::Z, wt) - 1.0).abs() < 1e-15);
        }
        let half = UnitVector3::new([0.75f64.sqrt(), 0.0, 0.5]).unwrap();
        assert!((observable_value(&z_rho, &z_a, &half, PI) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn oracle_examples() {
        let rho = SpinState::new([0.1, 0.5, -0.3]).unwrap();
        let a = SpinObservable::new([1.0, 2.0, 3.0]).unwrap();
        let e = UnitVector3::diagonal();
        assert!(
            (oracle_observable_value(&rho, &a, &e, 0.0) - dot(rho.get(), a.get())).abs() < 1e-14
        );
        let z_rho = SpinState::new([0.0, 0.0, 1.0]).unwrap();
        let z_a = SpinObservable::new([0.0, 0.0, 1.0]).unwrap();
        for wt in [0.0, 0.7, PI, 4.0] {
            assert!(
                (oracle_observable_value(&z_rho, &z_a, &UnitVector3::Z, wt) - 1.0).abs() < 1e-14
            );
        }
        for wt in [0.3, 1.9, 5.5] {
            let closed = observable_value(&rho, &a, &e, wt);
            let oracle = oracle_observable_value(&rho, &a, &e, wt);
            assert!((closed - oracle).abs() < 1e-12, "{closed} vs {oracle}");
        }
    }

    #[test]
    fn reduced_closed_form_for_z_observable() {
        // x_n = cos ωτ + e3² (1 - cos ωτ) when a⃗ = ρ⃗ = ẑ
        let cfg = SpinDynamicsConfig {
            observable: ObservableMode::Full,
            theta: 2.3,
            ..Default::default()
        };
        let xs = spin_orbit(&cfg, 50).unwrap();
        let es = field_orbit(&cfg, 50).unwrap();
        let c = cfg.omega_tau.cos();
        for (x, e) in xs.iter().zip(&es) {
            assert!((x - (c + e[2] * e[2] * (1.0 - c))).abs() < 1e-14);
        }
    }

    #[test]
    fn spin_orbit_examples() {
        let fixed = SpinDynamicsConfig {
            e0: [0.0, 0.0, 1.0],
            theta: 1.4,
            ..Default::default()
        };
        assert!(spin_orbit(&fixed, 20).unwrap().iter().all(|&x| x == 1.0));

        let ex2 = SpinDynamicsConfig {
            example: SpinExample::Example2,
            e0: [0.0, 0.0, 0.5],
            theta: FRAC_PI_2,
            ..Default::default()
        };
        let xs = spin_orbit(&ex2, 5).unwrap();
        assert_eq!(xs[0], 0.25);
        assert!(xs[1..].iter().all(|&x| x.abs() < 1e-30), "{xs:?}");

        let not_unit = SpinDynamicsConfig {
            e0: [0.0, 0.0, 0.5],
            ..Default::default()
        };
        assert!(spin_orbit(&not_unit, 5).is_err());
        assert!(spin_orbit(&fixed, 0).is_err());
    }

    #[test]
    fn theta_pi_reduces_to_full_logistic() {
        // e3 = 1 - 2 z0, reduced observable (1 - 2 z_n)² with μ = 4
        let z0: f64 = 0.3;
        let e3 = 1.0 - 2.0 * z0;
        let s = ((1.0 - e3 * e3) / 2.0).sqrt();
        let cfg = SpinDynamicsConfig {
            e0: [s, s, e3],
            theta: PI,
            ..Default::default()
        };
        let xs = spin_orbit(&cfg, 30).unwrap();
        let mut z = z0;
        for x in xs.iter().take(15) {
            assert!((x - (1.0 - 2.0 * z).powi(2)).abs() < 1e-9);
            z = 4.0 * z * (1.0 - z);
        }
    }

    #[test]
    fn spin_ecd_examples() {
        let w = Window::new(2_000, 20_000).unwrap();
        let fixed = SpinDynamicsConfig {
            e0: [0.0, 0.0, 1.0],
            ..Default::default()
        };
        assert_eq!(spin_ecd(&fixed, w, 100).unwrap().degree, 0.0);
        let calm = SpinDynamicsConfig {
            theta: 1.0,
            ..Default::default()
        };
        assert_eq!(spin_ecd(&calm, w, 100).unwrap().degree, 0.0);
        let wild = SpinDynamicsConfig {
            theta: 3.0,
            ..Default::default()
        };
        assert!(spin_ecd(&wild, w, 100).unwrap().degree > 0.0);
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(
            logistic_equivalence(&[1.0; 10], 0.8).unwrap(),
            vec![0.0; 10]
        );
        assert_eq!(logistic_parameter(PI), 4.0);
        let cfg = SpinDynamicsConfig {
            theta: 2.5,
            ..Default::default()
        };
        let e3: Vec<f64> = field_orbit(&cfg, 1_000)
            .unwrap()
            .iter()
            .map(|e| e[2])
            .collect();
        assert_eq!(logistic_equivalence(&e3, 2.5).unwrap().len(), 1_000);
        let mut bad = e3.clone();
        bad[500] += 1e-6;
        assert!(matches!(
            logistic_equivalence(&bad, 2.5),
            Err(EcdError::EquivalenceViolation { index: 500, .. })
        ));
    }
}
