//! Sweep configuration.
//!
//! Settings come from three layers: built-in defaults, an optional TOML file,
//! and command-line flags. Both outer layers are parsed into [`ConfigLayer`],
//! merged field by field (flags win), and resolved into a validated
//! [`SweepConfig`].
//!
//! ```toml
//! target = "spin-example1"
//! param = "theta"
//! skip = 10000
//! window = 100000
//! bins = [100]
//! csv = "theta.csv"
//!
//! [grid]
//! start = 0.0
//! stop = 3.141592653589793
//! count = 64
//! ```

use std::f64::consts::PI;
use std::path::PathBuf;

use ecd_core::maps::{MapFamily, MapSpec, TinkerbellParams};
use ecd_core::spin::{
    theta_for_example2_parameter, ObservableMode, SpinDynamicsConfig, SpinExample, SpinObservable,
    SpinState, Vec3,
};
use ecd_core::{Window, DEFAULT_BINS};
use serde::Deserialize;

use crate::error::{Result, SweepError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Map(MapFamily),
    Spin(SpinExample),
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Map(f) => f.name(),
            Target::Spin(SpinExample::Example1) => "spin-example1",
            Target::Spin(SpinExample::Example2) => "spin-example2",
        }
    }

    fn default_param(self) -> Param {
        match self {
            Target::Map(MapFamily::Logistic) => Param::Mu,
            Target::Map(MapFamily::Baker) => Param::X0,
            Target::Map(MapFamily::Tinkerbell) => Param::TinkerbellA,
            Target::Spin(SpinExample::Example1) => Param::Theta,
            Target::Spin(SpinExample::Example2) => Param::FieldStrength,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spin-example1" | "spin1" => Ok(Target::Spin(SpinExample::Example1)),
            "spin-example2" | "spin2" => Ok(Target::Spin(SpinExample::Example2)),
            other => other
                .parse::<MapFamily>()
                .map(Target::Map)
                .map_err(|_| SweepError::config(format!("unknown target {other:?}"))),
        }
    }
}

/// The swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    /// Logistic `μ`.
    Mu,
    /// First coordinate of the initial point.
    X0,
    /// Second coordinate of the initial point.
    Y0,
    TinkerbellA,
    TinkerbellB,
    TinkerbellC,
    TinkerbellD,
    Theta,
    OmegaTau,
    /// Example-2 `a = 2(1 - cos θ)`.
    FieldStrength,
}

impl Param {
    fn parse(name: &str, target: Target) -> Result<Self> {
        use MapFamily::*;
        let p = match (target, name) {
            (Target::Map(Logistic), "mu") => Param::Mu,
            (Target::Map(_), "x0") => Param::X0,
            (Target::Map(Baker | Tinkerbell), "y0") => Param::Y0,
            (Target::Map(Tinkerbell), "a") => Param::TinkerbellA,
            (Target::Map(Tinkerbell), "b") => Param::TinkerbellB,
            (Target::Map(Tinkerbell), "c") => Param::TinkerbellC,
            (Target::Map(Tinkerbell), "d") => Param::TinkerbellD,
            (Target::Spin(_), "theta") => Param::Theta,
            (Target::Spin(_), "omega_tau" | "omega-tau") => Param::OmegaTau,
            (Target::Spin(SpinExample::Example2), "a") => Param::FieldStrength,
            _ => {
                return Err(SweepError::config(format!(
                    "parameter {name:?} does not apply to target {}",
                    target.name()
                )))
            }
        };
        Ok(p)
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Mu => "mu",
            Param::X0 => "x0",
            Param::Y0 => "y0",
            Param::TinkerbellA | Param::FieldStrength => "a",
            Param::TinkerbellB => "b",
            Param::TinkerbellC => "c",
            Param::TinkerbellD => "d",
            Param::Theta => "theta",
            Param::OmegaTau => "omega_tau",
        }
    }

    fn default_grid(self, target: Target) -> Option<Grid> {
        let g = |start, stop, count| {
            Some(Grid {
                start,
                stop,
                count,
                inclusive: true,
            })
        };
        match (self, target) {
            (Param::Theta | Param::OmegaTau, _) => g(0.0, PI, 64),
            (Param::FieldStrength, _) => g(0.0, 4.0, 64),
            (Param::Mu, _) => g(2.5, 4.0, 64),
            (Param::X0, Target::Map(MapFamily::Baker)) => g(0.1, 0.9, 9),
            _ => None,
        }
    }
}

/// Largest accepted grid.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Evenly spaced parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "inclusive_default")]
    pub inclusive: bool,
}

fn inclusive_default() -> bool {
    true
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(SweepError::config("grid bounds must be finite"));
        }
        if self.count == 0 || self.count > MAX_GRID_POINTS {
            return Err(SweepError::config(format!(
                "grid count must be in 1..={MAX_GRID_POINTS}"
            )));
        }
        if self.start > self.stop {
            return Err(SweepError::config(format!(
                "grid start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    /// The grid values, ascending. With `inclusive` the last value is `stop`.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let steps = if self.inclusive {
            self.count - 1
        } else {
            self.count
        } as f64;
        let width = self.stop - self.start;
        (0..self.count)
            .map(|i| {
                if self.inclusive && i == self.count - 1 {
                    self.stop
                } else {
                    self.start + width * i as f64 / steps
                }
            })
            .collect()
    }
}

/// `start:stop:count`, inclusive of `stop`.
pub fn parse_grid(s: &str) -> Result<Grid> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(SweepError::config(format!(
            "grid {s:?}: expected start:stop:count"
        )));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| SweepError::config(format!("grid {s:?}: {t:?}: {e}")))
    };
    let count = count
        .trim()
        .parse::<usize>()
        .map_err(|e| SweepError::config(format!("grid {s:?}: count {count:?}: {e}")))?;
    let grid = Grid {
        start: num(start)?,
        stop: num(stop)?,
        count,
        inclusive: true,
    };
    grid.validate()?;
    Ok(grid)
}

/// Comma-separated reals, e.g. `0.1,-2,3e-4`.
pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| SweepError::config(format!("{t:?} in {s:?}: {e}")))
        })
        .collect()
}

/// Exactly three comma-separated reals.
pub fn parse_vec3(s: &str) -> Result<Vec3> {
    let v = parse_reals(s)?;
    <[f64; 3]>::try_from(v.as_slice())
        .map_err(|_| SweepError::config(format!("{s:?}: expected three components")))
}

/// Comma-separated positive bin counts, e.g. `10,100`.
pub fn parse_bins(s: &str) -> Result<Vec<u32>> {
    let bins = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| SweepError::config(format!("bins {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    check_bins(&bins)?;
    Ok(bins)
}

fn check_bins(bins: &[u32]) -> Result<()> {
    if bins.is_empty() || bins.contains(&0) {
        return Err(SweepError::config(
            "bins must be a nonempty list of positive counts",
        ));
    }
    Ok(())
}

/// One layer of optional settings, as read from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub target: Option<String>,
    pub param: Option<String>,
    pub grid: Option<Grid>,
    pub skip: Option<usize>,
    pub window: Option<usize>,
    pub bins: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub workers: Option<usize>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub mu: Option<f64>,
    pub x0: Option<Vec<f64>>,
    pub map_params: Option<Vec<f64>>,
    pub theta: Option<f64>,
    pub omega_tau: Option<f64>,
    pub e0: Option<Vec3>,
    pub a: Option<Vec3>,
    pub rho: Option<Vec3>,
    pub observable: Option<String>,
}

impl ConfigLayer {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SweepError::config(e.to_string()))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SweepError::config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
            .map_err(|e| SweepError::config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            target: over.target.or(self.target),
            param: over.param.or(self.param),
            grid: over.grid.or(self.grid),
            skip: over.skip.or(self.skip),
            window: over.window.or(self.window),
            bins: over.bins.or(self.bins),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
            workers: over.workers.or(self.workers),
            csv: over.csv.or(self.csv),
            svg: over.svg.or(self.svg),
            mu: over.mu.or(self.mu),
            x0: over.x0.or(self.x0),
            map_params: over.map_params.or(self.map_params),
            theta: over.theta.or(self.theta),
            omega_tau: over.omega_tau.or(self.omega_tau),
            e0: over.e0.or(self.e0),
            a: over.a.or(self.a),
            rho: over.rho.or(self.rho),
            observable: over.observable.or(self.observable),
        }
    }
}

/// The dynamics evaluated at one grid point, before the swept value is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Map(MapSpec),
    Spin(SpinDynamicsConfig),
}

impl Model {
    /// The model with `param` set to `value`.
    pub fn with(&self, param: Param, value: f64) -> ecd_core::Result<Model> {
        let mut m = *self;
        match (&mut m, param) {
            (Model::Map(MapSpec::Logistic { mu, .. }), Param::Mu) => *mu = value,
            (Model::Map(MapSpec::Logistic { x0, .. }), Param::X0) => *x0 = value,
            (Model::Map(MapSpec::Baker { x0 } | MapSpec::Tinkerbell { x0, .. }), Param::X0) => {
                x0[0] = value
            }
            (Model::Map(MapSpec::Baker { x0 } | MapSpec::Tinkerbell { x0, .. }), Param::Y0) => {
                x0[1] = value
            }
            (Model::Map(MapSpec::Tinkerbell { params, .. }), p) => match p {
                Param::TinkerbellA => params.a = value,
                Param::TinkerbellB => params.b = value,
                Param::TinkerbellC => params.c = value,
                Param::TinkerbellD => params.d = value,
                _ => return Err(mismatch(param)),
            },
            (Model::Spin(cfg), Param::Theta) => cfg.theta = value,
            (Model::Spin(cfg), Param::OmegaTau) => cfg.omega_tau = value,
            (Model::Spin(cfg), Param::FieldStrength) => {
                cfg.theta = theta_for_example2_parameter(value)?
            }
            _ => return Err(mismatch(param)),
        }
        match &m {
            Model::Map(spec) => spec.validate()?,
            Model::Spin(cfg) => cfg.validate()?,
        }
        Ok(m)
    }
}

fn mismatch(param: Param) -> ecd_core::EcdError {
    ecd_core::EcdError::InvalidArgument(format!("parameter {} does not apply", param.name()))
}

/// A fully resolved sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub target: Target,
    pub model: Model,
    pub param: Param,
    pub grid: Grid,
    pub window: Window,
    /// Candidate bins per axis; the largest degree over them is reported.
    pub bins: Vec<u32>,
    /// Initial points averaged per grid point; 1 means the configured point only.
    pub samples: usize,
    pub seed: u64,
    /// `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl SweepConfig {
    pub fn resolve(layer: ConfigLayer) -> Result<Self> {
        let target: Target = layer
            .target
            .as_deref()
            .ok_or_else(|| SweepError::config("no target given"))?
            .parse()?;
        let param = match &layer.param {
            Some(name) => Param::parse(name, target)?,
            None => target.default_param(),
        };
        let grid = match layer.grid {
            Some(g) => g,
            None => param.default_grid(target).ok_or_else(|| {
                SweepError::config(format!("parameter {} needs an explicit grid", param.name()))
            })?,
        };
        grid.validate()?;

        let model = match target {
            Target::Map(family) => Model::Map(map_model(family, &layer)?),
            Target::Spin(example) => Model::Spin(spin_model(example, &layer)?),
        };
        // every grid point must be admissible before any work starts
        for v in grid.values() {
            model
                .with(param, v)
                .map_err(|e| SweepError::config(format!("{} = {v}: {e}", param.name())))?;
        }

        let window = Window::new(
            layer.skip.unwrap_or(Window::DEFAULT_SKIP),
            layer.window.unwrap_or(Window::DEFAULT_SPAN),
        )
        .map_err(|e| SweepError::config(e.to_string()))?;
        let bins = layer.bins.unwrap_or_else(|| vec![DEFAULT_BINS]);
        check_bins(&bins)?;
        let samples = layer.samples.unwrap_or(1);
        if samples == 0 {
            return Err(SweepError::config("samples must be at least 1"));
        }
        if layer.workers == Some(0) {
            return Err(SweepError::config("workers must be at least 1"));
        }

        Ok(SweepConfig {
            target,
            model,
            param,
            grid,
            window,
            bins,
            samples,
            seed: layer.seed.unwrap_or(0),
            workers: layer.workers,
            csv: layer.csv,
            svg: layer.svg,
        })
    }
}

fn map_model(family: MapFamily, layer: &ConfigLayer) -> Result<MapSpec> {
    let (params, x0) = match family {
        MapFamily::Logistic => {
            if layer.map_params.is_some() {
                return Err(SweepError::config("logistic takes --mu, not map_params"));
            }
            (
                vec![layer.mu.unwrap_or(4.0)],
                layer.x0.clone().unwrap_or_else(|| vec![0.3]),
            )
        }
        MapFamily::Baker => {
            if layer.mu.is_some() || layer.map_params.is_some() {
                return Err(SweepError::config("baker takes no parameters"));
            }
            (vec![], layer.x0.clone().unwrap_or_else(|| vec![0.3, 0.6]))
        }
        MapFamily::Tinkerbell => {
            if layer.mu.is_some() {
                return Err(SweepError::config(
                    "tinkerbell takes map_params a,b,c,d, not mu",
                ));
            }
            let TinkerbellParams { a, b, c, d } = TinkerbellParams::default();
            (
                layer.map_params.clone().unwrap_or_else(|| vec![a, b, c, d]),
                layer.x0.clone().unwrap_or_else(|| vec![-0.72, -0.64]),
            )
        }
    };
    if layer.theta.is_some()
        || layer.omega_tau.is_some()
        || layer.e0.is_some()
        || layer.observable.is_some()
    {
        return Err(SweepError::config(
            "spin settings given for a classical map",
        ));
    }
    MapSpec::new(family, &params, &x0).map_err(|e| SweepError::config(e.to_string()))
}

fn spin_model(example: SpinExample, layer: &ConfigLayer) -> Result<SpinDynamicsConfig> {
    if layer.mu.is_some() || layer.x0.is_some() || layer.map_params.is_some() {
        return Err(SweepError::config(
            "classical map settings given for a spin target",
        ));
    }
    let base = SpinDynamicsConfig::default();
    let cfg = SpinDynamicsConfig {
        example,
        theta: layer.theta.unwrap_or(base.theta),
        omega_tau: layer.omega_tau.unwrap_or(base.omega_tau),
        e0: layer.e0.unwrap_or(base.e0),
        a: match layer.a {
            Some(a) => SpinObservable::new(a).map_err(|e| SweepError::config(e.to_string()))?,
            None => base.a,
        },
        rho: match layer.rho {
            Some(r) => SpinState::new(r).map_err(|e| SweepError::config(e.to_string()))?,
            None => base.rho,
        },
        observable: match &layer.observable {
            Some(s) => s
                .parse::<ObservableMode>()
                .map_err(|e| SweepError::config(e.to_string()))?,
            None => base.observable,
        },
    };
    cfg.validate()
        .map_err(|e| SweepError::config(e.to_string()))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(target: &str) -> ConfigLayer {
        ConfigLayer {
            target: Some(target.into()),
            ..Default::default()
        }
    }

    #[test]
    fn grid_values() {
        let g = parse_grid("0:1:5").unwrap();
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let open = Grid {
            inclusive: false,
            ..g
        };
        assert_eq!(open.values(), vec![0.0, 0.2, 0.4, 0.6, 0.8]);
        assert_eq!(parse_grid("0.5:0.5:1").unwrap().values(), vec![0.5]);
        let pi = parse_grid(&format!("0:{PI}:64")).unwrap().values();
        assert_eq!(pi.len(), 64);
        assert_eq!(pi[63], PI);
    }

    #[test]
    fn grid_errors() {
        for bad in [
            "",
            "1:2",
            "1:2:3:4",
            "a:1:2",
            "0:1:0",
            "2:1:3",
            "0:inf:3",
            "0:1:-2",
            "0:1:1000001",
        ] {
            assert!(parse_grid(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn list_parsers() {
        assert_eq!(parse_vec3("1, 2,3e-1").unwrap(), [1.0, 2.0, 0.3]);
        assert!(parse_vec3("1,2").is_err());
        assert_eq!(parse_bins("10,100").unwrap(), vec![10, 100]);
        assert!(parse_bins("10,0").is_err());
        assert!(parse_bins("x").is_err());
        assert_eq!(parse_reals("-0.72,-0.64").unwrap(), vec![-0.72, -0.64]);
    }

    #[test]
    fn toml_layer() {
        let text = r#"
            target = "spin-example1"
            param = "theta"
            window = 5000
            bins = [10, 100]
            e0 = [0.0, 0.0, 1.0]
            [grid]
            start = 0.0
            stop = 1.0
            count = 3
        "#;
        let l = ConfigLayer::from_toml_str(text).unwrap();
        assert_eq!(l.bins, Some(vec![10, 100]));
        let cfg = SweepConfig::resolve(l).unwrap();
        assert_eq!(cfg.grid.values(), vec![0.0, 0.5, 1.0]);
        assert_eq!(
            cfg.window,
            Window {
                skip: Window::DEFAULT_SKIP,
                span: 5000
            }
        );
        assert!(ConfigLayer::from_toml_str("unknown_key = 3").is_err());
        assert!(ConfigLayer::from_toml_str("grid = 3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigLayer {
            window: Some(10),
            skip: Some(3),
            ..layer("logistic")
        };
        let flags = ConfigLayer {
            window: Some(20),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!((merged.window, merged.skip), (Some(20), Some(3)));
        assert_eq!(merged.target.as_deref(), Some("logistic"));
    }

    #[test]
    fn defaults_per_target() {
        let cfg = SweepConfig::resolve(layer("spin-example1")).unwrap();
        assert_eq!(cfg.param, Param::Theta);
        assert_eq!(cfg.grid.count, 64);
        assert_eq!(cfg.bins, vec![100]);
        assert_eq!(cfg.window, Window::default());
        let cfg = SweepConfig::resolve(layer("spin-example2")).unwrap();
        assert_eq!(cfg.param, Param::FieldStrength);
        assert_eq!((cfg.grid.start, cfg.grid.stop), (0.0, 4.0));
        assert_eq!(
            SweepConfig::resolve(layer("logistic")).unwrap().param,
            Param::Mu
        );
    }

    #[test]
    fn rejected_configs() {
        assert!(SweepConfig::resolve(ConfigLayer::default()).is_err());
        assert!(SweepConfig::resolve(layer("henon")).is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            param: Some("theta".into()),
            ..layer("logistic")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            param: Some("x0".into()),
            ..layer("logistic")
        })
        .is_err());
        let mu_grid = Grid {
            start: 3.0,
            stop: 5.0,
            count: 3,
            inclusive: true,
        };
        assert!(SweepConfig::resolve(ConfigLayer {
            grid: Some(mu_grid),
            ..layer("logistic")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            window: Some(0),
            ..layer("logistic")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            samples: Some(0),
            ..layer("logistic")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            e0: Some([0.0, 0.0, 0.5]),
            ..layer("spin1")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            mu: Some(3.0),
            ..layer("spin1")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            theta: Some(3.0),
            ..layer("baker")
        })
        .is_err());
        assert!(SweepConfig::resolve(ConfigLayer {
            observable: Some("half".into()),
            ..layer("spin1")
        })
        .is_err());
    }

    #[test]
    fn model_with_param() {
        let cfg = SweepConfig::resolve(layer("spin-example2")).unwrap();
        let Model::Spin(s) = cfg.model.with(Param::FieldStrength, 2.0).unwrap() else {
            panic!()
        };
        assert!((s.theta - PI / 2.0).abs() < 1e-15);
        let tb = SweepConfig::resolve(ConfigLayer {
            param: Some("c".into()),
            grid: Some(Grid {
                start: 1.9,
                stop: 2.0,
                count: 2,
                inclusive: true,
            }),
            ..layer("tinkerbell")
        })
        .unwrap();
        let Model::Map(MapSpec::Tinkerbell { params, .. }) =
            tb.model.with(Param::TinkerbellC, 1.95).unwrap()
        else {
            panic!()
        };
        assert_eq!(params.c, 1.95);
    }
}
