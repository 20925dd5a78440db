use ecd_core::maps::{orbit, MapSpec, Orbit};
use ecd_core::spin::{spin_orbit, SpinDynamicsConfig};
use ecd_core::{ecd_monte_carlo, ecd_sup_over_partitions, Binning, EcdReport, Point, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Model, SweepConfig};
use crate::error::{Result, SweepError};

/// One grid point of a finished sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub degree: f64,
    pub occupied_bins: usize,
    /// Bins per axis of the partition that attained the reported degree.
    pub bins: u32,
    pub skip: usize,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub param_name: &'static str,
    pub rows: Vec<SweepRow>,
}

/// Evaluates every grid point, in parallel on `config.workers` threads.
///
/// Rows come back in grid order and do not depend on the worker count. The
/// first failing grid point, in grid order, aborts the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    let values = config.grid.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let outcomes: Vec<_> = pool.install(|| {
        values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| {
                config
                    .model
                    .with(config.param, v)
                    .and_then(|m| {
                        evaluate(
                            &m,
                            config.window,
                            &config.bins,
                            config.samples,
                            config.seed,
                            i as u64,
                        )
                    })
                    .map_err(|source| SweepError::Point { param: v, source })
            })
            .collect()
    });
    let rows = values
        .iter()
        .zip(outcomes)
        .map(|(&param, outcome)| {
            outcome.map(|r: EcdReport| SweepRow {
                param,
                degree: r.degree,
                occupied_bins: r.occupied_bins,
                bins: r.bins_per_axis(),
                skip: config.window.skip,
                window: config.window.span,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        param_name: config.param.name(),
        rows,
    })
}

/// Chaos degree of one model, maximised over `bins`.
///
/// With `samples > 1` the initial point is redrawn `samples` times from
/// ChaCha8 stream `stream` of `seed` and the counts are pooled.
pub fn evaluate(
    model: &Model,
    window: Window,
    bins: &[u32],
    samples: usize,
    seed: u64,
    stream: u64,
) -> ecd_core::Result<EcdReport> {
    let len = window.joint_len();
    if samples <= 1 {
        return match model {
            Model::Map(spec) => match orbit(spec, len)? {
                Orbit::Line(xs) => ecd_sup_over_partitions(&xs, window, bins),
                Orbit::Plane(ps) => ecd_sup_over_partitions(&ps, window, bins),
            },
            Model::Spin(cfg) => ecd_sup_over_partitions(&spin_orbit(cfg, len)?, window, bins),
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut orbits = Vec::with_capacity(samples);
    for _ in 0..samples {
        orbits.push(match model {
            Model::Map(spec) => orbit(&perturb_map(spec, &mut rng), len)?,
            Model::Spin(cfg) => Orbit::Line(spin_orbit(&perturb_spin(cfg, &mut rng), len)?),
        });
    }
    let lines: Option<Vec<&Vec<f64>>> = orbits
        .iter()
        .map(|o| {
            if let Orbit::Line(v) = o {
                Some(v)
            } else {
                None
            }
        })
        .collect();
    match lines {
        Some(lines) => pooled(&lines, window, bins),
        None => {
            let planes: Vec<&Vec<[f64; 2]>> = orbits
                .iter()
                .filter_map(|o| {
                    if let Orbit::Plane(v) = o {
                        Some(v)
                    } else {
                        None
                    }
                })
                .collect();
            pooled(&planes, window, bins)
        }
    }
}

fn pooled<P: Point + Clone>(
    orbits: &[&Vec<P>],
    window: Window,
    bins: &[u32],
) -> ecd_core::Result<EcdReport> {
    let mut best: Option<EcdReport> = None;
    for &m in bins {
        let mut next = 0;
        let r = ecd_monte_carlo(
            |k: usize| Ok(orbits[k].clone()),
            |_| {
                next += 1;
                next - 1
            },
            0,
            orbits.len(),
            window,
            &Binning::Auto { bins: m },
        )?;
        if best.as_ref().is_none_or(|b| r.degree > b.degree) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| ecd_core::EcdError::InvalidArgument("no bin counts given".into()))
}

/// Logistic and baker draw uniformly from the unit interval or square;
/// Tinkerbell jitters the configured point by up to 0.01 per coordinate.
fn perturb_map(spec: &MapSpec, rng: &mut ChaCha8Rng) -> MapSpec {
    match *spec {
        MapSpec::Logistic { mu, .. } => MapSpec::Logistic {
            mu,
            x0: rng.random(),
        },
        MapSpec::Baker { .. } => MapSpec::Baker {
            x0: [rng.random(), rng.random()],
        },
        MapSpec::Tinkerbell { params, x0 } => MapSpec::Tinkerbell {
            params,
            x0: [
                x0[0] + rng.random_range(-0.01..0.01),
                x0[1] + rng.random_range(-0.01..0.01),
            ],
        },
    }
}

/// Uniform direction on the unit sphere.
fn perturb_spin(cfg: &SpinDynamicsConfig, rng: &mut ChaCha8Rng) -> SpinDynamicsConfig {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    SpinDynamicsConfig {
        e0: [r * phi.cos(), r * phi.sin(), z],
        ..*cfg
    }
}
