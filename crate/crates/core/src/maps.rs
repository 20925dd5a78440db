//! Classical difference-equation orbit sources: logistic, baker and Tinkerbell.

use crate::degree::{ecd_of_sequence, Binning, EcdReport};
use crate::empirical::Window;
use crate::error::{EcdError, Result};

/// Tinkerbell orbits leaving this radius are reported as divergent.
pub const DIVERGENCE_RADIUS: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TinkerbellParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for TinkerbellParams {
    fn default() -> Self {
        Self {
            a: 0.9,
            b: -0.6013,
            c: 2.0,
            d: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapFamily {
    Logistic,
    Baker,
    Tinkerbell,
}

impl MapFamily {
    pub fn name(self) -> &'static str {
        match self {
            MapFamily::Logistic => "logistic",
            MapFamily::Baker => "baker",
            MapFamily::Tinkerbell => "tinkerbell",
        }
    }
}

impl std::str::FromStr for MapFamily {
    type Err = EcdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logistic" => Ok(MapFamily::Logistic),
            "baker" => Ok(MapFamily::Baker),
            "tinkerbell" => Ok(MapFamily::Tinkerbell),
            other => Err(EcdError::InvalidArgument(format!(
                "unknown map family {other:?}"
            ))),
        }
    }
}

/// A map family together with its parameters and initial point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapSpec {
    Logistic {
        mu: f64,
        x0: f64,
    },
    Baker {
        x0: [f64; 2],
    },
    Tinkerbell {
        params: TinkerbellParams,
        x0: [f64; 2],
    },
}

fn domain(what: &'static str, detail: String) -> EcdError {
    EcdError::Domain { what, detail }
}

fn check_logistic(x: f64, mu: f64) -> Result<()> {
    if !(0.0..=4.0).contains(&mu) {
        return Err(domain(
            "logistic parameter",
            format!("mu = {mu} not in [0, 4]"),
        ));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("logistic point", format!("x = {x} not in [0, 1]")));
    }
    Ok(())
}

fn check_unit_square(p: [f64; 2]) -> Result<()> {
    if p.iter().all(|v| (0.0..=1.0).contains(v)) {
        Ok(())
    } else {
        Err(domain("baker point", format!("{p:?} not in [0, 1]^2")))
    }
}

fn check_bounded(p: [f64; 2]) -> Result<()> {
    let r = p[0].hypot(p[1]);
    // NaN compares false
    if r <= DIVERGENCE_RADIUS {
        Ok(())
    } else {
        Err(domain(
            "tinkerbell point",
            format!("|p| = {r} exceeds {DIVERGENCE_RADIUS}"),
        ))
    }
}

impl MapSpec {
    /// Builds a spec from a family name's raw parameter and point vectors.
    ///
    /// Logistic takes `[mu]`, baker takes no parameters, Tinkerbell takes
    /// `[a, b, c, d]` or none for the default chaotic setting.
    pub fn new(family: MapFamily, params: &[f64], x0: &[f64]) -> Result<Self> {
        let wrong = |what: &str| EcdError::InvalidArgument(format!("{}: {what}", family.name()));
        let spec = match family {
            MapFamily::Logistic => match (params, x0) {
                (&[mu], &[x]) => MapSpec::Logistic { mu, x0: x },
                _ => return Err(wrong("expects one parameter and a scalar initial point")),
            },
            MapFamily::Baker => match (params, x0) {
                (&[], &[x, y]) => MapSpec::Baker { x0: [x, y] },
                _ => return Err(wrong("expects no parameters and a planar initial point")),
            },
            MapFamily::Tinkerbell => {
                let params = match *params {
                    [] => TinkerbellParams::default(),
                    [a, b, c, d] => TinkerbellParams { a, b, c, d },
                    _ => return Err(wrong("expects parameters a,b,c,d")),
                };
                match *x0 {
                    [x, y] => MapSpec::Tinkerbell { params, x0: [x, y] },
                    _ => return Err(wrong("expects a planar initial point")),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> MapFamily {
        match self {
            MapSpec::Logistic { .. } => MapFamily::Logistic,
            MapSpec::Baker { .. } => MapFamily::Baker,
            MapSpec::Tinkerbell { .. } => MapFamily::Tinkerbell,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MapSpec::Logistic { mu, x0 } => check_logistic(x0, mu),
            MapSpec::Baker { x0 } => check_unit_square(x0),
            MapSpec::Tinkerbell { params, x0 } => {
                let TinkerbellParams { a, b, c, d } = params;
                if ![a, b, c, d].iter().all(|v| v.is_finite()) {
                    return Err(domain("tinkerbell parameters", format!("{params:?}")));
                }
                check_bounded(x0)
            }
        }
    }
}

/// `μ x (1 - x)`.
pub fn logistic_step(x: f64, mu: f64) -> Result<f64> {
    check_logistic(x, mu)?;
    Ok(mu * x * (1.0 - x))
}

/// Baker's transformation on the unit square.
pub fn baker_step(p: [f64; 2]) -> Result<[f64; 2]> {
    check_unit_square(p)?;
    let [x, y] = p;
    Ok(if x < 0.5 {
        [2.0 * x, y / 2.0]
    } else {
        [2.0 * x - 1.0, (y + 1.0) / 2.0]
    })
}

/// `(x² - y² + ax + by, 2xy + cx + dy)`, failing once the image leaves
/// [`DIVERGENCE_RADIUS`].
pub fn tinkerbell_step(p: [f64; 2], params: &TinkerbellParams) -> Result<[f64; 2]> {
    let [x, y] = p;
    let TinkerbellParams { a, b, c, d } = *params;
    let next = [x * x - y * y + a * x + b * y, 2.0 * x * y + c * x + d * y];
    check_bounded(next)?;
    Ok(next)
}

/// Iterates `step` from `x0`; element 0 is `x0`. A failing step is reported
/// with the index of the point it would have produced.
pub fn iterate<P, F>(x0: P, length: usize, mut step: F) -> Result<Vec<P>>
where
    P: Copy,
    F: FnMut(P) -> Result<P>,
{
    if length == 0 {
        return Err(EcdError::InvalidArgument(
            "orbit length must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(length);
    let mut x = x0;
    out.push(x);
    for k in 1..length {
        x = step(x).map_err(|e| EcdError::Step {
            step: k,
            source: Box::new(e),
        })?;
        out.push(x);
    }
    Ok(out)
}

/// An orbit of a built-in map, scalar or planar.
#[derive(Debug, Clone, PartialEq)]
pub enum Orbit {
    Line(Vec<f64>),
    Plane(Vec<[f64; 2]>),
}

impl Orbit {
    pub fn len(&self) -> usize {
        match self {
            Orbit::Line(v) => v.len(),
            Orbit::Plane(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Chaos degree of the orbit; planar orbits use the product partition.
    pub fn ecd(&self, window: Window, binning: &Binning) -> Result<EcdReport> {
        match self {
            Orbit::Line(v) => ecd_of_sequence(v, window, binning),
            Orbit::Plane(v) => ecd_of_sequence(v, window, binning),
        }
    }
}

/// `length` points of the orbit of `spec`, starting at its initial point.
pub fn orbit(spec: &MapSpec, length: usize) -> Result<Orbit> {
    spec.validate()?;
    match *spec {
        MapSpec::Logistic { mu, x0 } => {
            iterate(x0, length, |x| logistic_step(x, mu)).map(Orbit::Line)
        }
        MapSpec::Baker { x0 } => iterate(x0, length, baker_step).map(Orbit::Plane),
        MapSpec::Tinkerbell { params, x0 } => iterate(x0, length, |p| tinkerbell_step(p, &params))
            .map(Orbit::Plane)
            .map_err(|e| match e {
                EcdError::Step { step, .. } => EcdError::Diverged { step },
                other => other,
            }),
    }
}
