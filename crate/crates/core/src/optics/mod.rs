//! Joint two-photon amplitude Ψ(y, z) for the two-double-slit geometry.
//!
//! The source sits near the origin at (u, x). Slits A (l, h) and B (l, -h)
//! feed screen E at horizontal distance l + m; slits C (-l, h) and D (-l, -h)
//! feed screen W at -l - m. One photon lands at height y on E, the other at
//! height z on W. Lengths are meters and k is in 1/m.
//!
//! With θ = 2h/l and the source height spread uniformly over [-d/2, d/2],
//! the amplitude reduces to
//!
//! ```text
//! Ψ(y, z) = env(kθd) · ½cos(kθ(y+z)/2) + ½cos(kθ(y−z)/2),   env(a) = (2/a)·sin(a/2)
//! ```
//!
//! which tends to the factorized cos(kθy/2)·cos(kθz/2) as kθd → 0 and to the
//! non-factorizable ½cos(kθ(y−z)/2) as kθd → ∞.

mod quadrature;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use quadrature::{GaussLegendre, Integrator, QuadratureSettings};

/// Ratio at or below which "much smaller than" is taken to hold.
pub const SMALL_RATIO: f64 = 0.01;
/// kθd at or below this is the classical-interference regime.
pub const CI_THRESHOLD: f64 = 0.1;
/// kθd at or above this is the quantum-interference regime.
pub const QI_THRESHOLD: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("quadrature did not converge after {depth} doublings (last change {last_delta:e})")]
    NonConvergence { depth: u32, last_delta: f64 },
    #[error("separability needs at least a 2x2 grid, got {rows}x{cols}")]
    GridTooSmall { rows: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub k: f64,
    pub h: f64,
    pub l: f64,
    pub m: f64,
    pub d: f64,
    pub u_interval: (f64, f64),
}

impl ExperimentConfig {
    pub fn new(k: f64, h: f64, l: f64, m: f64, d: f64) -> Result<Self, OpticsError> {
        let config = ExperimentConfig { k, h, l, m, d, u_interval: (0.0, 0.0) };
        config.validate()?;
        Ok(config)
    }

    pub fn with_u_interval(mut self, u1: f64, u2: f64) -> Result<Self, OpticsError> {
        self.u_interval = (u1, u2);
        self.validate()?;
        Ok(self)
    }

    /// A small-angle configuration (l = m = 1, h = 1e-3) whose kθ and d give
    /// the requested values.
    pub fn from_k_theta(k_theta: f64, d: f64) -> Result<Self, OpticsError> {
        let (h, l) = (1e-3, 1.0);
        Self::new(k_theta * l / (2.0 * h), h, l, l, d)
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        let fields = [("k", self.k), ("h", self.h), ("l", self.l), ("m", self.m), ("d", self.d)];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(OpticsError::InvalidConfig(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in &fields[..4] {
            if *v <= 0.0 {
                return Err(OpticsError::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.d < 0.0 {
            return Err(OpticsError::InvalidConfig(format!("d must be non-negative, got {}", self.d)));
        }
        let (u1, u2) = self.u_interval;
        if !(u1.is_finite() && u2.is_finite()) || u1 > u2 {
            return Err(OpticsError::InvalidConfig(format!("bad u interval [{u1}, {u2}]")));
        }
        Ok(())
    }

    /// Angle subtended by slits A and B at the origin, 2h/l.
    pub fn theta(&self) -> f64 {
        2.0 * self.h / self.l
    }

    /// Same angle on the west side; equal to `theta` for the symmetric layout.
    pub fn theta_prime(&self) -> f64 {
        2.0 * self.h / self.l
    }

    pub fn k_theta(&self) -> f64 {
        self.k * self.theta()
    }

    pub fn k_theta_d(&self) -> f64 {
        self.k_theta() * self.d
    }

    pub fn x_interval(&self) -> (f64, f64) {
        (-0.5 * self.d, 0.5 * self.d)
    }

    /// h ≪ l and d/2 ≪ h, each read as a ratio of at most 0.01.
    pub fn approximation_valid(&self) -> bool {
        self.h / self.l <= SMALL_RATIO && 0.5 * self.d / self.h <= SMALL_RATIO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    East,
    West,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourcePoint {
    pub u: f64,
    pub x: f64,
}

/// Lower-slit path minus upper-slit path from the source to a screen point,
/// each path being source → slit → screen.
pub fn path_difference_exact(
    config: &ExperimentConfig,
    side: Side,
    source: SourcePoint,
    screen_coord: f64,
) -> f64 {
    let ExperimentConfig { h, l, m, .. } = *config;
    let (x, y) = (source.x, screen_coord);
    let run = match side {
        Side::East => l - source.u,
        Side::West => l + source.u,
    };
    // a - b rewritten as (a² - b²)/(a + b) to avoid cancellation.
    let to_slits = 4.0 * h * x / ((run).hypot(h + x) + (run).hypot(h - x));
    let to_screen = 4.0 * h * y / (m.hypot(y + h) + m.hypot(y - h));
    to_slits + to_screen
}

/// Small-angle path difference h·x/l + h·y/m.
pub fn path_difference_approx(config: &ExperimentConfig, x: f64, screen_coord: f64) -> f64 {
    if !config.approximation_valid() {
        log::warn!(
            "small-angle path difference used outside its range (h/l = {:e}, d/(2h) = {:e})",
            config.h / config.l,
            0.5 * config.d / config.h
        );
    }
    config.h * x / config.l + config.h * screen_coord / config.m
}

/// (2/a)·sin(a/2), continuous at a = 0.
pub fn envelope(k_theta_d: f64) -> f64 {
    if k_theta_d == 0.0 {
        1.0
    } else {
        let half = 0.5 * k_theta_d;
        half.sin() / half
    }
}

pub fn amplitude_closed(config: &ExperimentConfig, y: f64, z: f64) -> f64 {
    let kt = config.k_theta();
    envelope(config.k_theta_d()) * 0.5 * (0.5 * kt * (y + z)).cos()
        + 0.5 * (0.5 * kt * (y - z)).cos()
}

/// Factorized small-uncertainty limit.
pub fn amplitude_ci(config: &ExperimentConfig, y: f64, z: f64) -> f64 {
    let kt = config.k_theta();
    (0.5 * kt * y).cos() * (0.5 * kt * z).cos()
}

/// Large-uncertainty limit, a function of y − z only.
pub fn amplitude_qi(config: &ExperimentConfig, y: f64, z: f64) -> f64 {
    0.5 * (0.5 * config.k_theta() * (y - z)).cos()
}

#[derive(Debug, Clone, Default)]
pub struct QuadratureOptions {
    pub settings: QuadratureSettings,
    /// Integrate the exact-geometry phases over both u and x instead of the
    /// small-angle phases over x alone.
    pub exact_paths: bool,
}

/// Source-averaged amplitude by numerical integration.
///
/// The default integrand is cos(kθ(x+y)/2)·cos(kθ(x+z)/2) averaged over
/// x ∈ [-d/2, d/2]; its u dependence drops out. At d = 0 the average is the
/// integrand at x = 0.
pub fn amplitude_quadrature(
    config: &ExperimentConfig,
    y: f64,
    z: f64,
    options: &QuadratureOptions,
) -> Result<f64, OpticsError> {
    let integrator = Integrator::new(options.settings);
    if options.exact_paths {
        return amplitude_exact_paths(config, y, z, &integrator);
    }
    let kt = config.k_theta();
    let integrand = |x: f64| (0.5 * kt * (x + y)).cos() * (0.5 * kt * (x + z)).cos();
    let (x1, x2) = config.x_interval();
    if x2 <= x1 {
        return Ok(integrand(0.0));
    }
    Ok(integrator.integrate(integrand, x1, x2)? / (x2 - x1))
}

fn amplitude_exact_paths(
    config: &ExperimentConfig,
    y: f64,
    z: f64,
    integrator: &Integrator,
) -> Result<f64, OpticsError> {
    let k = config.k;
    let at = |u: f64, x: f64| {
        let source = SourcePoint { u, x };
        let east = path_difference_exact(config, Side::East, source, y);
        let west = path_difference_exact(config, Side::West, source, z);
        (0.5 * k * east).cos() * (0.5 * k * west).cos()
    };
    let (x1, x2) = config.x_interval();
    let x_average = |u: f64| -> Result<f64, OpticsError> {
        if x2 <= x1 {
            Ok(at(u, 0.0))
        } else {
            Ok(integrator.integrate(|x| at(u, x), x1, x2)? / (x2 - x1))
        }
    };
    let (u1, u2) = config.u_interval;
    if u2 <= u1 {
        return x_average(u1);
    }
    // Inner failures surface through this cell; the outer integrand has no
    // error channel.
    let inner_error = std::cell::RefCell::new(None);
    let outer = integrator.integrate(
        |u| {
            x_average(u).unwrap_or_else(|e| {
                inner_error.borrow_mut().get_or_insert(e);
                f64::NAN
            })
        },
        u1,
        u2,
    );
    if let Some(e) = inner_error.into_inner() {
        return Err(e);
    }
    Ok(outer? / (u2 - u1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "approx-quadrature")]
    Quadrature,
    #[serde(rename = "closed-form")]
    Closed,
    #[serde(rename = "ci-limit")]
    Ci,
    #[serde(rename = "qi-limit")]
    Qi,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Quadrature => "approx-quadrature",
            Method::Closed => "closed-form",
            Method::Ci => "ci-limit",
            Method::Qi => "qi-limit",
        }
    }

    /// Short name used on the command line and in config files.
    pub fn from_name(name: &str) -> Option<Method> {
        match name {
            "exact" => Some(Method::Exact),
            "quadrature" => Some(Method::Quadrature),
            "closed" => Some(Method::Closed),
            "ci" => Some(Method::Ci),
            "qi" => Some(Method::Qi),
            _ => None,
        }
    }

    pub fn evaluate(
        self,
        config: &ExperimentConfig,
        y: f64,
        z: f64,
        settings: &QuadratureSettings,
    ) -> Result<f64, OpticsError> {
        match self {
            Method::Closed => Ok(amplitude_closed(config, y, z)),
            Method::Ci => Ok(amplitude_ci(config, y, z)),
            Method::Qi => Ok(amplitude_qi(config, y, z)),
            Method::Quadrature | Method::Exact => {
                let options = QuadratureOptions {
                    settings: *settings,
                    exact_paths: self == Method::Exact,
                };
                amplitude_quadrature(config, y, z, &options)
            }
        }
    }
}

/// Ψ sampled on a y × z lattice; `values[[i, j]]` is Ψ(y_i, z_j).
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeGrid {
    pub y_samples: Vec<f64>,
    pub z_samples: Vec<f64>,
    pub values: Array2<f64>,
    pub method: Method,
}

impl AmplitudeGrid {
    /// Evaluates every cell; rows run in parallel but each cell is computed
    /// independently, so the result does not depend on scheduling.
    pub fn compute(
        config: &ExperimentConfig,
        method: Method,
        y_samples: Vec<f64>,
        z_samples: Vec<f64>,
        settings: &QuadratureSettings,
    ) -> Result<Self, OpticsError> {
        let rows: Vec<Vec<f64>> = y_samples
            .par_iter()
            .map(|&y| {
                z_samples
                    .iter()
                    .map(|&z| method.evaluate(config, y, z, settings))
                    .collect::<Result<Vec<f64>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let values = Array2::from_shape_fn((y_samples.len(), z_samples.len()), |(i, j)| rows[i][j]);
        Ok(AmplitudeGrid { y_samples, z_samples, values, method })
    }

    pub fn from_fn(
        method: Method,
        y_samples: Vec<f64>,
        z_samples: Vec<f64>,
        f: impl Fn(f64, f64) -> f64,
    ) -> Self {
        let values = Array2::from_shape_fn((y_samples.len(), z_samples.len()), |(i, j)| {
            f(y_samples[i], z_samples[j])
        });
        AmplitudeGrid { y_samples, z_samples, values, method }
    }

    pub fn max_abs_difference(&self, other: &AmplitudeGrid) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `n` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n).map(|i| start + step * i as f64).collect()
        }
    }
}

/// Largest 2×2 minor |Ψ(yᵢ,zⱼ)Ψ(yₚ,z_q) − Ψ(yᵢ,z_q)Ψ(yₚ,zⱼ)| over the grid.
/// Zero exactly when the samples factor as f(y)·g(z).
pub fn separability_defect(grid: &AmplitudeGrid) -> Result<f64, OpticsError> {
    let v = &grid.values;
    let (rows, cols) = v.dim();
    if rows < 2 || cols < 2 {
        return Err(OpticsError::GridTooSmall { rows, cols });
    }
    let worst = (0..rows)
        .into_par_iter()
        .map(|i| {
            let mut worst = 0.0f64;
            for p in i + 1..rows {
                for j in 0..cols {
                    for q in j + 1..cols {
                        let minor = v[[i, j]] * v[[p, q]] - v[[i, q]] * v[[p, j]];
                        worst = worst.max(minor.abs());
                    }
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "CI")]
    Ci,
    #[serde(rename = "QI")]
    Qi,
    #[serde(rename = "intermediate")]
    Intermediate,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Ci => "CI",
            Regime::Qi => "QI",
            Regime::Intermediate => "intermediate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub k_theta_d: f64,
    pub regime: Regime,
    /// 1/(kθd): the factor by which Δp_x/|p_x| exceeds θ when Δx·Δp_x ~ ℏ
    /// and |p_x| ≤ ℏk. Infinite at d = 0.
    #[serde(serialize_with = "serialize_ratio")]
    pub momentum_ratio: f64,
    pub envelope: f64,
}

fn serialize_ratio<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

pub fn classify_regime(config: &ExperimentConfig) -> RegimeReport {
    let k_theta_d = config.k_theta_d();
    let regime = if k_theta_d <= CI_THRESHOLD {
        Regime::Ci
    } else if k_theta_d >= QI_THRESHOLD {
        Regime::Qi
    } else {
        Regime::Intermediate
    };
    let momentum_ratio = if k_theta_d > 0.0 { 1.0 / k_theta_d } else { f64::INFINITY };
    RegimeReport { k_theta_d, regime, momentum_ratio, envelope: envelope(k_theta_d) }
}
