//! Interaction potentials and the effective-energy / effective-potential
//! transformation.
//!
//! With vector (minimal) coupling the stationary Klein-Gordon equation
//!
//! ```text
//! psi'' + [((E - V(x))^2 - m^2 c^4) / (hbar c)^2] psi = 0
//! ```
//!
//! is identical to a Schrödinger equation `psi'' + (2m/hbar^2)(E_eff - V_eff) psi = 0`
//! with
//!
//! ```text
//! E_eff = (E^2 - m^2 c^4) / (2 m c^2)
//! V_eff = (2 E V - V^2) / (2 m c^2)
//! ```
//!
//! `V_eff` depends on the trial energy, so an [`EffectiveForm`] is built per
//! energy. Scalar coupling replaces `m c^2` by `m c^2 + S(x)`, which gives
//! `V_eff = (2 m c^2 S + S^2) / (2 m c^2)`.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// How the potential enters the Klein-Gordon equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingKind {
    /// Time component of a four-vector: `E -> E - V(x)`.
    Vector,
    /// Added to the mass term: `m c^2 -> m c^2 + S(x)`.
    Scalar,
}

impl std::fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CouplingKind::Vector => f.write_str("vector"),
            CouplingKind::Scalar => f.write_str("scalar"),
        }
    }
}

/// Sampled potential, linearly interpolated and zero outside the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    x: Vec<f64>,
    v: Vec<f64>,
}

impl Table {
    pub fn new(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if x.len() != v.len() {
            return Err(Error::InvalidTable(format!(
                "{} positions but {} values",
                x.len(),
                v.len()
            )));
        }
        if x.len() < 2 {
            return Err(Error::InvalidTable("need at least two samples".into()));
        }
        if x.iter().chain(&v).any(|s| !s.is_finite()) {
            return Err(Error::InvalidTable("non-finite sample".into()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTable(
                "positions must be strictly increasing".into(),
            ));
        }
        let (first, last) = (v[0], v[v.len() - 1]);
        if first.abs() > 1e-12 || last.abs() > 1e-12 {
            return Err(Error::InvalidTable(format!(
                "potential must vanish at both ends, got {first} and {last}"
            )));
        }
        Ok(Self { x, v })
    }

    /// Reads a two-column CSV with header `x,V`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "V" {
            return Err(Error::InvalidTable(format!(
                "expected header \"x,V\", found {:?}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut x = Vec::new();
        let mut v = Vec::new();
        for record in rdr.deserialize() {
            let (xi, vi): (f64, f64) = record?;
            x.push(xi);
            v.push(vi);
        }
        Self::new(x, v)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(file)
    }

    pub fn positions(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    fn interpolate(&self, x: f64) -> f64 {
        let n = self.x.len();
        if x < self.x[0] || x > self.x[n - 1] {
            return 0.0;
        }
        // index of the first sample strictly greater than x
        let hi = self.x.partition_point(|&xi| xi <= x).min(n - 1);
        let lo = hi - 1;
        let t = (x - self.x[lo]) / (self.x[hi] - self.x[lo]);
        self.v[lo] + t * (self.v[hi] - self.v[lo])
    }
}

/// Spatial shape of `V(x)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// `-depth` for `|x| <= half_width`, zero outside.
    SquareWell {
        depth: f64,
        half_width: f64,
    },
    /// `+height` for `|x| <= half_width`, zero outside.
    SquareBarrier {
        height: f64,
        half_width: f64,
    },
    /// `amplitude * exp(-x^2 / (2 width^2))`.
    Gaussian {
        amplitude: f64,
        width: f64,
    },
    /// Woods-Saxon-like plateau `amplitude / (1 + exp((|x| - half_width) / diffuseness))`.
    SmoothedBarrier {
        amplitude: f64,
        half_width: f64,
        diffuseness: f64,
    },
    Tabulated(Table),
}

/// A potential together with the way it couples to the particle.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialProfile {
    shape: Shape,
    coupling: CouplingKind,
}

fn positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

fn finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite, got {value}"
        )))
    }
}

/// Relative level below which smooth tails are treated as zero.
const TAIL_CUTOFF: f64 = 1e-16;

impl PotentialProfile {
    pub fn new(shape: Shape, coupling: CouplingKind) -> Self {
        Self { shape, coupling }
    }

    /// Vector-coupled square well. A zero depth is accepted and describes a
    /// free particle.
    pub fn square_well(depth: f64, half_width: f64) -> Result<Self> {
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "well depth must be non-negative, got {depth}"
            )));
        }
        Ok(Self::new(
            Shape::SquareWell {
                depth,
                half_width: positive("half width", half_width)?,
            },
            CouplingKind::Vector,
        ))
    }

    /// Vector-coupled square barrier ("hill"). A zero height is accepted.
    pub fn square_barrier(height: f64, half_width: f64) -> Result<Self> {
        if !(height.is_finite() && height >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "barrier height must be non-negative, got {height}"
            )));
        }
        Ok(Self::new(
            Shape::SquareBarrier {
                height,
                half_width: positive("half width", half_width)?,
            },
            CouplingKind::Vector,
        ))
    }

    pub fn gaussian(amplitude: f64, width: f64) -> Result<Self> {
        Ok(Self::new(
            Shape::Gaussian {
                amplitude: finite("amplitude", amplitude)?,
                width: positive("width", width)?,
            },
            CouplingKind::Vector,
        ))
    }

    pub fn smoothed_barrier(amplitude: f64, half_width: f64, diffuseness: f64) -> Result<Self> {
        Ok(Self::new(
            Shape::SmoothedBarrier {
                amplitude: finite("amplitude", amplitude)?,
                half_width: positive("half width", half_width)?,
                diffuseness: positive("diffuseness", diffuseness)?,
            },
            CouplingKind::Vector,
        ))
    }

    pub fn tabulated(table: Table) -> Self {
        Self::new(Shape::Tabulated(table), CouplingKind::Vector)
    }

    pub fn with_coupling(mut self, coupling: CouplingKind) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn coupling(&self) -> CouplingKind {
        self.coupling
    }

    /// `V(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::SquareWell { depth, half_width } => {
                if x.abs() <= *half_width {
                    -depth
                } else {
                    0.0
                }
            }
            Shape::SquareBarrier { height, half_width } => {
                if x.abs() <= *half_width {
                    *height
                } else {
                    0.0
                }
            }
            Shape::Gaussian { amplitude, width } => {
                amplitude * (-0.5 * (x / width) * (x / width)).exp()
            }
            Shape::SmoothedBarrier {
                amplitude,
                half_width,
                diffuseness,
            } => {
                let arg = (x.abs() - half_width) / diffuseness;
                if arg > 0.0 {
                    let e = (-arg).exp();
                    amplitude * e / (1.0 + e)
                } else {
                    amplitude / (1.0 + arg.exp())
                }
            }
            Shape::Tabulated(table) => table.interpolate(x),
        }
    }

    /// Left and right limits of `V` at `x`. They differ only at the edges
    /// of square profiles.
    pub fn one_sided(&self, x: f64) -> (f64, f64) {
        match self.plateau() {
            Some((value, a)) if x == -a => (0.0, value),
            Some((value, a)) if x == a => (value, 0.0),
            _ => {
                let v = self.evaluate(x);
                (v, v)
            }
        }
    }

    /// Positions where `V` is continuous but `V'` jumps, with the jump
    /// `V'(x+) - V'(x-)`.
    pub fn kinks(&self) -> Vec<(f64, f64)> {
        match &self.shape {
            Shape::SmoothedBarrier {
                amplitude,
                half_width,
                diffuseness,
            } => {
                let e = (-half_width / diffuseness).exp();
                let slope = -amplitude * e / (diffuseness * (1.0 + e) * (1.0 + e));
                vec![(0.0, 2.0 * slope)]
            }
            Shape::Tabulated(t) => {
                let n = t.x.len();
                let slope = |i: usize| (t.v[i + 1] - t.v[i]) / (t.x[i + 1] - t.x[i]);
                (0..n)
                    .map(|i| {
                        let right = if i + 1 < n { slope(i) } else { 0.0 };
                        let left = if i > 0 { slope(i - 1) } else { 0.0 };
                        (t.x[i], right - left)
                    })
                    .filter(|(_, jump)| *jump != 0.0)
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    /// Positions where `V` jumps.
    pub fn discontinuities(&self) -> Vec<f64> {
        match self.plateau() {
            Some((value, a)) if value != 0.0 => vec![-a, a],
            _ => Vec::new(),
        }
    }

    /// `(plateau value, half width)` for square shapes.
    pub fn plateau(&self) -> Option<(f64, f64)> {
        match self.shape {
            Shape::SquareWell { depth, half_width } => Some((-depth, half_width)),
            Shape::SquareBarrier { height, half_width } => Some((height, half_width)),
            _ => None,
        }
    }

    pub fn is_square(&self) -> bool {
        self.plateau().is_some()
    }

    /// `V(x) = V(-x)` holds by construction.
    pub fn is_even(&self) -> bool {
        !matches!(self.shape, Shape::Tabulated(_))
    }

    /// Radius beyond which `V` is zero, or below `1e-16` of its peak for
    /// smooth tails.
    pub fn extent(&self) -> f64 {
        let log_cut = -TAIL_CUTOFF.ln();
        match &self.shape {
            Shape::SquareWell { half_width, .. } | Shape::SquareBarrier { half_width, .. } => {
                *half_width
            }
            Shape::Gaussian { width, .. } => width * (2.0 * log_cut).sqrt(),
            Shape::SmoothedBarrier {
                half_width,
                diffuseness,
                ..
            } => half_width + diffuseness * log_cut,
            Shape::Tabulated(t) => t.x[0].abs().max(t.x[t.x.len() - 1].abs()),
        }
    }

    /// `(min, max)` of `V` over the real line; both include the zero tail.
    pub fn value_range(&self) -> (f64, f64) {
        let peak = match &self.shape {
            Shape::SquareWell { depth, .. } => vec![-depth],
            Shape::SquareBarrier { height, .. } => vec![*height],
            Shape::Gaussian { amplitude, .. } => vec![*amplitude],
            Shape::SmoothedBarrier { .. } => vec![self.evaluate(0.0)],
            Shape::Tabulated(t) => t.v.clone(),
        };
        peak.into_iter()
            .fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Position of the largest `|V|`.
    pub fn peak_position(&self) -> f64 {
        match &self.shape {
            Shape::Tabulated(t) => {
                let mut best = 0;
                for (i, v) in t.v.iter().enumerate() {
                    if v.abs() > t.v[best].abs() {
                        best = i;
                    }
                }
                t.x[best]
            }
            _ => 0.0,
        }
    }
}

/// `V_eff` for a potential value `v` at trial energy `energy`.
pub(crate) fn effective_from_value(
    coupling: CouplingKind,
    v: f64,
    energy: f64,
    params: &ModelParams,
) -> f64 {
    let rest = params.rest_energy();
    match coupling {
        CouplingKind::Vector => (2.0 * energy * v - v * v) / (2.0 * rest),
        CouplingKind::Scalar => (2.0 * rest * v + v * v) / (2.0 * rest),
    }
}

/// `E_eff = (E^2 - m^2 c^4) / (2 m c^2)`.
pub fn effective_energy(energy: f64, params: &ModelParams) -> f64 {
    let rest = params.rest_energy();
    (energy * energy - rest * rest) / (2.0 * rest)
}

/// `V_eff(x)` at trial energy `energy`.
pub fn effective_potential(
    profile: &PotentialProfile,
    energy: f64,
    x: f64,
    params: &ModelParams,
) -> f64 {
    effective_from_value(profile.coupling, profile.evaluate(x), energy, params)
}

/// Numerator of the Klein-Gordon coefficient, `(E - V)^2 - m^2 c^4`.
pub fn klein_gordon_coefficient(energy: f64, v: f64, params: &ModelParams) -> f64 {
    let rest = params.rest_energy();
    (energy - v) * (energy - v) - rest * rest
}

/// The Schrödinger-form problem at one trial energy.
#[derive(Clone, Debug)]
pub struct EffectiveForm<'a> {
    energy: f64,
    effective_energy: f64,
    // energy used inside V_eff; differs from `energy` only in frozen forms
    potential_energy: f64,
    profile: &'a PotentialProfile,
    params: ModelParams,
}

impl<'a> EffectiveForm<'a> {
    /// Form whose `V_eff` is evaluated at `frozen_energy` instead of the
    /// trial energy.
    #[cfg(test)]
    pub(crate) fn frozen(
        profile: &'a PotentialProfile,
        energy: f64,
        frozen_energy: f64,
        params: &ModelParams,
    ) -> Self {
        Self {
            potential_energy: frozen_energy,
            ..effective_form(profile, energy, params)
        }
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn effective_energy(&self) -> f64 {
        self.effective_energy
    }

    pub fn profile(&self) -> &'a PotentialProfile {
        self.profile
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn potential(&self, x: f64) -> f64 {
        effective_from_value(
            self.profile.coupling,
            self.profile.evaluate(x),
            self.potential_energy,
            &self.params,
        )
    }

    /// `Q(x) = (2m / hbar^2)(E_eff - V_eff(x))`, so that `psi'' = -Q psi`.
    pub fn local_wave_number_sq(&self, x: f64) -> f64 {
        self.q_from_veff(self.potential(x))
    }

    /// Left and right limits of `Q` at `x`.
    pub fn local_wave_number_sq_limits(&self, x: f64) -> (f64, f64) {
        let (l, r) = self.profile.one_sided(x);
        let veff = |v| {
            effective_from_value(
                self.profile.coupling,
                v,
                self.potential_energy,
                &self.params,
            )
        };
        (self.q_from_veff(veff(l)), self.q_from_veff(veff(r)))
    }

    /// Jump of `dQ/dx` at a kink of `V` with slope jump `dv_jump`.
    pub fn local_wave_number_sq_kink(&self, x: f64, dv_jump: f64) -> f64 {
        let rest = self.params.rest_energy();
        let v = self.profile.evaluate(x);
        let dveff_dv = match self.profile.coupling {
            CouplingKind::Vector => (self.potential_energy - v) / rest,
            CouplingKind::Scalar => (rest + v) / rest,
        };
        let m = self.params.mass();
        let hbar = self.params.hbar();
        -2.0 * m / (hbar * hbar) * dveff_dv * dv_jump
    }

    fn q_from_veff(&self, veff: f64) -> f64 {
        let m = self.params.mass();
        let hbar = self.params.hbar();
        2.0 * m / (hbar * hbar) * (self.effective_energy - veff)
    }

    /// Exterior decay constant `sqrt(m^2 c^4 - E^2) / (hbar c)`, if real.
    pub fn exterior_decay(&self) -> Option<f64> {
        let q = self.q_from_veff(0.0);
        (q < 0.0).then(|| (-q).sqrt())
    }
}

/// Bundles `E_eff` and `V_eff` for trial energy `energy`.
pub fn effective_form<'a>(
    profile: &'a PotentialProfile,
    energy: f64,
    params: &ModelParams,
) -> EffectiveForm<'a> {
    EffectiveForm {
        energy,
        effective_energy: effective_energy(energy, params),
        potential_energy: energy,
        profile,
        params: *params,
    }
}

/// Strength regime of a repulsive vector barrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `V0 < 2mc^2`: the effective potential stays a barrier.
    Subcritical,
    /// `V0 = 2mc^2`: the effective potential vanishes at `E = mc^2`.
    Critical,
    /// `V0 > 2mc^2`: the hill turns into an effective well.
    Supercritical,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        })
    }
}

const CRITICAL_TOLERANCE: f64 = 1e-9;

/// Classifies a barrier height against `2 m c^2`, with a relative band of
/// `1e-9` counted as critical.
pub fn classify_regime(v0: f64, params: &ModelParams) -> Result<Regime> {
    if !(v0.is_finite() && v0 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "barrier height must be non-negative, got {v0}"
        )));
    }
    let threshold = 2.0 * params.rest_energy();
    let band = threshold * CRITICAL_TOLERANCE;
    Ok(if (v0 - threshold).abs() <= band {
        Regime::Critical
    } else if v0 < threshold {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    })
}

/// Open energy interval `(lower, upper)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyInterval {
    pub lower: f64,
    pub upper: f64,
}

impl EnergyInterval {
    pub fn contains(&self, e: f64) -> bool {
        e > self.lower && e < self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Union of disjoint open intervals where bound states may live.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyWindow {
    pub intervals: Vec<EnergyInterval>,
}

impl EnergyWindow {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, e: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(e))
    }

    /// Pulls every endpoint inward by `margin`, dropping intervals that
    /// vanish.
    pub fn shrink(&self, margin: f64) -> EnergyWindow {
        EnergyWindow {
            intervals: self
                .intervals
                .iter()
                .map(|i| EnergyInterval {
                    lower: i.lower + margin,
                    upper: i.upper - margin,
                })
                .filter(|i| i.upper > i.lower)
                .collect(),
        }
    }
}

/// Energies with a decaying exterior (`|E| < mc^2`) for which the local
/// wave number is real somewhere, given that `V` ranges over
/// `[v_min, v_max]` (an interval containing zero).
pub fn reality_window(
    coupling: CouplingKind,
    v_min: f64,
    v_max: f64,
    params: &ModelParams,
) -> EnergyWindow {
    let rest = params.rest_energy();
    // energies inside [lo, hi] have Q <= 0 everywhere
    let (lo, hi) = match coupling {
        CouplingKind::Vector => (v_max - rest, v_min + rest),
        CouplingKind::Scalar => {
            let m_min = if v_min <= -rest && -rest <= v_max {
                0.0
            } else {
                (rest + v_min).abs().min((rest + v_max).abs())
            };
            (-m_min, m_min)
        }
    };
    let mut intervals = Vec::with_capacity(2);
    if lo > hi {
        intervals.push(EnergyInterval {
            lower: -rest,
            upper: rest,
        });
    } else {
        if lo > -rest {
            intervals.push(EnergyInterval {
                lower: -rest,
                upper: lo.min(rest),
            });
        }
        if hi < rest {
            intervals.push(EnergyInterval {
                lower: hi.max(-rest),
                upper: rest,
            });
        }
    }
    intervals.retain(|i| i.upper > i.lower);
    EnergyWindow { intervals }
}
