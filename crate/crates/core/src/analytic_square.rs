//! Closed-form treatment of the square well and square barrier.
//!
//! For a plateau `V` on `|x| <= a` the effective Schrödinger problem has
//! piecewise-constant coefficients. Bound states match `cos(kx)` or
//! `sin(kx)` inside to `exp(-kappa |x|)` outside:
//!
//! ```text
//! even:  k sin(ka) - kappa cos(ka) = 0
//! odd:   k cos(ka) + kappa sin(ka) = 0
//! ```
//!
//! Both residuals are continuous in the energy, so sign changes bracket
//! roots without spurious poles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{count_nodes, normalize, Grid};
use crate::params::ModelParams;
use crate::potentials::{reality_window, CouplingKind, EnergyWindow, PotentialProfile};

/// Scan points per window interval and parity when bracketing roots.
pub const SCAN_POINTS: usize = 2000;
/// Absolute bisection tolerance, in units of `mc^2`.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Window endpoints are pulled in by this much (units of `mc^2`) since
/// `k` or `kappa` vanish there.
pub const EDGE_MARGIN: f64 = 1e-9;
/// Samples per analytic wavefunction.
pub const WAVEFUNCTION_POINTS: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    /// The profile is not symmetric.
    None,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::None => "none",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Squared wave numbers of a square profile at one energy, in `1/length^2`.
/// A negative value means the corresponding wave number is imaginary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveNumbers {
    /// `(m^2 c^4 - E^2) / (hbar c)^2`.
    pub exterior_decay_sq: f64,
    /// `((E - V)^2 - m^2 c^4) / (hbar c)^2` for vector coupling,
    /// `(E^2 - (m c^2 + S)^2) / (hbar c)^2` for scalar coupling.
    pub interior_sq: f64,
}

impl WaveNumbers {
    pub fn new(energy: f64, plateau: f64, coupling: CouplingKind, params: &ModelParams) -> Self {
        let rest = params.rest_energy();
        let inv = params.inv_hbar_c_sq();
        let interior = match coupling {
            CouplingKind::Vector => (energy - plateau) * (energy - plateau) - rest * rest,
            CouplingKind::Scalar => energy * energy - (rest + plateau) * (rest + plateau),
        };
        Self {
            exterior_decay_sq: (rest * rest - energy * energy) * inv,
            interior_sq: interior * inv,
        }
    }

    /// Exterior decay constant `kappa`, real iff `|E| < mc^2`.
    pub fn kappa(&self) -> Option<f64> {
        (self.exterior_decay_sq > 0.0).then(|| self.exterior_decay_sq.sqrt())
    }

    /// Interior wave number `k`, real iff `|E - V| > mc^2`.
    pub fn k(&self) -> Option<f64> {
        (self.interior_sq > 0.0).then(|| self.interior_sq.sqrt())
    }

    /// Exterior propagating momentum `p`, real iff `|E| > mc^2`.
    pub fn p(&self) -> Option<f64> {
        (self.exterior_decay_sq < 0.0).then(|| (-self.exterior_decay_sq).sqrt())
    }
}

/// A normalized bound state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    /// Energy in the units of the [`ModelParams`] used to solve.
    pub energy: f64,
    pub parity: Parity,
    pub node_count: usize,
    pub x: Vec<f64>,
    /// Unit trapezoidal L2 norm on `x`.
    pub psi: Vec<f64>,
    /// Dimensionless residual of the matching condition at `energy`.
    pub matching_residual: f64,
}

impl BoundState {
    /// Positive-energy states are trapped particles rather than
    /// antiparticle-like states.
    pub fn is_positive_energy(&self) -> bool {
        self.energy > 0.0
    }
}

/// Reflection and transmission at one scattering energy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringPoint {
    pub energy: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub interior: InteriorCharacter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteriorCharacter {
    Propagating,
    Evanescent,
}

impl InteriorCharacter {
    pub fn as_str(&self) -> &'static str {
        match self {
            InteriorCharacter::Propagating => "propagating",
            InteriorCharacter::Evanescent => "evanescent",
        }
    }
}

fn square_parts(profile: &PotentialProfile) -> Result<(f64, f64)> {
    profile.plateau().ok_or(Error::NotSquare)
}

/// Energies with a decaying exterior and an oscillatory interior.
pub fn bound_energy_window(
    profile: &PotentialProfile,
    params: &ModelParams,
) -> Result<EnergyWindow> {
    let (plateau, _) = square_parts(profile)?;
    Ok(reality_window(
        profile.coupling(),
        plateau.min(0.0),
        plateau.max(0.0),
        params,
    ))
}

#[derive(Clone, Copy)]
struct Matching {
    plateau: f64,
    half_width: f64,
    coupling: CouplingKind,
    params: ModelParams,
}

impl Matching {
    fn new(profile: &PotentialProfile, params: &ModelParams) -> Result<Self> {
        let (plateau, half_width) = square_parts(profile)?;
        Ok(Self {
            plateau,
            half_width,
            coupling: profile.coupling(),
            params: *params,
        })
    }

    fn numbers(&self, energy: f64) -> (f64, f64) {
        let w = WaveNumbers::new(energy, self.plateau, self.coupling, &self.params);
        (
            w.interior_sq.max(0.0).sqrt(),
            w.exterior_decay_sq.max(0.0).sqrt(),
        )
    }

    fn residual(&self, parity: Parity, energy: f64) -> f64 {
        let (k, kappa) = self.numbers(energy);
        let (s, c) = (k * self.half_width).sin_cos();
        match parity {
            Parity::Odd => k * c + kappa * s,
            _ => k * s - kappa * c,
        }
    }

    /// Residual scaled by `sqrt(k^2 + kappa^2)`.
    fn relative_residual(&self, parity: Parity, energy: f64) -> f64 {
        let (k, kappa) = self.numbers(energy);
        let scale = (k * k + kappa * kappa).sqrt();
        if scale > 0.0 {
            self.residual(parity, energy).abs() / scale
        } else {
            0.0
        }
    }

    fn wavefunction(&self, parity: Parity, energy: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let (k, kappa) = self.numbers(energy);
        let a = self.half_width;
        let reach = a + 10.0 / kappa;
        let grid = Grid::new(-reach, reach, WAVEFUNCTION_POINTS)?;
        let x: Vec<f64> = grid.points().collect();
        let edge = match parity {
            Parity::Odd => (k * a).sin(),
            _ => (k * a).cos(),
        };
        let raw: Vec<f64> = x
            .iter()
            .map(|&xi| {
                if xi.abs() <= a {
                    match parity {
                        Parity::Odd => (k * xi).sin(),
                        _ => (k * xi).cos(),
                    }
                } else {
                    let tail = edge * (-kappa * (xi.abs() - a)).exp();
                    match parity {
                        Parity::Odd => tail * xi.signum(),
                        _ => tail,
                    }
                }
            })
            .collect();
        let psi = normalize(&raw, &grid)?;
        Ok((x, psi))
    }
}

/// Brackets sign changes of `f` on `n` uniform points over `[lo, hi]`.
pub(crate) fn bracket_sign_changes(
    lo: f64,
    hi: f64,
    n: usize,
    f: impl Fn(f64) -> f64,
) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { hi } else { lo + i as f64 * step };
    let mut out = Vec::new();
    let mut prev_e = at(0);
    let mut prev_f = f(prev_e);
    for i in 1..n {
        let e = at(i);
        let fe = f(e);
        if prev_f == 0.0 {
            out.push((prev_e, prev_e));
        } else if prev_f * fe < 0.0 {
            out.push((prev_e, e));
        }
        prev_e = e;
        prev_f = fe;
    }
    if prev_f == 0.0 {
        out.push((prev_e, prev_e));
    }
    out
}

/// Bisection on a bracket with a sign change, until the width drops below
/// `tol`. Returns the final bracket.
pub(crate) fn bisect(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iterations: usize,
    f: impl Fn(f64) -> f64,
) -> Result<(f64, f64)> {
    if lo == hi {
        return Ok((lo, hi));
    }
    let mut f_lo = f(lo);
    let (start_lo, start_hi) = (lo, hi);
    for _ in 0..max_iterations {
        if hi - lo < tol {
            return Ok((lo, hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is at floating-point resolution
            return Ok((lo, hi));
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok((mid, mid));
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    if hi - lo < tol {
        Ok((lo, hi))
    } else {
        Err(Error::NoConvergence {
            lower: start_lo,
            upper: start_hi,
            iterations: max_iterations,
        })
    }
}

/// All bound states of a square well or barrier, sorted by energy.
pub fn square_bound_energies(
    profile: &PotentialProfile,
    params: &ModelParams,
) -> Result<Vec<BoundState>> {
    let matching = Matching::new(profile, params)?;
    let rest = params.rest_energy();
    let window = bound_energy_window(profile, params)?.shrink(EDGE_MARGIN * rest);
    let tol = ROOT_TOLERANCE * rest;

    let mut states = Vec::new();
    for interval in &window.intervals {
        for parity in [Parity::Even, Parity::Odd] {
            let f = |e: f64| matching.residual(parity, e);
            for (lo, hi) in bracket_sign_changes(interval.lower, interval.upper, SCAN_POINTS, f) {
                let (lo, hi) = bisect(lo, hi, tol, 200, f)?;
                let energy = 0.5 * (lo + hi);
                let (x, psi) = matching.wavefunction(parity, energy)?;
                let node_count = count_nodes(&psi)?;
                let expected_odd = parity == Parity::Odd;
                if (node_count % 2 == 1) != expected_odd {
                    return Err(Error::NodeParity {
                        energy,
                        nodes: node_count,
                        parity: parity.as_str(),
                    });
                }
                states.push(BoundState {
                    energy,
                    parity,
                    node_count,
                    x,
                    psi,
                    matching_residual: matching.relative_residual(parity, energy),
                });
            }
        }
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(states)
}

/// Closed-form transmission through a square profile of either coupling.
pub fn square_transmission(
    profile: &PotentialProfile,
    energy: f64,
    params: &ModelParams,
) -> Result<ScatteringPoint> {
    let (plateau, half_width) = square_parts(profile)?;
    let rest = params.rest_energy();
    if energy.partial_cmp(&rest) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NotScattering { energy, rest });
    }
    let w = WaveNumbers::new(energy, plateau, profile.coupling(), params);
    let p_sq = -w.exterior_decay_sq;
    let k_sq = w.interior_sq;
    let width = 2.0 * half_width;

    let (factor, interior) = if k_sq > 0.0 {
        let k = k_sq.sqrt();
        let s = (k * width).sin();
        (
            (p_sq - k_sq).powi(2) / (4.0 * p_sq * k_sq) * s * s,
            InteriorCharacter::Propagating,
        )
    } else if k_sq < 0.0 {
        let q = (-k_sq).sqrt();
        let s = (q * width).sinh();
        (
            (p_sq - k_sq).powi(2) / (4.0 * p_sq * -k_sq) * s * s,
            InteriorCharacter::Evanescent,
        )
    } else {
        // k -> 0 limit: sin^2(kL)/k^2 -> L^2
        (p_sq * width * width / 4.0, InteriorCharacter::Propagating)
    };

    let (reflection, transmission) = if factor.is_finite() {
        (factor / (1.0 + factor), 1.0 / (1.0 + factor))
    } else {
        (1.0, 0.0)
    };
    Ok(ScatteringPoint {
        energy,
        reflection,
        transmission,
        interior,
    })
}

/// Transmission through a vector square barrier of height `v0` and half
/// width `a`. `v0 = 0` describes free propagation.
pub fn square_barrier_transmission(
    energy: f64,
    v0: f64,
    a: f64,
    params: &ModelParams,
) -> Result<ScatteringPoint> {
    let profile = PotentialProfile::square_barrier(v0, a)?;
    square_transmission(&profile, energy, params)
}
