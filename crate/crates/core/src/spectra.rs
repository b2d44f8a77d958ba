//! Regime sweeps, coupling comparisons and the conjugation check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic_square::{square_bound_energies, BoundState};
use crate::error::{Error, Result};
use crate::numerics::{default_grid, find_bound_states, SolverOptions};
use crate::params::ModelParams;
use crate::potentials::{classify_regime, CouplingKind, PotentialProfile, Regime};

/// Which bound-state solver to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    /// Closed form for square shapes, shooting otherwise.
    #[default]
    Auto,
    /// Shooting for every shape.
    Numerov,
}

/// Bound states of `profile` with the chosen solver.
pub fn solve_spectrum(
    profile: &PotentialProfile,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<Vec<BoundState>> {
    match choice {
        SolverChoice::Auto if profile.is_square() => square_bound_energies(profile, params),
        _ => find_bound_states(profile, &default_grid(profile, params), params, options),
    }
}

/// One-parameter family of profiles, built from an amplitude and a length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeFamily {
    SquareBarrier,
    SquareWell,
    /// Length is the width `sigma`.
    Gaussian,
    SmoothedBarrier {
        diffuseness: f64,
    },
}

impl ShapeFamily {
    pub fn build(
        &self,
        amplitude: f64,
        length: f64,
        coupling: CouplingKind,
    ) -> Result<PotentialProfile> {
        let profile = match *self {
            ShapeFamily::SquareBarrier => PotentialProfile::square_barrier(amplitude, length)?,
            ShapeFamily::SquareWell => PotentialProfile::square_well(amplitude, length)?,
            ShapeFamily::Gaussian => PotentialProfile::gaussian(amplitude, length)?,
            ShapeFamily::SmoothedBarrier { diffuseness } => {
                PotentialProfile::smoothed_barrier(amplitude, length, diffuseness)?
            }
        };
        Ok(profile.with_coupling(coupling))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Strength `V0` or half width `a`, depending on the sweep.
    pub control: f64,
    /// Classification of the sweep's strength.
    pub regime: Regime,
    pub n_bound: usize,
    /// States with `E > 0`: particles trapped by the potential.
    pub n_positive: usize,
    pub energies: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Strength,
    Extent,
}

/// Evenly spaced control values `start, start + step, ...` up to `end`.
fn control_values(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite() && start.is_finite() && end.is_finite() && end >= start) {
        return Err(Error::InvalidParameter(format!(
            "sweep needs start <= end and step > 0, got [{start}, {end}] step {step}"
        )));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

#[allow(clippy::too_many_arguments)]
fn record(
    family: ShapeFamily,
    amplitude: f64,
    length: f64,
    control: f64,
    coupling: CouplingKind,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<SweepRecord> {
    let annotate = |source: Error| Error::Sweep {
        control,
        source: Box::new(source),
    };
    let profile = family
        .build(amplitude, length, coupling)
        .map_err(annotate)?;
    let regime = classify_regime(amplitude.abs(), params).map_err(annotate)?;
    let states = solve_spectrum(&profile, params, choice, options).map_err(annotate)?;
    let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
    Ok(SweepRecord {
        control,
        regime,
        n_bound: energies.len(),
        n_positive: energies.iter().filter(|e| **e > 0.0).count(),
        energies,
    })
}

/// Bound-state census as the strength varies over `[range.0, range.1]`
/// (at most `10 mc^2`) at fixed length `a`. Records are in ascending `V0`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_strength(
    family: ShapeFamily,
    a: f64,
    range: (f64, f64),
    step: f64,
    coupling: CouplingKind,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<Vec<SweepRecord>> {
    let rest = params.rest_energy();
    if range.0 < 0.0 || range.1 > 10.0 * rest {
        return Err(Error::InvalidParameter(format!(
            "strength range must lie within [0, 10 mc^2], got [{}, {}]",
            range.0, range.1
        )));
    }
    control_values(range.0, range.1, step)?
        .into_par_iter()
        .map(|v0| record(family, v0, a, v0, coupling, params, choice, options))
        .collect()
}

/// Bound-state census as the length varies at fixed strength `v0`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_extent(
    family: ShapeFamily,
    v0: f64,
    range: (f64, f64),
    step: f64,
    coupling: CouplingKind,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<Vec<SweepRecord>> {
    if range.0 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lengths must be positive, got start {}",
            range.0
        )));
    }
    control_values(range.0, range.1, step)?
        .into_par_iter()
        .map(|a| record(family, v0, a, a, coupling, params, choice, options))
        .collect()
}

/// Indices `i` where the bound-state count jumps by more than one between
/// records `i` and `i + 1`.
pub fn continuity_violations(records: &[SweepRecord]) -> Vec<usize> {
    records
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].n_bound.abs_diff(w[1].n_bound) > 1)
        .map(|(i, _)| i)
        .collect()
}

/// What happened across a sweep step whose bound-state count jumped by
/// more than one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CountJump {
    /// Two adjacent states of the same parity merged and left the real
    /// spectrum together. `control` brackets the merger to `1e-6` and `gap`
    /// is their separation just before it.
    PairCoalescence { control: f64, gap: f64 },
    /// The jump splits into single-state changes at finer resolution.
    SeparateEvents,
    /// Neither of the above: the sweep resolution missed something.
    Unresolved,
}

/// Locates a count jump between two strengths by bisection and decides
/// whether it is a genuine pair coalescence.
#[allow(clippy::too_many_arguments)]
pub fn classify_count_jump(
    family: ShapeFamily,
    a: f64,
    between: (f64, f64),
    coupling: CouplingKind,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<CountJump> {
    let states_at = |v0: f64| -> Result<Vec<BoundState>> {
        solve_spectrum(&family.build(v0, a, coupling)?, params, choice, options)
    };
    let (mut lo, mut hi) = between;
    let (mut s_lo, mut s_hi) = (states_at(lo)?, states_at(hi)?);
    let (n_lo, n_hi) = (s_lo.len(), s_hi.len());
    if n_lo.abs_diff(n_hi) <= 1 {
        return Ok(CountJump::SeparateEvents);
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        let s_mid = states_at(mid)?;
        if s_mid.len() == n_lo {
            lo = mid;
            s_lo = s_mid;
        } else if s_mid.len() == n_hi {
            hi = mid;
            s_hi = s_mid;
        } else {
            return Ok(CountJump::SeparateEvents);
        }
    }
    if n_lo.abs_diff(n_hi) != 2 {
        return Ok(CountJump::Unresolved);
    }
    let (more, fewer) = if n_lo > n_hi {
        (&s_lo, &s_hi)
    } else {
        (&s_hi, &s_lo)
    };
    let lost: Vec<&BoundState> = more
        .iter()
        .filter(|s| !fewer.iter().any(|f| (f.energy - s.energy).abs() < 1e-3))
        .collect();
    if let [first, second] = lost.as_slice() {
        let gap = (second.energy - first.energy).abs();
        let adjacent = !more
            .iter()
            .any(|s| s.energy > first.energy && s.energy < second.energy);
        if first.parity == second.parity && adjacent && gap < 0.05 * params.rest_energy() {
            return Ok(CountJump::PairCoalescence {
                control: 0.5 * (lo + hi),
                gap,
            });
        }
    }
    Ok(CountJump::Unresolved)
}

/// First control value with at least one positive-energy state.
pub fn positive_energy_onset(records: &[SweepRecord]) -> Option<f64> {
    records.iter().find(|r| r.n_positive > 0).map(|r| r.control)
}

/// Vector and scalar spectra of the same repulsive shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingComparison {
    pub vector: Vec<BoundState>,
    pub scalar: Vec<BoundState>,
}

pub fn compare_couplings(
    family: ShapeFamily,
    amplitude: f64,
    extent: f64,
    params: &ModelParams,
    choice: SolverChoice,
    options: &SolverOptions,
) -> Result<CouplingComparison> {
    let solve = |coupling| -> Result<Vec<BoundState>> {
        let profile = family.build(amplitude, extent, coupling)?;
        solve_spectrum(&profile, params, choice, options)
    };
    Ok(CouplingComparison {
        vector: solve(CouplingKind::Vector)?,
        scalar: solve(CouplingKind::Scalar)?,
    })
}

/// Largest `|E_barrier,i + E_well,n-1-i|` between the square barrier and
/// square well of the same `V0` and `a`. Zero for two empty spectra.
pub fn conjugation_report(v0: f64, a: f64, params: &ModelParams) -> Result<f64> {
    if !(v0 > 0.0 && a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "conjugation check needs V0 > 0 and a > 0, got V0 = {v0}, a = {a}"
        )));
    }
    let barrier = square_bound_energies(&PotentialProfile::square_barrier(v0, a)?, params)?;
    let well = square_bound_energies(&PotentialProfile::square_well(v0, a)?, params)?;
    if barrier.len() != well.len() {
        return Err(Error::SpectrumLengthMismatch {
            barrier: barrier.len(),
            well: well.len(),
        });
    }
    Ok(barrier
        .iter()
        .zip(well.iter().rev())
        .map(|(b, w)| (b.energy + w.energy).abs())
        .fold(0.0, f64::max))
}
