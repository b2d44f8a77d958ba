//! Numerov shooting for the effective Schrödinger form of arbitrary
//! profiles.
//!
//! The equation `psi'' = -Q(x) psi` with `Q = (2m/hbar^2)(E_eff - V_eff(x))`
//! is integrated inward from both grid ends, seeded with the exterior
//! exponential, and the two solutions are matched at an interior node.
//! Because `V_eff` depends on the trial energy, the effective form is
//! rebuilt for every energy the search visits.
//!
//! Square profiles put jumps in `Q`. The grid is laid out so that every jump
//! sits on a node; there the recurrence uses the mean of the two one-sided
//! values plus the `h^3` term `(h^3/12)[psi''']`, which keeps the scheme
//! fourth order globally.

use rayon::prelude::*;

use crate::analytic_square::{bisect, BoundState, Parity};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::potentials::{
    effective_form, reality_window, EffectiveForm, EnergyWindow, PotentialProfile,
};

const RENORM_THRESHOLD: f64 = 1e100;
/// Fraction of `max |psi|` below which samples do not count toward nodes.
const NODE_THRESHOLD: f64 = 1e-12;
/// Brackets whose converged matching residual exceeds this are discarded.
const SPURIOUS_RESIDUAL: f64 = 1e-6;
/// Window endpoints are pulled in by this much, in units of `mc^2`.
const EDGE_MARGIN: f64 = 1e-9;
/// Roots closer than this (units of `mc^2`) are reported once.
const MERGE_GAP: f64 = 1e-9;

/// Uniform grid with an odd number of nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "grid needs an odd number of points >= 3, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// `[-half_extent, half_extent]`.
    pub fn symmetric(half_extent: f64, n_points: usize) -> Result<Self> {
        Self::new(-half_extent, half_extent, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.n_points - 1 {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.x_min == -self.x_max
    }

    pub fn nearest_index(&self, x: f64) -> usize {
        let t = ((x - self.x_min) / self.spacing()).round();
        t.clamp(0.0, (self.n_points - 1) as f64) as usize
    }

    /// Same bounds, half the spacing.
    pub fn refined(&self) -> Grid {
        Grid {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

/// Number of strict sign changes, ignoring samples below `1e-12 max|psi|`.
pub fn count_nodes(samples: &[f64]) -> Result<usize> {
    let max = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 || !max.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let threshold = NODE_THRESHOLD * max;
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for &v in samples {
        if v.abs() < threshold {
            continue;
        }
        let sign = v.signum();
        if last_sign != 0.0 && sign != last_sign {
            nodes += 1;
        }
        last_sign = sign;
    }
    Ok(nodes)
}

fn trapezoid_norm_sq(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    let interior: f64 = samples[1..n - 1].iter().map(|v| v * v).sum();
    h * (interior + 0.5 * (samples[0] * samples[0] + samples[n - 1] * samples[n - 1]))
}

/// Rescales to unit trapezoidal L2 norm on `grid`.
pub fn normalize(samples: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::InvalidParameter(format!(
            "{} samples for a grid of {} points",
            samples.len(),
            grid.len()
        )));
    }
    // pre-scale by the peak so squaring cannot overflow
    let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let scaled: Vec<f64> = samples.iter().map(|v| v / peak).collect();
    let norm = trapezoid_norm_sq(&scaled, grid.spacing()).sqrt();
    Ok(scaled.into_iter().map(|v| v / norm).collect())
}

/// `Q` at one node, split into the limits seen when arriving at and
/// leaving the node, and the stencil correction for nearby kinks of `Q`.
#[derive(Clone, Copy)]
struct NodeQ {
    behind: f64,
    ahead: f64,
    kink: f64,
}

impl NodeQ {
    fn is_jump(&self) -> bool {
        self.behind != self.ahead
    }
}

/// Left limit, right limit and kink coefficient of `Q` at every node.
///
/// A jump `[Q']` at distance `d < h` from a node leaves the residual
/// `-[Q'] psi ((h - d)^3 / 6 - h^2 (h - d) / 12)` in that node's stencil;
/// the coefficient collects these factors.
fn node_q(form: &EffectiveForm<'_>, grid: &Grid) -> Vec<(f64, f64, f64)> {
    let h = grid.spacing();
    let mut q: Vec<(f64, f64, f64)> = grid
        .points()
        .map(|x| {
            let v = form.local_wave_number_sq(x);
            (v, v, 0.0)
        })
        .collect();
    for d in form.profile().discontinuities() {
        let i = grid.nearest_index(d);
        if (grid.x(i) - d).abs() <= 1e-6 * h {
            let (l, r) = form.local_wave_number_sq_limits(d);
            q[i] = (l, r, 0.0);
        }
    }
    for (x, jump) in form.profile().kinks() {
        if x <= grid.x_min() || x >= grid.x_max() {
            continue;
        }
        let q_jump = form.local_wave_number_sq_kink(x, jump);
        let below = ((x - grid.x_min()) / h).floor() as usize;
        for i in [below, below + 1] {
            if i >= grid.len() {
                continue;
            }
            let mut d = (grid.x(i) - x).abs();
            if d <= 1e-6 * h {
                d = 0.0;
            }
            if d < h {
                let r = h - d;
                q[i].2 += q_jump * (r * r * r / 6.0 - h * h * r / 12.0);
            }
        }
    }
    q
}

/// Three-point Numerov recurrence on `q` (node limits in path order),
/// starting from two seed values. Running values are rescaled by `1e-100`
/// whenever one exceeds `1e100`.
fn numerov_recurrence(q: &[NodeQ], h: f64, seed: [f64; 2]) -> Vec<f64> {
    let h2 = h * h;
    let steps = q.len();
    let mut path: Vec<f64> = Vec::with_capacity(steps);
    path.extend(seed.iter().take(steps));
    for s in 1..steps.saturating_sub(1) {
        let prev = q[s - 1].ahead;
        let here = q[s];
        let next = q[s + 1].behind;
        let (p_prev, p_here) = (path[s - 1], path[s]);
        let mean = 0.5 * (here.behind + here.ahead);
        let mut rhs =
            2.0 * p_here * (1.0 - 5.0 * h2 * mean / 12.0) - p_prev * (1.0 + h2 * prev / 12.0);
        if here.is_jump() {
            let slope = (p_here - p_prev) / h - 0.5 * h * here.behind * p_here;
            rhs -= h * h2 / 12.0 * (here.ahead - here.behind) * slope;
        }
        // symmetric in the direction of travel
        rhs -= here.kink * p_here;
        let value = rhs / (1.0 + h2 * next / 12.0);
        path.push(value);
        if value.abs() > RENORM_THRESHOLD {
            let scale = 1.0 / RENORM_THRESHOLD;
            path.iter_mut().for_each(|p| *p *= scale);
        }
    }
    path
}

/// Numerov integration along `direction` over the first `steps` nodes
/// visited, given the node limits of `Q`. Unvisited entries stay zero.
fn integrate_steps(
    form: &EffectiveForm<'_>,
    grid: &Grid,
    limits: &[(f64, f64, f64)],
    direction: Direction,
    steps: usize,
) -> Result<Vec<f64>> {
    let n = grid.len();
    let kappa = form
        .exterior_decay()
        .ok_or(Error::NonDecayingTail(form.energy()))?;
    let index = |s: usize| match direction {
        Direction::LeftToRight => s,
        Direction::RightToLeft => n - 1 - s,
    };
    let steps = steps.min(n);
    let path_q: Vec<NodeQ> = (0..steps)
        .map(|s| {
            let (left, right, kink) = limits[index(s)];
            match direction {
                Direction::LeftToRight => NodeQ {
                    behind: left,
                    ahead: right,
                    kink,
                },
                Direction::RightToLeft => NodeQ {
                    behind: right,
                    ahead: left,
                    kink,
                },
            }
        })
        .collect();
    if path_q[0].ahead > 0.0 {
        return Err(Error::NonDecayingTail(form.energy()));
    }

    let h = grid.spacing();
    let path = numerov_recurrence(&path_q, h, [1.0, (kappa * h).exp()]);
    let mut psi = vec![0.0; n];
    for (s, p) in path.into_iter().enumerate() {
        psi[index(s)] = p;
    }
    Ok(psi)
}

/// Integrates across the whole grid, seeded with the decaying exponential
/// at the starting boundary.
pub fn numerov_integrate(
    form: &EffectiveForm<'_>,
    grid: &Grid,
    direction: Direction,
) -> Result<Vec<f64>> {
    integrate_steps(form, grid, &node_q(form, grid), direction, grid.len())
}

/// Outcome of one shot at a trial energy.
#[derive(Clone, Debug)]
pub struct ShotResult {
    pub energy: f64,
    /// Left solution up to the matching node, right solution (rescaled to
    /// agree there) beyond it.
    pub psi: Vec<f64>,
    pub matching_index: usize,
    /// `psi_L'/psi_L - psi_R'/psi_R` at the matching node, `None` when
    /// either solution vanishes there.
    pub mismatch: Option<f64>,
    /// Wronskian of the two solutions at the matching node divided by the
    /// norms of their `(psi, psi' * hbar/(mc))` vectors. Continuous in the
    /// energy and zero exactly at eigenvalues.
    pub wronskian: f64,
    pub node_count: usize,
}

/// Node where the inward solutions are matched.
///
/// Even profiles match one cell right of the centre, so odd states do not
/// put a node on the matching point; other profiles match at the peak of
/// `|V|`.
pub fn matching_index(profile: &PotentialProfile, grid: &Grid) -> usize {
    let n = grid.len();
    let i = if profile.is_even() {
        grid.nearest_index(0.0) + 1
    } else {
        grid.nearest_index(profile.peak_position())
    };
    i.clamp(2, n - 3)
}

fn five_point_derivative(psi: &[f64], i: usize, h: f64) -> f64 {
    (psi[i - 2] - 8.0 * psi[i - 1] + 8.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h)
}

fn peak_scaled(mut v: Vec<f64>) -> Vec<f64> {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if peak > 0.0 {
        v.iter_mut().for_each(|x| *x /= peak);
    }
    v
}

struct Matched {
    left: Vec<f64>,
    right: Vec<f64>,
    mismatch: Option<f64>,
    wronskian: f64,
}

fn match_at(form: &EffectiveForm<'_>, grid: &Grid, m: usize) -> Result<Matched> {
    let n = grid.len();
    let h = grid.spacing();
    let limits = node_q(form, grid);
    let left = peak_scaled(integrate_steps(
        form,
        grid,
        &limits,
        Direction::LeftToRight,
        m + 3,
    )?);
    let right = peak_scaled(integrate_steps(
        form,
        grid,
        &limits,
        Direction::RightToLeft,
        n - m + 2,
    )?);

    let (l, dl) = (left[m], five_point_derivative(&left, m, h));
    let (r, dr) = (right[m], five_point_derivative(&right, m, h));
    let mismatch = (l.abs() > 1e-300 && r.abs() > 1e-300).then(|| dl / l - dr / r);

    let scale = 1.0 / form.params().length_unit();
    let norm_l = l.hypot(dl / scale);
    let norm_r = r.hypot(dr / scale);
    let wronskian = (dl * r - dr * l) / scale / (norm_l * norm_r);
    Ok(Matched {
        left,
        right,
        mismatch,
        wronskian,
    })
}

fn shoot_form(form: &EffectiveForm<'_>, grid: &Grid, m: usize) -> Result<ShotResult> {
    let Matched {
        left,
        right,
        mismatch,
        wronskian,
    } = match_at(form, grid, m)?;
    let (num, den) = (m - 2..=m + 2).fold((0.0, 0.0), |(a, b), i| {
        (a + left[i] * right[i], b + right[i] * right[i])
    });
    let join = if den > 0.0 { num / den } else { 0.0 };
    let psi: Vec<f64> = (0..grid.len())
        .map(|i| if i <= m { left[i] } else { join * right[i] })
        .collect();
    let node_count = count_nodes(&psi)?;

    Ok(ShotResult {
        energy: form.energy(),
        psi,
        matching_index: m,
        mismatch,
        wronskian,
        node_count,
    })
}

/// Integrates from both ends at energy `energy` and compares logarithmic
/// derivatives at the matching node.
pub fn shoot_mismatch(
    profile: &PotentialProfile,
    energy: f64,
    grid: &Grid,
    params: &ModelParams,
) -> Result<ShotResult> {
    let form = effective_form(profile, energy, params);
    shoot_form(&form, grid, matching_index(profile, grid))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Trial energies per window interval.
    pub scan_points: usize,
    /// Bisection tolerance, in units of `mc^2`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            scan_points: 2000,
            tol: 1e-10,
            max_iterations: 200,
        }
    }
}

/// Energies that may hold bound states of any profile: decaying tails and
/// a real local wave number somewhere, using the extremes of `V`.
pub fn admissible_window(profile: &PotentialProfile, params: &ModelParams) -> EnergyWindow {
    let (lo, hi) = profile.value_range();
    reality_window(profile.coupling(), lo, hi, params)
}

/// Grid used when none is given: 15 decay lengths (at the centre of the
/// window) past the potential's extent, at least 4001 points, spacing small
/// enough that `h k_max <= 0.025`, and profile jumps placed on nodes.
pub fn default_grid(profile: &PotentialProfile, params: &ModelParams) -> Grid {
    let rest = params.rest_energy();
    let window = admissible_window(profile, params);
    let extent = profile.extent();
    let centre = match (window.intervals.first(), window.intervals.last()) {
        (Some(first), Some(last)) => 0.5 * (first.lower + last.upper),
        _ => 0.0,
    };
    let kappa = ((rest * rest - centre * centre).max(0.0)).sqrt() / params.hbar_c();
    let kappa = kappa.max(1e-3 / params.length_unit());
    let half = extent + 15.0 / kappa;

    let (lo, hi) = profile.value_range();
    let vmax = lo.abs().max(hi.abs());
    let k_max = (((rest + vmax).powi(2) - rest * rest).max(rest * rest)).sqrt() / params.hbar_c();
    let h_target = (half / 2000.0).min(0.025 / k_max);

    let h = match profile
        .discontinuities()
        .iter()
        .map(|d| d.abs())
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.min(d))))
    {
        Some(a) if a > 0.0 => a / (a / h_target).ceil(),
        _ => h_target,
    };
    let cells = (half / h).ceil() as usize;
    Grid {
        x_min: -(cells as f64) * h,
        x_max: cells as f64 * h,
        n_points: 2 * cells + 1,
    }
}

fn parity_of(psi: &[f64], profile: &PotentialProfile, grid: &Grid) -> Parity {
    if !(profile.is_even() && grid.is_symmetric()) {
        return Parity::None;
    }
    let n = psi.len();
    let overlap: f64 = (0..n).map(|i| psi[i] * psi[n - 1 - i]).sum();
    if overlap >= 0.0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub(crate) fn find_with<'a, F>(
    profile: &'a PotentialProfile,
    grid: &Grid,
    params: &ModelParams,
    options: &SolverOptions,
    form_at: F,
) -> Result<Vec<BoundState>>
where
    F: Fn(f64) -> EffectiveForm<'a> + Sync,
{
    if options.scan_points < 2 {
        return Err(Error::InvalidParameter(
            "scan_points must be at least 2".into(),
        ));
    }
    let rest = params.rest_energy();
    let window = admissible_window(profile, params).shrink(EDGE_MARGIN * rest);
    let m = matching_index(profile, grid);
    let shot = |e: f64| shoot_form(&form_at(e), grid, m);
    let wronskian = |e: f64| match_at(&form_at(e), grid, m).map(|s| s.wronskian);
    let tol = options.tol * rest;

    let mut states: Vec<BoundState> = Vec::new();
    for interval in &window.intervals {
        let n = options.scan_points;
        let step = interval.width() / (n - 1) as f64;
        let energies: Vec<f64> = (0..n)
            .map(|i| {
                if i == n - 1 {
                    interval.upper
                } else {
                    interval.lower + i as f64 * step
                }
            })
            .collect();
        let values = energies
            .par_iter()
            .map(|&e| wronskian(e))
            .collect::<Result<Vec<f64>>>()?;

        let mut brackets = Vec::new();
        for i in 0..n {
            if values[i] == 0.0 {
                brackets.push((energies[i], energies[i]));
            } else if i + 1 < n && values[i] * values[i + 1] < 0.0 {
                brackets.push((energies[i], energies[i + 1]));
            }
        }

        let found = brackets
            .par_iter()
            .map(|&(lo, hi)| -> Result<Option<BoundState>> {
                // bisect needs a plain closure; shot failures inside the
                // window are surfaced on the final shot below
                let f = |e: f64| wronskian(e).unwrap_or(f64::NAN);
                let (lo, hi) = bisect(lo, hi, tol, options.max_iterations, f)?;
                let energy = if lo == hi {
                    lo
                } else {
                    let (fl, fh) = (f(lo), f(hi));
                    let t = fl / (fl - fh);
                    if t.is_finite() && (0.0..=1.0).contains(&t) {
                        lo + t * (hi - lo)
                    } else {
                        0.5 * (lo + hi)
                    }
                };
                let result = shot(energy)?;
                let residual = result.wronskian.abs();
                if residual > SPURIOUS_RESIDUAL {
                    return Ok(None);
                }
                let psi = normalize(&result.psi, grid)?;
                Ok(Some(BoundState {
                    energy,
                    parity: parity_of(&psi, profile, grid),
                    node_count: result.node_count,
                    x: grid.points().collect(),
                    psi,
                    matching_residual: residual,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        states.extend(found.into_iter().flatten());
    }

    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    states.dedup_by(|later, earlier| later.energy - earlier.energy < MERGE_GAP * rest);
    Ok(states)
}

/// Bound states of any profile with vanishing tails, by shooting.
pub fn find_bound_states(
    profile: &PotentialProfile,
    grid: &Grid,
    params: &ModelParams,
    options: &SolverOptions,
) -> Result<Vec<BoundState>> {
    find_with(profile, grid, params, options, |e| {
        effective_form(profile, e, params)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_square::square_bound_energies;
    use crate::potentials::CouplingKind;
    use std::f64::consts::PI;

    const P: ModelParams = ModelParams::NATURAL;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(0.0, 1.0, 4).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
        let g = Grid::symmetric(2.0, 5).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(
            g.points().collect::<Vec<_>>(),
            vec![-2.0, -1.0, 0.0, 1.0, 2.0]
        );
        assert_eq!(g.refined().len(), 9);
    }

    #[test]
    fn count_nodes_examples() {
        let g = Grid::new(-PI, PI, 2001).unwrap();
        let cos: Vec<f64> = g.points().map(f64::cos).collect();
        let sin: Vec<f64> = g.points().map(f64::sin).collect();
        assert_eq!(count_nodes(&cos).unwrap(), 2);
        assert_eq!(count_nodes(&sin).unwrap(), 1);
        assert_eq!(count_nodes(&[0.1, 2.0, 3.0]).unwrap(), 0);
        assert!(matches!(count_nodes(&[0.0, 0.0]), Err(Error::ZeroNorm)));
    }

    #[test]
    fn normalize_examples() {
        let g = Grid::new(0.0, 1.0, 101).unwrap();
        let out = normalize(&vec![2.0; 101], &g).unwrap();
        assert!(out.iter().all(|v| (v - 1.0).abs() < 1e-14));
        let again = normalize(&out, &g).unwrap();
        assert!(out.iter().zip(&again).all(|(a, b)| (a - b).abs() < 1e-14));
        let wave: Vec<f64> = g.points().map(|x| (3.0 * x).sin() + 0.2).collect();
        let base = normalize(&wave, &g).unwrap();
        for alpha in [1e-200, 0.5, 7.0, 1e200] {
            let scaled: Vec<f64> = wave.iter().map(|v| v * alpha).collect();
            let out = normalize(&scaled, &g).unwrap();
            assert!(base.iter().zip(&out).all(|(a, b)| (a - b).abs() < 1e-13));
        }
        assert!(matches!(
            normalize(&vec![0.0; 101], &g),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn free_decay_is_exponential() {
        let free = PotentialProfile::square_barrier(0.0, 1.0).unwrap();
        let e = 0.8;
        let kappa = (1.0f64 - e * e).sqrt();
        let g = Grid::symmetric(10.0, 4001).unwrap();
        let form = effective_form(&free, e, &P);
        let psi = numerov_integrate(&form, &g, Direction::RightToLeft).unwrap();
        let reference = |x: f64| (-kappa * (x - 10.0)).exp();
        for (i, x) in g.points().enumerate() {
            let rel = (psi[i] - reference(x)).abs() / reference(x);
            assert!(rel < 1e-10, "x={x} rel={rel}");
        }
    }

    #[test]
    fn plateau_reproduces_cosine() {
        let b = PotentialProfile::square_barrier(4.0, 100.0).unwrap();
        let form = effective_form(&b, 0.3, &P);
        let q = form.local_wave_number_sq(0.0);
        let k = q.sqrt();
        let g = Grid::symmetric(6.0, 12001).unwrap();
        assert!(g.spacing() * k < 0.05);
        let path_q = vec![
            NodeQ {
                behind: q,
                ahead: q,
                kink: 0.0
            };
            g.len()
        ];
        let psi = numerov_recurrence(
            &path_q,
            g.spacing(),
            [(k * g.x(0)).cos(), (k * g.x(1)).cos()],
        );
        for (i, x) in g.points().enumerate() {
            assert!((psi[i] - (k * x).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn kink_correction_keeps_fourth_order() {
        let opts = SolverOptions {
            tol: 1e-14,
            ..SolverOptions::default()
        };
        let x: Vec<f64> = (0..161).map(|i| -8.0 + 0.1 * i as f64).collect();
        let v: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == 0 || i == 160 {
                    0.0
                } else {
                    3.5 * (-x * x / 2.88).exp()
                }
            })
            .collect();
        // kink on a node, kinks between nodes
        for profile in [
            PotentialProfile::smoothed_barrier(3.0, 1.5, 0.3).unwrap(),
            PotentialProfile::tabulated(crate::potentials::Table::new(x, v).unwrap()),
        ] {
            let levels: Vec<Vec<f64>> = [801, 1601, 3201]
                .iter()
                .map(|&n| {
                    let g = Grid::symmetric(16.0, n).unwrap();
                    find_bound_states(&profile, &g, &P, &opts)
                        .unwrap()
                        .iter()
                        .map(|s| s.energy)
                        .collect()
                })
                .collect();
            let diff = |a: &[f64], b: &[f64]| {
                assert_eq!(a.len(), b.len());
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            };
            let ratio = diff(&levels[0], &levels[1]) / diff(&levels[1], &levels[2]);
            assert!(ratio > 12.0, "{profile:?}: ratio {ratio}");
        }
    }

    #[test]
    fn jump_correction_keeps_fourth_order() {
        // a single step in Q at x = 0; the exact solution is C1 there with
        // psi(0) = 1 and psi'(0) = k1
        let (q1, q2) = (9.0f64, 2.0f64);
        let (k1, k2) = (q1.sqrt(), q2.sqrt());
        let exact = |x: f64| {
            if x <= 0.0 {
                (k1 * x).cos() + (k1 * x).sin()
            } else {
                (k2 * x).cos() + k1 / k2 * (k2 * x).sin()
            }
        };
        let error = |cells: usize| {
            let g = Grid::symmetric(2.0, 2 * cells + 1).unwrap();
            let path_q: Vec<NodeQ> = g
                .points()
                .enumerate()
                .map(|(i, x)| {
                    if i == cells {
                        NodeQ {
                            behind: q1,
                            ahead: q2,
                            kink: 0.0,
                        }
                    } else if x < 0.0 {
                        NodeQ {
                            behind: q1,
                            ahead: q1,
                            kink: 0.0,
                        }
                    } else {
                        NodeQ {
                            behind: q2,
                            ahead: q2,
                            kink: 0.0,
                        }
                    }
                })
                .collect();
            let psi = numerov_recurrence(&path_q, g.spacing(), [exact(g.x(0)), exact(g.x(1))]);
            g.points()
                .enumerate()
                .map(|(i, x)| (psi[i] - exact(x)).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (error(100), error(200));
        assert!(coarse / fine > 12.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn mirror_symmetry_for_even_profiles() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        let form = effective_form(&b, 0.37, &P);
        let l = numerov_integrate(&form, &g, Direction::LeftToRight).unwrap();
        let r = numerov_integrate(&form, &g, Direction::RightToLeft).unwrap();
        let n = g.len();
        for i in 0..n {
            let scale = l[i].abs().max(1.0);
            assert!((l[i] - r[n - 1 - i]).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn non_decaying_tail_is_flagged() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        assert!(matches!(
            shoot_mismatch(&b, 1.5, &g, &P),
            Err(Error::NonDecayingTail(_))
        ));
    }

    #[test]
    fn mismatch_vanishes_at_analytic_eigenvalues() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        let exact = square_bound_energies(&b, &P).unwrap();
        for s in &exact {
            let shot = shoot_mismatch(&b, s.energy, &g, &P).unwrap();
            let delta = shot.mismatch.expect("matching node is not a node of psi");
            let slope = |e: f64| shoot_mismatch(&b, e, &g, &P).unwrap().mismatch.unwrap();
            let de = 1e-6;
            let d_delta = (slope(s.energy + de) - slope(s.energy - de)) / (2.0 * de);
            // energy offset implied by the mismatch
            let shift = delta / d_delta;
            assert!(shift.abs() < 1e-8, "E={} shift={shift}", s.energy);
            if s.parity == Parity::Even {
                let c = g.nearest_index(0.0);
                let d = five_point_derivative(&shot.psi, c, g.spacing());
                let max = shot.psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                assert!(d.abs() < 1e-6 * max);
            }
        }
        for w in exact.windows(2) {
            let mid = 0.5 * (w[0].energy + w[1].energy);
            let shot = shoot_mismatch(&b, mid, &g, &P).unwrap();
            assert!(shot.mismatch.is_none_or(|d| d.abs() > 1e-3));
        }
    }

    #[test]
    fn scalar_gaussian_binds_nothing() {
        let s = PotentialProfile::gaussian(4.0, 1.0)
            .unwrap()
            .with_coupling(CouplingKind::Scalar);
        let g = default_grid(&s, &P);
        assert!(find_bound_states(&s, &g, &P, &SolverOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn frozen_effective_potential_gives_a_different_spectrum() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        let opts = SolverOptions::default();
        let live = find_bound_states(&b, &g, &P, &opts).unwrap();
        let frozen =
            find_with(&b, &g, &P, &opts, |e| EffectiveForm::frozen(&b, e, 0.0, &P)).unwrap();
        let differs = live.len() != frozen.len()
            || live
                .iter()
                .zip(&frozen)
                .any(|(a, b)| (a.energy - b.energy).abs() > 1e-6);
        assert!(differs);
    }

    #[test]
    fn returned_states_are_normalized() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        for s in find_bound_states(&b, &g, &P, &SolverOptions::default()).unwrap() {
            let norm = trapezoid_norm_sq(&s.psi, g.spacing());
            assert!((norm - 1.0).abs() < 1e-12);
            assert!(s.matching_residual < 1e-10, "{}", s.matching_residual);
        }
    }

    #[test]
    fn default_grid_puts_edges_on_nodes() {
        let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
        let g = default_grid(&b, &P);
        assert!(g.len() % 2 == 1 && g.len() >= 4001);
        for d in [-2.0, 2.0] {
            let i = g.nearest_index(d);
            assert!((g.x(i) - d).abs() < 1e-9 * g.spacing());
        }
    }
}
