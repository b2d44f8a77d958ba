//! Brute-force reference solvers.
//!
//! These share no code path with the production solvers they check: the
//! spectrum scan works on the parity-blind matching determinant of the
//! square profile, and scattering is computed by chaining exact `(psi, psi')`
//! propagators across thin constant slices of the full relativistic
//! dispersion.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::potentials::{CouplingKind, PotentialProfile, Shape};

pub const MIN_SCAN_POINTS: usize = 10_000;
pub const MIN_SLICES: usize = 1_000;
pub const DEFAULT_SLICES: usize = 400_000;
const EDGE_MARGIN: f64 = 1e-9;
const ROOT_TOLERANCE: f64 = 1e-12;

/// `((E - V)^2 - m^2c^4)` or `(E^2 - (mc^2 + S)^2)`, divided by `(hbar c)^2`.
fn local_q(coupling: CouplingKind, energy: f64, v: f64, params: &ModelParams) -> f64 {
    let rest = params.rest_energy();
    let hc = params.hbar() * params.c();
    let num = match coupling {
        CouplingKind::Vector => (energy - v).powi(2) - rest.powi(2),
        CouplingKind::Scalar => energy.powi(2) - (rest + v).powi(2),
    };
    num / (hc * hc)
}

/// Every root of the square-profile matching determinant
/// `(k^2 - kappa^2) sin(2ka) - 2 k kappa cos(2ka)` on `n_scan` energies
/// spanning `|E| < mc^2`, refined by bisection to `1e-12 mc^2`.
pub fn dense_scan_spectrum(
    profile: &PotentialProfile,
    params: &ModelParams,
    n_scan: usize,
) -> Result<Vec<f64>> {
    if n_scan < MIN_SCAN_POINTS {
        return Err(Error::InvalidParameter(format!(
            "dense scan needs at least {MIN_SCAN_POINTS} points, got {n_scan}"
        )));
    }
    let (plateau, a) = profile.plateau().ok_or(Error::NotSquare)?;
    let coupling = profile.coupling();
    let rest = params.rest_energy();

    let determinant = |e: f64| -> Option<f64> {
        let k_sq = local_q(coupling, e, plateau, params);
        let kappa_sq = -local_q(coupling, e, 0.0, params);
        if k_sq <= 0.0 || kappa_sq <= 0.0 {
            return None;
        }
        let (k, kappa) = (k_sq.sqrt(), kappa_sq.sqrt());
        let (s, c) = (2.0 * k * a).sin_cos();
        Some((k_sq - kappa_sq) * s - 2.0 * k * kappa * c)
    };

    let lo = -rest * (1.0 - EDGE_MARGIN);
    let hi = rest * (1.0 - EDGE_MARGIN);
    let step = (hi - lo) / (n_scan - 1) as f64;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..n_scan {
        let e = lo + i as f64 * step;
        let Some(g) = determinant(e) else {
            prev = None;
            continue;
        };
        if g == 0.0 {
            roots.push(e);
        } else if let Some((pe, pg)) = prev {
            if pg * g < 0.0 {
                let (mut l, mut r, mut gl) = (pe, e, pg);
                while r - l > ROOT_TOLERANCE * rest {
                    let mid = 0.5 * (l + r);
                    if mid <= l || mid >= r {
                        break;
                    }
                    let gm = determinant(mid).unwrap_or(0.0);
                    if gm == 0.0 {
                        l = mid;
                        r = mid;
                        break;
                    }
                    if gl * gm < 0.0 {
                        r = mid;
                    } else {
                        l = mid;
                        gl = gm;
                    }
                }
                roots.push(0.5 * (l + r));
            }
        }
        prev = Some((e, g));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| *b - *a < EDGE_MARGIN * rest);
    Ok(roots)
}

/// Midpoint samples of a profile on equal-width slices covering its
/// support.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferSlices {
    start: f64,
    width: f64,
    count: usize,
    /// Consecutive equal slices merged into `(value, multiplicity)`.
    runs: Vec<(f64, usize)>,
    coupling: CouplingKind,
}

impl TransferSlices {
    pub fn new(profile: &PotentialProfile, count: usize) -> Result<Self> {
        if count < MIN_SLICES {
            return Err(Error::InvalidParameter(format!(
                "need at least {MIN_SLICES} slices, got {count}"
            )));
        }
        let (start, end) = match profile.shape() {
            Shape::Tabulated(t) => {
                let x = t.positions();
                (x[0], x[x.len() - 1])
            }
            _ => (-profile.extent(), profile.extent()),
        };
        let width = (end - start) / count as f64;
        let mut runs: Vec<(f64, usize)> = Vec::new();
        for j in 0..count {
            let v = profile.evaluate(start + (j as f64 + 0.5) * width);
            match runs.last_mut() {
                Some((last, n)) if *last == v => *n += 1,
                _ => runs.push((v, 1)),
            }
        }
        Ok(Self {
            start,
            width,
            count,
            runs,
            coupling: profile.coupling(),
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Distinct consecutive slice values with their multiplicities.
    pub fn runs(&self) -> &[(f64, usize)] {
        &self.runs
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn start(&self) -> f64 {
        self.start
    }
}

/// `(R, T)` for a particle of energy `energy > mc^2` incident from the left.
pub fn transfer_matrix_transmission(
    energy: f64,
    params: &ModelParams,
    slices: &TransferSlices,
) -> Result<(f64, f64)> {
    let rest = params.rest_energy();
    if energy.partial_cmp(&(rest * (1.0 + EDGE_MARGIN))) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NotScattering { energy, rest });
    }
    let w = slices.width;
    // (psi, psi') propagator, accumulated left to right
    let mut m = [[1.0f64, 0.0], [0.0, 1.0]];
    for &(v, n) in &slices.runs {
        let q_sq = local_q(slices.coupling, energy, v, params);
        let q = q_sq.abs().sqrt();
        if q * w >= 0.1 {
            return Err(Error::SliceTooCoarse {
                width: w,
                wave_number: q,
            });
        }
        // a run of equal slices propagates exactly as one wide slice
        let span = w * n as f64;
        let step = if q_sq > 0.0 {
            let (s, c) = (q * span).sin_cos();
            [[c, s / q], [-q * s, c]]
        } else if q_sq < 0.0 {
            let (s, c) = ((q * span).sinh(), (q * span).cosh());
            [[c, s / q], [q * s, c]]
        } else {
            [[1.0, span], [0.0, 1.0]]
        };
        m = [
            [
                step[0][0] * m[0][0] + step[0][1] * m[1][0],
                step[0][0] * m[0][1] + step[0][1] * m[1][1],
            ],
            [
                step[1][0] * m[0][0] + step[1][1] * m[1][0],
                step[1][0] * m[0][1] + step[1][1] * m[1][1],
            ],
        ];
    }

    let p = local_q(slices.coupling, energy, 0.0, params).sqrt();
    let i = Complex64::i();
    let alpha = m[1][0] - i * p * m[0][0];
    let beta = i * p * m[1][1] + p * p * m[0][1];
    let r = -(alpha + beta) / (alpha - beta);
    let t = m[0][0] * (1.0 + r) + i * p * m[0][1] * (1.0 - r);
    Ok((r.norm_sqr(), t.norm_sqr()))
}

/// Ground-state binding energy of the non-relativistic square well of
/// depth `depth` and half width `half_width`, from
/// `z tan z = sqrt(z0^2 - z^2)` with `z0 = a sqrt(2 m V0) / hbar`.
pub fn nonrelativistic_ground_binding(
    depth: f64,
    half_width: f64,
    params: &ModelParams,
) -> Result<f64> {
    if !(depth > 0.0 && half_width > 0.0) {
        return Err(Error::InvalidParameter(
            "depth and half width must be positive".into(),
        ));
    }
    let (m, hbar) = (params.mass(), params.hbar());
    let z0 = half_width * (2.0 * m * depth).sqrt() / hbar;
    let g = |z: f64| z * z.sin() - (z0 * z0 - z * z).max(0.0).sqrt() * z.cos();
    let (mut lo, mut hi) = (0.0, z0.min(std::f64::consts::FRAC_PI_2));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z = 0.5 * (lo + hi);
    Ok(depth - hbar * hbar * z * z / (2.0 * m * half_width * half_width))
}
