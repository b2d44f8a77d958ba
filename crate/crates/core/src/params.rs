//! Unit system.
//!
//! Every solver works with explicit `m`, `hbar` and `c`, so results can be
//! produced in any consistent unit system. The default is natural units,
//! `m = hbar = c = 1`, where energies are measured in `mc^2` and lengths in
//! the reduced Compton wavelength `hbar/(mc)`.

use crate::error::{Error, Result};

/// Particle mass and the two fundamental constants entering the
/// Klein-Gordon equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    mass: f64,
    hbar: f64,
    c: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::NATURAL
    }
}

impl ModelParams {
    /// `m = hbar = c = 1`.
    pub const NATURAL: ModelParams = ModelParams {
        mass: 1.0,
        hbar: 1.0,
        c: 1.0,
    };

    pub fn new(mass: f64, hbar: f64, c: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("hbar", hbar), ("c", c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(Self { mass, hbar, c })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `m c^2`, the energy unit of the dimensionless formulation.
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// Reduced Compton wavelength `hbar / (m c)`, the length unit.
    pub fn length_unit(&self) -> f64 {
        self.hbar / (self.mass * self.c)
    }

    pub(crate) fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }

    /// Converts `(E^2 - ...)`-type energy-squared differences into a squared
    /// wave number, `1 / (hbar c)^2`.
    pub(crate) fn inv_hbar_c_sq(&self) -> f64 {
        let hc = self.hbar_c();
        1.0 / (hc * hc)
    }

    pub fn energy_to_natural(&self, energy: f64) -> f64 {
        energy / self.rest_energy()
    }

    pub fn energy_to_physical(&self, energy: f64) -> f64 {
        energy * self.rest_energy()
    }

    pub fn length_to_natural(&self, length: f64) -> f64 {
        length / self.length_unit()
    }

    pub fn length_to_physical(&self, length: f64) -> f64 {
        length * self.length_unit()
    }
}

/// `m c^2` for the given parameters.
pub fn rest_energy(params: &ModelParams) -> f64 {
    params.rest_energy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rest_energy_examples() {
        assert_eq!(rest_energy(&ModelParams::NATURAL), 1.0);
        assert_eq!(rest_energy(&ModelParams::new(2.0, 1.0, 1.0).unwrap()), 2.0);
        assert_eq!(rest_energy(&ModelParams::new(0.5, 1.0, 2.0).unwrap()), 2.0);
    }

    #[test]
    fn rejects_nonpositive_constants() {
        assert!(ModelParams::new(0.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(ModelParams::new(1.0, 1.0, f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn conversion_round_trip(
            mass in 1e-3f64..1e3,
            hbar in 1e-3f64..1e3,
            c in 1e-3f64..1e3,
            value in -1e6f64..1e6,
        ) {
            let p = ModelParams::new(mass, hbar, c).unwrap();
            let e = p.energy_to_natural(p.energy_to_physical(value));
            let l = p.length_to_natural(p.length_to_physical(value));
            prop_assert!((e - value).abs() <= 1e-14 * value.abs().max(1e-300));
            prop_assert!((l - value).abs() <= 1e-14 * value.abs().max(1e-300));
        }
    }
}
