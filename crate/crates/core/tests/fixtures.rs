//! Frozen numerical fixtures and closed-form reference values.

use approx::assert_abs_diff_eq;
use kleinwell::analytic_square::Parity;
use kleinwell::oracle::{dense_scan_spectrum, DEFAULT_SLICES, MIN_SCAN_POINTS};
use kleinwell::potentials::klein_gordon_coefficient;
use kleinwell::*;

const P: ModelParams = ModelParams::NATURAL;

#[test]
fn barrier_spectrum_fixture() {
    let b = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
    let states = square_bound_energies(&b, &P).unwrap();
    let expected = [
        (-0.868110718092675, Parity::Even, 6),
        (-0.16820119531742794, Parity::Odd, 5),
        (0.5870300865307669, Parity::Even, 4),
    ];
    assert_eq!(states.len(), expected.len());
    for (s, (e, parity, nodes)) in states.iter().zip(expected) {
        assert_abs_diff_eq!(s.energy, e, epsilon = 1e-12);
        assert_eq!(s.parity, parity);
        assert_eq!(s.node_count, nodes);
    }
    let oracle = dense_scan_spectrum(&b, &P, MIN_SCAN_POINTS).unwrap();
    for (s, e) in states.iter().zip(&oracle) {
        assert_abs_diff_eq!(s.energy, *e, epsilon = 1e-11);
    }
}

#[test]
fn gaussian_spectrum_fixture() {
    let g = PotentialProfile::gaussian(4.0, 1.0).unwrap();
    let states =
        find_bound_states(&g, &default_grid(&g, &P), &P, &SolverOptions::default()).unwrap();
    let expected = [
        (-0.971732282404294, Parity::Even, 4),
        (-0.540182658233956, Parity::Odd, 3),
        (0.140923549398358, Parity::Even, 2),
    ];
    assert_eq!(states.len(), expected.len());
    for (s, (e, parity, nodes)) in states.iter().zip(expected) {
        assert_abs_diff_eq!(s.energy, e, epsilon = 1e-8);
        assert_eq!(s.parity, parity);
        assert_eq!(s.node_count, nodes);
    }
}

#[test]
fn transfer_matrix_fixtures() {
    let g = PotentialProfile::gaussian(1.0, 1.0).unwrap();
    let slices = TransferSlices::new(&g, DEFAULT_SLICES).unwrap();
    let (r, t) = transfer_matrix_transmission(1.5, &P, &slices).unwrap();
    assert_abs_diff_eq!(r, 0.9459886264232545, epsilon = 1e-12);
    assert_abs_diff_eq!(t, 0.05401137357723762, epsilon = 1e-12);

    let b = PotentialProfile::square_barrier(1.0, 1.0).unwrap();
    let slices = TransferSlices::new(&b, 10_000).unwrap();
    let (r, t) = transfer_matrix_transmission(1.5, &P, &slices).unwrap();
    let closed = square_transmission(&b, 1.5, &P).unwrap();
    assert_abs_diff_eq!(r, closed.reflection, epsilon = 1e-8);
    assert_abs_diff_eq!(t, closed.transmission, epsilon = 1e-8);
    assert_abs_diff_eq!(closed.transmission, 0.111180136288618, epsilon = 1e-12);
}

#[test]
fn slice_doubling_converges() {
    let profiles = [
        PotentialProfile::gaussian(1.0, 1.0).unwrap(),
        PotentialProfile::gaussian(4.0, 1.0).unwrap(),
        PotentialProfile::square_barrier(1.0, 1.0).unwrap(),
        PotentialProfile::smoothed_barrier(2.0, 1.0, 0.2).unwrap(),
        PotentialProfile::smoothed_barrier(4.0, 2.0, 0.5).unwrap(),
    ];
    for profile in &profiles {
        let coarse = TransferSlices::new(profile, DEFAULT_SLICES).unwrap();
        let fine = TransferSlices::new(profile, 2 * DEFAULT_SLICES).unwrap();
        for e in [1.05, 1.2, 1.5, 3.0, 6.0] {
            let (r1, t1) = transfer_matrix_transmission(e, &P, &coarse).unwrap();
            let (r2, t2) = transfer_matrix_transmission(e, &P, &fine).unwrap();
            assert!(
                (r1 - r2).abs() < 1e-9 && (t1 - t2).abs() < 1e-9,
                "{profile:?} at {e}: {:e} {:e} T={t1}",
                r1 - r2,
                t1 - t2
            );
            assert!((r1 + t1 - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn effective_potential_reference_values() {
    let barrier = PotentialProfile::square_barrier(4.0, 2.0).unwrap();
    assert_eq!(barrier.evaluate(1.0), 4.0);
    assert_eq!(barrier.evaluate(3.0), 0.0);
    assert_eq!(
        PotentialProfile::square_well(1.0, 1.0)
            .unwrap()
            .evaluate(0.0),
        -1.0
    );
    let critical = PotentialProfile::square_barrier(2.0, 1.0).unwrap();
    assert_eq!(effective_potential(&critical, 1.0, 0.0, &P), 0.0);
    let deep = PotentialProfile::square_barrier(4.0, 1.0).unwrap();
    assert_eq!(effective_potential(&deep, 1.0, 0.0, &P), -4.0);
}

#[test]
fn regime_reference_values() {
    assert_eq!(classify_regime(1.9, &P).unwrap(), Regime::Subcritical);
    assert_eq!(classify_regime(2.0, &P).unwrap(), Regime::Critical);
    assert_eq!(classify_regime(4.0, &P).unwrap(), Regime::Supercritical);
}

#[test]
fn effective_identity_on_barrier() {
    let rest = P.rest_energy();
    for i in 0..50 {
        for j in 0..50 {
            let e = -2.0 + 4.0 * i as f64 / 49.0;
            let v0 = 6.0 * j as f64 / 49.0;
            let b = PotentialProfile::square_barrier(v0, 1.0).unwrap();
            let form = effective_form(&b, e, &P);
            let inside = form.effective_energy() - form.potential(0.0);
            let outside = form.effective_energy() - form.potential(3.0);
            let want_in = (e * e - rest * rest + v0 * v0 - 2.0 * e * v0) / (2.0 * rest);
            let want_out = (e * e - rest * rest) / (2.0 * rest);
            assert!((inside - want_in).abs() < 1e-14);
            assert!((outside - want_out).abs() < 1e-14);
            assert_eq!(
                klein_gordon_coefficient(e, v0, &P),
                klein_gordon_coefficient(-e, -v0, &P)
            );
        }
    }
}
