use kleinwell::analytic_square::Parity;
use kleinwell::potentials::klein_gordon_coefficient;
use kleinwell::*;
use proptest::prelude::*;

const P: ModelParams = ModelParams::NATURAL;

fn energies(states: &[BoundState]) -> Vec<f64> {
    states.iter().map(|s| s.energy).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energies_scale_with_rest_energy(
        mass in 0.1f64..10.0,
        hbar in 0.1f64..10.0,
        c in 0.1f64..10.0,
        v0 in 2.5f64..6.0,
        a in 0.5f64..2.5,
    ) {
        let params = ModelParams::new(mass, hbar, c).unwrap();
        let natural = square_bound_energies(&PotentialProfile::square_barrier(v0, a).unwrap(), &P).unwrap();
        let scaled_profile = PotentialProfile::square_barrier(
            params.energy_to_physical(v0),
            params.length_to_physical(a),
        ).unwrap();
        let scaled = square_bound_energies(&scaled_profile, &params).unwrap();
        prop_assert_eq!(natural.len(), scaled.len());
        for (n, s) in natural.iter().zip(&scaled) {
            prop_assert!((n.energy - params.energy_to_natural(s.energy)).abs() < 1e-10);
            prop_assert_eq!(n.node_count, s.node_count);
        }
    }

    #[test]
    fn closed_form_is_unitary(e in 1.0001f64..20.0, v0 in -8.0f64..8.0, a in 0.01f64..5.0) {
        let profile = if v0 >= 0.0 {
            PotentialProfile::square_barrier(v0, a).unwrap()
        } else {
            PotentialProfile::square_well(-v0, a).unwrap()
        };
        let sp = square_transmission(&profile, e, &P).unwrap();
        prop_assert!((sp.reflection + sp.transmission - 1.0).abs() < 1e-12);
        prop_assert!(sp.reflection >= 0.0 && sp.transmission >= 0.0);
    }

    #[test]
    fn barrier_and_well_are_mirrors(v0 in 0.05f64..8.0, a in 0.1f64..4.0) {
        let barrier = square_bound_energies(&PotentialProfile::square_barrier(v0, a).unwrap(), &P).unwrap();
        let well = square_bound_energies(&PotentialProfile::square_well(v0, a).unwrap(), &P).unwrap();
        prop_assert_eq!(barrier.len(), well.len());
        for (b, w) in barrier.iter().zip(well.iter().rev()) {
            prop_assert!((b.energy + w.energy).abs() < 1e-10);
            prop_assert_eq!(b.node_count, w.node_count);
            prop_assert_eq!(b.parity, w.parity);
        }
    }

    #[test]
    fn coefficient_is_conjugation_invariant(e in -5.0f64..5.0, v in -10.0f64..10.0) {
        prop_assert_eq!(klein_gordon_coefficient(e, v, &P), klein_gordon_coefficient(-e, -v, &P));
    }

    #[test]
    fn scalar_barriers_stay_barriers(e in -3.0f64..3.0, amplitude in 0.0f64..10.0, x in -5.0f64..5.0) {
        let g = PotentialProfile::gaussian(amplitude, 1.0).unwrap().with_coupling(CouplingKind::Scalar);
        prop_assert!(effective_potential(&g, e, x, &P) >= 0.0);
    }

    #[test]
    fn subcritical_wells_order_nodes_by_energy(v0 in 0.01f64..1.0, a in 0.2f64..12.0) {
        let states = square_bound_energies(&PotentialProfile::square_well(v0, a).unwrap(), &P).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let nodes: Vec<usize> = states.iter().filter(|s| s.parity == parity).map(|s| s.node_count).collect();
            prop_assert!(nodes.windows(2).all(|w| w[0] < w[1]), "{:?}", nodes);
        }
        let all: Vec<usize> = states.iter().map(|s| s.node_count).collect();
        prop_assert_eq!(all, (0..states.len()).collect::<Vec<_>>());
    }
}

#[test]
fn shallow_wide_well_counts_nodes_upward() {
    let states =
        square_bound_energies(&PotentialProfile::square_well(0.1, 10.0).unwrap(), &P).unwrap();
    assert_eq!(states.len(), 3);
    for (i, s) in states.iter().enumerate() {
        assert_eq!(s.node_count, i);
    }
}

#[test]
fn numerov_scales_with_rest_energy() {
    let params = ModelParams::new(2.0, 0.5, 3.0).unwrap();
    let opts = SolverOptions::default();
    let g = PotentialProfile::gaussian(4.0, 1.0).unwrap();
    let natural = find_bound_states(&g, &default_grid(&g, &P), &P, &opts).unwrap();
    let scaled_g = PotentialProfile::gaussian(
        params.energy_to_physical(4.0),
        params.length_to_physical(1.0),
    )
    .unwrap();
    let scaled =
        find_bound_states(&scaled_g, &default_grid(&scaled_g, &params), &params, &opts).unwrap();
    assert_eq!(natural.len(), scaled.len());
    for (n, s) in natural.iter().zip(&scaled) {
        assert!((n.energy - params.energy_to_natural(s.energy)).abs() < 1e-8);
    }
}

#[test]
fn numerov_states_are_normalized_and_counted() {
    let opts = SolverOptions::default();
    for profile in [
        PotentialProfile::gaussian(4.0, 1.0).unwrap(),
        PotentialProfile::smoothed_barrier(3.0, 1.5, 0.3).unwrap(),
        PotentialProfile::square_barrier(4.0, 2.0).unwrap(),
    ] {
        let grid = default_grid(&profile, &P);
        let states = find_bound_states(&profile, &grid, &P, &opts).unwrap();
        assert!(!states.is_empty());
        for s in &states {
            let h = s.x[1] - s.x[0];
            let norm: f64 = s
                .psi
                .windows(2)
                .map(|w| 0.5 * h * (w[0] * w[0] + w[1] * w[1]))
                .sum();
            assert!((norm - 1.0).abs() < 1e-12);
            assert_eq!(s.node_count, count_nodes(&s.psi).unwrap());
            assert_eq!(s.node_count % 2 == 0, s.parity == Parity::Even);
        }
        let scalar = find_bound_states(
            &profile.clone().with_coupling(CouplingKind::Scalar),
            &grid,
            &P,
            &opts,
        )
        .unwrap();
        assert!(scalar.is_empty());
    }
}

#[test]
fn empty_spectra_mirror_trivially() {
    assert_eq!(conjugation_report(4.0, 1e-9, &P).unwrap(), 0.0);
    // a subcritical barrier binds only antiparticle-like states
    let low =
        square_bound_energies(&PotentialProfile::square_barrier(0.5, 2.0).unwrap(), &P).unwrap();
    assert!(!low.is_empty());
    assert!(energies(&low).iter().all(|e| *e < 0.5 - 1.0));
}
