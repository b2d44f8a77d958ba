//! How the effective Schrödinger potential of a square barrier changes with
//! the energy of the particle, and where it turns into a well.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let energy = 1.0;

    println!("E = mc^2, interior effective potential of a square barrier");
    println!("{:>6} {:>12} {:>14}", "V0", "V_eff", "regime");
    for v0 in [0.5, 1.0, 1.5, 1.9, 2.0, 2.5, 3.0, 4.0, 6.0] {
        let barrier = PotentialProfile::square_barrier(v0, 1.0)?;
        let v_eff = effective_potential(&barrier, energy, 0.0, &params);
        let regime = classify_regime(v0, &params)?;
        println!("{v0:>6.2} {v_eff:>12.6} {:>14}", regime.to_string());
    }

    println!("\nV0 = 4 mc^2: the effective potential depends on E");
    let barrier = PotentialProfile::square_barrier(4.0, 1.0)?;
    println!(
        "{:>8} {:>12} {:>12} {:>12}",
        "E", "E_eff", "V_eff", "E_eff-V_eff"
    );
    for e in [-0.9, -0.5, 0.0, 0.5, 0.9] {
        let form = effective_form(&barrier, e, &params);
        let (e_eff, v_eff) = (form.effective_energy(), form.potential(0.0));
        println!(
            "{e:>8.2} {e_eff:>12.6} {v_eff:>12.6} {:>12.6}",
            e_eff - v_eff
        );
    }

    let scalar = barrier.with_coupling(CouplingKind::Scalar);
    println!(
        "\nscalar coupling, E = 0.5: V_eff = {:.6} (stays a barrier)",
        effective_potential(&scalar, 0.5, 0.0, &params)
    );
    Ok(())
}
