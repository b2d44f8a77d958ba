//! The same calculation in MeV and femtometres for a pion, showing that
//! energies scale with the rest energy.

use kleinwell::*;

fn main() -> Result<()> {
    // c = 1, hbar in MeV fm
    let pion = ModelParams::new(139.570, 197.327, 1.0)?;
    let rest = pion.rest_energy();
    let length = pion.length_unit();
    println!("mc^2 = {rest} MeV, hbar/mc = {length:.4} fm");

    let height = 4.0 * rest;
    let half_width = 2.0 * length;
    let barrier = PotentialProfile::square_barrier(height, half_width)?;
    println!(
        "barrier: {height:.2} MeV high, {:.4} fm wide",
        2.0 * half_width
    );
    for s in square_bound_energies(&barrier, &pion)? {
        println!(
            "    E = {:>12.6} MeV = {:>10.7} mc^2",
            s.energy,
            pion.energy_to_natural(s.energy)
        );
    }
    Ok(())
}
