//! Barrier and well spectra are mirror images under E -> -E.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let (v0, a) = (3.0, 2.0);
    let barrier = square_bound_energies(&PotentialProfile::square_barrier(v0, a)?, &params)?;
    let well = square_bound_energies(&PotentialProfile::square_well(v0, a)?, &params)?;

    println!(
        "{:>18} {:>18} {:>10}",
        "barrier", "-well (reversed)", "nodes"
    );
    for (b, w) in barrier.iter().zip(well.iter().rev()) {
        println!(
            "{:>18.12} {:>18.12} {:>5}/{:<4}",
            b.energy, -w.energy, b.node_count, w.node_count
        );
    }

    println!("\nlargest |E_barrier + E_well| per case:");
    for v0 in [1.0, 2.0, 3.0, 4.0, 5.0] {
        let row: Vec<String> = [1.0, 2.0, 4.0]
            .iter()
            .map(|&a| conjugation_report(v0, a, &params).map(|r| format!("{r:.1e}")))
            .collect::<Result<_>>()?;
        println!("    V0 = {v0}: {}", row.join("  "));
    }
    Ok(())
}
