//! A repulsive vector barrier of height 4 mc^2 binds particles; the same
//! barrier coupled as a scalar binds nothing.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let barrier = PotentialProfile::square_barrier(4.0, 2.0)?;

    println!("vector barrier V0 = 4 mc^2, a = 2 hbar/mc");
    println!(
        "{:>3} {:>22} {:>6} {:>6}",
        "n", "E / mc^2", "parity", "nodes"
    );
    for (n, s) in square_bound_energies(&barrier, &params)?.iter().enumerate() {
        println!(
            "{n:>3} {:>22.15} {:>6} {:>6}",
            s.energy, s.parity, s.node_count
        );
    }

    let grid = default_grid(&barrier, &params);
    let shot = find_bound_states(&barrier, &grid, &params, &SolverOptions::default())?;
    println!(
        "\nshooting on {} nodes finds {} states:",
        grid.len(),
        shot.len()
    );
    for s in &shot {
        println!("    E = {:.12}", s.energy);
    }

    let scalar = barrier.with_coupling(CouplingKind::Scalar);
    let none = square_bound_energies(&scalar, &params)?;
    println!(
        "\nscalar barrier of the same height: {} bound states",
        none.len()
    );
    Ok(())
}
