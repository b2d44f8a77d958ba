//! Shooting solutions for smooth hills, with a grid-refinement check and a
//! wavefunction dump.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let options = SolverOptions::default();
    let hills = [
        (
            "gaussian A=4 sigma=1",
            PotentialProfile::gaussian(4.0, 1.0)?,
        ),
        (
            "smoothed A=3 a=1.5 d=0.3",
            PotentialProfile::smoothed_barrier(3.0, 1.5, 0.3)?,
        ),
    ];
    for (name, hill) in &hills {
        let grid = default_grid(hill, &params);
        let states = find_bound_states(hill, &grid, &params, &options)?;
        let finer = find_bound_states(hill, &grid.refined(), &params, &options)?;
        println!("{name}: {} states on {} nodes", states.len(), grid.len());
        for (s, f) in states.iter().zip(&finer) {
            println!(
                "    E = {:>16.12} {:>5} nodes = {}  change on halving h: {:.1e}",
                s.energy,
                s.parity,
                s.node_count,
                (s.energy - f.energy).abs()
            );
        }
    }

    let (_, hill) = &hills[0];
    let states = find_bound_states(hill, &default_grid(hill, &params), &params, &options)?;
    if let Some(top) = states.last() {
        println!("\nhighest state, every 200th sample:");
        for (x, psi) in top.x.iter().zip(&top.psi).step_by(200) {
            println!("{x:>10.4} {psi:>12.6}");
        }
    }
    Ok(())
}
