//! Bound-state census of a square barrier as its height grows from zero to
//! six rest energies.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let options = SolverOptions::default();
    let family = ShapeFamily::SquareBarrier;
    let records = sweep_strength(
        family,
        1.0,
        (0.0, 6.0),
        0.01,
        CouplingKind::Vector,
        &params,
        SolverChoice::Auto,
        &options,
    )?;

    println!(
        "{:>6} {:>14} {:>7} {:>9}",
        "V0", "regime", "bound", "positive"
    );
    for r in records.iter().step_by(25) {
        println!(
            "{:>6.2} {:>14} {:>7} {:>9}",
            r.control,
            r.regime.to_string(),
            r.n_bound,
            r.n_positive
        );
    }

    if let Some(onset) = positive_energy_onset(&records) {
        println!("\nfirst positive-energy bound state at V0 = {onset:.2} mc^2");
    }

    // two states of the same parity can meet and leave the real spectrum together
    for i in continuity_violations(&records) {
        let between = (records[i].control, records[i + 1].control);
        let jump = classify_count_jump(
            family,
            1.0,
            between,
            CouplingKind::Vector,
            &params,
            SolverChoice::Auto,
            &options,
        )?;
        println!(
            "count {} -> {} between V0 = {:.2} and {:.2}: {jump:?}",
            records[i].n_bound,
            records[i + 1].n_bound,
            between.0,
            between.1
        );
    }
    Ok(())
}
