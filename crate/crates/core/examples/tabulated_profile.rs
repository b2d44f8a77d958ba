//! A potential read from a two-column CSV file.
//!
//! ```text
//! cargo run --example tabulated_profile -- fixtures/hill.csv
//! ```

use kleinwell::*;

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hill.csv").to_string());
    let table = Table::from_csv_path(&path)?;
    let profile = PotentialProfile::tabulated(table);
    let params = ModelParams::NATURAL;

    let (lo, hi) = profile.value_range();
    println!(
        "{path}: V in [{lo:.4}, {hi:.4}], peak at x = {:.3}",
        profile.peak_position()
    );

    let grid = default_grid(&profile, &params);
    let states = find_bound_states(&profile, &grid, &params, &SolverOptions::default())?;
    for s in &states {
        println!("E = {:>16.12}  nodes = {}", s.energy, s.node_count);
    }
    Ok(())
}
