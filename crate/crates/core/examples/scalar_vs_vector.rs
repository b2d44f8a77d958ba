//! Vector and scalar spectra of the same repulsive shapes.

use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let options = SolverOptions::default();
    let cases = [
        (ShapeFamily::SquareBarrier, 4.0, 2.0),
        (ShapeFamily::SquareBarrier, 1.0, 2.0),
        (ShapeFamily::Gaussian, 4.0, 1.0),
        (ShapeFamily::SmoothedBarrier { diffuseness: 0.3 }, 3.0, 1.5),
    ];
    for (family, amplitude, length) in cases {
        let cmp = compare_couplings(
            family,
            amplitude,
            length,
            &params,
            SolverChoice::Auto,
            &options,
        )?;
        let fmt = |states: &[BoundState]| {
            states
                .iter()
                .map(|s| format!("{:.6}", s.energy))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("{family:?} amplitude {amplitude} length {length}");
        println!("    vector: [{}]", fmt(&cmp.vector));
        println!("    scalar: [{}]", fmt(&cmp.scalar));
    }
    Ok(())
}
