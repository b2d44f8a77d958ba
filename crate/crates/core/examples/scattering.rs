//! Reflection and transmission for a square barrier, closed form against a
//! sliced transfer matrix, through the tunneling and Klein zones.

use kleinwell::oracle::DEFAULT_SLICES;
use kleinwell::*;

fn main() -> Result<()> {
    let params = ModelParams::NATURAL;
    let (v0, a) = (4.0, 1.0);
    let barrier = PotentialProfile::square_barrier(v0, a)?;
    let slices = TransferSlices::new(&barrier, DEFAULT_SLICES)?;

    // evanescent inside for V0 - 1 < E < V0 + 1, propagating (Klein zone) below
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "E", "R", "T", "T (slices)", "interior"
    );
    for i in 0..=16 {
        let e = 1.05 + 0.35 * i as f64;
        let closed = square_barrier_transmission(e, v0, a, &params)?;
        let (_, t) = transfer_matrix_transmission(e, &params, &slices)?;
        println!(
            "{e:>6.2} {:>12.8} {:>12.8} {t:>12.8} {:>12}",
            closed.reflection,
            closed.transmission,
            closed.interior.as_str()
        );
    }

    let gaussian = PotentialProfile::gaussian(4.0, 1.0)?;
    let slices = TransferSlices::new(&gaussian, DEFAULT_SLICES)?;
    println!("\nGaussian hill, A = 4, sigma = 1");
    for e in [1.2, 2.0, 3.0, 5.0, 8.0] {
        let (r, t) = transfer_matrix_transmission(e, &params, &slices)?;
        println!("{e:>6.2} R = {r:.10} T = {t:.10}");
    }
    Ok(())
}
