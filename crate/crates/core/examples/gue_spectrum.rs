//! Sample environment Hamiltonians and look at their level statistics.
//!
//! ```text
//! cargo run --release --example gue_spectrum
//! ```

use bellpair::rmt::{
    eigenvalues, environment_central_spacing, environment_spectral_radius, histogram,
    mean_level_spacing_center, sample_environment_hamiltonian, unfolded_central_spacings, wigner_surmise_gue,
    RngStream,
};

pub fn main() -> bellpair::Result<()> {
    let n = 128;
    let mut rng = RngStream::new(7);
    let mut spacings = Vec::new();
    let mut widest: f64 = 0.0;
    let mut mean_spacing = 0.0;
    let samples = 20;
    for _ in 0..samples {
        let e = eigenvalues(&sample_environment_hamiltonian(n, &mut rng)?)?;
        widest = widest.max(e[0].abs()).max(e[n - 1].abs());
        mean_spacing += mean_level_spacing_center(&e)? / samples as f64;
        spacings.extend(unfolded_central_spacings(&e)?);
    }
    println!("N = {n}, {samples} samples");
    println!("largest |E|        {widest:.2}  (semicircle radius {:.2})", environment_spectral_radius(n));
    println!("central spacing    {mean_spacing:.4}  (prediction {:.4})", environment_central_spacing(n));

    println!("\n  s     P(s) sampled   Wigner surmise");
    let width = 0.25;
    let total = spacings.len() as f64;
    for bin in histogram(&spacings, width, 12) {
        let mid = 0.5 * (bin.lo + bin.hi);
        println!(
            "{:5.2}   {:8.4}        {:8.4}",
            mid,
            bin.count as f64 / (total * width),
            wigner_surmise_gue(mid)
        );
    }
    Ok(())
}
