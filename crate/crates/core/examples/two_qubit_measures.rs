//! Purity and concurrence of the standard two-qubit reference states.

use bellpair::qstate::{alpha_state, concurrence, density_spectrum, purity, werner_state, TwoQubitDensityMatrix};
use std::f64::consts::PI;

pub fn main() -> bellpair::Result<()> {
    println!("alpha/pi   C        sin(2 alpha)");
    for k in 0..=4 {
        let alpha = PI / 4.0 * k as f64 / 4.0;
        let rho = alpha_state(alpha)?.projector()?;
        println!("{:8.4}  {:.6}  {:.6}", alpha / PI, concurrence(&rho)?, (2.0 * alpha).sin());
    }

    println!("\n  p     P       C       (3p-1)/2");
    for k in 0..=5 {
        let p = k as f64 / 5.0;
        let w = werner_state(p)?;
        println!(
            "{p:.1}   {:.4}  {:.4}  {:.4}",
            purity(&w),
            concurrence(&w)?,
            ((3.0 * p - 1.0) / 2.0).max(0.0)
        );
    }

    let mixed = TwoQubitDensityMatrix::maximally_mixed();
    println!("\nmaximally mixed: P = {}, spectrum {:?}", purity(&mixed), density_spectrum(&mixed));
    Ok(())
}
