//! Linear-response and exponentiated purity decay, and the predicted
//! concurrence, across the Heisenberg time.

use bellpair::rmt::HEISENBERG_TIME;
use bellpair::theory::{concurrence_elr, g_alpha, purity_elr, purity_lr, TheoryParams};
use std::f64::consts::FRAC_PI_4;

pub fn main() -> bellpair::Result<()> {
    for alpha in [0.0, FRAC_PI_4] {
        let p = TheoryParams::spectator(0.05, alpha)?;
        println!("alpha = {alpha:.4}, asymptote g/2 = {:.4}", g_alpha(alpha)? / 2.0);
        println!("  t/tH   P_LR     P_ELR    C_ELR");
        for k in 0..=8 {
            let t = 0.5 * HEISENBERG_TIME * k as f64;
            println!(
                "  {:3.1}  {:7.4}  {:7.4}  {:7.4}",
                t / HEISENBERG_TIME,
                purity_lr(t, &p)?,
                purity_elr(t, &p)?,
                concurrence_elr(t, &p)?
            );
        }
    }
    Ok(())
}
