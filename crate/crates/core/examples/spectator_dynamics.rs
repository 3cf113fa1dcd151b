//! One realization: a Bell pair with one qubit coupled to a GUE environment
//! and the other a spectator.

use bellpair::dynamics::{SpectatorModel, SpectatorRealization};
use bellpair::qstate::{concurrence, purity, random_environment_state};
use bellpair::rmt::{RngStream, HEISENBERG_TIME};
use bellpair::theory::{purity_elr, TheoryParams};
use std::f64::consts::FRAC_PI_4;

pub fn main() -> bellpair::Result<()> {
    let (n, lambda) = (64, 0.1);
    let mut rng = RngStream::new(11);
    let model = SpectatorModel::sample(n, lambda, &mut rng)?;
    let realization = SpectatorRealization::new(model)?;
    let chi = random_environment_state(n, &mut rng)?;

    let times: Vec<f64> = (0..=10).map(|k| 0.2 * HEISENBERG_TIME * k as f64).collect();
    let params = TheoryParams::spectator(lambda, FRAC_PI_4)?;
    println!("t/tH    P        C        P_ELR");
    for s in realization.evolve(&chi, FRAC_PI_4, &times)? {
        println!(
            "{:4.1}  {:.5}  {:.5}  {:.5}",
            s.time / HEISENBERG_TIME,
            purity(&s.rho),
            concurrence(&s.rho)?,
            purity_elr(s.time, &params)?
        );
    }
    Ok(())
}
