//! Both qubits coupled, each to its own environment.

use bellpair::dynamics::{evolve_pair_two_env, SpectatorModel, TwoEnvModel};
use bellpair::qstate::{concurrence, purity, random_environment_state};
use bellpair::rmt::{RngStream, HEISENBERG_TIME};
use bellpair::theory::{purity_elr, TheoryParams};
use std::f64::consts::FRAC_PI_4;

pub fn main() -> bellpair::Result<()> {
    let (n1, n2) = (48, 32);
    let (l1, l2) = (0.06, 0.04);
    let mut rng = RngStream::new(5);
    let model = TwoEnvModel::new(
        SpectatorModel::sample(n1, l1, &mut rng)?,
        SpectatorModel::sample(n2, l2, &mut rng)?,
    );
    let chi1 = random_environment_state(n1, &mut rng)?;
    let chi2 = random_environment_state(n2, &mut rng)?;

    let times: Vec<f64> = (0..=8).map(|k| 0.25 * HEISENBERG_TIME * k as f64).collect();
    let params = TheoryParams::new(l1, l2, FRAC_PI_4, HEISENBERG_TIME, HEISENBERG_TIME)?;
    println!("t/tH    P        C        P_ELR");
    for s in evolve_pair_two_env(&model, &chi1, &chi2, FRAC_PI_4, &times)? {
        println!(
            "{:4.2}  {:.5}  {:.5}  {:.5}",
            s.time / HEISENBERG_TIME,
            purity(&s.rho),
            concurrence(&s.rho)?,
            purity_elr(s.time, &params)?
        );
    }
    Ok(())
}
