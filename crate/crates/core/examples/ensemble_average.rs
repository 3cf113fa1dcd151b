//! Ensemble-averaged purity and concurrence written to CSV, then compared
//! against the exponentiated linear response.

use bellpair::ensemble::{read_aggregate, run_ensemble, uniform_grid, write_aggregate, RunConfig};
use bellpair::rmt::HEISENBERG_TIME;
use bellpair::theory::{purity_elr, TheoryParams};
use std::f64::consts::FRAC_PI_4;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let times = uniform_grid(1.5 * HEISENBERG_TIME, 6)?;
    let config = RunConfig {
        n_hamiltonians: 4,
        n_states: 5,
        master_seed: 2,
        ..RunConfig::spectator(64, 0.1, FRAC_PI_4, times)
    };
    let run = run_ensemble(&config)?;

    let dir = std::env::temp_dir().join("bellpair-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("aggregate.csv");
    write_aggregate(&path, &run.aggregate)?;
    assert_eq!(read_aggregate(&path)?, run.aggregate);
    println!("wrote {}", path.display());

    let params = TheoryParams::spectator(0.1, FRAC_PI_4)?;
    println!("t/tH    P_mean ± err       P_ELR    C_mean");
    for row in &run.aggregate.rows {
        println!(
            "{:4.2}  {:.4} ± {:.4}   {:.4}   {:.4}",
            row.time / HEISENBERG_TIME,
            row.purity_mean,
            row.purity_stderr,
            purity_elr(row.time, &params)?,
            row.concurrence_mean
        );
    }
    Ok(())
}
