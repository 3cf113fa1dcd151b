//! The reference checks behind `bellpair validate`, at reduced sizes.

use bellpair::validate::{run_all, ValidateOptions};

pub fn main() -> bellpair::Result<()> {
    let opts = ValidateOptions {
        concurrence_samples: 200,
        spectral_samples: 30,
        ..Default::default()
    };
    for report in run_all(&opts)? {
        println!("{report}");
    }
    Ok(())
}
