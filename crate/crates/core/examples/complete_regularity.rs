// Measures intersection arrays of lifted Hamming codes and compares them
// with the closed form.

use liftedcodes::config::{Caps, OutputFormat, RunConfig};
use liftedcodes::lifted::{lift, HammingSpec};
use liftedcodes::verify::verify;

pub fn run_example() -> liftedcodes::Result<()> {
    let caps = Caps::default();
    for (q, m, r) in [(2, 2, 4), (2, 3, 2), (3, 2, 2)] {
        let lifted = lift(&HammingSpec::from_q(q, m)?, r)?;
        let measured = lifted.code().is_completely_regular(&caps)?;
        let table = lifted.code().coset_table(&caps, false)?;
        println!(
            "q={q} m={m} r={r}: measured {}, closed form {}, cosets by distance {:?}",
            measured.array().map_or("not CR".into(), |a| a.compact()),
            lifted.closed_form_array().compact(),
            table.mu()
        );
    }

    let report = verify(&RunConfig::new(2, 2, 4)?)?;
    print!("{}", report.render(OutputFormat::Text));
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
