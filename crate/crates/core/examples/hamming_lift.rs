// Lifts the binary Hamming [7,4] code to F_4 and looks at the result.

use liftedcodes::config::Caps;
use liftedcodes::lifted::{lift, HammingSpec};

pub fn run_example() -> liftedcodes::Result<()> {
    let spec = HammingSpec::from_q(2, 3)?;
    println!("H_(3,2) =\n{}", spec.parity());
    let lifted = lift(&spec, 2)?;
    let code = lifted.code();
    println!(
        "C_(3,2) over {}: length {}, dimension {}, {} codewords",
        lifted.ambient(),
        code.length(),
        code.dimension(),
        code.size()
    );
    let caps = Caps::default();
    let sums = lifted.sumset_identity(&caps)?;
    println!("C + aC equals the lift: {}", sums.holds());
    let w = lifted.min_weight_check(&caps)?;
    println!(
        "minimum weight {:?}, {} words of that weight",
        w.min_weight, w.min_weight_count
    );
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
