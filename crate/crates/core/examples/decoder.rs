// Decodes a corrupted word of C_(3,2) over F_4 through its syndrome matrix.

use liftedcodes::config::Caps;
use liftedcodes::lifted::{lift, HammingSpec};

pub fn run_example() -> liftedcodes::Result<()> {
    let lifted = lift(&HammingSpec::from_q(2, 3)?, 2)?;
    let f = lifted.ambient().clone();
    let codeword = lifted.code().codewords(&Caps::default())?[77].clone();
    let mut received = codeword.clone();
    received[1] = f.add(received[1], 2);
    received[5] = f.add(received[5], 3);

    let s = lifted.syndrome_matrix(&received)?;
    println!("sent     {codeword:?}\nreceived {received:?}");
    println!("syndrome matrix\n{}rank {}", s.matrix(), s.rank());
    let d = lifted.decode(&received)?;
    println!("decoded  {:?} at distance {}", d.codeword, d.distance);
    println!("error    {:?}", d.error);
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
