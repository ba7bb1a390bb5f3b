// Lifting a shortened Hamming code breaks complete regularity.

use liftedcodes::code::parse_parity_file;
use liftedcodes::config::Caps;
use liftedcodes::lifted::non_hamming_refutation;

pub fn run_example() -> liftedcodes::Result<()> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/shortened_hamming_6_3.txt"
    );
    let h = parse_parity_file(&std::fs::read_to_string(path)?)?;
    let rf = non_hamming_refutation(&h, 2, &Caps::default())?;
    println!(
        "base [{}, {}, {}], covering radius {}",
        rf.base.n, rf.base.k, rf.base.min_distance, rf.base.covering_radius
    );
    println!(
        "lift over {} completely regular: {}",
        rf.field,
        rf.regularity.is_regular()
    );
    if let Some(w) = &rf.witness {
        println!("coset of {:?}: weights {:?}", w.x, w.distribution_x);
        println!(
            "coset of {:?}: weights {:?}",
            w.x_prime, w.distribution_x_prime
        );
    }
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
