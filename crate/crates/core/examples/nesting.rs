// C_(2,2) over F_4 sits inside C_(2,4) over F_16.

use liftedcodes::config::Caps;
use liftedcodes::lifted::nesting_check;

pub fn run_example() -> liftedcodes::Result<()> {
    let v = nesting_check(2, 2, 2, 2, &Caps::default())?;
    println!("{} -> {}", v.small_field, v.big_field);
    println!(
        "{} codewords embedded, all inside the {} codewords of the big code: {}",
        v.checked, v.big_size, v.subset
    );
    println!("weights preserved: {}", v.weights_preserved);
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
