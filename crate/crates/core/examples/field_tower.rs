// Builds F_16 directly and as a tower over F_4, then embeds F_4 into F_16.

use liftedcodes::gf::{field_make, subfield_embedding, Field};

pub fn run_example() -> liftedcodes::Result<()> {
    let f16 = field_make(2, &[4])?;
    let tower = field_make(2, &[2, 2])?;
    println!("F_16        {f16}");
    println!("F_4 -> F_16 {tower}");

    let alpha = f16.primitive_element();
    println!(
        "primitive element {} has order {}",
        alpha.value(),
        alpha.multiplicative_order()?
    );
    let x = f16.elem(7)?;
    let y = f16.elem(11)?;
    println!(
        "7 + 11 = {}, 7 * 11 = {}, 7 / 11 = {}",
        (&x + &y).value(),
        (&x * &y).value(),
        x.checked_div(&y)?.value()
    );

    let f2 = Field::prime(2)?;
    let emb = subfield_embedding(&f16, &f2, 2)?;
    for a in emb.small().elements() {
        println!("F_4 {a} -> F_16 {}", emb.apply(a));
    }
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
