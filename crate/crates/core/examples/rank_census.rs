// Counts r x m matrices over F_q by rank, by formula and by enumeration.

use liftedcodes::lifted::ground_field;
use liftedcodes::matq::{enumerate_rank_census, rank_census, MatQ};

pub fn run_example() -> liftedcodes::Result<()> {
    let (q, r, m) = (3, 2, 3);
    let f = ground_field(q)?;
    let counted = enumerate_rank_census(&f, r, m, 1 << 20)?;
    for row in rank_census(q, r as u32, m as u32) {
        println!(
            "rank {}: {} matrices (enumerated {})",
            row.k, row.count, counted[row.k as usize]
        );
    }

    let a = MatQ::from_rows(&f, &[vec![1, 2, 0], vec![2, 1, 0]])?;
    let nf = a.rank_normal_form();
    println!("{a}rank {}, normal form\n{}", nf.rank, nf.p);
    let (u, v) = a.rank_factorization();
    println!("U =\n{u}V =\n{v}");
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
