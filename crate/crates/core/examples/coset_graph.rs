// The coset graph of C_(3,2) over F_4 is the bilinear forms graph on 2 x 3
// binary matrices.

use liftedcodes::config::Caps;
use liftedcodes::graph::{
    build_coset_graph, classical_params, export_graph, verify_distance_regular,
};
use liftedcodes::lifted::{lift, HammingSpec};

pub fn run_example() -> liftedcodes::Result<()> {
    let caps = Caps::default();
    let lifted = lift(&HammingSpec::from_q(2, 3)?, 2)?;
    let g = build_coset_graph(lifted.code(), &caps)?;
    println!("{} vertices, degree {}", g.vertex_count(), g.degree());
    let verdict = verify_distance_regular(&g, &caps)?;
    println!("{}", liftedcodes::report::to_json(&verdict));
    println!(
        "classical match: {}",
        verdict.params() == Some(&classical_params(2, 2, 3))
    );
    let dot = export_graph(&g, "dot")?;
    println!("{}", dot.lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}

fn main() -> liftedcodes::Result<()> {
    run_example()
}
