//! Quotient a periodic 2-graph by its periodicity group, pull the quotient
//! back, and check that the original graph comes back.

use pgraph::builtins;
use pgraph::format::print_qgraph;
use pgraph::lattice::Degree;
use pgraph::periodicity::periodicity_group;
use pgraph::transforms::{canonical_iso_check, pullback, pushout, verify_pushout_aperiodic};

pub fn run() -> String {
    let g = builtins::sims().validate().expect("a 2-graph");
    let report = periodicity_group(&g, &Degree(vec![3, 3]));
    let po = pushout(&g, &report).expect("property W and every vertex passes");
    let mut out = format!("quotient over {}\n", po.qgraph.quotient().describe());
    out += &print_qgraph(&po.qgraph).lines().take(6).map(|l| format!("  {l}\n")).collect::<String>();

    let back = pullback(&po.qgraph).expect("a valid quotient graph");
    out += &format!("pullback: {} vertices, {} edges\n", back.graph.vertex_count(), back.graph.edge_count());
    let cert = canonical_iso_check(&po.graph, &po.qgraph).expect("isomorphic");
    out += &format!("isomorphism checked on {} squares\n", cert.squares_checked);
    out += &format!("quotient aperiodic: {}\n", verify_pushout_aperiodic(&po).unwrap().holds());
    out
}

fn main() {
    print!("{}", run());
}
