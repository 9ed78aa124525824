//! Pull a graph over `Z/2Z` back to a 1-graph and compare periodicity.

use pgraph::lattice::Degree;
use pgraph::transforms::{eg1, pullback, verify_pullback_periodic};

pub fn run() -> String {
    let gamma = eg1();
    let pb = pullback(&gamma).expect("valid");
    let mut out = format!("pullback: {} vertex, {} edge\n", pb.graph.vertex_count(), pb.graph.edge_count());
    let check = verify_pullback_periodic(&gamma, &Degree(vec![3])).unwrap();
    out += &format!(
        "H = {}, Per = {}, H inside Per: {}, strictly: {}\n",
        gamma.quotient().subgroup(),
        check.per,
        check.contains,
        check.strict
    );
    out
}

fn main() {
    print!("{}", run());
}
