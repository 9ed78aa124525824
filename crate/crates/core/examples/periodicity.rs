//! Path equivalence and the periodicity group.

use pgraph::builtins;
use pgraph::lattice::Degree;
use pgraph::periodicity::{periodicity_group, Equivalence, Verdict};

pub fn run() -> String {
    let g = builtins::sims().validate().expect("a 2-graph");
    let s = g.skeleton();
    let u = s.vertex_id("u").unwrap();
    let e = s.edge_id("e").unwrap();

    let mut eq = Equivalence::new(&g);
    let ee = g.normalize(u, &[e, e]).unwrap();
    let mut out = format!("e.e ~ u: {}\n", eq.is_equivalent(&ee, &g.vertex_path(u)));
    let w = eq.equivalent(&g.edge_path(e), &g.vertex_path(u));
    if let Verdict::Distinguished { extension } = &w.verdict {
        out += &format!("e ~ u: false, told apart after {}\n", g.path_name(extension));
    }

    let report = periodicity_group(&g, &Degree(vec![3, 3]));
    out += &format!("Per = {}, aperiodic: {}\n", report.group, report.aperiodic);
    let two = builtins::two_loops().validate().unwrap();
    out += &format!("two loops aperiodic: {}\n", periodicity_group(&two, &Degree(vec![4])).aperiodic);
    out
}

fn main() {
    print!("{}", run());
}
