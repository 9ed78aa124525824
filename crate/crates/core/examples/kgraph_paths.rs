//! Build a 2-graph from its skeleton and work with paths.

use pgraph::builtins;
use pgraph::lattice::Degree;

pub fn run() -> String {
    let g = builtins::sims().validate().expect("a 2-graph");
    let s = g.skeleton();
    let id = |n: &str| s.edge_id(n).unwrap();
    let u = s.vertex_id("u").unwrap();

    let mut out = String::new();
    let (d2, f2) = g.swap(id("e"), id("a"));
    out += &format!("e·a = {}·{}\n", g.edge(d2).name, g.edge(f2).name);

    let lambda = g.normalize(u, &[id("e"), id("a"), id("b")]).unwrap();
    out += &format!("e·a·b in normal form: {}\n", g.path_name(&lambda));
    let (head, tail) = g.factor(&lambda, &Degree(vec![0, 1])).unwrap();
    out += &format!("factor at (0,1): {} then {}\n", g.path_name(&head), g.path_name(&tail));
    for n in [Degree(vec![1, 1]), Degree(vec![2, 2])] {
        out += &format!("paths of degree {n} at u: {}\n", g.count_paths(u, &n));
    }
    out
}

fn main() {
    print!("{}", run());
}
