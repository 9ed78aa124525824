//! Read a k-graph from text, write it back, and draw it.

use pgraph::format::{kgraph_dot, parse_kgraph, print_kgraph};

const FLIP: &str = "\
# one vertex, commuting loops
kgraph k=2
vertex v
edge a color=1 range=v source=v
edge b color=2 range=v source=v
square a b = b a
";

pub fn run() -> String {
    let s = parse_kgraph(FLIP).expect("parses");
    let g = s.clone().validate().expect("a 2-graph");
    let mut out = print_kgraph(g.skeleton());
    assert_eq!(parse_kgraph(&out).unwrap(), s);
    out += &kgraph_dot(g.skeleton(), "flip");
    out
}

fn main() {
    print!("{}", run());
}
