//! Named example graphs, addressable from the command line as `example:NAME`.

use crate::kgraph::{single_vertex_fixture, Skeleton};

/// Names of all built-in examples.
pub const NAMES: &[&str] = &["sims", "E", "two-loops", "eg1", "flip", "disjoint-loops", "product-2x2", "twisted-2x2"];

/// Three vertices `u, v, w` with solid (color 1) edges
/// `e: u→u, f: w→v, g: v→w` and dashed (color 2) edges
/// `a: w→u, b: u→w, c: u→v, d: v→u`, arrows drawn from source to range.
///
/// Each composable solid·dashed pair has exactly one dashed·solid pair with
/// the same endpoints, so the squares are forced:
/// `e·a = d·f`, `e·d = a·g`, `f·b = c·e`, `g·c = b·e`.
pub fn sims() -> Skeleton {
    let mut s = Skeleton::new(2);
    let u = s.add_vertex("u");
    let v = s.add_vertex("v");
    let w = s.add_vertex("w");
    let e = s.add_edge("e", 0, u, u);
    let f = s.add_edge("f", 0, v, w);
    let g = s.add_edge("g", 0, w, v);
    let a = s.add_edge("a", 1, u, w);
    let b = s.add_edge("b", 1, w, u);
    let c = s.add_edge("c", 1, v, u);
    let d = s.add_edge("d", 1, u, v);
    s.add_square(e, a, d, f);
    s.add_square(e, d, a, g);
    s.add_square(f, b, c, e);
    s.add_square(g, c, b, e);
    s
}

/// The 1-graph with one vertex `v` and one edge `e`.
pub fn single_loop() -> Skeleton {
    let mut s = Skeleton::new(1);
    let v = s.add_vertex("v");
    s.add_edge("e", 0, v, v);
    s
}

/// One vertex `v` with two loops `e, f` of the same color.
pub fn two_loops() -> Skeleton {
    let mut s = Skeleton::new(1);
    let v = s.add_vertex("v");
    s.add_edge("e", 0, v, v);
    s.add_edge("f", 0, v, v);
    s
}

/// Two vertices, each with its own loop; no vertex reaches the other.
pub fn disjoint_loops() -> Skeleton {
    let mut s = Skeleton::new(1);
    let x = s.add_vertex("x");
    let y = s.add_vertex("y");
    s.add_edge("e", 0, x, x);
    s.add_edge("f", 0, y, y);
    s
}

/// One vertex with commuting loops `a0·b0 = b0·a0`.
pub fn flip() -> Skeleton {
    single_vertex_fixture(2, &[1, 1], &[vec![0]]).expect("sizes match")
}

/// One vertex, two loops per color, `aᵢ·bⱼ = bⱼ·aᵢ`.
pub fn product_2x2() -> Skeleton {
    single_vertex_fixture(2, &[2, 2], &[vec![0, 2, 1, 3]]).expect("sizes match")
}

/// One vertex, two loops per color, `aᵢ·bⱼ = bᵢ·aⱼ`.
pub fn twisted_2x2() -> Skeleton {
    single_vertex_fixture(2, &[2, 2], &[vec![0, 1, 2, 3]]).expect("sizes match")
}

/// Looks up a built-in k-graph by name; `eg1` is a quotient-monoid graph and
/// is served by [`crate::transforms::eg1`].
pub fn kgraph(name: &str) -> Option<Skeleton> {
    Some(match name {
        "sims" => sims(),
        "E" => single_loop(),
        "two-loops" => two_loops(),
        "flip" => flip(),
        "disjoint-loops" => disjoint_loops(),
        "product-2x2" => product_2x2(),
        "twisted-2x2" => twisted_2x2(),
        _ => return None,
    })
}
