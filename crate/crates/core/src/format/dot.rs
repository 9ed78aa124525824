use std::fmt::Write as _;

use crate::kgraph::Skeleton;
use crate::transforms::{Arrow, QGraph};

/// Edge styles by color: 1 solid, 2 dashed, 3 dotted, then bold, then repeating.
const STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices in file order, then edges by id, drawn from source to range.
pub fn kgraph_dot(s: &Skeleton, title: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(title));
    for v in s.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    let vs = s.vertices();
    for e in s.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(&vs[e.source]),
            quote(&vs[e.range]),
            quote(&e.name),
            STYLES[e.color % STYLES.len()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Vertices and generator-degree morphisms. Morphisms whose degree carries
/// torsion are dotted; the other generator degrees get solid, dashed, bold
/// in order of first color. Composites are left out.
pub fn qgraph_dot(gamma: &QGraph, title: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(title));
    for v in gamma.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    let gens = gamma.generator_degrees();
    let mut free_degrees = Vec::new();
    for g in &gens {
        if !g.has_torsion() && !g.is_zero() && !free_degrees.contains(g) {
            free_degrees.push(g.clone());
        }
    }
    let free_styles = ["solid", "dashed", "bold"];
    let vs = gamma.vertices();
    for (id, m) in gamma.morphisms().iter().enumerate() {
        if !gens.contains(&m.degree) {
            continue;
        }
        let style = match free_degrees.iter().position(|g| *g == m.degree) {
            _ if m.degree.has_torsion() => "dotted",
            Some(i) => free_styles[i % free_styles.len()],
            None => "dotted",
        };
        writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(&vs[m.source]),
            quote(&vs[m.range]),
            quote(&format!("{} {}", gamma.name(Arrow::Morphism(id)), m.degree)),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
