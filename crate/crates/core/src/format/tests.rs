use super::*;
use crate::builtins;
use crate::lattice::Degree;
use crate::periodicity::periodicity_group;
use crate::transforms::{eg1, pushout, verify_qgraph};

#[test]
fn builtin_kgraphs_round_trip() {
    for name in builtins::NAMES.iter().filter(|n| **n != "eg1") {
        let s = builtins::kgraph(name).unwrap();
        let text = print_kgraph(&s);
        assert_eq!(parse_kgraph(&text).unwrap(), s, "{name}");
        assert!(matches!(parse_graph(&text).unwrap(), GraphFile::KGraph(_)));
    }
}

#[test]
fn qgraphs_round_trip() {
    let text = print_qgraph(&eg1());
    assert_eq!(
        text,
        "qgraph torsion=2 free=0\nsubgroup 2\nvertex v\nmorphism e degree=(1;) range=v source=v\ncompose e e = v\n"
    );
    let back = parse_qgraph(&text).unwrap();
    verify_qgraph(&back).unwrap();
    assert_eq!(print_qgraph(&back), text);

    let sims = builtins::sims().validate().unwrap();
    let po = pushout(&sims, &periodicity_group(&sims, &Degree(vec![3, 3]))).unwrap();
    let text = print_qgraph(&po.qgraph);
    let back = parse_qgraph(&text).unwrap();
    verify_qgraph(&back).unwrap();
    assert_eq!(print_qgraph(&back), text);
}

#[test]
fn subgroup_defaults_to_the_torsion_orders() {
    let text = "qgraph torsion=2 free=0\nvertex v\nmorphism e degree=(1;) range=v source=v\ncompose e e = v\n";
    let gamma = parse_qgraph(text).unwrap();
    assert_eq!(gamma.quotient().subgroup().generators(), [crate::lattice::GDegree(vec![2])]);
    verify_qgraph(&gamma).unwrap();
    let err = parse_qgraph("qgraph torsion=3 free=0\nsubgroup 2\n").unwrap_err();
    assert_eq!((err.line, err.column), (1, 1));
}

#[test]
fn parse_errors_point_at_the_problem() {
    let err = parse_kgraph("kgraph k=1\nvertex v\nedge e color=1 range=v source=w\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 31));
    assert!(err.message.contains("unknown vertex `w`"));
    let err = parse_kgraph("# a comment\nkgraph k=x\n").unwrap_err();
    assert_eq!((err.line, err.column), (2, 10));
    let err = parse_kgraph("kgraph k=1\nvertex v\n  edge e color=0 range=v source=v\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 16));
    let err = parse_kgraph("kgraph k=2\nvertex v\nsquare a b = b a\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 8));
    let err = parse_graph("graph\n").unwrap_err();
    assert_eq!(err.line, 1);
    let err = parse_kgraph("kgraph k=1\nvertex v\nedge e color=1 range=v\n").unwrap_err();
    assert!(err.message.contains("missing field `source`"));
    let err = parse_qgraph("qgraph torsion=2 free=0\nvertex v\nmorphism e degree=1 range=v source=v\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 19));
}

#[test]
fn missing_square_is_a_validation_error() {
    let s = parse_kgraph("kgraph k=2\nvertex v\nedge a color=1 range=v source=v\nedge b color=2 range=v source=v\n")
        .unwrap();
    assert!(matches!(s.validate(), Err(crate::kgraph::KGraphError::MissingSquare { .. })));
}

#[test]
fn dot_styles() {
    let dot = kgraph_dot(&builtins::sims(), "sims");
    assert_eq!(dot.matches("style=solid").count(), 3);
    assert_eq!(dot.matches("style=dashed").count(), 4);
    assert_eq!(dot, kgraph_dot(&builtins::sims(), "sims"));
    assert!(dot.contains("  \"w\" -> \"v\" [label=\"f\", style=solid];"));

    let sims = builtins::sims().validate().unwrap();
    let po = pushout(&sims, &periodicity_group(&sims, &Degree(vec![3, 3]))).unwrap();
    let dot = qgraph_dot(&po.qgraph, "pushout");
    assert_eq!(dot.matches("style=dotted").count(), 3);
    assert_eq!(dot.matches("style=solid").count(), 4);
    assert_eq!(dot.matches("->").count(), 7);
}
