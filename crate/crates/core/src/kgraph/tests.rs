use std::collections::HashSet;

use super::*;
use crate::builtins;

fn sims() -> KGraph {
    builtins::sims().validate().unwrap()
}

fn d(c: &[u32]) -> Degree {
    Degree(c.to_vec())
}

#[test]
fn commuting_loops_are_valid() {
    let g = builtins::flip().validate().unwrap();
    assert_eq!(g.vertex_count(), 1);
    assert_eq!(g.swap(0, 1), (1, 0));
    assert_eq!(g.swap(1, 0), (0, 1));
}

#[test]
fn removing_a_square_is_reported() {
    let full = builtins::flip();
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    s.add_edge("a0", 0, v, v);
    s.add_edge("b0", 1, v, v);
    assert_eq!(full.squares().len(), 1);
    assert_eq!(s.validate().unwrap_err(), KGraphError::MissingSquare { a: "a0".into(), b: "b0".into() });
}

#[test]
fn squares_must_be_injective() {
    let s = single_vertex_fixture(2, &[2, 1], &[vec![0, 0]]).unwrap();
    assert!(matches!(s.validate(), Err(KGraphError::NonBijectiveSquares(_))));
}

#[test]
fn square_endpoints_are_checked() {
    let mut s = builtins::sims();
    // e·a = d·g has the wrong source.
    s.add_square(0, 3, 6, 2);
    assert!(matches!(s.validate(), Err(KGraphError::EndpointMismatch { .. })));
}

#[test]
fn every_vertex_receives_every_color() {
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    s.add_edge("a", 0, v, v);
    assert_eq!(s.validate().unwrap_err(), KGraphError::SourceViolation { vertex: "v".into(), color: 1 });
}

/// Exhausts square families on one vertex with two loops per color and three
/// colors, returning the first one that breaks associativity.
fn nonassociative_rank_three() -> Skeleton {
    let perms = permutations(4);
    for p in &perms {
        for q in &perms {
            for r in &perms {
                let s = single_vertex_fixture(3, &[2, 2, 2], &[p.clone(), q.clone(), r.clone()]).unwrap();
                if matches!(s.clone().validate(), Err(KGraphError::AssociativityViolation { .. })) {
                    return s;
                }
            }
        }
    }
    panic!("every family was associative");
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn rank_three_needs_associative_squares() {
    let identity = vec![0, 2, 1, 3];
    let commuting = single_vertex_fixture(3, &[2, 2, 2], &vec![identity; 3]).unwrap();
    assert!(commuting.validate().is_ok());
    let broken = nonassociative_rank_three();
    assert!(matches!(broken.validate(), Err(KGraphError::AssociativityViolation { .. })));
}

#[test]
fn fixture_sizes_are_checked() {
    assert!(single_vertex_fixture(2, &[1], &[]).is_err());
    assert!(single_vertex_fixture(2, &[1, 1], &[]).is_err());
    assert!(single_vertex_fixture(2, &[1, 2], &[vec![0]]).is_err());
    assert!(single_vertex_fixture(2, &[1, 1], &[vec![5]]).is_err());
    let e = single_vertex_fixture(1, &[1], &[]).unwrap().validate().unwrap();
    assert_eq!((e.vertex_count(), e.edge_count()), (1, 1));
}

#[test]
fn normalize_uses_inverse_squares() {
    let g = sims();
    let id = |n: &str| g.skeleton().edge_id(n).unwrap();
    // d·f is dashed then solid; its normal form is the solid-first e·a.
    let p = g.normalize(0, &[id("d"), id("f")]).unwrap();
    assert_eq!(p.edges, vec![id("e"), id("a")]);
    assert_eq!(p.degree, d(&[1, 1]));
    assert_eq!((p.range, p.source), (0, 2));
    for sq in g.skeleton().squares() {
        let r = g.edge(sq.a).range;
        assert_eq!(g.normalize(r, &[sq.b_prime, sq.a_prime]).unwrap().edges, vec![sq.a, sq.b]);
    }
}

#[test]
fn normalize_trivial_cases() {
    let g = sims();
    assert_eq!(g.normalize(1, &[]).unwrap(), g.vertex_path(1));
    assert_eq!(g.normalize(0, &[0]).unwrap(), g.edge_path(0));
    assert_eq!(g.normalize(1, &[0]), Err(PathError::NotComposable(0)));
    assert_eq!(g.normalize(0, &[0, 1]), Err(PathError::NotComposable(1)));
}

#[test]
fn normalize_is_idempotent() {
    let g = sims();
    for p in g.paths_of_degree(&d(&[2, 3]), None) {
        assert_eq!(g.normalize(p.range, &p.edges).unwrap(), p);
    }
}

#[test]
fn compose_identities_and_associativity() {
    let g = sims();
    let short: Vec<Path> =
        [d(&[0, 0]), d(&[1, 0]), d(&[0, 1]), d(&[1, 1])].iter().flat_map(|n| g.paths_of_degree(n, None)).collect();
    for l in &short {
        assert_eq!(&g.compose(l, &g.vertex_path(l.source)).unwrap(), l);
        assert_eq!(&g.compose(&g.vertex_path(l.range), l).unwrap(), l);
    }
    for a in &short {
        for b in short.iter().filter(|b| b.range == a.source) {
            for c in short.iter().filter(|c| c.range == b.source) {
                let left = g.compose(&g.compose(a, b).unwrap(), c).unwrap();
                let right = g.compose(a, &g.compose(b, c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn segments_recompose() {
    let g = sims();
    for lambda in g.paths_of_degree(&d(&[2, 2]), None) {
        assert_eq!(g.segment(&lambda, &d(&[0, 0]), &lambda.degree).unwrap(), lambda);
        for p in lambda.degree.box_below() {
            let (head, tail) = g.factor(&lambda, &p).unwrap();
            assert_eq!(g.compose(&head, &tail).unwrap(), lambda);
            let point = g.segment(&lambda, &p, &p).unwrap();
            assert_eq!(point, g.vertex_path(head.source));
            for q in lambda.degree.box_below().into_iter().filter(|q| p.le(q)) {
                let mid = g.segment(&lambda, &p, &q).unwrap();
                let first = g.segment(&lambda, &d(&[0, 0]), &p).unwrap();
                let last = g.segment(&lambda, &q, &lambda.degree).unwrap();
                let whole = g.compose(&g.compose(&first, &mid).unwrap(), &last).unwrap();
                assert_eq!(whole, lambda);
            }
        }
    }
    let lambda = g.paths_of_degree(&d(&[1, 1]), None).remove(0);
    assert_eq!(g.segment(&lambda, &d(&[1, 0]), &d(&[0, 1])), Err(PathError::OutOfRange));
    assert_eq!(g.segment(&lambda, &d(&[0, 0]), &d(&[2, 0])), Err(PathError::OutOfRange));
}

#[test]
fn factorization_is_unique() {
    let g = sims();
    for n in d(&[2, 2]).box_below() {
        for lambda in g.paths_of_degree(&n, None) {
            for p in n.box_below() {
                let q = n.checked_sub(&p).unwrap();
                let mut found = Vec::new();
                for eta in g.paths_of_degree(&p, Some(lambda.range)) {
                    for zeta in g.paths_of_degree(&q, Some(eta.source)) {
                        if g.compose(&eta, &zeta).unwrap() == lambda {
                            found.push((eta.clone(), zeta));
                        }
                    }
                }
                assert_eq!(found.len(), 1, "{} at {p}", g.path_name(&lambda));
                assert_eq!(found[0], g.factor(&lambda, &p).unwrap());
            }
        }
    }
}

#[test]
fn path_counts() {
    let g = sims();
    assert_eq!(g.paths_of_degree(&d(&[0, 0]), None).len(), 3);
    let two = builtins::two_loops().validate().unwrap();
    for l in 0..6 {
        assert_eq!(two.paths_of_degree(&Degree(vec![l]), None).len(), 2usize.pow(l));
    }
    // Every composable solid·dashed pair, normalized, is a distinct (1,1) path.
    for v in 0..3 {
        let mut by_composition = HashSet::new();
        for (first, second) in [(0, 1), (1, 0)] {
            for &x in g.in_edges(v, first) {
                for &y in g.in_edges(g.edge(x).source, second) {
                    by_composition.insert(g.normalize(v, &[x, y]).unwrap());
                }
            }
        }
        let listed: HashSet<Path> = g.paths_of_degree(&d(&[1, 1]), Some(v)).into_iter().collect();
        assert_eq!(by_composition, listed);
    }
}

#[test]
fn counts_split_over_factorizations() {
    let g = sims();
    for v in 0..3 {
        for p in d(&[2, 2]).box_below() {
            for q in d(&[2, 2]).box_below() {
                let total = g.count_paths(v, &(&p + &q));
                let split: u128 = g.paths_of_degree(&p, Some(v)).iter().map(|mu| g.count_paths(mu.source, &q)).sum();
                assert_eq!(total, split);
                assert_eq!(total as usize, g.paths_of_degree(&(&p + &q), Some(v)).len());
                assert!(total > 0);
            }
        }
    }
}
