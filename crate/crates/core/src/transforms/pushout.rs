use std::collections::{BTreeMap, HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::kgraph::{KGraph, Path, Skeleton, VertexId};
use crate::lattice::{quotient_structure, Degree};
use crate::periodicity::{periodicity_group, Equivalence, PeriodicityReport};

use super::qgraph::{verify_qgraph, Arrow, QGraph, QGraphError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PushoutError {
    #[error("the graph does not have property W")]
    PropertyWViolation,
    #[error("vertices {0:?} fail the periodicity exchange test")]
    VerticesPerIncomplete(Vec<String>),
    #[error("search bound too small: {0}")]
    BoundInsufficient(String),
    #[error("quotient is not a valid quotient graph: {0}")]
    Invalid(#[from] QGraphError),
}

/// `q_*Λ` together with the graph actually quotiented and its report.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub qgraph: QGraph,
    /// `Λ` itself, or its restriction to the vertices passing the exchange test.
    pub graph: KGraph,
    pub report: PeriodicityReport,
}

/// The subgraph on `keep`, with every edge whose endpoints both stay.
pub fn restrict_to(g: &KGraph, keep: &[VertexId]) -> Skeleton {
    let kept: HashSet<VertexId> = keep.iter().copied().collect();
    let mut s = Skeleton::new(g.rank());
    let mut vmap = HashMap::new();
    for v in 0..g.vertex_count() {
        if kept.contains(&v) {
            vmap.insert(v, s.add_vertex(g.vertex_name(v)));
        }
    }
    let mut emap = HashMap::new();
    for (id, e) in g.skeleton().edges().iter().enumerate() {
        if let (Some(&r), Some(&src)) = (vmap.get(&e.range), vmap.get(&e.source)) {
            emap.insert(id, s.add_edge(e.name.clone(), e.color, r, src));
        }
    }
    for sq in g.skeleton().squares() {
        let ids = [sq.a, sq.b, sq.b_prime, sq.a_prime].map(|e| emap.get(&e).copied());
        if let [Some(a), Some(b), Some(b2), Some(a2)] = ids {
            s.add_square(a, b, b2, a2);
        }
    }
    s
}

/// Builds the quotient of `g` by the periodicity group in `report`.
pub fn pushout(g: &KGraph, report: &PeriodicityReport) -> Result<Pushout, PushoutError> {
    if !report.property_w {
        return Err(PushoutError::PropertyWViolation);
    }
    if report.vertices_per.len() == g.vertex_count() {
        return quotient(g.clone(), report.clone());
    }
    let incomplete = || {
        let missing = (0..g.vertex_count())
            .filter(|v| !report.vertices_per.contains(v))
            .map(|v| g.vertex_name(v).to_string())
            .collect();
        PushoutError::VerticesPerIncomplete(missing)
    };
    if report.vertices_per.is_empty() {
        return Err(incomplete());
    }
    let sub = restrict_to(g, &report.vertices_per).validate().map_err(|_| incomplete())?;
    let sub_report = periodicity_group(&sub, &report.search_bound);
    if sub_report.vertices_per.len() != sub.vertex_count() || !sub_report.property_w {
        return Err(incomplete());
    }
    let restricted: Vec<String> = (0..g.vertex_count())
        .filter(|v| !report.vertices_per.contains(v))
        .map(|v| g.vertex_name(v).to_string())
        .collect();
    let mut out = quotient(sub, sub_report)?;
    out.qgraph.restricted = restricted;
    Ok(out)
}

/// Degrees `0`, `eᵢ` and `eᵢ + eⱼ` with `i ≤ j`.
fn closure_degrees(k: usize) -> Vec<Degree> {
    let mut out = vec![Degree::zero(k)];
    out.extend((0..k).map(|i| Degree::unit(k, i)));
    for i in 0..k {
        for j in i..k {
            let mut d = Degree::zero(k);
            d.0[i] += 1;
            d.0[j] += 1;
            out.push(d);
        }
    }
    out
}

fn quotient(g: KGraph, report: PeriodicityReport) -> Result<Pushout, PushoutError> {
    let k = g.rank();
    let qm = quotient_structure(&report.group);
    let mut gamma = QGraph::new(qm.clone());
    let paths: Vec<Path> = closure_degrees(k).iter().flat_map(|d| g.paths_of_degree(d, None)).collect();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let qdeg: Vec<_> = paths.iter().map(|p| qm.q(&p.degree.to_gdegree())).collect();

    let mut eq = Equivalence::new(&g);
    let mut uf = UnionFind::<usize>::new(paths.len());
    for x in 0..paths.len() {
        for y in x + 1..paths.len() {
            let (a, b) = (&paths[x], &paths[y]);
            if a.source != b.source || a.range != b.range || !eq.is_equivalent(a, b) {
                continue;
            }
            if qdeg[x] != qdeg[y] {
                return Err(PushoutError::BoundInsufficient(format!(
                    "{} ~ {} but their degree difference is outside the group found",
                    g.path_name(a),
                    g.path_name(b)
                )));
            }
            uf.union(x, y);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..paths.len() {
        classes.entry(uf.find(x)).or_default().push(x);
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
    classes.sort_by_key(|members| members[0]);

    for v in 0..g.vertex_count() {
        gamma.add_vertex(g.vertex_name(v));
    }
    let gens = gamma.generator_degrees();
    let mut arrow_of_class = vec![Arrow::Vertex(0); classes.len()];
    let mut class_of = vec![0; paths.len()];
    let mut used: HashSet<String> = HashSet::new();
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
        let first = &paths[members[0]];
        let delta = &qdeg[members[0]];
        let arrow = if let Some(&x) = members.iter().find(|&&x| paths[x].is_vertex()) {
            Arrow::Vertex(paths[x].range)
        } else if delta.is_zero() {
            return Err(PushoutError::BoundInsufficient(format!(
                "{} has degree 0 in the quotient but is not equivalent to a vertex",
                g.path_name(first)
            )));
        } else {
            let name = match gens.iter().position(|h| h == delta) {
                Some(color) => {
                    let Some(&x) =
                        members.iter().find(|&&x| paths[x].len() == 1 && g.color(paths[x].edges[0]) == color)
                    else {
                        return Err(PushoutError::BoundInsufficient(format!(
                            "{} has a generator degree but no edge of color {} is equivalent to it",
                            g.path_name(first),
                            color + 1
                        )));
                    };
                    g.path_name(&paths[x])
                }
                None => {
                    let mut name = g.path_name(first);
                    while used.contains(&name) {
                        name.push('\'');
                    }
                    name
                }
            };
            used.insert(name.clone());
            Arrow::Morphism(gamma.add_morphism(name, delta.clone(), first.range, first.source))
        };
        arrow_of_class[c] = arrow;
        gamma.set_representatives(arrow, members.iter().map(|&x| paths[x].clone()).collect());
    }

    for a in 0..g.edge_count() {
        for &b in g.in_edges_all(g.edge(a).source) {
            let arrow = |p: &Path| arrow_of_class[class_of[index[p]]];
            let (x, y) = (arrow(&g.edge_path(a)), arrow(&g.edge_path(b)));
            let (Arrow::Morphism(x), Arrow::Morphism(y)) = (x, y) else {
                continue;
            };
            let ab = g.normalize(g.edge(a).range, &[a, b]).expect("composable");
            gamma
                .set_composition(x, y, arrow(&ab))
                .map_err(|e| PushoutError::BoundInsufficient(format!("inconsistent composition: {e}")))?;
        }
    }
    verify_qgraph(&gamma)?;
    Ok(Pushout { qgraph: gamma, graph: g, report })
}
