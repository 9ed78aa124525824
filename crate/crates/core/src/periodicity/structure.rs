use std::collections::VecDeque;

use crate::kgraph::{KGraph, VertexId};
use crate::lattice::Degree;

/// `{w : uΛw ≠ ∅}`, as a membership vector.
pub fn reachable_from(g: &KGraph, u: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &e in g.in_edges_all(x) {
            let s = g.edge(e).source;
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    seen
}

/// Every two vertices see a common vertex.
pub fn has_property_w(g: &KGraph) -> bool {
    let reach: Vec<Vec<bool>> = (0..g.vertex_count()).map(|u| reachable_from(g, u)).collect();
    (0..reach.len()).all(|u| (u + 1..reach.len()).all(|v| reach[u].iter().zip(&reach[v]).any(|(a, b)| *a && *b)))
}

/// No infinite path avoids the reachable set of any vertex.
///
/// If `vΛw = ∅` and `uΛw ≠ ∅` then `vΛu = ∅`, so an infinite path stays
/// outside `{w : vΛw ≠ ∅}` exactly when its diagonal vertices `x(t,…,t)` do.
/// Those are walks along degree-`(1,…,1)` paths, found here by pruning
/// vertices without a diagonal step inside the set until nothing changes.
pub fn is_cofinal(g: &KGraph) -> bool {
    let diagonal = Degree::uniform(g.rank(), 1);
    let steps: Vec<Vec<VertexId>> = (0..g.vertex_count())
        .map(|w| {
            let mut s: Vec<VertexId> = g.paths_of_degree(&diagonal, Some(w)).iter().map(|p| p.source).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    (0..g.vertex_count()).all(|v| {
        let mut alive: Vec<bool> = reachable_from(g, v).iter().map(|r| !r).collect();
        loop {
            let dead: Vec<VertexId> =
                (0..alive.len()).filter(|&w| alive[w] && !steps[w].iter().any(|&s| alive[s])).collect();
            if dead.is_empty() {
                break;
            }
            for w in dead {
                alive[w] = false;
            }
        }
        !alive.contains(&true)
    })
}

/// Every vertex emits an edge of every color.
pub fn is_sink_free(g: &KGraph) -> bool {
    let mut emits = vec![vec![false; g.rank()]; g.vertex_count()];
    for e in g.skeleton().edges() {
        emits[e.source][e.color] = true;
    }
    emits.iter().all(|colors| colors.iter().all(|&c| c))
}
