use std::collections::HashMap;

use thiserror::Error;

use crate::kgraph::{EdgeId, KGraph, KGraphError, Path, Skeleton};

use super::qgraph::{verify_qgraph, Arrow, FactorIndex, QGraph, QGraphError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PullbackError {
    #[error("invalid quotient graph: {0}")]
    Invalid(#[from] QGraphError),
    #[error("vertex {vertex} has nothing of generator degree {}", .color + 1)]
    DegreeMismatch { vertex: String, color: usize },
    #[error("{a}·{b} does not factor uniquely the other way round")]
    FactorizationFailure { a: String, b: String },
    #[error("pulled-back skeleton is not a k-graph: {0}")]
    NotKGraph(#[from] KGraphError),
}

/// `q*Γ`: edges of color `i` are the arrows of degree `q(eᵢ)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub graph: KGraph,
    /// The arrow each edge comes from.
    pub arrow_of_edge: Vec<Arrow>,
    edge_of: HashMap<(Arrow, usize), EdgeId>,
}

impl Pullback {
    /// The color-`color` edge over `arrow`.
    pub fn edge_of(&self, arrow: Arrow, color: usize) -> Option<EdgeId> {
        self.edge_of.get(&(arrow, color)).copied()
    }

    /// The image of a path of at most two edges under the projection to `Γ`.
    pub fn project(&self, gamma: &QGraph, path: &Path) -> Option<Arrow> {
        path.edges.iter().try_fold(Arrow::Vertex(path.range), |acc, &e| gamma.compose(acc, self.arrow_of_edge[e]))
    }
}

pub fn pullback(gamma: &QGraph) -> Result<Pullback, PullbackError> {
    verify_qgraph(gamma)?;
    let gens = gamma.generator_degrees();
    let k = gens.len();
    let mut s = Skeleton::new(k);
    for v in gamma.vertices() {
        s.add_vertex(v.clone());
    }
    let mut arrow_of_edge = Vec::new();
    let mut edge_of = HashMap::new();
    let mut by_color: Vec<Vec<(EdgeId, Arrow)>> = vec![Vec::new(); k];
    for (i, g) in gens.iter().enumerate() {
        let arrows = gamma.arrows_of_degree(g);
        for v in 0..gamma.vertices().len() {
            if !arrows.iter().any(|&a| gamma.range(a) == v) {
                return Err(PullbackError::DegreeMismatch { vertex: gamma.vertices()[v].clone(), color: i });
            }
        }
        let shared = gens.iter().filter(|h| *h == g).count() > 1;
        for a in arrows {
            let name = match a {
                Arrow::Vertex(v) => format!("{}.{}", gamma.vertices()[v], i + 1),
                Arrow::Morphism(_) if shared => format!("{}.{}", gamma.name(a), i + 1),
                Arrow::Morphism(_) => gamma.name(a).to_string(),
            };
            let e = s.add_edge(name, i, gamma.range(a), gamma.source(a));
            arrow_of_edge.push(a);
            edge_of.insert((a, i), e);
            by_color[i].push((e, a));
        }
    }
    let index = FactorIndex::new(gamma);
    for i in 0..k {
        for j in i + 1..k {
            for &(x, alpha) in &by_color[i] {
                for &(y, beta) in by_color[j].iter().filter(|(_, b)| gamma.range(*b) == gamma.source(alpha)) {
                    let failure = || PullbackError::FactorizationFailure {
                        a: gamma.name(alpha).to_string(),
                        b: gamma.name(beta).to_string(),
                    };
                    let c = gamma.compose(alpha, beta).ok_or_else(failure)?;
                    let found = index.factor(c, &gens[j], &gens[i]);
                    let [(beta2, alpha2)] = found[..] else {
                        return Err(failure());
                    };
                    s.add_square(x, y, edge_of[&(beta2, j)], edge_of[&(alpha2, i)]);
                }
            }
        }
    }
    let graph = s.validate()?;
    Ok(Pullback { graph, arrow_of_edge, edge_of })
}
