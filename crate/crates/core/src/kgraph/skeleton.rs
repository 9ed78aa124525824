use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A degree-`e_color` morphism. Colors are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

/// The factorization rule `a·b = b′·a′` where `color(a) < color(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub a: EdgeId,
    pub b: EdgeId,
    pub b_prime: EdgeId,
    pub a_prime: EdgeId,
}

/// Colored multigraph plus commuting squares, not yet checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KGraphError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("edge {edge} has color {color} outside 1..={k}")]
    ColorOutOfRange { edge: String, color: usize, k: usize },
    #[error("square {0} refers to an unknown edge")]
    UnknownEdge(usize),
    #[error("missing square for {a}·{b}")]
    MissingSquare { a: String, b: String },
    #[error("squares are not a bijection: {0}")]
    NonBijectiveSquares(String),
    #[error("square {a}·{b} = {b_prime}·{a_prime} has inconsistent colors or endpoints")]
    EndpointMismatch { a: String, b: String, b_prime: String, a_prime: String },
    #[error("vertex {vertex} receives no edge of color {}", .color + 1)]
    SourceViolation { vertex: String, color: usize },
    #[error("squares are not associative on {a}·{b}·{c}")]
    AssociativityViolation { a: String, b: String, c: String },
}

impl Skeleton {
    pub fn new(k: usize) -> Self {
        Skeleton { k, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    /// Adds an edge with a 0-based color.
    pub fn add_edge(&mut self, name: impl Into<String>, color: usize, range: VertexId, source: VertexId) -> EdgeId {
        assert!(range < self.vertices.len() && source < self.vertices.len(), "unknown vertex");
        self.edges.push(Edge { name: name.into(), color, range, source });
        self.edges.len() - 1
    }

    /// Records `a·b = b′·a′`.
    pub fn add_square(&mut self, a: EdgeId, b: EdgeId, b_prime: EdgeId, a_prime: EdgeId) {
        self.squares.push(Square { a, b, b_prime, a_prime });
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn validate(self) -> Result<super::KGraph, KGraphError> {
        validate_kgraph(self)
    }
}

/// Dense lookup tables for the squares of a checked skeleton.
#[derive(Clone, Debug)]
pub(crate) struct SquareTables {
    n: usize,
    /// `(a, b) ↦ (b′, a′)` for `color(a) < color(b)`.
    forward: Vec<Option<(EdgeId, EdgeId)>>,
    /// `(b′, a′) ↦ (a, b)`.
    backward: Vec<Option<(EdgeId, EdgeId)>>,
}

impl SquareTables {
    /// Returns `(y′, x′)` with `x·y = y′·x′`; `x` and `y` must have different colors.
    pub(crate) fn swap(&self, edges: &[Edge], x: EdgeId, y: EdgeId) -> (EdgeId, EdgeId) {
        let table = if edges[x].color < edges[y].color { &self.forward } else { &self.backward };
        table[x * self.n + y].expect("composable pair without a square")
    }
}

pub fn validate_kgraph(s: Skeleton) -> Result<super::KGraph, KGraphError> {
    if s.k == 0 {
        return Err(KGraphError::ZeroRank);
    }
    let name = |e: EdgeId| s.edges[e].name.clone();
    for e in &s.edges {
        if e.color >= s.k {
            return Err(KGraphError::ColorOutOfRange { edge: e.name.clone(), color: e.color + 1, k: s.k });
        }
    }
    let n = s.edges.len();
    let mut forward = vec![None; n * n];
    let mut backward = vec![None; n * n];
    for (i, sq) in s.squares.iter().enumerate() {
        if [sq.a, sq.b, sq.b_prime, sq.a_prime].iter().any(|&e| e >= n) {
            return Err(KGraphError::UnknownEdge(i));
        }
        let (a, b, bp, ap) = (&s.edges[sq.a], &s.edges[sq.b], &s.edges[sq.b_prime], &s.edges[sq.a_prime]);
        let consistent = a.color < b.color
            && bp.color == b.color
            && ap.color == a.color
            && a.source == b.range
            && bp.source == ap.range
            && bp.range == a.range
            && ap.source == b.source;
        if !consistent {
            return Err(KGraphError::EndpointMismatch {
                a: a.name.clone(),
                b: b.name.clone(),
                b_prime: bp.name.clone(),
                a_prime: ap.name.clone(),
            });
        }
        if forward[sq.a * n + sq.b].replace((sq.b_prime, sq.a_prime)).is_some() {
            return Err(KGraphError::NonBijectiveSquares(format!("{}·{} has two squares", a.name, b.name)));
        }
        if let Some((x, y)) = backward[sq.b_prime * n + sq.a_prime].replace((sq.a, sq.b)) {
            return Err(KGraphError::NonBijectiveSquares(format!(
                "{}·{} is hit by both {}·{} and {}·{}",
                bp.name,
                ap.name,
                name(x),
                name(y),
                a.name,
                b.name
            )));
        }
    }
    // Every composable pair in either color order must be covered; injectivity
    // already holds, so this makes both tables bijections.
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (&s.edges[x], &s.edges[y]);
            if ex.source != ey.range || ex.color == ey.color {
                continue;
            }
            let table = if ex.color < ey.color { &forward } else { &backward };
            if table[x * n + y].is_none() {
                return Err(if ex.color < ey.color {
                    KGraphError::MissingSquare { a: name(x), b: name(y) }
                } else {
                    KGraphError::NonBijectiveSquares(format!("{}·{} is not the image of any square", ex.name, ey.name))
                });
            }
        }
    }
    let mut in_edges = vec![vec![Vec::new(); s.k]; s.vertices.len()];
    for (id, e) in s.edges.iter().enumerate() {
        in_edges[e.range][e.color].push(id);
    }
    for (v, per_color) in in_edges.iter().enumerate() {
        if let Some(color) = per_color.iter().position(Vec::is_empty) {
            return Err(KGraphError::SourceViolation { vertex: s.vertices[v].clone(), color });
        }
    }
    let tables = SquareTables { n, forward, backward };
    if s.k >= 3 {
        check_associativity(&s, &tables, &in_edges)?;
    }
    Ok(super::KGraph::from_parts(s, tables, in_edges))
}

/// Both ways of sorting `a·b·c` (colors `i < j < l`) must agree.
fn check_associativity(s: &Skeleton, t: &SquareTables, in_edges: &[Vec<Vec<EdgeId>>]) -> Result<(), KGraphError> {
    let edges = &s.edges;
    let swap = |x, y| t.swap(edges, x, y);
    for a in 0..edges.len() {
        for b in 0..edges.len() {
            if edges[b].range != edges[a].source || edges[b].color <= edges[a].color {
                continue;
            }
            for later in &in_edges[edges[b].source][edges[b].color + 1..s.k] {
                for &c in later {
                    let (c1, b1) = swap(b, c);
                    let (c2, a1) = swap(a, c1);
                    let (b2, a2) = swap(a1, b1);
                    let (b3, a3) = swap(a, b);
                    let (c3, a4) = swap(a3, c);
                    let (c4, b4) = swap(b3, c3);
                    if (c2, b2, a2) != (c4, b4, a4) {
                        return Err(KGraphError::AssociativityViolation {
                            a: edges[a].name.clone(),
                            b: edges[b].name.clone(),
                            c: edges[c].name.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
