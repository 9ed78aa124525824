use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::kgraph::{Path, VertexId};
use crate::lattice::{quotient_structure, GDegree, QElem, QuotientMonoid, Subgroup};

/// A morphism of a [`QGraph`]: either a vertex (degree 0) or a listed morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Vertex(VertexId),
    Morphism(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub degree: QElem,
    pub range: VertexId,
    pub source: VertexId,
    /// Member paths of the originating k-graph, for quotients built here.
    pub representatives: Vec<Path>,
}

/// A finite graph over the quotient monoid `q(N^k) ⊆ Z^k/H`, presented by its
/// vertices, the morphisms of generator degree `q(eᵢ)` and of degree
/// `q(eᵢ) + q(eⱼ)`, and the composition of generator-degree pairs.
#[derive(Clone, Debug)]
pub struct QGraph {
    quotient: QuotientMonoid,
    vertices: Vec<String>,
    /// Member paths of each vertex class, for quotients built here.
    vertex_representatives: Vec<Vec<Path>>,
    morphisms: Vec<Morphism>,
    compose: BTreeMap<(usize, usize), Arrow>,
    /// Vertices of the originating k-graph left out of the quotient.
    pub restricted: Vec<String>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QGraphError {
    #[error("degree {degree} of {name} is not a reduced element of the quotient")]
    BadDegree { name: String, degree: QElem },
    #[error("morphism {0} has degree 0 but is not a vertex")]
    ZeroDegreeMorphism(String),
    #[error("composition {a}·{b} = {c} does not match endpoints")]
    EndpointMismatch { a: String, b: String, c: String },
    #[error("composition {a}·{b} = {c} does not add degrees")]
    DegreeMismatch { a: String, b: String, c: String },
    #[error("composition {a}·{b} has degree 0 but {c} is not the vertex {a} starts from")]
    TorsionCollapseViolation { a: String, b: String, c: String },
    #[error("composition {a}·{b} is given twice")]
    DuplicateComposition { a: String, b: String },
    #[error("composition {a}·{b} is missing")]
    MissingComposition { a: String, b: String },
    #[error("factorizations along generators {} then {} are not unique: {detail}", .first + 1, .second + 1)]
    NonBijective { first: usize, second: usize, detail: String },
    #[error("vertex {vertex} receives nothing of generator degree {}", .color + 1)]
    SourceViolation { vertex: String, color: usize },
    #[error("factorizations are not associative on {a}·{b}·{c}")]
    AssociativityViolation { a: String, b: String, c: String },
}

impl QGraph {
    pub fn new(quotient: QuotientMonoid) -> Self {
        QGraph {
            quotient,
            vertices: Vec::new(),
            vertex_representatives: Vec::new(),
            morphisms: Vec::new(),
            compose: BTreeMap::new(),
            restricted: Vec::new(),
        }
    }

    /// The quotient of `Z^k` by the subgroup generated by `generators`.
    pub fn over(rank: usize, generators: &[GDegree]) -> Self {
        Self::new(quotient_structure(&Subgroup::new(rank, generators)))
    }

    pub fn quotient(&self) -> &QuotientMonoid {
        &self.quotient
    }

    pub fn rank(&self) -> usize {
        self.quotient.ambient_rank()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        self.vertex_representatives.push(Vec::new());
        self.vertices.len() - 1
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, degree: QElem, range: VertexId, source: VertexId) -> usize {
        self.morphisms.push(Morphism { name: name.into(), degree, range, source, representatives: Vec::new() });
        self.morphisms.len() - 1
    }

    pub(crate) fn set_representatives(&mut self, arrow: Arrow, paths: Vec<Path>) {
        match arrow {
            Arrow::Vertex(v) => self.vertex_representatives[v] = paths,
            Arrow::Morphism(m) => self.morphisms[m].representatives = paths,
        }
    }

    /// Records `a·b = c`.
    pub fn set_composition(&mut self, a: usize, b: usize, c: Arrow) -> Result<(), QGraphError> {
        match self.compose.insert((a, b), c) {
            Some(old) if old != c => Err(QGraphError::DuplicateComposition {
                a: self.morphisms[a].name.clone(),
                b: self.morphisms[b].name.clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn compositions(&self) -> impl Iterator<Item = (usize, usize, Arrow)> + '_ {
        self.compose.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn representatives(&self, arrow: Arrow) -> &[Path] {
        match arrow {
            Arrow::Vertex(v) => &self.vertex_representatives[v],
            Arrow::Morphism(m) => &self.morphisms[m].representatives,
        }
    }

    /// `q(e₁), …, q(e_k)`.
    pub fn generator_degrees(&self) -> Vec<QElem> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                self.quotient.q(&GDegree(e))
            })
            .collect()
    }

    pub fn degree(&self, a: Arrow) -> QElem {
        match a {
            Arrow::Vertex(_) => self.quotient.zero(),
            Arrow::Morphism(m) => self.morphisms[m].degree.clone(),
        }
    }

    pub fn range(&self, a: Arrow) -> VertexId {
        match a {
            Arrow::Vertex(v) => v,
            Arrow::Morphism(m) => self.morphisms[m].range,
        }
    }

    pub fn source(&self, a: Arrow) -> VertexId {
        match a {
            Arrow::Vertex(v) => v,
            Arrow::Morphism(m) => self.morphisms[m].source,
        }
    }

    pub fn name(&self, a: Arrow) -> &str {
        match a {
            Arrow::Vertex(v) => &self.vertices[v],
            Arrow::Morphism(m) => &self.morphisms[m].name,
        }
    }

    /// Vertices when `d` is zero, otherwise the morphisms of degree `d`.
    pub fn arrows_of_degree(&self, d: &QElem) -> Vec<Arrow> {
        if d.is_zero() {
            return (0..self.vertices.len()).map(Arrow::Vertex).collect();
        }
        (0..self.morphisms.len()).filter(|&m| &self.morphisms[m].degree == d).map(Arrow::Morphism).collect()
    }

    /// `a·b`, with vertices acting as identities.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        if self.source(a) != self.range(b) {
            return None;
        }
        match (a, b) {
            (Arrow::Vertex(_), _) => Some(b),
            (_, Arrow::Vertex(_)) => Some(a),
            (Arrow::Morphism(x), Arrow::Morphism(y)) => self.compose.get(&(x, y)).copied(),
        }
    }

    /// All `(x, y)` with `x·y = c`, `d(x) = dx`, `d(y) = dy`.
    pub fn factorizations(&self, c: Arrow, dx: &QElem, dy: &QElem) -> Vec<(Arrow, Arrow)> {
        if dx.is_zero() {
            return vec![(Arrow::Vertex(self.range(c)), c)];
        }
        if dy.is_zero() {
            return vec![(c, Arrow::Vertex(self.source(c)))];
        }
        self.compose
            .iter()
            .filter(|(&(x, y), &z)| z == c && &self.morphisms[x].degree == dx && &self.morphisms[y].degree == dy)
            .map(|(&(x, y), _)| (Arrow::Morphism(x), Arrow::Morphism(y)))
            .collect()
    }
}

/// Index of `(c, d(x), d(y)) ↦ [(x, y)]` over the composition table.
pub(crate) struct FactorIndex<'a> {
    gamma: &'a QGraph,
    index: HashMap<(Arrow, QElem, QElem), Vec<(Arrow, Arrow)>>,
}

impl<'a> FactorIndex<'a> {
    pub(crate) fn new(gamma: &'a QGraph) -> Self {
        let mut index: HashMap<_, Vec<_>> = HashMap::new();
        for (&(x, y), &c) in &gamma.compose {
            let key = (c, gamma.morphisms[x].degree.clone(), gamma.morphisms[y].degree.clone());
            index.entry(key).or_default().push((Arrow::Morphism(x), Arrow::Morphism(y)));
        }
        FactorIndex { gamma, index }
    }

    pub(crate) fn factor(&self, c: Arrow, dx: &QElem, dy: &QElem) -> Vec<(Arrow, Arrow)> {
        if dx.is_zero() || dy.is_zero() {
            return self.gamma.factorizations(c, dx, dy);
        }
        self.index.get(&(c, dx.clone(), dy.clone())).cloned().unwrap_or_default()
    }

    /// The unique `(y′, x′)` with `x·y = y′·x′` and matching degrees.
    pub(crate) fn swap(&self, x: Arrow, y: Arrow) -> Option<(Arrow, Arrow)> {
        let c = self.gamma.compose(x, y)?;
        let found = self.factor(c, &self.gamma.degree(y), &self.gamma.degree(x));
        (found.len() == 1).then(|| found[0])
    }
}

pub fn verify_qgraph(gamma: &QGraph) -> Result<(), QGraphError> {
    let q = &gamma.quotient;
    for m in &gamma.morphisms {
        if !q.is_element(&m.degree) {
            return Err(QGraphError::BadDegree { name: m.name.clone(), degree: m.degree.clone() });
        }
        if m.degree.is_zero() {
            return Err(QGraphError::ZeroDegreeMorphism(m.name.clone()));
        }
    }
    for (&(a, b), &c) in &gamma.compose {
        let (x, y) = (Arrow::Morphism(a), Arrow::Morphism(b));
        let names = || (gamma.name(x).to_string(), gamma.name(y).to_string(), gamma.name(c).to_string());
        if gamma.source(x) != gamma.range(y) || gamma.range(c) != gamma.range(x) || gamma.source(c) != gamma.source(y) {
            let (a, b, c) = names();
            return Err(QGraphError::EndpointMismatch { a, b, c });
        }
        let sum = q.add(&gamma.degree(x), &gamma.degree(y));
        if sum.is_zero() && !matches!(c, Arrow::Vertex(_)) {
            let (a, b, c) = names();
            return Err(QGraphError::TorsionCollapseViolation { a, b, c });
        }
        if sum != gamma.degree(c) {
            let (a, b, c) = names();
            return Err(QGraphError::DegreeMismatch { a, b, c });
        }
    }
    let gens = gamma.generator_degrees();
    for v in 0..gamma.vertices.len() {
        for (color, g) in gens.iter().enumerate() {
            if !gamma.arrows_of_degree(g).iter().any(|&a| gamma.range(a) == v) {
                return Err(QGraphError::SourceViolation { vertex: gamma.vertices[v].clone(), color });
            }
        }
    }
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            if gi.is_zero() || gj.is_zero() {
                continue;
            }
            check_pair_bijection(gamma, i, j, gi, gj)?;
        }
    }
    if gens.len() >= 3 {
        check_triples(gamma, &gens)?;
    }
    Ok(())
}

/// Composable pairs of degrees `(gᵢ, gⱼ)` correspond one-to-one with the
/// arrows of degree `gᵢ + gⱼ`.
fn check_pair_bijection(gamma: &QGraph, i: usize, j: usize, gi: &QElem, gj: &QElem) -> Result<(), QGraphError> {
    let sum = gamma.quotient.add(gi, gj);
    let mut hits: HashMap<Arrow, (Arrow, Arrow)> = HashMap::new();
    for &a in &gamma.arrows_of_degree(gi) {
        for &b in &gamma.arrows_of_degree(gj) {
            if gamma.source(a) != gamma.range(b) {
                continue;
            }
            let Some(c) = gamma.compose(a, b) else {
                return Err(QGraphError::MissingComposition {
                    a: gamma.name(a).to_string(),
                    b: gamma.name(b).to_string(),
                });
            };
            if let Some((x, y)) = hits.insert(c, (a, b)) {
                return Err(QGraphError::NonBijective {
                    first: i,
                    second: j,
                    detail: format!(
                        "{} = {}·{} = {}·{}",
                        gamma.name(c),
                        gamma.name(x),
                        gamma.name(y),
                        gamma.name(a),
                        gamma.name(b)
                    ),
                });
            }
        }
    }
    if let Some(c) = gamma.arrows_of_degree(&sum).into_iter().find(|c| !hits.contains_key(c)) {
        return Err(QGraphError::NonBijective {
            first: i,
            second: j,
            detail: format!("{} has no factorization", gamma.name(c)),
        });
    }
    Ok(())
}

/// Both ways of reordering a composable triple of degrees `(gᵢ, gⱼ, g_l)`,
/// `i < j < l`, into `(g_l, gⱼ, gᵢ)` agree.
fn check_triples(gamma: &QGraph, gens: &[QElem]) -> Result<(), QGraphError> {
    let index = FactorIndex::new(gamma);
    let k = gens.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for &a in &gamma.arrows_of_degree(&gens[i]) {
                    for &b in &gamma.arrows_of_degree(&gens[j]) {
                        if gamma.source(a) != gamma.range(b) {
                            continue;
                        }
                        for &c in &gamma.arrows_of_degree(&gens[l]) {
                            if gamma.source(b) != gamma.range(c) {
                                continue;
                            }
                            let routes = (|| {
                                let (c1, b1) = index.swap(b, c)?;
                                let (c2, a1) = index.swap(a, c1)?;
                                let (b2, a2) = index.swap(a1, b1)?;
                                let (b3, a3) = index.swap(a, b)?;
                                let (c3, a4) = index.swap(a3, c)?;
                                let (c4, b4) = index.swap(b3, c3)?;
                                Some(((c2, b2, a2), (c4, b4, a4)))
                            })();
                            if !matches!(routes, Some((x, y)) if x == y) {
                                return Err(QGraphError::AssociativityViolation {
                                    a: gamma.name(a).to_string(),
                                    b: gamma.name(b).to_string(),
                                    c: gamma.name(c).to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The `Z_2`-graph with one vertex `v` and one edge `e` with `e·e = v`, over
/// `Z/2Z`.
pub fn eg1() -> QGraph {
    let mut gamma = QGraph::over(1, &[GDegree(vec![2])]);
    let v = gamma.add_vertex("v");
    let e = gamma.add_morphism("e", QElem { torsion: vec![1], free: vec![] }, v, v);
    gamma.set_composition(e, e, Arrow::Vertex(v)).expect("first entry");
    gamma
}
