//! Finite k-graphs presented by a colored skeleton and commuting squares.
//!
//! A path is stored in color-block normal form: all color-0 edges first, then
//! color-1 edges, and so on, read left to right with `s(left) = r(right)`.

mod fixture;
mod skeleton;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::Degree;

pub use fixture::{single_vertex_fixture, FixtureError};
pub use skeleton::{validate_kgraph, Edge, EdgeId, KGraphError, Skeleton, Square, VertexId};

use skeleton::SquareTables;

/// A validated k-graph.
#[derive(Clone, Debug)]
pub struct KGraph {
    skeleton: Skeleton,
    tables: SquareTables,
    /// `in_edges[v][c]`: color-`c` edges with range `v`, by id.
    in_edges: Vec<Vec<Vec<EdgeId>>>,
    /// Edges with range `v`, all colors, by id.
    in_all: Vec<Vec<EdgeId>>,
}

/// A morphism in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub degree: Degree,
    pub range: VertexId,
    pub source: VertexId,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("edges are not composable at position {0}")]
    NotComposable(usize),
    #[error("segment bounds are out of range")]
    OutOfRange,
}

impl Path {
    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl KGraph {
    pub(crate) fn from_parts(skeleton: Skeleton, tables: SquareTables, in_edges: Vec<Vec<Vec<EdgeId>>>) -> Self {
        let in_all = in_edges.iter().map(|per| {
            let mut all: Vec<EdgeId> = per.concat();
            all.sort_unstable();
            all
        });
        let in_all = in_all.collect();
        KGraph { skeleton, tables, in_edges, in_all }
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn rank(&self) -> usize {
        self.skeleton.rank()
    }

    pub fn vertex_count(&self) -> usize {
        self.skeleton.vertices().len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.skeleton.vertices()[v]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.skeleton.edges()[e]
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edges().len()
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.skeleton.edges()[e].color
    }

    /// Color-`c` edges with range `v`.
    pub fn in_edges(&self, v: VertexId, c: usize) -> &[EdgeId] {
        &self.in_edges[v][c]
    }

    /// All edges with range `v`.
    pub fn in_edges_all(&self, v: VertexId) -> &[EdgeId] {
        &self.in_all[v]
    }

    /// `(y′, x′)` with `x·y = y′·x′`, for edges of different colors.
    pub fn swap(&self, x: EdgeId, y: EdgeId) -> (EdgeId, EdgeId) {
        self.tables.swap(self.skeleton.edges(), x, y)
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path { degree: Degree::zero(self.rank()), range: v, source: v, edges: Vec::new() }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path { degree: Degree::unit(self.rank(), edge.color), range: edge.range, source: edge.source, edges: vec![e] }
    }

    /// Normal form of the composable word `raw` starting at `range`.
    pub fn normalize(&self, range: VertexId, raw: &[EdgeId]) -> Result<Path, PathError> {
        let mut at = range;
        let mut degree = Degree::zero(self.rank());
        for (i, &e) in raw.iter().enumerate() {
            let edge = self.edge(e);
            if edge.range != at {
                return Err(PathError::NotComposable(i));
            }
            at = edge.source;
            degree.0[edge.color] += 1;
        }
        let mut edges = raw.to_vec();
        self.sort_colors(&mut edges);
        Ok(Path { degree, range, source: at, edges })
    }

    /// Bubble sort by color, applying a square at every exchange.
    fn sort_colors(&self, edges: &mut [EdgeId]) {
        let mut n = edges.len();
        while n > 1 {
            let mut last = 0;
            for i in 1..n {
                if self.color(edges[i - 1]) > self.color(edges[i]) {
                    let (y, x) = self.swap(edges[i - 1], edges[i]);
                    edges[i - 1] = y;
                    edges[i] = x;
                    last = i;
                }
            }
            n = last;
        }
    }

    pub fn compose(&self, lambda: &Path, mu: &Path) -> Result<Path, PathError> {
        if lambda.source != mu.range {
            return Err(PathError::NotComposable(lambda.len()));
        }
        let mut edges = Vec::with_capacity(lambda.len() + mu.len());
        edges.extend_from_slice(&lambda.edges);
        edges.extend_from_slice(&mu.edges);
        self.sort_colors(&mut edges);
        Ok(Path { degree: &lambda.degree + &mu.degree, range: lambda.range, source: mu.source, edges })
    }

    /// Rewrites a composable word into the factorization whose colors read `word`.
    /// The word must be a permutation of the colors of `edges`.
    pub fn reorder(&self, edges: &[EdgeId], word: &[usize]) -> Vec<EdgeId> {
        debug_assert_eq!(edges.len(), word.len());
        let mut out = edges.to_vec();
        for (t, &c) in word.iter().enumerate() {
            let mut i = (t..out.len())
                .find(|&i| self.color(out[i]) == c)
                .expect("word is not a permutation of the path colors");
            while i > t {
                let (y, x) = self.swap(out[i - 1], out[i]);
                out[i - 1] = y;
                out[i] = x;
                i -= 1;
            }
        }
        out
    }

    /// The unique `(η, ζ)` with `λ = ηζ` and `d(η) = p`.
    pub fn factor(&self, lambda: &Path, p: &Degree) -> Result<(Path, Path), PathError> {
        let rest = lambda.degree.checked_sub(p).ok_or(PathError::OutOfRange)?;
        let mut word = p.color_word();
        let split = word.len();
        word.extend(rest.color_word());
        let edges = self.reorder(&lambda.edges, &word);
        let mid = if split == 0 { lambda.range } else { self.edge(edges[split - 1]).source };
        let head = Path { degree: p.clone(), range: lambda.range, source: mid, edges: edges[..split].to_vec() };
        let tail = Path { degree: rest, range: mid, source: lambda.source, edges: edges[split..].to_vec() };
        Ok((head, tail))
    }

    /// `λ(p, q)`: the middle factor of `λ = λ(0,p)·λ(p,q)·λ(q,d(λ))`.
    pub fn segment(&self, lambda: &Path, p: &Degree, q: &Degree) -> Result<Path, PathError> {
        if !p.le(q) {
            return Err(PathError::OutOfRange);
        }
        let (upto_q, _) = self.factor(lambda, q)?;
        let (_, middle) = self.factor(&upto_q, p)?;
        Ok(middle)
    }

    /// All paths of degree `n`, optionally only those with range `at`, ordered
    /// by range and then lexicographically by edge ids.
    pub fn paths_of_degree(&self, n: &Degree, at: Option<VertexId>) -> Vec<Path> {
        let word = n.color_word();
        let ranges: Vec<VertexId> = match at {
            Some(v) => vec![v],
            None => (0..self.vertex_count()).collect(),
        };
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(word.len());
        for v in ranges {
            self.extend_paths(&word, v, v, &mut stack, n, &mut out);
        }
        out
    }

    fn extend_paths(
        &self,
        word: &[usize],
        range: VertexId,
        at: VertexId,
        stack: &mut Vec<EdgeId>,
        n: &Degree,
        out: &mut Vec<Path>,
    ) {
        if stack.len() == word.len() {
            out.push(Path { degree: n.clone(), range, source: at, edges: stack.clone() });
            return;
        }
        for &e in self.in_edges(at, word[stack.len()]) {
            stack.push(e);
            self.extend_paths(word, range, self.edge(e).source, stack, n, out);
            stack.pop();
        }
    }

    /// Number of paths of degree `n` with range `v`, by dynamic programming.
    pub fn count_paths(&self, v: VertexId, n: &Degree) -> u128 {
        let mut counts = vec![0u128; self.vertex_count()];
        counts[v] = 1;
        for c in n.color_word() {
            let mut next = vec![0u128; self.vertex_count()];
            for (w, &cnt) in counts.iter().enumerate() {
                if cnt > 0 {
                    for &e in self.in_edges(w, c) {
                        next[self.edge(e).source] += cnt;
                    }
                }
            }
            counts = next;
        }
        counts.iter().sum()
    }

    /// Renders a path by edge names joined with `.`, or the vertex name.
    pub fn path_name(&self, path: &Path) -> String {
        if path.is_vertex() {
            return self.vertex_name(path.range).to_string();
        }
        let names: Vec<&str> = path.edges.iter().map(|&e| self.edge(e).name.as_str()).collect();
        names.join(".")
    }
}

#[cfg(test)]
mod tests;
