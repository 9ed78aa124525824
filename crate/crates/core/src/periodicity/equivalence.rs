use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::kgraph::{EdgeId, KGraph, Path, VertexId};
use crate::lattice::Degree;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PrefixError {
    #[error("the common-degree prefixes differ, so the paths are not equivalent")]
    PrefixMismatch,
}

/// Splits `μ = wμ′`, `ν = wν′` with `d(w) = d(μ) ∧ d(ν)`.
pub fn strip_common_prefix(g: &KGraph, mu: &Path, nu: &Path) -> Result<(Path, Path, Path), PrefixError> {
    let p = mu.degree.meet(&nu.degree);
    let (w, mu_rest) = g.factor(mu, &p).expect("meet is below both degrees");
    let (w2, nu_rest) = g.factor(nu, &p).expect("meet is below both degrees");
    if w != w2 {
        return Err(PrefixError::PrefixMismatch);
    }
    Ok((w, mu_rest, nu_rest))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    /// `μλ` and `νλ` already differ in their first `d(λ)` steps.
    Distinguished {
        extension: Path,
    },
    DifferentSources,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub mu: Path,
    pub nu: Path,
    pub verdict: Verdict,
}

impl EquivalenceWitness {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

/// All paths of one degree with their one-edge transitions.
#[derive(Debug)]
struct Layer {
    paths: Vec<Path>,
    index: HashMap<(VertexId, Vec<EdgeId>), u32>,
    /// `push[α][t]` for the `t`-th edge `e` into `s(α)`: the first edge of
    /// `αe` in the color of `e`, and the index of what remains.
    push: Vec<Vec<(EdgeId, u32)>>,
}

impl Layer {
    fn build(g: &KGraph, degree: &Degree) -> Layer {
        let paths = g.paths_of_degree(degree, None);
        let index: HashMap<_, _> =
            paths.iter().enumerate().map(|(i, p)| ((p.range, p.edges.clone()), i as u32)).collect();
        let base = degree.color_word();
        let push = paths
            .iter()
            .map(|alpha| {
                g.in_edges_all(alpha.source)
                    .iter()
                    .map(|&e| {
                        let mut raw = alpha.edges.clone();
                        raw.push(e);
                        let mut word = Vec::with_capacity(raw.len());
                        word.push(g.color(e));
                        word.extend_from_slice(&base);
                        let sorted = g.reorder(&raw, &word);
                        let first = sorted[0];
                        let rest_range = g.edge(first).source;
                        (first, index[&(rest_range, sorted[1..].to_vec())])
                    })
                    .collect()
            })
            .collect();
        Layer { paths, index, push }
    }

    fn id(&self, p: &Path) -> u32 {
        self.index[&(p.range, p.edges.clone())]
    }
}

/// Decides `~` with cached per-degree tables, shared across many queries on
/// one graph.
///
/// For residuals `α, β` (after removing the common prefix) and an infinite
/// path `x`, `αx = βx` holds exactly when, feeding the edges of `x` one at a
/// time, `α·e` and `β·e` always start with the same edge of the color of `e`
/// and the remainders again agree. The pairs that never fail form the
/// greatest fixpoint computed by [`Equivalence::relation`].
#[derive(Debug)]
pub struct Equivalence<'g> {
    g: &'g KGraph,
    layers: HashMap<Degree, Layer>,
    relations: HashMap<(Degree, Degree), Vec<bool>>,
    sigma: HashMap<(VertexId, Degree, Degree), bool>,
}

impl<'g> Equivalence<'g> {
    pub fn new(g: &'g KGraph) -> Self {
        Equivalence { g, layers: HashMap::new(), relations: HashMap::new(), sigma: HashMap::new() }
    }

    pub fn graph(&self) -> &'g KGraph {
        self.g
    }

    fn layer(&mut self, d: &Degree) {
        if !self.layers.contains_key(d) {
            let layer = Layer::build(self.g, d);
            self.layers.insert(d.clone(), layer);
        }
    }

    /// Greatest fixpoint of pairs `(α, β) ∈ Λ^a × Λ^b` with equal sources that
    /// agree after every extension, flattened as `α·|Λ^b| + β`.
    fn relation(&mut self, a: &Degree, b: &Degree) {
        let key = (a.clone(), b.clone());
        if self.relations.contains_key(&key) {
            return;
        }
        self.layer(a);
        self.layer(b);
        let (la, lb) = (&self.layers[a], &self.layers[b]);
        let nb = lb.paths.len();
        let mut good: Vec<bool> =
            la.paths.iter().flat_map(|x| lb.paths.iter().map(move |y| x.source == y.source)).collect();
        loop {
            let mut changed = false;
            for i in 0..la.paths.len() {
                for j in 0..nb {
                    if !good[i * nb + j] {
                        continue;
                    }
                    let ok = la.push[i]
                        .iter()
                        .zip(&lb.push[j])
                        .all(|(&(f, i2), &(h, j2))| f == h && good[i2 as usize * nb + j2 as usize]);
                    if !ok {
                        good[i * nb + j] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        self.relations.insert(key, good);
    }

    /// `α ~ β` for residuals with `d(α) ∧ d(β) = 0` and equal ranges and sources.
    fn residuals_agree(&mut self, alpha: &Path, beta: &Path) -> bool {
        if alpha.range != beta.range || alpha.source != beta.source {
            return false;
        }
        self.relation(&alpha.degree, &beta.degree);
        let (la, lb) = (&self.layers[&alpha.degree], &self.layers[&beta.degree]);
        let rel = &self.relations[&(alpha.degree.clone(), beta.degree.clone())];
        rel[la.id(alpha) as usize * lb.paths.len() + lb.id(beta) as usize]
    }

    pub fn is_equivalent(&mut self, mu: &Path, nu: &Path) -> bool {
        if mu.source != nu.source || mu.range != nu.range {
            return false;
        }
        if mu.degree.meet(&nu.degree).is_zero() {
            return self.residuals_agree(mu, nu);
        }
        match strip_common_prefix(self.g, mu, nu) {
            Ok((_, a, b)) => self.residuals_agree(&a, &b),
            Err(_) => false,
        }
    }

    /// The unique `η ∈ r(ξ)Λ^p` with `ξ ~ η`, if any.
    ///
    /// Equivalent paths share their prefix of degree `d(ξ) ∧ p`, so only the
    /// residuals after that prefix are searched.
    pub fn equivalent_of_degree(&mut self, xi: &Path, p: &Degree) -> Option<Path> {
        let meet = xi.degree.meet(p);
        let (w, rest) = self.g.factor(xi, &meet).expect("meet is below d(ξ)");
        let tail = p.checked_sub(&meet).expect("meet is below p");
        let candidates = self.g.paths_of_degree(&tail, Some(w.source));
        let eta = candidates.into_iter().find(|c| self.residuals_agree(&rest, c))?;
        Some(self.g.compose(&w, &eta).expect("composable"))
    }

    /// Decides `μ ~ ν`, producing a distinguishing extension when they differ.
    pub fn equivalent(&mut self, mu: &Path, nu: &Path) -> EquivalenceWitness {
        let verdict = self.verdict(mu, nu);
        EquivalenceWitness { mu: mu.clone(), nu: nu.clone(), verdict }
    }

    fn verdict(&mut self, mu: &Path, nu: &Path) -> Verdict {
        if mu.source != nu.source {
            return Verdict::DifferentSources;
        }
        let here = self.g.vertex_path(mu.source);
        if mu.range != nu.range {
            return Verdict::Distinguished { extension: here };
        }
        let Ok((_, alpha, beta)) = strip_common_prefix(self.g, mu, nu) else {
            return Verdict::Distinguished { extension: here };
        };
        if self.residuals_agree(&alpha, &beta) {
            return Verdict::Equivalent;
        }
        let extension = self.distinguishing_word(&alpha, &beta);
        let path = self.g.normalize(mu.source, &extension).expect("walk is composable");
        Verdict::Distinguished { extension: path }
    }

    /// Shortest edge word after which the two residuals emit different edges.
    fn distinguishing_word(&mut self, alpha: &Path, beta: &Path) -> Vec<EdgeId> {
        self.layer(&alpha.degree);
        self.layer(&beta.degree);
        let (la, lb) = (&self.layers[&alpha.degree], &self.layers[&beta.degree]);
        let start = (la.id(alpha), lb.id(beta));
        let mut parent: HashMap<(u32, u32), ((u32, u32), EdgeId)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = HashSet::from([start]);
        while let Some((i, j)) = queue.pop_front() {
            let source = la.paths[i as usize].source;
            for (t, &e) in self.g.in_edges_all(source).iter().enumerate() {
                let (f, i2) = la.push[i as usize][t];
                let (h, j2) = lb.push[j as usize][t];
                if f != h {
                    let mut word = vec![e];
                    let mut at = (i, j);
                    while at != start {
                        let (prev, edge) = parent[&at];
                        word.push(edge);
                        at = prev;
                    }
                    word.reverse();
                    return word;
                }
                let next = (i2, j2);
                if seen.insert(next) {
                    parent.insert(next, ((i, j), e));
                    queue.push_back(next);
                }
            }
        }
        unreachable!("residuals are related but the fixpoint rejected them")
    }

    /// `(m, n) ∈ Σ_v`: `σ^m x = σ^n x` for every infinite path `x` at `v`.
    ///
    /// With `p = m ∧ n`, `x = ρy` for `ρ = x(0, p)`, so the question reduces
    /// to `(m − p, n − p)` at each `s(ρ)`. When `m ∧ n = 0`, write `x = λy`
    /// with `λ = x(0, m + n)`; then `σ^m x = λ(m, m+n)·y` and
    /// `σ^n x = λ(n, m+n)·y`, so `(m, n) ∈ Σ_v` exactly when
    /// `λ(m, m+n) ~ λ(n, m+n)` for every `λ ∈ vΛ^{m+n}`.
    pub fn sigma_contains(&mut self, v: VertexId, m: &Degree, n: &Degree) -> bool {
        let p = m.meet(n);
        let (m0, n0) = (m.checked_sub(&p).unwrap(), n.checked_sub(&p).unwrap());
        let mut starts: Vec<VertexId> = self.g.paths_of_degree(&p, Some(v)).iter().map(|r| r.source).collect();
        starts.sort_unstable();
        starts.dedup();
        starts.into_iter().all(|w| self.sigma_coprime(w, &m0, &n0))
    }

    fn sigma_coprime(&mut self, v: VertexId, m: &Degree, n: &Degree) -> bool {
        if m == n {
            return true;
        }
        let key = (v, m.clone(), n.clone());
        if let Some(&known) = self.sigma.get(&key) {
            return known;
        }
        let total = m + n;
        let g = self.g;
        let result = g.paths_of_degree(&total, Some(v)).iter().all(|lambda| {
            let (_, after_m) = g.factor(lambda, m).unwrap();
            let (_, after_n) = g.factor(lambda, n).unwrap();
            self.residuals_agree(&after_m, &after_n)
        });
        self.sigma.insert(key, result);
        result
    }
}

/// One-off form of [`Equivalence::equivalent`].
pub fn equivalent(g: &KGraph, mu: &Path, nu: &Path) -> EquivalenceWitness {
    Equivalence::new(g).equivalent(mu, nu)
}

/// One-off form of [`Equivalence::sigma_contains`].
pub fn sigma_contains(g: &KGraph, v: VertexId, m: &Degree, n: &Degree) -> bool {
    Equivalence::new(g).sigma_contains(v, m, n)
}
