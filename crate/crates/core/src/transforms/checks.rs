use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::kgraph::{KGraph, Path};
use crate::lattice::{Degree, QuotientMonoid, Subgroup};
use crate::periodicity::{periodicity_group, Equivalence};

use super::pullback::{pullback, Pullback, PullbackError};
use super::pushout::Pushout;
use super::qgraph::{Arrow, QGraph};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error(transparent)]
    Pullback(#[from] PullbackError),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("edge {0} changes endpoints")]
    EndpointMismatch(String),
    #[error("square on {a}·{b} is not preserved")]
    SquareMismatch { a: String, b: String },
}

/// The canonical map `Λ → q*(q_*Λ)` checked edge by edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    /// Per color, `(edge, image)` names.
    pub per_color: Vec<Vec<(String, String)>>,
    pub squares_checked: usize,
}

/// Checks that `x ↦ ([x], color(x))` is an isomorphism from `g` onto the
/// pullback of `gamma`, where `gamma` was built from `g`.
pub fn canonical_iso_check(g: &KGraph, gamma: &QGraph) -> Result<IsoCertificate, IsoError> {
    let pb = pullback(gamma)?;
    let p = &pb.graph;
    if g.vertex_count() != p.vertex_count() || (0..g.vertex_count()).any(|v| g.vertex_name(v) != p.vertex_name(v)) {
        return Err(IsoError::NotBijective("vertex sets differ".into()));
    }
    let mut class: HashMap<&Path, Arrow> = HashMap::new();
    for v in 0..gamma.vertices().len() {
        for r in gamma.representatives(Arrow::Vertex(v)) {
            class.insert(r, Arrow::Vertex(v));
        }
    }
    for m in 0..gamma.morphisms().len() {
        for r in gamma.representatives(Arrow::Morphism(m)) {
            class.insert(r, Arrow::Morphism(m));
        }
    }
    let mut image = Vec::with_capacity(g.edge_count());
    for x in 0..g.edge_count() {
        let name = &g.edge(x).name;
        let arrow =
            class.get(&g.edge_path(x)).ok_or_else(|| IsoError::NotBijective(format!("edge {name} has no class")))?;
        let y = pb
            .edge_of(*arrow, g.color(x))
            .ok_or_else(|| IsoError::NotBijective(format!("edge {name} has no image")))?;
        let (ex, ey) = (g.edge(x), p.edge(y));
        if ex.range != ey.range || ex.source != ey.source || ex.color != ey.color {
            return Err(IsoError::EndpointMismatch(name.clone()));
        }
        image.push(y);
    }
    let mut per_color = vec![Vec::new(); g.rank()];
    let mut hit = HashSet::new();
    for (x, &y) in image.iter().enumerate() {
        if !hit.insert(y) {
            return Err(IsoError::NotBijective(format!("two edges map to {}", p.edge(y).name)));
        }
        per_color[g.color(x)].push((g.edge(x).name.clone(), p.edge(y).name.clone()));
    }
    if hit.len() != p.edge_count() {
        return Err(IsoError::NotBijective("some pulled-back edges are not hit".into()));
    }
    let mut squares_checked = 0;
    for x in 0..g.edge_count() {
        for &y in g.in_edges_all(g.edge(x).source) {
            if g.color(y) <= g.color(x) {
                continue;
            }
            let (y2, x2) = g.swap(x, y);
            if p.swap(image[x], image[y]) != (image[y2], image[x2]) {
                return Err(IsoError::SquareMismatch { a: g.edge(x).name.clone(), b: g.edge(y).name.clone() });
            }
            squares_checked += 1;
        }
    }
    Ok(IsoCertificate { per_color, squares_checked })
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PeriodicCheckError {
    #[error("the subgroup is trivial")]
    TrivialSubgroup,
    #[error(transparent)]
    Pullback(#[from] PullbackError),
}

#[derive(Clone, Debug)]
pub struct PullbackPeriodicity {
    pub per: Subgroup,
    /// `H ⊆ Per(q*Γ)`.
    pub contains: bool,
    /// `H ⊊ Per(q*Γ)`.
    pub strict: bool,
}

/// Computes the periodicity group of `q*Γ` and compares it with `H`.
pub fn verify_pullback_periodic(gamma: &QGraph, bound: &Degree) -> Result<PullbackPeriodicity, PeriodicCheckError> {
    let h = gamma.quotient().subgroup();
    if h.is_trivial() {
        return Err(PeriodicCheckError::TrivialSubgroup);
    }
    let pb = pullback(gamma)?;
    let per = periodicity_group(&pb.graph, bound).group;
    let contains = per.includes(h);
    let strict = contains && !h.includes(&per);
    Ok(PullbackPeriodicity { per, contains, strict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperiodicityCheck {
    /// Representatives of distinct classes are never equivalent.
    pub classes_distinct: bool,
    /// `Per(q*(q_*Λ)) = Per Λ`.
    pub pullback_group_matches: bool,
}

impl AperiodicityCheck {
    pub fn holds(&self) -> bool {
        self.classes_distinct && self.pullback_group_matches
    }
}

/// The quotient has no further periodicity: no two of its morphisms come from
/// equivalent paths, and pulling back recovers exactly the group divided out.
pub fn verify_pushout_aperiodic(po: &Pushout) -> Result<AperiodicityCheck, PullbackError> {
    let gamma = &po.qgraph;
    let mut eq = Equivalence::new(&po.graph);
    let arrows: Vec<Arrow> = (0..gamma.vertices().len())
        .map(Arrow::Vertex)
        .chain((0..gamma.morphisms().len()).map(Arrow::Morphism))
        .collect();
    let mut classes_distinct = true;
    'outer: for (i, &a) in arrows.iter().enumerate() {
        for &b in &arrows[i + 1..] {
            for x in gamma.representatives(a) {
                for y in gamma.representatives(b) {
                    if x.source == y.source && x.range == y.range && eq.is_equivalent(x, y) {
                        classes_distinct = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let pb = pullback(gamma)?;
    let per = periodicity_group(&pb.graph, &po.report.search_bound).group;
    Ok(AperiodicityCheck { classes_distinct, pullback_group_matches: per.same_as(gamma.quotient().subgroup()) })
}

/// A path `ρ` of degree `n ∨ n′` whose segments `ρ(0, n)`, `ρ(0, n′)` are
/// not equivalent although `q(n) = q(n′)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMapFailure {
    pub path: Path,
    pub n: Degree,
    pub n_prime: Degree,
}

/// For `n ≠ n′ ≤ depth` with `q(n) = q(n′)` and every `ρ ∈ Λ^{n∨n′}`,
/// checks `ρ(0, n) ~ ρ(0, n′)`. Returns the number of paths checked.
pub fn induced_path_map_check(
    g: &KGraph,
    quotient: &QuotientMonoid,
    depth: &Degree,
) -> Result<usize, InducedMapFailure> {
    let mut eq = Equivalence::new(g);
    let degrees = depth.box_below();
    let q: Vec<_> = degrees.iter().map(|n| quotient.q(&n.to_gdegree())).collect();
    let mut checked = 0;
    for (i, n) in degrees.iter().enumerate() {
        for (j, n2) in degrees.iter().enumerate().skip(i + 1) {
            if q[i] != q[j] {
                continue;
            }
            for rho in g.paths_of_degree(&n.join(n2), None) {
                let (a, _) = g.factor(&rho, n).expect("n is below the join");
                let (b, _) = g.factor(&rho, n2).expect("n′ is below the join");
                if !eq.is_equivalent(&a, &b) {
                    return Err(InducedMapFailure { path: rho, n: n.clone(), n_prime: n2.clone() });
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Checks the exchange identity `αβγ = α′βγ″` in `q*Γ` for degrees of total at
/// most 2: `α ∈ Λ^m`, `β ∈ Λ^p`, `γ ∈ Λ^n` with `q(m) = q(n)`, `α′ ∈ Λ^n`
/// and `γ″ ∈ Λ^m` having the same images in `Γ` as `α` and `γ`.
/// Returns the number of triples checked.
pub fn exchange_identity_check(pb: &Pullback, gamma: &QGraph) -> Result<usize, String> {
    let g = &pb.graph;
    let k = g.rank();
    let qm = gamma.quotient();
    let mut small = vec![Degree::zero(k)];
    small.extend((0..k).map(|i| Degree::unit(k, i)));
    for i in 0..k {
        for j in i..k {
            let mut d = Degree::unit(k, i);
            d.0[j] += 1;
            small.push(d);
        }
    }
    let q = |d: &Degree| qm.q(&d.to_gdegree());
    let project = |p: &Path| pb.project(gamma, p).ok_or_else(|| format!("{} does not project", g.path_name(p)));
    let partner = |p: &Path, target: &Degree| -> Result<Path, String> {
        let image = project(p)?;
        let found: Vec<Path> =
            g.paths_of_degree(target, Some(p.range)).into_iter().filter(|c| project(c).ok() == Some(image)).collect();
        match found.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(format!("{} has {} partners of degree {:?}", g.path_name(p), found.len(), target.0)),
        }
    };
    let mut checked = 0;
    for m in &small {
        for n in small.iter().filter(|n| *n != m && q(n) == q(m)) {
            for p in small.iter().filter(|p| p.total() <= 1) {
                for alpha in g.paths_of_degree(m, None) {
                    let alpha2 = partner(&alpha, n)?;
                    for beta in g.paths_of_degree(p, Some(alpha.source)) {
                        for gamma_path in g.paths_of_degree(n, Some(beta.source)) {
                            let gamma2 = partner(&gamma_path, m)?;
                            let lhs = compose3(g, &alpha, &beta, &gamma_path);
                            let rhs = compose3(g, &alpha2, &beta, &gamma2);
                            if lhs != rhs {
                                return Err(format!("{} differs from {}", g.path_name(&lhs), g.path_name(&rhs)));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn compose3(g: &KGraph, a: &Path, b: &Path, c: &Path) -> Path {
    let ab = g.compose(a, b).expect("composable");
    g.compose(&ab, c).expect("composable")
}
