use std::collections::HashSet;

use crate::kgraph::{KGraph, Path, VertexId};
use crate::lattice::{group_generated, Degree, GDegree, Subgroup};

use super::equivalence::Equivalence;
use super::structure::has_property_w;

/// An equivalent pair `ξ ~ η` realizing `d(ξ) − d(η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceWitness {
    pub difference: GDegree,
    pub xi: Path,
    pub eta: Path,
}

#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub search_bound: Degree,
    /// Every `d(ξ) − d(η)` found, with the first witnessing pair, in scan order.
    pub witnesses: Vec<DifferenceWitness>,
    /// The group generated by the differences found.
    pub group: Subgroup,
    /// `sigma[v]`: pairs `(m, n)` with `m ∧ n = 0`, `m ≠ n`, `m + n ≤ bound`
    /// and `(m, n) ∈ Σ_v`.
    pub sigma: Vec<Vec<(Degree, Degree)>>,
    pub per_vertex_groups: Vec<Subgroup>,
    /// Vertices whose tested `Σ_v` equals the union over all vertices.
    pub sigma_uniform: Vec<VertexId>,
    /// Vertices passing the generator-level exchange test.
    pub vertices_per: Vec<VertexId>,
    /// Vertices passing the exchange test for every path and degree within the bound.
    pub vertices_per_bounded: Vec<VertexId>,
    pub aperiodic: bool,
    pub property_w: bool,
    /// The bound provably saturates the group.
    pub complete: bool,
}

impl PeriodicityReport {
    pub fn raw_differences(&self) -> impl Iterator<Item = &GDegree> {
        self.witnesses.iter().map(|w| &w.difference)
    }

    /// The first equivalent pair of distinct paths, if any.
    pub fn first_witness(&self) -> Option<&DifferenceWitness> {
        self.witnesses.first()
    }

    pub fn vertices_per_agree(&self) -> bool {
        self.vertices_per == self.vertices_per_bounded
    }
}

/// All `(m, n)` with `m ∧ n = 0`, `m ≠ n` and `m + n ≤ bound`, by total
/// degree, then by `m + n`, then with larger `m` first.
pub fn coprime_pairs(bound: &Degree) -> Vec<(Degree, Degree)> {
    let mut sums = bound.box_below();
    sums.sort_by_key(|s| (s.total(), s.clone()));
    let mut out = Vec::new();
    for s in sums {
        let support: Vec<usize> = (0..s.rank()).filter(|&i| s.0[i] > 0).collect();
        let mut splits: Vec<(Degree, Degree)> = (0..1u32 << support.len())
            .map(|mask| {
                let mut m = Degree::zero(s.rank());
                for (bit, &i) in support.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        m.0[i] = s.0[i];
                    }
                }
                let n = s.checked_sub(&m).unwrap();
                (m, n)
            })
            .filter(|(m, n)| m != n)
            .collect();
        splits.sort_by(|a, b| b.cmp(a));
        out.extend(splits);
    }
    out
}

/// `2·|Λ⁰|·maxᵢ |edges of color i|` in every coordinate, capped at `cap`.
pub fn default_bound(g: &KGraph, cap: u32) -> Degree {
    let mut per_color = vec![0usize; g.rank()];
    for e in g.skeleton().edges() {
        per_color[e.color] += 1;
    }
    let widest = per_color.into_iter().max().unwrap_or(0);
    let formula = 2 * g.vertex_count() * widest;
    Degree::uniform(g.rank(), u32::try_from(formula).unwrap_or(u32::MAX).clamp(1, cap.max(1)))
}

/// Scans every equivalent pair up to `bound` and summarizes the periodicity.
pub fn periodicity_group(g: &KGraph, bound: &Degree) -> PeriodicityReport {
    let mut eq = Equivalence::new(g);
    periodicity_group_with(&mut eq, bound)
}

pub fn periodicity_group_with(eq: &mut Equivalence<'_>, bound: &Degree) -> PeriodicityReport {
    let g = eq.graph();
    let k = g.rank();
    let pairs = coprime_pairs(bound);
    let mut witnesses: Vec<DifferenceWitness> = Vec::new();
    let mut found = HashSet::new();
    for (m, n) in &pairs {
        let difference = &m.to_gdegree() - &n.to_gdegree();
        if found.contains(&difference) {
            continue;
        }
        'vertices: for v in 0..g.vertex_count() {
            let xis = g.paths_of_degree(m, Some(v));
            let etas = g.paths_of_degree(n, Some(v));
            for xi in &xis {
                for eta in etas.iter().filter(|eta| eta.source == xi.source) {
                    if eq.is_equivalent(xi, eta) {
                        found.insert(difference.clone());
                        witnesses.push(DifferenceWitness { difference, xi: xi.clone(), eta: eta.clone() });
                        break 'vertices;
                    }
                }
            }
        }
    }
    let group = group_generated(k, witnesses.iter().map(|w| &w.difference));

    let sigma: Vec<Vec<(Degree, Degree)>> = (0..g.vertex_count())
        .map(|v| pairs.iter().filter(|(m, n)| eq.sigma_contains(v, m, n)).cloned().collect())
        .collect();
    let per_vertex_groups: Vec<Subgroup> = sigma
        .iter()
        .map(|pairs| {
            let diffs: Vec<GDegree> = pairs.iter().map(|(m, n)| &m.to_gdegree() - &n.to_gdegree()).collect();
            group_generated(k, diffs.iter())
        })
        .collect();
    let mut union: Vec<&(Degree, Degree)> = sigma.iter().flatten().collect();
    union.sort();
    union.dedup();
    let sigma_uniform = (0..g.vertex_count()).filter(|&v| sigma[v].len() == union.len()).collect();

    let property_w = has_property_w(g);
    let vertices_per = vertices_per(eq, &group);
    let vertices_per_bounded = vertices_per_bounded(eq, &group, bound);
    let complete = property_w && saturates(&group, bound);
    PeriodicityReport {
        search_bound: bound.clone(),
        witnesses,
        aperiodic: group.is_trivial(),
        group,
        sigma,
        per_vertex_groups,
        sigma_uniform,
        vertices_per,
        vertices_per_bounded,
        property_w,
        complete,
    }
}

/// With property W the differences form a group `Per Λ ⊇ H`. If `H` has full
/// rank, every class of `Per Λ / H` has a representative `r` with
/// `0 ≤ rᵢ < pᵢ` (the Hermite pivots), and stripping a common prefix turns any
/// pair realizing `r` into one of degrees `(r, 0)`. The scan saw all of those
/// when `pᵢ − 1 ≤ boundᵢ`.
fn saturates(group: &Subgroup, bound: &Degree) -> bool {
    let k = bound.rank();
    let rows = group.generators();
    rows.len() == k
        && rows
            .iter()
            .enumerate()
            .all(|(i, row)| (0..i).all(|j| row.0[j] == 0) && row.0[i] > 0 && row.0[i] - 1 <= i64::from(bound.0[i]))
}

/// Generator-level test: for each Hermite generator `h` of the group, every
/// `ξ ∈ vΛ^{h₊}` is equivalent to some `η ∈ vΛ^{h₋}` and vice versa.
pub fn vertices_per(eq: &mut Equivalence<'_>, group: &Subgroup) -> Vec<VertexId> {
    let g = eq.graph();
    (0..g.vertex_count())
        .filter(|&v| {
            group.generators().iter().all(|h| {
                let (plus, minus) = (h.positive_part(), h.negative_part());
                let xs = g.paths_of_degree(&plus, Some(v));
                let ys = g.paths_of_degree(&minus, Some(v));
                xs.iter().all(|x| eq.equivalent_of_degree(x, &minus).is_some())
                    && ys.iter().all(|y| eq.equivalent_of_degree(y, &plus).is_some())
            })
        })
        .collect()
}

/// The defining condition of `Λ⁰_Per`, for `d(ξ) ≤ bound` and `p ≤ bound`.
pub fn vertices_per_bounded(eq: &mut Equivalence<'_>, group: &Subgroup, bound: &Degree) -> Vec<VertexId> {
    let g = eq.graph();
    let degrees = bound.box_below();
    (0..g.vertex_count())
        .filter(|&v| {
            degrees.iter().all(|m| {
                let xis = g.paths_of_degree(m, Some(v));
                degrees.iter().filter(|p| group.contains(&(&m.to_gdegree() - &p.to_gdegree()))).all(|p| {
                    if p == m {
                        return true;
                    }
                    xis.iter().all(|xi| eq.equivalent_of_degree(xi, p).is_some())
                })
            })
        })
        .collect()
}

/// Aperiodicity within the bound, with an equivalent pair of distinct paths
/// when periodic, and whether the verdict is certified beyond the bound.
pub fn is_aperiodic(g: &KGraph, bound: &Degree) -> (bool, Option<DifferenceWitness>, bool) {
    let report = periodicity_group(g, bound);
    (report.aperiodic, report.first_witness().cloned(), report.complete)
}
