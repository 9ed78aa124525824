#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use pgraph::builtins;
use pgraph::kgraph::{single_vertex_fixture, KGraph, Path};
use pgraph::lattice::{group_generated, Degree, IntMatrix};
use pgraph::periodicity::{coprime_pairs, periodicity_group_with, reachable_from, Equivalence};
use pgraph::transforms::{
    canonical_iso_check, pushout, verify_pullback_periodic, verify_pushout_aperiodic, PushoutError,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every built-in k-graph, by name.
pub fn fixtures() -> Vec<(String, KGraph)> {
    builtins::NAMES
        .iter()
        .filter_map(|&name| builtins::kgraph(name).map(|s| (name.to_string(), s.validate().expect("valid builtin"))))
        .collect()
}

/// `count` single-vertex 2-graphs with 1 to 3 loops of each color and a
/// uniformly random square permutation.
pub fn random_single_vertex(count: usize, seed: u64) -> Vec<(String, KGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let sizes = [rng.gen_range(1..=3usize), rng.gen_range(1..=3usize)];
            let mut perm: Vec<usize> = (0..sizes[0] * sizes[1]).collect();
            perm.shuffle(&mut rng);
            let name = format!("random-{i} {sizes:?} {perm:?}");
            let s = single_vertex_fixture(2, &sizes, &[perm]).expect("sizes match");
            (name, s.validate().expect("every bijection is a 2-graph"))
        })
        .collect()
}

/// Decides `(αλ)(0, d(λ)) = (βλ)(0, d(λ))` for every `λ` of degree `r`, one
/// edge at a time, memoized on `(α, β, r)`.
pub struct ShiftOracle<'g> {
    g: &'g KGraph,
    memo: HashMap<(Path, Path, Degree), bool>,
}

impl<'g> ShiftOracle<'g> {
    pub fn new(g: &'g KGraph) -> Self {
        ShiftOracle { g, memo: HashMap::new() }
    }

    pub fn agree(&mut self, a: &Path, b: &Path, r: &Degree) -> bool {
        let k = self.g.rank();
        let Some(c) = (0..k).find(|&c| r.0[c] > 0) else {
            return true;
        };
        let key = (a.clone(), b.clone(), r.clone());
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let unit = Degree::unit(k, c);
        let rest = r.checked_sub(&unit).unwrap();
        let mut result = true;
        for &e in self.g.in_edges(a.source, c) {
            let e = self.g.edge_path(e);
            let ae = self.g.compose(a, &e).unwrap();
            let be = self.g.compose(b, &e).unwrap();
            let (fa, ra) = self.g.factor(&ae, &unit).unwrap();
            let (fb, rb) = self.g.factor(&be, &unit).unwrap();
            if fa != fb || !self.agree(&ra, &rb, &rest) {
                result = false;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    /// `μ ~ ν` as seen through extensions of degree `depth`.
    pub fn equivalent(&mut self, mu: &Path, nu: &Path, depth: &Degree) -> bool {
        if mu.source != nu.source || mu.range != nu.range {
            return false;
        }
        let p = mu.degree.meet(&nu.degree);
        let (w1, a) = self.g.factor(mu, &p).unwrap();
        let (w2, b) = self.g.factor(nu, &p).unwrap();
        w1 == w2 && self.agree(&a, &b, depth)
    }
}

/// The same question as [`ShiftOracle::agree`], by listing every `λ`.
pub fn literal_agree(g: &KGraph, a: &Path, b: &Path, r: &Degree) -> bool {
    g.paths_of_degree(r, Some(a.source)).iter().all(|l| {
        let head = |x: &Path| g.factor(&g.compose(x, l).unwrap(), r).unwrap().0;
        head(a) == head(b)
    })
}

/// `σ^m x` and `σ^n x` agree on their first `d(x) − (m ∨ n)` steps for every
/// `x` in `xs`.
pub fn shifts_agree(g: &KGraph, xs: &[Path], m: &Degree, n: &Degree) -> bool {
    xs.iter().all(|x| {
        let t = x.degree.checked_sub(&m.join(n)).unwrap();
        g.segment(x, m, &(m + &t)).unwrap() == g.segment(x, n, &(n + &t)).unwrap()
    })
}

/// All paths with degree at most `d`.
pub fn paths_up_to(g: &KGraph, d: &Degree) -> Vec<Path> {
    d.box_below().iter().flat_map(|n| g.paths_of_degree(n, None)).collect()
}

/// Order of `Z^n / (column span of a)` by listing the image of the columns in
/// `(Z/N)^n`, where `N` is the gcd of the maximal minors, so `N·Z^n` lies in
/// the span. `None` when the quotient is infinite or the listing would exceed `limit`.
pub fn coset_count(a: &IntMatrix, limit: u64) -> Option<u64> {
    let n = a.rows();
    let cols: Vec<Vec<i64>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let modulus = maximal_minor_gcd(&cols, n);
    if modulus == 0 {
        return None;
    }
    let total = (modulus as u64).checked_pow(n as u32)?;
    if total > limit {
        return None;
    }
    let gens: Vec<Vec<i64>> = cols.iter().map(|c| c.iter().map(|x| x.rem_euclid(modulus)).collect()).collect();
    let start = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Some(total / seen.len() as u64)
}

fn maximal_minor_gcd(cols: &[Vec<i64>], n: usize) -> i64 {
    fn walk(start: usize, cols: &[Vec<i64>], n: usize, picked: &mut Vec<usize>, acc: &mut i128) {
        if picked.len() == n {
            let chosen: Vec<Vec<i64>> = picked.iter().map(|&j| cols[j].clone()).collect();
            let (mut a, mut b) = (*acc, IntMatrix::from_columns(n, &chosen).determinant().abs());
            while b != 0 {
                (a, b) = (b, a % b);
            }
            *acc = a;
            return;
        }
        for j in start..cols.len() {
            picked.push(j);
            walk(j + 1, cols, n, picked, acc);
            picked.pop();
        }
    }
    let mut acc = 0;
    walk(0, cols, n, &mut Vec::new(), &mut acc);
    i64::try_from(acc).expect("small minors")
}

/// Results of one structural check over a corpus.
#[derive(Debug, Default)]
pub struct Tally {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    pub fn line(&self) -> String {
        let first = self.failures.iter().find(|f| !f.is_empty()).cloned().unwrap_or_default();
        format!(
            "{}: {}/{} ({}){}",
            self.name,
            self.checked - self.failures.len(),
            self.checked,
            if self.passed() { "ok" } else { "FAILED" },
            if first.is_empty() { String::new() } else { format!(", first: {first}") }
        )
    }
}

/// Per-coordinate values, applied in the rank of each graph.
pub struct SuiteConfig {
    pub bound: u32,
    /// Extension depth for the shift oracle.
    pub depth: u32,
    /// Pairs with degrees up to this are compared against the oracle.
    pub pair_degree: u32,
}

impl SuiteConfig {
    pub fn standard() -> Self {
        SuiteConfig { bound: 3, depth: 6, pair_degree: 2 }
    }
}

fn show(d: &Degree) -> String {
    format!("{:?}", d.0)
}

/// Runs every structural check over `graphs`.
pub fn structural_checks(graphs: &[(String, KGraph)], cfg: &SuiteConfig) -> Vec<Tally> {
    let mut shift_characterization = Tally::new("local periodicity matches the group");
    let mut sigma_direct = Tally::new("sigma agrees with direct shift comparison");
    let mut characterizations = Tally::new("three aperiodicity characterizations agree");
    let mut generated = Tally::new("group generated by the local groups");
    let mut uniqueness = Tally::new("equivalent paths of equal degree coincide");
    let mut congruence_union = Tally::new("union of local periodicity is translation invariant");
    let mut congruence_vertex = Tally::new("local periodicity is closed under adding a common degree");
    let mut uniform = Tally::new("exchange-test vertices carry the full local periodicity");
    let mut hereditary = Tally::new("exchange-test vertices are closed under paths");
    let mut all_uniform = Tally::new("all vertices pass the exchange test when local periodicity is uniform");
    let mut automaton = Tally::new("equivalence agrees with the bounded shift oracle");
    let mut aperiodic = Tally::new("quotient graphs are aperiodic");
    let mut roundtrip = Tally::new("pulling back a quotient recovers the graph");
    let mut periodic = Tally::new("pullbacks along nonzero subgroups are periodic");

    for (name, g) in graphs {
        let k = g.rank();
        let bound = &Degree::uniform(k, cfg.bound);
        let depth = Degree::uniform(k, cfg.depth);
        let pairs = coprime_pairs(bound);
        let boxed = bound.box_below();
        let horizon = bound + &Degree::uniform(k, 1);
        let mut eq = Equivalence::new(g);
        let report = periodicity_group_with(&mut eq, bound);
        let n_vertices = g.vertex_count();

        let sigma_union =
            |eq: &mut Equivalence<'_>, m: &Degree, n: &Degree| (0..n_vertices).any(|v| eq.sigma_contains(v, m, n));
        for m in &boxed {
            for n in &boxed {
                let lhs = sigma_union(&mut eq, m, n);
                let rhs = report.group.contains(&(&m.to_gdegree() - &n.to_gdegree()));
                shift_characterization.check(lhs == rhs, || format!("{name} at {} {}", show(m), show(n)));
                let p = m.meet(n);
                for q in p.box_below() {
                    let (m2, n2) = (m.checked_sub(&q).unwrap(), n.checked_sub(&q).unwrap());
                    let reduced = sigma_union(&mut eq, &m2, &n2);
                    congruence_union
                        .check(lhs == reduced, || format!("{name} at {} {} less {}", show(m), show(n), show(&q)));
                    for v in 0..n_vertices {
                        let ok = !eq.sigma_contains(v, &m2, &n2) || eq.sigma_contains(v, m, n);
                        congruence_vertex.check(ok, || format!("{name} vertex {v}"));
                    }
                }
            }
        }

        let mut direct_periodic = false;
        for v in 0..n_vertices {
            let xs = g.paths_of_degree(&horizon, Some(v));
            for (m, n) in &pairs {
                let direct = shifts_agree(g, &xs, m, n);
                direct_periodic |= direct;
                let automaton_says = eq.sigma_contains(v, m, n);
                sigma_direct.check(direct == automaton_says, || {
                    format!("{name} vertex {v} at {} {}: direct {direct}", show(m), show(n))
                });
            }
        }
        let locally_trivial = report.per_vertex_groups.iter().all(|h| h.is_trivial());
        characterizations.check(
            !direct_periodic == report.group.is_trivial() && report.group.is_trivial() == locally_trivial,
            || {
                format!(
                    "{name}: direct {}, group {}, local {locally_trivial}",
                    !direct_periodic,
                    report.group.is_trivial()
                )
            },
        );

        let locals: Vec<_> = report.per_vertex_groups.iter().flat_map(|h| h.generators().to_vec()).collect();
        generated.check(group_generated(g.rank(), &locals).same_as(&report.group), || name.clone());

        for d in &boxed {
            let paths = g.paths_of_degree(d, None);
            for (i, a) in paths.iter().enumerate() {
                for b in &paths[i + 1..] {
                    if a.source == b.source {
                        uniqueness.check(!eq.is_equivalent(a, b), || {
                            format!("{name}: {} ~ {}", g.path_name(a), g.path_name(b))
                        });
                    }
                }
            }
        }

        let union: HashSet<&(Degree, Degree)> = report.sigma.iter().flatten().collect();
        for &v in &report.vertices_per {
            let here: HashSet<&(Degree, Degree)> = report.sigma[v].iter().collect();
            uniform.check(here == union, || format!("{name} vertex {}", g.vertex_name(v)));
        }
        for &v in &report.vertices_per {
            for (w, reached) in reachable_from(g, v).into_iter().enumerate() {
                if reached {
                    hereditary.check(report.vertices_per.contains(&w), || format!("{name}: {v} reaches {w}"));
                }
            }
        }
        if pgraph::periodicity::is_sink_free(g) && report.sigma_uniform.len() == n_vertices {
            all_uniform.check(report.vertices_per.len() == n_vertices, || name.clone());
        }

        let mut oracle = ShiftOracle::new(g);
        let small = paths_up_to(g, &Degree::uniform(k, cfg.pair_degree));
        for a in &small {
            for b in small.iter().filter(|b| b.source == a.source && b.range == a.range) {
                let fast = eq.is_equivalent(a, b);
                let slow = oracle.equivalent(a, b, &depth);
                automaton.check(fast == slow, || {
                    format!("{name}: {} vs {}: automaton {fast}", g.path_name(a), g.path_name(b))
                });
            }
        }

        if report.property_w {
            match pushout(g, &report) {
                Ok(po) => {
                    let check = verify_pushout_aperiodic(&po).map(|c| c.holds());
                    aperiodic.check(check == Ok(true), || format!("{name}: {check:?}"));
                    if po.qgraph.restricted.is_empty() {
                        let iso = canonical_iso_check(g, &po.qgraph);
                        roundtrip.check(iso.is_ok(), || format!("{name}: {:?}", iso.err()));
                    }
                    if !po.qgraph.quotient().subgroup().is_trivial() {
                        let pb = verify_pullback_periodic(&po.qgraph, bound);
                        periodic.check(matches!(pb, Ok(ref c) if c.contains), || format!("{name}: {pb:?}"));
                    }
                }
                Err(PushoutError::VerticesPerIncomplete(_) | PushoutError::BoundInsufficient(_)) => {}
                Err(e) => aperiodic.check(false, || format!("{name}: {e}")),
            }
        }
    }

    let eg1 = pgraph::transforms::eg1();
    let pb = verify_pullback_periodic(&eg1, &Degree::uniform(1, cfg.bound));
    periodic.check(matches!(pb, Ok(ref c) if c.contains), || format!("eg1: {pb:?}"));

    vec![
        shift_characterization,
        sigma_direct,
        characterizations,
        generated,
        uniqueness,
        congruence_union,
        congruence_vertex,
        uniform,
        hereditary,
        all_uniform,
        automaton,
        aperiodic,
        roundtrip,
        periodic,
    ]
}
