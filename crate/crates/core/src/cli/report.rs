use std::fmt::Write as _;

use serde::Serialize;

use crate::kgraph::{KGraph, Path, Skeleton};
use crate::lattice::{Degree, Subgroup};
use crate::periodicity::{is_cofinal, PeriodicityReport};
use crate::transforms::{IsoCertificate, IsoError, PullbackPeriodicity, Pushout, QGraph};

const SCHEMA: u32 = 1;

fn rows(h: &Subgroup) -> Vec<Vec<i64>> {
    h.generators().iter().map(|g| g.0.clone()).collect()
}

fn group_text(h: &Subgroup) -> String {
    if h.is_trivial() {
        "0".into()
    } else {
        h.to_string()
    }
}

#[derive(Serialize)]
pub struct ValidationDoc {
    schema: u32,
    kind: &'static str,
    valid: bool,
    rank: usize,
    vertices: usize,
    edges: usize,
    relations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ValidationDoc {
    pub fn kgraph(s: &Skeleton, result: Result<(), String>) -> Self {
        ValidationDoc {
            schema: SCHEMA,
            kind: "kgraph",
            valid: result.is_ok(),
            rank: s.rank(),
            vertices: s.vertices().len(),
            edges: s.edges().len(),
            relations: s.squares().len(),
            error: result.err(),
        }
    }

    pub fn qgraph(gamma: &QGraph, result: Result<(), String>) -> Self {
        ValidationDoc {
            schema: SCHEMA,
            kind: "qgraph",
            valid: result.is_ok(),
            rank: gamma.rank(),
            vertices: gamma.vertices().len(),
            edges: gamma.morphisms().len(),
            relations: gamma.compositions().count(),
            error: result.err(),
        }
    }

    pub fn text(&self) -> String {
        let (edges, relations) =
            if self.kind == "kgraph" { ("edges", "squares") } else { ("morphisms", "compositions") };
        let verdict = match &self.error {
            None => "valid".to_string(),
            Some(e) => format!("invalid: {e}"),
        };
        format!(
            "{} {verdict}\nrank {}, {} vertices, {} {edges}, {} {relations}\n",
            self.kind, self.rank, self.vertices, self.edges, self.relations
        )
    }
}

#[derive(Serialize)]
struct PathDoc {
    name: String,
    range: String,
    source: String,
    degree: Degree,
    edges: Vec<usize>,
}

impl PathDoc {
    fn new(g: &KGraph, p: &Path) -> Self {
        PathDoc {
            name: g.path_name(p),
            range: g.vertex_name(p.range).into(),
            source: g.vertex_name(p.source).into(),
            degree: p.degree.clone(),
            edges: p.edges.clone(),
        }
    }
}

#[derive(Serialize)]
struct WitnessDoc {
    difference: Vec<i64>,
    xi: PathDoc,
    eta: PathDoc,
}

#[derive(Serialize)]
struct VertexDoc {
    vertex: String,
    /// Pairs `(m, n)` found in `Σ_v`.
    sigma: Vec<(Degree, Degree)>,
    group: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct QuotientCheckDoc {
    subgroup: Vec<Vec<i64>>,
    contains_subgroup: bool,
    strictly_larger: bool,
}

impl QuotientCheckDoc {
    pub fn new(gamma: &QGraph, check: &PullbackPeriodicity) -> Self {
        QuotientCheckDoc {
            subgroup: rows(gamma.quotient().subgroup()),
            contains_subgroup: check.contains,
            strictly_larger: check.strict,
        }
    }
}

#[derive(Serialize)]
struct CrossCheckDoc {
    passed: bool,
    paths_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

#[derive(Serialize)]
pub struct AnalysisDoc {
    schema: u32,
    bound: Degree,
    vertices: Vec<String>,
    periodicity_group: Vec<Vec<i64>>,
    quotient: String,
    aperiodic: bool,
    complete: bool,
    property_w: bool,
    cofinal: bool,
    witnesses: Vec<WitnessDoc>,
    per_vertex: Vec<VertexDoc>,
    sigma_uniform: Vec<String>,
    vertices_per: Vec<String>,
    vertices_per_bounded: Vec<String>,
    exchange_tests_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pullback_check: Option<QuotientCheckDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<CrossCheckDoc>,
    #[serde(skip)]
    group_text: String,
}

impl AnalysisDoc {
    pub fn new(
        g: &KGraph,
        r: &PeriodicityReport,
        pullback_check: Option<QuotientCheckDoc>,
        cross_check: Option<Result<usize, String>>,
    ) -> Self {
        let names = |vs: &[usize]| vs.iter().map(|&v| g.vertex_name(v).to_string()).collect();
        AnalysisDoc {
            schema: SCHEMA,
            bound: r.search_bound.clone(),
            vertices: (0..g.vertex_count()).map(|v| g.vertex_name(v).to_string()).collect(),
            periodicity_group: rows(&r.group),
            quotient: crate::lattice::quotient_structure(&r.group).describe(),
            aperiodic: r.aperiodic,
            complete: r.complete,
            property_w: r.property_w,
            cofinal: is_cofinal(g),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessDoc {
                    difference: w.difference.0.clone(),
                    xi: PathDoc::new(g, &w.xi),
                    eta: PathDoc::new(g, &w.eta),
                })
                .collect(),
            per_vertex: (0..g.vertex_count())
                .map(|v| VertexDoc {
                    vertex: g.vertex_name(v).into(),
                    sigma: r.sigma[v].clone(),
                    group: rows(&r.per_vertex_groups[v]),
                })
                .collect(),
            sigma_uniform: names(&r.sigma_uniform),
            vertices_per: names(&r.vertices_per),
            vertices_per_bounded: names(&r.vertices_per_bounded),
            exchange_tests_agree: r.vertices_per_agree(),
            pullback_check,
            cross_check: cross_check.map(|c| match c {
                Ok(n) => CrossCheckDoc { passed: true, paths_checked: n, failure: None },
                Err(f) => CrossCheckDoc { passed: false, paths_checked: 0, failure: Some(f) },
            }),
            group_text: group_text(&r.group),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let bound: Vec<String> = self.bound.0.iter().map(u32::to_string).collect();
        writeln!(out, "bound: {}", bound.join(",")).unwrap();
        writeln!(out, "periodicity group: {} (quotient {})", self.group_text, self.quotient).unwrap();
        writeln!(
            out,
            "aperiodic: {}, complete: {}, property W: {}, cofinal: {}",
            self.aperiodic, self.complete, self.property_w, self.cofinal
        )
        .unwrap();
        if !self.witnesses.is_empty() {
            writeln!(out, "witnesses:").unwrap();
            for w in &self.witnesses {
                let d: Vec<String> = w.difference.iter().map(i64::to_string).collect();
                writeln!(out, "  ({}): {} ~ {} at {}", d.join(","), w.xi.name, w.eta.name, w.xi.range).unwrap();
            }
        }
        writeln!(out, "local periodicity:").unwrap();
        for v in &self.per_vertex {
            let gens: Vec<String> = v
                .group
                .iter()
                .map(|r| format!("({})", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(out, "  {}: {} pairs, group <{}>", v.vertex, v.sigma.len(), gens.join(", ")).unwrap();
        }
        writeln!(out, "exchange test passed at: {}", self.vertices_per.join(" ")).unwrap();
        writeln!(out, "bounded exchange test passed at: {}", self.vertices_per_bounded.join(" ")).unwrap();
        if !self.exchange_tests_agree {
            writeln!(out, "warning: the exchange tests disagree").unwrap();
        }
        if let Some(c) = &self.pullback_check {
            writeln!(
                out,
                "pulled back from a quotient: contains the subgroup: {}, strictly larger: {}",
                c.contains_subgroup, c.strictly_larger
            )
            .unwrap();
        }
        if let Some(c) = &self.cross_check {
            match &c.failure {
                None => writeln!(out, "path-level cross-check: passed on {} paths", c.paths_checked).unwrap(),
                Some(f) => writeln!(out, "path-level cross-check: failed at {f}").unwrap(),
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct RoundtripDoc {
    schema: u32,
    ok: bool,
    quotient: String,
    vertices: usize,
    morphisms: usize,
    restricted: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<IsoCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl RoundtripDoc {
    pub fn new(po: &Pushout, cert: &Result<IsoCertificate, IsoError>) -> Self {
        RoundtripDoc {
            schema: SCHEMA,
            ok: cert.is_ok(),
            quotient: po.qgraph.quotient().describe(),
            vertices: po.qgraph.vertices().len(),
            morphisms: po.qgraph.morphisms().len(),
            restricted: po.qgraph.restricted.clone(),
            certificate: cert.as_ref().ok().cloned(),
            error: cert.as_ref().err().map(ToString::to_string),
        }
    }

    pub fn text(&self) -> String {
        let mut out =
            format!("quotient over {}: {} vertices, {} morphisms\n", self.quotient, self.vertices, self.morphisms);
        if !self.restricted.is_empty() {
            writeln!(out, "left out: {}", self.restricted.join(" ")).unwrap();
        }
        match (&self.certificate, &self.error) {
            (Some(c), _) => {
                writeln!(out, "isomorphism certificate: OK ({} squares checked)", c.squares_checked).unwrap();
                for (color, pairs) in c.per_color.iter().enumerate() {
                    let maps: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                    writeln!(out, "  color {}: {}", color + 1, maps.join(" ")).unwrap();
                }
            }
            (None, Some(e)) => writeln!(out, "isomorphism certificate: FAILED: {e}").unwrap(),
            (None, None) => {}
        }
        out
    }
}
