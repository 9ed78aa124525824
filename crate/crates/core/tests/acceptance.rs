mod common;

use std::time::{Duration, Instant};

use pgraph::cli;
use pgraph::format::{parse_graph, GraphFile};
use pgraph::kgraph::KGraph;
use pgraph::lattice::{smith_normal_form, Degree, GDegree, IntMatrix, Subgroup};
use pgraph::periodicity::Equivalence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{coset_count, fixtures, paths_up_to, random_single_vertex, structural_checks, ShiftOracle, SuiteConfig};

const CLI_LIMIT: Duration = Duration::from_secs(10);
const SUITE_LIMIT: Duration = Duration::from_secs(300);
const SMITH_LIMIT: Duration = Duration::from_secs(30);
const RANDOM_GRAPHS: usize = 120;
const CORPUS_SEED: u64 = 0x5eed_0001;
const SMITH_SEED: u64 = 0x5eed_0002;
const SMITH_SAMPLES: usize = 1000;
const COSET_LIMIT: u64 = 1 << 22;

struct Outcome {
    ok: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, summary: impl Into<String>) -> Self {
        Outcome { ok, summary: summary.into(), details: Vec::new() }
    }
}

fn run_cli(args: &[&str]) -> (i32, String, Duration) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let start = Instant::now();
    let code = cli::run(std::iter::once("pgraph").chain(args.iter().copied()), &mut out, &mut err);
    let elapsed = start.elapsed();
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text, elapsed)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or(Value::Null)
}

fn group_of(doc: &Value, rank: usize) -> Subgroup {
    let gens: Vec<GDegree> = doc["periodicity_group"]
        .as_array()
        .map(|rows| rows.iter().map(|r| GDegree(serde_json::from_value(r.clone()).unwrap())).collect())
        .unwrap_or_default();
    Subgroup::new(rank, &gens)
}

fn named_path(g: &KGraph, edges: &[&str]) -> pgraph::kgraph::Path {
    let ids: Vec<usize> = edges.iter().map(|n| g.skeleton().edge_id(n).unwrap()).collect();
    let range = g.edge(ids[0]).range;
    g.normalize(range, &ids).unwrap()
}

fn sims_analysis() -> Outcome {
    let (code, text, elapsed) = run_cli(&["analyze", "example:sims", "--bound", "3,3", "--format", "json"]);
    let doc = json(&text);
    let per_ok = code == 0 && group_of(&doc, 2).same_as(&Subgroup::new(2, &[GDegree(vec![2, 0])]));

    let g = pgraph::builtins::sims().validate().unwrap();
    let mut eq = Equivalence::new(&g);
    let vertex = |name: &str| g.vertex_path(g.skeleton().vertex_id(name).unwrap());
    let loops_ok = eq.is_equivalent(&named_path(&g, &["e", "e"]), &vertex("u"))
        && eq.is_equivalent(&named_path(&g, &["f", "g"]), &vertex("v"))
        && eq.is_equivalent(&named_path(&g, &["g", "f"]), &vertex("w"));

    let per = Subgroup::new(2, &[GDegree(vec![2, 0])]);
    let depth = Degree(vec![6, 6]);
    let mut oracle = ShiftOracle::new(&g);
    let paths = paths_up_to(&g, &Degree(vec![3, 3]));
    let (mut positives, mut false_positives) = (0, 0);
    for a in &paths {
        for b in paths.iter().filter(|b| b.source == a.source && b.range == a.range && *b != a) {
            if eq.is_equivalent(a, b) {
                positives += 1;
                let diff = &a.degree.to_gdegree() - &b.degree.to_gdegree();
                if !oracle.equivalent(a, b, &depth) || !per.contains(&diff) {
                    false_positives += 1;
                }
            }
        }
    }
    let ok = per_ok && loops_ok && false_positives == 0 && elapsed < CLI_LIMIT;
    Outcome::new(
        ok,
        format!(
            "Per = <(2,0)>: {per_ok}; ee~u, fg~v, gf~w: {loops_ok}; {positives} equivalent pairs, \
             {false_positives} false positives; analyze took {:.2?}",
            elapsed
        ),
    )
}

fn eg1_pullback() -> Outcome {
    let (code, text, _) = run_cli(&["pullback", "example:eg1"]);
    let shape = match parse_graph(&text) {
        Ok(GraphFile::KGraph(s)) if code == 0 => {
            Some((s.rank(), s.vertices().len(), s.edges().len(), s.validate().is_ok()))
        }
        _ => None,
    };
    let shape_ok = shape == Some((1, 1, 1, true));
    let (code, text, _) = run_cli(&["analyze", "example:eg1", "--format", "json"]);
    let doc = json(&text);
    let per_ok = code == 0 && group_of(&doc, 1).same_as(&Subgroup::new(1, &[GDegree(vec![1])]));
    let strict = doc["pullback_check"]["contains_subgroup"] == Value::Bool(true)
        && doc["pullback_check"]["strictly_larger"] == Value::Bool(true);
    Outcome::new(
        shape_ok && per_ok && strict,
        format!("pullback (rank, vertices, edges, valid) = {shape:?}; Per = Z: {per_ok}; 2Z strictly inside: {strict}"),
    )
}

fn pushout_and_roundtrips() -> Outcome {
    let (code, text, push_time) = run_cli(&["pushout", "example:E"]);
    let vertices = match parse_graph(&text) {
        Ok(GraphFile::QGraph(q)) if code == 0 => Some(q.vertices().to_vec()),
        _ => None,
    };
    let single = vertices.as_deref() == Some(&["v".to_string()][..]);
    let mut ok = single && push_time < CLI_LIMIT;
    let mut parts = vec![format!("pushout of E has vertices {vertices:?} ({push_time:.2?})")];
    for name in ["E", "sims"] {
        let (code, text, elapsed) = run_cli(&["roundtrip", &format!("example:{name}"), "--format", "json"]);
        let doc = json(&text);
        let passed = code == 0 && doc["ok"] == Value::Bool(true) && doc["certificate"].is_object();
        ok &= passed && elapsed < CLI_LIMIT;
        parts.push(format!(
            "roundtrip {name}: {} ({elapsed:.2?})",
            if passed { "certificate" } else { "no certificate" }
        ));
    }
    Outcome::new(ok, parts.join("; "))
}

fn corpus_checks() -> Outcome {
    let start = Instant::now();
    let mut graphs = random_single_vertex(RANDOM_GRAPHS, CORPUS_SEED);
    graphs.extend(fixtures());
    let periodic = graphs
        .iter()
        .filter(|(_, g)| !pgraph::periodicity::periodicity_group(g, &Degree(vec![3; g.rank()])).group.is_trivial())
        .count();
    let cfg = SuiteConfig::standard();
    let tallies = structural_checks(&graphs, &cfg);
    let elapsed = start.elapsed();
    let all = tallies.iter().all(|t| t.passed());
    let mut outcome = Outcome::new(
        all && elapsed < SUITE_LIMIT,
        format!(
            "{} graphs ({RANDOM_GRAPHS} random, {periodic} periodic), {} checks, {:.1?}",
            graphs.len(),
            tallies.iter().map(|t| t.checked).sum::<usize>(),
            elapsed
        ),
    );
    outcome.details = tallies.iter().map(|t| t.line()).collect();
    outcome
}

fn wide(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect()
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, max: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let entries: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-max..=max)).collect()).collect();
    IntMatrix::from_rows(&entries)
}

/// `None` when every property holds, else what broke.
fn smith_defect(a: &IntMatrix) -> Option<String> {
    let f = smith_normal_form(a);
    let (u, v, d) = (wide(&f.u), wide(&f.v), wide(&f.d));
    if mat_mul(&mat_mul(&u, &wide(a)), &v) != d {
        return Some("D != UAV".into());
    }
    if mat_mul(&u, &wide(&f.u_inv)) != identity(a.rows()) {
        return Some("U is not unimodular".into());
    }
    let v_det = f.v.determinant();
    if v_det.abs() != 1 {
        return Some(format!("det V = {v_det}"));
    }
    if !f.d.is_diagonal() {
        return Some("D is not diagonal".into());
    }
    let diag: Vec<i128> = (0..a.rows().min(a.cols())).map(|i| d[i][i]).collect();
    if diag.iter().any(|&x| x < 0) {
        return Some(format!("negative diagonal {diag:?}"));
    }
    if diag.windows(2).any(|w| w[1] != 0 && (w[0] == 0 || w[1] % w[0] != 0)) {
        return Some(format!("diagonal {diag:?} is not a divisibility chain"));
    }
    None
}

fn smith_forms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SMITH_SEED);
    let mut defects = Vec::new();
    for _ in 0..SMITH_SAMPLES {
        let a = random_matrix(&mut rng, 9);
        if let Some(d) = smith_defect(&a) {
            defects.push(format!("{:?}: {d}", a.to_rows()));
        }
    }
    let (mut finite, mut counted, mut mismatches) = (0, 0, Vec::new());
    for _ in 0..SMITH_SAMPLES {
        let a = random_matrix(&mut rng, 3);
        if let Some(d) = smith_defect(&a) {
            defects.push(format!("{:?}: {d}", a.to_rows()));
        }
        let f = smith_normal_form(&a);
        if f.rank() != a.rows() {
            continue;
        }
        finite += 1;
        let order: i64 = f.invariant_factors().iter().product();
        if let Some(brute) = coset_count(&a, COSET_LIMIT) {
            counted += 1;
            if brute != order as u64 {
                mismatches.push(format!("{:?}: smith {order}, cosets {brute}", a.to_rows()));
            }
        }
    }
    let elapsed = start.elapsed();
    let mut outcome = Outcome::new(
        defects.is_empty() && mismatches.is_empty() && counted > 0 && elapsed < SMITH_LIMIT,
        format!(
            "{} matrices, {} defects; {finite} finite quotients with entries <= 3, {counted} enumerated, \
             {} order mismatches; {:.2?}",
            2 * SMITH_SAMPLES,
            defects.len(),
            mismatches.len(),
            elapsed
        ),
    );
    outcome.details = defects.into_iter().chain(mismatches).take(5).collect();
    outcome
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 5] = [
        ("sims periodicity at bound 3,3", sims_analysis),
        ("pullback of the order-two quotient", eg1_pullback),
        ("pushout of E and roundtrips", pushout_and_roundtrips),
        ("structural checks over the random corpus", corpus_checks),
        ("smith normal form", smith_forms),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        println!("{} criterion {}: {name}: {}", if outcome.ok { "PASS" } else { "FAIL" }, i + 1, outcome.summary);
        for d in &outcome.details {
            println!("    {d}");
        }
        failed += usize::from(!outcome.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
