//! Reports for `classify`, `groupoid` and `equiv`, in JSON and text form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use diagroot::equivalence::common_lift;
use diagroot::{
    figure1_classify, generate, nichols_dimension, twist_equivalent, weyl_equivalent, weyl_orbit,
    BraidingMatrix, DimensionVerdict, GenerationOutcome, IntVector, OrderedBasis, TwistClass,
    WeylGroupoid,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::render;

/// Orbits are skipped when bases times index permutations exceed this.
pub const ORBIT_LIMIT: usize = 2_000_000;

pub const EXIT_FINITE: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_ARITHMETIC: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;
pub const EXIT_CERTIFIED_INFINITE: i32 = 4;
pub const EXIT_TABLE_FAILED: i32 = 5;

pub fn exit_code(outcome: &GenerationOutcome) -> i32 {
    match outcome {
        GenerationOutcome::Finite { .. } => EXIT_FINITE,
        GenerationOutcome::NotArithmetic { .. } => EXIT_NOT_ARITHMETIC,
        GenerationOutcome::CapExceeded { .. } => EXIT_CAP_EXCEEDED,
        GenerationOutcome::CertifiedInfinite { .. } => EXIT_CERTIFIED_INFINITE,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub row: u8,
    pub variant: usize,
    pub tree: &'static str,
    pub transposed: bool,
    /// Order of the root of unity `z` used in `params`.
    pub torsion_order: u64,
    pub params: BTreeMap<&'static str, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Factor {
    pub root: IntVector,
    pub height: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimensionReport {
    Finite { value: String, factors: Vec<Factor> },
    Infinite { witness: IntVector },
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistReport {
    pub diagonal: Vec<String>,
    pub products: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub outcome: &'static str,
    pub detail: Value,
    pub roots: Option<Vec<IntVector>>,
    pub row: Option<RowReport>,
    pub dimension: Option<DimensionReport>,
    pub orbit: Option<Vec<TwistReport>>,
}

fn detail(outcome: &GenerationOutcome) -> Value {
    match outcome {
        GenerationOutcome::Finite { groupoid, roots } => json!({
            "nodes": groupoid.len(),
            "roots": roots.roots().len(),
        }),
        GenerationOutcome::NotArithmetic {
            basis,
            pivot,
            other,
        } => json!({
            "basis": basis,
            "pivot": pivot + 1,
            "other": other + 1,
        }),
        GenerationOutcome::CertifiedInfinite {
            certificate,
            visited,
        } => json!({
            "certificate": certificate,
            "visited": visited,
        }),
        GenerationOutcome::CapExceeded { visited } => json!({ "visited": visited }),
    }
}

/// Positive roots ordered by height, then lexicographically from the top.
fn sorted_roots(roots: &BTreeSet<IntVector>) -> Vec<IntVector> {
    let mut v: Vec<IntVector> = roots.iter().cloned().collect();
    v.sort_by_key(|r| (r.coords().iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    v
}

fn twist_report(c: &TwistClass, names: &[String]) -> TwistReport {
    TwistReport {
        diagonal: c.diagonal.iter().map(|v| render(v, names)).collect(),
        products: c.products.iter().map(|v| render(v, names)).collect(),
    }
}

pub fn classify(
    q: &BraidingMatrix,
    names: &[String],
    cap: usize,
) -> Result<(ClassifyReport, i32), diagroot::Error> {
    let outcome = generate(q, &OrderedBasis::standard(q.rank()), cap)?;
    let row = if q.rank() == 2 {
        figure1_classify(q)?.map(|m| {
            let torsion_order = m
                .params
                .zeta
                .as_ref()
                .or(m.params.q.as_ref())
                .or(m.params.r.as_ref())
                .map_or(q.group().torsion(), |v| v.group().torsion());
            let mut params = BTreeMap::new();
            for (name, v) in [
                ("zeta", &m.params.zeta),
                ("q", &m.params.q),
                ("r", &m.params.r),
            ] {
                if let Some(v) = v {
                    params.insert(name, render(v, names));
                }
            }
            RowReport {
                row: m.row,
                variant: m.variant,
                tree: m.tree,
                transposed: m.transposed,
                torsion_order,
                params,
            }
        })
    } else {
        None
    };
    let (roots, dimension, orbit) = match outcome.root_system() {
        Some(system) => {
            let dimension = match nichols_dimension(q, system)? {
                DimensionVerdict::FiniteDim { value, factors } => DimensionReport::Finite {
                    value: value.to_string(),
                    factors: factors
                        .into_iter()
                        .map(|(root, height)| Factor { root, height })
                        .collect(),
                },
                DimensionVerdict::InfiniteDim { witness } => DimensionReport::Infinite { witness },
            };
            let work = (1..=q.rank())
                .try_fold(outcome.groupoid().map_or(0, |g| g.len()), |acc, k| {
                    acc.checked_mul(k)
                });
            let orbit = match work {
                Some(w) if w <= ORBIT_LIMIT => Some(
                    weyl_orbit(q, cap)?
                        .iter()
                        .map(|c| twist_report(c, names))
                        .collect(),
                ),
                _ => None,
            };
            (
                Some(sorted_roots(system.positive())),
                Some(dimension),
                orbit,
            )
        }
        None => (None, None, None),
    };
    let report = ClassifyReport {
        outcome: outcome.label(),
        detail: detail(&outcome),
        roots,
        row,
        dimension,
        orbit,
    };
    Ok((report, exit_code(&outcome)))
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "outcome: {}", r.outcome);
    match r.outcome {
        "not_arithmetic" => {
            let _ = writeln!(
                s,
                "undefined m_{}{} at basis {}",
                r.detail["pivot"], r.detail["other"], r.detail["basis"]
            );
        }
        "certified_infinite" => {
            let c = &r.detail["certificate"];
            let _ = writeln!(
                s,
                "chain {} is eventually periodic from step {} with period {}; tail m = {}",
                c["start"], c["tail_start"], c["period"], c["tail"]
            );
        }
        "cap_exceeded" => {
            let _ = writeln!(s, "visited {} bases without closing", r.detail["visited"]);
        }
        _ => {}
    }
    if let Some(roots) = &r.roots {
        let list: Vec<String> = roots.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "positive roots ({}): {}", roots.len(), list.join(" "));
    }
    if let Some(row) = &r.row {
        let params: Vec<String> = row.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            s,
            "table row {} variant {} (tree {}){}{}",
            row.row,
            row.variant,
            row.tree,
            if row.transposed {
                ", indices swapped"
            } else {
                ""
            },
            if params.is_empty() {
                String::new()
            } else {
                format!(
                    ", {} with z of order {}",
                    params.join(" "),
                    row.torsion_order
                )
            }
        );
    }
    match &r.dimension {
        Some(DimensionReport::Finite { value, factors }) => {
            let hs: Vec<String> = factors.iter().map(|f| f.height.to_string()).collect();
            let _ = writeln!(s, "dimension: {value} = {}", hs.join("*"));
        }
        Some(DimensionReport::Infinite { witness }) => {
            let _ = writeln!(
                s,
                "dimension: infinite (root {witness} has infinite height)"
            );
        }
        None => {}
    }
    if let Some(orbit) = &r.orbit {
        let _ = writeln!(s, "Weyl orbit: {} twist classes", orbit.len());
    }
    s
}

/// Nodes re-indexed in sorted order, with each undirected edge once.
pub struct ExchangeGraph {
    pub nodes: Vec<(OrderedBasis, BraidingMatrix)>,
    pub edges: BTreeSet<(usize, usize, usize)>,
}

pub fn exchange_graph(g: &WeylGroupoid) -> ExchangeGraph {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| g.nodes()[a].cmp(&g.nodes()[b]));
    let mut rank = vec![0; g.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let nodes = order
        .iter()
        .map(|&k| (g.nodes()[k].clone(), g.matrix_at(k).clone()))
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (rank[e.from], rank[e.to]);
            (a.min(b), a.max(b), e.pivot + 1)
        })
        .collect();
    ExchangeGraph { nodes, edges }
}

pub fn dot(graph: &ExchangeGraph) -> String {
    let mut s = String::from("graph weyl {\n  node [shape=box];\n");
    for (k, (basis, _)) in graph.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{k} [label=\"{basis}\"];");
    }
    for (a, b, i) in &graph.edges {
        let _ = writeln!(s, "  n{a} -- n{b} [label=\"{i}\"];");
    }
    s.push_str("}\n");
    s
}

fn matrix_strings(q: &BraidingMatrix, names: &[String]) -> Vec<Vec<String>> {
    let n = q.rank();
    (0..n)
        .map(|i| (0..n).map(|j| render(q.get(i, j), names)).collect())
        .collect()
}

/// `groupoid` output plus the DOT text when the groupoid is finite.
pub fn groupoid(
    q: &BraidingMatrix,
    names: &[String],
    cap: usize,
) -> Result<(Value, String, Option<String>, i32), diagroot::Error> {
    let outcome = generate(q, &OrderedBasis::standard(q.rank()), cap)?;
    let code = exit_code(&outcome);
    let Some(g) = outcome.groupoid() else {
        let v = json!({ "outcome": outcome.label(), "detail": detail(&outcome) });
        let text = format!("outcome: {}\n", outcome.label());
        return Ok((v, text, None, code));
    };
    let graph = exchange_graph(g);
    let nodes: Vec<Value> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(k, (b, m))| json!({ "id": k, "basis": b, "matrix": matrix_strings(m, names) }))
        .collect();
    let edges: Vec<Value> = graph
        .edges
        .iter()
        .map(|(a, b, i)| json!({ "a": a, "b": b, "pivot": i }))
        .collect();
    let v = json!({ "outcome": outcome.label(), "nodes": nodes, "edges": edges });
    let mut text = format!(
        "outcome: finite\n{} bases, {} reflection edges\n",
        graph.nodes.len(),
        graph.edges.len()
    );
    for (k, (b, m)) in graph.nodes.iter().enumerate() {
        let rows: Vec<String> = matrix_strings(m, names)
            .iter()
            .map(|r| r.join(" "))
            .collect();
        let _ = writeln!(text, "n{k} {b} [{}]", rows.join("; "));
    }
    for (a, b, i) in &graph.edges {
        let _ = writeln!(text, "n{a} -{i}- n{b}");
    }
    Ok((v, text, Some(dot(&graph)), code))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EquivMode {
    Twist,
    Weyl,
}

/// `equiv` result. In Weyl mode a non-finite input is reported as such and
/// decides the exit code.
pub fn equiv(
    a: &BraidingMatrix,
    b: &BraidingMatrix,
    mode: EquivMode,
    cap: usize,
) -> Result<(Value, i32), diagroot::Error> {
    let (a, b) = common_lift(a, b)?;
    match mode {
        EquivMode::Twist => {
            let eq = a.rank() == b.rank() && twist_equivalent(&a, &b)?;
            Ok((json!({ "mode": "twist", "equivalent": eq }), EXIT_FINITE))
        }
        EquivMode::Weyl => {
            let oa = generate(&a, &OrderedBasis::standard(a.rank()), cap)?;
            let ob = generate(&b, &OrderedBasis::standard(b.rank()), cap)?;
            for o in [&oa, &ob] {
                if !o.is_finite() {
                    let v = json!({
                        "mode": "weyl",
                        "equivalent": Value::Null,
                        "a": oa.label(),
                        "b": ob.label(),
                    });
                    return Ok((v, exit_code(o)));
                }
            }
            let eq = weyl_equivalent(&a, &b, cap)?;
            Ok((
                json!({ "mode": "weyl", "equivalent": eq, "a": "finite", "b": "finite" }),
                EXIT_FINITE,
            ))
        }
    }
}
