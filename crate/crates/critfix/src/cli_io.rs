//! File formats and exporters behind the command-line surface: the graph
//! document schema, DOT renderings, and the table / machine report builders.
//!
//! A graph file is a JSON document with three keys in fixed order:
//! `vertices` (list of names), `edges` (list of `[u, v]` 0-based vertex
//! index pairs), and `rotations` (one counterclockwise list of
//! `[edge_index, end_index]` darts per vertex). `emit_graph` produces the
//! normal form, and `parse_graph_text(emit_graph(g))` reproduces `g`
//! byte-for-byte on re-emission.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::attractor::{PullbackIteration, TransitionGraph};
use crate::blowup::BlowupCover;
use crate::classify::CensusRow;
use crate::curves::{format_word, CurveWord, SimpleVerdict};
use crate::pullback::WreathRecursion;
use crate::rotation_map::RotationSystem;
use crate::tischler::{ChargeGraph, TischlerModel, TischlerReport};
use crate::{Error, Result};

/// Plain-text output flavors: aligned tables for reading, line-oriented
/// `key value ...` records separated by blank lines for diffing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TextFormat {
    Table,
    Machine,
}

/// On-disk document shape; `emit_graph` writes the same keys in this order.
#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    rotations: Vec<Vec<[usize; 2]>>,
}

/// Parses the graph document schema and validates the rotation structure.
pub fn parse_graph_text(text: &str) -> Result<RotationSystem> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    RotationSystem::new(file.vertices, file.edges, file.rotations)
}

/// Reads and validates a graph file.
pub fn read_graph(path: &Path) -> Result<RotationSystem> {
    let text = fs::read_to_string(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {}", path.display(), e))
    })?;
    parse_graph_text(&text)
}

/// Serializes a graph in normal form: fixed key order, index pairs kept on
/// one line, one rotation list per line, one trailing newline.
pub fn emit_graph(g: &RotationSystem) -> String {
    let names = g
        .vertex_names()
        .iter()
        .map(|n| serde_json::to_string(n).expect("string serializes"))
        .collect::<Vec<_>>()
        .join(", ");
    let edges = g
        .edges()
        .iter()
        .map(|&[u, v]| format!("[{}, {}]", u, v))
        .collect::<Vec<_>>()
        .join(", ");
    let mut text = String::from("{\n");
    let _ = writeln!(text, "  \"vertices\": [{}],", names);
    let _ = writeln!(text, "  \"edges\": [{}],", edges);
    if g.n_vertices() == 0 {
        text.push_str("  \"rotations\": []\n");
    } else {
        text.push_str("  \"rotations\": [\n");
        let rows = (0..g.n_vertices())
            .map(|v| {
                let darts = g
                    .rotation(v)
                    .iter()
                    .map(|d| format!("[{}, {}]", d.edge(), d.end()))
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("    [{}]", darts)
            })
            .collect::<Vec<_>>()
            .join(",\n");
        text.push_str(&rows);
        text.push_str("\n  ]\n");
    }
    text.push('}');
    text.push('\n');
    text
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering: one node per vertex labeled by name, one undirected edge
/// per edge labeled by its 1-based id.
pub fn graph_dot(g: &RotationSystem) -> String {
    let mut s = String::from("graph {\n");
    for v in 0..g.n_vertices() {
        let _ = writeln!(s, "  v{} [label=\"{}\"];", v, dot_escape(g.vertex_name(v)));
    }
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "  v{} -- v{} [label=\"e{}\"];", u, v, e + 1);
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of a bipartite model; radial vertices are drawn as boxes.
pub fn tischler_dot(t: &TischlerModel) -> String {
    let g = t.system();
    let mut s = String::from("graph {\n");
    for v in 0..g.n_vertices() {
        let shape = if t.is_c(v) { "ellipse" } else { "box" };
        let _ = writeln!(
            s,
            "  v{} [label=\"{}\", shape={}];",
            v,
            dot_escape(g.vertex_name(v)),
            shape
        );
    }
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "  v{} -- v{} [label=\"e{}\"];", u, v, e + 1);
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the attractor dynamics: nodes labeled by words, arcs
/// labeled by pullback multiplicity.
pub fn attractor_dot(tg: &TransitionGraph) -> String {
    let mut s = String::from("digraph {\n");
    for (i, w) in tg.nodes().iter().enumerate() {
        let _ = writeln!(s, "  n{} [label=\"{}\"];", i, dot_escape(&w.to_string()));
    }
    for i in 0..tg.nodes().len() {
        for &(j, m) in tg.arcs_from(i) {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", i, j, m);
        }
    }
    s.push_str("}\n");
    s
}

/// Pads every column except the last to its widest cell.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i + 1 < row.len() {
                width[i] = width[i].max(cell.len());
            }
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 < row.len() {
                let _ = write!(line, "{:<1$}  ", cell, width[i]);
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict_name(v: SimpleVerdict) -> &'static str {
    match v {
        SimpleVerdict::Simple => "simple",
        SimpleVerdict::NonSimple => "non-simple",
        SimpleVerdict::Unknown => "unknown",
    }
}

/// Structural summary of a parsed file, including whether it qualifies as a
/// charge graph (connected and spherical).
pub fn validate_report(g: &RotationSystem, fmt: TextFormat) -> String {
    let euler = g.euler_report();
    let charge = ChargeGraph::new(g.clone());
    let charge_cell = match (&charge, fmt) {
        (Ok(_), _) => "yes".to_string(),
        (Err(e), TextFormat::Table) => format!("no ({})", e),
        (Err(_), TextFormat::Machine) => "no".to_string(),
    };
    let rows = vec![
        vec!["vertices".to_string(), g.n_vertices().to_string()],
        vec!["edges".to_string(), g.n_edges().to_string()],
        vec!["faces".to_string(), g.n_faces().to_string()],
        vec!["components".to_string(), euler.components.to_string()],
        vec!["spherical".to_string(), yes_no(g.is_spherical()).to_string()],
        vec!["charge-graph".to_string(), charge_cell],
    ];
    match fmt {
        TextFormat::Table => aligned(&rows),
        TextFormat::Machine => machine_lines(&rows),
    }
}

fn machine_lines(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Face walks with 1-based edge cycles.
pub fn faces_report(g: &RotationSystem, fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut rows = vec![vec![
                "face".to_string(),
                "length".to_string(),
                "edges".to_string(),
            ]];
            for (i, w) in g.face_walks().iter().enumerate() {
                let cycle = w
                    .edge_cycle()
                    .iter()
                    .map(|e| format!("e{}", e + 1))
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec![i.to_string(), w.len().to_string(), cycle]);
            }
            aligned(&rows)
        }
        TextFormat::Machine => {
            let mut out = String::new();
            for (i, w) in g.face_walks().iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "face {}", i);
                let _ = writeln!(out, "length {}", w.len());
                let cycle = w
                    .edge_cycle()
                    .iter()
                    .map(|e| (e + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "edges {}", cycle);
            }
            out
        }
    }
}

/// Radial model statistics plus the structural check results.
pub fn tischler_report(t: &TischlerModel, rep: &TischlerReport, fmt: TextFormat) -> String {
    let g = t.system();
    let lengths = g
        .face_walks()
        .iter()
        .map(|w| w.len().to_string())
        .collect::<Vec<_>>()
        .join(" ");
    match fmt {
        TextFormat::Table => {
            let mut rows = vec![
                vec!["vertices".to_string(), g.n_vertices().to_string()],
                vec!["charge-vertices".to_string(), t.c_vertices().len().to_string()],
                vec!["radial-vertices".to_string(), t.r_vertices().len().to_string()],
                vec!["edges".to_string(), g.n_edges().to_string()],
                vec!["faces".to_string(), g.n_faces().to_string()],
                vec!["face-lengths".to_string(), lengths],
            ];
            if !t.face_edge().is_empty() {
                let origins = t
                    .face_edge()
                    .iter()
                    .map(|e| format!("e{}", e + 1))
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec!["face-origins".to_string(), origins]);
            }
            let mut out = aligned(&rows);
            out.push('\n');
            let mut checks = vec![vec![
                "check".to_string(),
                "result".to_string(),
                "detail".to_string(),
            ]];
            for c in &rep.checks {
                checks.push(vec![
                    c.name.to_string(),
                    if c.passed { "pass".into() } else { "fail".into() },
                    if c.passed { String::new() } else { c.detail.clone() },
                ]);
            }
            out.push_str(&aligned(&checks));
            let _ = writeln!(
                out,
                "\nresult  {}",
                if rep.all_passed() {
                    "all checks passed"
                } else {
                    "checks FAILED"
                }
            );
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "vertices {}", g.n_vertices());
            let _ = writeln!(out, "charge-vertices {}", t.c_vertices().len());
            let _ = writeln!(out, "radial-vertices {}", t.r_vertices().len());
            let _ = writeln!(out, "edges {}", g.n_edges());
            let _ = writeln!(out, "faces {}", g.n_faces());
            let _ = writeln!(out, "face-lengths {}", lengths);
            for (f, e) in t.face_edge().iter().enumerate() {
                let _ = writeln!(out, "face-origin {} {}", f, e + 1);
            }
            for c in &rep.checks {
                let _ = writeln!(
                    out,
                    "check {} {}",
                    if c.passed { "pass" } else { "fail" },
                    c.name
                );
            }
            let _ = writeln!(out, "all-passed {}", yes_no(rep.all_passed()));
            out
        }
    }
}

/// Blown-cover statistics: degree, cell counts, patch faces, local degrees.
pub fn blowup_report(c: &BlowupCover, fmt: TextFormat) -> String {
    let base = c.base().system();
    let blown = c.blown();
    let n = base.n_edges();
    let rh: usize = (0..base.n_vertices()).map(|v| c.local_degree(v) - 1).sum();
    match fmt {
        TextFormat::Table => {
            let patches = (0..n)
                .map(|j| format!("e{}:f{}", j + 1, c.patches()[j]))
                .collect::<Vec<_>>()
                .join(" ");
            let locals = (0..base.n_vertices())
                .map(|v| format!("{}:{}", base.vertex_name(v), c.local_degree(v)))
                .collect::<Vec<_>>()
                .join("  ");
            let rows = vec![
                vec!["degree".to_string(), c.degree().to_string()],
                vec!["base-edges".to_string(), n.to_string()],
                vec!["base-faces".to_string(), base.n_faces().to_string()],
                vec!["blown-edges".to_string(), blown.n_edges().to_string()],
                vec!["blown-faces".to_string(), blown.n_faces().to_string()],
                vec!["patches".to_string(), patches],
                vec!["local-degrees".to_string(), locals],
                vec![
                    "branching".to_string(),
                    format!("sum(local - 1) = {} = 2 * {}", rh, n),
                ],
            ];
            aligned(&rows)
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "degree {}", c.degree());
            let _ = writeln!(out, "base-edges {}", n);
            let _ = writeln!(out, "base-faces {}", base.n_faces());
            let _ = writeln!(out, "blown-edges {}", blown.n_edges());
            let _ = writeln!(out, "blown-faces {}", blown.n_faces());
            for j in 0..n {
                let _ = writeln!(out, "patch {} {}", j + 1, c.patches()[j]);
            }
            for v in 0..base.n_vertices() {
                let _ = writeln!(out, "local-degree {} {}", v, c.local_degree(v));
            }
            let _ = writeln!(out, "branching-sum {}", rh);
            out
        }
    }
}

fn one_line(perm: &[usize]) -> String {
    perm.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Per generator: the sheet permutation in one-line notation and the
/// restriction word on every sheet.
pub fn recursion_table(rec: &WreathRecursion, fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "sheets      {}", rec.n_sheets());
            let _ = writeln!(out, "generators  {}", rec.n_generators());
            out.push('\n');
            let mut rows = vec![vec![
                "gen".to_string(),
                "permutation".to_string(),
                "restrictions".to_string(),
            ]];
            for g in 0..rec.n_generators() {
                let words = (0..rec.n_sheets())
                    .map(|c| format_word(rec.restriction(g, c)))
                    .collect::<Vec<_>>()
                    .join(", ");
                rows.push(vec![
                    format!("x{}", g + 1),
                    format!("({})", one_line(rec.perm(g))),
                    words,
                ]);
            }
            out.push_str(&aligned(&rows));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "sheets {}", rec.n_sheets());
            let _ = writeln!(out, "generators {}", rec.n_generators());
            for g in 0..rec.n_generators() {
                out.push('\n');
                let _ = writeln!(out, "generator {}", g + 1);
                let _ = writeln!(out, "perm {}", one_line(rec.perm(g)));
                for c in 0..rec.n_sheets() {
                    let _ = writeln!(out, "restriction {} {}", c, format_word(rec.restriction(g, c)));
                }
            }
            out
        }
    }
}

/// The input word and every pullback component with its complexity.
pub fn pullback_report(w: &CurveWord, pulled: &[CurveWord], fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "curve       {}", w);
            let _ = writeln!(out, "complexity  {}", w.complexity());
            let _ = writeln!(out, "pullbacks   {}", pulled.len());
            out.push('\n');
            let mut rows = vec![vec![
                "#".to_string(),
                "word".to_string(),
                "complexity".to_string(),
            ]];
            for (i, d) in pulled.iter().enumerate() {
                rows.push(vec![
                    (i + 1).to_string(),
                    d.to_string(),
                    d.complexity().to_string(),
                ]);
            }
            out.push_str(&aligned(&rows));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "curve {}", w);
            let _ = writeln!(out, "complexity {}", w.complexity());
            let _ = writeln!(out, "pullbacks {}", pulled.len());
            for (i, d) in pulled.iter().enumerate() {
                out.push('\n');
                let _ = writeln!(out, "pullback {}", i + 1);
                let _ = writeln!(out, "word {}", d);
                let _ = writeln!(out, "complexity {}", d.complexity());
            }
            out
        }
    }
}

/// One generation per line of the iterated pullback trajectory.
pub fn trajectory_report(it: &PullbackIteration, fmt: TextFormat) -> String {
    let converged = match it.converged_at {
        Some(k) => format!("step {}", k),
        None => "no (budget exhausted)".to_string(),
    };
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "steps      {}", it.steps.len());
            let _ = writeln!(out, "converged  {}", converged);
            out.push('\n');
            let mut rows = vec![vec!["step".to_string(), "classes".to_string()]];
            for (k, gen) in it.steps.iter().enumerate() {
                let words = gen
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(" | ");
                rows.push(vec![k.to_string(), words]);
            }
            out.push_str(&aligned(&rows));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "steps {}", it.steps.len());
            let _ = writeln!(
                out,
                "converged {}",
                match it.converged_at {
                    Some(k) => k.to_string(),
                    None => "none".to_string(),
                }
            );
            for (k, gen) in it.steps.iter().enumerate() {
                out.push('\n');
                let _ = writeln!(out, "step {}", k);
                for w in gen {
                    let _ = writeln!(out, "word {}", w);
                }
            }
            out
        }
    }
}

/// Attractor nodes with simplicity verdicts and the pullback arcs
/// (`target:multiplicity`).
pub fn attractor_report(tg: &TransitionGraph, fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "nodes  {}", tg.nodes().len());
            out.push('\n');
            let mut rows = vec![vec![
                "node".to_string(),
                "word".to_string(),
                "verdict".to_string(),
                "arcs".to_string(),
            ]];
            for (i, w) in tg.nodes().iter().enumerate() {
                let arcs = tg
                    .arcs_from(i)
                    .iter()
                    .map(|&(j, m)| format!("{}:{}", j, m))
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec![
                    i.to_string(),
                    w.to_string(),
                    verdict_name(tg.verdict(i)).to_string(),
                    arcs,
                ]);
            }
            out.push_str(&aligned(&rows));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "nodes {}", tg.nodes().len());
            for (i, w) in tg.nodes().iter().enumerate() {
                out.push('\n');
                let _ = writeln!(out, "node {}", i);
                let _ = writeln!(out, "word {}", w);
                let _ = writeln!(out, "verdict {}", verdict_name(tg.verdict(i)));
                for &(j, m) in tg.arcs_from(i) {
                    let _ = writeln!(out, "arc {} {}", j, m);
                }
            }
            out
        }
    }
}

/// Canonical class listing for one edge count.
pub fn enumerate_report(graphs: &[ChargeGraph], fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "classes  {}", graphs.len());
            out.push('\n');
            let mut rows = vec![vec![
                "#".to_string(),
                "vertices".to_string(),
                "degrees".to_string(),
                "code".to_string(),
            ]];
            for (i, g) in graphs.iter().enumerate() {
                let degrees = (0..g.n_vertices())
                    .map(|v| g.degree(v).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec![
                    (i + 1).to_string(),
                    g.n_vertices().to_string(),
                    degrees,
                    g.canonical_form().hex(),
                ]);
            }
            out.push_str(&aligned(&rows));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            let _ = writeln!(out, "classes {}", graphs.len());
            for (i, g) in graphs.iter().enumerate() {
                out.push('\n');
                let _ = writeln!(out, "class {}", i + 1);
                let _ = writeln!(out, "code {}", g.canonical_form().hex());
                let _ = writeln!(out, "vertices {}", g.n_vertices());
                let degrees = (0..g.n_vertices())
                    .map(|v| g.degree(v).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "degrees {}", degrees);
            }
            out
        }
    }
}

/// Full catalog rows: one line or record per isomorphism class.
pub fn census_report(rows: &[CensusRow], fmt: TextFormat) -> String {
    match fmt {
        TextFormat::Table => {
            let mut out = String::new();
            let mut n = 0;
            for row in rows {
                if row.n_edges != n {
                    n = row.n_edges;
                    let count = rows.iter().filter(|r| r.n_edges == n).count();
                    let _ = writeln!(
                        out,
                        "edges {} (degree {}): {} class{}",
                        n,
                        n + 1,
                        count,
                        if count == 1 { "" } else { "es" }
                    );
                }
            }
            out.push('\n');
            let mut table = vec![vec![
                "edges".to_string(),
                "degree".to_string(),
                "vertices".to_string(),
                "degrees".to_string(),
                "tischler".to_string(),
                "attractor".to_string(),
                "chiral".to_string(),
                "code".to_string(),
            ]];
            for row in rows {
                let degrees = row
                    .degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                table.push(vec![
                    row.n_edges.to_string(),
                    (row.n_edges + 1).to_string(),
                    row.n_vertices.to_string(),
                    degrees,
                    format!("{}/{}/{}", row.tischler[0], row.tischler[1], row.tischler[2]),
                    row.attractor_size.to_string(),
                    yes_no(row.chiral).to_string(),
                    row.code_hex.clone(),
                ]);
            }
            out.push_str(&aligned(&table));
            out
        }
        TextFormat::Machine => {
            let mut out = String::new();
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let degrees = row
                    .degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "edges {}", row.n_edges);
                let _ = writeln!(out, "code {}", row.code_hex);
                let _ = writeln!(out, "fingerprint {:016x}", row.fingerprint);
                let _ = writeln!(out, "vertices {}", row.n_vertices);
                let _ = writeln!(out, "degrees {}", degrees);
                let _ = writeln!(
                    out,
                    "tischler {} {} {}",
                    row.tischler[0], row.tischler[1], row.tischler[2]
                );
                let _ = writeln!(out, "attractor {}", row.attractor_size);
                let _ = writeln!(out, "chiral {}", yes_no(row.chiral));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blow_up;
    use crate::fixtures;
    use crate::pullback::OverlayComplex;
    use crate::rotation_map::are_isomorphic;
    use crate::tischler::{radial_tischler, verify_tischler_structure};

    fn fig1_charge() -> ChargeGraph {
        ChargeGraph::new(fixtures::fig1()).unwrap()
    }

    #[test]
    fn round_trip_is_byte_exact() {
        for g in [
            fixtures::fig1(),
            fixtures::single_edge(),
            fixtures::star(4),
            fixtures::triangle(),
        ] {
            let text = emit_graph(&g);
            let back = parse_graph_text(&text).unwrap();
            assert_eq!(emit_graph(&back), text);
            assert_eq!(back.vertex_names(), g.vertex_names());
            assert_eq!(back.edges(), g.edges());
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let err = parse_graph_text("{ not json").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn loop_edge_is_rejected() {
        let text = r#"{"vertices": ["a", "b"], "edges": [[0, 0]], "rotations": [[], []]}"#;
        let err = parse_graph_text(text).unwrap_err();
        assert!(matches!(err, Error::LoopEdge(0)));
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let text = r#"{"vertices": ["a", "b"], "edges": [[0, 7]], "rotations": [[], []]}"#;
        let err = parse_graph_text(text).unwrap_err();
        assert!(matches!(err, Error::UnknownVertex { edge: 0, vertex: 7 }));
    }

    #[test]
    fn missing_dart_error_names_the_dart() {
        let text = r#"{
            "vertices": ["a", "b"],
            "edges": [[0, 1]],
            "rotations": [[[0, 0]], []]
        }"#;
        let err = parse_graph_text(text).unwrap_err();
        assert!(matches!(
            err,
            Error::MissingDart { edge: 0, end: 1, vertex: 1 }
        ));
        let msg = err.to_string();
        assert!(msg.contains("edge 0") && msg.contains("end 1"));
    }

    #[test]
    fn duplicate_dart_is_rejected() {
        let text = r#"{
            "vertices": ["a", "b"],
            "edges": [[0, 1], [0, 1]],
            "rotations": [[[0, 0], [1, 0]], [[0, 1], [0, 1]]]
        }"#;
        let err = parse_graph_text(text).unwrap_err();
        assert!(matches!(err, Error::DuplicateDart { edge: 0, end: 1 }));
    }

    #[test]
    fn shipped_reference_graph_is_in_normal_form() {
        let text = include_str!("../../../examples/fig1.graph");
        let g = parse_graph_text(text).unwrap();
        assert_eq!(emit_graph(&g), text);
        assert!(are_isomorphic(&g, &fixtures::fig1()));
    }

    #[test]
    fn dot_covers_every_vertex_and_edge() {
        let g = fixtures::fig1();
        let dot = graph_dot(&g);
        for v in 0..g.n_vertices() {
            assert!(dot.contains(&format!("v{} [label=", v)));
        }
        for e in 1..=g.n_edges() {
            assert!(dot.contains(&format!("[label=\"e{}\"]", e)));
        }
        assert!(dot.starts_with("graph {\n") && dot.ends_with("}\n"));
    }

    #[test]
    fn machine_reports_are_line_oriented() {
        let charge = fig1_charge();
        let t = radial_tischler(&charge);
        let rep = verify_tischler_structure(&t);
        let cover = blow_up(&charge);
        let texts = [
            validate_report(charge.system(), TextFormat::Machine),
            faces_report(charge.system(), TextFormat::Machine),
            tischler_report(&t, &rep, TextFormat::Machine),
            blowup_report(&cover, TextFormat::Machine),
        ];
        for text in texts {
            for line in text.lines() {
                if line.is_empty() {
                    continue;
                }
                assert_eq!(line.trim(), line);
                assert!(line.split(' ').count() >= 2, "bare key line {:?}", line);
            }
        }
    }

    #[test]
    fn recursion_table_lists_every_generator_and_sheet() {
        let charge = fig1_charge();
        let tree = crate::curves::SpanningTree::greedy(&charge);
        let overlay = OverlayComplex::build(&blow_up(&charge), &tree).unwrap();
        let rec = overlay.wreath_recursion();
        let table = recursion_table(&rec, TextFormat::Table);
        for g in 1..=rec.n_generators() {
            assert!(table.contains(&format!("x{}", g)));
        }
        let machine = recursion_table(&rec, TextFormat::Machine);
        assert_eq!(
            machine.matches("restriction ").count(),
            rec.n_generators() * rec.n_sheets()
        );
    }
}


