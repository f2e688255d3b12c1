//! Built-in example graphs, addressed by name.

use gaincurv_core::graph::{families, Graph};

use crate::formats::LabeledGraph;

/// Names accepted by [`builtin`]; `{n}` stands for a number.
pub const BUILTIN_NAMES: &[&str] = &[
    "C{n}",
    "K{n}",
    "K{a},{b}",
    "Q{d}",
    "P{n}",
    "star{n}",
    "W{n}",
    "prism{n}",
    "prism5",
    "prism5-chord",
    "octahedron",
    "petersen",
];

/// Graphs with positive curvature at every vertex used by the vanishing,
/// finiteness and diameter checks.
pub const POSITIVE_CORPUS: &[&str] =
    &["K3", "K4", "K5", "K6", "K7", "Q2", "Q3", "Q4", "octahedron"];

fn number(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Labels `angle:ring` matching a drawing of the prism with rings of radius 1
/// and 2 and the first vertex at 18 degrees.
fn pentagon_labels() -> Vec<String> {
    (1..=2)
        .flat_map(|ring| (0..5).map(move |i| format!("{}:{ring}", 18 + 72 * i)))
        .collect()
}

fn sized(name: &str) -> Option<Graph> {
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (head, tail) = name.split_at(split);
    if head == "K" {
        if let Some((a, b)) = tail.split_once(',') {
            let (a, b) = (number(a)?, number(b)?);
            return (a >= 1 && b >= 1).then(|| families::complete_bipartite(a, b));
        }
    }
    let n = number(tail)?;
    match head {
        "C" if n >= 3 => Some(families::cycle(n)),
        "K" if n >= 1 => Some(families::complete(n)),
        "Q" if n <= 10 => Some(families::hypercube(n)),
        "P" if n >= 1 => Some(families::path(n)),
        "star" => Some(families::star(n)),
        "W" if n >= 3 => Some(families::wheel(n)),
        "prism" if n >= 3 => Some(families::prism(n)),
        _ => None,
    }
}

pub fn builtin(name: &str) -> Option<LabeledGraph> {
    match name {
        "prism5" => LabeledGraph::new(families::prism(5), pentagon_labels()).ok(),
        "prism5-chord" => {
            LabeledGraph::new(families::pentagonal_prism_with_chord(), pentagon_labels()).ok()
        }
        "octahedron" => Some(LabeledGraph::numbered(families::octahedron())),
        "petersen" => Some(LabeledGraph::numbered(families::petersen())),
        _ => sized(name).map(LabeledGraph::numbered),
    }
}
