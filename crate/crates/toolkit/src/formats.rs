//! Text formats: edge lists, circuit sets and gain files.
//!
//! All three share the same lexical rules. A `#` starts a comment, blank lines
//! are skipped and vertices are arbitrary whitespace-free tokens resolved
//! through the graph's label dictionary.

use std::collections::{BTreeMap, BTreeSet};

use gaincurv_core::gain::GainFunction;
use gaincurv_core::graph::{Circuit, Graph};
use gaincurv_core::group::{AbelianGroupSpec, GroupElement, GroupSpec, Permutation};

use crate::error::{ToolError, ToolResult};

/// A graph together with the labels its vertices had in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<String>) -> ToolResult<Self> {
        if labels.len() != graph.vertex_count() {
            return Err(ToolError::Usage(format!(
                "{} labels for {} vertices",
                labels.len(),
                graph.vertex_count()
            )));
        }
        let mut index = BTreeMap::new();
        for (v, l) in labels.iter().enumerate() {
            if l.is_empty()
                || l.chars().any(|c| c.is_whitespace() || c == '#')
                || index.insert(l.clone(), v).is_some()
            {
                return Err(ToolError::Usage(format!(
                    "bad or repeated vertex label {l:?}"
                )));
            }
        }
        Ok(LabeledGraph {
            graph,
            labels,
            index,
        })
    }

    /// Labels `0, 1, ..., n-1`.
    pub fn numbered(graph: Graph) -> Self {
        let labels = (0..graph.vertex_count()).map(|v| v.to_string()).collect();
        LabeledGraph::new(graph, labels).expect("numeric labels are distinct")
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn labels_of(&self, vertices: &[usize]) -> Vec<String> {
        vertices.iter().map(|&v| self.labels[v].clone()).collect()
    }

    fn resolve(&self, line: usize, label: &str) -> ToolResult<usize> {
        self.vertex(label)
            .ok_or_else(|| ToolError::parse(line, format!("unknown vertex {label:?}")))
    }
}

/// Non-empty content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

/// Edge list: `u v` per line. A line with a single token declares a vertex,
/// which is how isolated vertices are written.
pub fn parse_edge_list(text: &str) -> ToolResult<LabeledGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut intern = |t: &str| -> usize {
        *index.entry(t.to_string()).or_insert_with(|| {
            labels.push(t.to_string());
            labels.len() - 1
        })
    };
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, body) in content_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[..] {
            [v] => {
                intern(v);
            }
            [a, b] => {
                let (u, v) = (intern(a), intern(b));
                if u == v {
                    return Err(ToolError::parse(line, format!("self-loop at {a:?}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(ToolError::parse(line, format!("edge {a} {b} listed twice")));
                }
                edges.push((u, v));
            }
            _ => {
                return Err(ToolError::parse(
                    line,
                    format!("expected \"u v\", got {} tokens", tokens.len()),
                ))
            }
        }
    }
    if labels.is_empty() {
        return Err(ToolError::parse(0, "no vertices"));
    }
    let graph = Graph::from_edges(labels.len(), &edges)?;
    LabeledGraph::new(graph, labels)
}

/// Inverse of [`parse_edge_list`], edges in id order. Vertex lines are added
/// wherever needed to keep the label numbering.
pub fn write_edge_list(lg: &LabeledGraph) -> String {
    let mut out = String::new();
    let mut next = 0;
    let declare = |out: &mut String, range: std::ops::Range<usize>| {
        for v in range {
            out.push_str(lg.label(v));
            out.push('\n');
        }
    };
    for &(u, v) in lg.graph.edges() {
        let fresh: Vec<usize> = [u, v].into_iter().filter(|&w| w >= next).collect();
        let in_order = fresh.iter().enumerate().all(|(i, &w)| w == next + i);
        if !in_order {
            declare(&mut out, next..v + 1);
            next = v + 1;
        } else {
            next += fresh.len();
        }
        out.push_str(&format!("{} {}\n", lg.label(u), lg.label(v)));
    }
    declare(&mut out, next..lg.graph.vertex_count());
    out
}

/// One circuit per line as its cyclic vertex sequence.
pub fn parse_circuits(text: &str, lg: &LabeledGraph) -> ToolResult<Vec<Circuit>> {
    let mut out = Vec::new();
    for (line, body) in content_lines(text) {
        let vertices = body
            .split_whitespace()
            .map(|t| lg.resolve(line, t))
            .collect::<ToolResult<Vec<_>>>()?;
        let c = Circuit::in_graph(&lg.graph, vertices)
            .map_err(|e| ToolError::parse(line, e.to_string()))?;
        out.push(c);
    }
    Ok(out)
}

pub fn write_circuits(circuits: &[Circuit], lg: &LabeledGraph) -> String {
    circuits
        .iter()
        .map(|c| lg.labels_of(c.vertices()).join(" ") + "\n")
        .collect()
}

/// `Z2`, `Z`, `Z,Z3`, `S4`, or `1` for the trivial group.
pub fn parse_group(text: &str) -> Result<GroupSpec, String> {
    let t = text.trim();
    if t == "1" {
        return Ok(GroupSpec::Abelian(AbelianGroupSpec::new(Vec::new())));
    }
    if let Some(m) = t.strip_prefix('S') {
        let m: usize = m
            .parse()
            .map_err(|_| format!("bad symmetric group {t:?}"))?;
        if m == 0 {
            return Err("S0 is not a group here".into());
        }
        return Ok(GroupSpec::Symmetric(m));
    }
    let mut moduli = Vec::new();
    for part in t.split(',') {
        let part = part.trim();
        let q = match part.strip_prefix('Z') {
            Some("") => 0,
            Some(q) => match q.parse::<u64>() {
                Ok(q) if q >= 1 => q,
                _ => return Err(format!("bad cyclic factor {part:?}")),
            },
            None => return Err(format!("bad group factor {part:?}")),
        };
        moduli.push(q);
    }
    Ok(GroupSpec::Abelian(AbelianGroupSpec::new(moduli)))
}

/// Abelian elements are comma-separated coordinates; permutations use cycle
/// notation on `0..m`, `()` being the identity.
pub fn parse_element(text: &str, group: &GroupSpec) -> Result<GroupElement, String> {
    let t = text.trim();
    let elem = match group {
        GroupSpec::Abelian(a) => {
            let coords = t
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("bad coordinate {x:?}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != a.moduli.len() {
                return Err(format!(
                    "{} coordinates for a group with {} factors",
                    coords.len(),
                    a.moduli.len()
                ));
            }
            GroupElement::Abelian(coords)
        }
        GroupSpec::Symmetric(m) => {
            let mut cycles = Vec::new();
            let mut rest = t;
            while !rest.is_empty() {
                let inner = rest
                    .strip_prefix('(')
                    .ok_or_else(|| format!("expected '(' in {t:?}"))?;
                let close = inner
                    .find(')')
                    .ok_or_else(|| format!("unclosed cycle in {t:?}"))?;
                let points = inner[..close]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| format!("bad point {s:?}")))
                    .collect::<Result<Vec<_>, _>>()?;
                if !points.is_empty() {
                    cycles.push(points);
                }
                rest = inner[close + 1..].trim_start();
            }
            GroupElement::Permutation(
                Permutation::from_cycles(*m, &cycles).map_err(|e| e.to_string())?,
            )
        }
    };
    let elem = group.normalize(elem);
    group.validate(&elem).map_err(|e| e.to_string())?;
    Ok(elem)
}

fn split_token(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if s.is_empty() {
        return None;
    }
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    Some((&s[..end], &s[end..]))
}

/// Gain file: a `group: ...` header, then `u v g` lines giving the gain of the
/// arc `u -> v`. Unlisted edges carry the identity.
pub fn parse_gain(text: &str, lg: &LabeledGraph) -> ToolResult<GainFunction> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ToolError::parse(0, "missing \"group:\" header"))?;
    let spec = header
        .strip_prefix("group:")
        .ok_or_else(|| ToolError::parse(hline, "first line must be \"group: ...\""))?;
    let group = parse_group(spec).map_err(|m| ToolError::parse(hline, m))?;
    let mut arcs = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, body) in lines {
        let (a, rest) = split_token(body).expect("content lines are non-empty");
        let (b, literal) =
            split_token(rest).ok_or_else(|| ToolError::parse(line, "expected \"u v g\""))?;
        let (u, v) = (lg.resolve(line, a)?, lg.resolve(line, b)?);
        if !lg.graph.has_edge(u, v) {
            return Err(ToolError::parse(line, format!("{a} {b} is not an edge")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ToolError::parse(line, format!("edge {a} {b} given twice")));
        }
        if literal.trim().is_empty() {
            return Err(ToolError::parse(line, "missing group element"));
        }
        let g = parse_element(literal, &group).map_err(|m| ToolError::parse(line, m))?;
        arcs.push((u, v, g));
    }
    Ok(GainFunction::from_arcs(lg.graph.clone(), group, &arcs)?)
}

/// Writes every edge in canonical orientation, identity gains included.
pub fn write_gain(phi: &GainFunction, lg: &LabeledGraph) -> String {
    let mut out = format!("group: {}\n", phi.group());
    for (&(u, v), g) in phi.graph().edges().iter().zip(phi.values()) {
        out.push_str(&format!("{} {} {}\n", lg.label(u), lg.label(v), g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaincurv_core::graph::families;

    #[test]
    fn edge_list_with_labels_and_comments() {
        let lg = parse_edge_list("# a square\nx y\ny z # trailing\n\nz w\nw x\nlonely\n").unwrap();
        assert_eq!(lg.graph.vertex_count(), 5);
        assert_eq!(lg.graph.edge_count(), 4);
        assert_eq!(lg.vertex("lonely"), Some(4));
        assert_eq!(lg.label(2), "z");
        let again = parse_edge_list(&write_edge_list(&lg)).unwrap();
        assert_eq!(again, lg);
        let prism = crate::corpus::builtin("prism5-chord").unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&prism)).unwrap(), prism);
        let scrambled = parse_edge_list("c d\na b\nb d\ne\n").unwrap();
        assert_eq!(
            parse_edge_list(&write_edge_list(&scrambled)).unwrap(),
            scrambled
        );
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        for (text, line) in [("a b\nb b\n", 2), ("a b\nb a\n", 2), ("a b c\n", 1)] {
            match parse_edge_list(text) {
                Err(ToolError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_edge_list("# nothing\n").is_err());
    }

    #[test]
    fn circuits_resolve_labels() {
        let lg = parse_edge_list("a b\nb c\nc a\nc d\n").unwrap();
        let cs = parse_circuits("c b a\n", &lg).unwrap();
        assert_eq!(cs[0].vertices(), &[2, 1, 0]);
        assert_eq!(write_circuits(&cs, &lg), "c b a\n");
        assert!(parse_circuits("a b d\n", &lg).is_err());
        assert!(parse_circuits("a b q\n", &lg).is_err());
    }

    #[test]
    fn group_headers() {
        assert_eq!(
            parse_group("Z2").unwrap(),
            GroupSpec::Abelian(AbelianGroupSpec::cyclic(2))
        );
        assert_eq!(
            parse_group("Z,Z3").unwrap(),
            GroupSpec::Abelian(AbelianGroupSpec::new(vec![0, 3]))
        );
        assert_eq!(parse_group(" S4 ").unwrap(), GroupSpec::Symmetric(4));
        for bad in ["Z0", "Q", "S", "Z2,", "Sx"] {
            assert!(parse_group(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn elements() {
        let s4 = GroupSpec::Symmetric(4);
        let p = parse_element("(0 1)(2 3)", &s4).unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(parse_element("()", &s4).unwrap(), s4.identity());
        assert!(parse_element("(0 4)", &s4).is_err());
        assert!(parse_element("(0 1", &s4).is_err());
        let z = GroupSpec::Abelian(AbelianGroupSpec::new(vec![0, 3]));
        assert_eq!(
            parse_element("-2,5", &z).unwrap(),
            GroupElement::Abelian(vec![-2, 2])
        );
        assert!(parse_element("1", &z).is_err());
    }

    #[test]
    fn gain_file_round_trip() {
        let lg = LabeledGraph::numbered(families::cycle(4));
        let phi = parse_gain("group: S3\n# arcs\n0 1 (0 1 2)\n3 0 (0 1)\n", &lg).unwrap();
        assert_eq!(phi.arc_gain(0, 3).unwrap().to_string(), "(0 1)");
        assert_eq!(phi.arc_gain(1, 2).unwrap(), phi.group().identity());
        let again = parse_gain(&write_gain(&phi, &lg), &lg).unwrap();
        assert_eq!(again, phi);
        for bad in [
            "0 1 1\n",
            "group: Z2\n0 2 1\n",
            "group: Z2\n0 1 1\n1 0 1\n",
            "group: Z2\n0 1\n",
        ] {
            assert!(parse_gain(bad, &lg).is_err(), "{bad:?}");
        }
    }
}
