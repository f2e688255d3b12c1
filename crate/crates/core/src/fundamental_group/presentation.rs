use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{triangles_and_squares, Circuit, Graph, OrientedEdge, SpanningTree};
use crate::{Error, Result};

/// A word in the free group. Letter `k + 1` is generator `k`, `-(k + 1)` its inverse.
pub type Word = Vec<i32>;

pub(crate) fn letter_index(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub(crate) fn letter(generator: usize, inverse: bool) -> i32 {
    let l = generator as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

/// Cancels adjacent `x x^-1` pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by stripping inverse pairs across the ends.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Name of generator `k`: `a`..`z`, then `g26`, `g27`, ...
pub fn generator_name(k: usize) -> String {
    if k < 26 {
        format!("{}", (b'a' + k as u8) as char)
    } else {
        format!("g{k}")
    }
}

fn letter_name(l: i32) -> String {
    let name = generator_name(letter_index(l));
    if l < 0 {
        name.to_uppercase()
    } else {
        name
    }
}

/// Finitely presented group. When built from a graph, `arcs[k]` is the
/// oriented edge that generator `k` stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub arcs: Option<Vec<OrientedEdge>>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    /// Checks every letter against `generator_count`.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&l) = r
                .iter()
                .find(|&&l| l == 0 || letter_index(l) >= generator_count)
            {
                return Err(Error::DimensionMismatch(format!(
                    "letter {l} with {generator_count} generators"
                )));
            }
        }
        Ok(GroupPresentation {
            generator_count,
            arcs: None,
            relators,
        })
    }

    pub fn trivial() -> Self {
        GroupPresentation {
            generator_count: 0,
            arcs: None,
            relators: Vec::new(),
        }
    }

    pub fn is_trivially_trivial(&self) -> bool {
        self.generator_count == 0
    }

    /// Deletes the given generators from every relator (each must be trivial
    /// in the group for this to be a Tietze move), renumbers the rest and
    /// drops relators that become empty.
    pub fn eliminate_generators(&self, dead: &[usize]) -> GroupPresentation {
        let dead: BTreeSet<usize> = dead.iter().copied().collect();
        let mut renumber = Vec::with_capacity(self.generator_count);
        let mut next = 0usize;
        for k in 0..self.generator_count {
            if dead.contains(&k) {
                renumber.push(None);
            } else {
                renumber.push(Some(next));
                next += 1;
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|r| {
                let kept: Word = r
                    .iter()
                    .filter_map(|&l| renumber[letter_index(l)].map(|k| letter(k, l < 0)))
                    .collect();
                free_reduce(&kept)
            })
            .filter(|r| !r.is_empty())
            .collect();
        let arcs = self.arcs.as_ref().map(|a| {
            a.iter()
                .enumerate()
                .filter(|(k, _)| !dead.contains(k))
                .map(|(_, &e)| e)
                .collect()
        });
        GroupPresentation {
            generator_count: next,
            arcs,
            relators,
        }
    }

    /// `gens: a,b ; rels: aB, bb` with uppercase inverses; `1` for an empty relator.
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = (0..self.generator_count).map(generator_name).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| word_text(r)).collect();
        let text = format!("gens: {} ; rels: {}", gens.join(","), rels.join(", "));
        String::from(text.trim_end())
    }

    /// Inverse of [`GroupPresentation::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::DimensionMismatch(format!("presentation text: {m}"));
        let (gens_part, rels_part) = text.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let gens = gens_part
            .trim()
            .strip_prefix("gens:")
            .ok_or_else(|| bad("missing 'gens:'"))?;
        let rels = rels_part
            .trim()
            .strip_prefix("rels:")
            .ok_or_else(|| bad("missing 'rels:'"))?;
        let names: Vec<&str> = gens
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        for (k, n) in names.iter().enumerate() {
            if *n != generator_name(k) {
                return Err(bad(&format!(
                    "generator {k} must be named {}",
                    generator_name(k)
                )));
            }
        }
        let mut relators = Vec::new();
        for r in rels.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            relators
                .push(parse_word(r, names.len()).ok_or_else(|| bad(&format!("bad word '{r}'")))?);
        }
        GroupPresentation::new(names.len(), relators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn word_text(w: &[i32]) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    w.iter().map(|&l| letter_name(l)).collect()
}

fn parse_word(s: &str, gens: usize) -> Option<Word> {
    if s == "1" {
        return Some(Vec::new());
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let inverse = c.is_ascii_uppercase();
        let k = if c.eq_ignore_ascii_case(&b'g')
            && i + 1 < bytes.len()
            && bytes[i + 1].is_ascii_digit()
        {
            let start = i + 1;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = s[start..i].parse().ok()?;
            if k < 26 {
                return None;
            }
            k
        } else if c.is_ascii_alphabetic() {
            i += 1;
            (c.to_ascii_lowercase() - b'a') as usize
        } else {
            return None;
        };
        if k >= gens {
            return None;
        }
        out.push(letter(k, inverse));
    }
    Some(out)
}

/// Word of a circuit over one generator per edge, following the circuit's orientation.
fn edge_word(g: &Graph, c: &Circuit) -> Word {
    c.arcs()
        .map(|a| {
            let (id, sign) = g
                .arc(a.tail, a.head)
                .expect("circuit edges lie in the graph");
            letter(id, sign < 0)
        })
        .collect()
}

/// `<E | T, B>` with one generator per edge (canonical orientation), the
/// tree edges as length-1 relators and one relator per circuit.
pub fn full_presentation(
    g: &Graph,
    b: &[Circuit],
    tree: &SpanningTree,
) -> Result<GroupPresentation> {
    g.require_connected()?;
    for c in b {
        c.check_in(g)?;
    }
    let mut relators: Vec<Word> = tree
        .edge_ids()
        .into_iter()
        .map(|id| vec_of(letter(id, false)))
        .collect();
    relators.extend(b.iter().map(|c| edge_word(g, c)));
    let arcs = g
        .edges()
        .iter()
        .map(|&(u, v)| OrientedEdge::new(u, v))
        .collect();
    Ok(GroupPresentation {
        generator_count: g.edge_count(),
        arcs: Some(arcs),
        relators,
    })
}

fn vec_of(l: i32) -> Word {
    let mut w = Vec::with_capacity(1);
    w.push(l);
    w
}

/// The presentation with tree generators eliminated, through the BFS tree.
pub fn presentation(g: &Graph, b: &[Circuit]) -> Result<GroupPresentation> {
    g.require_connected()?;
    presentation_with_tree(g, b, &SpanningTree::bfs(g)?)
}

pub fn presentation_with_tree(
    g: &Graph,
    b: &[Circuit],
    tree: &SpanningTree,
) -> Result<GroupPresentation> {
    Ok(full_presentation(g, b, tree)?.eliminate_generators(&tree.edge_ids()))
}

/// Presentation of the fundamental group: triangles and squares as relators.
pub fn pi1(g: &Graph) -> Result<GroupPresentation> {
    g.require_connected()?;
    presentation(g, &triangles_and_squares(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn spec_examples() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = presentation(&path, &[]).unwrap();
        assert_eq!(p.generator_count, 0);
        assert!(p.relators.is_empty());

        let c5 = presentation(&cycle(5), &[]).unwrap();
        assert_eq!(c5.to_text(), "gens: a ; rels:");

        let c4 = cycle(4);
        let sq = Circuit::new(vec![0, 1, 2, 3]).unwrap();
        let p = presentation(&c4, &[sq]).unwrap();
        assert_eq!(p.to_text(), "gens: a ; rels: a");
        assert_eq!(pi1(&c4).unwrap(), p);
    }

    #[test]
    fn full_presentation_shape() {
        let g = cycle(4);
        let t = SpanningTree::bfs(&g).unwrap();
        let sq = Circuit::new(vec![0, 3, 2, 1]).unwrap();
        let p = full_presentation(&g, &[sq], &t).unwrap();
        assert_eq!(p.generator_count, 4);
        assert_eq!(p.relators.len(), 4);
        assert_eq!(p.relators[3].len(), 4);
        assert!(p.relators[..3].iter().all(|r| r.len() == 1));
    }

    #[test]
    fn text_round_trip() {
        let p =
            GroupPresentation::new(30, vec![vec![1, -2, 27], vec![], vec![-30, 30, 3]]).unwrap();
        let t = p.to_text();
        assert!(t.contains("g26") && t.contains("G29") && t.contains("aBg26"));
        assert_eq!(GroupPresentation::parse(&t).unwrap(), p);
        assert!(GroupPresentation::parse("gens: a ; rels: ab").is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(invert_word(&[1, -2]), vec![2, -1]);
    }
}
