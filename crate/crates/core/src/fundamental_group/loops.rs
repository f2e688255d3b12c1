use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::graph::{Circuit, Graph};
use crate::{Error, Result};

/// Vertex sequence of a based loop: first and last entries are the base,
/// consecutive entries are equal or adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopWord {
    vertices: Vec<usize>,
}

impl LoopWord {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let (first, last) = match (vertices.first(), vertices.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::InvalidLoop(format!("empty word"))),
        };
        if first != last {
            return Err(Error::InvalidLoop(format!(
                "starts at {first} but ends at {last}"
            )));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::VertexOutOfRange(v));
        }
        if let Some(w) = vertices
            .windows(2)
            .find(|w| w[0] != w[1] && !g.has_edge(w[0], w[1]))
        {
            return Err(Error::InvalidLoop(format!(
                "{} and {} are neither equal nor adjacent",
                w[0], w[1]
            )));
        }
        Ok(LoopWord { vertices })
    }

    /// The constant loop at `base`.
    pub fn trivial(base: usize) -> Self {
        LoopWord {
            vertices: alloc::vec![base],
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn base(&self) -> usize {
        self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// One rewriting step, positions index the word before the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopMove {
    /// `... a a ...` -> `... a ...`, removing the entry at `at`.
    Stutter { at: usize },
    /// `... a b a ...` -> `... a ...`, removing entries `at + 1` and `at + 2`.
    Backtrack { at: usize },
    /// Entries `at..at + removed` are one arc of circuit `circuit`; the
    /// interior is replaced by `inserted`, the other way around the circuit.
    Circuit {
        at: usize,
        circuit: usize,
        removed: usize,
        inserted: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopReduction {
    pub word: LoopWord,
    pub moves: Vec<LoopMove>,
    /// The step budget ran out before a fixpoint.
    pub budget_exhausted: bool,
}

impl LoopReduction {
    /// `Err(BudgetExceeded)` when the budget ran out, otherwise the word.
    pub fn into_result(self, max_steps: usize) -> Result<LoopWord> {
        if self.budget_exhausted {
            Err(Error::BudgetExceeded {
                what: "loop rewriting steps",
                limit: max_steps as u64,
            })
        } else {
            Ok(self.word)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceOptions {
    /// Allow circuit substitutions that keep the length, once no shortening
    /// move applies. Words already seen are not revisited.
    pub neutral_moves: bool,
}

/// Greedy rewriting with stutters first, then backtracks, then the circuit
/// substitution that shortens the word most.
pub fn reduce_loop(w: &LoopWord, b: &[Circuit], max_steps: usize) -> LoopReduction {
    reduce_loop_with(w, b, max_steps, ReduceOptions::default())
}

pub fn reduce_loop_with(
    w: &LoopWord,
    b: &[Circuit],
    max_steps: usize,
    opts: ReduceOptions,
) -> LoopReduction {
    let mut word = w.vertices.clone();
    let mut moves = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(word.clone());
    loop {
        let Some(mv) = next_move(&word, b, opts, &seen) else {
            return LoopReduction {
                word: LoopWord { vertices: word },
                moves,
                budget_exhausted: false,
            };
        };
        if moves.len() >= max_steps {
            return LoopReduction {
                word: LoopWord { vertices: word },
                moves,
                budget_exhausted: true,
            };
        }
        word = apply_unchecked(&word, &mv);
        seen.insert(word.clone());
        moves.push(mv);
    }
}

fn next_move(
    w: &[usize],
    b: &[Circuit],
    opts: ReduceOptions,
    seen: &BTreeSet<Vec<usize>>,
) -> Option<LoopMove> {
    if let Some(at) = w.windows(2).position(|p| p[0] == p[1]) {
        return Some(LoopMove::Stutter { at: at + 1 });
    }
    if let Some(at) = w.windows(3).position(|p| p[0] == p[2]) {
        return Some(LoopMove::Backtrack { at });
    }
    let mut best: Option<(usize, LoopMove)> = None;
    let mut neutral: Option<LoopMove> = None;
    for (ci, c) in b.iter().enumerate() {
        let cv = c.vertices();
        let len = cv.len();
        for at in 0..w.len() {
            for start in (0..len).filter(|&s| cv[s] == w[at]) {
                for forward in [true, false] {
                    let step = |k: usize| {
                        if forward {
                            cv[(start + k) % len]
                        } else {
                            cv[(start + len - k % len) % len]
                        }
                    };
                    // removed = k vertices of the word along the circuit, k in 2..=len
                    let mut k = 1;
                    while k < len && at + k < w.len() && w[at + k] == step(k) {
                        k += 1;
                        let interior_new = len - k;
                        let interior_old = k - 2;
                        let inserted: Vec<usize> =
                            (1..=interior_new).map(|j| step(len - j)).collect();
                        let mv = LoopMove::Circuit {
                            at,
                            circuit: ci,
                            removed: k,
                            inserted,
                        };
                        if interior_new < interior_old {
                            let gain = interior_old - interior_new;
                            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                                best = Some((gain, mv));
                            }
                        } else if opts.neutral_moves
                            && interior_new == interior_old
                            && neutral.is_none()
                        {
                            if !seen.contains(&apply_unchecked(w, &mv)) {
                                neutral = Some(mv);
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, m)| m).or(neutral)
}

fn apply_unchecked(w: &[usize], mv: &LoopMove) -> Vec<usize> {
    let mut out = w.to_vec();
    match mv {
        LoopMove::Stutter { at } => {
            out.remove(*at);
        }
        LoopMove::Backtrack { at } => {
            out.drain(at + 1..at + 3);
        }
        LoopMove::Circuit {
            at,
            removed,
            inserted,
            ..
        } => {
            out.splice(at + 1..at + removed - 1, inserted.iter().copied());
        }
    }
    out
}

/// Applies `mv` after checking it is a legal rewriting move on `w`.
pub fn apply_move(g: &Graph, w: &LoopWord, b: &[Circuit], mv: &LoopMove) -> Result<LoopWord> {
    let v = &w.vertices;
    let bad = || Error::InvalidLoop(format!("move {mv:?} does not apply"));
    let ok = match mv {
        LoopMove::Stutter { at } => *at >= 1 && *at < v.len() && v[at - 1] == v[*at],
        LoopMove::Backtrack { at } => at + 2 < v.len() && v[*at] == v[at + 2],
        LoopMove::Circuit {
            at,
            circuit,
            removed,
            inserted,
        } => {
            let Some(c) = b.get(*circuit) else {
                return Err(bad());
            };
            if *removed < 2 || at + removed > v.len() {
                return Err(bad());
            }
            let a = v[*at];
            let z = v[at + removed - 1];
            let mut path_old: Vec<usize> = v[*at..at + removed].to_vec();
            let mut path_new: Vec<usize> = alloc::vec![a];
            path_new.extend(inserted);
            path_new.push(z);
            // old path then new path backwards closes up into the circuit
            path_new.reverse();
            path_old.extend(&path_new[1..path_new.len() - 1]);
            a != z
                && Circuit::new(path_old)
                    .is_ok_and(|cand| cand.same_cycle(c) && cand.len() == c.len())
        }
    };
    if !ok {
        return Err(bad());
    }
    LoopWord::new(g, apply_unchecked(v, mv))
}

/// Replays a move log from `w`, checking every move.
pub fn replay(g: &Graph, w: &LoopWord, b: &[Circuit], moves: &[LoopMove]) -> Result<LoopWord> {
    moves
        .iter()
        .try_fold(w.clone(), |cur, mv| apply_move(g, &cur, b, mv))
}
