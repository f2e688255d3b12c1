//! Presentations of `pi_1(G, B)`, loop rewriting, abelianization and
//! bounded coset enumeration.
//!
//! Generators are arcs of the graph; after Tietze elimination of a spanning
//! tree only the non-tree arcs remain, so the generator count equals the
//! cyclomatic number.

mod loops;
mod presentation;
mod todd_coxeter;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

pub use loops::{
    apply_move, reduce_loop, reduce_loop_with, replay, LoopMove, LoopReduction, LoopWord,
    ReduceOptions,
};
pub use presentation::{
    cyclic_reduce, free_reduce, full_presentation, generator_name, invert_word, pi1, presentation,
    presentation_with_tree, word_text, GroupPresentation, Word,
};
pub use todd_coxeter::{finiteness_probe, Finiteness, DEFAULT_COSET_CAP};

use crate::algebra::IntMatrix;
use crate::path_homology::cokernel_factors;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianizationResult {
    pub free_rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianizationResult {
    /// Torsion factors followed by one zero per free summand, the layout of
    /// [`crate::path_homology::h1_integer`].
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = self.torsion.clone();
        out.extend(core::iter::repeat_n(BigInt::zero(), self.free_rank));
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Exponent sums: one row per generator, one column per relator.
pub fn exponent_sum_matrix(p: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.generator_count, p.relators.len());
    for (j, r) in p.relators.iter().enumerate() {
        for &l in r {
            let k = presentation::letter_index(l);
            let v = m.get(k, j) + BigInt::from(l.signum());
            m.set(k, j, v);
        }
    }
    m
}

/// `Z^gens` modulo the exponent-sum vectors of the relators, via Smith normal form.
pub fn abelianization(p: &GroupPresentation) -> AbelianizationResult {
    let factors = cokernel_factors(&exponent_sum_matrix(p));
    let free_rank = factors.iter().filter(|d| d.is_zero()).count();
    let torsion = factors.into_iter().filter(|d| !d.is_zero()).collect();
    AbelianizationResult { free_rank, torsion }
}
