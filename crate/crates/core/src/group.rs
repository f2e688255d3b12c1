//! Gain groups: finitely generated abelian groups `Z^n + Z_q1 + ... + Z_qt`
//! and finite symmetric groups `S_m`.
//!
//! Products are written left to right along walks: in `S_m`, `a * b` means
//! "apply `a`, then `b`", so the gain of a walk acts on a sheet index in
//! traversal order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// Cyclic factors in declaration order; modulus `0` stands for `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroupSpec {
    pub moduli: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(moduli: Vec<u64>) -> Self {
        AbelianGroupSpec { moduli }
    }

    /// `Z_q`.
    pub fn cyclic(q: u64) -> Self {
        AbelianGroupSpec { moduli: vec![q] }
    }

    /// `Z`.
    pub fn integers() -> Self {
        AbelianGroupSpec { moduli: vec![0] }
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&q| q == 0).count()
    }

    /// Finite cyclic factors (moduli > 1).
    pub fn torsion(&self) -> Vec<u64> {
        self.moduli.iter().copied().filter(|&q| q > 1).collect()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        self.moduli.iter().try_fold(
            1u64,
            |acc, &q| if q == 0 { None } else { acc.checked_mul(q) },
        )
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// The group generated by each factor separately.
    pub fn factors(&self) -> Vec<AbelianGroupSpec> {
        self.moduli
            .iter()
            .map(|&q| AbelianGroupSpec::cyclic(q))
            .collect()
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return f.write_str("1");
        }
        for (i, &q) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if q == 0 {
                f.write_str("Z")?;
            } else {
                write!(f, "Z{q}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Abelian(AbelianGroupSpec),
    Symmetric(usize),
}

impl GroupSpec {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Abelian(a) => GroupElement::Abelian(vec![0; a.moduli.len()]),
            GroupSpec::Symmetric(m) => GroupElement::Permutation(Permutation::identity(*m)),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupSpec::Abelian(a) => a.is_finite(),
            GroupSpec::Symmetric(_) => true,
        }
    }

    /// Group order, `None` when infinite or too large for `u64`.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Abelian(a) => a.order(),
            GroupSpec::Symmetric(m) => (1..=*m as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)),
        }
    }

    /// Checks that `e` is a reduced element of this group.
    pub fn validate(&self, e: &GroupElement) -> Result<()> {
        match (self, e) {
            (GroupSpec::Abelian(a), GroupElement::Abelian(v)) => {
                if v.len() != a.moduli.len() {
                    return Err(Error::GroupMismatch(format!(
                        "{} coordinates for {}",
                        v.len(),
                        self
                    )));
                }
                for (&x, &q) in v.iter().zip(&a.moduli) {
                    if q > 0 && (x < 0 || x as u64 >= q) {
                        return Err(Error::GroupMismatch(format!(
                            "residue {x} out of range for Z{q}"
                        )));
                    }
                }
                Ok(())
            }
            (GroupSpec::Symmetric(m), GroupElement::Permutation(p)) if p.degree() == *m => Ok(()),
            _ => Err(Error::GroupMismatch(format!(
                "{e} is not an element of {self}"
            ))),
        }
    }

    /// Brings abelian coordinates into range; permutations are returned as is.
    pub fn normalize(&self, e: GroupElement) -> GroupElement {
        match (self, e) {
            (GroupSpec::Abelian(a), GroupElement::Abelian(v)) => GroupElement::Abelian(
                v.iter()
                    .zip(&a.moduli)
                    .map(|(&x, &q)| reduce(x, q))
                    .collect(),
            ),
            (_, e) => e,
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupSpec::Abelian(s), GroupElement::Abelian(x), GroupElement::Abelian(y)) => {
                GroupElement::Abelian(
                    x.iter()
                        .zip(y)
                        .zip(&s.moduli)
                        .map(|((&x, &y), &q)| reduce(x + y, q))
                        .collect(),
                )
            }
            (
                GroupSpec::Symmetric(_),
                GroupElement::Permutation(p),
                GroupElement::Permutation(q),
            ) => GroupElement::Permutation(p.then(q)),
            _ => panic!("group elements {a} and {b} do not belong to {self}"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (GroupSpec::Abelian(s), GroupElement::Abelian(x)) => GroupElement::Abelian(
                x.iter()
                    .zip(&s.moduli)
                    .map(|(&x, &q)| reduce(-x, q))
                    .collect(),
            ),
            (GroupSpec::Symmetric(_), GroupElement::Permutation(p)) => {
                GroupElement::Permutation(p.inverse())
            }
            _ => panic!("group element {a} does not belong to {self}"),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    pub fn element_order(&self, a: &GroupElement) -> Order {
        match (self, a) {
            (GroupSpec::Abelian(s), GroupElement::Abelian(x)) => {
                let mut acc = 1u64;
                for (&x, &q) in x.iter().zip(&s.moduli) {
                    if q == 0 {
                        if x != 0 {
                            return Order::Infinite;
                        }
                    } else {
                        let r = reduce(x, q) as u64;
                        acc = acc.lcm(&(q / r.gcd(&q)));
                    }
                }
                Order::Finite(acc)
            }
            (GroupSpec::Symmetric(_), GroupElement::Permutation(p)) => Order::Finite(p.order()),
            _ => panic!("group element {a} does not belong to {self}"),
        }
    }

    /// All elements of a finite group in a fixed order; `None` when infinite.
    /// Free coordinates can be sampled instead with [`GroupSpec::box_elements`].
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupSpec::Abelian(a) if a.is_finite() => Some(self.box_elements(0)),
            GroupSpec::Abelian(_) => None,
            GroupSpec::Symmetric(m) => Some(
                Permutation::all(*m)
                    .into_iter()
                    .map(GroupElement::Permutation)
                    .collect(),
            ),
        }
    }

    /// Elements whose free coordinates lie in `[-bound, bound]`; every element
    /// of the finite part appears. Only meaningful for abelian groups.
    pub fn box_elements(&self, bound: i64) -> Vec<GroupElement> {
        let GroupSpec::Abelian(a) = self else {
            return self.elements().unwrap_or_default();
        };
        let ranges: Vec<(i64, i64)> = a
            .moduli
            .iter()
            .map(|&q| {
                if q == 0 {
                    (-bound, bound)
                } else {
                    (0, q as i64 - 1)
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for &(lo, hi) in &ranges {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for prefix in &out {
                for x in lo..=hi {
                    let mut v: Vec<i64> = prefix.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(GroupElement::Abelian).collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(a) => write!(f, "{a}"),
            GroupSpec::Symmetric(m) => write!(f, "S{m}"),
        }
    }
}

fn reduce(x: i64, q: u64) -> i64 {
    if q == 0 {
        x
    } else {
        x.rem_euclid(q as i64)
    }
}

/// Order of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_one(self) -> bool {
        self == Order::Finite(1)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Coordinates aligned with [`AbelianGroupSpec::moduli`].
    Abelian(Vec<i64>),
    Permutation(Permutation),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
                f.write_str(&parts.join(","))
            }
            GroupElement::Permutation(p) => write!(f, "{p}"),
        }
    }
}

/// A bijection of `{0, ..., m-1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::GroupMismatch(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of cycles on `m` symbols, each cycle `(a b c)` sending `a -> b -> c -> a`.
    /// Cycles are applied left to right.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Permutation::identity(m);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..m).collect();
            let mut seen = vec![false; m];
            for (k, &a) in cycle.iter().enumerate() {
                if a >= m || seen[a] {
                    return Err(Error::GroupMismatch(format!(
                        "bad cycle {cycle:?} on {m} symbols"
                    )));
                }
                seen[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            p = p.then(&Permutation { images });
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            next.degree(),
            "permutations of different degree"
        );
        Permutation {
            images: self.images.iter().map(|&i| next.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length >= 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Length of the orbit of `i`.
    pub fn orbit_len(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = self.images[i];
        while x != i {
            x = self.images[x];
            k += 1;
        }
        k
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// All `m!` permutations in lexicographic order of image lists.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
