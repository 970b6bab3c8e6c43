//! *-archimedean components and the semilattice they index.
//!
//! `s` and `t` share a component iff `m(s + s*) ∈ t + S` and
//! `k(t + t*) ∈ s + S` for some `m, k ≥ 1`. The multiples of any element
//! cycle within `|S|` steps, so `m, k ≤ |S|` decides membership.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::semigroup::{ElementId, StarSemigroup};

/// Subsets of a carrier of at most 64 elements.
type Mask = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Classes ordered by least member.
    pub components: Vec<Vec<ElementId>>,
    component_of: Vec<usize>,
    /// `index_add[i * k + j]` is the component containing `S_i + S_j`.
    index_add: Vec<usize>,
}

/// `true` iff some `m(s + s*)` with `1 ≤ m ≤ |S|` lies in `t + S`.
pub fn dominates(s: &StarSemigroup, a: ElementId, b: ElementId) -> bool {
    let shifted = translate_mask(s, b);
    multiples_mask(s, s.add(a, s.star(a))) & shifted != 0
}

fn translate_mask(s: &StarSemigroup, t: ElementId) -> Mask {
    s.elements().fold(0, |m, x| m | 1 << s.add(t, x).0)
}

fn multiples_mask(s: &StarSemigroup, a: ElementId) -> Mask {
    let mut mask = 0;
    let mut x = a;
    for _ in 0..s.len() {
        mask |= 1 << x.0;
        x = s.add(x, a);
    }
    mask
}

impl ComponentDecomposition {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    #[inline]
    pub fn component_of(&self, e: ElementId) -> usize {
        self.component_of[e.0]
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.index_add[i * self.components.len() + j]
    }

    /// `i ≤ j` iff `i + j = j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.add(i, j) == j
    }

    /// Covering pairs `(i, j)` of the order: `i < j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let k = self.components.len();
        let lt = |i: usize, j: usize| i != j && self.leq(i, j);
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Partitions `s` into its *-archimedean components.
pub fn archimedean_components(s: &StarSemigroup) -> Result<ComponentDecomposition> {
    let n = s.len();
    let translates: Vec<Mask> = s.elements().map(|t| translate_mask(s, t)).collect();
    let powers: Vec<Mask> = s
        .elements()
        .map(|a| multiples_mask(s, s.add(a, s.star(a))))
        .collect();
    let reach = |a: usize, b: usize| powers[a] & translates[b] != 0;

    let mut component_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<ElementId>> = Vec::new();
    for a in 0..n {
        if component_of[a] != usize::MAX {
            continue;
        }
        let id = components.len();
        let members: Vec<ElementId> = (a..n)
            .filter(|&b| component_of[b] == usize::MAX && reach(a, b) && reach(b, a))
            .map(ElementId)
            .collect();
        for m in &members {
            component_of[m.0] = id;
        }
        components.push(members);
    }
    // the relation must be an equivalence; a non-transitive pair would show up here
    for class in &components {
        for &x in class {
            for &y in class {
                if !(reach(x.0, y.0) && reach(y.0, x.0)) {
                    return Err(Error::Internal(format!(
                        "component relation is not transitive at ({}, {})",
                        s.name(x),
                        s.name(y)
                    )));
                }
            }
        }
    }

    let k = components.len();
    let mut index_add = vec![usize::MAX; k * k];
    for a in s.elements() {
        if component_of[s.star(a).0] != component_of[a.0] {
            return Err(Error::Internal(format!(
                "component of {} is not closed under *",
                s.name(a)
            )));
        }
        for b in s.elements() {
            let (i, j) = (component_of[a.0], component_of[b.0]);
            let c = component_of[s.add(a, b).0];
            let slot = &mut index_add[i * k + j];
            if *slot == usize::MAX {
                *slot = c;
            } else if *slot != c {
                return Err(Error::Internal(format!(
                    "sums of components {i} and {j} are not contained in one component"
                )));
            }
        }
    }
    if let Some(i) = (0..k).find(|&i| index_add[i * k + i] != i) {
        return Err(Error::Internal(format!("component {i} is not closed under +")));
    }
    Ok(ComponentDecomposition {
        components,
        component_of,
        index_add,
    })
}

/// For `u` with `2u = 0`: `u` shares the component of `0` and `u + S_i ⊆ S_i`
/// for every component.
pub fn involution_component_check(s: &StarSemigroup, dec: &ComponentDecomposition, u: ElementId) -> Result<bool> {
    let zero = s.zero().ok_or(Error::NoZero)?;
    if s.add(u, u) != zero {
        return Err(Error::Precondition(format!("2·{} is not the zero", s.name(u))));
    }
    let same = dec.component_of(u) == dec.component_of(zero);
    let stable = s
        .elements()
        .all(|x| dec.component_of(s.add(u, x)) == dec.component_of(x));
    Ok(same && stable)
}
