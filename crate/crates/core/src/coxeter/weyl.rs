//! Weyl group elements as permutations of the root list.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::graph::{CoxeterGraph, GraphAutomorphism, NodeSet};
use super::roots::RootSystem;
use crate::error::{Error, Result};

/// Refuse parabolic enumeration beyond this many elements.
pub const PARABOLIC_CAP: usize = 1_000_000;

/// An element `w` of `W`, stored as the permutation `i ↦ index(w·root_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Arc<[u16]>,
    length: u32,
    system: u64,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len={})", self.length)
    }
}

impl WeylElement {
    fn from_perm(rs: &RootSystem, perm: Vec<u16>) -> Self {
        WeylElement::with_system(perm, rs.id())
    }

    // Positive roots occupy the first half of the list.
    fn with_system(perm: Vec<u16>, system: u64) -> Self {
        let half = perm.len() / 2;
        let length = perm[..half].iter().filter(|&&j| j as usize >= half).count() as u32;
        WeylElement { perm: perm.into(), length, system }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement::from_perm(rs, (0..rs.len() as u16).collect())
    }

    pub fn simple_reflection(rs: &RootSystem, s: usize) -> Self {
        WeylElement::from_perm(rs, (0..rs.len()).map(|i| rs.reflect(s, i) as u16).collect())
    }

    /// Product of simple reflections `s_{word[0]} ⋯ s_{word[k-1]}`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(rs);
        for &s in word {
            w = w.mul_simple(rs, s);
        }
        w
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Index of `w·root_i`.
    pub fn act(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// `self · other`.
    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.system != other.system || self.perm.len() != other.perm.len() {
            return Err(Error::MismatchedSystems);
        }
        let perm: Vec<u16> = other.perm.iter().map(|&j| self.perm[j as usize]).collect();
        Ok(WeylElement::with_system(perm, self.system))
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u16; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j as usize] = i as u16;
        }
        WeylElement { perm: perm.into(), length: self.length, system: self.system }
    }

    /// `w·s` for the simple reflection at node index `s`.
    pub fn mul_simple(&self, rs: &RootSystem, s: usize) -> WeylElement {
        let perm: Vec<u16> = (0..rs.len()).map(|i| self.perm[rs.reflect(s, i)]).collect();
        WeylElement::from_perm(rs, perm)
    }

    /// `s·w`.
    pub fn simple_mul(&self, rs: &RootSystem, s: usize) -> WeylElement {
        let perm: Vec<u16> = self.perm.iter().map(|&j| rs.reflect(s, j as usize) as u16).collect();
        WeylElement::from_perm(rs, perm)
    }

    /// `ℓ(w·s) < ℓ(w)`, i.e. `w(α_s) < 0`.
    pub fn has_right_descent(&self, rs: &RootSystem, s: usize) -> bool {
        !rs.is_positive(self.act(s))
    }

    /// `ℓ(s·w) < ℓ(w)`, i.e. `w⁻¹(α_s) < 0`.
    pub fn has_left_descent(&self, rs: &RootSystem, s: usize) -> bool {
        let target = s as u16;
        let pre = self.perm.iter().position(|&j| j == target).expect("permutation");
        !rs.is_positive(pre)
    }

    /// A reduced word, read off by stripping right descents.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while w.length > 0 {
            let s = (0..rs.rank()).find(|&s| w.has_right_descent(rs, s)).expect("nontrivial element has a descent");
            word.push(s);
            w = w.mul_simple(rs, s);
        }
        word.reverse();
        word
    }
}

/// `w_J`, built by appending the lowest length-increasing generator of `J`
/// until none remains.
pub fn longest_element(rs: &RootSystem, j: NodeSet) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    while let Some(s) = j.iter().find(|&s| !w.has_right_descent(rs, s)) {
        w = w.mul_simple(rs, s);
    }
    w
}

/// The diagram automorphism `s ↦ t` of `Γ_J` with `w_J(α_s) = −α_t`.
pub fn opposition_involution(rs: &RootSystem, j: NodeSet) -> GraphAutomorphism {
    let w = longest_element(rs, j);
    let mut map: Vec<usize> = (0..rs.rank()).collect();
    for s in j.iter() {
        map[s] = rs.negate(w.act(s));
    }
    GraphAutomorphism::from_map(rs.graph(), j, map).expect("opposition is a graph automorphism")
}

/// All elements of `W_J` by closure over the generators of `J`.
pub fn parabolic_elements(rs: &RootSystem, j: NodeSet, cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(w) = queue.pop_front() {
        for s in j.iter() {
            let v = w.mul_simple(rs, s);
            if seen.insert(v.clone()) {
                if out.len() >= cap {
                    return Err(Error::Capacity(format!("parabolic subgroup exceeds {cap} elements")));
                }
                out.push(v.clone());
                queue.push_back(v);
            }
        }
    }
    Ok(out)
}

/// The unique minimal-length element of `W_L · w · W_R`, obtained by stripping
/// left descents in `L` and right descents in `R`.
pub fn minimal_double_coset_rep(rs: &RootSystem, left: NodeSet, right: NodeSet, w: &WeylElement) -> WeylElement {
    let mut u = w.clone();
    loop {
        if let Some(s) = left.iter().find(|&s| u.has_left_descent(rs, s)) {
            u = u.simple_mul(rs, s);
        } else if let Some(s) = right.iter().find(|&s| u.has_right_descent(rs, s)) {
            u = u.mul_simple(rs, s);
        } else {
            return u;
        }
    }
}

/// `target ∈ W_L · w · W_R`.
pub fn double_coset_contains(
    rs: &RootSystem,
    left: NodeSet,
    right: NodeSet,
    w: &WeylElement,
    target: &WeylElement,
) -> bool {
    minimal_double_coset_rep(rs, left, right, w) == minimal_double_coset_rep(rs, left, right, target)
}

/// `w₀ ∈ W_L · w · W_R`: the opposition test for simplices.
pub fn double_coset_contains_w0(rs: &RootSystem, left: NodeSet, right: NodeSet, w: &WeylElement) -> bool {
    let w0 = longest_element(rs, rs.graph().all());
    double_coset_contains(rs, left, right, w, &w0)
}

/// Reference implementation of [`double_coset_contains`]: enumerates `W_L`
/// and `W_R` and tests every product.
pub fn double_coset_contains_enumerated(
    rs: &RootSystem,
    left: NodeSet,
    right: NodeSet,
    w: &WeylElement,
    target: &WeylElement,
) -> Result<bool> {
    let wl = parabolic_elements(rs, left, PARABOLIC_CAP)?;
    let wr = parabolic_elements(rs, right, PARABOLIC_CAP)?;
    let coset: HashSet<WeylElement> = wl.iter().map(|x| x.mul(w).expect("same system")).collect();
    Ok(coset.iter().any(|xw| wr.iter().any(|y| xw.mul(y).expect("same system") == *target)))
}

/// `x ∈ W_K`.
pub fn in_parabolic(rs: &RootSystem, k: NodeSet, x: &WeylElement) -> bool {
    minimal_double_coset_rep(rs, k, NodeSet::EMPTY, x).is_identity()
}

/// A fully enumerated finite Weyl group with an index for lookups.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem, cap: usize) -> Result<Self> {
        let elements = parabolic_elements(rs, rs.graph().all(), cap)?;
        let index = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(WeylGroup { elements, index })
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Convenience: graph plus its root system.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    pub roots: Arc<RootSystem>,
}

impl CoxeterSystem {
    pub fn new(graph: &CoxeterGraph) -> Result<Self> {
        Ok(CoxeterSystem { roots: Arc::new(RootSystem::new(graph)?) })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        self.roots.graph()
    }
}
