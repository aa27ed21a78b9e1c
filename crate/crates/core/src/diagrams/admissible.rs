//! The recursive admissibility axioms and the enumeration built on them.
//!
//! A diagram `(Γ, J, π)` is admissible when
//!
//! 1. `π ≠ 1` implies `J ≠ ∅`;
//! 2. `J` is stable under both `w₀` and `π`;
//! 3. for every nonempty `(w₀∘π)`-stable `K ⊆ J`, the residue diagram
//!    `(Γ_{S∖K}, J∖K, π_K)` with `π_K = w_{S∖K} ∘ w₀ ∘ π` is admissible.
//!
//! Residues are tracked as node subsets of the ambient graph, so a single
//! root system serves the whole recursion.

use std::collections::HashMap;

use crate::coxeter::{opposition_involution, CoxeterGraph, GraphAutomorphism, NodeSet, RootSystem};
use crate::error::{Error, Result};

/// `(Γ, J, π)`: a graph, a circled node set and a graph automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionDiagram {
    pub graph: CoxeterGraph,
    pub circled: NodeSet,
    pub auto: GraphAutomorphism,
}

impl OppositionDiagram {
    pub fn new(graph: CoxeterGraph, circled: NodeSet, auto: GraphAutomorphism) -> Result<Self> {
        if !circled.is_subset(graph.all()) {
            return Err(Error::InvalidGraph("circled nodes outside the graph".into()));
        }
        let auto = GraphAutomorphism::from_map(&graph, graph.all(), auto.map().to_vec())?;
        Ok(OppositionDiagram { graph, circled, auto })
    }

    pub fn is_admissible(&self) -> Result<bool> {
        let rs = RootSystem::new(&self.graph)?;
        Ok(Admissibility::new(&rs).check(self.circled, &self.auto))
    }
}

/// Orbits of an automorphism on a stable node set: the minimal stable subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StablePartition {
    pub blocks: Vec<NodeSet>,
}

impl StablePartition {
    pub fn new(set: NodeSet, auto: &GraphAutomorphism) -> Result<Self> {
        if auto.apply_set(set) != set {
            return Err(Error::NotStable(format!("{set:?}")));
        }
        let blocks = auto.orbits().into_iter().filter(|b| b.is_subset(set)).collect::<Vec<_>>();
        let mut blocks: Vec<NodeSet> = blocks;
        // orbits of `auto` only cover its domain; nodes outside it are fixed
        for i in set.iter() {
            if !blocks.iter().any(|b| b.contains(i)) {
                blocks.push(NodeSet::singleton(i));
            }
        }
        blocks.sort_by_key(|b| (b.len(), b.iter().next()));
        Ok(StablePartition { blocks })
    }

    /// All nonempty unions of blocks, in bitmask order of block selection.
    pub fn nonempty_unions(&self) -> impl Iterator<Item = NodeSet> + '_ {
        let k = self.blocks.len();
        (1u64..(1u64 << k)).map(move |mask| {
            self.blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(NodeSet::EMPTY, |acc, (_, b)| acc.union(*b))
        })
    }
}

/// `w₀ ∘ π` as an automorphism on the whole graph.
pub fn twisted_opposition(rs: &RootSystem, pi: &GraphAutomorphism) -> GraphAutomorphism {
    let w0 = opposition_involution(rs, rs.graph().all());
    w0.compose(pi).expect("both act on all nodes")
}

/// `π_K = w_{S∖K} ∘ w₀ ∘ π` on `S∖K`; requires `K` stable under `w₀∘π`.
pub fn residue_automorphism(rs: &RootSystem, k: NodeSet, pi: &GraphAutomorphism) -> Result<GraphAutomorphism> {
    let all = rs.graph().all();
    let pi = if pi.domain() == all {
        pi.clone()
    } else {
        return Err(Error::InvalidGraph("π must act on every node".into()));
    };
    residue_auto_in(rs, all, k, &pi, &opposition_involution(rs, all))
}

fn residue_auto_in(
    rs: &RootSystem,
    residue: NodeSet,
    k: NodeSet,
    pi: &GraphAutomorphism,
    w_residue: &GraphAutomorphism,
) -> Result<GraphAutomorphism> {
    let twist = w_residue.compose(pi)?;
    if !k.is_subset(residue) || twist.apply_set(k) != k {
        return Err(Error::NotStable(format!("{k:?}")));
    }
    let rest = residue.difference(k);
    let w_rest = opposition_involution(rs, rest);
    let mut map: Vec<usize> = (0..rs.rank()).collect();
    for x in rest.iter() {
        map[x] = w_rest.apply(twist.apply(x));
    }
    GraphAutomorphism::from_map(rs.graph(), rest, map)
}

type MemoKey = (u64, u64, Vec<u8>);

/// Evaluator for the admissibility axioms, memoised on
/// `(residue node set, residual J, residual automorphism)`.
pub struct Admissibility<'a> {
    rs: &'a RootSystem,
    memo: Option<HashMap<MemoKey, bool>>,
    opposition: HashMap<u64, GraphAutomorphism>,
}

impl<'a> Admissibility<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Admissibility { rs, memo: Some(HashMap::new()), opposition: HashMap::new() }
    }

    /// Same axioms, re-evaluated from scratch at every node of the recursion.
    pub fn without_memo(rs: &'a RootSystem) -> Self {
        Admissibility { rs, memo: None, opposition: HashMap::new() }
    }

    /// Admissibility of `(Γ, J, π)` with `π` acting on all nodes.
    pub fn check(&mut self, j: NodeSet, pi: &GraphAutomorphism) -> bool {
        let all = self.rs.graph().all();
        if !j.is_subset(all) || pi.domain() != all {
            return false;
        }
        self.check_in(all, j, pi)
    }

    fn opposition(&mut self, set: NodeSet) -> GraphAutomorphism {
        let rs = self.rs;
        self.opposition.entry(set.0).or_insert_with(|| opposition_involution(rs, set)).clone()
    }

    fn check_in(&mut self, residue: NodeSet, j: NodeSet, pi: &GraphAutomorphism) -> bool {
        if residue.is_empty() {
            return true;
        }
        if residue.len() == 1 {
            // base cases (•, {}, id) and (•, {s}, id); π is necessarily trivial
            return true;
        }
        let key = (residue.0, j.0, residue.iter().map(|i| pi.apply(i) as u8).collect::<Vec<_>>());
        if let Some(memo) = &self.memo {
            if let Some(&v) = memo.get(&key) {
                return v;
            }
        }
        let v = self.evaluate(residue, j, pi);
        if let Some(memo) = &mut self.memo {
            memo.insert(key, v);
        }
        v
    }

    fn evaluate(&mut self, residue: NodeSet, j: NodeSet, pi: &GraphAutomorphism) -> bool {
        // axiom (1)
        if !pi.is_identity() && j.is_empty() {
            return false;
        }
        // axiom (2)
        let w = self.opposition(residue);
        if w.apply_set(j) != j || pi.apply_set(j) != j {
            return false;
        }
        // axiom (3): K = ∅ reproduces the diagram itself and is skipped
        let twist = w.compose(pi).expect("same domain");
        let partition = StablePartition::new(j, &twist.restrict(j).expect("J is stable"))
            .expect("J is stable");
        for k in partition.nonempty_unions().collect::<Vec<_>>() {
            let pik = residue_auto_in(self.rs, residue, k, pi, &w).expect("K is a union of stable blocks");
            if !self.check_in(residue.difference(k), j.difference(k), &pik) {
                return false;
            }
        }
        true
    }
}

/// Sort key for node sets: size first, then the label sequence.
pub fn sort_sets(graph: &CoxeterGraph, sets: &mut [NodeSet]) {
    sets.sort_by_key(|s| (s.len(), graph.set_labels(*s)));
}

/// All admissible `J` for `(Γ, π)`. Candidates are unions of orbits of the
/// group generated by `w₀` and `π` (axiom (2) as a pre-filter).
pub fn enumerate_admissible(rs: &RootSystem, pi: &GraphAutomorphism) -> Vec<NodeSet> {
    let all = rs.graph().all();
    let w0 = opposition_involution(rs, all);
    let mut blocks: Vec<NodeSet> = Vec::new();
    for i in all.iter() {
        if blocks.iter().any(|b| b.contains(i)) {
            continue;
        }
        let mut orbit = NodeSet::singleton(i);
        loop {
            let next = orbit.union(w0.apply_set(orbit)).union(pi.apply_set(orbit));
            if next == orbit {
                break;
            }
            orbit = next;
        }
        blocks.push(orbit);
    }
    let mut adm = Admissibility::new(rs);
    let mut out: Vec<NodeSet> = (0u64..(1u64 << blocks.len()))
        .map(|mask| {
            blocks
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .fold(NodeSet::EMPTY, |acc, (_, s)| acc.union(*s))
        })
        .filter(|&j| adm.check(j, pi))
        .collect();
    sort_sets(rs.graph(), &mut out);
    out
}

/// `diam(W) − diam(W_{S∖J})`.
pub fn displacement(rs: &RootSystem, j: NodeSet) -> usize {
    let all = rs.graph().all();
    rs.parabolic_positive_count(all) - rs.parabolic_positive_count(all.difference(j))
}

/// Closes a family of node sets under the graph automorphisms commuting
/// with `π` (for groups where `Aut(Γ)` is abelian this is all of `Aut(Γ)`).
pub fn expand_under_automorphisms(graph: &CoxeterGraph, pi: &GraphAutomorphism, sets: &[NodeSet]) -> Vec<NodeSet> {
    let centraliser: Vec<GraphAutomorphism> = crate::coxeter::graph_automorphisms(graph)
        .into_iter()
        .filter(|a| a.compose(pi).ok() == pi.compose(a).ok())
        .collect();
    let mut out: Vec<NodeSet> = sets
        .iter()
        .flat_map(|&s| centraliser.iter().map(move |a| a.apply_set(s)))
        .collect();
    sort_sets(graph, &mut out);
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{canonical_automorphism, parse_type_string};

    fn setup(t: &str) -> (CoxeterGraph, RootSystem) {
        let g = parse_type_string(t).unwrap();
        let rs = RootSystem::new(&g).unwrap();
        (g, rs)
    }

    fn id(g: &CoxeterGraph) -> GraphAutomorphism {
        GraphAutomorphism::identity(g.rank(), g.all())
    }

    fn labels(g: &CoxeterGraph, sets: &[NodeSet]) -> Vec<Vec<u32>> {
        sets.iter().map(|s| g.set_labels(*s)).collect()
    }

    #[test]
    fn residue_automorphisms() {
        let (e7, rs) = setup("E7");
        let k = e7.node_set(&[7]).unwrap();
        let r = residue_automorphism(&rs, k, &id(&e7)).unwrap();
        assert_eq!(r.cycle_notation(&e7), "(1,6)(3,5)");

        let (a3, rs) = setup("A3");
        let r = residue_automorphism(&rs, a3.node_set(&[2]).unwrap(), &id(&a3)).unwrap();
        assert_eq!(r.cycle_notation(&a3), "(1,3)");
        assert!(residue_automorphism(&rs, a3.node_set(&[1]).unwrap(), &id(&a3)).is_err());

        let (d4, rs) = setup("D4");
        let tri = GraphAutomorphism::parse_cycles(&d4, "(1,3,4)").unwrap();
        let r = residue_automorphism(&rs, d4.node_set(&[2]).unwrap(), &tri).unwrap();
        assert_eq!(r.cycle_notation(&d4), "(1,3,4)");

        let (a4, rs) = setup("A4");
        let rev = canonical_automorphism(&a4, 2).unwrap();
        assert_eq!(residue_automorphism(&rs, NodeSet::EMPTY, &rev).unwrap(), rev);
    }

    #[test]
    fn base_cases_and_axioms() {
        let (a1, rs) = setup("A1");
        let mut adm = Admissibility::new(&rs);
        assert!(adm.check(NodeSet::EMPTY, &id(&a1)));
        assert!(adm.check(a1.all(), &id(&a1)));

        let (e7, rs) = setup("E7");
        let mut adm = Admissibility::new(&rs);
        assert!(!adm.check(e7.node_set(&[1, 3, 4, 6, 7]).unwrap(), &id(&e7)));
        assert!(adm.check(e7.node_set(&[1, 6]).unwrap(), &id(&e7)));

        let (a2, rs) = setup("A2");
        let swap = canonical_automorphism(&a2, 2).unwrap();
        assert!(!Admissibility::new(&rs).check(NodeSet::EMPTY, &swap));
    }

    #[test]
    fn enumerations() {
        let (e7, rs) = setup("E7");
        assert_eq!(
            labels(&e7, &enumerate_admissible(&rs, &id(&e7))),
            vec![vec![], vec![1], vec![1, 6], vec![1, 6, 7], vec![1, 3, 4, 6], vec![1, 2, 3, 4, 5, 6, 7]]
        );
        let (e6, rs) = setup("E6");
        let flip = canonical_automorphism(&e6, 2).unwrap();
        assert_eq!(labels(&e6, &enumerate_admissible(&rs, &flip)), vec![vec![1, 6], vec![1, 2, 3, 4, 5, 6]]);
        let (a4, rs) = setup("A4");
        assert_eq!(labels(&a4, &enumerate_admissible(&rs, &id(&a4))), vec![vec![], vec![1, 4], vec![1, 2, 3, 4]]);
        let (d4, rs) = setup("D4");
        let tri = canonical_automorphism(&d4, 3).unwrap();
        assert_eq!(labels(&d4, &enumerate_admissible(&rs, &tri)), vec![vec![1, 3, 4], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn displacements() {
        let (e7, rs) = setup("E7");
        let d = |l: &[u32]| displacement(&rs, e7.node_set(l).unwrap());
        assert_eq!(d(&[]), 0);
        assert_eq!(d(&[1]), 33);
        assert_eq!(d(&[1, 6]), 50);
        assert_eq!(d(&[1, 6, 7]), 51);
        assert_eq!(d(&[1, 3, 4, 6]), 60);
        assert_eq!(d(&[1, 2, 3, 4, 5, 6, 7]), 63);
        let (a3, rs) = setup("A3");
        assert_eq!(displacement(&rs, a3.node_set(&[2]).unwrap()), 4);
    }

    #[test]
    fn stable_partition_blocks() {
        let (a5, rs) = setup("A5");
        let w0 = opposition_involution(&rs, a5.all());
        let p = StablePartition::new(a5.all(), &w0).unwrap();
        assert_eq!(labels(&a5, &p.blocks), vec![vec![3], vec![1, 5], vec![2, 4]]);
        assert!(StablePartition::new(a5.node_set(&[1]).unwrap(), &w0).is_err());
    }
}
