//! Labelled Coxeter graphs, node sets and graph automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of nodes supported by [`NodeSet`].
pub const MAX_RANK: usize = 32;

/// A subset of the nodes of a graph, stored as a bitmask over node *indices*
/// (positions in [`CoxeterGraph::labels`]), not over labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        NodeSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        NodeSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A Coxeter graph: labelled nodes and bonds with labels `m >= 3`.
/// Pairs without a bond commute (`m = 2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    labels: Vec<u32>,
    bonds: BTreeMap<(usize, usize), u32>,
    name: Option<String>,
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({})", self.display_name())
    }
}

impl CoxeterGraph {
    /// Builds a graph from node labels and bonds given by label.
    pub fn new(labels: Vec<u32>, bonds: &[(u32, u32, u32)]) -> Result<Self> {
        if labels.len() > MAX_RANK {
            return Err(Error::InvalidGraph(format!(
                "rank {} exceeds the supported maximum {MAX_RANK}",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidGraph(format!("duplicate node label {l}")));
            }
        }
        let index = |l: u32| {
            labels
                .iter()
                .position(|&x| x == l)
                .ok_or_else(|| Error::InvalidGraph(format!("bond references unknown node {l}")))
        };
        let mut map = BTreeMap::new();
        for &(a, b, m) in bonds {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at node {a}")));
            }
            if m < 3 {
                return Err(Error::InvalidGraph(format!("bond label {m} < 3 on {a}-{b}")));
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, m).is_some() {
                return Err(Error::InvalidGraph(format!("multiple bonds between {a} and {b}")));
            }
        }
        Ok(CoxeterGraph { labels, bonds: map, name: None })
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The compact type name if known, otherwise a generic description.
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("graph[{}]", self.rank()))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    /// Bond label between two node indices (`1` on the diagonal, `2` if unbonded).
    pub fn m(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        *self.bonds.get(&(i.min(j), i.max(j))).unwrap_or(&2)
    }

    /// Bonds as `(index, index, m)` triples with the first index smaller.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.bonds.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    /// Node set from labels; fails on unknown labels.
    pub fn node_set(&self, labels: &[u32]) -> Result<NodeSet> {
        let mut s = NodeSet::EMPTY;
        for &l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::Parse(format!("unknown node label {l}")))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Labels of the nodes of `set`, in index order.
    pub fn set_labels(&self, set: NodeSet) -> Vec<u32> {
        set.iter().map(|i| self.labels[i]).collect()
    }

    /// Connected components as node sets, ordered by smallest index.
    pub fn components(&self) -> Vec<NodeSet> {
        let n = self.rank();
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = NodeSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !comp.contains(w) && self.m(v, w) >= 3 {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Disjoint union; the second graph's labels are shifted past the first's maximum.
    pub fn product(&self, other: &CoxeterGraph) -> CoxeterGraph {
        let shift = self.labels.iter().copied().max().unwrap_or(0);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| l + shift));
        let mut bonds = self.bonds.clone();
        let off = self.rank();
        for (&(i, j), &m) in &other.bonds {
            bonds.insert((i + off, j + off), m);
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        CoxeterGraph { labels, bonds, name }
    }

    /// Renders the line-based graph format.
    pub fn to_graph_format(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            s.push_str(&format!("node {l}\n"));
        }
        for (i, j, m) in self.bonds() {
            s.push_str(&format!("bond {} {} {m}\n", self.labels[i], self.labels[j]));
        }
        s
    }

    /// Parses the line-based format: `node <label>` lines, then `bond <a> <b> <m>`
    /// lines; `#` starts a comment.
    pub fn parse_graph_format(text: &str) -> Result<CoxeterGraph> {
        let mut labels = Vec::new();
        let mut bonds = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {s:?}", lineno + 1)))
            };
            match parts.as_slice() {
                ["node", l] => labels.push(num(l)?),
                ["bond", a, b, m] => bonds.push((num(a)?, num(b)?, num(m)?)),
                _ => return Err(Error::Parse(format!("line {}: unrecognised {line:?}", lineno + 1))),
            }
        }
        if labels.is_empty() {
            return Err(Error::Parse("graph has no nodes".into()));
        }
        CoxeterGraph::new(labels, &bonds)
    }
}

/// Irreducible spherical types with Bourbaki node numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl IrreducibleType {
    pub fn rank(self) -> usize {
        match self {
            IrreducibleType::A(n)
            | IrreducibleType::B(n)
            | IrreducibleType::D(n)
            | IrreducibleType::E(n)
            | IrreducibleType::H(n) => n,
            IrreducibleType::F4 => 4,
            IrreducibleType::I2(_) => 2,
        }
    }

    pub fn name(self) -> String {
        match self {
            IrreducibleType::A(n) => format!("A{n}"),
            IrreducibleType::B(n) => format!("B{n}"),
            IrreducibleType::D(n) => format!("D{n}"),
            IrreducibleType::E(n) => format!("E{n}"),
            IrreducibleType::F4 => "F4".into(),
            IrreducibleType::H(n) => format!("H{n}"),
            IrreducibleType::I2(m) => format!("I2({m})"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown type name {s:?}"));
        if let Some(rest) = s.strip_prefix("I2(") {
            let m: u32 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if m < 3 {
                return Err(Error::InvalidGraph(format!("bond label {m} < 3")));
            }
            return Ok(IrreducibleType::I2(m));
        }
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) if n >= 1 => IrreducibleType::A(n),
            ('B' | 'C', n) if n >= 2 => IrreducibleType::B(n),
            ('D', n) if n >= 4 => IrreducibleType::D(n),
            ('E', 6..=8) => IrreducibleType::E(n),
            ('F', 4) => IrreducibleType::F4,
            ('G', 2) => IrreducibleType::I2(6),
            ('H', 3 | 4) => IrreducibleType::H(n),
            _ => return Err(bad()),
        };
        if t.rank() > MAX_RANK {
            return Err(Error::InvalidGraph(format!("rank {} too large", t.rank())));
        }
        Ok(t)
    }

    /// Coxeter graph with Bourbaki numbering. For `H3`/`H4` the bond 5 sits
    /// on the edge between the two highest labels.
    pub fn graph(self) -> CoxeterGraph {
        let n = self.rank();
        let labels: Vec<u32> = (1..=n as u32).collect();
        let chain = |last: u32| -> Vec<(u32, u32, u32)> {
            (1..n as u32)
                .map(|i| (i, i + 1, if i + 1 == n as u32 { last } else { 3 }))
                .collect()
        };
        let bonds: Vec<(u32, u32, u32)> = match self {
            IrreducibleType::A(_) => chain(3),
            IrreducibleType::B(_) => chain(4),
            IrreducibleType::H(_) => chain(5),
            IrreducibleType::I2(m) => vec![(1, 2, m)],
            IrreducibleType::F4 => vec![(1, 2, 3), (2, 3, 4), (3, 4, 3)],
            IrreducibleType::D(n) => {
                let n = n as u32;
                let mut b: Vec<_> = (1..n - 1).map(|i| (i, i + 1, 3)).collect();
                b.push((n - 2, n, 3));
                b
            }
            IrreducibleType::E(n) => {
                let mut b = vec![(1, 3, 3), (2, 4, 3)];
                b.extend((3..n as u32).map(|i| (i, i + 1, 3)));
                b
            }
        };
        CoxeterGraph::new(labels, &bonds)
            .expect("built-in types are well formed")
            .with_name(self.name())
    }
}

/// Parses a compact type string such as `E7`, `I2(5)` or `A2xA1xA2`.
pub fn parse_type_string(spec: &str) -> Result<CoxeterGraph> {
    let mut graph: Option<CoxeterGraph> = None;
    for part in spec.split('x') {
        let g = IrreducibleType::parse(part)?.graph();
        graph = Some(match graph {
            None => g,
            Some(acc) => acc.product(&g),
        });
    }
    let graph = graph.ok_or_else(|| Error::Parse("empty type string".into()))?;
    if graph.rank() > MAX_RANK {
        return Err(Error::InvalidGraph(format!("rank {} too large", graph.rank())));
    }
    Ok(graph)
}

/// A bond-preserving bijection of a node subset (`domain`). Nodes outside the
/// domain are mapped to themselves and never inspected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphAutomorphism {
    domain: NodeSet,
    map: Vec<usize>,
}

impl fmt::Debug for GraphAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphAutomorphism{:?}", self.cycles())
    }
}

impl GraphAutomorphism {
    pub fn identity(rank: usize, domain: NodeSet) -> Self {
        GraphAutomorphism { domain, map: (0..rank).collect() }
    }

    /// Builds from an index map (length = graph rank), validating bijectivity on
    /// the domain and bond preservation.
    pub fn from_map(graph: &CoxeterGraph, domain: NodeSet, map: Vec<usize>) -> Result<Self> {
        let n = graph.rank();
        if map.len() != n {
            return Err(Error::InvalidGraph("automorphism map has wrong length".into()));
        }
        let mut image = NodeSet::EMPTY;
        for i in domain.iter() {
            if !domain.contains(map[i]) {
                return Err(Error::InvalidGraph("automorphism leaves its domain".into()));
            }
            image.insert(map[i]);
        }
        if image != domain {
            return Err(Error::InvalidGraph("automorphism is not a bijection".into()));
        }
        for i in domain.iter() {
            for j in domain.iter() {
                if graph.m(i, j) != graph.m(map[i], map[j]) {
                    return Err(Error::InvalidGraph("map does not preserve bond labels".into()));
                }
            }
        }
        let mut map = map;
        for (i, slot) in map.iter_mut().enumerate() {
            if !domain.contains(i) {
                *slot = i;
            }
        }
        Ok(GraphAutomorphism { domain, map })
    }

    /// Parses cycle notation over labels, e.g. `(1,3,4)(2,5)` or `id`.
    pub fn parse_cycles(graph: &CoxeterGraph, text: &str) -> Result<Self> {
        let mut map: Vec<usize> = (0..graph.rank()).collect();
        let t = text.trim();
        if !(t.is_empty() || t == "id" || t == "()") {
            let mut rest = t;
            while !rest.is_empty() {
                let open = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("bad cycle notation {text:?}")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
                let labels: Vec<u32> = open[..close]
                    .split([',', ' '])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad label {s:?}"))))
                    .collect::<Result<_>>()?;
                let idx: Vec<usize> = labels
                    .iter()
                    .map(|&l| graph.index_of(l).ok_or_else(|| Error::Parse(format!("unknown label {l}"))))
                    .collect::<Result<_>>()?;
                for k in 0..idx.len() {
                    map[idx[k]] = idx[(k + 1) % idx.len()];
                }
                rest = open[close + 1..].trim_start();
            }
        }
        GraphAutomorphism::from_map(graph, graph.all(), map)
    }

    pub fn domain(&self) -> NodeSet {
        self.domain
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply_set(&self, set: NodeSet) -> NodeSet {
        NodeSet::from_indices(set.iter().map(|i| self.map[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.domain.iter().all(|i| self.map[i] == i)
    }

    /// `self ∘ other` (apply `other` first). Domains must coincide.
    pub fn compose(&self, other: &GraphAutomorphism) -> Result<Self> {
        if self.domain != other.domain || self.map.len() != other.map.len() {
            return Err(Error::InvalidGraph("composing automorphisms on different domains".into()));
        }
        let map = (0..self.map.len()).map(|i| self.map[other.map[i]]).collect();
        Ok(GraphAutomorphism { domain: self.domain, map })
    }

    pub fn inverse(&self) -> Self {
        let mut map = self.map.clone();
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        GraphAutomorphism { domain: self.domain, map }
    }

    /// Restriction to a stable subset of the domain.
    pub fn restrict(&self, sub: NodeSet) -> Result<Self> {
        if !sub.is_subset(self.domain) || self.apply_set(sub) != sub {
            return Err(Error::NotStable(format!("{sub:?}")));
        }
        let map = (0..self.map.len()).map(|i| if sub.contains(i) { self.map[i] } else { i }).collect();
        Ok(GraphAutomorphism { domain: sub, map })
    }

    /// Order of the permutation on its domain.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Nontrivial cycles over indices, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for i in self.domain.iter() {
            if seen.contains(i) {
                continue;
            }
            let mut cyc = vec![i];
            seen.insert(i);
            let mut j = self.map[i];
            while j != i {
                cyc.push(j);
                seen.insert(j);
                j = self.map[j];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle notation over labels, `id` for the identity.
    pub fn cycle_notation(&self, graph: &CoxeterGraph) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".into();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|&i| graph.label(i).to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    /// Orbits on the domain, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for i in self.domain.iter() {
            if seen.contains(i) {
                continue;
            }
            let mut orb = NodeSet::singleton(i);
            let mut j = self.map[i];
            while j != i {
                orb.insert(j);
                j = self.map[j];
            }
            seen = seen.union(orb);
            out.push(orb);
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// All bond-preserving automorphisms of the graph, sorted by image vector.
pub fn graph_automorphisms(graph: &CoxeterGraph) -> Vec<GraphAutomorphism> {
    let n = graph.rank();
    let degree: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut d: Vec<u32> = (0..n).filter(|&j| j != i).map(|j| graph.m(i, j)).collect();
            d.sort_unstable();
            d
        })
        .collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        graph: &CoxeterGraph,
        degree: &[Vec<u32>],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<GraphAutomorphism>,
    ) {
        let n = graph.rank();
        if k == n {
            out.push(GraphAutomorphism { domain: graph.all(), map: map.clone() });
            return;
        }
        for c in 0..n {
            if used[c] || degree[c] != degree[k] {
                continue;
            }
            if (0..k).any(|j| graph.m(j, k) != graph.m(map[j], c)) {
                continue;
            }
            map[k] = c;
            used[c] = true;
            search(graph, degree, k + 1, map, used, out);
            used[c] = false;
        }
        map[k] = usize::MAX;
    }
    search(graph, &degree, 0, &mut map, &mut used, &mut out);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

/// The canonical automorphism of the given order: the one with the
/// lexicographically smallest image vector.
pub fn canonical_automorphism(graph: &CoxeterGraph, order: usize) -> Option<GraphAutomorphism> {
    graph_automorphisms(graph).into_iter().find(|a| a.order() == order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_named_types() {
        let a1 = parse_type_string("A1").unwrap();
        assert_eq!(a1.rank(), 1);
        assert_eq!(a1.bonds().count(), 0);

        let e7 = parse_type_string("E7").unwrap();
        assert_eq!(e7.rank(), 7);
        assert!(e7.bonds().all(|(_, _, m)| m == 3));
        let (i2, i4) = (e7.index_of(2).unwrap(), e7.index_of(4).unwrap());
        assert_eq!(e7.m(i2, i4), 3);
        assert_eq!(e7.bonds().count(), 6);

        let i25 = parse_type_string("I2(5)").unwrap();
        assert_eq!(i25.bonds().collect::<Vec<_>>(), vec![(0, 1, 5)]);
    }

    #[test]
    fn products_shift_labels() {
        let g = parse_type_string("A2xA1xA2").unwrap();
        assert_eq!(g.labels(), &[1, 2, 3, 4, 5]);
        assert_eq!(g.components().len(), 3);
        assert_eq!(g.m(3, 4), 3);
        assert_eq!(g.m(1, 2), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_type_string("Q3").is_err());
        assert!(parse_type_string("I2(2)").is_err());
        assert!(CoxeterGraph::new(vec![1, 2], &[(1, 2, 2)]).is_err());
        assert!(CoxeterGraph::new(vec![1, 1], &[]).is_err());
        assert!(CoxeterGraph::parse_graph_format("node 1\nbond 1 1 3\n").is_err());
    }

    #[test]
    fn graph_format_round_trip() {
        let g = parse_type_string("D5").unwrap();
        let text = format!("# D5\n{}", g.to_graph_format());
        let h = CoxeterGraph::parse_graph_format(&text).unwrap();
        assert_eq!(g.labels(), h.labels());
        assert_eq!(g.bonds().collect::<Vec<_>>(), h.bonds().collect::<Vec<_>>());
    }

    #[test]
    fn automorphism_counts() {
        let count = |s: &str| graph_automorphisms(&parse_type_string(s).unwrap()).len();
        assert_eq!(count("A5"), 2);
        assert_eq!(count("B4"), 1);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("E8"), 1);
        assert_eq!(count("F4"), 2);
        assert_eq!(count("H3"), 1);
        assert_eq!(count("I2(7)"), 2);
        assert_eq!(count("A1xA1"), 2);
    }

    #[test]
    fn canonical_choices() {
        let d4 = parse_type_string("D4").unwrap();
        let swap = canonical_automorphism(&d4, 2).unwrap();
        assert_eq!(swap.cycle_notation(&d4), "(3,4)");
        let tri = canonical_automorphism(&d4, 3).unwrap();
        assert_eq!(tri.cycle_notation(&d4), "(1,3,4)");
    }

    #[test]
    fn cycle_parsing() {
        let d4 = parse_type_string("D4").unwrap();
        let p = GraphAutomorphism::parse_cycles(&d4, "(1,3,4)").unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.inverse().compose(&p).unwrap(), GraphAutomorphism::identity(4, d4.all()));
        assert!(GraphAutomorphism::parse_cycles(&d4, "(1,2)").is_err());
        assert!(GraphAutomorphism::parse_cycles(&d4, "id").unwrap().is_identity());
    }
}
