//! Per-diagram records for the command-line reports.

use serde::Serialize;

use super::admissible::{displacement, twisted_opposition, Admissibility, StablePartition};
use crate::coxeter::{CoxeterGraph, GraphAutomorphism, NodeSet, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramRecord {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub pi: String,
    pub circled: Vec<u32>,
    pub admissible: bool,
    pub displacement: usize,
    /// Circled nodes grouped into minimal `(w₀∘π)`-stable blocks, e.g. `[1][6]`.
    pub rendering: String,
}

impl DiagramRecord {
    pub fn new(rs: &RootSystem, j: NodeSet, pi: &GraphAutomorphism, admissible: bool) -> Self {
        let graph = rs.graph();
        DiagramRecord {
            type_name: graph.display_name(),
            rank: graph.rank(),
            pi: pi.cycle_notation(graph),
            circled: graph.set_labels(j),
            admissible,
            displacement: displacement(rs, j),
            rendering: render_circled(rs, j, pi),
        }
    }

    /// Evaluates admissibility afresh.
    pub fn evaluate(rs: &RootSystem, j: NodeSet, pi: &GraphAutomorphism) -> Self {
        let ok = Admissibility::new(rs).check(j, pi);
        DiagramRecord::new(rs, j, pi, ok)
    }

    /// `key=value` line.
    pub fn to_kv(&self) -> String {
        let circled: Vec<String> = self.circled.iter().map(u32::to_string).collect();
        format!(
            "type={} rank={} pi={} circled={} admissible={} displacement={}",
            self.type_name,
            self.rank,
            self.pi,
            circled.join(","),
            self.admissible,
            self.displacement
        )
    }

    /// `E7 pi=id circled=[1][6]`.
    pub fn to_text(&self) -> String {
        format!("{} pi={} circled={}", self.type_name, self.pi, self.rendering)
    }
}

/// Brackets around each minimal stable block of `J`; `J` not stable under
/// `w₀∘π` falls back to one bracket per node.
pub fn render_circled(rs: &RootSystem, j: NodeSet, pi: &GraphAutomorphism) -> String {
    let graph: &CoxeterGraph = rs.graph();
    if j.is_empty() {
        return "[]".into();
    }
    let twist = twisted_opposition(rs, pi);
    let blocks = match twist.restrict(j).and_then(|t| StablePartition::new(j, &t)) {
        Ok(p) => p.blocks,
        Err(_) => j.iter().map(NodeSet::singleton).collect(),
    };
    let mut blocks: Vec<Vec<u32>> = blocks.iter().map(|b| graph.set_labels(*b)).collect();
    blocks.sort();
    blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(u32::to_string).collect();
            format!("[{}]", inner.join(","))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_type_string;

    #[test]
    fn renders_blocks() {
        let e7 = parse_type_string("E7").unwrap();
        let rs = RootSystem::new(&e7).unwrap();
        let id = GraphAutomorphism::identity(7, e7.all());
        let rec = DiagramRecord::evaluate(&rs, e7.node_set(&[1, 6]).unwrap(), &id);
        assert_eq!(rec.to_text(), "E7 pi=id circled=[1][6]");
        assert_eq!(rec.to_kv(), "type=E7 rank=7 pi=id circled=1,6 admissible=true displacement=50");

        let a4 = parse_type_string("A4").unwrap();
        let rs = RootSystem::new(&a4).unwrap();
        let id = GraphAutomorphism::identity(4, a4.all());
        assert_eq!(render_circled(&rs, a4.node_set(&[1, 4]).unwrap(), &id), "[1,4]");
        assert_eq!(render_circled(&rs, NodeSet::EMPTY, &id), "[]");
    }
}
