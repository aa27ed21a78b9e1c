//! Opp(θ), Type(θ), cappedness, domesticity, displacement, induced residue
//! automorphisms and the per-automorphism invariant suite.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::view::{chamber_index_of, BuildingView, WIndex};
use crate::coxeter::{
    double_coset_contains, in_parabolic, longest_element, GraphAutomorphism, NodeSet,
};
use crate::diagrams::{displacement, residue_automorphism, Admissibility, OppositionDiagram, StablePartition};
use crate::error::{Error, Result};
use crate::geometry::space::MAX_RANK;
use crate::geometry::{
    enumerate_automorphisms, group_order, AutomorphismKind, Flag, FlagGeometry, GeometryAutomorphism,
    GeometryKind, VertexAction,
};

/// Refuse searches whose estimated work exceeds this many chamber visits.
pub const WORK_CAP: u64 = 1_000_000_000;

/// An automorphism prepared for analysis on a particular view.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub action: VertexAction,
    /// The induced permutation `π_θ` of the types.
    pub pi: GraphAutomorphism,
    /// `w₀ ∘ π_θ`.
    pub twist: GraphAutomorphism,
}

impl<'g> BuildingView<'g> {
    pub fn prepare(&self, theta: &GeometryAutomorphism) -> Result<Prepared> {
        let action = self.geometry().vertex_action(theta)?;
        Ok(self.prepare_action(action))
    }

    pub fn prepare_action(&self, action: VertexAction) -> Prepared {
        let g = self.geometry();
        let rank = g.rank();
        let map: Vec<usize> = (0..rank).map(|t| action.type_image(t, rank)).collect();
        let pi = GraphAutomorphism::from_map(g.graph(), g.graph().all(), map).expect("type maps preserve the graph");
        let twist = self.opposition().compose(&pi).expect("same domain");
        Prepared { action, pi, twist }
    }

    /// Minimal `(w₀∘π_θ)`-stable type sets, smallest first.
    pub fn stable_blocks(&self, p: &Prepared) -> Vec<NodeSet> {
        StablePartition::new(self.all(), &p.twist).expect("S is stable").blocks
    }

    #[inline]
    pub fn maps_to_opposite(&self, p: &Prepared, f: &Flag) -> bool {
        let image = p.action.apply_flag(self.geometry(), f);
        self.is_opposite(f, &image)
    }

    /// The first type-`k` flag in `Opp(θ)`, in flag order.
    pub fn find_in_opp(&self, p: &Prepared, k: NodeSet) -> Option<Flag> {
        if k.is_empty() {
            return Some(Flag::empty());
        }
        self.geometry().flags_of_type(k).iter().copied().find(|f| self.maps_to_opposite(p, f))
    }

    pub fn count_in_opp(&self, p: &Prepared, k: NodeSet) -> usize {
        self.geometry().flags_of_type(k).iter().filter(|f| self.maps_to_opposite(p, f)).count()
    }

    /// Union of the stable blocks that contain a simplex mapped to an opposite.
    pub fn opposition_type(&self, p: &Prepared) -> NodeSet {
        self.stable_blocks(p)
            .into_iter()
            .filter(|&k| self.find_in_opp(p, k).is_some())
            .fold(NodeSet::EMPTY, NodeSet::union)
    }

    pub fn opposition_diagram(&self, p: &Prepared) -> OppositionDiagram {
        OppositionDiagram {
            graph: self.geometry().graph().clone(),
            circled: self.opposition_type(p),
            auto: p.pi.clone(),
        }
    }

    pub fn is_capped(&self, p: &Prepared) -> bool {
        self.find_in_opp(p, self.opposition_type(p)).is_some()
    }

    /// No type-`j` simplex is mapped to an opposite; `j` must be `(w₀∘π_θ)`-stable.
    pub fn is_j_domestic(&self, p: &Prepared, j: NodeSet) -> Result<bool> {
        if p.twist.apply_set(j) != j {
            return Err(Error::NotStable(format!("{:?}", self.geometry().graph().set_labels(j))));
        }
        Ok(self.find_in_opp(p, j).is_none())
    }

    /// No chamber is mapped to an opposite chamber.
    pub fn is_domestic(&self, p: &Prepared) -> bool {
        let g = self.geometry();
        let mut image = [0u32; MAX_RANK];
        let r = g.rank();
        (0..g.chamber_count() as u32).all(|c| {
            p.action.chamber_image(g, c, &mut image[..r]);
            self.weyl_distance_vertices(g.chamber(c), &image[..r]) != self.w0()
        })
    }

    /// `δ(C, C^θ)` for every chamber.
    pub fn codistances(&self, p: &Prepared) -> Vec<WIndex> {
        let g = self.geometry();
        let r = g.rank();
        let mut image = [0u32; MAX_RANK];
        (0..g.chamber_count() as u32)
            .map(|c| {
                p.action.chamber_image(g, c, &mut image[..r]);
                self.weyl_distance_vertices(g.chamber(c), &image[..r])
            })
            .collect()
    }

    /// `max ℓ(δ(C, C^θ))` with its arg-max, and whether every arg-max value
    /// equals `w_{S∖J}·w₀` for `J = Type(θ)`.
    pub fn measured_displacement(&self, p: &Prepared) -> DisplacementScan {
        let codist = self.codistances(p);
        let max = codist.iter().map(|&w| self.length(w)).max().unwrap_or(0);
        let argmax: Vec<u32> =
            (0..codist.len() as u32).filter(|&c| self.length(codist[c as usize]) == max).collect();
        let j = self.opposition_type(p);
        let rs = self.roots();
        let target = longest_element(rs, self.all().difference(j))
            .mul(&longest_element(rs, self.all()))
            .expect("same system");
        let target = self.index(&target);
        let mut values: Vec<WIndex> = argmax.iter().map(|&c| codist[c as usize]).collect();
        values.sort_unstable();
        values.dedup();
        DisplacementScan {
            max,
            argmax_count: argmax.len(),
            argmax_is_formula: values.iter().all(|&w| w == target),
        }
    }

    /// `θ_σ = proj_σ ∘ θ` on the chambers of `Res(σ)` for `σ ∈ Opp(θ)`.
    pub fn induced_automorphism(&self, p: &Prepared, sigma: &Flag) -> Result<InducedAutomorphism> {
        let g = self.geometry();
        if !self.maps_to_opposite(p, sigma) {
            return Err(Error::BuildingViolation("σ is not mapped to an opposite simplex".into()));
        }
        let j = g.flag_type(sigma);
        let res = g.residue(sigma);
        let r = g.rank();
        let mut image = [0u32; MAX_RANK];
        let mut map = Vec::with_capacity(res.len());
        for &c in &res {
            p.action.chamber_image(g, c, &mut image[..r]);
            let ci = chamber_index_of(g, &image[..r])?;
            map.push((c, self.projection(sigma, ci)?));
        }
        let lookup = |c: u32| map.iter().find(|(a, _)| *a == c).map(|&(_, b)| b).expect("residue chamber");
        let rest = self.all().difference(j);
        let mut type_map: Vec<usize> = (0..r).collect();
        for s in rest.iter() {
            let c = res[0];
            let d = *g.panel(c, s).iter().find(|&&d| d != c).expect("thick");
            let w = self.weyl_distance(lookup(c), lookup(d));
            let t = w.reduced_word(self.roots());
            if t.len() != 1 {
                return Err(Error::BuildingViolation("θ_σ does not preserve adjacency".into()));
            }
            type_map[s] = t[0];
        }
        let type_map = GraphAutomorphism::from_map(g.graph(), rest, type_map)?;
        Ok(InducedAutomorphism { residue: j, map, type_map })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DisplacementScan {
    pub max: usize,
    pub argmax_count: usize,
    pub argmax_is_formula: bool,
}

/// `θ_σ`: chamber pairs `(C, proj_σ(C^θ))` and the induced type map on `S∖τ(σ)`.
#[derive(Debug, Clone)]
pub struct InducedAutomorphism {
    pub residue: NodeSet,
    pub map: Vec<(u32, u32)>,
    pub type_map: GraphAutomorphism,
}

impl InducedAutomorphism {
    pub fn apply(&self, c: u32) -> Option<u32> {
        self.map.iter().find(|(a, _)| *a == c).map(|&(_, b)| b)
    }
}

/// Everything known about one automorphism.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub id: String,
    pub geometry: String,
    pub kind: AutomorphismKind,
    pub order: u64,
    pub pi: String,
    #[serde(rename = "type")]
    pub opposition_type: Vec<u32>,
    pub capped: bool,
    pub domestic: bool,
    pub exceptional_domestic: bool,
    pub hits: Vec<BlockHits>,
    pub measured_displacement: usize,
    pub formula_displacement: usize,
    pub argmax_is_formula: bool,
    pub admissible: bool,
    pub diagram: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockHits {
    pub block: Vec<u32>,
    pub count: usize,
}

impl AnalysisReport {
    /// One `key=value` record on a single line.
    pub fn to_kv(&self) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let hits: Vec<String> = self.hits.iter().map(|h| format!("{}:{}", join(&h.block), h.count)).collect();
        format!(
            "id={} geometry={} kind={} order={} pi={} type={} capped={} domestic={} exceptional_domestic={} hits={} measured_displacement={} formula_displacement={} argmax_is_formula={} admissible={} diagram={}",
            self.id,
            self.geometry,
            self.kind,
            self.order,
            self.pi,
            join(&self.opposition_type),
            self.capped,
            self.domestic,
            self.exceptional_domestic,
            hits.join(";"),
            self.measured_displacement,
            self.formula_displacement,
            self.argmax_is_formula,
            self.admissible,
            self.diagram
        )
    }
}

fn kind_of(p: &Prepared) -> AutomorphismKind {
    if p.action.duality {
        AutomorphismKind::Duality
    } else {
        AutomorphismKind::Collineation
    }
}

impl<'g> BuildingView<'g> {
    pub fn analyze(&self, id: impl Into<String>, p: &Prepared) -> AnalysisReport {
        let g = self.geometry();
        let graph = g.graph();
        let blocks = self.stable_blocks(p);
        let hits: Vec<BlockHits> = blocks
            .iter()
            .map(|&k| BlockHits { block: graph.set_labels(k), count: self.count_in_opp(p, k) })
            .collect();
        let j = blocks
            .iter()
            .zip(&hits)
            .filter(|(_, h)| h.count > 0)
            .fold(NodeSet::EMPTY, |acc, (&k, _)| acc.union(k));
        let capped = self.find_in_opp(p, j).is_some();
        let scan = self.measured_displacement(p);
        let domestic = scan.max < self.length(self.w0());
        let admissible = Admissibility::new(self.roots()).check(j, &p.pi);
        let diagram = crate::diagrams::DiagramRecord::new(self.roots(), j, &p.pi, admissible).to_text();
        AnalysisReport {
            id: id.into(),
            geometry: g.spec().to_string(),
            kind: kind_of(p),
            order: p.action.order(),
            pi: p.pi.cycle_notation(graph),
            opposition_type: graph.set_labels(j),
            capped,
            domestic,
            exceptional_domestic: domestic && j == self.all(),
            hits,
            measured_displacement: scan.max,
            formula_displacement: displacement(self.roots(), j),
            argmax_is_formula: scan.argmax_is_formula,
            admissible,
            diagram,
        }
    }

    /// Checks the building-theoretic invariants for one automorphism and
    /// returns a description of every violation.
    pub fn check_invariants(&self, p: &Prepared) -> Vec<String> {
        let mut bad = Vec::new();
        let g = self.geometry();
        let graph = g.graph();
        let rs = self.roots();
        let all = self.all();
        let blocks = self.stable_blocks(p);
        let j = self.opposition_type(p);

        // nontrivial automorphisms move some simplex to an opposite
        if !p.action.is_identity() && j.is_empty() {
            bad.push("nontrivial automorphism with empty Opp(θ)".into());
        }

        // every union of blocks: J-domestic implies domestic
        let domestic = self.is_domestic(p);
        for mask in 1u32..(1 << blocks.len()) {
            let k = (0..blocks.len())
                .filter(|b| mask >> b & 1 == 1)
                .fold(NodeSet::EMPTY, |acc, b| acc.union(blocks[b]));
            if self.is_j_domestic(p, k).expect("stable") && !domestic {
                bad.push(format!("{:?}-domestic but not domestic", graph.set_labels(k)));
            }
        }

        let capped = self.find_in_opp(p, j);
        if capped.is_some() {
            let d = OppositionDiagram { graph: graph.clone(), circled: j, auto: p.pi.clone() };
            if !Admissibility::new(rs).check(d.circled, &d.auto) {
                bad.push(format!("capped with inadmissible diagram {:?}", graph.set_labels(j)));
            }
            let scan = self.measured_displacement(p);
            if scan.max != displacement(rs, j) || !scan.argmax_is_formula {
                bad.push(format!("displacement {} differs from formula {}", scan.max, displacement(rs, j)));
            }
        }

        let mut witnesses: Vec<Flag> = blocks.iter().filter_map(|&k| self.find_in_opp(p, k)).collect();
        if let Some(f) = capped {
            if !f.is_empty() {
                witnesses.push(f);
            }
        }
        for sigma in &witnesses {
            let k = g.flag_type(sigma);
            // faces of stable subtypes stay in Opp(θ)
            for &b in &blocks {
                if b.is_subset(k) {
                    let face = g.flag_unchecked(
                        &sigma.vertices().iter().copied().filter(|&v| b.contains(g.vertex_type(v))).collect::<Vec<_>>(),
                    );
                    if !self.maps_to_opposite(p, &face) {
                        bad.push(format!("face of type {:?} of an Opp(θ) simplex left Opp(θ)", graph.set_labels(b)));
                    }
                }
            }
            // chambers through σ have codistance in W_{S∖J}·w₀
            let r = g.rank();
            let mut image = [0u32; MAX_RANK];
            let w0 = longest_element(rs, all);
            for c in g.residue(sigma) {
                p.action.chamber_image(g, c, &mut image[..r]);
                let d = self.element(self.weyl_distance_vertices(g.chamber(c), &image[..r])).clone();
                if !in_parabolic(rs, all.difference(k), &d.mul(&w0).expect("same system")) {
                    bad.push("codistance of a chamber through σ outside W_{S∖J}·w₀".into());
                    break;
                }
            }
            // the induced residue automorphism
            match self.induced_automorphism(p, sigma) {
                Err(e) => bad.push(format!("induced automorphism: {e}")),
                Ok(ind) => {
                    match residue_automorphism(rs, k, &p.pi) {
                        Ok(expect) if expect == ind.type_map => {}
                        Ok(expect) => bad.push(format!(
                            "induced type map {} differs from {}",
                            ind.type_map.cycle_notation(graph),
                            expect.cycle_notation(graph)
                        )),
                        Err(e) => bad.push(format!("residue automorphism: {e}")),
                    }
                    bad.extend(self.check_residue_opposition(p, sigma, &ind));
                }
            }
        }
        bad
    }

    /// For simplices `β ⊇ σ`: `β` is opposite `β^θ` in the building if and
    /// only if it is opposite `β^{θ_σ}` in `Res(σ)`.
    fn check_residue_opposition(&self, p: &Prepared, sigma: &Flag, ind: &InducedAutomorphism) -> Vec<String> {
        let g = self.geometry();
        let rs = self.roots();
        let all = self.all();
        let j = g.flag_type(sigma);
        let rest = all.difference(j);
        let w_rest = longest_element(rs, rest);
        let res_opp = crate::coxeter::opposition_involution(rs, rest);
        let mut bad = Vec::new();
        let res = g.residue(sigma);
        let step = (res.len() / 8).max(1);
        for &c in res.iter().step_by(step) {
            let image = ind.apply(c).expect("residue chamber");
            for mask in 1u64..(1 << rest.len()) {
                let extra = NodeSet::from_indices(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s));
                let t = j.union(extra);
                let beta = g.face(c, t);
                let in_building = self.maps_to_opposite(p, &beta);
                let t_image = j.union(ind.type_map.apply_set(extra));
                let in_residue = res_opp.apply_set(extra) == ind.type_map.apply_set(extra)
                    && double_coset_contains(
                        rs,
                        all.difference(t),
                        all.difference(t_image),
                        &self.weyl_distance(c, image),
                        &w_rest,
                    );
                if in_building != in_residue {
                    bad.push(format!(
                        "simplex of type {:?} through σ: opposite in building {in_building}, in residue {in_residue}",
                        g.graph().set_labels(t)
                    ));
                }
            }
        }
        bad
    }
}

/// Work estimate for an exhaustive run over a group.
pub fn estimated_work(geom: &FlagGeometry) -> u64 {
    group_order(&geom.spec()).saturating_mul(geom.chamber_count() as u64)
}

/// All automorphisms of the given kind that are domestic with full
/// opposition type, with their vertex actions.
pub fn find_exceptional_domestic(
    view: &BuildingView,
    kind: AutomorphismKind,
    allow_large: bool,
) -> Result<Vec<(GeometryAutomorphism, Prepared)>> {
    let geom = view.geometry();
    if !allow_large && estimated_work(geom) > WORK_CAP {
        return Err(Error::Capacity(format!("estimated work {} exceeds {WORK_CAP}", estimated_work(geom))));
    }
    let all = view.all();
    let found: Vec<(GeometryAutomorphism, Prepared)> = enumerate_automorphisms(geom, kind)?
        .into_par_iter()
        .filter_map(|t| {
            let p = view.prepare(&t).ok()?;
            (view.opposition_type(&p) == all && view.is_domestic(&p)).then_some((t, p))
        })
        .collect();
    Ok(found)
}

/// Every element of the full correlation group as a vertex action:
/// collineations, plus dualities for projective spaces.
pub fn correlation_group(geom: &FlagGeometry) -> Result<Vec<VertexAction>> {
    let mut kinds = vec![AutomorphismKind::Collineation];
    if geom.kind() == GeometryKind::Projective {
        kinds.push(AutomorphismKind::Duality);
    }
    let mut out = Vec::new();
    for k in kinds {
        for t in enumerate_automorphisms(geom, k)? {
            out.push(geom.vertex_action(&t)?);
        }
    }
    Ok(out)
}

/// Partitions `elements` into conjugacy classes under `group`; classes are
/// lists of positions in `elements`, in order of first appearance.
pub fn conjugacy_classes(group: &[VertexAction], elements: &[VertexAction]) -> Vec<Vec<usize>> {
    let inverses: Vec<VertexAction> = group.iter().map(VertexAction::inverse).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let position: std::collections::HashMap<&VertexAction, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    for i in 0..elements.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: HashSet<usize> = HashSet::from([i]);
        for (h, hinv) in group.iter().zip(&inverses) {
            let conj = h.compose(&elements[i]).compose(hinv);
            if let Some(&k) = position.get(&conj) {
                members.insert(k);
            }
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for &k in &members {
            class_of[k] = id;
        }
        classes.push(members);
    }
    classes
}
