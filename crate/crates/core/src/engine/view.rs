//! Weyl distances, opposition and projections on a fully enumerated geometry.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::coxeter::{
    double_coset_contains_w0, longest_element, opposition_involution, GraphAutomorphism, NodeSet, RootSystem,
    WeylElement, WeylGroup,
};
use crate::error::{Error, Result};
use crate::geometry::space::{PointSet, MAX_RANK};
use crate::geometry::{Flag, FlagGeometry, GeometryKind};

/// Index of an element of `W` in [`BuildingView::group`].
pub type WIndex = u32;

const NONE: u32 = u32::MAX;

/// A geometry together with its Coxeter system and a table turning
/// relative-position permutations into Weyl group elements.
pub struct BuildingView<'g> {
    geom: &'g FlagGeometry,
    roots: Arc<RootSystem>,
    group: WeylGroup,
    lengths: Vec<u16>,
    w0: WIndex,
    /// Length of the extended flags: `n` (projective) or `2r` (polar).
    m: usize,
    /// Permutation code (base `m`) to group index.
    perm_table: Vec<u32>,
    opposition: GraphAutomorphism,
}

impl<'g> BuildingView<'g> {
    pub fn new(geom: &'g FlagGeometry) -> Result<Self> {
        let roots = Arc::new(RootSystem::new(geom.graph())?);
        let group = WeylGroup::new(&roots, 100_000)?;
        let rank = geom.rank();
        let m = match geom.kind() {
            GeometryKind::Projective => rank + 1,
            GeometryKind::Polar => 2 * rank,
        };
        // images of the simple reflections in S_m on zero-based positions
        let gens: Vec<Vec<usize>> = (0..rank)
            .map(|t| {
                let mut p: Vec<usize> = (0..m).collect();
                p.swap(t, t + 1);
                if geom.kind() == GeometryKind::Polar && t + 1 < rank {
                    p.swap(m - 2 - t, m - 1 - t);
                }
                p
            })
            .collect();
        let code = |p: &[usize]| p.iter().rev().fold(0u32, |acc, &x| acc * m as u32 + x as u32);
        let mut perm_table = vec![NONE; m.pow(m as u32)];
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.len()];
        let id = WeylElement::identity(&roots);
        let id_idx = group.index_of(&id).expect("identity");
        perms[id_idx] = Some((0..m).collect());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let pw = perms[group.index_of(&w).expect("in group")].clone().expect("visited");
            for (s, tau) in gens.iter().enumerate() {
                let ws = w.mul_simple(&roots, s);
                let k = group.index_of(&ws).expect("closed");
                if perms[k].is_none() {
                    perms[k] = Some(tau.iter().map(|&j| pw[j]).collect());
                    queue.push_back(ws);
                }
            }
        }
        for (k, p) in perms.iter().enumerate() {
            let c = code(p.as_ref().expect("connected")) as usize;
            if perm_table[c] != NONE {
                return Err(Error::BuildingViolation("relative-position map is not injective".into()));
            }
            perm_table[c] = k as u32;
        }
        let lengths = group.elements.iter().map(|w| w.length() as u16).collect();
        let w0 = group.index_of(&longest_element(&roots, roots.graph().all())).expect("w0") as WIndex;
        let opposition = opposition_involution(&roots, roots.graph().all());
        Ok(BuildingView { geom, roots, group, lengths, w0, m, perm_table, opposition })
    }

    pub fn geometry(&self) -> &'g FlagGeometry {
        self.geom
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn element(&self, w: WIndex) -> &WeylElement {
        &self.group.elements[w as usize]
    }

    pub fn index(&self, w: &WeylElement) -> WIndex {
        self.group.index_of(w).expect("element of this group") as WIndex
    }

    #[inline]
    pub fn length(&self, w: WIndex) -> usize {
        self.lengths[w as usize] as usize
    }

    pub fn w0(&self) -> WIndex {
        self.w0
    }

    pub fn all(&self) -> NodeSet {
        self.geom.graph().all()
    }

    /// The opposition involution of `S`.
    pub fn opposition(&self) -> &GraphAutomorphism {
        &self.opposition
    }

    fn extended(&self, vs: &[u32], out: &mut [PointSet; 2 * MAX_RANK]) {
        let g = self.geom;
        let r = vs.len();
        for (i, &v) in vs.iter().enumerate() {
            out[i] = *g.vertex_points(v);
        }
        if g.kind() == GeometryKind::Polar {
            for i in 0..r - 1 {
                out[2 * r - 2 - i] = *g.perp_points(vs[i]);
            }
        }
    }

    /// `δ(C, D)` for chambers given as vertex tuples in type order, read
    /// off the table `dim(F_i ∩ G_j)` of their extended flags.
    pub fn weyl_distance_vertices(&self, c: &[u32], d: &[u32]) -> WIndex {
        let m = self.m;
        let mut fc = [[0u64; 2]; 2 * MAX_RANK];
        let mut fd = [[0u64; 2]; 2 * MAX_RANK];
        self.extended(c, &mut fc);
        self.extended(d, &mut fd);
        // r[i][j] = dim(F_i ∩ G_j) for 0 ≤ i, j ≤ m
        let mut r = [[0u8; 2 * MAX_RANK + 1]; 2 * MAX_RANK + 1];
        for i in 1..=m {
            for j in 1..=m {
                r[i][j] = if i == m {
                    j as u8
                } else if j == m {
                    i as u8
                } else {
                    self.geom.meet_dim(&fc[i - 1], &fd[j - 1]) as u8
                };
            }
        }
        let mut code = 0u32;
        let mut place = 1u32;
        for j in 1..=m {
            let i = (1..=m)
                .find(|&i| r[i][j] + r[i - 1][j - 1] > r[i - 1][j] + r[i][j - 1])
                .expect("rank array of two flags");
            code += (i as u32 - 1) * place;
            place *= m as u32;
        }
        let w = self.perm_table[code as usize];
        debug_assert!(w != NONE);
        w
    }

    pub fn weyl_distance_index(&self, c: u32, d: u32) -> WIndex {
        self.weyl_distance_vertices(self.geom.chamber(c), self.geom.chamber(d))
    }

    pub fn weyl_distance(&self, c: u32, d: u32) -> WeylElement {
        self.element(self.weyl_distance_index(c, d)).clone()
    }

    /// `δ(C, ·)` for every chamber by breadth-first search over the chamber
    /// graph: `δ(C, E·s) = δ(C, E)·s` whenever that increases the length.
    pub fn weyl_distances_bfs(&self, c: u32) -> Vec<WIndex> {
        let g = self.geom;
        let mut dist = vec![NONE; g.chamber_count()];
        dist[c as usize] = self.index(&WeylElement::identity(&self.roots));
        let mut queue = VecDeque::from([c]);
        while let Some(e) = queue.pop_front() {
            let w = self.element(dist[e as usize]).clone();
            for s in 0..g.rank() {
                let ws = w.mul_simple(&self.roots, s);
                if ws.length() < w.length() {
                    continue;
                }
                let k = self.index(&ws);
                for &f in g.panel(e, s) {
                    if dist[f as usize] == NONE {
                        dist[f as usize] = k;
                        queue.push_back(f);
                    }
                }
            }
        }
        dist
    }

    /// Gallery distances from `c` by plain BFS on the chamber graph.
    pub fn gallery_distances(&self, c: u32) -> Vec<u32> {
        let g = self.geom;
        let mut dist = vec![NONE; g.chamber_count()];
        dist[c as usize] = 0;
        let mut queue = VecDeque::from([c]);
        while let Some(e) = queue.pop_front() {
            for s in 0..g.rank() {
                for &f in g.panel(e, s) {
                    if dist[f as usize] == NONE {
                        dist[f as usize] = dist[e as usize] + 1;
                        queue.push_back(f);
                    }
                }
            }
        }
        dist
    }

    /// The type of a flag opposite one of type `k`.
    pub fn opposite_type(&self, k: NodeSet) -> NodeSet {
        self.opposition.apply_set(k)
    }

    /// Opposition via representative chambers and a double-coset test.
    pub fn is_opposite_generic(&self, a: &Flag, b: &Flag) -> Result<bool> {
        let g = self.geom;
        let (ta, tb) = (g.flag_type(a), g.flag_type(b));
        if self.opposite_type(ta) != tb {
            return Err(Error::TypeMismatch(format!("{ta:?} vs {tb:?}")));
        }
        let ca = g.chamber_containing(a);
        let cb = g.chamber_containing(b);
        let all = self.all();
        Ok(double_coset_contains_w0(
            &self.roots,
            all.difference(ta),
            all.difference(tb),
            &self.weyl_distance(ca, cb),
        ))
    }

    /// Direct criterion; flags of non-complementary type are never opposite.
    pub fn is_opposite(&self, a: &Flag, b: &Flag) -> bool {
        let g = self.geom;
        if self.opposite_type(g.flag_type(a)) != g.flag_type(b) {
            return false;
        }
        g.is_opposite_direct(a, b).expect("types checked")
    }

    /// The unique chamber of `Res(α)` closest to `b`.
    pub fn projection(&self, alpha: &Flag, b: u32) -> Result<u32> {
        let mut best: Option<(usize, u32)> = None;
        let mut tie = false;
        for c in self.geom.residue(alpha) {
            let l = self.length(self.weyl_distance_index(c, b));
            match best {
                Some((bl, _)) if l > bl => {}
                Some((bl, _)) if l == bl => tie = true,
                _ => {
                    best = Some((l, c));
                    tie = false;
                }
            }
        }
        match (best, tie) {
            (Some((_, c)), false) => Ok(c),
            _ => Err(Error::BuildingViolation("projection has no unique minimizer".into())),
        }
    }
}

/// Maps a chamber tuple to its index (chambers are closed under automorphisms).
pub(crate) fn chamber_index_of(geom: &FlagGeometry, vs: &[u32]) -> Result<u32> {
    geom.chamber_of(vs)
        .ok_or_else(|| Error::BuildingViolation("image of a chamber is not a chamber".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(s: &str) -> FlagGeometry {
        FlagGeometry::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn closed_form_matches_bfs() {
        for s in ["A2@2", "A3@2", "B2@2", "A2@3"] {
            let g = geom(s);
            let v = BuildingView::new(&g).unwrap();
            for c in [0u32, (g.chamber_count() / 2) as u32] {
                let bfs = v.weyl_distances_bfs(c);
                let gal = v.gallery_distances(c);
                for d in 0..g.chamber_count() as u32 {
                    let w = v.weyl_distance_index(c, d);
                    assert_eq!(w, bfs[d as usize], "{s}: {c} -> {d}");
                    assert_eq!(v.length(w) as u32, gal[d as usize]);
                }
            }
        }
    }

    #[test]
    fn adjacent_chambers_differ_by_a_generator() {
        let g = geom("A2@2");
        let v = BuildingView::new(&g).unwrap();
        assert!(v.weyl_distance(0, 0).is_identity());
        for s in 0..2 {
            let d = *g.panel(0, s).iter().find(|&&d| d != 0).unwrap();
            assert_eq!(v.weyl_distance(0, d), WeylElement::simple_reflection(v.roots(), s));
        }
    }

    #[test]
    fn projections_fix_residue_chambers() {
        let g = geom("A3@2");
        let v = BuildingView::new(&g).unwrap();
        let alpha = g.face(5, NodeSet::singleton(1));
        for c in g.residue(&alpha) {
            assert_eq!(v.projection(&alpha, c).unwrap(), c);
        }
        for b in (0..g.chamber_count() as u32).step_by(17) {
            let p = v.projection(&alpha, b).unwrap();
            assert!(g.residue(&alpha).contains(&p));
        }
    }
}
