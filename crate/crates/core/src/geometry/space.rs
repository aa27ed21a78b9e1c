//! Projective spaces and symplectic polar spaces as flag complexes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use super::linalg::{standard_alternating_form, FiniteField, Matrix, Subspace, Vector};
use crate::coxeter::{CoxeterGraph, IrreducibleType, NodeSet};
use crate::error::{Error, Result};

/// Refuse to build geometries with more chambers than this.
pub const CHAMBER_CAP: u64 = 1_000_000;

/// Largest building rank of a supported geometry.
pub const MAX_RANK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Projective,
    Polar,
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryKind::Projective => "projective",
            GeometryKind::Polar => "polar",
        })
    }
}

impl FromStr for GeometryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projective" => Ok(GeometryKind::Projective),
            "polar" | "symplectic-polar" | "symplectic" => Ok(GeometryKind::Polar),
            _ => Err(Error::Parse(format!("unknown geometry kind {s:?}"))),
        }
    }
}

/// `(kind, n, q)` where `n` is the ambient vector dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeometrySpec {
    pub kind: GeometryKind,
    pub n: usize,
    pub q: u8,
}

impl GeometrySpec {
    pub fn new(kind: GeometryKind, n: usize, q: u8) -> Result<Self> {
        let ok = match kind {
            GeometryKind::Projective => (2..=5).contains(&n) && (q == 2 || q == 3),
            GeometryKind::Polar => (n == 4 || n == 6) && q == 2,
        };
        if !ok {
            return Err(Error::InvalidGeometry(format!("unsupported {kind} geometry with n={n}, q={q}")));
        }
        Ok(GeometrySpec { kind, n, q })
    }

    /// Number of vertex types.
    pub fn rank(&self) -> usize {
        match self.kind {
            GeometryKind::Projective => self.n - 1,
            GeometryKind::Polar => self.n / 2,
        }
    }

    pub fn coxeter_type(&self) -> IrreducibleType {
        match self.kind {
            GeometryKind::Projective => IrreducibleType::A(self.rank()),
            GeometryKind::Polar => IrreducibleType::B(self.rank()),
        }
    }

    /// Closed-form chamber count.
    pub fn chamber_count(&self) -> u64 {
        let q = self.q as u64;
        let gauss = |i: u32| (q.pow(i) - 1) / (q - 1);
        match self.kind {
            GeometryKind::Projective => (1..=self.n as u32).map(gauss).product(),
            GeometryKind::Polar => (1..=self.rank() as u32).map(|i| gauss(2 * i)).product(),
        }
    }
}

impl fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            GeometryKind::Projective => 'A',
            GeometryKind::Polar => 'B',
        };
        write!(f, "{letter}{}@{}", self.rank(), self.q)
    }
}

impl FromStr for GeometrySpec {
    type Err = Error;
    /// `A3@2` is PG(3,2); `B2@2` is the symplectic generalized quadrangle W(3,2).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad geometry spec {s:?} (expected e.g. A3@2 or B3@2)"));
        let (ty, q) = s.trim().split_once('@').ok_or_else(bad)?;
        let q: u8 = q.parse().map_err(|_| bad())?;
        let mut chars = ty.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        match letter.to_ascii_uppercase() {
            'A' => GeometrySpec::new(GeometryKind::Projective, rank + 1, q),
            'B' | 'C' => GeometrySpec::new(GeometryKind::Polar, 2 * rank, q),
            _ => Err(bad()),
        }
    }
}

/// Point set of a subspace as a bitset over the point indices.
pub type PointSet = [u64; 2];

#[inline]
fn and_count(a: &PointSet, b: &PointSet) -> u32 {
    (a[0] & b[0]).count_ones() + (a[1] & b[1]).count_ones()
}

/// A simplex: one vertex per type in increasing type order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    len: u8,
    verts: [u32; MAX_RANK],
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag{:?}", self.vertices())
    }
}

impl Flag {
    pub fn empty() -> Self {
        Flag { len: 0, verts: [0; MAX_RANK] }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// A fully enumerated finite building given as a flag complex.
pub struct FlagGeometry {
    spec: GeometrySpec,
    field: FiniteField,
    form: Option<Matrix>,
    graph: CoxeterGraph,
    vertices: Vec<Subspace>,
    vertex_type: Vec<u8>,
    type_start: Vec<u32>,
    index: HashMap<Subspace, u32>,
    vertex_points: Vec<PointSet>,
    perp_points: Vec<PointSet>,
    dim_of_count: Vec<u8>,
    chambers: Vec<u32>,
    chamber_index: HashMap<u64, u32>,
    /// `panel_of[s][c]`: the s-panel containing chamber `c`.
    panel_of: Vec<Vec<u32>>,
    /// `panel_members[s]`, stride `q + 1`.
    panel_members: Vec<Vec<u32>>,
    vertex_chambers: Vec<Vec<u32>>,
    flag_cache: Vec<OnceLock<Vec<Flag>>>,
}

impl fmt::Debug for FlagGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlagGeometry({}, {} vertices, {} chambers)", self.spec, self.vertices.len(), self.chamber_count())
    }
}

fn chamber_key(vs: &[u32]) -> u64 {
    vs.iter().fold(0u64, |acc, &v| (acc << 16) | v as u64)
}

impl FlagGeometry {
    pub fn build(spec: GeometrySpec) -> Result<Self> {
        FlagGeometry::build_with_cap(spec, CHAMBER_CAP)
    }

    pub fn build_with_cap(spec: GeometrySpec, cap: u64) -> Result<Self> {
        let spec = GeometrySpec::new(spec.kind, spec.n, spec.q)?;
        if spec.chamber_count() > cap {
            return Err(Error::Capacity(format!("{spec} has {} chambers (cap {cap})", spec.chamber_count())));
        }
        let field = FiniteField::new(spec.q)?;
        let n = spec.n;
        let rank = spec.rank();
        let form = match spec.kind {
            GeometryKind::Projective => None,
            GeometryKind::Polar => Some(standard_alternating_form(&field, n)?),
        };

        // points: normalized nonzero vectors
        let total = (spec.q as u16).pow(n as u32);
        let mut points: Vec<Subspace> = (1..total)
            .filter_map(|c| {
                let mut v = field.unpack(c, n);
                field.normalize(&mut v, n);
                (field.pack(&v, n) == c).then(|| Subspace::span(&field, &[v], n))
            })
            .collect();
        points.sort();
        let point_vectors: Vec<Vector> = points.iter().map(|p| p.basis(&field, n)[0]).collect();

        let mut levels: Vec<Vec<Subspace>> = vec![points.clone()];
        let mut up_pairs: Vec<Vec<(Subspace, Subspace)>> = Vec::new();
        for _ in 1..rank {
            let prev = levels.last().expect("nonempty");
            let mut next: BTreeSet<Subspace> = BTreeSet::new();
            let mut pairs = Vec::new();
            for u in prev {
                let basis = u.basis(&field, n);
                for p in &point_vectors {
                    if let Some(b) = &form {
                        if basis.iter().any(|x| b.bilinear(&field, x, p) != 0) {
                            continue;
                        }
                    }
                    if u.contains_vector(&field, n, p) {
                        continue;
                    }
                    let mut vs = basis.clone();
                    vs.push(*p);
                    let w = Subspace::span(&field, &vs, n);
                    pairs.push((*u, w));
                    next.insert(w);
                }
            }
            levels.push(next.into_iter().collect());
            up_pairs.push(pairs);
        }

        let mut vertices = Vec::new();
        let mut vertex_type = Vec::new();
        let mut type_start = vec![0u32];
        for (t, level) in levels.iter().enumerate() {
            vertices.extend_from_slice(level);
            vertex_type.extend(std::iter::repeat(t as u8).take(level.len()));
            type_start.push(vertices.len() as u32);
        }
        if vertices.len() > u16::MAX as usize {
            return Err(Error::Capacity(format!("{spec} has too many vertices")));
        }
        let index: HashMap<Subspace, u32> = vertices.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();

        let mut up: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
        for pairs in &up_pairs {
            for (u, w) in pairs {
                up[index[u] as usize].push(index[w]);
            }
        }
        for l in &mut up {
            l.sort_unstable();
            l.dedup();
        }

        let point_count = points.len();
        debug_assert!(point_count <= 128);
        let points_of = |s: &Subspace| -> PointSet {
            let mut set = [0u64; 2];
            for (i, p) in point_vectors.iter().enumerate() {
                if s.contains_vector(&field, n, p) {
                    set[i / 64] |= 1 << (i % 64);
                }
            }
            set
        };
        let vertex_points: Vec<PointSet> = vertices.iter().map(points_of).collect();
        let perp_points: Vec<PointSet> = match &form {
            Some(b) => vertices.iter().map(|v| points_of(&v.perp(&field, n, b))).collect(),
            None => Vec::new(),
        };
        let q = spec.q as usize;
        let mut dim_of_count = vec![u8::MAX; point_count + 1];
        for d in 0..=n {
            let c = (q.pow(d as u32) - 1) / (q - 1);
            if c <= point_count {
                dim_of_count[c] = d as u8;
            }
        }

        let mut chambers: Vec<u32> = Vec::new();
        let mut stack: Vec<u32> = Vec::with_capacity(rank);
        fn extend(up: &[Vec<u32>], rank: usize, stack: &mut Vec<u32>, out: &mut Vec<u32>) {
            if stack.len() == rank {
                out.extend_from_slice(stack);
                return;
            }
            let last = *stack.last().expect("nonempty");
            for &w in &up[last as usize] {
                stack.push(w);
                extend(up, rank, stack, out);
                stack.pop();
            }
        }
        for p in 0..type_start[1] {
            stack.push(p);
            extend(&up, rank, &mut stack, &mut chambers);
            stack.pop();
        }
        let count = chambers.len() / rank;
        if count as u64 != spec.chamber_count() {
            return Err(Error::BuildingViolation(format!(
                "{spec}: enumerated {count} chambers, expected {}",
                spec.chamber_count()
            )));
        }
        let chamber_index: HashMap<u64, u32> =
            (0..count).map(|c| (chamber_key(&chambers[c * rank..(c + 1) * rank]), c as u32)).collect();

        let mut panel_of = vec![vec![0u32; count]; rank];
        let mut panel_members = vec![Vec::new(); rank];
        for s in 0..rank {
            let mut groups: HashMap<u64, u32> = HashMap::new();
            let mut members: Vec<Vec<u32>> = Vec::new();
            for c in 0..count {
                let mut vs = chambers[c * rank..(c + 1) * rank].to_vec();
                vs[s] = u16::MAX as u32;
                let id = *groups.entry(chamber_key(&vs)).or_insert_with(|| {
                    members.push(Vec::new());
                    members.len() as u32 - 1
                });
                members[id as usize].push(c as u32);
                panel_of[s][c] = id;
            }
            if members.iter().any(|m| m.len() != q + 1) {
                return Err(Error::BuildingViolation(format!("{spec}: a type-{} panel is not of size q+1", s + 1)));
            }
            panel_members[s] = members.concat();
        }

        let mut vertex_chambers = vec![Vec::new(); vertices.len()];
        for c in 0..count {
            for &v in &chambers[c * rank..(c + 1) * rank] {
                vertex_chambers[v as usize].push(c as u32);
            }
        }

        let graph = spec.coxeter_type().graph();
        Ok(FlagGeometry {
            spec,
            field,
            form,
            graph,
            vertices,
            vertex_type,
            type_start,
            index,
            vertex_points,
            perp_points,
            dim_of_count,
            chambers,
            chamber_index,
            panel_of,
            panel_members,
            vertex_chambers,
            flag_cache: (0..1usize << rank).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn spec(&self) -> GeometrySpec {
        self.spec
    }

    pub fn kind(&self) -> GeometryKind {
        self.spec.kind
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn q(&self) -> u8 {
        self.spec.q
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of vertices of node index `t` (vector dimension `t + 1`).
    pub fn vertices_of_type(&self, t: usize) -> std::ops::Range<u32> {
        self.type_start[t]..self.type_start[t + 1]
    }

    pub fn vertex(&self, v: u32) -> &Subspace {
        &self.vertices[v as usize]
    }

    pub fn vertex_type(&self, v: u32) -> usize {
        self.vertex_type[v as usize] as usize
    }

    pub fn vertex_index(&self, s: &Subspace) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn point_count(&self) -> usize {
        self.type_start[1] as usize
    }

    pub fn vertex_points(&self, v: u32) -> &PointSet {
        &self.vertex_points[v as usize]
    }

    /// Points of `v^⊥` (polar geometries only).
    pub fn perp_points(&self, v: u32) -> &PointSet {
        &self.perp_points[v as usize]
    }

    /// Vector dimension of the span of a point set given its size.
    #[inline]
    pub fn dim_of(&self, count: u32) -> usize {
        self.dim_of_count[count as usize] as usize
    }

    #[inline]
    pub fn meet_dim(&self, a: &PointSet, b: &PointSet) -> usize {
        self.dim_of(and_count(a, b))
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len() / self.rank()
    }

    pub fn chamber(&self, c: u32) -> &[u32] {
        let r = self.rank();
        &self.chambers[c as usize * r..(c as usize + 1) * r]
    }

    pub fn chamber_of(&self, vs: &[u32]) -> Option<u32> {
        if vs.len() != self.rank() {
            return None;
        }
        self.chamber_index.get(&chamber_key(vs)).copied()
    }

    /// Chambers sharing the s-panel of `c`, including `c`.
    pub fn panel(&self, c: u32, s: usize) -> &[u32] {
        let k = self.q() as usize + 1;
        let p = self.panel_of[s][c as usize] as usize;
        &self.panel_members[s][p * k..(p + 1) * k]
    }

    pub fn chambers_containing_vertex(&self, v: u32) -> &[u32] {
        &self.vertex_chambers[v as usize]
    }

    pub fn flag(&self, vertices: &[u32]) -> Result<Flag> {
        let mut vs = vertices.to_vec();
        vs.sort_by_key(|&v| self.vertex_type(v));
        if vs.len() > self.rank() || vs.iter().any(|&v| v as usize >= self.vertices.len()) {
            return Err(Error::InvalidGeometry("not a flag".into()));
        }
        for w in vs.windows(2) {
            if self.vertex_type(w[0]) == self.vertex_type(w[1]) || !self.incident(w[0], w[1]) {
                return Err(Error::InvalidGeometry("vertices do not form a flag".into()));
            }
        }
        let mut f = Flag::empty();
        f.len = vs.len() as u8;
        f.verts[..vs.len()].copy_from_slice(&vs);
        Ok(f)
    }

    pub(crate) fn flag_unchecked(&self, vs: &[u32]) -> Flag {
        let mut f = Flag::empty();
        f.len = vs.len() as u8;
        f.verts[..vs.len()].copy_from_slice(vs);
        f
    }

    pub fn chamber_flag(&self, c: u32) -> Flag {
        self.flag_unchecked(self.chamber(c))
    }

    /// Vertices of distinct types, one containing the other.
    pub fn incident(&self, a: u32, b: u32) -> bool {
        let (pa, pb) = (&self.vertex_points[a as usize], &self.vertex_points[b as usize]);
        let both = and_count(pa, pb);
        both == and_count(pa, pa) || both == and_count(pb, pb)
    }

    pub fn flag_type(&self, f: &Flag) -> NodeSet {
        NodeSet::from_indices(f.vertices().iter().map(|&v| self.vertex_type(v)))
    }

    /// The face of a chamber of the given type.
    pub fn face(&self, c: u32, k: NodeSet) -> Flag {
        let vs: Vec<u32> = k.iter().map(|t| self.chamber(c)[t]).collect();
        self.flag_unchecked(&vs)
    }

    /// All flags of type `k`, sorted.
    pub fn flags_of_type(&self, k: NodeSet) -> &[Flag] {
        self.flag_cache[k.0 as usize].get_or_init(|| {
            if k.len() == 1 {
                let t = k.iter().next().expect("one type");
                return self.vertices_of_type(t).map(|v| self.flag_unchecked(&[v])).collect();
            }
            let mut set: Vec<Flag> = (0..self.chamber_count() as u32).map(|c| self.face(c, k)).collect();
            set.sort_unstable();
            set.dedup();
            set
        })
    }

    /// Chambers of the residue of `f`.
    pub fn residue(&self, f: &Flag) -> Vec<u32> {
        match f.vertices().first() {
            None => (0..self.chamber_count() as u32).collect(),
            Some(&v0) => self
                .chambers_containing_vertex(v0)
                .iter()
                .copied()
                .filter(|&c| f.vertices().iter().all(|v| self.chamber(c).contains(v)))
                .collect(),
        }
    }

    /// The first chamber (in index order) containing `f`.
    pub fn chamber_containing(&self, f: &Flag) -> u32 {
        match f.vertices().first() {
            None => 0,
            Some(&v0) => *self
                .chambers_containing_vertex(v0)
                .iter()
                .find(|&&c| f.vertices().iter().all(|v| self.chamber(c).contains(v)))
                .expect("every flag lies in a chamber"),
        }
    }

    /// Direct opposition criterion for flags of complementary types:
    /// projective members of dimensions `j` and `n − j` meet trivially;
    /// polar members of equal dimension satisfy `U ∩ W^⊥ = 0`.
    pub fn is_opposite_direct(&self, a: &Flag, b: &Flag) -> Result<bool> {
        let ta = self.flag_type(a);
        let tb = self.flag_type(b);
        let rank = self.rank();
        match self.kind() {
            GeometryKind::Projective => {
                let op = NodeSet::from_indices(ta.iter().map(|t| rank - 1 - t));
                if op != tb {
                    return Err(Error::TypeMismatch(format!("{ta:?} vs {tb:?}")));
                }
                // b is sorted by type, so reversing pairs dimension j with n − j
                Ok(a.vertices().iter().zip(b.vertices().iter().rev()).all(|(&u, &w)| {
                    and_count(&self.vertex_points[u as usize], &self.vertex_points[w as usize]) == 0
                }))
            }
            GeometryKind::Polar => {
                if ta != tb {
                    return Err(Error::TypeMismatch(format!("{ta:?} vs {tb:?}")));
                }
                Ok(a.vertices().iter().zip(b.vertices()).all(|(&u, &w)| {
                    and_count(&self.vertex_points[u as usize], &self.perp_points[w as usize]) == 0
                }))
            }
        }
    }

    /// The symplectic polarity of `PG(n−1, q)` (projective geometries of even `n`).
    pub fn symplectic_polarity(&self) -> Result<super::automorphism::GeometryAutomorphism> {
        if self.kind() != GeometryKind::Projective {
            return Err(Error::InvalidGeometry("symplectic polarities act on projective spaces".into()));
        }
        super::automorphism::GeometryAutomorphism::symplectic_polarity(self.n(), self.q())
    }
}

/// Summary of a built geometry.
#[derive(Debug, Clone, Serialize)]
pub struct GeometrySummary {
    pub geometry: String,
    pub kind: GeometryKind,
    pub n: usize,
    pub q: u8,
    pub rank: usize,
    pub vertices_per_type: Vec<usize>,
    pub chambers: usize,
    pub expected_chambers: u64,
    pub thick: bool,
}

impl FlagGeometry {
    pub fn summary(&self) -> GeometrySummary {
        GeometrySummary {
            geometry: self.spec.to_string(),
            kind: self.kind(),
            n: self.n(),
            q: self.q(),
            rank: self.rank(),
            vertices_per_type: (0..self.rank()).map(|t| self.vertices_of_type(t).len()).collect(),
            chambers: self.chamber_count(),
            expected_chambers: self.spec.chamber_count(),
            thick: self.q() + 1 >= 3,
        }
    }
}
