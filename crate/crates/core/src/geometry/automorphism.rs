//! Collineations and dualities given by matrices, their action on vertices,
//! exhaustive enumeration and seeded random generation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{standard_alternating_form, FiniteField, Matrix, Subspace, Vector, MAX_DIM};
use super::space::{Flag, FlagGeometry, GeometryKind, GeometrySpec};
use crate::error::{Error, Result};

/// Refuse exhaustive enumeration of groups larger than this.
pub const ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomorphismKind {
    Collineation,
    Duality,
}

impl fmt::Display for AutomorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutomorphismKind::Collineation => "collineation",
            AutomorphismKind::Duality => "duality",
        })
    }
}

impl FromStr for AutomorphismKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "collineation" => Ok(AutomorphismKind::Collineation),
            "duality" | "correlation" => Ok(AutomorphismKind::Duality),
            _ => Err(Error::Parse(format!("unknown automorphism kind {s:?}"))),
        }
    }
}

/// `U ↦ g·U` (collineation) or `U ↦ perp_B(g·U)` (duality).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeometryAutomorphism {
    pub kind: AutomorphismKind,
    pub g: Matrix,
    /// The form `B` of a duality; the identity for collineations.
    pub form: Matrix,
}

impl GeometryAutomorphism {
    pub fn collineation(g: Matrix) -> Self {
        GeometryAutomorphism { kind: AutomorphismKind::Collineation, form: Matrix::identity(g.n), g }
    }

    pub fn duality(g: Matrix, form: Matrix) -> Self {
        GeometryAutomorphism { kind: AutomorphismKind::Duality, g, form }
    }

    pub fn identity(n: usize) -> Self {
        GeometryAutomorphism::collineation(Matrix::identity(n))
    }

    /// `U ↦ U^⊥` for the standard alternating form on `GF(q)ⁿ`.
    pub fn symplectic_polarity(n: usize, q: u8) -> Result<Self> {
        let f = FiniteField::new(q)?;
        let b = standard_alternating_form(&f, n)?;
        Ok(GeometryAutomorphism::duality(Matrix::identity(n), b))
    }

    pub fn is_duality(&self) -> bool {
        self.kind == AutomorphismKind::Duality
    }

    pub fn apply_subspace(&self, f: &FiniteField, n: usize, u: &Subspace) -> Subspace {
        let image = u.image(f, n, &self.g);
        match self.kind {
            AutomorphismKind::Collineation => image,
            AutomorphismKind::Duality => image.perp(f, n, &self.form),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, f: &FiniteField, other: &GeometryAutomorphism) -> Result<GeometryAutomorphism> {
        use AutomorphismKind::*;
        Ok(match (self.kind, other.kind) {
            (Collineation, Collineation) => GeometryAutomorphism::collineation(self.g.mul(f, &other.g)),
            (Duality, Collineation) => GeometryAutomorphism::duality(self.g.mul(f, &other.g), self.form),
            (Collineation, Duality) => {
                GeometryAutomorphism::duality(other.g, other.form.mul(f, &self.g.inverse(f)?))
            }
            (Duality, Duality) => {
                let h = self
                    .form
                    .inverse(f)?
                    .mul(f, &self.g.inverse(f)?.transpose())
                    .mul(f, &other.form.transpose())
                    .mul(f, &other.g);
                GeometryAutomorphism::collineation(h)
            }
        })
    }

    pub fn inverse(&self, f: &FiniteField) -> Result<GeometryAutomorphism> {
        match self.kind {
            AutomorphismKind::Collineation => Ok(GeometryAutomorphism::collineation(self.g.inverse(f)?)),
            AutomorphismKind::Duality => {
                let square = self.compose(f, self)?;
                GeometryAutomorphism::collineation(square.g.inverse(f)?).compose(f, self)
            }
        }
    }

    /// Line-based text form (see [`parse_automorphism_file`]).
    pub fn to_file_format(&self, spec: &GeometrySpec) -> String {
        let mut out = format!("geometry {} n={} q={}\nkind {}\n", spec.kind, spec.n, spec.q, self.kind);
        if self.is_duality() && self.form != Matrix::identity(self.g.n) {
            let entries: Vec<String> = self.form.rows().concat().iter().map(u8::to_string).collect();
            out.push_str(&format!("form {}\n", entries.join(" ")));
        }
        out.push_str("matrix\n");
        for row in self.g.rows() {
            let r: Vec<String> = row.iter().map(u8::to_string).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses
///
/// ```text
/// geometry projective n=3 q=2
/// kind duality
/// form 1 0 0 0 1 0 0 0 1
/// matrix
/// 0 1 0
/// 0 0 1
/// 1 0 0
/// ```
///
/// where `n` is the ambient vector dimension and the `form` line is optional.
pub fn parse_automorphism_file(text: &str) -> Result<(GeometrySpec, GeometryAutomorphism)> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty automorphism file".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 4 || words[0] != "geometry" {
        return Err(Error::Parse(format!("bad header {header:?}")));
    }
    let kind: GeometryKind = words[1].parse()?;
    let field_value = |w: &str, key: &str| -> Result<usize> {
        w.strip_prefix(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected {key}<int>, found {w:?}")))
    };
    let n = field_value(words[2], "n=")?;
    let q = field_value(words[3], "q=")?;
    let spec = GeometrySpec::new(kind, n, u8::try_from(q).map_err(|_| Error::Parse("bad q".into()))?)?;
    let f = FiniteField::new(spec.q)?;

    let kind_line = lines.next().ok_or_else(|| Error::Parse("missing kind line".into()))?;
    let akind: AutomorphismKind = kind_line
        .strip_prefix("kind")
        .ok_or_else(|| Error::Parse(format!("expected kind line, found {kind_line:?}")))?
        .trim()
        .parse()?;

    let ints = |s: &str| -> Result<Vec<i64>> {
        s.split_whitespace()
            .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
            .collect()
    };
    let mut form = Matrix::identity(n);
    let mut next = lines.next().ok_or_else(|| Error::Parse("missing matrix".into()))?;
    if let Some(rest) = next.strip_prefix("form") {
        let e = ints(rest)?;
        if e.len() != n * n {
            return Err(Error::Parse(format!("form needs {} entries", n * n)));
        }
        form = Matrix::from_rows(&f, &e.chunks(n).map(<[i64]>::to_vec).collect::<Vec<_>>())?;
        next = lines.next().ok_or_else(|| Error::Parse("missing matrix".into()))?;
    }
    if next != "matrix" {
        return Err(Error::Parse(format!("expected `matrix`, found {next:?}")));
    }
    let rows: Vec<Vec<i64>> = lines.map(ints).collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix must be {n}×{n}")));
    }
    let g = Matrix::from_rows(&f, &rows)?;
    let theta = match akind {
        AutomorphismKind::Collineation => GeometryAutomorphism::collineation(g),
        AutomorphismKind::Duality => GeometryAutomorphism::duality(g, form),
    };
    Ok((spec, theta))
}

/// The permutation induced on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexAction {
    pub perm: Vec<u32>,
    pub duality: bool,
}

impl VertexAction {
    pub fn identity(geom: &FlagGeometry) -> Self {
        VertexAction { perm: (0..geom.vertex_count() as u32).collect(), duality: false }
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.perm[v as usize]
    }

    /// Node index of the image of a type-`t` vertex.
    #[inline]
    pub fn type_image(&self, t: usize, rank: usize) -> usize {
        if self.duality {
            rank - 1 - t
        } else {
            t
        }
    }

    pub fn apply_flag(&self, geom: &FlagGeometry, f: &Flag) -> Flag {
        let mut vs = [0u32; super::space::MAX_RANK];
        let k = f.len();
        for (i, &v) in f.vertices().iter().enumerate() {
            vs[if self.duality { k - 1 - i } else { i }] = self.apply(v);
        }
        geom.flag_unchecked(&vs[..k])
    }

    /// Vertex tuple of the image chamber, in type order.
    #[inline]
    pub fn chamber_image(&self, geom: &FlagGeometry, c: u32, out: &mut [u32]) {
        let ch = geom.chamber(c);
        let r = ch.len();
        for (i, &v) in ch.iter().enumerate() {
            out[if self.duality { r - 1 - i } else { i }] = self.apply(v);
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &VertexAction) -> VertexAction {
        VertexAction {
            perm: other.perm.iter().map(|&v| self.perm[v as usize]).collect(),
            duality: self.duality != other.duality,
        }
    }

    pub fn inverse(&self) -> VertexAction {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j as usize] = i as u32;
        }
        VertexAction { perm, duality: self.duality }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Order as a permutation of the vertex set.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.perm.len()];
        let mut order = 1u64;
        for i in 0..self.perm.len() {
            if seen[i] {
                continue;
            }
            let mut len = 0u64;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j] as usize;
                len += 1;
            }
            order = order / gcd(order, len) * len;
        }
        order
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FlagGeometry {
    /// Validates `θ` against this geometry.
    pub fn check_automorphism(&self, theta: &GeometryAutomorphism) -> Result<()> {
        let f = self.field();
        let n = self.n();
        if theta.g.n != n || theta.form.n != n {
            return Err(Error::InvalidGeometry(format!("matrix size {} does not match n={n}", theta.g.n)));
        }
        if !theta.g.is_invertible(f) || !theta.form.is_invertible(f) {
            return Err(Error::NotInvertible);
        }
        if let Some(b) = self.form() {
            if theta.is_duality() {
                return Err(Error::InvalidGeometry("polar geometries are analysed with collineations only".into()));
            }
            if !preserves_form_up_to_scalar(f, &theta.g, b) {
                return Err(Error::NotFormPreserving);
            }
        }
        Ok(())
    }

    /// The vertex permutation induced by `θ`.
    pub fn vertex_action(&self, theta: &GeometryAutomorphism) -> Result<VertexAction> {
        self.check_automorphism(theta)?;
        let f = self.field();
        let n = self.n();
        let mut perm = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() as u32 {
            let image = theta.apply_subspace(f, n, self.vertex(v));
            let w = self
                .vertex_index(&image)
                .ok_or_else(|| Error::BuildingViolation("image of a vertex is not a vertex".into()))?;
            perm.push(w);
        }
        Ok(VertexAction { perm, duality: theta.is_duality() })
    }

    /// Applies `θ` to a flag.
    pub fn apply(&self, theta: &GeometryAutomorphism, flag: &Flag) -> Result<Flag> {
        self.check_automorphism(theta)?;
        let f = self.field();
        let mut vs: Vec<u32> = flag
            .vertices()
            .iter()
            .map(|&v| {
                self.vertex_index(&theta.apply_subspace(f, self.n(), self.vertex(v)))
                    .ok_or_else(|| Error::BuildingViolation("image of a vertex is not a vertex".into()))
            })
            .collect::<Result<_>>()?;
        vs.sort_by_key(|&v| self.vertex_type(v));
        Ok(self.flag_unchecked(&vs))
    }
}

fn preserves_form_up_to_scalar(f: &FiniteField, g: &Matrix, b: &Matrix) -> bool {
    let pulled = g.transpose().mul(f, b).mul(f, g);
    (1..f.order()).any(|c| pulled == b.scale(f, c))
}

/// `|PGL(n, q)|` or `|Sp(n, 2)|`.
pub fn group_order(spec: &GeometrySpec) -> u64 {
    let q = spec.q as u64;
    let n = spec.n as u32;
    match spec.kind {
        GeometryKind::Projective => (0..n).map(|i| q.pow(n) - q.pow(i)).product::<u64>() / (q - 1),
        GeometryKind::Polar => {
            let r = n / 2;
            q.pow(r * r) * (1..=r).map(|i| q.pow(2 * i) - 1).product::<u64>()
        }
    }
}

/// Calls `visit` on every automorphism of the given kind, in a fixed order.
/// Projective collineations are taken modulo scalars (first nonzero entry of
/// the first column equal to 1); dualities are `(g, I)` for the same `g`.
pub fn for_each_automorphism(
    geom: &FlagGeometry,
    kind: AutomorphismKind,
    mut visit: impl FnMut(GeometryAutomorphism),
) -> Result<()> {
    let spec = geom.spec();
    if spec.kind == GeometryKind::Polar && kind == AutomorphismKind::Duality {
        return Err(Error::InvalidGeometry("polar geometries are analysed with collineations only".into()));
    }
    if group_order(&spec) > ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "{spec} has {} {kind}s (cap {ENUMERATION_CAP})",
            group_order(&spec)
        )));
    }
    let f = *geom.field();
    let n = spec.n;
    let total = (spec.q as u16).pow(n as u32);
    let vectors: Vec<Vector> = (1..total).map(|c| f.unpack(c, n)).collect();
    let mut g = Matrix::zero(n);
    let mut emit = |g: &Matrix| {
        visit(match kind {
            AutomorphismKind::Collineation => GeometryAutomorphism::collineation(*g),
            AutomorphismKind::Duality => GeometryAutomorphism::duality(*g, Matrix::identity(n)),
        })
    };
    match geom.form() {
        None => {
            let mut spans = vec![vec![false; total as usize]];
            spans[0][0] = true;
            projective_columns(&f, n, &vectors, 0, &mut g, &mut spans, &mut emit);
        }
        Some(b) => {
            let b = *b;
            symplectic_columns(&f, n, &vectors, &b, 0, &mut g, &mut emit);
        }
    }
    Ok(())
}

fn set_column(g: &mut Matrix, j: usize, v: &Vector) {
    for i in 0..g.n {
        g.a[i][j] = v[i];
    }
}

fn column(g: &Matrix, j: usize) -> Vector {
    let mut v = [0u8; MAX_DIM];
    for (i, x) in v.iter_mut().enumerate().take(g.n) {
        *x = g.a[i][j];
    }
    v
}

fn projective_columns(
    f: &FiniteField,
    n: usize,
    vectors: &[Vector],
    j: usize,
    g: &mut Matrix,
    spans: &mut Vec<Vec<bool>>,
    emit: &mut impl FnMut(&Matrix),
) {
    if j == n {
        emit(g);
        return;
    }
    for v in vectors {
        if j == 0 && v[..n].iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let span = &spans[j];
        if span[f.pack(v, n) as usize] {
            continue;
        }
        let mut next = span.clone();
        for (code, &inside) in span.iter().enumerate() {
            if !inside {
                continue;
            }
            let s = f.unpack(code as u16, n);
            for a in 1..f.order() {
                let mut w = s;
                for k in 0..n {
                    w[k] = f.add(w[k], f.mul(a, v[k]));
                }
                next[f.pack(&w, n) as usize] = true;
            }
        }
        set_column(g, j, v);
        spans.push(next);
        projective_columns(f, n, vectors, j + 1, g, spans, emit);
        spans.pop();
    }
}

fn symplectic_columns(
    f: &FiniteField,
    n: usize,
    vectors: &[Vector],
    b: &Matrix,
    j: usize,
    g: &mut Matrix,
    emit: &mut impl FnMut(&Matrix),
) {
    if j == n {
        emit(g);
        return;
    }
    let prev: Vec<Vector> = (0..j).map(|i| column(g, i)).collect();
    for v in vectors {
        if prev.iter().enumerate().all(|(i, c)| b.bilinear(f, c, v) == b.a[i][j]) {
            set_column(g, j, v);
            symplectic_columns(f, n, vectors, b, j + 1, g, emit);
        }
    }
}

pub fn enumerate_automorphisms(geom: &FlagGeometry, kind: AutomorphismKind) -> Result<Vec<GeometryAutomorphism>> {
    let mut out = Vec::new();
    for_each_automorphism(geom, kind, |t| out.push(t))?;
    Ok(out)
}

/// A product of `4n²` random elementary matrices (transvections and, over
/// GF(3), diagonal scalings), or of symplectic transvections in the polar
/// case. Deterministic per seed.
pub fn random_automorphism(geom: &FlagGeometry, seed: u64, kind: AutomorphismKind) -> Result<GeometryAutomorphism> {
    if geom.kind() == GeometryKind::Polar && kind == AutomorphismKind::Duality {
        return Err(Error::InvalidGeometry("polar geometries are analysed with collineations only".into()));
    }
    let f = *geom.field();
    let n = geom.n();
    let q = geom.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Matrix::identity(n);
    for _ in 0..4 * n * n {
        let e = match geom.form() {
            None => {
                let mut e = Matrix::identity(n);
                if q > 2 && rng.gen_bool(0.25) {
                    let i = rng.gen_range(0..n);
                    e.a[i][i] = rng.gen_range(1..q);
                } else {
                    let i = rng.gen_range(0..n);
                    let j = (i + rng.gen_range(1..n)) % n;
                    e.a[i][j] = rng.gen_range(1..q);
                }
                e
            }
            Some(b) => {
                // x ↦ x + B(x, v)·v
                let mut v = [0u8; MAX_DIM];
                while v[..n].iter().all(|&x| x == 0) {
                    for x in v.iter_mut().take(n) {
                        *x = rng.gen_range(0..q);
                    }
                }
                let bv = b.transpose().apply(&f, &v);
                let mut e = Matrix::identity(n);
                for i in 0..n {
                    for k in 0..n {
                        e.a[i][k] = f.add(e.a[i][k], f.mul(v[i], bv[k]));
                    }
                }
                e
            }
        };
        g = e.mul(&f, &g);
    }
    Ok(match kind {
        AutomorphismKind::Collineation => GeometryAutomorphism::collineation(g),
        AutomorphismKind::Duality => GeometryAutomorphism::duality(g, Matrix::identity(n)),
    })
}
