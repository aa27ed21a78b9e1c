//! Prime fields GF(2), GF(3) and small dense linear algebra over them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ambient vector dimension.
pub const MAX_DIM: usize = 6;

pub type Vector = [u8; MAX_DIM];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteField {
    q: u8,
    add: [[u8; 3]; 3],
    mul: [[u8; 3]; 3],
}

impl FiniteField {
    pub fn new(q: u8) -> Result<Self> {
        if q != 2 && q != 3 {
            return Err(Error::InvalidGeometry(format!("field order {q} not in {{2, 3}}")));
        }
        let mut add = [[0u8; 3]; 3];
        let mut mul = [[0u8; 3]; 3];
        for a in 0..q {
            for b in 0..q {
                add[a as usize][b as usize] = (a + b) % q;
                mul[a as usize][b as usize] = (a * b) % q;
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// In a prime field of order ≤ 3 every nonzero element is its own inverse.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        a
    }

    /// Exhaustive check of the field axioms.
    pub fn check_axioms(&self) -> bool {
        let q = self.q;
        let els = 0..q;
        els.clone().all(|a| {
            self.add(a, 0) == a
                && self.mul(a, 1) == a
                && self.add(a, self.neg(a)) == 0
                && (a == 0 || self.mul(a, self.inv(a)) == 1)
                && els.clone().all(|b| {
                    self.add(a, b) == self.add(b, a)
                        && self.mul(a, b) == self.mul(b, a)
                        && (0..q).all(|c| {
                            self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                                && self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                                && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                        })
                })
        })
    }

    /// Radix-q code of the first `n` coordinates.
    pub fn pack(&self, v: &Vector, n: usize) -> u16 {
        v[..n].iter().rev().fold(0u16, |acc, &x| acc * self.q as u16 + x as u16)
    }

    pub fn unpack(&self, mut code: u16, n: usize) -> Vector {
        let mut v = [0u8; MAX_DIM];
        for x in v.iter_mut().take(n) {
            *x = (code % self.q as u16) as u8;
            code /= self.q as u16;
        }
        v
    }

    /// Scales `v` so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &mut Vector, n: usize) {
        if let Some(&lead) = v[..n].iter().find(|&&x| x != 0) {
            let s = self.inv(lead);
            for x in v.iter_mut().take(n) {
                *x = self.mul(*x, s);
            }
        }
    }

    /// `Σ a_i b_i`.
    pub fn dot(&self, a: &Vector, b: &Vector, n: usize) -> u8 {
        (0..n).fold(0, |acc, i| self.add(acc, self.mul(a[i], b[i])))
    }
}

/// Reduced row echelon form in place; returns the rank. Nonzero rows come
/// first, each with leading entry 1 in increasing pivot columns.
pub fn rref(f: &FiniteField, rows: &mut [Vector], n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = f.inv(rows[rank][col]);
        for x in rows[rank].iter_mut().take(n) {
            *x = f.mul(*x, s);
        }
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for k in 0..n {
                    row[k] = f.sub(row[k], f.mul(c, pivot[k]));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A square matrix over GF(q), acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub n: usize,
    pub a: [[u8; MAX_DIM]; MAX_DIM],
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u8]> = (0..self.n).map(|i| &self.a[i][..self.n]).collect();
        write!(f, "{rows:?}")
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, a: [[0; MAX_DIM]; MAX_DIM] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.a[i][i] = 1;
        }
        m
    }

    pub fn from_rows(f: &FiniteField, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_DIM || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("expected a square matrix of size at most {MAX_DIM}")));
        }
        let mut m = Matrix::zero(n);
        let q = f.order() as i64;
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.a[i][j] = x.rem_euclid(q) as u8;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.a[i][..self.n].to_vec()).collect()
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i][j] = (0..n).fold(0, |acc, k| f.add(acc, f.mul(self.a[i][k], other.a[k][j])));
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[j][i] = self.a[i][j];
            }
        }
        m
    }

    pub fn scale(&self, f: &FiniteField, c: u8) -> Matrix {
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] = f.mul(c, m.a[i][j]);
            }
        }
        m
    }

    /// `g·x` for a column vector `x`.
    pub fn apply(&self, f: &FiniteField, x: &Vector) -> Vector {
        let mut y = [0u8; MAX_DIM];
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            *yi = f.dot(&self.a[i], x, self.n);
        }
        y
    }

    /// Row vector times matrix, `x·M`.
    pub fn row_apply(&self, f: &FiniteField, x: &Vector) -> Vector {
        let mut y = [0u8; MAX_DIM];
        for (j, yj) in y.iter_mut().enumerate().take(self.n) {
            *yj = (0..self.n).fold(0, |acc, k| f.add(acc, f.mul(x[k], self.a[k][j])));
        }
        y
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut rows: Vec<Vector> = (0..self.n).map(|i| self.a[i]).collect();
        rref(f, &mut rows, self.n)
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.rank(f) == self.n
    }

    pub fn inverse(&self, f: &FiniteField) -> Result<Matrix> {
        let n = self.n;
        // augmented [A | I] packed into 2n columns is too wide for Vector, so
        // reduce A while replaying the row operations on I.
        let mut a = *self;
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| a.a[r][col] != 0).ok_or(Error::NotInvertible)?;
            a.a.swap(col, p);
            inv.a.swap(col, p);
            let s = f.inv(a.a[col][col]);
            for k in 0..n {
                a.a[col][k] = f.mul(a.a[col][k], s);
                inv.a[col][k] = f.mul(inv.a[col][k], s);
            }
            for r in 0..n {
                if r != col && a.a[r][col] != 0 {
                    let c = a.a[r][col];
                    for k in 0..n {
                        a.a[r][k] = f.sub(a.a[r][k], f.mul(c, a.a[col][k]));
                        inv.a[r][k] = f.sub(inv.a[r][k], f.mul(c, inv.a[col][k]));
                    }
                }
            }
        }
        Ok(inv)
    }

    /// `xᵀ·M·y`.
    pub fn bilinear(&self, f: &FiniteField, x: &Vector, y: &Vector) -> u8 {
        f.dot(&self.row_apply(f, x), y, self.n)
    }
}

/// The standard alternating form: diagonal blocks `[[0, 1], [-1, 0]]`.
pub fn standard_alternating_form(f: &FiniteField, n: usize) -> Result<Matrix> {
    if n % 2 != 0 || n == 0 || n > MAX_DIM {
        return Err(Error::InvalidGeometry(format!("no symplectic form in dimension {n}")));
    }
    let mut b = Matrix::zero(n);
    for k in (0..n).step_by(2) {
        b.a[k][k + 1] = 1;
        b.a[k + 1][k] = f.neg(1);
    }
    Ok(b)
}

/// A subspace of GF(q)ⁿ held as its reduced row echelon basis, rows packed
/// radix-q. Equal subspaces have equal representations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: u8,
    rows: [u16; MAX_DIM],
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", &self.rows[..self.dim as usize])
    }
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { dim: 0, rows: [0; MAX_DIM] }
    }

    pub fn span(f: &FiniteField, vectors: &[Vector], n: usize) -> Self {
        let mut rows = vectors.to_vec();
        let r = rref(f, &mut rows, n);
        let mut packed = [0u16; MAX_DIM];
        for (k, row) in rows.iter().take(r).enumerate() {
            packed[k] = f.pack(row, n);
        }
        Subspace { dim: r as u8, rows: packed }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn basis(&self, f: &FiniteField, n: usize) -> Vec<Vector> {
        self.rows[..self.dim()].iter().map(|&c| f.unpack(c, n)).collect()
    }

    /// Image under `x ↦ g·x`.
    pub fn image(&self, f: &FiniteField, n: usize, g: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis(f, n).iter().map(|v| g.apply(f, v)).collect();
        Subspace::span(f, &vs, n)
    }

    /// `{x : u·B·x = 0 for all u in self}`.
    pub fn perp(&self, f: &FiniteField, n: usize, b: &Matrix) -> Subspace {
        let mut rows: Vec<Vector> = self.basis(f, n).iter().map(|u| b.row_apply(f, u)).collect();
        let r = rref(f, &mut rows, n);
        nullspace(f, &rows[..r], n)
    }

    pub fn sum(&self, f: &FiniteField, n: usize, other: &Subspace) -> Subspace {
        let mut vs = self.basis(f, n);
        vs.extend(other.basis(f, n));
        Subspace::span(f, &vs, n)
    }

    pub fn meet_dim(&self, f: &FiniteField, n: usize, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(f, n, other).dim()
    }

    pub fn contains_vector(&self, f: &FiniteField, n: usize, v: &Vector) -> bool {
        let mut vs = self.basis(f, n);
        vs.push(*v);
        rref(f, &mut vs, n) == self.dim()
    }

    pub fn contains(&self, f: &FiniteField, n: usize, other: &Subspace) -> bool {
        other.basis(f, n).iter().all(|v| self.contains_vector(f, n, v))
    }

    /// Every pair of basis vectors pairs to zero under `b`.
    pub fn is_totally_isotropic(&self, f: &FiniteField, n: usize, b: &Matrix) -> bool {
        let basis = self.basis(f, n);
        basis.iter().all(|u| basis.iter().all(|v| b.bilinear(f, u, v) == 0))
    }
}

/// Basis of `{x : R·x = 0}` for rows `R` already in reduced echelon form.
fn nullspace(f: &FiniteField, rows: &[Vector], n: usize) -> Subspace {
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = [0u8; MAX_DIM];
        v[free] = 1;
        for (r, &p) in rows.iter().zip(&pivots) {
            v[p] = f.neg(r[free]);
        }
        basis.push(v);
    }
    Subspace::span(f, &basis, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[u8]) -> Vector {
        let mut out = [0u8; MAX_DIM];
        out[..xs.len()].copy_from_slice(xs);
        out
    }

    #[test]
    fn fields_satisfy_axioms() {
        assert!(FiniteField::new(2).unwrap().check_axioms());
        assert!(FiniteField::new(3).unwrap().check_axioms());
        assert!(FiniteField::new(4).is_err());
    }

    #[test]
    fn canonical_forms_are_unique() {
        let f = FiniteField::new(3).unwrap();
        let a = Subspace::span(&f, &[v(&[1, 1, 0]), v(&[0, 1, 2])], 3);
        let b = Subspace::span(&f, &[v(&[1, 2, 2]), v(&[2, 2, 0]), v(&[0, 2, 1])], 3);
        assert_eq!(a.dim(), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn perp_of_first_basis_vector() {
        let f = FiniteField::new(2).unwrap();
        let b = standard_alternating_form(&f, 4).unwrap();
        let e1 = Subspace::span(&f, &[v(&[1, 0, 0, 0])], 4);
        let p = e1.perp(&f, 4, &b);
        let plane = Subspace::span(&f, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])], 4);
        assert_eq!(p, plane);
        assert!(p.contains(&f, 4, &e1));
    }

    #[test]
    fn inverses() {
        let f = FiniteField::new(3).unwrap();
        let m = Matrix::from_rows(&f, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
        let singular = Matrix::from_rows(&f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(singular.inverse(&f).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn meet_dimensions() {
        let f = FiniteField::new(2).unwrap();
        let u = Subspace::span(&f, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])], 4);
        let w = Subspace::span(&f, &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])], 4);
        assert_eq!(u.meet_dim(&f, 4, &w), 1);
        assert_eq!(u.meet_dim(&f, 4, &Subspace::zero()), 0);
    }
}
