//! Exact subspaces of Q^r in canonical reduced-row-echelon form, plus the
//! small rational-matrix kernel backing them.
//!
//! Canonicality is the load-bearing property: two equal subspaces have
//! bit-identical representations, so filtration jump detection and
//! decomposition checks reduce to `==`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
        }
        Self {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.at(k, c);
                    *out.at_mut(r, c) += add;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// In-place Gauss-Jordan to reduced row echelon form; returns the pivot
    /// columns. Zero rows sink to the bottom but are not removed.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            let Some(pr) = (lead..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = self.at(lead, col).recip();
            for c in col..self.cols {
                let v = self.at(lead, c) * &inv;
                *self.at_mut(lead, c) = v;
            }
            for r in 0..self.rows {
                if r == lead || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c) - &factor * self.at(lead, c);
                    *self.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one column vector per free column of the
    /// reduced form, ordered by free-column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rat::zero(); self.cols];
                v[fc] = Rat::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = -m.at(prow, fc).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`; `None` when inconsistent or underdetermined.
    pub fn solve_unique(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if pivots.len() < self.cols {
            return None; // underdetermined
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rat::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of Q^r in canonical form: the reduced-row-echelon
/// basis with zero rows removed. Equality of subspaces is equality of
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning set.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Subspace {
        for r in &rows {
            assert_eq!(r.len(), ambient, "row of wrong ambient dimension");
        }
        let mut m = QMatrix::from_rows(rows);
        if m.cols() == 0 {
            m = QMatrix::zero(m.rows(), ambient);
        }
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn from_i64_rows(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_rows(
            ambient,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn line(v: Vec<Rat>) -> Subspace {
        let ambient = v.len();
        Subspace::from_rows(ambient, vec![v])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Reduces `v` against the echelon basis; the residue is zero exactly
    /// when `v` lies in the subspace.
    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|x| !x.is_zero()).expect("zero basis row");
            if !v[lead].is_zero() {
                let factor = v[lead].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &factor * y;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Coordinates of `v` in this subspace's basis, if it lies inside.
    pub fn coordinates_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut v = v.to_vec();
        let mut coords = vec![Rat::zero(); self.basis.len()];
        for (i, row) in self.basis.iter().enumerate() {
            let lead = row.iter().position(|x| !x.is_zero()).expect("zero basis row");
            if !v[lead].is_zero() {
                let factor = v[lead].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &factor * y;
                }
                coords[i] = factor;
            }
        }
        if v.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    /// The matrix of the inclusion `self -> target` in the two canonical
    /// bases; `None` if `self` is not contained in `target`.
    pub fn inclusion_matrix(&self, target: &Subspace) -> Option<QMatrix> {
        assert_eq!(self.ambient, target.ambient, "ambient mismatch");
        let mut out = QMatrix::zero(target.dim(), self.dim());
        for (j, v) in self.basis.iter().enumerate() {
            let coords = target.coordinates_of(v)?;
            for (i, c) in coords.into_iter().enumerate() {
                *out.at_mut(i, j) = c;
            }
        }
        Some(out)
    }

    /// Sum of the two subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Intersection, by the Zassenhaus block trick. The modular law
    /// `dim U + dim V = dim(U meet V) + dim(U join V)` is asserted.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let n = self.ambient;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_n(Rat::zero(), n));
            rows.push(row);
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        let mut m = QMatrix::from_rows(rows);
        m.rref();
        let mut join_rows = Vec::new();
        let mut meet_rows = Vec::new();
        for r in 0..m.rows() {
            let left = &m.row(r)[..n];
            let right = &m.row(r)[n..];
            if left.iter().any(|x| !x.is_zero()) {
                join_rows.push(left.to_vec());
            } else if right.iter().any(|x| !x.is_zero()) {
                meet_rows.push(right.to_vec());
            }
        }
        let join = Subspace::from_rows(n, join_rows);
        let meet = Subspace::from_rows(n, meet_rows);
        assert_eq!(
            self.dim() + other.dim(),
            meet.dim() + join.dim(),
            "modular law violated"
        );
        meet
    }

    /// A complement of `self` inside `target` (which must contain it),
    /// chosen greedily from `target`'s canonical basis rows.
    pub fn complement_in(&self, target: &Subspace) -> Subspace {
        assert!(target.contains(self), "complement target does not contain the subspace");
        let mut span = self.clone();
        let mut picked = Vec::new();
        for row in &target.basis {
            if !span.contains_vector(row) {
                picked.push(row.clone());
                span = span.join(&Subspace::from_rows(self.ambient, vec![row.clone()]));
            }
        }
        Subspace::from_rows(self.ambient, picked)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of Q^{})", self.dim(), self.ambient)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_full() {
            return write!(f, "Q^{}", self.ambient);
        }
        write!(f, "span{{")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}
