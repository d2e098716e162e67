//! Exact integer linear algebra on the dual pair of lattices M and N.
//!
//! `MVector` holds characters (the M side), `NVector` holds one-parameter
//! subgroups and ray generators (the N side); the natural pairing between
//! them is [`pairing`]. [`smith_normal_form`] diagonalizes integer matrices
//! with unimodular transforms, and [`chow_presentation`] uses it to present
//! the Chow group as the cokernel of the ray matrix of a fan.
//!
//! Everything here is exact: coordinates are arbitrary-precision integers
//! and there is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::Fan;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rays span a sublattice of rank {rank}, but the ambient lattice has rank {dim}")]
    RaysDoNotSpan { rank: usize, dim: usize },
}

macro_rules! lattice_vector {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<BigInt>);

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                Self(coords)
            }

            pub fn from_i64(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| BigInt::from(c)).collect())
            }

            pub fn zero(dim: usize) -> Self {
                Self(vec![BigInt::zero(); dim])
            }

            pub fn coords(&self) -> &[BigInt] {
                &self.0
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|c| c.is_zero())
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.dim(), other.dim(), "dimension mismatch");
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!(self.dim(), other.dim(), "dimension mismatch");
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                Self(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, c: &BigInt) -> Self {
                Self(self.0.iter().map(|a| a * c).collect())
            }

            /// Divides out the gcd of the coordinates. The zero vector is
            /// returned unchanged; the sign is kept.
            pub fn primitive(&self) -> Self {
                let g = vector_gcd(&self.0);
                if g.is_zero() || g.is_one() {
                    return self.clone();
                }
                Self(self.0.iter().map(|a| a / &g).collect())
            }

            pub fn is_primitive(&self) -> bool {
                vector_gcd(&self.0).is_one()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, ")")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self)
            }
        }
    };
}

lattice_vector! {
    /// A character, i.e. an element of the lattice M.
    MVector
}

lattice_vector! {
    /// An element of the lattice N; primitive `NVector`s generate rays.
    NVector
}

fn vector_gcd(coords: &[BigInt]) -> BigInt {
    coords
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// The natural pairing `<m, n>` between a character and a one-parameter
/// subgroup. Panics if the two vectors live in lattices of different rank.
pub fn pairing(m: &MVector, n: &NVector) -> BigInt {
    assert_eq!(
        m.dim(),
        n.dim(),
        "pairing: dimension mismatch ({} vs {})",
        m.dim(),
        n.dim()
    );
    m.coords()
        .iter()
        .zip(n.coords())
        .map(|(a, b)| a * b)
        .sum()
}

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
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
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
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

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let a = m.at(rank, col).clone();
                let b = m.at(r, col).clone();
                for c in col..m.cols {
                    let val = &a * m.at(r, c) - &b * m.at(rank, c);
                    *m.at_mut(r, c) = val;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Determinant of a square matrix by the Bareiss fraction-free scheme.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    *m.at_mut(i, j) = val;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for c in 0..self.cols {
            let val = self.at(i, c) - q * self.at(k, c);
            *self.at_mut(i, c) = val;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let val = self.at(r, j) - q * self.at(r, k);
            *self.at_mut(r, j) = val;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let val = -self.at(r, c).clone();
            *self.at_mut(r, c) = val;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

/// A Smith normal form `U * input * V = D` with `U`, `V` unimodular and `D`
/// diagonal, nonnegative, each entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SnfDecomposition {
    /// The nonzero diagonal entries d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag.at(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form of an arbitrary integer matrix (including empty ones).
///
/// Deterministic pivot rule: the nonzero entry of smallest absolute value in
/// the remaining submatrix, ties broken by row-major position.
pub fn smith_normal_form(mat: &IntMatrix) -> SnfDecomposition {
    let rows = mat.rows();
    let cols = mat.cols();
    let mut d = mat.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        if pick_pivot(&d, k).is_none() {
            break;
        }
        loop {
            let (pi, pj) = pick_pivot(&d, k).expect("pivot vanished");
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if d.at(i, k).is_zero() {
                    continue;
                }
                let q = d.at(i, k) / d.at(k, k);
                if !q.is_zero() {
                    d.row_sub(i, k, &q);
                    u.row_sub(i, k, &q);
                }
                if !d.at(i, k).is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if d.at(k, j).is_zero() {
                    continue;
                }
                let q = d.at(k, j) / d.at(k, k);
                if !q.is_zero() {
                    d.col_sub(j, k, &q);
                    v.col_sub(j, k, &q);
                }
                if !d.at(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            match first_nondivisible(&d, k) {
                Some(i) => {
                    // Adding the offending row makes a smaller pivot reachable.
                    let minus_one = -BigInt::one();
                    d.row_sub(k, i, &minus_one);
                    u.row_sub(k, i, &minus_one);
                }
                None => break,
            }
        }
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    SnfDecomposition {
        left: u,
        diag: d,
        right: v,
    }
}

fn pick_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let val = d.at(i, j).abs();
            if val.is_zero() {
                continue;
            }
            match &best {
                Some((_, b)) if *b <= val => {}
                _ => best = Some(((i, j), val)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn first_nondivisible(d: &IntMatrix, k: usize) -> Option<usize> {
    let pivot = d.at(k, k);
    for i in k + 1..d.rows() {
        for j in k + 1..d.cols() {
            if !d.at(i, j).mod_floor(pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// An element of the Chow group in the coordinates fixed by a
/// [`ChowPresentation`]: a free part in Z^free_rank and one residue per
/// invariant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free.is_empty() && self.torsion.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        parts.extend(self.torsion.iter().map(|x| x.to_string()));
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

/// The Chow group A presented as the cokernel of the ray matrix
/// `M -> Z^{Delta(1)}`, `m |-> <m, n(rho)>`, together with the data needed
/// to project arbitrary ray-indexed degrees onto A.
#[derive(Clone, Debug)]
pub struct ChowPresentation {
    /// One row per ray: the map M -> Z^{Delta(1)}.
    pub ray_matrix: IntMatrix,
    pub free_rank: usize,
    /// Invariant factors > 1, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    /// Row index into `left` for each torsion coordinate.
    torsion_rows: Vec<usize>,
    rank: usize,
    left: IntMatrix,
}

impl ChowPresentation {
    /// Image in A of a fine degree (one integer per ray).
    pub fn class_of_degree(&self, degree: &[BigInt]) -> ChowClass {
        let n = self.ray_matrix.rows();
        assert_eq!(degree.len(), n, "degree length must equal the ray count");
        let mut transformed = vec![BigInt::zero(); n];
        for (i, t) in transformed.iter_mut().enumerate() {
            for (j, d) in degree.iter().enumerate() {
                *t += self.left.at(i, j) * d;
            }
        }
        let torsion = self
            .torsion_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&row, modulus)| transformed[row].mod_floor(modulus))
            .collect();
        let free = transformed[self.rank..].to_vec();
        ChowClass { free, torsion }
    }

    /// Class of the invariant divisor attached to ray `ray`.
    pub fn class_of_ray(&self, ray: usize) -> ChowClass {
        let n = self.ray_matrix.rows();
        let mut e = vec![BigInt::zero(); n];
        e[ray] = BigInt::one();
        self.class_of_degree(&e)
    }

    /// "Z^a + Z/d1 + ..." in a compact human-readable form.
    pub fn group_name(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Presents the Chow group of a fan whose rays span the ambient space.
pub fn chow_presentation(fan: &Fan) -> Result<ChowPresentation, LatticeError> {
    let dim = fan.dim();
    let ray_matrix = IntMatrix::from_rows(
        fan.rays()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect(),
    );
    let snf = smith_normal_form(&ray_matrix);
    let rank = snf.rank();
    if rank < dim {
        return Err(LatticeError::RaysDoNotSpan { rank, dim });
    }
    let factors = snf.invariant_factors();
    let mut invariant_factors = Vec::new();
    let mut torsion_rows = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            invariant_factors.push(d.clone());
            torsion_rows.push(i);
        }
    }
    Ok(ChowPresentation {
        free_rank: fan.n_rays() - rank,
        invariant_factors,
        torsion_rows,
        rank,
        left: snf.left,
        ray_matrix,
    })
}
