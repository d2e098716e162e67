//! Rational polyhedral cones and fans.
//!
//! A [`Fan`] stores primitive ray generators and maximal cones; all other
//! combinatorics (faces, dual cones, the semigroup preorder, orbits,
//! smoothness and completeness) derive from those. Construction validates
//! the fan axioms exactly for ambient rank <= 3 and falls back to cheap
//! structural checks above that; see [`Fan::is_fully_validated`].

mod dual;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{pairing, smith_normal_form, IntMatrix, MVector, NVector};

pub use dual::{dual_cone, faces, separating_character, DualCone};
pub(crate) use dual::{cone_from_inequalities, GeneratedCone};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("fan dimension must be at least 1")]
    ZeroDimension,
    #[error("ray {index} has {got} coordinates, expected {expected}")]
    RayLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("rays {a} and {b} coincide")]
    DuplicateRay { a: usize, b: usize },
    #[error("cone {cone} references ray index {index}, but the fan has {n_rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        index: usize,
        n_rays: usize,
    },
    #[error("ray {index} does not belong to any maximal cone")]
    UnusedRay { index: usize },
    #[error("maximal cone {cone} is not strongly convex or its rays are not minimal: {reason}")]
    MalformedCone { cone: usize, reason: String },
    #[error("maximal cones {a} and {b} do not intersect in a common face")]
    BadIntersection { a: usize, b: usize },
    #[error("{operation} is not supported in dimension {dim}")]
    UnsupportedDimension { dim: usize, operation: &'static str },
    #[error("cone is not a cone of the fan")]
    ConeNotInFan,
    #[error("cone {{{small:?}}} is not a face of cone {{{large:?}}}")]
    NotAFace {
        small: Vec<usize>,
        large: Vec<usize>,
    },
    #[error("cone {{{rays:?}}} is not smooth")]
    NotSmoothCone { rays: Vec<usize> },
}

/// A cone of a fan, referenced by the indices of its rays in the fan's ray
/// table. The empty index set is the zero cone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    ray_indices: Vec<usize>,
}

impl Cone {
    pub fn new(mut ray_indices: Vec<usize>) -> Self {
        ray_indices.sort_unstable();
        ray_indices.dedup();
        Self { ray_indices }
    }

    pub fn zero() -> Self {
        Self {
            ray_indices: Vec::new(),
        }
    }

    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }

    pub fn n_rays(&self) -> usize {
        self.ray_indices.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ray_indices.is_empty()
    }

    pub fn contains_subcone(&self, other: &Cone) -> bool {
        other
            .ray_indices
            .iter()
            .all(|i| self.ray_indices.binary_search(i).is_ok())
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ray_indices.len(), &self.ray_indices)
            .cmp(&(other.ray_indices.len(), &other.ray_indices))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.ray_indices)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "cone(")?;
        for (i, r) in self.ray_indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", r)?;
        }
        write!(f, ")")
    }
}

/// A fan: primitive rays plus maximal cones.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<NVector>,
    max_cones: Vec<Cone>,
    fully_validated: bool,
}

impl Fan {
    /// Builds and validates a fan. Rays must be primitive (normalize inputs
    /// first if needed) and pairwise distinct, and every ray must occur in a
    /// maximal cone. For ambient rank <= 3 the construction additionally
    /// verifies strong convexity, minimality of the listed generators and
    /// that maximal cones meet in common faces; above rank 3 these checks
    /// are skipped and `is_fully_validated` reports `false`.
    pub fn new(dim: usize, rays: Vec<NVector>, max_cones: Vec<Cone>) -> Result<Fan, FanError> {
        if dim == 0 {
            return Err(FanError::ZeroDimension);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(FanError::RayLength {
                    index: i,
                    expected: dim,
                    got: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(FanError::ZeroRay { index: i });
            }
            if !r.is_primitive() {
                return Err(FanError::NonPrimitiveRay { index: i });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(FanError::DuplicateRay { a: i, b: j });
                }
            }
        }
        let mut used = vec![false; rays.len()];
        for (ci, c) in max_cones.iter().enumerate() {
            for &idx in c.ray_indices() {
                if idx >= rays.len() {
                    return Err(FanError::RayIndexOutOfRange {
                        cone: ci,
                        index: idx,
                        n_rays: rays.len(),
                    });
                }
                used[idx] = true;
            }
        }
        if let Some(idx) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay { index: idx });
        }

        let fan = Fan {
            dim,
            rays,
            max_cones,
            fully_validated: dim <= 3,
        };
        if dim <= 3 {
            fan.validate_cones()?;
            fan.validate_intersections()?;
        }
        Ok(fan)
    }

    fn validate_cones(&self) -> Result<(), FanError> {
        for (ci, c) in self.max_cones.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gens = self.dual_parts(c)?;
            let rank = IntMatrix::from_rows(gens.generator_vectors()).rank();
            if rank < self.dim {
                return Err(FanError::MalformedCone {
                    cone: ci,
                    reason: "cone contains a line".to_string(),
                });
            }
            if c.n_rays() >= 2 {
                for &r in c.ray_indices() {
                    let others: Vec<usize> = c
                        .ray_indices()
                        .iter()
                        .copied()
                        .filter(|&o| o != r)
                        .collect();
                    let sub = self.dual_parts(&Cone::new(others))?;
                    if sub.contains(self.rays[r].coords()) {
                        return Err(FanError::MalformedCone {
                            cone: ci,
                            reason: format!("ray {} is redundant", r),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_intersections(&self) -> Result<(), FanError> {
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                let a = &self.max_cones[i];
                let b = &self.max_cones[j];
                let common: Vec<usize> = a
                    .ray_indices()
                    .iter()
                    .copied()
                    .filter(|r| b.ray_indices().binary_search(r).is_ok())
                    .collect();
                let tau = Cone::new(common);
                if !self.is_face_of(&tau, a)? || !self.is_face_of(&tau, b)? {
                    return Err(FanError::BadIntersection { a: i, b: j });
                }
                // The set-theoretic intersection must equal cone(common rays).
                let mut halfspaces = self.dual_parts(a)?.generator_vectors();
                halfspaces.extend(self.dual_parts(b)?.generator_vectors());
                let meet = cone_from_inequalities(self.dim, &halfspaces)?;
                if !meet.lineality.is_empty() {
                    return Err(FanError::BadIntersection { a: i, b: j });
                }
                let tau_dual = self.dual_parts(&tau)?;
                for ray in &meet.rays {
                    if !tau_dual.contains(ray) {
                        return Err(FanError::BadIntersection { a: i, b: j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Dual cone of `c` as raw integer data (lineality + extreme rays).
    pub(crate) fn dual_parts(&self, c: &Cone) -> Result<GeneratedCone, FanError> {
        let halfspaces: Vec<Vec<BigInt>> = c
            .ray_indices()
            .iter()
            .map(|&i| self.rays[i].coords().to_vec())
            .collect();
        cone_from_inequalities(self.dim, &halfspaces)
    }

    /// Is `tau` a face of `sigma`? Exact test via the dual-side interior
    /// point: the sum of the dual generators vanishing on `tau` must be
    /// strictly positive on every ray of `sigma` outside `tau`.
    pub(crate) fn is_face_of(&self, tau: &Cone, sigma: &Cone) -> Result<bool, FanError> {
        if !sigma.contains_subcone(tau) {
            return Ok(false);
        }
        let m = self.dual_interior_in_perp(tau, sigma)?;
        Ok(self.face_pattern_holds(&m, tau, sigma))
    }

    /// Sum of the generators of `sigma-dual \cap tau^perp`, the canonical
    /// relative-interior point of the dual face attached to `tau`.
    pub(crate) fn dual_interior_in_perp(
        &self,
        tau: &Cone,
        sigma: &Cone,
    ) -> Result<MVector, FanError> {
        let mut halfspaces: Vec<Vec<BigInt>> = sigma
            .ray_indices()
            .iter()
            .map(|&i| self.rays[i].coords().to_vec())
            .collect();
        for &i in tau.ray_indices() {
            halfspaces.push(self.rays[i].coords().iter().map(|x| -x).collect());
        }
        let parts = cone_from_inequalities(self.dim, &halfspaces)?;
        let mut sum = vec![BigInt::zero(); self.dim];
        for r in &parts.rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        Ok(MVector::new(sum))
    }

    fn face_pattern_holds(&self, m: &MVector, tau: &Cone, sigma: &Cone) -> bool {
        sigma.ray_indices().iter().all(|&i| {
            let p = pairing(m, &self.rays[i]);
            if tau.ray_indices().binary_search(&i).is_ok() {
                p.is_zero()
            } else {
                p.is_positive()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[NVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &NVector {
        &self.rays[i]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn is_fully_validated(&self) -> bool {
        self.fully_validated
    }

    pub fn cone_ray_vectors(&self, c: &Cone) -> Vec<&NVector> {
        c.ray_indices().iter().map(|&i| &self.rays[i]).collect()
    }

    fn cone_ray_matrix(&self, c: &Cone) -> IntMatrix {
        IntMatrix::from_rows(
            c.ray_indices()
                .iter()
                .map(|&i| self.rays[i].coords().to_vec())
                .collect(),
        )
    }

    /// All cones of the fan: the faces of the maximal cones, deduplicated
    /// and sorted by (dimension proxy, ray indices).
    pub fn all_cones(&self) -> Result<Vec<Cone>, FanError> {
        let mut set = BTreeSet::new();
        for c in &self.max_cones {
            for f in faces(self, c)? {
                set.insert(f);
            }
        }
        if self.max_cones.is_empty() {
            set.insert(Cone::zero());
        }
        Ok(set.into_iter().collect())
    }

    pub fn contains_cone(&self, c: &Cone) -> Result<bool, FanError> {
        Ok(self.all_cones()?.contains(c))
    }

    /// Ray-index pairs spanning the maximal 2-cones, in fan order.
    pub fn surface_adjacent_pairs(&self) -> Vec<(usize, usize)> {
        self.max_cones
            .iter()
            .filter(|c| c.n_rays() == 2)
            .map(|c| (c.ray_indices()[0], c.ray_indices()[1]))
            .collect()
    }

    /// A cone is smooth when its rays extend to a Z-basis of N, i.e. the
    /// Smith form of its ray matrix is an identity block.
    pub fn is_smooth_cone(&self, c: &Cone) -> bool {
        if c.is_zero() {
            return true;
        }
        let snf = smith_normal_form(&self.cone_ray_matrix(c));
        let factors = snf.invariant_factors();
        factors.len() == c.n_rays() && factors.iter().all(One::is_one)
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| self.is_smooth_cone(c))
    }

    /// Completeness (support = the whole space). Implemented for ambient
    /// rank 1 and 2; higher ranks return an unsupported-dimension error.
    pub fn is_complete(&self) -> Result<bool, FanError> {
        match self.dim {
            1 => {
                let pos = NVector::from_i64(&[1]);
                let neg = NVector::from_i64(&[-1]);
                let has = |v: &NVector| self.rays.iter().position(|r| r == v);
                let (Some(p), Some(n)) = (has(&pos), has(&neg)) else {
                    return Ok(false);
                };
                let want: BTreeSet<Cone> =
                    [Cone::new(vec![p]), Cone::new(vec![n])].into_iter().collect();
                let got: BTreeSet<Cone> = self.max_cones.iter().cloned().collect();
                Ok(want == got)
            }
            2 => Ok(self.is_complete_surface()),
            d => Err(FanError::UnsupportedDimension {
                dim: d,
                operation: "completeness test",
            }),
        }
    }

    fn is_complete_surface(&self) -> bool {
        let n = self.rays.len();
        if n < 3 {
            return false;
        }
        if self.max_cones.len() != n || self.max_cones.iter().any(|c| c.n_rays() != 2) {
            return false;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| cyclic_cmp(&self.rays[a], &self.rays[b]));
        let cones: BTreeSet<Cone> = self.max_cones.iter().cloned().collect();
        for k in 0..n {
            let a = order[k];
            let b = order[(k + 1) % n];
            if !cross_2d(&self.rays[a], &self.rays[b]).is_positive() {
                return false;
            }
            if !cones.contains(&Cone::new(vec![a, b])) {
                return false;
            }
        }
        true
    }

    /// Characters dual to the rays of a smooth cone, plus a lattice basis of
    /// `sigma_M^perp`. Together they generate the semigroup `sigma_M`.
    pub fn smooth_basis(&self, c: &Cone) -> Result<SmoothConeBasis, FanError> {
        if !self.is_smooth_cone(c) {
            return Err(FanError::NotSmoothCone {
                rays: c.ray_indices().to_vec(),
            });
        }
        let k = c.n_rays();
        let d = self.dim;
        if k == 0 {
            let perp_basis = (0..d)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); d];
                    v[i] = BigInt::one();
                    MVector::new(v)
                })
                .collect();
            return Ok(SmoothConeBasis {
                dual_chars: Vec::new(),
                perp_basis,
            });
        }
        let snf = smith_normal_form(&self.cone_ray_matrix(c));
        // R = U^-1 [I 0] V^-1, so X = V [I; 0] U satisfies R X = I.
        let mut dual_chars = Vec::with_capacity(k);
        for col in 0..k {
            let mut x = vec![BigInt::zero(); d];
            for (i, xi) in x.iter_mut().enumerate() {
                for j in 0..k {
                    *xi += snf.right.at(i, j) * snf.left.at(j, col);
                }
            }
            dual_chars.push(MVector::new(x));
        }
        let mut perp_basis = Vec::with_capacity(d - k);
        for col in k..d {
            let v = (0..d).map(|i| snf.right.at(i, col).clone()).collect();
            perp_basis.push(MVector::new(v));
        }
        Ok(SmoothConeBasis {
            dual_chars,
            perp_basis,
        })
    }
}

/// Dual characters and orthogonal complement attached to a smooth cone.
#[derive(Clone, Debug)]
pub struct SmoothConeBasis {
    /// `dual_chars[i]` pairs to 1 with the cone's i-th ray and to 0 with the
    /// others.
    pub dual_chars: Vec<MVector>,
    /// Lattice basis of the subgroup of characters vanishing on the cone.
    pub perp_basis: Vec<MVector>,
}

impl SmoothConeBasis {
    /// Generators of the semigroup `sigma_M`: the dual characters together
    /// with both signs of the orthogonal basis.
    pub fn semigroup_generators(&self) -> Vec<MVector> {
        let mut gens = self.dual_chars.clone();
        for p in &self.perp_basis {
            gens.push(p.clone());
            gens.push(p.neg());
        }
        gens
    }
}

fn cross_2d(a: &NVector, b: &NVector) -> BigInt {
    &a.coords()[0] * &b.coords()[1] - &a.coords()[1] * &b.coords()[0]
}

/// Exact counterclockwise angular order on nonzero 2d integer vectors,
/// starting from the positive x-axis.
fn cyclic_cmp(a: &NVector, b: &NVector) -> Ordering {
    fn half(v: &NVector) -> u8 {
        let x = &v.coords()[0];
        let y = &v.coords()[1];
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross_2d(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Result of comparing two characters in the semigroup preorder of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemigroupOrder {
    pub less_or_equal: bool,
    /// True when the difference lies in `sigma_M^perp`, i.e. the characters
    /// are equivalent (each <= the other).
    pub equivalent: bool,
}

/// The preorder `m <=_sigma m'` given by `m' - m` lying in `sigma_M`.
pub fn semigroup_leq(fan: &Fan, c: &Cone, m: &MVector, m_prime: &MVector) -> SemigroupOrder {
    assert_eq!(m.dim(), fan.dim(), "character rank mismatch");
    assert_eq!(m_prime.dim(), fan.dim(), "character rank mismatch");
    let diff = m_prime.sub(m);
    let mut less_or_equal = true;
    let mut equivalent = true;
    for &i in c.ray_indices() {
        let p = pairing(&diff, fan.ray(i));
        if p.is_negative() {
            less_or_equal = false;
        }
        if !p.is_zero() {
            equivalent = false;
        }
    }
    SemigroupOrder {
        less_or_equal,
        equivalent,
    }
}

/// All cones of the fan having `tau` as a face: the index set of the orbit
/// decomposition of the closure of the orbit of `tau`.
pub fn orbit_star(fan: &Fan, tau: &Cone) -> Result<Vec<Cone>, FanError> {
    let all = fan.all_cones()?;
    if !all.contains(tau) {
        return Err(FanError::ConeNotInFan);
    }
    let mut out = Vec::new();
    for sigma in all {
        if fan.is_face_of(tau, &sigma)? {
            out.push(sigma);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Fan {
        Fan::new(
            2,
            vec![
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[0, 1]),
                NVector::from_i64(&[-1, -1]),
            ],
            vec![
                Cone::new(vec![0, 1]),
                Cone::new(vec![1, 2]),
                Cone::new(vec![2, 0]),
            ],
        )
        .unwrap()
    }

    fn affine_plane() -> Fan {
        Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[0, 1])],
            vec![Cone::new(vec![0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        let e = Fan::new(
            2,
            vec![NVector::from_i64(&[2, 0]), NVector::from_i64(&[0, 1])],
            vec![Cone::new(vec![0, 1])],
        );
        assert_eq!(e.unwrap_err(), FanError::NonPrimitiveRay { index: 0 });

        let e = Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[0, 1])],
            vec![Cone::new(vec![0, 9])],
        );
        assert_eq!(
            e.unwrap_err(),
            FanError::RayIndexOutOfRange {
                cone: 0,
                index: 9,
                n_rays: 2
            }
        );

        let e = Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[0, 1])],
            vec![Cone::new(vec![0])],
        );
        assert_eq!(e.unwrap_err(), FanError::UnusedRay { index: 1 });

        // A "cone" containing a line is rejected.
        let e = Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[-1, 0])],
            vec![Cone::new(vec![0, 1])],
        );
        assert!(matches!(e.unwrap_err(), FanError::MalformedCone { .. }));

        // A redundant generator is rejected.
        let e = Fan::new(
            2,
            vec![
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[1, 1]),
                NVector::from_i64(&[0, 1]),
            ],
            vec![Cone::new(vec![0, 1, 2])],
        );
        assert!(matches!(e.unwrap_err(), FanError::MalformedCone { .. }));

        // Overlapping maximal cones that do not meet in a face.
        let e = Fan::new(
            2,
            vec![
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[0, 1]),
                NVector::from_i64(&[1, 1]),
            ],
            vec![Cone::new(vec![0, 1]), Cone::new(vec![0, 2])],
        );
        assert!(matches!(e.unwrap_err(), FanError::BadIntersection { .. }));
    }

    #[test]
    fn valid_subdivided_quadrant() {
        // The same overlap made into a genuine fan by splitting at (1,1).
        let fan = Fan::new(
            2,
            vec![
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[0, 1]),
                NVector::from_i64(&[1, 1]),
            ],
            vec![Cone::new(vec![0, 2]), Cone::new(vec![1, 2])],
        );
        assert!(fan.is_ok());
    }

    #[test]
    fn smoothness() {
        assert!(p2().is_smooth());
        assert!(affine_plane().is_smooth());
        let singular = Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[1, 2])],
            vec![Cone::new(vec![0, 1])],
        )
        .unwrap();
        assert!(!singular.is_smooth());
    }

    #[test]
    fn completeness() {
        assert!(p2().is_complete().unwrap());
        assert!(!affine_plane().is_complete().unwrap());
        let p1 = Fan::new(
            1,
            vec![NVector::from_i64(&[1]), NVector::from_i64(&[-1])],
            vec![Cone::new(vec![0]), Cone::new(vec![1])],
        )
        .unwrap();
        assert!(p1.is_complete().unwrap());
        let line3 = Fan::new(
            3,
            vec![NVector::from_i64(&[1, 0, 0]), NVector::from_i64(&[0, 1, 0]), NVector::from_i64(&[0, 0, 1])],
            vec![Cone::new(vec![0, 1, 2])],
        )
        .unwrap();
        assert_eq!(
            line3.is_complete().unwrap_err(),
            FanError::UnsupportedDimension {
                dim: 3,
                operation: "completeness test"
            }
        );
    }

    #[test]
    fn completeness_does_not_depend_on_ray_order() {
        // P2 with rays listed out of cyclic order.
        let fan = Fan::new(
            2,
            vec![
                NVector::from_i64(&[-1, -1]),
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[0, 1]),
            ],
            vec![
                Cone::new(vec![1, 2]),
                Cone::new(vec![0, 2]),
                Cone::new(vec![0, 1]),
            ],
        )
        .unwrap();
        assert!(fan.is_complete().unwrap());

        // Removing one maximal cone leaves a hole.
        let partial = Fan::new(
            2,
            vec![
                NVector::from_i64(&[-1, -1]),
                NVector::from_i64(&[1, 0]),
                NVector::from_i64(&[0, 1]),
            ],
            vec![Cone::new(vec![1, 2]), Cone::new(vec![0, 2])],
        )
        .unwrap();
        assert!(!partial.is_complete().unwrap());
    }

    #[test]
    fn preorder_on_quadrant() {
        let fan = affine_plane();
        let quadrant = &fan.max_cones()[0];
        let o = semigroup_leq(
            &fan,
            quadrant,
            &MVector::from_i64(&[0, 0]),
            &MVector::from_i64(&[1, 2]),
        );
        assert!(o.less_or_equal && !o.equivalent);

        let o = semigroup_leq(
            &fan,
            quadrant,
            &MVector::from_i64(&[1, 0]),
            &MVector::from_i64(&[0, 0]),
        );
        assert!(!o.less_or_equal);
    }

    #[test]
    fn preorder_on_ray_has_equivalences() {
        // sigma = ray e1 inside the P2 fan; sigma_M^perp is the y-axis.
        let fan = p2();
        let ray = Cone::new(vec![0]);
        let o = semigroup_leq(
            &fan,
            &ray,
            &MVector::from_i64(&[0, 5]),
            &MVector::from_i64(&[0, -5]),
        );
        assert!(o.less_or_equal && o.equivalent);
    }

    #[test]
    fn orbit_stars_on_p2() {
        let fan = p2();
        let all = orbit_star(&fan, &Cone::zero()).unwrap();
        assert_eq!(all.len(), fan.all_cones().unwrap().len());

        let star = orbit_star(&fan, &Cone::new(vec![0])).unwrap();
        assert_eq!(
            star,
            vec![
                Cone::new(vec![0]),
                Cone::new(vec![0, 1]),
                Cone::new(vec![0, 2])
            ]
        );

        let top = Cone::new(vec![0, 1]);
        assert_eq!(orbit_star(&fan, &top).unwrap(), vec![top.clone()]);

        assert_eq!(
            orbit_star(&fan, &Cone::new(vec![0, 1, 2])).unwrap_err(),
            FanError::ConeNotInFan
        );
    }

    #[test]
    fn smooth_basis_of_quadrant_and_ray() {
        let fan = p2();
        let basis = fan.smooth_basis(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(basis.dual_chars[0], MVector::from_i64(&[1, 0]));
        assert_eq!(basis.dual_chars[1], MVector::from_i64(&[0, 1]));
        assert!(basis.perp_basis.is_empty());

        let basis = fan.smooth_basis(&Cone::new(vec![1])).unwrap();
        assert_eq!(pairing(&basis.dual_chars[0], fan.ray(1)), BigInt::from(1));
        assert_eq!(basis.perp_basis.len(), 1);
        assert!(pairing(&basis.perp_basis[0], fan.ray(1)).is_zero());

        let singular = Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[1, 2])],
            vec![Cone::new(vec![0, 1])],
        )
        .unwrap();
        let c = Cone::new(vec![0, 1]);
        assert!(matches!(
            singular.smooth_basis(&c),
            Err(FanError::NotSmoothCone { .. })
        ));
    }

    #[test]
    fn semigroup_generators_cover_dual_cone() {
        let fan = p2();
        let ray = Cone::new(vec![0]);
        let gens = fan.smooth_basis(&ray).unwrap().semigroup_generators();
        assert_eq!(gens.len(), 3);
        for g in &gens {
            assert!(!pairing(g, fan.ray(0)).is_negative());
        }
    }
}
