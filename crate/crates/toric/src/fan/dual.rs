//! Cone duality via double description, face enumeration and separating
//! characters.
//!
//! The kernel is [`cone_from_inequalities`]: given halfspace normals it
//! produces the lineality space and the extreme rays of the cut-out cone,
//! all as primitive integer vectors. It is exact and restricted to ambient
//! rank <= 4; rank 2 duals take the 90-degree-rotation shortcut.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Cone, Fan, FanError};
use crate::lattice::{MVector, NVector};

/// Lineality basis plus extreme rays of a cone, raw integer vectors.
#[derive(Clone, Debug)]
pub(crate) struct GeneratedCone {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl GeneratedCone {
    /// Extreme rays together with both signs of the lineality basis: a
    /// minimal generating set over the nonnegative rationals.
    pub fn generator_vectors(&self) -> Vec<Vec<BigInt>> {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        gens.sort();
        gens
    }

    /// Membership of `x` in the cone DUAL to this one, i.e. `<g, x> >= 0`
    /// for every generator. When `self` was produced from the inequality
    /// description of some cone K, this tests membership in K itself.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.rays.iter().all(|g| !dot(g, x).is_negative())
            && self.lineality.iter().all(|l| dot(l, x).is_zero())
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

struct DdRay {
    vec: Vec<BigInt>,
    /// Bit i set when this ray lies on the boundary of the i-th processed
    /// halfspace.
    zeros: u64,
}

/// Double description: from halfspace normals to (lineality, extreme rays).
pub(crate) fn cone_from_inequalities(
    dim: usize,
    halfspaces: &[Vec<BigInt>],
) -> Result<GeneratedCone, FanError> {
    if dim == 0 || dim > 4 {
        return Err(FanError::UnsupportedDimension {
            dim,
            operation: "cone duality",
        });
    }
    let mut hs: Vec<Vec<BigInt>> = Vec::new();
    for h in halfspaces {
        assert_eq!(h.len(), dim, "halfspace of wrong dimension");
        if h.iter().all(Zero::is_zero) || hs.contains(h) {
            continue;
        }
        hs.push(h.clone());
    }
    assert!(hs.len() <= 64, "too many halfspaces for the u64 bookkeeping");

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (hidx, h) in hs.iter().enumerate() {
        let bit = 1u64 << hidx;
        if let Some(pos) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            // The lineality space sticks out of the halfspace: it loses one
            // dimension and the outgoing direction becomes an extreme ray.
            let mut l0 = lineality.remove(pos);
            if dot(h, &l0).is_negative() {
                for x in &mut l0 {
                    *x = -x.clone();
                }
            }
            let d0 = dot(h, &l0);
            for l in &mut lineality {
                let dl = dot(h, l);
                if !dl.is_zero() {
                    let projected: Vec<BigInt> = l
                        .iter()
                        .zip(&l0)
                        .map(|(a, b)| a * &d0 - b * &dl)
                        .collect();
                    *l = primitive(projected);
                }
            }
            for r in &mut rays {
                let dr = dot(h, &r.vec);
                if !dr.is_zero() {
                    let projected: Vec<BigInt> = r
                        .vec
                        .iter()
                        .zip(&l0)
                        .map(|(a, b)| a * &d0 - b * &dr)
                        .collect();
                    r.vec = primitive(projected);
                }
                // Projection keeps pairings with earlier halfspaces (the
                // lineality is orthogonal to all of them) and lands on this
                // one's boundary.
                r.zeros |= bit;
            }
            rays.push(DdRay {
                vec: primitive(l0),
                zeros: bit - 1,
            });
            continue;
        }

        // Classic double-description step on the pointed part.
        let values: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.vec)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if values[i].is_zero() {
                next.push(DdRay {
                    vec: r.vec.clone(),
                    zeros: r.zeros | bit,
                });
            } else if values[i].is_positive() {
                next.push(DdRay {
                    vec: r.vec.clone(),
                    zeros: r.zeros,
                });
            }
        }
        for i in 0..rays.len() {
            if !values[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !values[j].is_negative() {
                    continue;
                }
                if !dd_adjacent(&rays, i, j) {
                    continue;
                }
                let vp = &rays[i];
                let vn = &rays[j];
                // <h, w> = 0 by construction; positive combination of the two.
                let w: Vec<BigInt> = vn
                    .vec
                    .iter()
                    .zip(&vp.vec)
                    .map(|(n, p)| n * &values[i] - p * &values[j])
                    .collect();
                next.push(DdRay {
                    vec: primitive(w),
                    zeros: (vp.zeros & vn.zeros) | bit,
                });
            }
        }
        rays = next;
    }

    Ok(GeneratedCone {
        lineality,
        rays: {
            let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.vec).collect();
            out.sort();
            out.dedup();
            out
        },
    })
}

/// Combinatorial adjacency test: no third ray is incident to every
/// halfspace active at both.
fn dd_adjacent(rays: &[DdRay], i: usize, j: usize) -> bool {
    let common = rays[i].zeros & rays[j].zeros;
    !rays
        .iter()
        .enumerate()
        .any(|(k, r)| k != i && k != j && common & !r.zeros == 0)
}

/// The dual of a 2d cone by quarter turns: m1 orthogonal to the first ray
/// and nonnegative on the second, and symmetrically.
fn dual_2d_pointed(a: &NVector, b: &NVector) -> Vec<Vec<BigInt>> {
    let rot = |v: &NVector| -> Vec<BigInt> {
        vec![-v.coords()[1].clone(), v.coords()[0].clone()]
    };
    let orient = |mut m: Vec<BigInt>, towards: &NVector| -> Vec<BigInt> {
        if dot(&m, towards.coords()).is_negative() {
            for x in &mut m {
                *x = -x.clone();
            }
        }
        m
    };
    let mut gens = vec![orient(rot(a), b), orient(rot(b), a)];
    gens.sort();
    gens.dedup();
    gens
}

/// Both representations of the dual of a cone: the cone's own rays as
/// halfspace normals, and a minimal primitive generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    /// Normals n with `<m, n> >= 0` cutting out the dual: the primitive ray
    /// generators of the primal cone, in fan order.
    pub inequalities: Vec<NVector>,
    /// Minimal generators of the dual over the nonnegative rationals,
    /// sorted; lineality directions occur with both signs.
    pub generators: Vec<MVector>,
}

/// Dual cone of `c`, with generators computed by quarter turns in rank 2
/// and by double description in ranks 3 and 4.
pub fn dual_cone(fan: &Fan, c: &Cone) -> Result<DualCone, FanError> {
    let inequalities: Vec<NVector> = c
        .ray_indices()
        .iter()
        .map(|&i| fan.ray(i).clone())
        .collect();
    let generators = if fan.dim() == 2 && c.n_rays() == 2 {
        dual_2d_pointed(&inequalities[0], &inequalities[1])
            .into_iter()
            .map(MVector::new)
            .collect()
    } else {
        fan.dual_parts(c)?
            .generator_vectors()
            .into_iter()
            .map(MVector::new)
            .collect()
    };
    Ok(DualCone {
        inequalities,
        generators,
    })
}

/// All faces of `c`, including the zero cone and `c` itself, sorted by
/// (number of rays, ray indices).
pub fn faces(fan: &Fan, c: &Cone) -> Result<Vec<Cone>, FanError> {
    let k = c.n_rays();
    if c.is_zero() {
        return Ok(vec![Cone::zero()]);
    }
    let independent = fan.cone_ray_matrix(c).rank() == k;
    let mut set: BTreeSet<Cone> = BTreeSet::new();
    if independent {
        assert!(k < 32, "face enumeration limited to 31 generators");
        // Every subset of the generators of a simplicial cone spans a face.
        for mask in 0u32..(1u32 << k) {
            let subset: Vec<usize> = c
                .ray_indices()
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask & (1 << pos) != 0)
                .map(|(_, &r)| r)
                .collect();
            set.insert(Cone::new(subset));
        }
    } else {
        let gens = fan.dual_parts(c)?.generator_vectors();
        assert!(gens.len() <= 20, "dual generator explosion");
        for mask in 0u32..(1u32 << gens.len()) {
            let chosen: Vec<&Vec<BigInt>> = gens
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask & (1 << pos) != 0)
                .map(|(_, g)| g)
                .collect();
            let subset: Vec<usize> = c
                .ray_indices()
                .iter()
                .copied()
                .filter(|&r| {
                    chosen
                        .iter()
                        .all(|g| dot(g, fan.ray(r).coords()).is_zero())
                })
                .collect();
            set.insert(Cone::new(subset));
        }
    }
    Ok(set.into_iter().collect())
}

/// A character in the relative interior of `sigma-dual \cap tau^perp`,
/// chosen canonically as the sum of that cone's extreme generators. It
/// vanishes on `tau`, is nonnegative on `sigma`, and is strictly positive
/// on every ray of `sigma` outside `tau`; localizing at it passes from the
/// chart of `sigma` to the chart of `tau`.
pub fn separating_character(fan: &Fan, tau: &Cone, sigma: &Cone) -> Result<MVector, FanError> {
    if !sigma.contains_subcone(tau) {
        return Err(FanError::NotAFace {
            small: tau.ray_indices().to_vec(),
            large: sigma.ray_indices().to_vec(),
        });
    }
    let m = fan.dual_interior_in_perp(tau, sigma)?;
    if !fan.face_pattern_holds(&m, tau, sigma) {
        return Err(FanError::NotAFace {
            small: tau.ray_indices().to_vec(),
            large: sigma.ray_indices().to_vec(),
        });
    }
    Ok(m)
}
