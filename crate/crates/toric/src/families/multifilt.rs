//! Multifiltrations: Z^{sigma(1)}-indexed monotone families of subspaces
//! with finitely many jump generators, the data of a torsion-free sheaf on
//! the chart of a smooth cone.
//!
//! The value at an index vector is the SUM of the generator spaces whose
//! index vectors it dominates componentwise, so monotonicity holds by
//! construction and validation reduces to an exhaustion check.

use std::collections::BTreeMap;

use super::{FamiliesError, KlyachkoData, Subspace};
use crate::fan::{Cone, Fan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multifiltration {
    cone: Cone,
    ambient: usize,
    /// Sorted by index vector (lexicographically); index vectors distinct.
    jump_gens: Vec<(Vec<i64>, Subspace)>,
}

/// Per-axiom outcome of [`Multifiltration::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultifiltrationReport {
    /// Finitely many jumps (guaranteed by the representation; reported).
    pub finite: bool,
    /// Monotone in the componentwise order (by construction; reported).
    pub monotone: bool,
    /// Vanishes far below (automatic for a finite jump set; reported).
    pub bounded_below: bool,
    /// The jump spaces join to the full ambient space.
    pub exhaustive: bool,
    /// Generators already contained in the span of earlier-or-equal ones.
    pub redundant_generators: Vec<usize>,
}

impl MultifiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.finite && self.monotone && self.bounded_below && self.exhaustive
    }
}

fn dominates(big: &[i64], small: &[i64]) -> bool {
    big.iter().zip(small).all(|(b, s)| s <= b)
}

impl Multifiltration {
    /// Builds a multifiltration over a smooth cone of the fan. Generators
    /// sharing an index vector are merged by summing their spaces.
    pub fn new(
        fan: &Fan,
        cone: Cone,
        ambient: usize,
        gens: Vec<(Vec<i64>, Subspace)>,
    ) -> Result<Self, FamiliesError> {
        if !fan.is_smooth_cone(&cone) {
            return Err(crate::fan::FanError::NotSmoothCone {
                rays: cone.ray_indices().to_vec(),
            }
            .into());
        }
        let arity = cone.n_rays();
        let mut merged: BTreeMap<Vec<i64>, Subspace> = BTreeMap::new();
        for (idx, space) in gens {
            if idx.len() != arity {
                return Err(FamiliesError::IndexLength {
                    expected: arity,
                    got: idx.len(),
                });
            }
            if space.ambient_dim() != ambient {
                return Err(FamiliesError::AmbientMismatch {
                    expected: ambient,
                    got: space.ambient_dim(),
                });
            }
            merged
                .entry(idx)
                .and_modify(|s| *s = s.join(&space))
                .or_insert(space);
        }
        Ok(Self {
            cone,
            ambient,
            jump_gens: merged.into_iter().collect(),
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[(Vec<i64>, Subspace)] {
        &self.jump_gens
    }

    /// E(i) = sum of the generator spaces dominated by the index vector.
    pub fn eval(&self, idx: &[i64]) -> Subspace {
        assert_eq!(idx.len(), self.cone.n_rays(), "index arity mismatch");
        let mut out = Subspace::zero(self.ambient);
        for (gidx, space) in &self.jump_gens {
            if dominates(idx, gidx) {
                out = out.join(space);
            }
        }
        out
    }

    /// The stable value: the join of all generator spaces.
    pub fn direct_limit(&self) -> Subspace {
        let mut out = Subspace::zero(self.ambient);
        for (_, space) in &self.jump_gens {
            out = out.join(space);
        }
        out
    }

    pub fn validate(&self) -> MultifiltrationReport {
        let exhaustive = self.direct_limit().is_full();
        let mut redundant = Vec::new();
        for (i, (idx, space)) in self.jump_gens.iter().enumerate() {
            let mut others = Subspace::zero(self.ambient);
            for (j, (jdx, jspace)) in self.jump_gens.iter().enumerate() {
                if j != i && dominates(idx, jdx) {
                    others = others.join(jspace);
                }
            }
            if others.contains(space) {
                redundant.push(i);
            }
        }
        MultifiltrationReport {
            finite: true,
            monotone: true,
            bounded_below: true,
            exhaustive,
            redundant_generators: redundant,
        }
    }

    /// Restriction to a face: coordinates for the dropped rays are replaced
    /// by their stabilized value (every generator index is dominated there),
    /// so the generators simply project onto the surviving coordinates.
    pub fn restrict_to_face(&self, fan: &Fan, tau: &Cone) -> Result<Multifiltration, FamiliesError> {
        if !self.cone.contains_subcone(tau) {
            return Err(crate::fan::FanError::NotAFace {
                small: tau.ray_indices().to_vec(),
                large: self.cone.ray_indices().to_vec(),
            }
            .into());
        }
        let keep: Vec<usize> = self
            .cone
            .ray_indices()
            .iter()
            .enumerate()
            .filter(|(_, r)| tau.ray_indices().contains(r))
            .map(|(pos, _)| pos)
            .collect();
        let gens = self
            .jump_gens
            .iter()
            .map(|(idx, space)| {
                let projected: Vec<i64> = keep.iter().map(|&p| idx[p]).collect();
                (projected, space.clone())
            })
            .collect();
        Multifiltration::new(fan, tau.clone(), self.ambient, gens)
    }
}

/// The multifiltration induced on a smooth cone by per-ray filtration data:
/// at each grid point of jump levels, the intersection of the ray
/// filtrations.
pub fn multifiltration_from_klyachko(
    fan: &Fan,
    data: &KlyachkoData,
    sigma: &Cone,
) -> Result<Multifiltration, FamiliesError> {
    assert_eq!(
        data.n_rays(),
        fan.n_rays(),
        "filtration data does not match the fan's rays"
    );
    let levels: Vec<Vec<i64>> = sigma
        .ray_indices()
        .iter()
        .map(|&r| data.filtration(r).jump_indices())
        .collect();
    let mut gens: Vec<(Vec<i64>, Subspace)> = Vec::new();
    if sigma.is_zero() {
        gens.push((Vec::new(), Subspace::full(data.rank())));
    } else {
        for combo in cartesian(&levels) {
            let mut space = Subspace::full(data.rank());
            for (pos, &r) in sigma.ray_indices().iter().enumerate() {
                space = space.meet(&data.filtration(r).eval(combo[pos]));
            }
            if !space.is_zero() {
                gens.push((combo, space));
            }
        }
    }
    Multifiltration::new(fan, sigma.clone(), data.rank(), gens)
}

fn cartesian(levels: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for axis in levels {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for &v in axis {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
