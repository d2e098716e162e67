//! The bundle-compatibility decision for filtration data on a smooth cone:
//! does a common eigenspace decomposition exist that reconstructs every ray
//! filtration as a partial sum?
//!
//! On cones of dimension <= 2 the answer is always yes and the
//! decomposition is built directly. In dimension >= 3 the jump subspaces
//! are closed under meet and join first; a non-distributive closure is a
//! certificate of incompatibility, while a distributive one feeds the same
//! greedy construction, whose result is then verified exactly. The closure
//! can be infinite, so its size is capped and overflowing the cap is
//! reported as undecided rather than as a verdict.

use std::collections::{BTreeMap, BTreeSet};

use super::{FamiliesError, KlyachkoData, Subspace};
use crate::fan::{Cone, Fan};

/// Default cap on the meet/join closure size.
pub const DEFAULT_CLOSURE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityResult {
    pub compatible: bool,
    /// Present exactly when compatible: the eigenspace decomposition,
    /// indexed by jump-level vectors over the cone's rays.
    pub decomposition: Option<BTreeMap<Vec<i64>, Subspace>>,
}

/// Decides whether the restrictions of `data` to the chart of `sigma` come
/// from an equivariant bundle, returning a verified decomposition when they
/// do. `closure_limit` caps the dimension->3 lattice closure;
/// [`DEFAULT_CLOSURE_LIMIT`] is a sensible default.
pub fn check_compatibility(
    fan: &Fan,
    data: &KlyachkoData,
    sigma: &Cone,
    closure_limit: usize,
) -> Result<CompatibilityResult, FamiliesError> {
    assert_eq!(
        data.n_rays(),
        fan.n_rays(),
        "filtration data does not match the fan's rays"
    );
    if !fan.is_smooth_cone(sigma) {
        return Err(crate::fan::FanError::NotSmoothCone {
            rays: sigma.ray_indices().to_vec(),
        }
        .into());
    }
    let k = sigma.n_rays();
    let rank = data.rank();

    if k >= 3 {
        let mut seeds: BTreeSet<Subspace> = BTreeSet::new();
        for &r in sigma.ray_indices() {
            for (_, space) in data.filtration(r).jumps() {
                seeds.insert(space.clone());
            }
        }
        let closure = meet_join_closure(seeds, closure_limit)?;
        if !is_distributive(&closure) {
            return Ok(CompatibilityResult {
                compatible: false,
                decomposition: None,
            });
        }
    }

    // Greedy eigenspace construction over the grid of jump levels, in an
    // order extending componentwise domination.
    let levels: Vec<Vec<i64>> = sigma
        .ray_indices()
        .iter()
        .map(|&r| data.filtration(r).jump_indices())
        .collect();
    let mut grid = positions_grid(&levels);
    grid.sort_by_key(|pos| (pos.iter().sum::<usize>(), pos.clone()));

    let mut decomposition: BTreeMap<Vec<i64>, Subspace> = BTreeMap::new();
    let mut assigned: Vec<(Vec<i64>, Subspace)> = Vec::new();
    for pos in &grid {
        let values: Vec<i64> = pos.iter().enumerate().map(|(a, &p)| levels[a][p]).collect();
        let mut target = Subspace::full(rank);
        for (axis, &r) in sigma.ray_indices().iter().enumerate() {
            target = target.meet(&data.filtration(r).eval(values[axis]));
        }
        let mut earlier = Subspace::zero(rank);
        for (v, space) in &assigned {
            if v.iter().zip(&values).all(|(a, b)| a <= b) {
                earlier = earlier.join(space);
            }
        }
        let piece = earlier.complement_in(&target);
        if !piece.is_zero() {
            decomposition.insert(values.clone(), piece.clone());
        }
        assigned.push((values, earlier.join(&piece)));
    }

    // Exact verification: every filtration step is the sum of the pieces
    // at or below its level.
    let verified = sigma.ray_indices().iter().enumerate().all(|(axis, &r)| {
        data.filtration(r).jump_indices().iter().all(|&i| {
            let mut sum = Subspace::zero(rank);
            for (v, space) in &decomposition {
                if v[axis] <= i {
                    sum = sum.join(space);
                }
            }
            sum == data.filtration(r).eval(i)
        })
    });

    if verified {
        Ok(CompatibilityResult {
            compatible: true,
            decomposition: Some(decomposition),
        })
    } else if k <= 2 {
        // Unreachable: one or two filtrations always split simultaneously.
        unreachable!("greedy decomposition failed on a cone of dimension <= 2")
    } else {
        Err(FamiliesError::Inconclusive)
    }
}

fn positions_grid(levels: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for axis in levels {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for p in 0..axis.len() {
                let mut v = prefix.clone();
                v.push(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn meet_join_closure(
    seeds: BTreeSet<Subspace>,
    limit: usize,
) -> Result<Vec<Subspace>, FamiliesError> {
    let mut set = seeds;
    loop {
        let snapshot: Vec<Subspace> = set.iter().cloned().collect();
        let before = set.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                set.insert(snapshot[i].meet(&snapshot[j]));
                set.insert(snapshot[i].join(&snapshot[j]));
                if set.len() > limit {
                    return Err(FamiliesError::ClosureLimitExceeded { limit });
                }
            }
        }
        if set.len() == before {
            return Ok(set.into_iter().collect());
        }
    }
}

fn is_distributive(closure: &[Subspace]) -> bool {
    for a in closure {
        for b in closure {
            for c in closure {
                let lhs = a.meet(&b.join(c));
                let rhs = a.meet(b).join(&a.meet(c));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}
