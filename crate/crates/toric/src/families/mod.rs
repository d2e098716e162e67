//! Filtration data for equivariant sheaves: exact subspaces of Q^r,
//! per-ray filtrations (the reflexive/bundle case), multifiltrations on
//! smooth cones (the torsion-free case), finite degree windows (the
//! general case, torsion included) and the bundle-compatibility decision.

mod compat;
mod multifilt;
mod subspace;
mod window;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{pairing, MVector};

pub use compat::{check_compatibility, CompatibilityResult, DEFAULT_CLOSURE_LIMIT};
pub use multifilt::{multifiltration_from_klyachko, Multifiltration, MultifiltrationReport};
pub use subspace::{rat, QMatrix, Rat, Subspace};
pub use window::{check_torsion_free, window_from_multifiltration, FamilyWindow};

pub(crate) use window::semigroup_steps;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamiliesError {
    #[error("jump indices must be strictly increasing")]
    NonIncreasingJumps,
    #[error("jump spaces must be strictly increasing")]
    NonIncreasingSpaces,
    #[error("space has ambient dimension {got}, expected {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("filtration {ray} is not full: top space has dimension {dim}, rank is {rank}")]
    NotFull { ray: usize, dim: usize, rank: usize },
    #[error("index vector has length {got}, expected {expected}")]
    IndexLength { expected: usize, got: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("degree box corners disagree in length or lo > hi")]
    BadBox,
    #[error("section support is unbounded; pass an explicit degree box")]
    UnboundedSupport,
    #[error("inconsistent family window: {0}")]
    BadWindow(String),
    #[error("meet/join closure exceeded {limit} subspaces; compatibility undecided")]
    ClosureLimitExceeded { limit: usize },
    #[error("compatibility undecided: greedy decomposition failed verification")]
    Inconclusive,
}

/// An increasing filtration of Q^r with finitely many jumps, evaluated as a
/// step function of the jump list (zero below the first jump).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    jumps: Vec<(i64, Subspace)>,
}

impl Filtration {
    pub fn new(ambient: usize, mut jumps: Vec<(i64, Subspace)>) -> Result<Self, FamiliesError> {
        jumps.sort_by_key(|(i, _)| *i);
        for w in jumps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(FamiliesError::NonIncreasingJumps);
            }
        }
        let mut prev = Subspace::zero(ambient);
        for (_, space) in &jumps {
            if space.ambient_dim() != ambient {
                return Err(FamiliesError::AmbientMismatch {
                    expected: ambient,
                    got: space.ambient_dim(),
                });
            }
            if !(space.contains(&prev) && space.dim() > prev.dim()) {
                return Err(FamiliesError::NonIncreasingSpaces);
            }
            prev = space.clone();
        }
        Ok(Self { ambient, jumps })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn jumps(&self) -> &[(i64, Subspace)] {
        &self.jumps
    }

    pub fn jump_indices(&self) -> Vec<i64> {
        self.jumps.iter().map(|(i, _)| *i).collect()
    }

    pub fn first_jump_index(&self) -> Option<i64> {
        self.jumps.first().map(|(i, _)| *i)
    }

    /// Largest jump space with index <= i; zero before the first jump.
    pub fn eval(&self, i: i64) -> Subspace {
        self.jumps
            .iter()
            .rev()
            .find(|(j, _)| *j <= i)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn is_full(&self) -> bool {
        self.jumps
            .last()
            .is_some_and(|(_, s)| s.is_full())
    }

    /// The same filtration with every jump index moved by `d`.
    pub fn shift(&self, d: i64) -> Filtration {
        Filtration {
            ambient: self.ambient,
            jumps: self.jumps.iter().map(|(i, s)| (i + d, s.clone())).collect(),
        }
    }
}

/// One full filtration of the limit space per ray of the fan: the data of
/// an equivariant reflexive sheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlyachkoData {
    rank: usize,
    per_ray: Vec<Filtration>,
}

impl KlyachkoData {
    pub fn new(rank: usize, per_ray: Vec<Filtration>) -> Result<Self, FamiliesError> {
        for (ray, f) in per_ray.iter().enumerate() {
            if f.ambient_dim() != rank {
                return Err(FamiliesError::AmbientMismatch {
                    expected: rank,
                    got: f.ambient_dim(),
                });
            }
            if !f.is_full() {
                let dim = f.jumps().last().map_or(0, |(_, s)| s.dim());
                return Err(FamiliesError::NotFull { ray, dim, rank });
            }
        }
        Ok(Self { rank, per_ray })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_rays(&self) -> usize {
        self.per_ray.len()
    }

    pub fn filtration(&self, ray: usize) -> &Filtration {
        &self.per_ray[ray]
    }

    pub fn filtrations(&self) -> &[Filtration] {
        &self.per_ray
    }
}

pub(crate) fn pairing_level(m: &MVector, n: &crate::lattice::NVector) -> i64 {
    pairing(m, n)
        .to_i64()
        .expect("pairing exceeds the i64 range used for filtration indices")
}

/// The degree-m piece of the chart of `sigma`: the intersection of the ray
/// filtrations evaluated at `<m, n(rho)>`. The zero cone gives the full
/// limit space (sheaves over the torus are free).
pub fn sigma_component(fan: &Fan, data: &KlyachkoData, sigma: &Cone, m: &MVector) -> Subspace {
    assert_eq!(
        data.n_rays(),
        fan.n_rays(),
        "filtration data does not match the fan's rays"
    );
    let mut out = Subspace::full(data.rank());
    for &r in sigma.ray_indices() {
        let level = pairing_level(m, fan.ray(r));
        out = out.meet(&data.filtration(r).eval(level));
    }
    out
}

/// An axis-aligned box of characters, inclusive on both corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl DegreeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self, FamiliesError> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(FamiliesError::BadBox);
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        m.len() == self.lo.len()
            && m.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x <= h)
    }

    /// All lattice points, in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.clone());
            let mut k = self.lo.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < self.hi[k] {
                    cur[k] += 1;
                    for (x, l) in cur.iter_mut().zip(&self.lo).skip(k + 1) {
                        *x = *l;
                    }
                    break;
                }
                cur[k] = self.lo[k];
            }
        }
    }
}

/// Degrees with nonzero global sections inside `degree_box`, with their
/// section spaces: the intersection over all rays of the fan.
pub fn global_sections(
    fan: &Fan,
    data: &KlyachkoData,
    degree_box: &DegreeBox,
) -> BTreeMap<Vec<i64>, Subspace> {
    assert_eq!(
        data.n_rays(),
        fan.n_rays(),
        "filtration data does not match the fan's rays"
    );
    assert_eq!(degree_box.dim(), fan.dim(), "box rank mismatch");
    let mut out = BTreeMap::new();
    for pt in degree_box.points() {
        let m = MVector::from_i64(&pt);
        let mut space = Subspace::full(data.rank());
        for r in 0..fan.n_rays() {
            let level = pairing_level(&m, fan.ray(r));
            space = space.meet(&data.filtration(r).eval(level));
            if space.is_zero() {
                break;
            }
        }
        if !space.is_zero() {
            out.insert(pt, space);
        }
    }
    out
}

/// A degree box guaranteed to contain every nonzero section degree: the
/// bounding box of the polyhedron `<m, n(rho)> >= first jump of rho`.
/// Fails when that polyhedron is unbounded (the rays do not positively
/// span), in which case an explicit box is required.
pub fn section_box(fan: &Fan, data: &KlyachkoData) -> Result<DegreeBox, FamiliesError> {
    use num_bigint::BigInt;

    let dim = fan.dim();
    let all_rays: Vec<Vec<BigInt>> = fan
        .rays()
        .iter()
        .map(|r| r.coords().to_vec())
        .collect();
    let recession = crate::fan::cone_from_inequalities(dim, &all_rays)?;
    if !recession.rays.is_empty() || !recession.lineality.is_empty() {
        return Err(FamiliesError::UnboundedSupport);
    }

    let bounds: Vec<i64> = (0..fan.n_rays())
        .map(|r| {
            data.filtration(r)
                .first_jump_index()
                .expect("full filtrations have at least one jump")
        })
        .collect();

    // Every vertex of the polyhedron solves d of the boundary equations;
    // taking all candidate intersection points over-approximates safely.
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    let mut found = false;
    let idx: Vec<usize> = (0..fan.n_rays()).collect();
    for subset in subsets_of_size(&idx, dim) {
        let mat = QMatrix::from_rows(
            subset
                .iter()
                .map(|&r| {
                    fan.ray(r)
                        .coords()
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        );
        let rhs: Vec<Rat> = subset.iter().map(|&r| rat(bounds[r])).collect();
        let Some(point) = mat.solve_unique(&rhs) else {
            continue;
        };
        found = true;
        for (j, x) in point.iter().enumerate() {
            let f = x.floor().to_integer().to_i64().expect("box bound overflow");
            let c = x.ceil().to_integer().to_i64().expect("box bound overflow");
            lo[j] = lo[j].min(f);
            hi[j] = hi[j].max(c);
        }
    }
    if !found {
        return DegreeBox::new(vec![0; dim], vec![0; dim]);
    }
    DegreeBox::new(lo, hi)
}

pub(crate) fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, k, &mut Vec::new(), &mut out);
    out
}
