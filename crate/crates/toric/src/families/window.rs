//! Explicit sigma-families on a finite degree box: one subspace per
//! character in the box and one transition matrix per covering step. This
//! is the shape general coherent data takes (torsion included); windows
//! built from multifiltrations have all transitions injective.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{DegreeBox, FamiliesError, Multifiltration, QMatrix, Subspace};
use crate::fan::{Cone, Fan};
use crate::lattice::MVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWindow {
    cone: Cone,
    ambient: usize,
    degree_box: DegreeBox,
    /// Chosen generators of sigma_M, as character coordinates.
    steps: Vec<Vec<i64>>,
    spaces: BTreeMap<Vec<i64>, Subspace>,
    /// Transition chi_{m, m+g}: key (m, step index), value a
    /// (dim target x dim source) matrix in the canonical bases.
    maps: BTreeMap<(Vec<i64>, usize), QMatrix>,
}

impl FamilyWindow {
    /// Assembles a window from explicit data and checks it: every box
    /// point carries a space, every in-box step carries a map of the right
    /// shape, commuting squares commute, and loops (a step followed by its
    /// negation) compose to the identity.
    pub fn from_parts(
        cone: Cone,
        ambient: usize,
        degree_box: DegreeBox,
        steps: Vec<Vec<i64>>,
        spaces: BTreeMap<Vec<i64>, Subspace>,
        maps: BTreeMap<(Vec<i64>, usize), QMatrix>,
    ) -> Result<Self, FamiliesError> {
        let w = Self {
            cone,
            ambient,
            degree_box,
            steps,
            spaces,
            maps,
        };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<(), FamiliesError> {
        let bad = |msg: String| Err(FamiliesError::BadWindow(msg));
        for pt in self.degree_box.points() {
            let Some(space) = self.spaces.get(&pt) else {
                return bad(format!("missing space at {:?}", pt));
            };
            if space.ambient_dim() != self.ambient {
                return bad(format!("space at {:?} has wrong ambient dimension", pt));
            }
        }
        if self.spaces.len() != self.degree_box.points().len() {
            return bad("spaces outside the box".to_string());
        }
        for ((m, step), mat) in &self.maps {
            if *step >= self.steps.len() {
                return bad(format!("map at {:?} uses unknown step {}", m, step));
            }
            let Some(target) = self.target_of(m, *step) else {
                return bad(format!("map at {:?} leaves the box", m));
            };
            let source = &self.spaces[m];
            if mat.rows() != self.spaces[&target].dim() || mat.cols() != source.dim() {
                return bad(format!("map at {:?} step {} has wrong shape", m, step));
            }
        }
        for pt in self.degree_box.points() {
            for step in 0..self.steps.len() {
                if self.target_of(&pt, step).is_some()
                    && !self.maps.contains_key(&(pt.clone(), step))
                {
                    return bad(format!("missing map at {:?} step {}", pt, step));
                }
            }
        }
        self.check_composition()
    }

    fn check_composition(&self) -> Result<(), FamiliesError> {
        for pt in self.degree_box.points() {
            for i in 0..self.steps.len() {
                let Some(mi) = self.target_of(&pt, i) else {
                    continue;
                };
                for j in 0..self.steps.len() {
                    let Some(mj) = self.target_of(&pt, j) else {
                        continue;
                    };
                    if self.target_of(&mi, j).is_none() || self.target_of(&mj, i).is_none() {
                        continue;
                    }
                    let via_i = self.maps[&(mi.clone(), j)].mul(&self.maps[&(pt.clone(), i)]);
                    let via_j = self.maps[&(mj.clone(), i)].mul(&self.maps[&(pt.clone(), j)]);
                    if via_i != via_j {
                        return Err(FamiliesError::BadWindow(format!(
                            "transition maps do not commute at {:?} over steps {} and {}",
                            pt, i, j
                        )));
                    }
                    // A loop back to the start must be the identity.
                    let returns = self.steps[i]
                        .iter()
                        .zip(&self.steps[j])
                        .all(|(a, b)| a + b == 0);
                    if returns && via_i != QMatrix::identity(self.spaces[&pt].dim()) {
                        return Err(FamiliesError::BadWindow(format!(
                            "loop at {:?} over steps {} and {} is not the identity",
                            pt, i, j
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn target_of(&self, m: &[i64], step: usize) -> Option<Vec<i64>> {
        let t: Vec<i64> = m.iter().zip(&self.steps[step]).map(|(a, b)| a + b).collect();
        self.degree_box.contains(&t).then_some(t)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn degree_box(&self) -> &DegreeBox {
        &self.degree_box
    }

    pub fn steps(&self) -> &[Vec<i64>] {
        &self.steps
    }

    pub fn spaces(&self) -> &BTreeMap<Vec<i64>, Subspace> {
        &self.spaces
    }

    pub fn space_at(&self, m: &[i64]) -> Option<&Subspace> {
        self.spaces.get(m)
    }

    pub fn maps(&self) -> &BTreeMap<(Vec<i64>, usize), QMatrix> {
        &self.maps
    }

    /// True when every transition in the window is injective.
    pub fn is_torsion_free(&self) -> bool {
        self.maps.values().all(|m| m.rank() == m.cols())
    }
}

/// Torsion-freeness test for a window (all transitions injective).
pub fn check_torsion_free(window: &FamilyWindow) -> bool {
    window.is_torsion_free()
}

pub(crate) fn mvector_to_i64(m: &MVector) -> Vec<i64> {
    m.coords()
        .iter()
        .map(|x| x.to_i64().expect("character coordinate exceeds i64"))
        .collect()
}

/// Semigroup generator steps for a smooth cone, as i64 characters.
pub(crate) fn semigroup_steps(fan: &Fan, cone: &Cone) -> Result<Vec<Vec<i64>>, FamiliesError> {
    Ok(fan
        .smooth_basis(cone)?
        .semigroup_generators()
        .iter()
        .map(mvector_to_i64)
        .collect())
}

/// Evaluates a multifiltration on a degree box. Spaces come from the jump
/// data via the Klyachko index (the pairings with the cone's rays); the
/// transitions are the canonical inclusions, which makes the window
/// torsion-free by construction.
pub fn window_from_multifiltration(
    fan: &Fan,
    mf: &Multifiltration,
    degree_box: &DegreeBox,
) -> Result<FamilyWindow, FamiliesError> {
    if degree_box.dim() != fan.dim() {
        return Err(FamiliesError::BadBox);
    }
    let steps = semigroup_steps(fan, mf.cone())?;
    let rays: Vec<usize> = mf.cone().ray_indices().to_vec();

    let index_of = |pt: &[i64]| -> Vec<i64> {
        let m = MVector::from_i64(pt);
        rays.iter()
            .map(|&r| super::pairing_level(&m, fan.ray(r)))
            .collect()
    };

    let mut spaces = BTreeMap::new();
    for pt in degree_box.points() {
        let space = mf.eval(&index_of(&pt));
        spaces.insert(pt, space);
    }

    let mut maps = BTreeMap::new();
    for pt in degree_box.points() {
        for (sidx, step) in steps.iter().enumerate() {
            let target_pt: Vec<i64> = pt.iter().zip(step).map(|(a, b)| a + b).collect();
            if !degree_box.contains(&target_pt) {
                continue;
            }
            let source = &spaces[&pt];
            let target = &spaces[&target_pt];
            let inc = source
                .inclusion_matrix(target)
                .expect("multifiltration windows are monotone along semigroup steps");
            maps.insert((pt.clone(), sidx), inc);
        }
    }

    FamilyWindow::from_parts(
        mf.cone().clone(),
        mf.ambient_dim(),
        degree_box.clone(),
        steps,
        spaces,
        maps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{rat, Filtration, KlyachkoData};
    use crate::lattice::NVector;

    fn quadrant_fan() -> Fan {
        Fan::new(
            2,
            vec![NVector::from_i64(&[1, 0]), NVector::from_i64(&[0, 1])],
            vec![Cone::new(vec![0, 1])],
        )
        .unwrap()
    }

    fn structure_sheaf_window(fan: &Fan) -> FamilyWindow {
        let data = KlyachkoData::new(
            1,
            vec![
                Filtration::new(1, vec![(0, Subspace::full(1))]).unwrap(),
                Filtration::new(1, vec![(0, Subspace::full(1))]).unwrap(),
            ],
        )
        .unwrap();
        let sigma = Cone::new(vec![0, 1]);
        let mf = crate::families::multifiltration_from_klyachko(fan, &data, &sigma).unwrap();
        let degree_box = DegreeBox::new(vec![-1, -1], vec![1, 1]).unwrap();
        window_from_multifiltration(fan, &mf, &degree_box).unwrap()
    }

    #[test]
    fn structure_sheaf_window_on_the_quadrant() {
        let fan = quadrant_fan();
        let w = structure_sheaf_window(&fan);
        for pt in w.degree_box().points() {
            let expect = if pt.iter().all(|&x| x >= 0) { 1 } else { 0 };
            assert_eq!(w.space_at(&pt).unwrap().dim(), expect, "at {:?}", pt);
        }
        // In-cone transitions are identities.
        let id = QMatrix::identity(1);
        assert_eq!(w.maps()[&(vec![0, 0], 0)], id);
        assert_eq!(w.maps()[&(vec![0, 0], 1)], id);
        assert!(w.is_torsion_free());
        assert!(check_torsion_free(&w));
    }

    #[test]
    fn zero_window_is_vacuously_torsion_free() {
        let fan = quadrant_fan();
        let sigma = Cone::new(vec![0, 1]);
        let mf = Multifiltration::new(&fan, sigma, 1, vec![]).unwrap();
        let degree_box = DegreeBox::new(vec![-1, -1], vec![1, 1]).unwrap();
        let w = window_from_multifiltration(&fan, &mf, &degree_box).unwrap();
        assert!(w.spaces().values().all(Subspace::is_zero));
        assert!(w.is_torsion_free());
    }

    #[test]
    fn closed_orbit_structure_sheaf_has_torsion() {
        // The coordinate ring of the closed orbit of the quadrant: Q at
        // m = 0, zero elsewhere, zero maps out. The transition leaving the
        // origin is Q -> 0 and fails injectivity.
        let fan = quadrant_fan();
        let sigma = Cone::new(vec![0, 1]);
        let degree_box = DegreeBox::new(vec![0, 0], vec![1, 1]).unwrap();
        let steps = semigroup_steps(&fan, &sigma).unwrap();
        let mut spaces = BTreeMap::new();
        for pt in degree_box.points() {
            let space = if pt.iter().all(|&x| x == 0) {
                Subspace::full(1)
            } else {
                Subspace::zero(1)
            };
            spaces.insert(pt, space);
        }
        let mut maps = BTreeMap::new();
        for pt in degree_box.points() {
            for (sidx, step) in steps.iter().enumerate() {
                let t: Vec<i64> = pt.iter().zip(step).map(|(a, b)| a + b).collect();
                if !degree_box.contains(&t) {
                    continue;
                }
                let shape = QMatrix::zero(spaces[&t].dim(), spaces[&pt].dim());
                maps.insert((pt.clone(), sidx), shape);
            }
        }
        let w = FamilyWindow::from_parts(sigma, 1, degree_box, steps, spaces, maps).unwrap();
        assert!(!w.is_torsion_free());
    }

    #[test]
    fn window_rejects_non_commuting_maps() {
        // Two steps on the quadrant; a deliberately wrong square.
        let fan = quadrant_fan();
        let sigma = Cone::new(vec![0, 1]);
        let degree_box = DegreeBox::new(vec![0, 0], vec![1, 1]).unwrap();
        let steps = semigroup_steps(&fan, &sigma).unwrap();
        let mut spaces = BTreeMap::new();
        for pt in degree_box.points() {
            spaces.insert(pt, Subspace::full(1));
        }
        let mut maps = BTreeMap::new();
        for pt in degree_box.points() {
            for (sidx, step) in steps.iter().enumerate() {
                let t: Vec<i64> = pt.iter().zip(step).map(|(a, b)| a + b).collect();
                if !degree_box.contains(&t) {
                    continue;
                }
                let mut m = QMatrix::identity(1);
                if pt == vec![0, 0] && sidx == 0 {
                    *m.at_mut(0, 0) = rat(2);
                }
                maps.insert((pt.clone(), sidx), m);
            }
        }
        let err = FamilyWindow::from_parts(sigma, 1, degree_box, steps, spaces, maps).unwrap_err();
        assert!(matches!(err, FamiliesError::BadWindow(_)));
    }
}
