//! Shared fixtures and random generators for the integration suites.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use toric::euler::{Rank2Bundle, RayTriple};
use toric::families::{Filtration, KlyachkoData, QMatrix, Subspace};
use toric::fan::{Cone, Fan};
use toric::lattice::NVector;

pub fn mk_fan(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        dim,
        rays.iter().map(|r| NVector::from_i64(r)).collect(),
        cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
    )
    .unwrap()
}

pub fn p2() -> Fan {
    mk_fan(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[2, 0]],
    )
}

pub fn p1p1() -> Fan {
    mk_fan(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// Hirzebruch surface: rays (1,0), (0,1), (-1,a), (0,-1).
pub fn hirzebruch(a: i64) -> Fan {
    mk_fan(
        2,
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

pub fn affine_plane() -> Fan {
    mk_fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

pub fn orthant3() -> Fan {
    mk_fan(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]])
}

/// A random smooth complete surface fan with at most `max_rays` rays,
/// built by repeated stellar insertion of the sum of an adjacent ray pair
/// (which preserves smoothness and completeness).
pub fn random_smooth_complete_fan(rng: &mut StdRng, max_rays: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = match rng.random_range(0..3) {
        0 => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        1 => vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        _ => vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
    };
    let extra = rng.random_range(0..=(max_rays.saturating_sub(rays.len())));
    for _ in 0..extra {
        let k = rng.random_range(0..rays.len());
        let next = (k + 1) % rays.len();
        let sum: Vec<i64> = rays[k].iter().zip(&rays[next]).map(|(a, b)| a + b).collect();
        rays.insert(k + 1, sum);
    }
    let n = rays.len();
    let max_cones: Vec<Cone> = (0..n).map(|i| Cone::new(vec![i, (i + 1) % n])).collect();
    Fan::new(
        2,
        rays.iter().map(|r| NVector::from_i64(r)).collect(),
        max_cones,
    )
    .expect("stellar insertions preserve fan validity")
}

pub fn random_line(rng: &mut StdRng) -> Subspace {
    loop {
        let a = rng.random_range(-3..=3i64);
        let b = rng.random_range(-3..=3i64);
        if a != 0 || b != 0 {
            return Subspace::from_i64_rows(2, &[&[a, b]]);
        }
    }
}

/// Random rank-2 data satisfying the resolution hypotheses: strict jump
/// gaps everywhere and distinct lines on adjacent rays.
pub fn random_generic_bundle(rng: &mut StdRng, fan: &Fan) -> Rank2Bundle {
    let n = fan.n_rays();
    loop {
        let triples: Vec<RayTriple> = (0..n)
            .map(|_| {
                let i1 = rng.random_range(-3..=1i64);
                let gap = rng.random_range(1..=3i64);
                RayTriple {
                    i1,
                    i2: i1 + gap,
                    line: random_line(rng),
                }
            })
            .collect();
        let b = Rank2Bundle::new(triples).unwrap();
        let generic = fan
            .surface_adjacent_pairs()
            .iter()
            .all(|&(x, y)| b.triples()[x].line != b.triples()[y].line);
        if generic {
            return b;
        }
    }
}

/// A random full filtration of Q^ambient with jump indices starting near
/// zero.
pub fn random_full_flag(rng: &mut StdRng, ambient: usize) -> Filtration {
    let rows: Vec<Vec<i64>> = loop {
        let candidate: Vec<Vec<i64>> = (0..ambient)
            .map(|_| (0..ambient).map(|_| rng.random_range(-3..=3i64)).collect())
            .collect();
        let m = QMatrix::from_rows(
            candidate
                .iter()
                .map(|r| r.iter().map(|&x| toric::families::rat(x)).collect())
                .collect(),
        );
        if m.rank() == ambient {
            break candidate;
        }
    };
    let mut jumps = Vec::new();
    let mut index = rng.random_range(-3..=0i64);
    let mut span: Vec<&[i64]> = Vec::new();
    for row in &rows {
        span.push(row);
        jumps.push((index, Subspace::from_i64_rows(ambient, &span)));
        index += rng.random_range(1..=2i64);
    }
    Filtration::new(ambient, jumps).unwrap()
}

/// Random full rank-r data on every ray of the fan.
pub fn random_klyachko(rng: &mut StdRng, fan: &Fan, rank: usize) -> KlyachkoData {
    let per_ray = (0..fan.n_rays())
        .map(|_| random_full_flag(rng, rank))
        .collect();
    KlyachkoData::new(rank, per_ray).unwrap()
}
