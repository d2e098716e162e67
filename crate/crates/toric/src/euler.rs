//! Euler-type resolutions of rank-2 equivariant bundles on smooth complete
//! toric surfaces: a two-step presentation `0 -> O^{n-2} -> (+) O(i D_rho)
//! -> E -> 0` built from the per-ray filtration triples, together with the
//! exact verification machinery (rank, adjacent minors, grading, and the
//! cokernel round trip up to one global change of basis).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coxring::{fitting_pair_support, CoxError, FineDegree, MonomialMatrix};
use crate::families::{Filtration, KlyachkoData, QMatrix, Rat, Subspace};
use crate::fan::{Fan, FanError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EulerError {
    #[error("the fan must be a smooth complete surface with at least 3 rays: {reason}")]
    NotSmoothComplete { reason: String },
    #[error("ray {ray} has i1 = i2: the bundle splits off line bundles; decompose it instead")]
    SplitCase { ray: usize },
    #[error("adjacent rays {a} and {b} carry the same line")]
    GenericityViolation { a: usize, b: usize },
    #[error("kernel of the evaluation map has dimension {got}, expected {expected}")]
    RankDefect { expected: usize, got: usize },
    #[error("the image of basis vector {ray} vanishes in the quotient")]
    ZeroImage { ray: usize },
    #[error("ray {ray}: the line must be a 1-dimensional subspace of Q^2")]
    BadLine { ray: usize },
    #[error("ray {ray}: i1 must not exceed i2")]
    BadIndices { ray: usize },
    #[error("expected one filtration triple per ray ({expected}), got {got}")]
    WrongRayCount { expected: usize, got: usize },
    #[error("rank-2 data required, got rank {got}")]
    WrongRank { got: usize },
    #[error("ray {ray}: filtration is not a two-step full filtration of Q^2")]
    NotTwoStep { ray: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cox(#[from] CoxError),
}

/// One ray's filtration of Q^2 as an ordered triple: zero below `i1`, the
/// line from `i1`, everything from `i2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTriple {
    pub i1: i64,
    pub i2: i64,
    pub line: Subspace,
}

/// Rank-2 filtration data, one triple per ray of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Bundle {
    triples: Vec<RayTriple>,
}

impl Rank2Bundle {
    pub fn new(triples: Vec<RayTriple>) -> Result<Self, EulerError> {
        for (ray, t) in triples.iter().enumerate() {
            if t.line.ambient_dim() != 2 || t.line.dim() != 1 {
                return Err(EulerError::BadLine { ray });
            }
            if t.i1 > t.i2 {
                return Err(EulerError::BadIndices { ray });
            }
        }
        Ok(Self { triples })
    }

    pub fn triples(&self) -> &[RayTriple] {
        &self.triples
    }

    pub fn n_rays(&self) -> usize {
        self.triples.len()
    }

    /// Tensoring with the reflexive rank-1 sheaf of `degree` moves every
    /// jump index by `-degree[rho]`.
    pub fn twist(&self, degree: &FineDegree) -> Rank2Bundle {
        assert_eq!(self.triples.len(), degree.len(), "degree length mismatch");
        Rank2Bundle {
            triples: self
                .triples
                .iter()
                .enumerate()
                .map(|(r, t)| RayTriple {
                    i1: t.i1 - degree.get(r),
                    i2: t.i2 - degree.get(r),
                    line: t.line.clone(),
                })
                .collect(),
        }
    }

    /// The same data as full rank-2 filtrations.
    pub fn to_klyachko(&self) -> KlyachkoData {
        let per_ray = self
            .triples
            .iter()
            .map(|t| {
                let jumps = if t.i1 == t.i2 {
                    vec![(t.i2, Subspace::full(2))]
                } else {
                    vec![(t.i1, t.line.clone()), (t.i2, Subspace::full(2))]
                };
                Filtration::new(2, jumps).expect("triples give valid filtrations")
            })
            .collect();
        KlyachkoData::new(2, per_ray).expect("triples give full filtrations")
    }

    /// Reads triples off rank-2 filtration data with at most two jumps per
    /// ray. A single jump straight to Q^2 is the split shape `i1 = i2`; the
    /// stored line is then the canonical first basis vector of Q^2 and is
    /// never used downstream (the split case is rejected there).
    pub fn from_klyachko(data: &KlyachkoData) -> Result<Rank2Bundle, EulerError> {
        if data.rank() != 2 {
            return Err(EulerError::WrongRank { got: data.rank() });
        }
        let mut triples = Vec::with_capacity(data.n_rays());
        for ray in 0..data.n_rays() {
            let jumps = data.filtration(ray).jumps();
            let triple = match jumps {
                [(i, full)] if full.is_full() => RayTriple {
                    i1: *i,
                    i2: *i,
                    line: Subspace::from_i64_rows(2, &[&[1, 0]]),
                },
                [(i1, line), (i2, _)] if line.dim() == 1 => RayTriple {
                    i1: *i1,
                    i2: *i2,
                    line: line.clone(),
                },
                _ => return Err(EulerError::NotTwoStep { ray }),
            };
            triples.push(triple);
        }
        Rank2Bundle::new(triples)
    }
}

/// Normalizes the triples to the shape `(-i_rho, 0, line)`: returns the
/// twist degree `-i2` per ray and the shifted bundle.
pub fn normalize_twist(b: &Rank2Bundle) -> (FineDegree, Rank2Bundle) {
    let twist = FineDegree::new(b.triples.iter().map(|t| -t.i2).collect());
    let normalized = Rank2Bundle {
        triples: b
            .triples
            .iter()
            .map(|t| RayTriple {
                i1: t.i1 - t.i2,
                i2: 0,
                line: t.line.clone(),
            })
            .collect(),
    };
    (twist, normalized)
}

/// Outcome of the per-obligation checks of [`verify_resolution`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionReport {
    /// The coefficient matrix has full column rank n-2.
    pub rank_ok: bool,
    /// Every adjacent-pair minor is nonzero (the locally-free condition).
    pub minor_condition_ok: bool,
    /// Adjacent pairs whose minor vanishes.
    pub failing_pairs: Vec<(usize, usize)>,
    /// Monomial entries match the coefficients and the forced exponents.
    pub grading_ok: bool,
    /// Twist and exponents agree with the input triples.
    pub twist_ok: bool,
    /// Quotient filtrations reproduce the normalized input up to one
    /// global change of basis of the limit plane.
    pub roundtrip_ok: bool,
    /// The change of basis realizing the round trip, when it exists.
    pub change_of_basis: Option<QMatrix>,
}

impl ResolutionReport {
    pub fn all_pass(&self) -> bool {
        self.rank_ok
            && self.minor_condition_ok
            && self.grading_ok
            && self.twist_ok
            && self.roundtrip_ok
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "rank:        {}", flag(self.rank_ok))?;
        writeln!(f, "minors:      {}", flag(self.minor_condition_ok))?;
        writeln!(f, "grading:     {}", flag(self.grading_ok))?;
        writeln!(f, "twist:       {}", flag(self.twist_ok))?;
        write!(f, "round trip:  {}", flag(self.roundtrip_ok))
    }
}

/// An Euler-type presentation: the normalizing twist, the positive
/// exponent per ray, the coefficient matrix (primitive integer columns),
/// the induced matrix of monomials, and its verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResolution {
    pub twist: FineDegree,
    pub exponents: Vec<i64>,
    pub coeff_matrix: QMatrix,
    pub monomial_matrix: MonomialMatrix,
    pub report: ResolutionReport,
}

fn require_smooth_complete_surface(fan: &Fan) -> Result<(), EulerError> {
    let fail = |reason: &str| EulerError::NotSmoothComplete {
        reason: reason.to_string(),
    };
    if fan.dim() != 2 {
        return Err(fail("ambient rank is not 2"));
    }
    if fan.n_rays() < 3 {
        return Err(fail("fewer than 3 rays"));
    }
    if !fan.is_smooth() {
        return Err(fail("a maximal cone is singular"));
    }
    if !fan.is_complete()? {
        return Err(fail("the fan does not cover the plane"));
    }
    Ok(())
}

/// Scales a rational column to primitive integers with positive leading
/// entry.
fn primitive_column(v: &[Rat]) -> Vec<Rat> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints = if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.iter().map(|x| x / &gcd).collect()
    };
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints.into_iter().map(Rat::from_integer).collect()
}

/// Builds the resolution of a sufficiently general rank-2 bundle: fixes the
/// twist, sends the basis vector of each ray summand to the canonical
/// spanning vector of its line, takes the canonical kernel basis as the
/// coefficient matrix, checks the Fitting support, and records the full
/// verification report.
pub fn build_euler_resolution(fan: &Fan, b: &Rank2Bundle) -> Result<EulerResolution, EulerError> {
    require_smooth_complete_surface(fan)?;
    let n = fan.n_rays();
    if b.n_rays() != n {
        return Err(EulerError::WrongRayCount {
            expected: n,
            got: b.n_rays(),
        });
    }
    if let Some(ray) = b.triples.iter().position(|t| t.i1 == t.i2) {
        return Err(EulerError::SplitCase { ray });
    }
    for &(a, bb) in &fan.surface_adjacent_pairs() {
        if b.triples[a].line == b.triples[bb].line {
            return Err(EulerError::GenericityViolation { a, b: bb });
        }
    }

    let (twist, normalized) = normalize_twist(b);
    let exponents: Vec<i64> = b.triples.iter().map(|t| t.i2 - t.i1).collect();

    // Evaluation Q^n -> Q^2, e_rho |-> spanning vector of line_rho.
    let mut eval = QMatrix::zero(2, n);
    for (ray, t) in normalized.triples.iter().enumerate() {
        let v = &t.line.basis()[0];
        *eval.at_mut(0, ray) = v[0].clone();
        *eval.at_mut(1, ray) = v[1].clone();
    }
    let kernel = eval.kernel_basis();
    if kernel.len() != n - 2 {
        return Err(EulerError::RankDefect {
            expected: n - 2,
            got: kernel.len(),
        });
    }
    let mut coeff_matrix = QMatrix::zero(n, n - 2);
    for (j, col) in kernel.iter().enumerate() {
        for (i, x) in primitive_column(col).into_iter().enumerate() {
            *coeff_matrix.at_mut(i, j) = x;
        }
    }

    let fitting = fitting_pair_support(fan, &coeff_matrix)?;
    // Genericity of adjacent lines is equivalent to the minor condition.
    assert!(
        fitting.bundle_condition,
        "adjacent minors must be nonzero for generic data"
    );

    let monomial_matrix = MonomialMatrix::from_coefficients(&coeff_matrix, &exponents, n);
    let mut res = EulerResolution {
        twist,
        exponents,
        coeff_matrix,
        monomial_matrix,
        report: ResolutionReport::default(),
    };
    res.report = verify_resolution(fan, b, &res);
    Ok(res)
}

/// Quotient filtrations of the presented cokernel: the images of the
/// summand basis vectors in Q^n modulo the column span of the coefficient
/// matrix, realized in the concrete complement of the non-pivot
/// coordinates.
pub fn cokernel_filtrations(fan: &Fan, res: &EulerResolution) -> Result<Rank2Bundle, EulerError> {
    let n = fan.n_rays();
    if res.coeff_matrix.rows() != n || res.exponents.len() != n {
        return Err(EulerError::WrongRayCount {
            expected: n,
            got: res.coeff_matrix.rows(),
        });
    }
    let image = Subspace::from_rows(
        n,
        (0..res.coeff_matrix.cols())
            .map(|c| res.coeff_matrix.col(c))
            .collect(),
    );
    if image.dim() + 2 != n {
        return Err(EulerError::RankDefect {
            expected: n - 2,
            got: image.dim(),
        });
    }
    let pivots: Vec<usize> = image
        .basis()
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("zero basis row"))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let mut triples = Vec::with_capacity(n);
    for ray in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[ray] = Rat::one();
        for (brow, &pcol) in image.basis().iter().zip(&pivots) {
            if !e[pcol].is_zero() {
                let factor = e[pcol].clone();
                for (x, y) in e.iter_mut().zip(brow) {
                    *x -= &factor * y;
                }
            }
        }
        let bar: Vec<Rat> = free.iter().map(|&c| e[c].clone()).collect();
        if bar.iter().all(Zero::is_zero) {
            return Err(EulerError::ZeroImage { ray });
        }
        triples.push(RayTriple {
            i1: -res.exponents[ray],
            i2: 0,
            line: Subspace::from_rows(2, vec![bar]),
        });
    }
    Rank2Bundle::new(triples)
}

/// Finds an invertible 2x2 matrix carrying each source line onto the
/// corresponding target line, when one exists.
fn match_lines(source: &[Subspace], target: &[Subspace]) -> Option<QMatrix> {
    let vec_of = |s: &Subspace| s.basis()[0].clone();
    let cross = |u: &[Rat], v: &[Rat]| -> Rat { &u[0] * &v[1] - &u[1] * &v[0] };
    let n = source.len();

    let mut pair = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            if !cross(&vec_of(&source[a]), &vec_of(&source[b])).is_zero() {
                pair = Some((a, b));
                break 'outer;
            }
        }
    }

    let g = match pair {
        None => {
            // All source lines coincide; map that line onto the first
            // target line and extend by complements.
            let s = vec_of(&source[0]);
            let t = vec_of(&target[0]);
            let s_comp = vec_of(&source[0].complement_in(&Subspace::full(2)));
            let t_comp = vec_of(&target[0].complement_in(&Subspace::full(2)));
            let basis_src = QMatrix::from_rows(vec![s, s_comp]).transpose();
            let basis_tgt = QMatrix::from_rows(vec![t, t_comp]).transpose();
            basis_tgt.mul(&basis_src.inverse()?)
        }
        Some((a, b)) => {
            let sa = vec_of(&source[a]);
            let sb = vec_of(&source[b]);
            let ta = vec_of(&target[a]);
            let tb = vec_of(&target[b]);
            let basis_src = QMatrix::from_rows(vec![sa.clone(), sb.clone()]).transpose();
            let basis_src_inv = basis_src.inverse()?;
            // A third ray off both source lines pins the scaling ratio.
            let mut lambda = Rat::one();
            let mut mu = Rat::one();
            for c in 0..n {
                let sc = vec_of(&source[c]);
                let coords = basis_src_inv.apply(&sc);
                if coords[0].is_zero() || coords[1].is_zero() {
                    continue;
                }
                let basis_tgt = QMatrix::from_rows(vec![ta.clone(), tb.clone()]).transpose();
                let tcoords = basis_tgt.inverse()?.apply(&vec_of(&target[c]));
                if tcoords[0].is_zero() || tcoords[1].is_zero() {
                    return None;
                }
                lambda = &tcoords[0] / &coords[0];
                mu = &tcoords[1] / &coords[1];
                break;
            }
            let scaled = QMatrix::from_rows(vec![
                vec![&ta[0] * &lambda, &tb[0] * &mu],
                vec![&ta[1] * &lambda, &tb[1] * &mu],
            ]);
            scaled.mul(&basis_src_inv)
        }
    };

    g.inverse()?;
    for (s, t) in source.iter().zip(target) {
        if !cross(&g.apply(&vec_of(s)), &vec_of(t)).is_zero() {
            return None;
        }
    }
    Some(g)
}

/// Runs every proof obligation of the resolution against the input data
/// and reports each outcome; never fails, the report carries the verdicts.
pub fn verify_resolution(fan: &Fan, b: &Rank2Bundle, res: &EulerResolution) -> ResolutionReport {
    let mut report = ResolutionReport::default();
    let n = fan.n_rays();
    if res.coeff_matrix.rows() != n
        || n < 3
        || res.coeff_matrix.cols() != n - 2
        || res.exponents.len() != n
        || res.twist.len() != n
        || b.n_rays() != n
    {
        return report;
    }

    report.rank_ok = res.coeff_matrix.rank() == n - 2;

    match fitting_pair_support(fan, &res.coeff_matrix) {
        Ok(fitting) => {
            report.failing_pairs = fan
                .surface_adjacent_pairs()
                .into_iter()
                .filter(|p| !fitting.pairs.contains(p))
                .collect();
            report.minor_condition_ok = report.failing_pairs.is_empty();
        }
        Err(_) => {
            report.minor_condition_ok = false;
        }
    }

    report.grading_ok = res
        .monomial_matrix
        .consistent_with(&res.coeff_matrix, &res.exponents);

    report.twist_ok = b
        .triples
        .iter()
        .enumerate()
        .all(|(r, t)| res.twist.get(r) == -t.i2 && res.exponents[r] == t.i2 - t.i1);

    let (_, normalized) = normalize_twist(b);
    if let Ok(cok) = cokernel_filtrations(fan, res) {
        let indices_match = cok
            .triples()
            .iter()
            .zip(normalized.triples())
            .all(|(c, nb)| c.i1 == nb.i1 && c.i2 == nb.i2);
        if indices_match {
            let source: Vec<Subspace> = cok.triples().iter().map(|t| t.line.clone()).collect();
            let target: Vec<Subspace> =
                normalized.triples().iter().map(|t| t.line.clone()).collect();
            if let Some(g) = match_lines(&source, &target) {
                report.roundtrip_ok = true;
                report.change_of_basis = Some(g);
            }
        }
    }
    report
}
