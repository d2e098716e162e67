//! File formats: fans, bundles and resolutions as UTF-8 JSON.
//!
//! Rational scalars are accepted as JSON integers or as `"p/q"` strings and
//! are emitted back in the same shape, so parse -> emit -> parse is the
//! identity on the structured representation.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use toric::coxring::FineDegree;
use toric::euler::{EulerResolution, Rank2Bundle, RayTriple, ResolutionReport};
use toric::families::{rat, Filtration, KlyachkoData, QMatrix, Rat, Subspace};
use toric::fan::{Cone, Fan};
use toric::lattice::NVector;

use crate::{CliError, ExitKind};

/// A rational literal: an integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Frac(String),
}

impl RatLit {
    pub fn to_rat(&self) -> Result<Rat, String> {
        match self {
            RatLit::Int(x) => Ok(rat(*x)),
            RatLit::Frac(s) => {
                let parts: Vec<&str> = s.split('/').collect();
                let err = || format!("invalid rational literal {:?}", s);
                match parts.as_slice() {
                    [num] => num.trim().parse::<i64>().map(rat).map_err(|_| err()),
                    [num, den] => {
                        let n: i64 = num.trim().parse().map_err(|_| err())?;
                        let d: i64 = den.trim().parse().map_err(|_| err())?;
                        if d == 0 {
                            return Err(err());
                        }
                        Ok(rat(n) / rat(d))
                    }
                    _ => Err(err()),
                }
            }
        }
    }

    pub fn from_rat(r: &Rat) -> RatLit {
        use num_traits::{One, ToPrimitive};
        if r.denom().is_one() {
            if let Some(x) = r.numer().to_i64() {
                return RatLit::Int(x);
            }
        }
        RatLit::Frac(r.to_string())
    }
}

impl fmt::Display for RatLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatLit::Int(x) => write!(f, "{}", x),
            RatLit::Frac(s) => write!(f, "{}", s),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// One filtration jump: an index and the basis rows of its space.
pub type JumpEntry = (i64, Vec<Vec<RatLit>>);
/// A rank-2 triple: two jump indices and the line's coordinates.
pub type TripleEntry = (i64, i64, Vec<RatLit>);

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtrations: Option<BTreeMap<String, Vec<JumpEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triples: Option<BTreeMap<String, TripleEntry>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionFile {
    pub twist: Vec<i64>,
    pub exponents: Vec<i64>,
    pub coeff_matrix: Vec<Vec<RatLit>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError {
        kind: ExitKind::Parse,
        message: format!("cannot read {} file {}: {}", what, path.display(), e),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError {
        kind: ExitKind::Parse,
        message: format!("cannot parse {} file {}: {}", what, path.display(), e),
    })
}

fn validation(message: String) -> CliError {
    CliError {
        kind: ExitKind::Validation,
        message,
    }
}

/// Parses and validates a fan file. Non-primitive rays are normalized; a
/// warning line per normalization is returned for stderr.
pub fn parse_fan(path: &Path) -> Result<(Fan, Vec<String>), CliError> {
    let file: FanFile = read_json(path, "fan")?;
    let mut warnings = Vec::new();
    let mut rays = Vec::with_capacity(file.rays.len());
    for (i, coords) in file.rays.iter().enumerate() {
        let ray = NVector::from_i64(coords);
        let prim = ray.primitive();
        if prim != ray {
            warnings.push(format!(
                "warning: ray {} {} normalized to {}",
                i, ray, prim
            ));
        }
        rays.push(prim);
    }
    let max_cones = file.max_cones.iter().cloned().map(Cone::new).collect();
    let fan = Fan::new(file.dim, rays, max_cones)
        .map_err(|e| validation(format!("invalid fan in {}: {}", path.display(), e)))?;
    if !fan.is_fully_validated() {
        warnings.push(format!(
            "warning: pairwise cone intersections are not verified above rank 3 (rank {})",
            fan.dim()
        ));
    }
    Ok((fan, warnings))
}

/// Bundle data in either accepted shape.
pub enum ParsedBundle {
    Filtrations(KlyachkoData),
    Triples(Rank2Bundle),
}

impl ParsedBundle {
    pub fn form_name(&self) -> &'static str {
        match self {
            ParsedBundle::Filtrations(_) => "filtration form",
            ParsedBundle::Triples(_) => "triple form",
        }
    }

    pub fn to_klyachko(&self) -> KlyachkoData {
        match self {
            ParsedBundle::Filtrations(d) => d.clone(),
            ParsedBundle::Triples(b) => b.to_klyachko(),
        }
    }

    pub fn to_rank2(&self) -> Result<Rank2Bundle, CliError> {
        match self {
            ParsedBundle::Triples(b) => Ok(b.clone()),
            ParsedBundle::Filtrations(d) => Rank2Bundle::from_klyachko(d).map_err(|e| {
                validation(format!("bundle is not rank-2 triple data: {}", e))
            }),
        }
    }
}

fn ray_keyed<'a, T>(
    map: &'a BTreeMap<String, T>,
    n_rays: usize,
    path: &Path,
) -> Result<Vec<&'a T>, CliError> {
    let mut out = Vec::with_capacity(n_rays);
    for ray in 0..n_rays {
        let key = ray.to_string();
        let entry = map.get(&key).ok_or_else(|| {
            validation(format!(
                "bundle file {}: missing entry for ray {} (fan has {} rays)",
                path.display(),
                ray,
                n_rays
            ))
        })?;
        out.push(entry);
    }
    if map.len() != n_rays {
        let extra: Vec<&String> = map
            .keys()
            .filter(|k| k.parse::<usize>().map_or(true, |i| i >= n_rays))
            .collect();
        return Err(validation(format!(
            "bundle file {}: unknown ray keys {:?}",
            path.display(),
            extra
        )));
    }
    Ok(out)
}

fn rows_to_rats(rows: &[Vec<RatLit>], path: &Path) -> Result<Vec<Vec<Rat>>, CliError> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|lit| {
                    lit.to_rat()
                        .map_err(|e| validation(format!("{}: {}", path.display(), e)))
                })
                .collect()
        })
        .collect()
}

pub fn parse_bundle(path: &Path, fan: &Fan) -> Result<ParsedBundle, CliError> {
    let file: BundleFile = read_json(path, "bundle")?;
    match (&file.filtrations, &file.triples) {
        (Some(filtrations), None) => {
            let entries = ray_keyed(filtrations, fan.n_rays(), path)?;
            let mut per_ray = Vec::with_capacity(fan.n_rays());
            for (ray, jumps) in entries.iter().enumerate() {
                let mut parsed = Vec::with_capacity(jumps.len());
                for (index, rows) in jumps.iter() {
                    let rows = rows_to_rats(rows, path)?;
                    for row in &rows {
                        if row.len() != file.rank {
                            return Err(validation(format!(
                                "bundle file {}: ray {} has a basis row of length {}, rank is {}",
                                path.display(),
                                ray,
                                row.len(),
                                file.rank
                            )));
                        }
                    }
                    parsed.push((*index, Subspace::from_rows(file.rank, rows)));
                }
                let filt = Filtration::new(file.rank, parsed).map_err(|e| {
                    validation(format!(
                        "bundle file {}: ray {}: {}",
                        path.display(),
                        ray,
                        e
                    ))
                })?;
                per_ray.push(filt);
            }
            let data = KlyachkoData::new(file.rank, per_ray)
                .map_err(|e| validation(format!("bundle file {}: {}", path.display(), e)))?;
            Ok(ParsedBundle::Filtrations(data))
        }
        (None, Some(triples)) => {
            if file.rank != 2 {
                return Err(validation(format!(
                    "bundle file {}: triple form requires rank 2, got {}",
                    path.display(),
                    file.rank
                )));
            }
            let entries = ray_keyed(triples, fan.n_rays(), path)?;
            let mut parsed = Vec::with_capacity(fan.n_rays());
            for (ray, (i1, i2, line)) in entries.iter().enumerate() {
                let row: Vec<Rat> = line
                    .iter()
                    .map(|lit| {
                        lit.to_rat()
                            .map_err(|e| validation(format!("{}: {}", path.display(), e)))
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != 2 {
                    return Err(validation(format!(
                        "bundle file {}: ray {}: line must have 2 coordinates",
                        path.display(),
                        ray
                    )));
                }
                parsed.push(RayTriple {
                    i1: *i1,
                    i2: *i2,
                    line: Subspace::from_rows(2, vec![row]),
                });
            }
            let bundle = Rank2Bundle::new(parsed)
                .map_err(|e| validation(format!("bundle file {}: {}", path.display(), e)))?;
            Ok(ParsedBundle::Triples(bundle))
        }
        (Some(_), Some(_)) => Err(validation(format!(
            "bundle file {}: give either \"filtrations\" or \"triples\", not both",
            path.display()
        ))),
        (None, None) => Err(validation(format!(
            "bundle file {}: one of \"filtrations\" or \"triples\" is required",
            path.display()
        ))),
    }
}

/// Parses a resolution, either a bare resolution object or a full
/// `euler resolve --format json` report carrying one under "resolution".
pub fn parse_resolution(path: &Path, fan: &Fan) -> Result<EulerResolution, CliError> {
    let value: Value = read_json(path, "resolution")?;
    let object = match value.get("resolution") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let file: ResolutionFile = serde_json::from_value(object).map_err(|e| CliError {
        kind: ExitKind::Parse,
        message: format!("cannot parse resolution file {}: {}", path.display(), e),
    })?;
    let n = fan.n_rays();
    if file.twist.len() != n || file.exponents.len() != n || file.coeff_matrix.len() != n {
        return Err(validation(format!(
            "resolution file {}: expected {} rows everywhere",
            path.display(),
            n
        )));
    }
    if file.exponents.iter().any(|&e| e < 0) {
        return Err(validation(format!(
            "resolution file {}: exponents must be nonnegative",
            path.display()
        )));
    }
    let rows = rows_to_rats(&file.coeff_matrix, path)?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(validation(format!(
            "resolution file {}: ragged coefficient matrix",
            path.display()
        )));
    }
    if n < 3 || cols != n - 2 {
        return Err(validation(format!(
            "resolution file {}: coefficient matrix must be {} x {}",
            path.display(),
            n,
            n.saturating_sub(2)
        )));
    }
    let coeff_matrix = QMatrix::from_rows(rows);
    let monomial_matrix = toric::coxring::MonomialMatrix::from_coefficients(
        &coeff_matrix,
        &file.exponents,
        n,
    );
    Ok(EulerResolution {
        twist: FineDegree::new(file.twist),
        exponents: file.exponents,
        coeff_matrix,
        monomial_matrix,
        report: ResolutionReport::default(),
    })
}

/// The emit side of the round trip: fans and bundles back to file shape.
pub fn fan_to_file(fan: &Fan) -> FanFile {
    use num_traits::ToPrimitive;
    FanFile {
        dim: fan.dim(),
        rays: fan
            .rays()
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .map(|x| x.to_i64().expect("ray coordinate exceeds i64"))
                    .collect()
            })
            .collect(),
        max_cones: fan
            .max_cones()
            .iter()
            .map(|c| c.ray_indices().to_vec())
            .collect(),
    }
}

pub fn bundle_to_file(bundle: &ParsedBundle) -> BundleFile {
    match bundle {
        ParsedBundle::Filtrations(data) => BundleFile {
            rank: data.rank(),
            filtrations: Some(
                (0..data.n_rays())
                    .map(|ray| {
                        let jumps = data
                            .filtration(ray)
                            .jumps()
                            .iter()
                            .map(|(i, space)| {
                                let rows = space
                                    .basis()
                                    .iter()
                                    .map(|row| row.iter().map(RatLit::from_rat).collect())
                                    .collect();
                                (*i, rows)
                            })
                            .collect();
                        (ray.to_string(), jumps)
                    })
                    .collect(),
            ),
            triples: None,
        },
        ParsedBundle::Triples(b) => BundleFile {
            rank: 2,
            filtrations: None,
            triples: Some(
                b.triples()
                    .iter()
                    .enumerate()
                    .map(|(ray, t)| {
                        let line = t.line.basis()[0].iter().map(RatLit::from_rat).collect();
                        (ray.to_string(), (t.i1, t.i2, line))
                    })
                    .collect(),
            ),
        },
    }
}

pub fn resolution_to_file(res: &EulerResolution) -> ResolutionFile {
    ResolutionFile {
        twist: res.twist.tuple().to_vec(),
        exponents: res.exponents.clone(),
        coeff_matrix: (0..res.coeff_matrix.rows())
            .map(|r| {
                res.coeff_matrix
                    .row(r)
                    .iter()
                    .map(RatLit::from_rat)
                    .collect()
            })
            .collect(),
    }
}
