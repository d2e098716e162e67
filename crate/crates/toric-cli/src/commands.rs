//! One function per CLI command. Each returns both renderings (text and a
//! single JSON document) plus stderr warnings and the process exit code,
//! so the dispatcher stays trivial and reports stay byte-deterministic.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use toric::coxring::{irrelevant_ideal, sigma_hat_monomial};
use toric::euler::{
    build_euler_resolution, verify_resolution, EulerError, EulerResolution, ResolutionReport,
};
use toric::families::{
    check_compatibility, global_sections, multifiltration_from_klyachko, section_box,
    window_from_multifiltration, DegreeBox, FamiliesError, KlyachkoData, QMatrix, Subspace,
    DEFAULT_CLOSURE_LIMIT,
};
use toric::fan::{dual_cone, faces, Cone, Fan};
use toric::lattice::{chow_presentation, ChowClass, ChowPresentation};

use crate::files::{
    self, bundle_to_file, fan_to_file, parse_bundle, parse_fan, parse_resolution, RatLit,
};
use crate::{CliError, ExitKind, Format};

pub struct Output {
    text: String,
    json: Value,
    warnings: Vec<String>,
    exit_code: i32,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            warnings: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn render(self, format: Format) -> (String, i32) {
        for w in &self.warnings {
            eprintln!("{}", w);
        }
        let body = match format {
            Format::Text => self.text,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .expect("report serialization cannot fail");
                s.push('\n');
                s
            }
        };
        (body, self.exit_code)
    }
}

fn int_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn chow_class_json(class: &ChowClass) -> Value {
    json!({
        "free": class.free.iter().map(int_json).collect::<Vec<_>>(),
        "torsion": class.torsion.iter().map(int_json).collect::<Vec<_>>(),
    })
}

fn rat_json(r: &toric::families::Rat) -> Value {
    serde_json::to_value(RatLit::from_rat(r)).expect("rational literal serializes")
}

fn subspace_json(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s
            .basis()
            .iter()
            .map(|row| row.iter().map(rat_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn qmatrix_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rat_json).collect()))
            .collect(),
    )
}

fn fan_json(fan: &Fan) -> Value {
    serde_json::to_value(fan_to_file(fan)).expect("fan file serializes")
}

fn parse_cone_flag(spec: &str, fan: &Fan) -> Result<Cone, CliError> {
    let trimmed = spec.trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(Cone::zero());
    }
    let mut indices = Vec::new();
    for part in trimmed.split(',') {
        let idx: usize = part.trim().parse().map_err(|_| {
            CliError::parse(format!("invalid ray index {:?} in --cone", part.trim()))
        })?;
        if idx >= fan.n_rays() {
            return Err(CliError::validation(format!(
                "--cone references ray {}, but the fan has {} rays",
                idx,
                fan.n_rays()
            )));
        }
        indices.push(idx);
    }
    Ok(Cone::new(indices))
}

fn parse_box_flag(spec: &str, dim: usize) -> Result<DegreeBox, CliError> {
    let ranges: Vec<&str> = spec.split(',').collect();
    let parse_range = |s: &str| -> Result<(i64, i64), CliError> {
        let err = || CliError::parse(format!("invalid --box range {:?}; expected \"a..b\"", s));
        let (lo, hi) = s.split_once("..").ok_or_else(err)?;
        Ok((
            lo.trim().parse().map_err(|_| err())?,
            hi.trim().parse().map_err(|_| err())?,
        ))
    };
    let parsed: Vec<(i64, i64)> = ranges
        .iter()
        .map(|r| parse_range(r))
        .collect::<Result<_, _>>()?;
    let (lo, hi): (Vec<i64>, Vec<i64>) = if parsed.len() == 1 {
        (vec![parsed[0].0; dim], vec![parsed[0].1; dim])
    } else if parsed.len() == dim {
        parsed.into_iter().unzip()
    } else {
        return Err(CliError::parse(format!(
            "--box needs 1 or {} ranges, got {}",
            dim,
            ranges.len()
        )));
    };
    DegreeBox::new(lo, hi)
        .map_err(|e| CliError::validation(format!("invalid --box: {}", e)))
}

fn euler_error(e: EulerError) -> CliError {
    let message = e.to_string();
    match e {
        EulerError::WrongRank { .. }
        | EulerError::WrongRayCount { .. }
        | EulerError::NotTwoStep { .. }
        | EulerError::BadLine { .. }
        | EulerError::BadIndices { .. }
        | EulerError::Cox(_) => CliError::validation(message),
        _ => CliError::math(message),
    }
}

pub fn fan_info(fan_path: &Path) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let smooth = fan.is_smooth();
    let complete = fan.is_complete().ok();
    let chow = chow_presentation(&fan).ok();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "fan: rank {}, {} rays, {} maximal cones",
        fan.dim(),
        fan.n_rays(),
        fan.max_cones().len()
    );
    let _ = writeln!(text, "rays:");
    for (i, r) in fan.rays().iter().enumerate() {
        let _ = writeln!(text, "  ray {}: {}", i, r);
    }
    let _ = writeln!(text, "maximal cones:");
    for (i, c) in fan.max_cones().iter().enumerate() {
        let _ = writeln!(text, "  cone {}: rays {:?}", i, c.ray_indices());
    }
    let _ = writeln!(text, "smooth: {}", smooth);
    match complete {
        Some(c) => {
            let _ = writeln!(text, "complete: {}", c);
        }
        None => {
            let _ = writeln!(text, "complete: n/a (only decided up to rank 2)");
        }
    }
    match &chow {
        Some(chow) => {
            let _ = writeln!(text, "chow group: {}", chow.group_name());
            let _ = writeln!(text, "ray classes:");
            for r in 0..fan.n_rays() {
                let _ = writeln!(text, "  [D_{}] = {}", r, chow.class_of_ray(r));
            }
        }
        None => {
            let _ = writeln!(text, "chow group: undefined (rays span a proper subspace)");
        }
    }

    let chow_json = chow.as_ref().map(|chow| chow_json(&fan, chow));
    let json = json!({
        "command": "fan info",
        "fan": fan_json(&fan),
        "smooth": smooth,
        "complete": complete,
        "chow": chow_json,
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

fn chow_json(fan: &Fan, chow: &ChowPresentation) -> Value {
    json!({
        "group": chow.group_name(),
        "free_rank": chow.free_rank,
        "invariant_factors": chow.invariant_factors.iter().map(int_json).collect::<Vec<_>>(),
        "ray_classes": (0..fan.n_rays())
            .map(|r| chow_class_json(&chow.class_of_ray(r)))
            .collect::<Vec<_>>(),
    })
}

pub fn fan_dual(fan_path: &Path, cone_spec: &str) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let cone = parse_cone_flag(cone_spec, &fan)?;
    let dual = dual_cone(&fan, &cone)
        .map_err(|e| CliError::math(format!("cannot dualize: {}", e)))?;

    let mut text = String::new();
    let _ = writeln!(text, "cone: {}", cone);
    let _ = writeln!(text, "inequalities (primal rays):");
    for n in &dual.inequalities {
        let _ = writeln!(text, "  {}", n);
    }
    let _ = writeln!(text, "dual generators:");
    for g in &dual.generators {
        let _ = writeln!(text, "  {}", g);
    }

    let coords = |v: &[num_bigint::BigInt]| -> Value {
        Value::Array(v.iter().map(int_json).collect())
    };
    let json = json!({
        "command": "fan dual",
        "cone": cone.ray_indices(),
        "inequalities": dual.inequalities.iter().map(|n| coords(n.coords())).collect::<Vec<_>>(),
        "generators": dual.generators.iter().map(|g| coords(g.coords())).collect::<Vec<_>>(),
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

pub fn fan_faces(fan_path: &Path, cone_spec: &str) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let cone = parse_cone_flag(cone_spec, &fan)?;
    let face_list =
        faces(&fan, &cone).map_err(|e| CliError::math(format!("cannot enumerate faces: {}", e)))?;

    let mut text = String::new();
    let _ = writeln!(text, "cone: {}", cone);
    let _ = writeln!(text, "faces ({}):", face_list.len());
    for f in &face_list {
        let _ = writeln!(text, "  {}", f);
    }
    let json = json!({
        "command": "fan faces",
        "cone": cone.ray_indices(),
        "faces": face_list.iter().map(|f| f.ray_indices().to_vec()).collect::<Vec<_>>(),
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

pub fn cox_info(fan_path: &Path) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let chow = chow_presentation(&fan).ok();
    let ideal = irrelevant_ideal(&fan);

    let mut text = String::new();
    let _ = writeln!(
        text,
        "cox ring: {} variables (one per ray)",
        fan.n_rays()
    );
    let _ = writeln!(text, "chart monomials:");
    for (i, c) in fan.max_cones().iter().enumerate() {
        let _ = writeln!(text, "  cone {}: {}", i, sigma_hat_monomial(&fan, c));
    }
    let _ = writeln!(
        text,
        "irrelevant ideal: {}",
        ideal
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    match &chow {
        Some(chow) => {
            let _ = writeln!(text, "grading group: {}", chow.group_name());
            let _ = writeln!(text, "variable degrees:");
            for r in 0..fan.n_rays() {
                let _ = writeln!(text, "  deg x{} = {}", r, chow.class_of_ray(r));
            }
        }
        None => {
            let _ = writeln!(text, "grading group: undefined (rays span a proper subspace)");
        }
    }

    let json = json!({
        "command": "cox info",
        "fan": fan_json(&fan),
        "chart_monomials": fan
            .max_cones()
            .iter()
            .map(|c| sigma_hat_monomial(&fan, c).to_string())
            .collect::<Vec<_>>(),
        "irrelevant_ideal": ideal.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "grading": chow.as_ref().map(|c| chow_json(&fan, c)),
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

pub fn sheaf_check(fan_path: &Path, bundle_path: &Path) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let bundle = parse_bundle(bundle_path, &fan)?;
    let data = bundle.to_klyachko();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "bundle: rank {}, {} rays ({})",
        data.rank(),
        data.n_rays(),
        bundle.form_name()
    );
    let _ = writeln!(text, "filtrations:");
    for ray in 0..data.n_rays() {
        let jumps: Vec<String> = data
            .filtration(ray)
            .jumps()
            .iter()
            .map(|(i, s)| format!("{} -> dim {}", i, s.dim()))
            .collect();
        let _ = writeln!(text, "  ray {}: {}", ray, jumps.join(", "));
    }

    let mut cone_reports = Vec::new();
    let mut all_compatible = true;
    let mut any_skipped = false;
    let _ = writeln!(text, "compatibility:");
    for (i, sigma) in fan.max_cones().iter().enumerate() {
        if !fan.is_smooth_cone(sigma) {
            let _ = writeln!(text, "  cone {}: skipped (singular cone)", i);
            cone_reports.push(json!({
                "rays": sigma.ray_indices(),
                "status": "skipped (singular cone)",
            }));
            any_skipped = true;
            continue;
        }
        match check_compatibility(&fan, &data, sigma, DEFAULT_CLOSURE_LIMIT) {
            Ok(res) if res.compatible => {
                let pieces = res.decomposition.as_ref().map_or(0, |d| d.len());
                let _ = writeln!(
                    text,
                    "  cone {}: compatible ({} eigenspace degrees)",
                    i, pieces
                );
                cone_reports.push(json!({
                    "rays": sigma.ray_indices(),
                    "status": "compatible",
                    "eigenspace_degrees": pieces,
                }));
            }
            Ok(_) => {
                all_compatible = false;
                let _ = writeln!(text, "  cone {}: incompatible", i);
                cone_reports.push(json!({
                    "rays": sigma.ray_indices(),
                    "status": "incompatible",
                }));
            }
            Err(e @ FamiliesError::ClosureLimitExceeded { .. })
            | Err(e @ FamiliesError::Inconclusive) => {
                return Err(CliError::math(format!(
                    "compatibility undecided on cone {}: {}",
                    i, e
                )));
            }
            Err(e) => {
                return Err(CliError::validation(format!(
                    "compatibility check failed on cone {}: {}",
                    i, e
                )));
            }
        }
    }
    let verdict = if !all_compatible {
        "incompatible: the data does not come from an equivariant bundle"
    } else if any_skipped {
        "compatible on all smooth maximal cones (singular cones skipped)"
    } else {
        "compatible on all maximal cones"
    };
    let _ = writeln!(text, "verdict: {}", verdict);

    let json = json!({
        "command": "sheaf check",
        "bundle": serde_json::to_value(bundle_to_file(&bundle)).expect("bundle serializes"),
        "cones": cone_reports,
        "verdict": verdict,
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

fn resolve_box(
    spec: Option<&str>,
    fan: &Fan,
    data: &KlyachkoData,
) -> Result<(DegreeBox, bool), CliError> {
    match spec {
        Some(s) => Ok((parse_box_flag(s, fan.dim())?, false)),
        None => {
            let derived = section_box(fan, data).map_err(|e| {
                CliError::math(format!(
                    "cannot derive a degree box ({}); pass --box explicitly",
                    e
                ))
            })?;
            Ok((derived, true))
        }
    }
}

fn box_json(b: &DegreeBox) -> Value {
    json!({ "lo": b.lo(), "hi": b.hi() })
}

pub fn sheaf_sections(
    fan_path: &Path,
    bundle_path: &Path,
    box_spec: Option<&str>,
) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let bundle = parse_bundle(bundle_path, &fan)?;
    let data = bundle.to_klyachko();
    let (degree_box, derived) = resolve_box(box_spec, &fan, &data)?;
    let sections = global_sections(&fan, &data, &degree_box);
    let total: usize = sections.values().map(Subspace::dim).sum();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "degree box: {:?} .. {:?}{}",
        degree_box.lo(),
        degree_box.hi(),
        if derived { " (derived)" } else { "" }
    );
    let _ = writeln!(text, "nonzero section degrees ({}):", sections.len());
    for (m, space) in &sections {
        let _ = writeln!(text, "  m = {:?}: dim {}", m, space.dim());
    }
    let _ = writeln!(text, "total dimension: {}", total);

    let json = json!({
        "command": "sheaf sections",
        "box": box_json(&degree_box),
        "box_derived": derived,
        "sections": sections
            .iter()
            .map(|(m, s)| json!({ "degree": m, "dim": s.dim() }))
            .collect::<Vec<_>>(),
        "total_dimension": total,
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

pub fn sheaf_window(
    fan_path: &Path,
    bundle_path: &Path,
    cone_spec: &str,
    box_spec: Option<&str>,
) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let bundle = parse_bundle(bundle_path, &fan)?;
    let data = bundle.to_klyachko();
    let sigma = parse_cone_flag(cone_spec, &fan)?;
    let degree_box = match box_spec {
        Some(s) => parse_box_flag(s, fan.dim())?,
        None => {
            // Symmetric box spanning all jump indices.
            let bound = (0..data.n_rays())
                .flat_map(|r| data.filtration(r).jump_indices())
                .map(i64::abs)
                .max()
                .unwrap_or(1)
                + 1;
            DegreeBox::new(vec![-bound; fan.dim()], vec![bound; fan.dim()])
                .expect("symmetric box is valid")
        }
    };
    let mf = multifiltration_from_klyachko(&fan, &data, &sigma)
        .map_err(|e| CliError::math(format!("cannot build the chart family: {}", e)))?;
    let window = window_from_multifiltration(&fan, &mf, &degree_box)
        .map_err(|e| CliError::math(format!("cannot evaluate the window: {}", e)))?;
    let torsion_free = window.is_torsion_free();
    let nonzero: Vec<(&Vec<i64>, &Subspace)> = window
        .spaces()
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .collect();

    let mut text = String::new();
    let _ = writeln!(text, "cone: {}", sigma);
    let _ = writeln!(
        text,
        "degree box: {:?} .. {:?}",
        degree_box.lo(),
        degree_box.hi()
    );
    let _ = writeln!(
        text,
        "nonzero spaces ({} of {}):",
        nonzero.len(),
        window.spaces().len()
    );
    for (m, space) in &nonzero {
        let _ = writeln!(text, "  m = {:?}: dim {}", m, space.dim());
    }
    let _ = writeln!(text, "torsion free: {}", torsion_free);

    let json = json!({
        "command": "sheaf window",
        "cone": sigma.ray_indices(),
        "box": box_json(&degree_box),
        "spaces": nonzero
            .iter()
            .map(|(m, s)| json!({ "degree": m, "space": subspace_json(s) }))
            .collect::<Vec<_>>(),
        "torsion_free": torsion_free,
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    Ok(out)
}

fn report_text(report: &ResolutionReport) -> String {
    let mut text = String::new();
    let flag = |b: bool| if b { "pass" } else { "FAIL" };
    let _ = writeln!(text, "verification:");
    let _ = writeln!(text, "  rank:       {}", flag(report.rank_ok));
    let _ = writeln!(text, "  minors:     {}", flag(report.minor_condition_ok));
    if !report.failing_pairs.is_empty() {
        let _ = writeln!(text, "    failing pairs: {:?}", report.failing_pairs);
    }
    let _ = writeln!(text, "  grading:    {}", flag(report.grading_ok));
    let _ = writeln!(text, "  twist:      {}", flag(report.twist_ok));
    let _ = writeln!(text, "  round trip: {}", flag(report.roundtrip_ok));
    if let Some(g) = &report.change_of_basis {
        let rows: Vec<String> = (0..g.rows())
            .map(|r| {
                let entries: Vec<String> =
                    g.row(r).iter().map(|x| x.to_string()).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        let _ = writeln!(text, "change of basis: {}", rows.join(" "));
    }
    text
}

fn report_json(report: &ResolutionReport) -> Value {
    json!({
        "rank": report.rank_ok,
        "minors": report.minor_condition_ok,
        "failing_pairs": report.failing_pairs,
        "grading": report.grading_ok,
        "twist": report.twist_ok,
        "roundtrip": report.roundtrip_ok,
        "change_of_basis": report.change_of_basis.as_ref().map(qmatrix_json),
    })
}

fn resolution_body(res: &EulerResolution) -> (String, Value) {
    let mut text = String::new();
    let _ = writeln!(text, "twist: {}", res.twist);
    let _ = writeln!(text, "exponents: {:?}", res.exponents);
    let _ = writeln!(
        text,
        "coefficient matrix A' ({} x {}):",
        res.coeff_matrix.rows(),
        res.coeff_matrix.cols()
    );
    for r in 0..res.coeff_matrix.rows() {
        let entries: Vec<String> = res
            .coeff_matrix
            .row(r)
            .iter()
            .map(|x| x.to_string())
            .collect();
        let _ = writeln!(text, "  [{}]", entries.join(", "));
    }
    let _ = writeln!(text, "monomial matrix A:");
    for line in format!("{}", res.monomial_matrix).lines() {
        let _ = writeln!(text, "  {}", line);
    }

    let monomials: Vec<Vec<String>> = (0..res.monomial_matrix.rows())
        .map(|r| {
            (0..res.monomial_matrix.cols())
                .map(|c| match res.monomial_matrix.entry(r, c) {
                    None => "0".to_string(),
                    Some((coeff, m)) => {
                        if coeff == &toric::families::rat(1) {
                            m.to_string()
                        } else if coeff == &toric::families::rat(-1) {
                            format!("-{}", m)
                        } else {
                            format!("{}*{}", coeff, m)
                        }
                    }
                })
                .collect()
        })
        .collect();
    let json = json!({
        "resolution": serde_json::to_value(files::resolution_to_file(res))
            .expect("resolution serializes"),
        "monomials": monomials,
    });
    (text, json)
}

pub fn euler_resolve(fan_path: &Path, bundle_path: &Path) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let bundle = parse_bundle(bundle_path, &fan)?;
    let b = bundle.to_rank2()?;
    let res = build_euler_resolution(&fan, &b).map_err(euler_error)?;

    let (mut text, body) = resolution_body(&res);
    text.push_str(&report_text(&res.report));
    let verdict = if res.report.all_pass() { "PASS" } else { "FAIL" };
    let _ = writeln!(text, "verification verdict: {}", verdict);

    let mut json_map = Map::new();
    json_map.insert("command".into(), json!("euler resolve"));
    for (k, v) in body.as_object().expect("object").iter() {
        json_map.insert(k.clone(), v.clone());
    }
    json_map.insert("report".into(), report_json(&res.report));
    json_map.insert("verdict".into(), json!(verdict));

    let mut out = Output::new(text, Value::Object(json_map));
    out.warnings = warnings;
    out.exit_code = if res.report.all_pass() { 0 } else { 1 };
    Ok(out)
}

pub fn euler_verify(
    fan_path: &Path,
    bundle_path: &Path,
    resolution_path: &Path,
) -> Result<Output, CliError> {
    let (fan, warnings) = parse_fan(fan_path)?;
    let bundle = parse_bundle(bundle_path, &fan)?;
    let b = bundle.to_rank2()?;
    let res = parse_resolution(resolution_path, &fan)?;
    let report = verify_resolution(&fan, &b, &res);

    let mut text = report_text(&report);
    let verdict = if report.all_pass() { "PASS" } else { "FAIL" };
    let _ = writeln!(text, "verification verdict: {}", verdict);

    let json = json!({
        "command": "euler verify",
        "report": report_json(&report),
        "verdict": verdict,
    });
    let mut out = Output::new(text, json);
    out.warnings = warnings;
    out.exit_code = if report.all_pass() {
        0
    } else {
        ExitKind::Math as i32
    };
    Ok(out)
}
