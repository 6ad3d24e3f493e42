//! Command implementations.
//!
//! Exit-code contract: 0 on success, 1 when a check fails, 2 on usage or
//! input errors (bad flags, unreadable files, malformed JSON, validation
//! failures, dimension mismatches). Parse errors name the offending key via
//! the deserializer path.

use std::fs;
use std::path::Path;
use std::time::Instant;

use ncf_core::abelian::crosscheck_inversion;
use ncf_core::conv::left_regular;
use ncf_core::error::Error as CoreError;
use ncf_core::fourier::{fourier_coefficients_direct, fourier_transform, invert};
use ncf_core::group::DEFAULT_MAX_ORDER;
use ncf_core::json::{BlockOperatorJson, DilationJson, OpValFnJson};
use ncf_core::posdef::naimark_dilate;
use ncf_core::{GroupSpec, OpValFn};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::de::DeserializeOwned;

use crate::report::{digest, CheckResult, RunReport};
use crate::suites::run_suite;

/// Outcome of a command: the report plus the exit status it implies.
pub struct CmdOutcome {
    pub report: RunReport,
    pub exit_code: u8,
}

/// Usage/input problems map to exit code 2; failed checks to exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

type CmdResult = Result<CmdOutcome, UsageError>;

/// The group-order cap, overridable through NCF_MAX_GROUP_ORDER.
pub fn group_order_limit() -> usize {
    std::env::var("NCF_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn read_file(path: &Path) -> Result<Vec<u8>, UsageError> {
    fs::read(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, UsageError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(&mut de)
        .map_err(|e| UsageError(format!("malformed {what}: at {}: {}", e.path(), e.inner())))
}

fn build_fn(wire: &OpValFnJson, limit: usize) -> Result<OpValFn, UsageError> {
    wire.build_with_limit(limit)
        .map_err(|e| UsageError(format!("invalid function: {e}")))
}

fn finish(mut report: RunReport, start: Instant, out: Option<&Path>) -> CmdResult {
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let exit_code = if report.all_hard_passed() { 0 } else { 1 };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, text + "\n")
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(CmdOutcome { report, exit_code })
}

pub fn cmd_verify(suite: &str, seed: u64, out: Option<&Path>) -> CmdResult {
    let start = Instant::now();
    let checks =
        run_suite(suite, seed).ok_or_else(|| UsageError(format!("unknown suite {suite:?}")))?;
    let mut report = RunReport::new(
        format!("verify {suite} --seed {seed}"),
        digest(&[suite.as_bytes(), &seed.to_le_bytes()]),
        seed,
    );
    report.checks = checks;
    finish(report, start, out)
}

pub fn cmd_transform(
    group: Option<&Path>,
    function: &Path,
    invert_direction: bool,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    let start = Instant::now();
    let fn_bytes = read_file(function)?;
    let wire: OpValFnJson = parse_json(&fn_bytes, "function JSON")?;
    let mut digest_parts: Vec<&[u8]> = vec![&fn_bytes];
    let group_bytes;
    if let Some(gpath) = group {
        group_bytes = read_file(gpath)?;
        let spec: GroupSpec = parse_json(&group_bytes, "group JSON")?;
        if spec != wire.group {
            return Err(UsageError(
                "group descriptor does not match the function's group".into(),
            ));
        }
        digest_parts.push(&group_bytes);
    }
    let f = build_fn(&wire, group_order_limit())?;

    let direction = if invert_direction {
        "invert"
    } else {
        "forward"
    };
    let mut report = RunReport::new(
        format!("transform --direction {direction}"),
        digest(&digest_parts),
        seed,
    );

    if invert_direction {
        // input is a^; rebuild the coefficient form and the block operator
        let (coeffs, x) = invert(&f);
        let round_trip = fourier_transform(&coeffs).max_residual(&f);
        report.checks.push(CheckResult::hard(
            "invert/transform-round-trip",
            round_trip <= 1e-14,
            round_trip,
        ));
        let lam = left_regular(&coeffs);
        let rec = x.sub(&lam).frobenius_norm() / (1.0 + lam.frobenius_norm());
        report.checks.push(CheckResult::hard(
            "invert/operator-reassembly",
            rec <= 1e-10,
            rec,
        ));
        report.outputs = Some(serde_json::json!({
            "coefficients": OpValFnJson::from_fn(&coeffs),
            "operator": BlockOperatorJson::from_operator(&x),
        }));
    } else {
        let ahat = fourier_transform(&f);
        let route = ahat.max_residual(&fourier_coefficients_direct(&f));
        report.checks.push(CheckResult::hard(
            "transform/route-crosscheck",
            route <= 1e-14,
            route,
        ));
        report.outputs = Some(serde_json::json!({ "ahat": OpValFnJson::from_fn(&ahat) }));
    }
    finish(report, start, out)
}

pub fn cmd_dilate(
    group: Option<&Path>,
    function: &Path,
    rank_tol: f64,
    out: Option<&Path>,
) -> CmdResult {
    let start = Instant::now();
    let fn_bytes = read_file(function)?;
    let wire: OpValFnJson = parse_json(&fn_bytes, "function JSON")?;
    if let Some(gpath) = group {
        let spec: GroupSpec = parse_json(&read_file(gpath)?, "group JSON")?;
        if spec != wire.group {
            return Err(UsageError(
                "group descriptor does not match the function's group".into(),
            ));
        }
    }
    let f = build_fn(&wire, group_order_limit())?;
    let mut report = RunReport::new(
        format!("dilate --tol {rank_tol:e}"),
        digest(&[&fn_bytes]),
        0,
    );

    match naimark_dilate(&f, rank_tol) {
        Ok(d) => {
            let scale = 1.0 + f.coeff(0).frobenius_norm();
            report.checks.push(CheckResult::hard(
                "dilate/reconstruction",
                d.reconstruction_residual() <= 1e-8 * scale,
                d.reconstruction_residual() / scale,
            ));
            report.checks.push(CheckResult::hard(
                "dilate/unitarity",
                d.max_unitarity_defect() <= 1e-10 * (1.0 + d.dim() as f64),
                d.max_unitarity_defect(),
            ));
            report.outputs = Some(serde_json::json!(DilationJson::from_dilation(&d)));
        }
        Err(CoreError::NotPositiveDefinite { min_eig }) => {
            report.checks.push(CheckResult::hard(
                "dilate/positive-definite",
                false,
                min_eig.abs(),
            ));
            report.outputs = Some(serde_json::json!({ "min_eig": min_eig }));
        }
        Err(e) => return Err(UsageError(format!("dilation failed: {e}"))),
    }
    finish(report, start, out)
}

pub fn cmd_dft_crosscheck(
    group: &Path,
    function: Option<&Path>,
    seed: u64,
    tol: f64,
    out: Option<&Path>,
) -> CmdResult {
    let start = Instant::now();
    let group_bytes = read_file(group)?;
    let spec: GroupSpec = parse_json(&group_bytes, "group JSON")?;
    let g = spec
        .build_with_limit(group_order_limit())
        .map_err(|e| UsageError(format!("invalid group: {e}")))?;

    let mut digest_parts: Vec<&[u8]> = vec![&group_bytes];
    let fn_bytes;
    let f = match function {
        Some(path) => {
            fn_bytes = read_file(path)?;
            let wire: OpValFnJson = parse_json(&fn_bytes, "function JSON")?;
            if wire.group != *g.spec() {
                return Err(UsageError(
                    "group descriptor does not match the function's group".into(),
                ));
            }
            digest_parts.push(&fn_bytes);
            build_fn(&wire, group_order_limit())?
        }
        None => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            OpValFn::random(g.clone(), 1, &mut rng)
        }
    };

    let mut report = RunReport::new(
        format!("dft-crosscheck --seed {seed}"),
        digest(&digest_parts),
        seed,
    );
    match crosscheck_inversion(&f) {
        Ok(cross) => {
            report.checks.push(CheckResult::hard(
                "dft-crosscheck/pointwise-inversion",
                cross.pointwise_residual <= tol,
                cross.pointwise_residual,
            ));
            report.checks.push(CheckResult::hard(
                "dft-crosscheck/dual-side",
                cross.dual_residual <= tol,
                cross.dual_residual,
            ));
            let dual = ncf_core::abelian::dual_group(&g)
                .map_err(|e| UsageError(format!("dual construction failed: {e}")))?;
            report.outputs = Some(serde_json::json!({
                "dual": ncf_core::json::DualGroupJson::from_dual(&dual),
            }));
        }
        Err(e @ CoreError::NotAbelian { .. }) => {
            return Err(UsageError(format!(
                "dft-crosscheck requires an Abelian group: {e}"
            )))
        }
        Err(e) => return Err(UsageError(format!("crosscheck failed: {e}"))),
    }
    finish(report, start, out)
}

pub fn cmd_axb_demo(out: Option<&Path>) -> CmdResult {
    let start = Instant::now();
    let mut report = RunReport::new("axb-demo", digest(&[b"axb-demo"]), 0);
    report.checks = crate::suites::suite_axb(0);
    let params = ncf_core::axb::AxbParams::default();
    report.outputs = Some(serde_json::json!({
        "grid": {
            "a_min": params.a_min,
            "a_max": params.a_max,
            "b_max": params.b_max,
            "m_a": params.m_a,
            "m_b": params.m_b,
            "points": params.m_a * params.m_b,
        },
        "pd_certificate_grid": { "m_a": 17, "m_b": 17 },
    }));
    finish(report, start, out)
}

pub fn cmd_gen(group: Option<&Path>, k: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    let start = Instant::now();
    let spec = match group {
        Some(path) => parse_json::<GroupSpec>(&read_file(path)?, "group JSON")?,
        None => {
            // deterministic pick from the standard catalog
            let specs = [
                GroupSpec::Cyclic { n: 6 },
                GroupSpec::Symmetric { n: 3 },
                GroupSpec::Dihedral { n: 4 },
                GroupSpec::Quaternion8,
                GroupSpec::Heisenberg { p: 3 },
            ];
            specs[(seed % specs.len() as u64) as usize].clone()
        }
    };
    let g = spec
        .build_with_limit(group_order_limit())
        .map_err(|e| UsageError(format!("invalid group: {e}")))?;
    if k == 0 {
        return Err(UsageError("k must be positive".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let f = OpValFn::random(g, k, &mut rng);
    let mut report = RunReport::new(format!("gen --seed {seed}"), digest(&[b"gen"]), seed);
    report.outputs = Some(serde_json::json!(OpValFnJson::from_fn(&f)));
    finish(report, start, out)
}
