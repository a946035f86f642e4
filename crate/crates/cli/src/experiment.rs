//! Batch validation of the solver stack and both gadget constructions over
//! a seeded grid of random instances.
//!
//! Every instance is solved by the brute-force oracle, the branch-and-bound
//! solver, and the greedy heuristic; gadgets are built where the grid asks
//! for them and their optimum-size correspondences, certificate transforms,
//! and size formulas are all checked against the oracle. A run is fully
//! reproducible from its config and base seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use domset_core::{
    backward_cert_a, backward_cert_b, build_gadget_a, build_gadget_b, forward_cert_a,
    forward_cert_b, generate_random_graph, lower_bound, solve_bruteforce, solve_exact,
    solve_greedy, validate_params, verify, Graph, OptResult, Params, SolveStatus, ValidParams,
};

/// Bumped on any change to the report's JSON layout.
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ParamGrid {
    pub d: u32,
    pub m: u32,
    pub ell: u32,
    pub r: u32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GadgetASpec {
    pub m: u32,
    pub ell: u32,
    pub r: u32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GadgetBSpec {
    pub d: u32,
    pub m: u32,
    pub ell: u32,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Vertex counts of the generated graphs.
    pub sizes: Vec<usize>,
    /// Edge probabilities crossed with the sizes.
    pub edge_probs: Vec<f64>,
    /// Seeded repetitions per (size, probability) cell.
    pub reps: usize,
    #[serde(default = "default_true")]
    pub require_connected: bool,
    /// Parameter tuples every instance is solved under.
    pub params: Vec<ParamGrid>,
    /// Gadget A constructions to check per instance.
    #[serde(default)]
    pub gadget_a: Vec<GadgetASpec>,
    /// Gadget B constructions to check per instance.
    #[serde(default)]
    pub gadget_b: Vec<GadgetBSpec>,
    /// Brute-force refusal threshold; must cover the gadget graphs too.
    /// Defaults to the `DOMSET_ORACLE_CAP` environment variable, then 24.
    pub oracle_cap: Option<usize>,
}

impl GridConfig {
    /// The built-in grid: n <= 8 across two densities, 30 seeds per cell,
    /// the standard parameter tuples, and all checked gadget shapes.
    pub fn default_grid() -> Self {
        GridConfig {
            sizes: (4..=8).collect(),
            edge_probs: vec![0.3, 0.6],
            reps: 30,
            require_connected: true,
            params: vec![
                ParamGrid { d: 1, m: 1, ell: 1, r: 1 },
                ParamGrid { d: 1, m: 1, ell: 2, r: 2 },
                ParamGrid { d: 1, m: 2, ell: 3, r: 2 },
                ParamGrid { d: 2, m: 1, ell: 2, r: 2 },
            ],
            gadget_a: vec![
                GadgetASpec { m: 1, ell: 2, r: 2 },
                GadgetASpec { m: 2, ell: 3, r: 2 },
                GadgetASpec { m: 1, ell: 2, r: 3 },
            ],
            gadget_b: vec![
                GadgetBSpec { d: 2, m: 1, ell: 2 },
                GadgetBSpec { d: 3, m: 1, ell: 2 },
                GadgetBSpec { d: 2, m: 2, ell: 3 },
                GadgetBSpec { d: 3, m: 2, ell: 3 },
            ],
            oracle_cap: None,
        }
    }

    pub fn resolved_oracle_cap(&self) -> usize {
        self.oracle_cap
            .or_else(|| {
                std::env::var("DOMSET_ORACLE_CAP")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(24)
    }

    /// Rejects grids the oracle could not decide: every generated graph and
    /// every gadget built from one must stay within the cap.
    pub fn validate(&self) -> Result<(), String> {
        if self.sizes.is_empty() || self.edge_probs.is_empty() || self.params.is_empty() {
            return Err("sizes, edge_probs, and params must all be non-empty".into());
        }
        if self.reps == 0 {
            return Err("reps must be at least 1".into());
        }
        if self.sizes.iter().any(|&n| n == 0) {
            return Err("sizes must be positive".into());
        }
        if self.edge_probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err("edge probabilities must lie in [0, 1]".into());
        }
        let cap = self.resolved_oracle_cap();
        let max_n = *self.sizes.iter().max().unwrap();
        if max_n > cap {
            return Err(format!("size {max_n} exceeds the oracle cap {cap}"));
        }
        for spec in &self.gadget_a {
            if spec.ell < 2 {
                return Err(format!("gadget A spec needs l >= 2, got {}", spec.ell));
            }
            let gadget_n = max_n + (spec.ell + spec.r - 1) as usize;
            if gadget_n > cap {
                return Err(format!(
                    "gadget A on n = {max_n} has {gadget_n} vertices, above the oracle cap {cap}"
                ));
            }
        }
        for spec in &self.gadget_b {
            if spec.d < 2 {
                return Err(format!("gadget B spec needs d >= 2, got {}", spec.d));
            }
            let gadget_n = max_n * spec.d as usize;
            if gadget_n > cap {
                return Err(format!(
                    "gadget B on n = {max_n} has {gadget_n} vertices, above the oracle cap {cap}"
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverComparison {
    pub params: ParamGrid,
    pub oracle: OptResult,
    pub exact: OptResult,
    pub greedy: OptResult,
    /// Sizes and statuses of the oracle and the exact solver agree.
    pub agreement: bool,
    pub greedy_ratio: Option<f64>,
    pub ratio_basis: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetACheck {
    pub spec: GadgetASpec,
    pub gamma_ds: usize,
    pub gadget_gamma: usize,
    pub identity_ok: bool,
    pub transfer_ok: bool,
    pub forward_cert_ok: bool,
    pub backward_cert_ok: bool,
    pub size_formula_ok: bool,
}

impl GadgetACheck {
    fn passed(&self) -> bool {
        self.identity_ok
            && self.transfer_ok
            && self.forward_cert_ok
            && self.backward_cert_ok
            && self.size_formula_ok
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetBCheck {
    pub spec: GadgetBSpec,
    pub gamma_source: usize,
    pub gadget_gamma: usize,
    pub identity_ok: bool,
    pub forward_cert_ok: bool,
    pub backward_cert_ok: bool,
    pub size_formula_ok: bool,
}

impl GadgetBCheck {
    fn passed(&self) -> bool {
        self.identity_ok && self.forward_cert_ok && self.backward_cert_ok && self.size_formula_ok
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRow {
    pub id: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub solver_runs: Vec<SolverComparison>,
    pub gadget_a_checks: Vec<GadgetACheck>,
    pub gadget_b_checks: Vec<GadgetBCheck>,
    /// Parameter tuples that do not apply to this instance, with reasons.
    pub skipped: Vec<String>,
    /// Every failed check, with enough detail to reproduce it.
    pub violations: Vec<String>,
    pub claim_checks_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub solver_runs: usize,
    pub solver_agreements: usize,
    pub solver_disagreements: usize,
    pub claim_checks: usize,
    pub claim_violations: usize,
    pub total_violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub format_version: u32,
    pub base_seed: u64,
    pub oracle_cap: usize,
    pub config: GridConfig,
    pub rows: Vec<InstanceRow>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl ExperimentReport {
    pub fn violation_free(&self) -> bool {
        self.summary.total_violations == 0
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-instance seed, fixed by the base seed and the instance id alone.
fn instance_seed(base_seed: u64, id: usize) -> u64 {
    splitmix64(base_seed ^ splitmix64(id as u64 + 1))
}

fn compare_solvers(g: &Graph, grid: ParamGrid, p: ValidParams, cap: usize) -> SolverComparison {
    let oracle = solve_bruteforce(g, p, Some(cap)).expect("cap validated against grid sizes");
    let exact = solve_exact(g, p, None);
    let greedy = solve_greedy(g, p);
    let agreement = oracle.size == exact.size && oracle.status == exact.status;

    let (greedy_ratio, ratio_basis) = match (greedy.status, oracle.status) {
        (SolveStatus::FeasibleOnly, SolveStatus::Optimal) => (
            Some(greedy.size as f64 / oracle.size as f64),
            Some("oracle".to_owned()),
        ),
        (SolveStatus::FeasibleOnly, _) => (
            Some(greedy.size as f64 / lower_bound(g, p) as f64),
            Some("lower-bound".to_owned()),
        ),
        _ => (None, None),
    };
    SolverComparison {
        params: grid,
        oracle,
        exact,
        greedy,
        agreement,
        greedy_ratio,
        ratio_basis,
    }
}

fn check_gadget_a(
    g: &Graph,
    spec: GadgetASpec,
    gamma_ds: &OptResult,
    cap: usize,
) -> Result<GadgetACheck, String> {
    let (gadget, map) = build_gadget_a(g, spec.m, spec.ell, spec.r).map_err(|e| e.to_string())?;
    let gp = validate_params(Params::new(1, spec.m, spec.ell, spec.r), &gadget)
        .map_err(|e| e.to_string())?;
    let gadget_opt = solve_bruteforce(&gadget, gp, Some(cap)).map_err(|e| e.to_string())?;

    let ell = spec.ell as usize;
    let identity_ok = gadget_opt.size == gamma_ds.size + ell;
    let transfer_ok =
        (1..=g.n()).all(|k| (gamma_ds.size <= k) == (gadget_opt.size <= k + ell));

    let lifted = forward_cert_a(&map, &gamma_ds.set);
    let forward_cert_ok =
        lifted.len() == gamma_ds.size + ell && verify(&gadget, gp, &lifted).feasible;

    let backward_cert_ok = match backward_cert_a(&map, g, &gadget_opt.set) {
        Ok(recovered) => recovered.len() <= gadget_opt.size - ell,
        Err(_) => false,
    };

    let n = g.n();
    let mut size_formula_ok = gadget.n() == n + ell + spec.r as usize - 1;
    if n >= 2 && ell < n && (spec.r as usize) < n {
        size_formula_ok &= gadget.n() <= 3 * n;
    }

    Ok(GadgetACheck {
        spec,
        gamma_ds: gamma_ds.size,
        gadget_gamma: gadget_opt.size,
        identity_ok,
        transfer_ok,
        forward_cert_ok,
        backward_cert_ok,
        size_formula_ok,
    })
}

fn check_gadget_b(g: &Graph, spec: GadgetBSpec, cap: usize) -> Result<GadgetBCheck, String> {
    let sp = validate_params(Params::new(1, spec.m, spec.ell, 2), g).map_err(|e| e.to_string())?;
    let source_opt = solve_bruteforce(g, sp, Some(cap)).map_err(|e| e.to_string())?;
    if source_opt.status != SolveStatus::Optimal {
        return Err(format!(
            "source instance infeasible under (1,{},{},2)",
            spec.m, spec.ell
        ));
    }

    let (gadget, map) = build_gadget_b(g, spec.d).map_err(|e| e.to_string())?;
    let gp = validate_params(Params::new(spec.d, spec.m, spec.ell, 2), &gadget)
        .map_err(|e| e.to_string())?;
    let gadget_opt = solve_bruteforce(&gadget, gp, Some(cap)).map_err(|e| e.to_string())?;

    let identity_ok = gadget_opt.size == source_opt.size;

    let lifted = forward_cert_b(&map, &source_opt.set);
    let forward_cert_ok =
        lifted.len() == source_opt.size && verify(&gadget, gp, &lifted).feasible;

    let backward_cert_ok = match backward_cert_b(&map, g, &gadget_opt.set, spec.m, spec.ell) {
        Ok(recovered) => {
            recovered.len() <= gadget_opt.size && verify(g, sp, &recovered).feasible
        }
        Err(_) => false,
    };

    let n = g.n();
    let mut size_formula_ok = gadget.n() == n * spec.d as usize;
    if spec.d as usize <= n {
        size_formula_ok &= gadget.n() <= n * n;
    }

    Ok(GadgetBCheck {
        spec,
        gamma_source: source_opt.size,
        gadget_gamma: gadget_opt.size,
        identity_ok,
        forward_cert_ok,
        backward_cert_ok,
        size_formula_ok,
    })
}

fn run_instance(id: usize, n: usize, p: f64, seed: u64, config: &GridConfig) -> InstanceRow {
    let cap = config.resolved_oracle_cap();
    let g = generate_random_graph(n, p, seed, config.require_connected);
    let repro = format!("id={id} n={n} p={p} seed={seed}");

    let mut skipped = Vec::new();
    let mut violations = Vec::new();

    let mut solver_runs = Vec::new();
    for &grid in &config.params {
        match validate_params(Params::new(grid.d, grid.m, grid.ell, grid.r), &g) {
            Ok(vp) => {
                let run = compare_solvers(&g, grid, vp, cap);
                if !run.agreement {
                    violations.push(format!(
                        "solver disagreement: {repro} params={grid:?} oracle={} exact={}",
                        run.oracle.size, run.exact.size
                    ));
                }
                if run.greedy.status == SolveStatus::FeasibleOnly
                    && !verify(&g, vp, &run.greedy.set).feasible
                {
                    violations.push(format!("greedy returned infeasible set: {repro} params={grid:?}"));
                }
                solver_runs.push(run);
            }
            Err(err) => skipped.push(format!("params {grid:?}: {err}")),
        }
    }

    let mut gadget_a_checks = Vec::new();
    if !config.gadget_a.is_empty() {
        let ds_params =
            validate_params(Params::new(1, 1, 1, 1), &g).expect("plain domination always validates");
        let gamma_ds = solve_bruteforce(&g, ds_params, Some(cap)).expect("cap validated");
        for &spec in &config.gadget_a {
            match check_gadget_a(&g, spec, &gamma_ds, cap) {
                Ok(check) => {
                    if !check.passed() {
                        violations.push(format!("gadget A check failed: {repro} spec={spec:?} {check:?}"));
                    }
                    gadget_a_checks.push(check);
                }
                Err(reason) => skipped.push(format!("gadget A {spec:?}: {reason}")),
            }
        }
    }

    let mut gadget_b_checks = Vec::new();
    for &spec in &config.gadget_b {
        match check_gadget_b(&g, spec, cap) {
            Ok(check) => {
                if !check.passed() {
                    violations.push(format!("gadget B check failed: {repro} spec={spec:?} {check:?}"));
                }
                gadget_b_checks.push(check);
            }
            Err(reason) => skipped.push(format!("gadget B {spec:?}: {reason}")),
        }
    }

    let claim_checks_passed = gadget_a_checks.iter().all(GadgetACheck::passed)
        && gadget_b_checks.iter().all(GadgetBCheck::passed);
    InstanceRow {
        id,
        n,
        p,
        seed,
        solver_runs,
        gadget_a_checks,
        gadget_b_checks,
        skipped,
        violations,
        claim_checks_passed,
    }
}

/// Runs the whole grid. Instances are processed in a worker pool; rows are
/// reported in instance-id order regardless of completion order.
pub fn run_experiment(config: &GridConfig, base_seed: u64) -> Result<ExperimentReport, String> {
    config.validate()?;
    let started = std::time::Instant::now();

    let mut descriptors = Vec::new();
    for &n in &config.sizes {
        for &p in &config.edge_probs {
            for _ in 0..config.reps {
                let id = descriptors.len();
                descriptors.push((id, n, p, instance_seed(base_seed, id)));
            }
        }
    }

    let rows: Vec<InstanceRow> = descriptors
        .par_iter()
        .map(|&(id, n, p, seed)| run_instance(id, n, p, seed, config))
        .collect();

    let solver_runs: usize = rows.iter().map(|r| r.solver_runs.len()).sum();
    let solver_agreements = rows
        .iter()
        .flat_map(|r| &r.solver_runs)
        .filter(|c| c.agreement)
        .count();
    let claim_checks: usize = rows
        .iter()
        .map(|r| r.gadget_a_checks.len() + r.gadget_b_checks.len())
        .sum();
    let claim_violations = rows
        .iter()
        .map(|r| {
            r.gadget_a_checks.iter().filter(|c| !c.passed()).count()
                + r.gadget_b_checks.iter().filter(|c| !c.passed()).count()
        })
        .sum::<usize>();
    let total_violations = rows.iter().map(|r| r.violations.len()).sum();

    let summary = Summary {
        instances: rows.len(),
        solver_runs,
        solver_agreements,
        solver_disagreements: solver_runs - solver_agreements,
        claim_checks,
        claim_violations,
        total_violations,
    };

    Ok(ExperimentReport {
        format_version: REPORT_FORMAT_VERSION,
        base_seed,
        oracle_cap: config.resolved_oracle_cap(),
        config: config.clone(),
        rows,
        summary,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

/// Strips every `wall_time_ms` field and re-serializes with sorted keys,
/// so two reports compare equal exactly when their deterministic content
/// does.
pub fn canonical_report_json(report: &Value) -> String {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("wall_time_ms");
                for child in map.values_mut() {
                    strip(child);
                }
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut cleaned = report.clone();
    strip(&mut cleaned);
    serde_json::to_string_pretty(&cleaned).expect("stripped report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> GridConfig {
        GridConfig {
            sizes: vec![4, 5],
            edge_probs: vec![0.5],
            reps: 2,
            require_connected: true,
            params: vec![ParamGrid { d: 1, m: 1, ell: 2, r: 2 }],
            gadget_a: vec![GadgetASpec { m: 1, ell: 2, r: 2 }],
            gadget_b: vec![GadgetBSpec { d: 2, m: 1, ell: 2 }],
            oracle_cap: Some(20),
        }
    }

    #[test]
    fn summary_counts_equal_row_tallies() {
        let report = run_experiment(&tiny_config(), 7).unwrap();
        assert_eq!(report.summary.instances, report.rows.len());
        assert_eq!(
            report.summary.solver_runs,
            report.rows.iter().map(|r| r.solver_runs.len()).sum::<usize>()
        );
        assert_eq!(
            report.summary.total_violations,
            report.rows.iter().map(|r| r.violations.len()).sum::<usize>()
        );
        assert_eq!(report.summary.total_violations, 0);
        assert!(report.violation_free());
    }

    #[test]
    fn rows_are_ordered_by_instance_id() {
        let report = run_experiment(&tiny_config(), 3).unwrap();
        let ids: Vec<usize> = report.rows.iter().map(|r| r.id).collect();
        assert_eq!(ids, (0..report.rows.len()).collect::<Vec<_>>());
    }

    #[test]
    fn reports_are_reproducible_from_config_and_seed() {
        let a = run_experiment(&tiny_config(), 11).unwrap();
        let b = run_experiment(&tiny_config(), 11).unwrap();
        let ja = canonical_report_json(&serde_json::to_value(&a).unwrap());
        let jb = canonical_report_json(&serde_json::to_value(&b).unwrap());
        assert_eq!(ja, jb);
        assert!(!ja.contains("wall_time_ms"));
    }

    #[test]
    fn different_seeds_change_the_instances() {
        let a = run_experiment(&tiny_config(), 1).unwrap();
        let b = run_experiment(&tiny_config(), 2).unwrap();
        let seeds_a: Vec<u64> = a.rows.iter().map(|r| r.seed).collect();
        let seeds_b: Vec<u64> = b.rows.iter().map(|r| r.seed).collect();
        assert_ne!(seeds_a, seeds_b);
    }

    #[test]
    fn oversized_grids_are_refused() {
        let mut config = tiny_config();
        config.sizes = vec![30];
        assert!(config.validate().is_err());

        let mut config = tiny_config();
        config.oracle_cap = Some(9);
        // gadget B doubles n = 5 to 10 > 9
        assert!(config.validate().is_err());
    }
}
