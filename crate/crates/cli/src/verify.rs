//! Randomized verification of every checkable property on generated instances.

use maxplus_transience::analysis::{analyze_instance, InstanceReport};
use maxplus_transience::bounds::{b_enp, v_hat};
use maxplus_transience::critical::{karp_rate, normalize, CriticalStructure};
use maxplus_transience::oracle::{check_column_identity, check_perron, system_transient};
use maxplus_transience::paths::WeightProfile;
use maxplus_transience::scalar::ceil_usize;
use maxplus_transience::{Graph, GraphParams, Matrix, Rational, Tropical, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::{write_instance, Instance};
use crate::generate::{integer_vector, irreducible_matrix};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub count: usize,
    pub max_nodes: usize,
    pub weights: (i64, i64),
    /// Fixed edge density; drawn per instance from `[0.15, 0.9)` when absent.
    pub density: Option<f64>,
    /// Largest spread of the initial vector.
    pub norm: i64,
    pub cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, count: 100, max_nodes: 6, weights: (-3, 3), density: None, norm: 6, cap: 12 }
    }
}

pub type SystemBoundFormula = fn(&CriticalStructure<Rational>, &GraphParams, &Rational) -> Rational;

/// Formulas under test. Swapping one out is how the harness checks itself.
#[derive(Clone, Copy)]
pub struct Harness {
    pub b_enp: SystemBoundFormula,
}

impl Default for Harness {
    fn default() -> Self {
        Harness { b_enp }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub check: String,
    pub detail: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl VerifySummary {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            1
        }
    }
}

struct Checker {
    index: usize,
    instance: String,
    checks: usize,
    violations: Vec<Violation>,
}

impl Checker {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                index: self.index,
                check: name.to_string(),
                detail: detail(),
                instance: self.instance.clone(),
            });
        }
    }
}

/// Instance `index` of a run: each index has its own ChaCha stream, so instances
/// do not depend on evaluation order.
pub fn instance(config: &VerifyConfig, index: usize) -> crate::error::CliResult<(Matrix, Vector, ChaCha8Rng)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(1..=config.max_nodes.max(1));
    let density = match config.density {
        Some(p) => p,
        None => rng.gen_range(0.15..0.9),
    };
    let a = irreducible_matrix(&mut rng, n, density, config.weights)?;
    let v = integer_vector(&mut rng, n, config.norm);
    Ok((a, v, rng))
}

pub fn run(config: &VerifyConfig, harness: Harness) -> VerifySummary {
    let results: Vec<Checker> =
        (0..config.count).into_par_iter().map(|index| verify_one(config, harness, index)).collect();
    VerifySummary {
        seed: config.seed,
        instances: config.count,
        checks: results.iter().map(|c| c.checks).sum(),
        violations: results.into_iter().flat_map(|c| c.violations).collect(),
    }
}

fn verify_one(config: &VerifyConfig, harness: Harness, index: usize) -> Checker {
    let mut checker = Checker { index, instance: String::new(), checks: 0, violations: Vec::new() };
    let (a, v, mut rng) = match instance(config, index) {
        Ok(drawn) => drawn,
        Err(error) => {
            checker.check("generate", false, || error.to_string());
            return checker;
        }
    };
    checker.instance = write_instance(&Instance { matrix: a.clone(), vector: Some(v.clone()) });
    if let Err(error) = check_instance(&mut checker, &a, &v, config.cap, harness, &mut rng) {
        checker.check("oracle", false, || error.to_string());
    }
    checker
}

fn within(n: usize, bound: &Rational) -> bool {
    n <= ceil_usize(bound)
}

fn check_instance(
    checker: &mut Checker,
    a: &Matrix,
    v: &Vector,
    cap: usize,
    harness: Harness,
    rng: &mut ChaCha8Rng,
) -> maxplus_transience::Result<()> {
    let report = analyze_instance(a, Some(v), cap)?;
    let InstanceReport { params, critical: cs, bounds, matrix, system } = &report;
    let n_a = matrix.transient;
    let n_av = system.as_ref().expect("vector given").transient;
    let norm = bounds.norm.expect("finite vector");
    let graph = Graph::from_matrix(a, None)?;

    checker.check("karp_rate", karp_rate(&graph)? == cs.rho, || "Karp disagrees with cycle enumeration".into());

    let enp = (harness.b_enp)(cs, params, &norm);
    let c = &bounds.corrected;
    let system_bounds = [
        ("B_ep", bounds.b_ep),
        ("B_enp", Some(enp)),
        ("B_ne1", bounds.b_ne1),
        ("B_ne2", bounds.b_ne2),
        ("corrected.B_ep", c.b_ep),
        ("corrected.B_enp", c.b_enp),
        ("corrected.B_ne1", c.b_ne1),
        ("corrected.B_ne2", c.b_ne2),
        ("er_bound", bounds.comparison.er),
        ("syk_system", bounds.comparison.syk_system),
    ];
    for (name, bound) in system_bounds {
        if let Some(bound) = bound {
            checker.check(name, within(n_av, &bound), || format!("n_Av = {n_av} > {name} = {bound}"));
        }
    }
    let matrix_bounds = [
        ("matrix_bound", Some(bounds.matrix_bound)),
        ("corrected.matrix_bound", Some(c.matrix_bound)),
        ("syk_matrix", bounds.comparison.syk_matrix),
    ];
    for (name, bound) in matrix_bounds {
        if let Some(bound) = bound {
            checker.check(name, within(n_a, &bound), || format!("n_A = {n_a} > {name} = {bound}"));
        }
    }
    checker.check("n_Av<=n_A", n_av <= n_a, || format!("n_Av = {n_av} > n_A = {n_a}"));

    let mu = bounds.mu_exact.expect("computed by analyze_instance");
    checker.check("mu<=mu_upper", mu <= bounds.mu_upper, || format!("mu = {mu} > {}", bounds.mu_upper));
    let mut hat = 0;
    for j in 0..a.rows() {
        hat = hat.max(system_transient(a, &v_hat(a.rows(), j, &mu)?, cap)?.transient);
    }
    let ms = ceil_usize(&bounds.b_ms);
    checker.check("matrix_vs_system", n_a <= ms.max(hat), || format!("n_A = {n_a} > max({ms}, {hat})"));

    checker.check("perron", check_perron(a, cap)?, || "A^(n+c) != (c rho) A^n past n_A".into());
    checker.check("column_identity", check_column_identity(a, cap)?, || "n_A != max_j n_(A,e_j)".into());
    checker.check("period_divides_c", cs.c_of_a % matrix.period == 0, || {
        format!("p0 = {} does not divide c(A) = {}", matrix.period, cs.c_of_a)
    });

    if let (Some(paper), Some(corrected)) = (&bounds.b_cnc, &c.b_cnc) {
        let zero_rate = normalize(&graph, cap)?.with_node_weights(v.entries().to_vec())?;
        let p = params.cycle_lcm.unwrap_or(1);
        let (low, high) = (ceil_usize(paper), ceil_usize(corrected));
        let profile = WeightProfile::compute(&zero_rate, &cs.critical_nodes, high + 2 * p);
        for (name, start) in [("critical_hit", low), ("corrected.critical_hit", high)] {
            let missed = (start..=start + 2 * p).find(|&n| profile.critical_hits[n].iter().any(|&hit| !hit));
            checker.check(name, missed.is_none(), || format!("no optimal path hits G_c at n = {missed:?}"));
        }
        if let Some(l0) = &bounds.comparison.l0 {
            checker.check("B_cnc<=l0", paper <= l0, || format!("B_cnc = {paper} > l0 = {l0}"));
        }
    }

    if let (Some(ep), Some(bound)) = (params.exploration_penalty, params.exploration_bound()) {
        checker.check("ep_theorem", ep as i64 <= bound, || format!("ep = {ep} > {bound}"));
        if let (1, Some(primitive)) = (params.cyclicity, params.primitive_exploration_bound()) {
            checker.check("ep_primitive", ep as i64 <= primitive, || format!("ep = {ep} > {primitive}"));
        }
    }

    if let Tropical::Finite(rho_nc) = &cs.rho_nc {
        let n = Rational::from(a.rows() as i64);
        let gap = cs.rho - rho_nc;
        checker.check("integer_gap", Rational::from(1) / gap * 4 <= n * n, || format!("rho - rho_nc = {gap}"));
    }

    let lambda = Rational::from(rng.gen_range(-3..=3));
    let scaled = analyze_instance(&a.shifted(&lambda), Some(v), cap)?;
    let same = scaled.bounds == report.bounds
        && scaled.critical.critical_edges == cs.critical_edges
        && scaled.matrix.transient == n_a
        && scaled.matrix.period == matrix.period
        && scaled.system.as_ref().map(|t| t.transient) == Some(n_av)
        && scaled.critical.rho == cs.rho + lambda;
    checker.check("homothety", same, || format!("scaling by {lambda} changed the analysis"));
    Ok(())
}
