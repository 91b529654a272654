//! Seeded property suites over random states and bases.
//!
//! Every case draws from its own stream (`case_rng(seed, case)`), so results do
//! not depend on how cases are scheduled across threads.

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    frobenius_distance, hermitian_eigensystem, partial_trace, tensor_product, trace, DensityMatrix, Layout,
};
use crate::measures::{
    concurrence, dephase, dilation_dephase, dilation_entropies, discord_like, entanglement_entropy,
    entropy, irreality, irreality_decomposition, is_real, mutual_information, nonlocality, nonlocality_forms,
    remote_unitary_invariance, Measurement,
};
use crate::observables::{
    fourier_basis, is_mub, pauli_basis, qubit_basis, schmidt_decompose, ProjectiveBasis, QubitBasisParam,
};
use crate::optimize::{
    minimize_pair, minimize_single, nonlocality_bounds, witness_pair_for_pure, OptimizerConfig, PairObjective,
};
use crate::sweep::slit_curve;
use crate::states::{self, case_rng, AlphaParam, SlitParam, StateRng, WernerParam};

/// Suite names in the order `run_all` executes them.
pub const SUITES: &[&str] = &[
    "tensor",
    "states",
    "observables",
    "nonnegativity",
    "faithfulness",
    "dephasing",
    "dilation",
    "ssa",
    "decomposition",
    "unbiased",
    "remote",
    "nonlocality",
    "kills",
    "bound",
    "theorem",
    "pure",
    "schmidt",
    "singlet",
    "slit",
    "oracle",
    "werner",
];

/// Resolves the short aliases `eq4`, `eq6` and `eq10`.
pub fn canonical_suite(name: &str) -> &str {
    match name {
        "eq4" => "decomposition",
        "eq6" => "unbiased",
        "eq10" => "remote",
        other => other,
    }
}

/// Number of seeded cases a suite runs when no count is given.
pub fn default_count(suite: &str) -> usize {
    match suite {
        "decomposition" | "nonlocality" | "bound" => 200,
        "theorem" | "schmidt" => 50,
        "pure" => 20,
        _ => 100,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub case: String,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySuiteResult {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl VerifySuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{:<14} {:>5} cases  {:>3} failures  {}",
            self.suite,
            self.cases,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// One measured quantity against its tolerance; passes when `residual <= tolerance`.
struct Check {
    what: String,
    residual: f64,
    tolerance: f64,
}

impl Check {
    fn new(what: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            what: what.into(),
            residual,
            tolerance,
        }
    }

    fn equal(what: impl Into<String>, a: f64, b: f64, tolerance: f64) -> Self {
        Check::new(what, (a - b).abs(), tolerance)
    }

    /// `a <= b` up to `tolerance`; the residual is the excess.
    fn at_most(what: impl Into<String>, a: f64, b: f64, tolerance: f64) -> Self {
        Check::new(what, (a - b).max(0.0), tolerance)
    }

    fn holds(what: impl Into<String>, ok: bool) -> Self {
        Check::new(what, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn run_cases<F>(suite: &str, seed: u64, count: usize, case: F) -> VerifySuiteResult
where
    F: Fn(usize, &mut StateRng) -> Result<Vec<Check>> + Sync,
{
    let outcomes: Vec<Vec<Failure>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            match case(i, &mut rng) {
                Ok(checks) => checks
                    .into_iter()
                    .filter(|c| !c.passed())
                    .map(|c| failure(format!("case {i}"), c))
                    .collect(),
                Err(e) => vec![Failure {
                    case: format!("case {i}: error: {e}"),
                    residual: f64::NAN,
                    tolerance: 0.0,
                }],
            }
        })
        .collect();
    VerifySuiteResult {
        suite: suite.to_string(),
        cases: count,
        failures: outcomes.into_iter().flatten().collect(),
    }
}

fn two_qubit_mixed(rng: &mut StateRng) -> Result<DensityMatrix> {
    states::random_state(Layout::qubits(2), 4, rng)
}

fn random_basis(dim: usize, rng: &mut StateRng) -> Result<ProjectiveBasis> {
    ProjectiveBasis::new(states::random_unitary(dim, rng))
}

fn random_qubit_param(rng: &mut StateRng) -> QubitBasisParam {
    let theta = rng.random::<f64>() * PI;
    let phi = rng.random::<f64>() * PI;
    QubitBasisParam::new(theta, phi).expect("sampled inside the parameter box")
}

fn random_pair(rng: &mut StateRng) -> Result<(Measurement, Measurement)> {
    Ok((
        Measurement::new(random_basis(2, rng)?, 0),
        Measurement::new(random_basis(2, rng)?, 1),
    ))
}

fn frob(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    frobenius_distance(a.matrix(), b.matrix())
}

fn tensor_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = states::random_state(Layout::qubits(3), 8, rng)?;
    let via_01 = partial_trace(&partial_trace(&rho, &[0, 1])?, &[0])?;
    let via_02 = partial_trace(&partial_trace(&rho, &[0, 2])?, &[0])?;
    let direct = partial_trace(&rho, &[0])?;
    let a = states::random_state(Layout::single(2), 2, rng)?;
    let b = states::random_state(Layout::single(3), 3, rng)?;
    let (ma, mb) = (a.matrix() * crate::linalg::c(1.7, 0.3), b.matrix() * crate::linalg::c(-0.4, 1.1));
    let product_trace = trace(&tensor_product(&ma, &mb));
    let m = rho.matrix();
    let es = hermitian_eigensystem(m)?;
    let scale = m.norm().max(1.0);
    Ok(vec![
        Check::new("partial trace order (01 then 0)", frob(&via_01, &direct)?, 1e-12),
        Check::new("partial trace order (02 then 0)", frob(&via_02, &direct)?, 1e-12),
        Check::new(
            "trace multiplicativity",
            (product_trace - trace(&ma) * trace(&mb)).norm(),
            1e-12,
        ),
        Check::new(
            "eigendecomposition round trip",
            frobenius_distance(&es.reconstruct(), m)? / scale,
            1e-9,
        ),
    ])
}

fn states_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let f: f64 = rng.random();
    let x: f64 = rng.random();
    let a: f64 = rng.random();
    let w = states::werner(WernerParam::new(f)?).eigenvalues();
    let low = (1.0 - f) / 4.0;
    let high = (1.0 + 3.0 * f) / 4.0;
    let mut checks: Vec<Check> = w[..3]
        .iter()
        .map(|&l| Check::equal(format!("werner({f}) eigenvalue"), l, low, 1e-10))
        .collect();
    checks.push(Check::equal(format!("werner({f}) top eigenvalue"), w[3], high, 1e-10));

    let psi = states::floating_slit(SlitParam::new(x)?);
    let particle = partial_trace(&psi, &[0])?.eigenvalues();
    checks.push(Check::equal(format!("slit({x}) lower"), particle[0], (1.0 - x) / 2.0, 1e-10));
    checks.push(Check::equal(format!("slit({x}) upper"), particle[1], (1.0 + x) / 2.0, 1e-10));
    checks.push(Check::equal(format!("slit({x}) purity"), psi.purity(), 1.0, 1e-10));

    // constructors validate their output; an Err here is the failure
    states::alpha_state(AlphaParam(a))?;
    let rank = rng.random_range(1..=6);
    states::random_state(Layout::new(vec![2, 3])?, rank, rng)?;
    Ok(checks)
}

fn observables_case(i: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let p = random_qubit_param(rng);
    let flipped_phi = (p.phi + PI) % (2.0 * PI);
    let rho = states::random_state(Layout::single(2), 2, rng)?;
    let direct = dephase(&rho, &qubit_basis(p), 0)?;
    let raw = crate::observables::qubit_vectors(PI - p.theta, flipped_phi);
    let antipodal = ProjectiveBasis::from_vectors(&[
        crate::linalg::CVector::from_row_slice(&raw[0]),
        crate::linalg::CVector::from_row_slice(&raw[1]),
    ])?;
    let via_antipode = dephase(&rho, &antipodal, 0)?;

    let psi = states::random_pure(Layout::new(vec![2, 3])?, rng);
    let schmidt = schmidt_decompose(&psi)?;
    let reduced = partial_trace(&psi, &[1])?.eigenvalues();
    let mut top: Vec<f64> = reduced.iter().rev().take(2).copied().collect();
    top.truncate(schmidt.coefficients.len());

    let d = 2 + i % 4;
    let mut checks = vec![
        Check::new("antipodal bases dephase alike", frob(&direct, &via_antipode)?, 1e-10),
        Check::holds(
            format!("fourier({d}) unbiased to computational"),
            is_mub(&fourier_basis(d), &ProjectiveBasis::computational(d), 1e-10)?,
        ),
    ];
    for (k, (&s, &l)) in schmidt.coefficients.iter().zip(&top).enumerate() {
        checks.push(Check::equal(format!("schmidt coefficient {k}"), s, l, 1e-9));
    }
    Ok(checks)
}

fn nonnegativity_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = states::random_state(Layout::new(vec![2, 3])?, rng.random_range(1..=6), rng)?;
    let sub = rng.random_range(0..2);
    let basis = random_basis(rho.layout().dims()[sub], rng)?;
    let raw = entropy(&dephase(&rho, &basis, sub)?) - entropy(&rho);
    Ok(vec![Check::at_most("irreality >= 0", 0.0, raw, 1e-9)])
}

fn faithfulness_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let basis = random_basis(2, rng)?;
    let rho = two_qubit_mixed(rng)?;
    let real_state = dephase(&rho, &basis, 0)?;
    let mut checks = Vec::new();
    for (label, state, expect_real) in [("dephased", &real_state, true), ("generic", &rho, false)] {
        let small = irreality(&basis, 0, state)? <= 1e-9;
        let real = is_real(&basis, 0, state, 1e-6)?;
        checks.push(Check::holds(format!("{label}: irreality zero iff real"), small == real));
        checks.push(Check::holds(format!("{label}: expected reality"), real == expect_real));
    }
    Ok(checks)
}

fn dephasing_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let sub = rng.random_range(0..2);
    let basis = random_basis(2, rng)?;
    let once = dephase(&rho, &basis, sub)?;
    let twice = dephase(&once, &basis, sub)?;
    let dilated = dilation_dephase(&rho, &basis, sub)?;
    Ok(vec![
        Check::new("idempotence", frob(&once, &twice)?, 1e-12),
        Check::new("dilation equals dephasing", frob(&once, &dilated)?, 1e-10),
        Check::holds("dephased state is real", is_real(&basis, sub, &once, 1e-6)?),
    ])
}

fn dilation_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let dims = if rng.random::<bool>() { vec![2, 2] } else { vec![2, 3] };
    let rho = states::random_state(Layout::new(dims.clone())?, dims[0] * dims[1], rng)?;
    let sub = rng.random_range(0..2);
    let basis = random_basis(dims[sub], rng)?;
    let dilated = dilation_dephase(&rho, &basis, sub)?;
    Ok(vec![Check::new(
        format!("dilation on {dims:?} subsystem {sub}"),
        frob(&dilated, &dephase(&rho, &basis, sub)?)?,
        1e-10,
    )])
}

fn ssa_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let (a, b) = random_pair(rng)?;
    let e = dilation_entropies(&a, &b, &rho)?;
    let n = nonlocality(&a, &b, &rho)?;
    Ok(vec![
        Check::new("dilated entropies match dephased ones", e.residual(), 1e-9),
        Check::at_most("strong subadditivity", 0.0, e.ssa_gap(), 1e-9),
        Check::equal("ssa gap equals N", e.ssa_gap(), n, 1e-9),
    ])
}

fn decomposition_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let sub = rng.random_range(0..2);
    let basis = random_basis(2, rng)?;
    let d = irreality_decomposition(&basis, sub, &rho)?;
    Ok(vec![Check::new("total = local + correlated", d.residual(), 1e-9)])
}

fn unbiased_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let o = ProjectiveBasis::computational(2);
    let o_prime = fourier_basis(2);
    let classical = dephase(&rho, &o, 0)?;
    let lhs = irreality(&o_prime, 0, &classical)?;
    let local = partial_trace(&classical, &[0])?;
    let rhs = mutual_information(&classical)? + irreality(&o_prime, 0, &local)?;
    let both = dephase(&classical, &o_prime, 0)?;
    let expected = DensityMatrix::maximally_mixed(Layout::single(2)).tensor(&partial_trace(&rho, &[1])?);
    Ok(vec![
        Check::equal("unbiased irreality split", lhs, rhs, 1e-9),
        Check::new("two unbiased dephasings erase subsystem", frob(&both, &expected)?, 1e-10),
    ])
}

fn remote_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let sub = rng.random_range(0..2);
    let basis = random_basis(2, rng)?;
    let u = states::random_unitary(2, rng);
    let diff = remote_unitary_invariance(&basis, sub, &u, 1 - sub, &rho)?;
    Ok(vec![Check::new("remote unitary leaves irreality", diff.abs(), 1e-10)])
}

fn nonlocality_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let (a, b) = random_pair(rng)?;
    let forward = nonlocality_forms(&a, &b, &rho)?;
    let backward = nonlocality_forms(&b, &a, &rho)?;
    Ok(vec![
        Check::at_most("N >= 0", 0.0, forward.symmetric, 1e-9),
        Check::equal("symmetric and directed forms", forward.symmetric, forward.directed, 1e-9),
        Check::equal("N(A,B) = N(B,A)", forward.symmetric, backward.symmetric, 1e-10),
    ])
}

fn kills_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let (a, b) = random_pair(rng)?;
    let mut checks = Vec::new();
    for m in [&a, &b] {
        let measured = dephase(&rho, &m.basis, m.subsystem)?;
        let n = nonlocality(&a, &b, &measured)?;
        checks.push(Check::new(format!("N after measuring subsystem {}", m.subsystem), n, 1e-9));
    }
    Ok(checks)
}

fn bound_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let rho = two_qubit_mixed(rng)?;
    let (a, b) = random_pair(rng)?;
    let d1 = discord_like(&rho, std::slice::from_ref(&a))?;
    let d2 = discord_like(&rho, std::slice::from_ref(&b))?;
    let d12 = discord_like(&rho, &[a.clone(), b.clone()])?;
    let n = nonlocality(&a, &b, &rho)?;
    Ok(vec![
        Check::at_most("D1 + D2 <= 2 D12", d1 + d2, 2.0 * d12, 1e-9),
        Check::at_most("N <= D12", n, d12, 1e-9),
    ])
}

fn theorem_case(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Vec<Check>> {
    let bounds = nonlocality_bounds(rho, cfg)?;
    Ok(vec![
        Check::at_most("N_min >= 0", 0.0, bounds.n_min.value, 1e-6),
        Check::at_most("N_min <= D12", bounds.n_min.value, bounds.global_discord.value, 1e-6),
        Check::at_most("N_min refinement", bounds.n_min.value, bounds.n_min.grid_best, 1e-12),
        Check::at_most(
            "D12 refinement",
            bounds.global_discord.value,
            bounds.global_discord.grid_best,
            1e-12,
        ),
    ])
}

fn pure_checks(psi: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Vec<Check>> {
    let n_min = minimize_pair(psi, PairObjective::Nonlocality, cfg)?;
    let (wa, wb) = witness_pair_for_pure(psi)?;
    let witnessed = nonlocality(&Measurement::new(wa, 0), &Measurement::new(wb, 1), psi)?;
    Ok(vec![
        Check::new("N_min of pure state", n_min.value, 1e-4),
        Check::new("N on witness pair", witnessed, 1e-9),
    ])
}

fn schmidt_case(_: usize, rng: &mut StateRng) -> Result<Vec<Check>> {
    let psi = states::random_pure(Layout::qubits(2), rng);
    let s = schmidt_decompose(&psi)?;
    let n = nonlocality(&Measurement::new(s.basis_a, 0), &Measurement::new(s.basis_b, 1), &psi)?;
    Ok(vec![Check::equal("N on Schmidt pair", n, entanglement_entropy(&psi)?, 1e-9)])
}

fn singlet_checks() -> Result<Vec<Check>> {
    let rho = states::singlet();
    let mut checks = Vec::new();
    for r in ['x', 'y', 'z'] {
        for s in ['x', 'y', 'z'] {
            let a = Measurement::new(pauli_basis(r).expect("axis"), 0);
            let b = Measurement::new(pauli_basis(s).expect("axis"), 1);
            let expected = if r == s { LN_2 } else { 0.0 };
            checks.push(Check::equal(format!("N(s{r}, s{s})"), nonlocality(&a, &b, &rho)?, expected, 1e-9));
        }
    }
    checks.push(Check::equal("singlet concurrence", concurrence(&rho)?, 1.0, 1e-9));
    Ok(checks)
}

fn slit_checks() -> Result<Vec<Check>> {
    let rows = slit_curve(21)?;
    let mut checks = vec![
        Check::new("local irreality at x=0", rows[0].local_irreality.abs(), 1e-12),
        Check::equal("local irreality at x=1", rows[20].local_irreality, LN_2, 1e-10),
    ];
    for w in rows.windows(2) {
        checks.push(Check::holds(
            format!("local irreality increases at x={}", w[1].x),
            w[1].local_irreality > w[0].local_irreality,
        ));
    }
    for r in &rows {
        checks.push(Check::equal(format!("global irreality at x={}", r.x), r.global_irreality, LN_2, 1e-10));
    }
    Ok(checks)
}

/// Dense scan of `D_[O_1]` over a `side x side` grid using the general matrix route.
fn brute_force_single(rho: &DensityMatrix, subsystem: usize, side: usize) -> Result<f64> {
    let values: Vec<f64> = (0..side * side)
        .into_par_iter()
        .map(|k| {
            let theta = PI * (k / side) as f64 / (side - 1) as f64;
            let phi = PI * (k % side) as f64 / side as f64;
            let basis = qubit_basis(QubitBasisParam::new(theta, phi)?);
            discord_like(rho, &[Measurement::new(basis, subsystem)])
        })
        .collect::<Result<_>>()?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

fn oracle_checks(cfg: &OptimizerConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for f in [0.2, 0.5, 0.8] {
        let rho = states::werner(WernerParam::new(f)?);
        let optimized = minimize_single(&rho, 0, cfg)?.value;
        let brute = brute_force_single(&rho, 0, 200)?;
        checks.push(Check::equal(format!("werner({f}) discord vs dense grid"), optimized, brute, 1e-4));
    }
    Ok(checks)
}

/// `n_zz` of a Werner state from its closed-form spectra.
pub fn werner_n_zz_closed_form(f: f64) -> f64 {
    let xlnx = |p: f64| if p > 0.0 { p * p.ln() } else { 0.0 };
    let low = (1.0 - f) / 4.0;
    let mid = (1.0 + f) / 4.0;
    let high = (1.0 + 3.0 * f) / 4.0;
    (-2.0 * xlnx(low) - 2.0 * xlnx(mid)) - (-3.0 * xlnx(low) - xlnx(high))
}

fn werner_case(i: usize, count: usize) -> Result<Vec<Check>> {
    let f = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.5 };
    let rho = states::werner(WernerParam::new(f)?);
    let z = ProjectiveBasis::computational(2);
    let n = nonlocality(&Measurement::new(z.clone(), 0), &Measurement::new(z, 1), &rho)?;
    let expected_c = ((3.0 * f - 1.0) / 2.0).max(0.0);
    Ok(vec![
        Check::equal(format!("n_zz at f={f}"), n, werner_n_zz_closed_form(f), 1e-10),
        Check::equal(format!("concurrence at f={f}"), concurrence(&rho)?, expected_c, 1e-9),
    ])
}

fn failure(case: String, c: Check) -> Failure {
    Failure {
        case: format!("{case}: {}", c.what),
        residual: c.residual,
        tolerance: c.tolerance,
    }
}

fn fixed(suite: &str, checks: Result<Vec<Check>>) -> VerifySuiteResult {
    let (cases, failures) = match checks {
        Ok(c) => (
            c.len(),
            c.into_iter().filter(|c| !c.passed()).map(|c| failure("fixed".into(), c)).collect(),
        ),
        Err(e) => (
            1,
            vec![Failure {
                case: format!("fixed: error: {e}"),
                residual: f64::NAN,
                tolerance: 0.0,
            }],
        ),
    };
    VerifySuiteResult {
        suite: suite.to_string(),
        cases,
        failures,
    }
}

/// Runs one suite; `count` defaults to [`default_count`]. Fixed suites
/// (`singlet`, `slit`, `oracle`) ignore `count`.
pub fn run_suite(name: &str, seed: u64, count: Option<usize>, cfg: &OptimizerConfig) -> Result<VerifySuiteResult> {
    let name = canonical_suite(name);
    let count = count.unwrap_or_else(|| default_count(name));
    let seeded = |f: fn(usize, &mut StateRng) -> Result<Vec<Check>>| run_cases(name, seed, count, f);
    Ok(match name {
        "tensor" => seeded(tensor_case),
        "states" => seeded(states_case),
        "observables" => seeded(observables_case),
        "nonnegativity" => seeded(nonnegativity_case),
        "faithfulness" => seeded(faithfulness_case),
        "dephasing" => seeded(dephasing_case),
        "dilation" => seeded(dilation_case),
        "ssa" => seeded(ssa_case),
        "decomposition" => seeded(decomposition_case),
        "unbiased" => seeded(unbiased_case),
        "remote" => seeded(remote_case),
        "nonlocality" => seeded(nonlocality_case),
        "kills" => seeded(kills_case),
        "bound" => seeded(bound_case),
        "schmidt" => seeded(schmidt_case),
        "theorem" => run_cases(name, seed, count, |_, rng| theorem_case(&two_qubit_mixed(rng)?, cfg)),
        "pure" => {
            let named = [states::singlet(), states::alpha_state(AlphaParam(1.0))?];
            run_cases(name, seed, count + named.len(), |i, rng| {
                if i < named.len() {
                    pure_checks(&named[i], cfg)
                } else {
                    pure_checks(&states::random_pure(Layout::qubits(2), rng), cfg)
                }
            })
        }
        "werner" => run_cases(name, seed, count, |i, _| werner_case(i, count)),
        "singlet" => fixed(name, singlet_checks()),
        "slit" => fixed(name, slit_checks()),
        "oracle" => fixed(name, oracle_checks(cfg)),
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite `{name}` (expected one of: all, {})",
                SUITES.join(", ")
            )))
        }
    })
}

/// Every suite in [`SUITES`] order. A given `count` applies to each seeded suite.
pub fn run_all(seed: u64, count: Option<usize>, cfg: &OptimizerConfig) -> Vec<VerifySuiteResult> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed, count, cfg).expect("listed suites exist"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_parse_error() {
        let cfg = OptimizerConfig::default();
        assert!(matches!(run_suite("bogus", 1, None, &cfg), Err(Error::Parse(_))));
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = OptimizerConfig::default();
        for s in ["tensor", "states", "observables", "eq4", "remote", "kills", "singlet", "slit", "werner"] {
            let r = run_suite(s, 7, Some(10), &cfg).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
    }

    #[test]
    fn results_do_not_depend_on_scheduling() {
        let cfg = OptimizerConfig::default();
        let a = run_suite("nonnegativity", 3, Some(16), &cfg).unwrap();
        let b = run_suite("nonnegativity", 3, Some(16), &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cases, 16);
    }

    #[test]
    fn werner_closed_form_at_half() {
        assert!((werner_n_zz_closed_form(0.5) - 0.18193951).abs() < 1e-7);
        assert!(werner_n_zz_closed_form(0.0).abs() < 1e-15);
    }
}
