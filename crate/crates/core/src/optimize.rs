//! Grid-then-simplex minimization of discord-like quantities and nonlocality
//! over qubit measurement bases.
//!
//! Each qubit basis is parameterized by Bloch angles `(theta, phi)`. The
//! coarse grid samples `theta` over `[0, pi]` (endpoints included) and `phi`
//! over `[0, pi)`; the best grid cells then seed Nelder-Mead refinements.
//! Objectives are evaluated from conditional-state spectra rather than by
//! building dephased matrices, which keeps the 4-parameter grid cheap.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, partial_trace, CMatrix, DensityMatrix, C64};
use crate::measures::{entropy, shannon, Measurement};
use crate::observables::{
    qubit_basis, qubit_vectors, schmidt_decompose, ProjectiveBasis, QubitBasisParam,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub grid_points_theta: usize,
    pub grid_points_phi: usize,
    pub refine_starts: usize,
    pub refine_tolerance: f64,
    pub max_refine_iterations: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points_theta: 25,
            grid_points_phi: 24,
            refine_starts: 5,
            refine_tolerance: 1e-7,
            max_refine_iterations: 500,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_theta < 2 {
            return Err(Error::InvalidConfig("grid_points_theta must be at least 2".into()));
        }
        if self.grid_points_phi == 0 || self.refine_starts == 0 || self.max_refine_iterations == 0 {
            return Err(Error::InvalidConfig(
                "grid_points_phi, refine_starts and max_refine_iterations must be positive".into(),
            ));
        }
        if self.refine_tolerance.is_nan() || self.refine_tolerance <= 0.0 {
            return Err(Error::InvalidConfig("refine_tolerance must be positive".into()));
        }
        Ok(())
    }

    fn grid_angles(&self) -> Vec<[f64; 2]> {
        let nt = self.grid_points_theta;
        let np = self.grid_points_phi;
        (0..nt)
            .flat_map(|i| {
                let theta = PI * i as f64 / (nt - 1) as f64;
                (0..np).map(move |j| [theta, PI * j as f64 / np as f64])
            })
            .collect()
    }

    fn steps(&self) -> [f64; 2] {
        [
            PI / (self.grid_points_theta - 1) as f64,
            PI / self.grid_points_phi as f64,
        ]
    }
}

/// Quantity minimized over a pair of local bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairObjective {
    /// `N(O_1, O_2 | rho)`; its minimum is `N_min`.
    Nonlocality,
    /// `D_[O_1, O_2](rho)`; its minimum is the global discord.
    DiscordLikePair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub value: f64,
    /// Canonical basis parameters per optimized subsystem.
    pub argmin: Vec<(usize, QubitBasisParam)>,
    pub grid_best: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl OptimizationResult {
    pub fn measurements(&self) -> Vec<Measurement> {
        self.argmin
            .iter()
            .map(|&(s, p)| Measurement::new(qubit_basis(p), s))
            .collect()
    }

    fn raw_angles(&self) -> Vec<f64> {
        self.argmin.iter().flat_map(|(_, p)| [p.theta, p.phi]).collect()
    }
}

/// `(lo, hi)` eigenvalues of a 2x2 Hermitian matrix.
fn eig2(m: &CMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [half_tr - disc, half_tr + disc]
}

fn spectrum_entropy(m: &CMatrix) -> f64 {
    if m.nrows() == 2 {
        shannon(&eig2(m))
    } else {
        shannon(&hermitian_eigenvalues(m))
    }
}

/// Quadratic form `<v|m|v>` for a 2-vector.
fn expect2(m: &CMatrix, v: &[C64; 2]) -> f64 {
    let mut acc = c(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc.re
}

/// Precomputed pieces of one local qubit measurement.
struct LocalData {
    vectors: [[C64; 2]; 2],
    /// Unnormalized conditional states of the other subsystem.
    blocks: [CMatrix; 2],
    /// `S(Phi(rho))`.
    dephased_entropy: f64,
    /// Shannon entropy of the outcome distribution.
    outcome_entropy: f64,
}

/// Spectral evaluator for objectives on a bipartite state with qubit factors.
struct Evaluator<'a> {
    rho: &'a CMatrix,
    dims: [usize; 2],
    entropy: f64,
    marginal_entropy: [f64; 2],
    mutual_information: f64,
}

impl<'a> Evaluator<'a> {
    fn new(rho: &'a DensityMatrix) -> Result<Self> {
        rho.require_subsystems(2)?;
        let dims = [rho.layout().dims()[0], rho.layout().dims()[1]];
        let s = entropy(rho);
        let s0 = entropy(&partial_trace(rho, &[0])?);
        let s1 = entropy(&partial_trace(rho, &[1])?);
        Ok(Evaluator {
            rho: rho.matrix(),
            dims,
            entropy: s,
            marginal_entropy: [s0, s1],
            mutual_information: s0 + s1 - s,
        })
    }

    fn index(&self, sub: usize, own: usize, other: usize) -> usize {
        if sub == 0 {
            own * self.dims[1] + other
        } else {
            other * self.dims[1] + own
        }
    }

    fn local(&self, sub: usize, theta: f64, phi: f64) -> LocalData {
        let vectors = qubit_vectors(theta, phi);
        let d_other = self.dims[1 - sub];
        let blocks = vectors.map(|v| {
            let mut m = CMatrix::zeros(d_other, d_other);
            for p in 0..d_other {
                for q in 0..d_other {
                    let mut acc = c(0.0, 0.0);
                    for i in 0..2 {
                        for j in 0..2 {
                            acc += v[i].conj() * v[j] * self.rho[(self.index(sub, i, p), self.index(sub, j, q))];
                        }
                    }
                    m[(p, q)] = acc;
                }
            }
            m
        });
        let probs = [blocks[0].trace().re, blocks[1].trace().re];
        LocalData {
            vectors,
            dephased_entropy: spectrum_entropy(&blocks[0]) + spectrum_entropy(&blocks[1]),
            outcome_entropy: shannon(&probs),
            blocks,
        }
    }

    /// `D_[O](rho) = I(rho) - I(Phi_O(rho))`.
    fn discord_single(&self, sub: usize, local: &LocalData) -> f64 {
        let dephased_mi = local.outcome_entropy + self.marginal_entropy[1 - sub] - local.dephased_entropy;
        self.mutual_information - dephased_mi
    }

    fn joint_entropy(a: &LocalData, b: &LocalData) -> f64 {
        let mut p = [0.0; 4];
        for k in 0..2 {
            for j in 0..2 {
                p[2 * k + j] = expect2(&a.blocks[k], &b.vectors[j]);
            }
        }
        shannon(&p)
    }

    fn pair(&self, objective: PairObjective, a: &LocalData, b: &LocalData) -> f64 {
        let joint = Self::joint_entropy(a, b);
        match objective {
            PairObjective::Nonlocality => a.dephased_entropy + b.dephased_entropy - joint - self.entropy,
            PairObjective::DiscordLikePair => {
                self.mutual_information - (a.outcome_entropy + b.outcome_entropy - joint)
            }
        }
    }

    fn pair_at(&self, objective: PairObjective, x: &[f64]) -> f64 {
        let a = self.local(0, x[0], x[1]);
        let b = self.local(1, x[2], x[3]);
        self.pair(objective, &a, &b)
    }
}

fn require_qubit(rho: &DensityMatrix, index: usize) -> Result<()> {
    let dim = rho.layout().dim(index)?;
    if dim != 2 {
        return Err(Error::NotQubit { index, dim });
    }
    Ok(())
}

struct SimplexOutcome {
    point: Vec<f64>,
    value: f64,
    evaluations: usize,
    converged: bool,
}

/// Nelder-Mead with standard coefficients; stops once the simplex's value
/// spread falls below `tol`.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    tol: f64,
    max_iter: usize,
) -> SimplexOutcome {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += steps[i];
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut evaluations = n + 1;
    let mut converged = false;

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if values[n] - values[0] <= tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|p| p[d]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = f(&reflected);
        evaluations += 1;
        if fr < values[0] {
            let expanded = along(2.0);
            let fe = f(&expanded);
            evaluations += 1;
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let p = along(0.5);
            let v = f(&p);
            (p, v)
        } else {
            let p = along(-0.5);
            let v = f(&p);
            (p, v)
        };
        evaluations += 1;
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let p: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, x)| b + 0.5 * (x - b))
                .collect();
            values[i] = f(&p);
            simplex[i] = p;
        }
        evaluations += n;
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty simplex");
    SimplexOutcome {
        point: simplex[best].clone(),
        value: values[best],
        evaluations,
        converged,
    }
}

/// Indices of the `k` smallest grid values, ties broken by lower index.
fn best_cells(values: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    order.truncate(k);
    order
}

struct Refined {
    value: f64,
    point: Vec<f64>,
    evaluations: usize,
    converged: bool,
}

fn refine(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    starts: &[Vec<f64>],
    steps: &[f64],
    cfg: &OptimizerConfig,
) -> Refined {
    let outcomes: Vec<SimplexOutcome> = starts
        .par_iter()
        .map(|s| nelder_mead(f, s, steps, cfg.refine_tolerance, cfg.max_refine_iterations))
        .collect();
    let best = outcomes
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(i, _)| i)
        .expect("at least one start");
    Refined {
        value: outcomes[best].value,
        point: outcomes[best].point.clone(),
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        converged: outcomes.iter().any(|o| o.converged),
    }
}

fn canonical_argmin(subsystems: &[usize], point: &[f64]) -> Vec<(usize, QubitBasisParam)> {
    subsystems
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, QubitBasisParam::canonical(point[2 * i], point[2 * i + 1])))
        .collect()
}

/// Minimum of `D_[O](rho)` over qubit bases `O` on `subsystem` (the quantum discord).
pub fn minimize_single(rho: &DensityMatrix, subsystem: usize, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    cfg.validate()?;
    rho.require_subsystems(2)?;
    require_qubit(rho, subsystem)?;
    let ev = Evaluator::new(rho)?;

    let grid = cfg.grid_angles();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&[t, p]| ev.discord_single(subsystem, &ev.local(subsystem, t, p)))
        .collect();
    let cells = best_cells(&values, cfg.refine_starts);
    let grid_best = values[cells[0]];

    let objective = |x: &[f64]| ev.discord_single(subsystem, &ev.local(subsystem, x[0], x[1]));
    let starts: Vec<Vec<f64>> = cells.iter().map(|&i| grid[i].to_vec()).collect();
    let refined = refine(&objective, &starts, &cfg.steps(), cfg);

    let (value, point) = if refined.value < grid_best {
        (refined.value, refined.point)
    } else {
        (grid_best, grid[cells[0]].to_vec())
    };
    Ok(OptimizationResult {
        value,
        argmin: canonical_argmin(&[subsystem], &point),
        grid_best,
        evaluations: grid.len() + refined.evaluations,
        converged: refined.converged,
    })
}

/// Minimum of a pair objective over qubit bases on both subsystems.
pub fn minimize_pair(rho: &DensityMatrix, objective: PairObjective, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    minimize_pair_with_starts(rho, objective, cfg, &[])
}

/// As [`minimize_pair`], additionally refining from caller-supplied angle
/// vectors `[theta_0, phi_0, theta_1, phi_1]`.
pub fn minimize_pair_with_starts(
    rho: &DensityMatrix,
    objective: PairObjective,
    cfg: &OptimizerConfig,
    extra_starts: &[[f64; 4]],
) -> Result<OptimizationResult> {
    cfg.validate()?;
    rho.require_subsystems(2)?;
    require_qubit(rho, 0)?;
    require_qubit(rho, 1)?;
    let ev = Evaluator::new(rho)?;

    let grid = cfg.grid_angles();
    let side_a: Vec<LocalData> = grid.par_iter().map(|&[t, p]| ev.local(0, t, p)).collect();
    let side_b: Vec<LocalData> = grid.par_iter().map(|&[t, p]| ev.local(1, t, p)).collect();
    let values: Vec<f64> = side_a
        .par_iter()
        .flat_map_iter(|a| side_b.iter().map(|b| ev.pair(objective, a, b)))
        .collect();
    let cells = best_cells(&values, cfg.refine_starts);
    let grid_best = values[cells[0]];
    let cell_point = |i: usize| {
        let (a, b) = (grid[i / grid.len()], grid[i % grid.len()]);
        vec![a[0], a[1], b[0], b[1]]
    };

    let f = |x: &[f64]| ev.pair_at(objective, x);
    let mut starts: Vec<Vec<f64>> = cells.iter().map(|&i| cell_point(i)).collect();
    starts.extend(extra_starts.iter().map(|s| s.to_vec()));
    let steps = cfg.steps();
    let refined = refine(&f, &starts, &[steps[0], steps[1], steps[0], steps[1]], cfg);

    let (value, point) = if refined.value < grid_best {
        (refined.value, refined.point)
    } else {
        (grid_best, cell_point(cells[0]))
    };
    Ok(OptimizationResult {
        value,
        argmin: canonical_argmin(&[0, 1], &point),
        grid_best,
        evaluations: values.len() + refined.evaluations,
        converged: refined.converged,
    })
}

/// `N_min` and the global discord, optimized separately.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlocalityBounds {
    pub n_min: OptimizationResult,
    pub global_discord: OptimizationResult,
}

impl NonlocalityBounds {
    /// How far `0 <= N_min <= D_12` is from holding (zero when it holds).
    pub fn sandwich_violation(&self) -> f64 {
        (-self.n_min.value).max(self.n_min.value - self.global_discord.value).max(0.0)
    }
}

/// Minimizes the global discord first and adds its minimizer to the
/// nonlocality search, so `N_min` is never reported above `N` at that pair.
pub fn nonlocality_bounds(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<NonlocalityBounds> {
    let global_discord = minimize_pair(rho, PairObjective::DiscordLikePair, cfg)?;
    let hint = global_discord.raw_angles();
    let n_min = minimize_pair_with_starts(
        rho,
        PairObjective::Nonlocality,
        cfg,
        &[[hint[0], hint[1], hint[2], hint[3]]],
    )?;
    Ok(NonlocalityBounds {
        n_min,
        global_discord,
    })
}

/// Bases `(Schmidt basis on A, Fourier transform of the Schmidt basis on B)`
/// for which the nonlocality of a pure state vanishes.
pub fn witness_pair_for_pure(psi: &DensityMatrix) -> Result<(ProjectiveBasis, ProjectiveBasis)> {
    let schmidt = schmidt_decompose(psi)?;
    let witness_b = schmidt.basis_b.fourier_transformed();
    Ok((schmidt.basis_a, witness_b))
}
