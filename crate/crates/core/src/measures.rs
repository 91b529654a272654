//! Entropic quantifiers: irreality, discord-like quantities and nonlocality.
//!
//! All entropies are in nats and are computed from eigenvalues.

use crate::error::{Error, Result};
use crate::linalg::{
    c, embed, frobenius_distance, hermitian_eigensystem, hermitian_eigenvalues, identity,
    partial_trace, pauli_y, tensor_product, CMatrix, DensityMatrix, Layout,
};
use crate::observables::{lift, ProjectiveBasis};

/// Eigenvalues at or below this contribute nothing to `-x ln x`.
const ZERO_EIGENVALUE: f64 = 1e-15;
/// Support threshold for relative entropy.
const SUPPORT_TOL: f64 = 1e-12;
/// Weight outside the support that makes relative entropy infinite.
const LEAK_TOL: f64 = 1e-9;
/// Agreement required between algebraically equivalent routes.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
const PURITY_TOL: f64 = 1e-9;

/// A rank-1 projective measurement on one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub basis: ProjectiveBasis,
    pub subsystem: usize,
}

impl Measurement {
    pub fn new(basis: ProjectiveBasis, subsystem: usize) -> Self {
        Measurement { basis, subsystem }
    }
}

/// `-sum x ln x` with `0 ln 0 = 0`.
pub fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ZERO_EIGENVALUE)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Binary entropy in nats.
pub fn binary_entropy(p: f64) -> f64 {
    shannon(&[p, 1.0 - p])
}

pub fn entropy(rho: &DensityMatrix) -> f64 {
    shannon(&hermitian_eigenvalues(rho.matrix())).max(0.0)
}

/// `Tr(rho ln rho) - Tr(rho ln sigma)`, `+inf` when `rho` leaks outside `sigma`'s support.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let es = hermitian_eigensystem(sigma.matrix())?;
    let mut cross = 0.0;
    let mut leak = 0.0;
    for (k, &mu) in es.values.iter().enumerate() {
        let v = es.vectors.column(k);
        let weight = v.dotc(&(rho.matrix() * v)).re;
        if mu > SUPPORT_TOL {
            cross += weight * mu.ln();
        } else {
            leak += weight;
        }
    }
    if leak > LEAK_TOL {
        return Ok(f64::INFINITY);
    }
    Ok((-entropy(rho) - cross).max(0.0))
}

/// `sum_k Pi_k rho Pi_k` with `Pi_k` the lifted projectors of `basis`.
pub fn dephase(rho: &DensityMatrix, basis: &ProjectiveBasis, subsystem: usize) -> Result<DensityMatrix> {
    let projectors = lift(basis, subsystem, rho.layout())?;
    let m = rho.matrix();
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for p in &projectors {
        out += p * m * p;
    }
    DensityMatrix::new(out, rho.layout().clone())
}

/// Applies each measurement's dephasing in turn. Subsystems must be distinct.
pub fn dephase_all(rho: &DensityMatrix, measurements: &[Measurement]) -> Result<DensityMatrix> {
    check_distinct(measurements)?;
    measurements
        .iter()
        .try_fold(rho.clone(), |acc, m| dephase(&acc, &m.basis, m.subsystem))
}

fn check_distinct(measurements: &[Measurement]) -> Result<()> {
    for (i, a) in measurements.iter().enumerate() {
        if measurements[..i].iter().any(|b| b.subsystem == a.subsystem) {
            return Err(Error::SubsystemCollision(a.subsystem));
        }
    }
    Ok(())
}

/// Whether the observable is an element of reality: `Phi(rho) = rho` within `tol`.
pub fn is_real(basis: &ProjectiveBasis, subsystem: usize, rho: &DensityMatrix, tol: f64) -> Result<bool> {
    let dephased = dephase(rho, basis, subsystem)?;
    Ok(frobenius_distance(dephased.matrix(), rho.matrix())? <= tol)
}

/// `S(Phi(rho)) - S(rho)`, clamped at zero.
pub fn irreality(basis: &ProjectiveBasis, subsystem: usize, rho: &DensityMatrix) -> Result<f64> {
    let dephased = dephase(rho, basis, subsystem)?;
    Ok((entropy(&dephased) - entropy(rho)).max(0.0))
}

fn mutual_information_from_entropies(rho: &DensityMatrix) -> Result<(f64, DensityMatrix, DensityMatrix)> {
    rho.require_subsystems(2)?;
    let r1 = partial_trace(rho, &[0])?;
    let r2 = partial_trace(rho, &[1])?;
    let value = entropy(&r1) + entropy(&r2) - entropy(rho);
    Ok((value.max(0.0), r1, r2))
}

/// `S(rho_1) + S(rho_2) - S(rho)`, cross-checked against `S(rho || rho_1 x rho_2)`
/// whenever the product of marginals has full support.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let (value, r1, r2) = mutual_information_from_entropies(rho)?;
    let product = r1.tensor(&r2);
    if product.eigenvalues()[0] > SUPPORT_TOL {
        let relative = relative_entropy(rho, &product)?;
        let diff = (relative - value).abs();
        if diff > CROSS_CHECK_TOL {
            return Err(Error::Inconsistent {
                what: "mutual information (entropy vs relative-entropy form)",
                a: value,
                b: relative,
                diff,
            });
        }
    }
    Ok(value)
}

/// Mutual-information drop `I(rho) - I(Phi(rho))` under one or two local dephasings.
pub fn discord_like(rho: &DensityMatrix, measurements: &[Measurement]) -> Result<f64> {
    rho.require_subsystems(2)?;
    if measurements.is_empty() || measurements.len() > 2 {
        return Err(Error::WrongSubsystemCount {
            expected: 2,
            found: measurements.len(),
        });
    }
    let dephased = dephase_all(rho, measurements)?;
    Ok(mutual_information(rho)? - mutual_information(&dephased)?)
}

/// Splits the irreality of an observable into local and correlated parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrrealityDecomposition {
    pub total: f64,
    pub local: f64,
    pub correlated: f64,
}

impl IrrealityDecomposition {
    pub fn residual(&self) -> f64 {
        (self.total - self.local - self.correlated).abs()
    }
}

pub fn irreality_decomposition(
    basis: &ProjectiveBasis,
    subsystem: usize,
    rho: &DensityMatrix,
) -> Result<IrrealityDecomposition> {
    rho.require_subsystems(2)?;
    let total = irreality(basis, subsystem, rho)?;
    let reduced = partial_trace(rho, &[subsystem])?;
    let local = irreality(basis, 0, &reduced)?;
    let correlated = discord_like(rho, &[Measurement::new(basis.clone(), subsystem)])?;
    Ok(IrrealityDecomposition {
        total,
        local,
        correlated,
    })
}

/// `ln d - S(rho)` for a single-subsystem state.
pub fn available_information(rho: &DensityMatrix) -> Result<f64> {
    rho.require_subsystems(1)?;
    Ok(((rho.dim() as f64).ln() - entropy(rho)).max(0.0))
}

/// Both routes to the nonlocality of a pair of observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalityForms {
    /// `S(Phi_1) + S(Phi_2) - S(Phi_12) - S(rho)`.
    pub symmetric: f64,
    /// `I(O_1|rho) - I(O_1|Phi_2(rho))`.
    pub directed: f64,
}

pub fn nonlocality_forms(a: &Measurement, b: &Measurement, rho: &DensityMatrix) -> Result<NonlocalityForms> {
    rho.require_subsystems(2)?;
    if a.subsystem == b.subsystem {
        return Err(Error::SubsystemCollision(a.subsystem));
    }
    let phi_a = dephase(rho, &a.basis, a.subsystem)?;
    let phi_b = dephase(rho, &b.basis, b.subsystem)?;
    let phi_ab = dephase(&phi_a, &b.basis, b.subsystem)?;
    let symmetric = entropy(&phi_a) + entropy(&phi_b) - entropy(&phi_ab) - entropy(rho);
    let directed = irreality(&a.basis, a.subsystem, rho)? - irreality(&a.basis, a.subsystem, &phi_b)?;
    Ok(NonlocalityForms {
        symmetric,
        directed,
    })
}

/// Nonlocality `N(O_1, O_2 | rho)` in symmetric form; errors if the directed
/// form disagrees by more than [`CROSS_CHECK_TOL`].
pub fn nonlocality(a: &Measurement, b: &Measurement, rho: &DensityMatrix) -> Result<f64> {
    let forms = nonlocality_forms(a, b, rho)?;
    let diff = (forms.symmetric - forms.directed).abs();
    if diff > CROSS_CHECK_TOL {
        return Err(Error::Inconsistent {
            what: "nonlocality (symmetric vs directed form)",
            a: forms.symmetric,
            b: forms.directed,
            diff,
        });
    }
    Ok(forms.symmetric)
}

/// Wootters concurrence, complex conjugation in the computational basis.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let yy = tensor_product(&pauli_y(), &pauli_y());
    let tilde = &yy * rho.matrix().conjugate() * &yy;
    // sqrt(rho) tilde sqrt(rho) shares its spectrum with rho tilde and is Hermitian
    let es = hermitian_eigensystem(rho.matrix())?;
    let sqrt_diag = crate::linalg::diag(&es.values.iter().map(|v| v.max(0.0).sqrt()).collect::<Vec<_>>());
    let sqrt_rho = &es.vectors * sqrt_diag * es.vectors.adjoint();
    let m = &sqrt_rho * tilde * &sqrt_rho;
    let mut mu: Vec<f64> = hermitian_eigenvalues(&m).iter().map(|v| v.max(0.0).sqrt()).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Entropy of either reduced state of a bipartite pure state.
pub fn entanglement_entropy(psi: &DensityMatrix) -> Result<f64> {
    psi.require_subsystems(2)?;
    let purity = psi.purity();
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::NotPure { purity });
    }
    let s1 = entropy(&partial_trace(psi, &[0])?);
    let s2 = entropy(&partial_trace(psi, &[1])?);
    let diff = (s1 - s2).abs();
    if diff > CROSS_CHECK_TOL {
        return Err(Error::Inconsistent {
            what: "reduced-state entropies",
            a: s1,
            b: s2,
            diff,
        });
    }
    Ok(s1)
}

/// Cyclic shift `|a> -> |a + k mod d>` raised to the `k`-th power.
fn shift_power(d: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for a in 0..d {
        m[((a + k) % d, a)] = c(1.0, 0.0);
    }
    m
}

fn ancilla_ground(d: usize) -> DensityMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(0, 0)] = c(1.0, 0.0);
    DensityMatrix::new(m, Layout::single(d)).expect("pure ancilla")
}

/// Controlled-shift unitary `sum_k Pi_k x X^k` writing the outcome of `basis`
/// on `subsystem` into an ancilla appended at position `ancilla`.
fn recording_unitary(
    basis: &ProjectiveBasis,
    subsystem: usize,
    layout: &Layout,
    ancilla: usize,
) -> Result<CMatrix> {
    let d = basis.dim();
    let projectors = lift(basis, subsystem, &system_part(layout, ancilla))?;
    let mut u = CMatrix::zeros(layout.total(), layout.total());
    for (k, p) in projectors.iter().enumerate() {
        let shift = embed(&shift_power(d, k), ancilla, layout)?;
        let control = tensor_product(p, &identity(layout.total() / p.nrows()));
        u += control * shift;
    }
    Ok(u)
}

fn system_part(layout: &Layout, ancilla_start: usize) -> Layout {
    Layout::new(layout.dims()[..ancilla_start].to_vec()).expect("nonempty system")
}

/// Dephasing realized as `Tr_A[U (rho x |a0><a0|) U^dag]` with a recording ancilla.
pub fn dilation_dephase(rho: &DensityMatrix, basis: &ProjectiveBasis, subsystem: usize) -> Result<DensityMatrix> {
    let n = rho.layout().len();
    let d = rho.layout().dim(subsystem)?;
    if d != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: basis.dim(),
        });
    }
    let extended = rho.tensor(&ancilla_ground(d));
    let u = recording_unitary(basis, subsystem, extended.layout(), n)?;
    let evolved = extended.conjugate(&u)?;
    partial_trace(&evolved, &(0..n).collect::<Vec<_>>())
}

/// Entropies of the four-party dilation `rho x |a0><a0| x |b0><b0|` after both
/// measurements are recorded, with the single-system quantities they must equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationEntropies {
    /// `S(rho_{12AB})`, equals `S(rho)`.
    pub whole: f64,
    /// `S(rho_{12})`, equals `S(Phi_12(rho))`.
    pub system: f64,
    /// `S(rho_{12A})`, equals `S(Phi_2(rho))`.
    pub system_with_first: f64,
    /// `S(rho_{12B})`, equals `S(Phi_1(rho))`.
    pub system_with_second: f64,
    pub expected_whole: f64,
    pub expected_system: f64,
    pub expected_system_with_first: f64,
    pub expected_system_with_second: f64,
}

impl DilationEntropies {
    /// Largest gap between a dilated entropy and its single-system counterpart.
    pub fn residual(&self) -> f64 {
        [
            self.whole - self.expected_whole,
            self.system - self.expected_system,
            self.system_with_first - self.expected_system_with_first,
            self.system_with_second - self.expected_system_with_second,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }

    /// `S_XZ + S_YZ - S_XYZ - S_Z`, nonnegative by strong subadditivity.
    pub fn ssa_gap(&self) -> f64 {
        self.system_with_first + self.system_with_second - self.whole - self.system
    }
}

pub fn dilation_entropies(a: &Measurement, b: &Measurement, rho: &DensityMatrix) -> Result<DilationEntropies> {
    rho.require_subsystems(2)?;
    if a.subsystem == b.subsystem {
        return Err(Error::SubsystemCollision(a.subsystem));
    }
    let (da, db) = (a.basis.dim(), b.basis.dim());
    let extended = rho.tensor(&ancilla_ground(da)).tensor(&ancilla_ground(db));
    let layout = extended.layout().clone();
    // ancilla A sits at index 2, B at index 3
    let u_a = recording_unitary(&a.basis, a.subsystem, &Layout::new(layout.dims()[..3].to_vec())?, 2)?;
    let u_a = tensor_product(&u_a, &identity(db));
    let u_b = {
        let swapped = Layout::new(vec![layout.dims()[0], layout.dims()[1], db])?;
        let u = recording_unitary(&b.basis, b.subsystem, &swapped, 2)?;
        // reorder (1,2,B) x A into (1,2,A,B)
        permute_last_two(&tensor_product(&u, &identity(da)), layout.dims()[0] * layout.dims()[1], db, da)
    };
    let evolved = extended.conjugate(&(u_b * u_a))?;

    let phi_a = dephase(rho, &a.basis, a.subsystem)?;
    let phi_b = dephase(rho, &b.basis, b.subsystem)?;
    let phi_ab = dephase(&phi_a, &b.basis, b.subsystem)?;
    Ok(DilationEntropies {
        whole: entropy(&evolved),
        system: entropy(&partial_trace(&evolved, &[0, 1])?),
        system_with_first: entropy(&partial_trace(&evolved, &[0, 1, 2])?),
        system_with_second: entropy(&partial_trace(&evolved, &[0, 1, 3])?),
        expected_whole: entropy(rho),
        expected_system: entropy(&phi_ab),
        expected_system_with_first: entropy(&phi_b),
        expected_system_with_second: entropy(&phi_a),
    })
}

/// Conjugates an operator on `S x P x Q` by the swap to act on `S x Q x P`.
fn permute_last_two(op: &CMatrix, ds: usize, dp: usize, dq: usize) -> CMatrix {
    let n = ds * dp * dq;
    let mut perm = CMatrix::zeros(n, n);
    for s in 0..ds {
        for p in 0..dp {
            for q in 0..dq {
                perm[(s * dq * dp + q * dp + p, s * dp * dq + p * dq + q)] = c(1.0, 0.0);
            }
        }
    }
    &perm * op * perm.adjoint()
}

/// `I(O|rho) - I(O|U rho U^dag)` for a unitary acting on a different subsystem.
pub fn remote_unitary_invariance(
    basis: &ProjectiveBasis,
    subsystem: usize,
    unitary: &CMatrix,
    remote: usize,
    rho: &DensityMatrix,
) -> Result<f64> {
    if subsystem == remote {
        return Err(Error::SubsystemCollision(subsystem));
    }
    let u = embed(unitary, remote, rho.layout())?;
    let rotated = rho.conjugate(&u)?;
    Ok(irreality(basis, subsystem, rho)? - irreality(basis, subsystem, &rotated)?)
}
