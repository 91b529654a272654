//! Rank-1 projective bases on single subsystems.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{
    c, embed, frobenius_distance, hermitian_eigensystem, identity, partial_trace, CMatrix, CVector,
    DensityMatrix, Layout,
};

const ORTHONORMAL_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-9;

/// Orthonormal eigenbasis of an observable. Column `k` of the unitary is `|o_k>`.
///
/// Eigenvalue labels are carried for reporting only; every measure depends
/// on the projectors alone.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBasis {
    unitary: CMatrix,
    labels: Option<Vec<f64>>,
}

impl ProjectiveBasis {
    pub fn new(unitary: CMatrix) -> Result<Self> {
        if !unitary.is_square() {
            return Err(Error::NotSquare {
                rows: unitary.nrows(),
                cols: unitary.ncols(),
            });
        }
        let gram = unitary.adjoint() * &unitary;
        let residual = gram
            .iter()
            .zip(identity(unitary.nrows()).iter())
            .map(|(g, i)| (g - i).norm())
            .fold(0.0, f64::max);
        if residual > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(ProjectiveBasis {
            unitary,
            labels: None,
        })
    }

    pub fn from_vectors(vectors: &[CVector]) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::EmptySelection);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        ProjectiveBasis::new(CMatrix::from_columns(vectors))
    }

    pub fn with_labels(mut self, labels: Vec<f64>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn computational(dim: usize) -> Self {
        ProjectiveBasis {
            unitary: identity(dim),
            labels: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn labels(&self) -> Option<&[f64]> {
        self.labels.as_deref()
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.unitary.column(k).into_owned()
    }

    /// `|o_k><o_k|` on the basis' own space.
    pub fn projector(&self, k: usize) -> CMatrix {
        let v = self.unitary.column(k);
        v * v.adjoint()
    }

    pub fn projectors(&self) -> Vec<CMatrix> {
        (0..self.dim()).map(|k| self.projector(k)).collect()
    }

    /// Observable `sum_k o_k |o_k><o_k|`, using labels `0, 1, ...` when none are set.
    pub fn observable(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for k in 0..self.dim() {
            let o = self.labels.as_ref().map_or(k as f64, |l| l[k]);
            out += self.projector(k) * c(o, 0.0);
        }
        out
    }

    /// Basis whose vectors are the discrete Fourier transform of this one's.
    pub fn fourier_transformed(&self) -> ProjectiveBasis {
        ProjectiveBasis {
            unitary: &self.unitary * fourier_matrix(self.dim()),
            labels: None,
        }
    }
}

/// Bloch-sphere angles of a qubit measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBasisParam {
    pub theta: f64,
    pub phi: f64,
}

impl QubitBasisParam {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::ParameterOutOfRange {
                name: "theta",
                value: theta,
                min: 0.0,
                max: PI,
            });
        }
        if !(0.0..PI).contains(&phi) {
            return Err(Error::ParameterOutOfRange {
                name: "phi",
                value: phi,
                min: 0.0,
                max: PI,
            });
        }
        Ok(QubitBasisParam { theta, phi })
    }

    /// Folds arbitrary angles onto `theta in [0, pi]`, `phi in [0, pi)` while
    /// keeping the same measurement axis (up to the antipodal symmetry).
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let axis = [st * phi.cos(), st * phi.sin(), ct];
        let mut t = axis[2].clamp(-1.0, 1.0).acos();
        let rho = axis[0].hypot(axis[1]);
        if rho < 1e-12 {
            return QubitBasisParam { theta: t, phi: 0.0 };
        }
        let mut p = axis[1].atan2(axis[0]);
        if !(0.0..PI).contains(&p) {
            t = PI - t;
            p = (p + PI).rem_euclid(2.0 * PI);
            if p >= PI {
                p -= PI;
            }
        }
        QubitBasisParam { theta: t, phi: p }
    }

    pub fn bloch_axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        [st * self.phi.cos(), st * self.phi.sin(), ct]
    }
}

/// `{(cos(t/2), e^{i p} sin(t/2)), (-e^{-i p} sin(t/2), cos(t/2))}`.
pub fn qubit_basis(p: QubitBasisParam) -> ProjectiveBasis {
    let [v0, v1] = qubit_vectors(p.theta, p.phi);
    ProjectiveBasis {
        unitary: CMatrix::from_row_slice(2, 2, &[v0[0], v1[0], v0[1], v1[1]]),
        labels: Some(vec![1.0, -1.0]),
    }
}

/// Raw basis vectors for [`qubit_basis`], accepting any real angles.
pub fn qubit_vectors(theta: f64, phi: f64) -> [[nalgebra::Complex<f64>; 2]; 2] {
    let (s, cs) = (theta / 2.0).sin_cos();
    let e = nalgebra::Complex::from_polar(1.0, phi);
    [[c(cs, 0.0), e * s], [-e.conj() * s, c(cs, 0.0)]]
}

pub fn pauli_basis(axis: char) -> Option<ProjectiveBasis> {
    let p = match axis {
        'x' => QubitBasisParam::new(PI / 2.0, 0.0).ok()?,
        'y' => QubitBasisParam::new(PI / 2.0, PI / 2.0).ok()?,
        'z' => QubitBasisParam::new(0.0, 0.0).ok()?,
        _ => return None,
    };
    Some(qubit_basis(p))
}

fn fourier_matrix(d: usize) -> CMatrix {
    let norm = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |j, k| {
        nalgebra::Complex::from_polar(norm, 2.0 * PI * (j * k % d) as f64 / d as f64)
    })
}

/// Vectors `v_k` with components `e^{2 pi i j k / d} / sqrt(d)`.
pub fn fourier_basis(d: usize) -> ProjectiveBasis {
    ProjectiveBasis {
        unitary: fourier_matrix(d),
        labels: None,
    }
}

/// True iff every `|<a_j|b_k>|^2` is within `tol` of `1/dim`.
pub fn is_mub(a: &ProjectiveBasis, b: &ProjectiveBasis, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let target = 1.0 / a.dim() as f64;
    let overlaps = a.unitary().adjoint() * b.unitary();
    Ok(overlaps.iter().all(|o| (o.norm_sqr() - target).abs() <= tol))
}

/// Projectors `I x ... x |o_k><o_k| x ... x I`, one per basis vector.
pub fn lift(basis: &ProjectiveBasis, subsystem: usize, layout: &Layout) -> Result<Vec<CMatrix>> {
    let d = layout.dim(subsystem)?;
    if d != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: basis.dim(),
        });
    }
    basis
        .projectors()
        .iter()
        .map(|p| embed(p, subsystem, layout))
        .collect()
}

/// Schmidt form `sum_k sqrt(lambda_k) |k>_A |k>_B` of a bipartite pure state.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    /// Nonincreasing, length `min(dA, dB)`.
    pub coefficients: Vec<f64>,
    pub basis_a: ProjectiveBasis,
    pub basis_b: ProjectiveBasis,
}

impl SchmidtForm {
    pub fn state_vector(&self) -> CVector {
        let (da, db) = (self.basis_a.dim(), self.basis_b.dim());
        let mut psi = CVector::zeros(da * db);
        for (k, &lambda) in self.coefficients.iter().enumerate() {
            psi += self.basis_a.vector(k).kronecker(&self.basis_b.vector(k)) * c(lambda.sqrt(), 0.0);
        }
        psi
    }
}

/// Dominant eigenvector of a pure state.
pub fn state_vector(psi: &DensityMatrix) -> Result<CVector> {
    let purity = psi.purity();
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::NotPure { purity });
    }
    let es = hermitian_eigensystem(psi.matrix())?;
    Ok(es.vectors.column(psi.dim() - 1).into_owned())
}

pub fn schmidt_decompose(psi: &DensityMatrix) -> Result<SchmidtForm> {
    psi.require_subsystems(2)?;
    let vector = state_vector(psi)?;
    let (da, db) = (psi.layout().dims()[0], psi.layout().dims()[1]);

    let rho_a = partial_trace(psi, &[0])?;
    let es = hermitian_eigensystem(rho_a.matrix())?;
    // descending; stable sort keeps the eigensolver's order on ties
    let mut order: Vec<usize> = (0..da).rev().collect();
    order.sort_by(|&x, &y| es.values[y].total_cmp(&es.values[x]));
    let terms = da.min(db);

    let a_vectors: Vec<CVector> = order.iter().map(|&k| es.vectors.column(k).into_owned()).collect();
    let mut coefficients = Vec::with_capacity(terms);
    let mut b_vectors: Vec<CVector> = Vec::with_capacity(db);
    for (k, a) in a_vectors.iter().take(terms).enumerate() {
        let lambda = es.values[order[k]].max(0.0);
        coefficients.push(lambda);
        if lambda > 1e-10 {
            // (<a| x I)|psi>
            let mut b = CVector::zeros(db);
            for i in 0..da {
                let w = a[i].conj();
                for j in 0..db {
                    b[j] += w * vector[i * db + j];
                }
            }
            b_vectors.push(b / c(lambda.sqrt(), 0.0));
        }
    }
    let norm: f64 = coefficients.iter().sum();
    coefficients.iter_mut().for_each(|l| *l /= norm);

    let basis_b = ProjectiveBasis::from_vectors(&complete_orthonormal(b_vectors, db))?;
    let basis_a = ProjectiveBasis::from_vectors(&a_vectors)?;
    Ok(SchmidtForm {
        coefficients,
        basis_a,
        basis_b,
    })
}

/// Re-orthonormalizes `seed` (modified Gram-Schmidt) and extends it to a full basis.
fn complete_orthonormal(seed: Vec<CVector>, dim: usize) -> Vec<CVector> {
    let mut out: Vec<CVector> = Vec::with_capacity(dim);
    let candidates = seed
        .into_iter()
        .chain((0..dim).map(|i| CVector::from_fn(dim, |j, _| c((i == j) as u8 as f64, 0.0))));
    for mut v in candidates {
        if out.len() == dim {
            break;
        }
        for u in &out {
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let n = v.norm();
        if n > 1e-6 {
            out.push(v / c(n, 0.0));
        }
    }
    out
}

/// Fidelity `|<a|b>|^2` between two normalized vectors.
pub fn vector_fidelity(a: &CVector, b: &CVector) -> f64 {
    a.dotc(b).norm_sqr()
}

/// Frobenius distance between the dephasing maps' images is the usual way to
/// compare two bases; this compares projector sets directly.
pub fn same_projectors(a: &ProjectiveBasis, b: &ProjectiveBasis, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let pb = b.projectors();
    a.projectors().iter().all(|p| {
        pb.iter()
            .any(|q| frobenius_distance(p, q).map(|d| d <= tol).unwrap_or(false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_distance, pauli_x, pauli_y, pauli_z};
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn eigenbasis_of(op: &CMatrix, basis: &ProjectiveBasis) -> bool {
        (0..basis.dim()).all(|k| {
            let v = basis.vector(k);
            let w = op * &v;
            let lambda = v.dotc(&w);
            (w - v * lambda).norm() < 1e-12
        })
    }

    #[test]
    fn qubit_basis_examples() {
        let z = qubit_basis(QubitBasisParam::new(0.0, 0.0).unwrap());
        assert!(frobenius_distance(z.unitary(), &identity(2)).unwrap() < 1e-15);
        let x = qubit_basis(QubitBasisParam::new(PI / 2.0, 0.0).unwrap());
        assert!(eigenbasis_of(&pauli_x(), &x));
        let y = qubit_basis(QubitBasisParam::new(PI / 2.0, PI / 2.0).unwrap());
        assert!(eigenbasis_of(&pauli_y(), &y));
        assert!(eigenbasis_of(&pauli_z(), &z));
    }

    #[test]
    fn qubit_param_ranges() {
        assert!(QubitBasisParam::new(-0.1, 0.0).is_err());
        assert!(QubitBasisParam::new(0.0, PI).is_err());
        assert!(QubitBasisParam::new(PI, 0.0).is_ok());
    }

    #[test]
    fn canonical_keeps_projectors() {
        for &(t, p) in &[(2.0, 4.0), (-1.0, 0.3), (7.0, -2.0), (0.5, 3.5), (PI, 1.0)] {
            let cp = QubitBasisParam::canonical(t, p);
            assert!((0.0..=PI).contains(&cp.theta) && (0.0..PI).contains(&cp.phi));
            let a = qubit_basis(QubitBasisParam { theta: t, phi: p });
            assert!(same_projectors(&a, &qubit_basis(cp), 1e-10), "{t} {p} -> {cp:?}");
        }
    }

    #[test]
    fn fourier_examples() {
        let f2 = fourier_basis(2);
        let x = pauli_basis('x').unwrap();
        assert!(same_projectors(&f2, &x, 1e-12));
        for d in 2..=5 {
            let f = fourier_basis(d);
            assert!(ProjectiveBasis::new(f.unitary().clone()).is_ok());
            assert!(is_mub(&ProjectiveBasis::computational(d), &f, 1e-10).unwrap());
        }
        let f3 = fourier_basis(3);
        let gram = f3.unitary().adjoint() * f3.unitary();
        assert!(frobenius_distance(&gram, &identity(3)).unwrap() < 1e-12);
    }

    #[test]
    fn mub_examples() {
        let z = ProjectiveBasis::computational(2);
        assert!(!is_mub(&z, &z, 1e-10).unwrap());
        for i in 0..8 {
            let phi = i as f64 * PI / 8.0;
            let eq = qubit_basis(QubitBasisParam::new(PI / 2.0, phi).unwrap());
            assert!(is_mub(&z, &eq, 1e-10).unwrap());
        }
        assert!(is_mub(&z, &fourier_basis(3), 1e-10).is_err());
    }

    #[test]
    fn lift_examples() {
        let layout = Layout::qubits(2);
        let z = ProjectiveBasis::computational(2);
        let ps = lift(&z, 0, &layout).unwrap();
        assert_eq!(ps[0], crate::linalg::diag(&[1.0, 1.0, 0.0, 0.0]));
        assert_eq!(ps[1], crate::linalg::diag(&[0.0, 0.0, 1.0, 1.0]));
        let sum = ps.iter().fold(CMatrix::zeros(4, 4), |a, p| a + p);
        assert!(frobenius_distance(&sum, &identity(4)).unwrap() < 1e-12);
        let f = fourier_basis(3);
        let single = lift(&f, 0, &Layout::single(3)).unwrap();
        for (p, q) in single.iter().zip(f.projectors()) {
            assert!(frobenius_distance(p, &q).unwrap() < 1e-15);
        }
        assert!(lift(&f, 0, &layout).is_err());
        assert!(lift(&z, 2, &layout).is_err());
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt_decompose(&states::singlet()).unwrap();
        assert_abs_diff_eq!(s.coefficients[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.coefficients[1], 0.5, epsilon = 1e-12);

        let zero = states::pure_from_amplitudes(
            &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)],
            Layout::qubits(2),
        )
        .unwrap();
        let s = schmidt_decompose(&zero).unwrap();
        assert_abs_diff_eq!(s.coefficients[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.coefficients[1], 0.0, epsilon = 1e-12);

        for &x in &[0.0, 0.3, 0.7, 1.0] {
            let st = states::floating_slit(states::SlitParam::new(x).unwrap());
            let s = schmidt_decompose(&st).unwrap();
            assert_abs_diff_eq!(s.coefficients[0], (1.0 + x) / 2.0, epsilon = 1e-9);
            assert_abs_diff_eq!(s.coefficients[1], (1.0 - x) / 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn schmidt_reconstruction_unequal_dims() {
        let mut rng = states::seeded_rng(11);
        let psi = states::random_pure(Layout::new(vec![2, 3]).unwrap(), &mut rng);
        let s = schmidt_decompose(&psi).unwrap();
        assert_eq!(s.basis_b.dim(), 3);
        let fid = vector_fidelity(&s.state_vector(), &state_vector(&psi).unwrap());
        assert!(fid >= 1.0 - 1e-9);
    }

    #[test]
    fn schmidt_rejects_mixed_and_tripartite() {
        let w = states::werner(states::WernerParam::new(0.5).unwrap());
        assert!(matches!(schmidt_decompose(&w), Err(Error::NotPure { .. })));
        let ghz = states::pure_from_amplitudes(
            &(0..8)
                .map(|i| c(if i == 0 || i == 7 { 1.0 } else { 0.0 }, 0.0))
                .collect::<Vec<_>>(),
            Layout::qubits(3),
        )
        .unwrap();
        assert!(matches!(
            schmidt_decompose(&ghz),
            Err(Error::WrongSubsystemCount { .. })
        ));
    }
}
