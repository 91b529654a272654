//! Dense complex linear algebra for multipartite density matrices.
//!
//! Subsystem 0 is always the leftmost tensor factor, so a basis index
//! decomposes into digits with subsystem 0 as the most significant digit.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Hermiticity tolerance for a stored density matrix.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped; anything lower is rejected.
pub const PSD_TOL: f64 = 1e-10;
/// Hermiticity tolerance accepted by [`hermitian_eigensystem`].
pub const EIGEN_INPUT_TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Kronecker product, `entry[(i*dimB + k), (j*dimB + l)] = a[i,j] * b[k,l]`.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    factors
        .into_iter()
        .fold(identity(1), |acc, m| tensor_product(&acc, m))
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Largest entrywise modulus of `m - m^dag`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

pub fn trace(m: &CMatrix) -> C64 {
    m.trace()
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl EigenSystem {
    pub fn reconstruct(&self) -> CMatrix {
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&v| c(v, 0.0)),
        ));
        &self.vectors * diag * self.vectors.adjoint()
    }
}

pub fn hermitian_eigensystem(m: &CMatrix) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let residual = hermiticity_residual(m);
    if residual > EIGEN_INPUT_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(eigensystem_unchecked(&hermitian_part(m)))
}

fn eigensystem_unchecked(m: &CMatrix) -> EigenSystem {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    EigenSystem { values, vectors }
}

/// Eigenvalues only, ascending. Input is assumed Hermitian.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(hermitian_part(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Ordered list of subsystem dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout(Vec<usize>);

impl Layout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptySelection);
        }
        if let Some(&bad) = dims.iter().find(|&&d| d == 0) {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: bad,
            });
        }
        Ok(Layout(dims))
    }

    pub fn qubits(n: usize) -> Self {
        Layout(vec![2; n])
    }

    pub fn single(dim: usize) -> Self {
        Layout(vec![dim.max(1)])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn dim(&self, index: usize) -> Result<usize> {
        self.0.get(index).copied().ok_or(Error::SubsystemOutOfRange {
            index,
            count: self.0.len(),
        })
    }

    pub fn push(&self, dim: usize) -> Layout {
        let mut dims = self.0.clone();
        dims.push(dim);
        Layout(dims)
    }

    /// Digit decomposition of a flat index, most significant digit first.
    fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(self.0.iter()).rev() {
            *slot = index % d;
            index /= d;
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix with a subsystem layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    layout: Layout,
}

impl DensityMatrix {
    /// Validates and stores `mat`. Tiny negative eigenvalues are clamped and
    /// the spectrum renormalized.
    pub fn new(mat: CMatrix, layout: Layout) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        if layout.total() != mat.nrows() {
            return Err(Error::LayoutMismatch {
                dims: layout.dims().to_vec(),
                product: layout.total(),
                dim: mat.nrows(),
            });
        }
        let residual = hermiticity_residual(&mat);
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne {
                residual: (tr - 1.0).abs(),
            });
        }
        let mat = hermitian_part(&mat);
        let eig = eigensystem_unchecked(&mat);
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        if min < 0.0 {
            let clamped: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
            let sum: f64 = clamped.iter().sum();
            let repaired = EigenSystem {
                values: clamped.iter().map(|v| v / sum).collect(),
                vectors: eig.vectors,
            };
            return Ok(DensityMatrix {
                mat: hermitian_part(&repaired.reconstruct()),
                layout,
            });
        }
        Ok(DensityMatrix { mat, layout })
    }

    pub fn from_dims(mat: CMatrix, dims: &[usize]) -> Result<Self> {
        DensityMatrix::new(mat, Layout::new(dims.to_vec())?)
    }

    pub fn maximally_mixed(layout: Layout) -> Self {
        let d = layout.total();
        DensityMatrix {
            mat: identity(d) * c(1.0 / d as f64, 0.0),
            layout,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Ascending spectrum with negatives clamped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
            .into_iter()
            .map(|v| v.max(0.0))
            .collect()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.layout.dims().to_vec();
        dims.extend_from_slice(other.layout.dims());
        DensityMatrix {
            mat: tensor_product(&self.mat, &other.mat),
            layout: Layout(dims),
        }
    }

    /// `U rho U^dag` for a unitary on the full space.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<DensityMatrix> {
        if unitary.nrows() != self.dim() || !unitary.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: unitary.nrows(),
            });
        }
        DensityMatrix::new(unitary * &self.mat * unitary.adjoint(), self.layout.clone())
    }

    /// Reinterprets the same matrix under another factorization.
    pub fn with_layout(&self, layout: Layout) -> Result<DensityMatrix> {
        if layout.total() != self.dim() {
            return Err(Error::LayoutMismatch {
                dims: layout.dims().to_vec(),
                product: layout.total(),
                dim: self.dim(),
            });
        }
        Ok(DensityMatrix {
            mat: self.mat.clone(),
            layout,
        })
    }

    pub fn require_subsystems(&self, expected: usize) -> Result<()> {
        if self.layout.len() != expected {
            return Err(Error::WrongSubsystemCount {
                expected,
                found: self.layout.len(),
            });
        }
        Ok(())
    }
}

/// Reduced state on the subsystems listed in `keep` (layout order is preserved).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    for w in kept.windows(2) {
        if w[0] == w[1] {
            return Err(Error::SubsystemCollision(w[0]));
        }
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= layout.len()) {
        return Err(Error::SubsystemOutOfRange {
            index: bad,
            count: layout.len(),
        });
    }
    let is_kept: Vec<bool> = (0..layout.len()).map(|i| kept.contains(&i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| layout.dims()[k]).collect();
    let kept_total: usize = kept_dims.iter().product();
    let traced_total = layout.total() / kept_total;

    // full index for each (traced, kept) pair
    let mut index_of = vec![0usize; kept_total * traced_total];
    let mut digits = vec![0usize; layout.len()];
    for full in 0..layout.total() {
        layout.digits(full, &mut digits);
        let (mut ki, mut ti) = (0usize, 0usize);
        for (s, &d) in digits.iter().enumerate() {
            if is_kept[s] {
                ki = ki * layout.dims()[s] + d;
            } else {
                ti = ti * layout.dims()[s] + d;
            }
        }
        index_of[ti * kept_total + ki] = full;
    }

    let m = rho.matrix();
    let mut reduced = CMatrix::zeros(kept_total, kept_total);
    for t in 0..traced_total {
        let row = &index_of[t * kept_total..(t + 1) * kept_total];
        for (a, &ia) in row.iter().enumerate() {
            for (b, &ib) in row.iter().enumerate() {
                reduced[(a, b)] += m[(ia, ib)];
            }
        }
    }
    Ok(DensityMatrix {
        mat: hermitian_part(&reduced),
        layout: Layout(kept_dims),
    })
}

/// Embeds an operator on subsystem `index` into the full space.
pub fn embed(op: &CMatrix, index: usize, layout: &Layout) -> Result<CMatrix> {
    let d = layout.dim(index)?;
    if op.nrows() != d || op.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: op.nrows(),
        });
    }
    let left: usize = layout.dims()[..index].iter().product();
    let right: usize = layout.dims()[index + 1..].iter().product();
    Ok(tensor_product(
        &tensor_product(&identity(left), op),
        &identity(right),
    ))
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)])
}

pub fn diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| c(v, 0.0)),
    ))
}
