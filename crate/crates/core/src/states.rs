//! Named states and seeded random states.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{
    c, embed, hermitian_eigenvalues, identity, pauli_x, pauli_y, pauli_z, tensor_product, CMatrix,
    CVector, DensityMatrix, Layout, C64, PSD_TOL,
};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `case` of generator `seed`.
pub fn case_rng(seed: u64, case: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        })
    }
}

/// Singlet fidelity of a Werner state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(f: f64) -> Result<Self> {
        unit_interval("f", f).map(WernerParam)
    }

    pub fn f(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam(pub f64);

/// Overlap between the two slit states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitParam(f64);

impl SlitParam {
    pub fn new(x: f64) -> Result<Self> {
        unit_interval("x", x).map(SlitParam)
    }

    pub fn x(self) -> f64 {
        self.0
    }
}

fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

fn trusted(mat: CMatrix, layout: Layout) -> DensityMatrix {
    DensityMatrix::new(mat, layout).expect("constructor produced an invalid density matrix")
}

/// `(|01> - |10>)/sqrt(2)`.
pub fn singlet() -> DensityMatrix {
    let h = FRAC_1_SQRT_2;
    let v = CVector::from_vec(vec![c(0., 0.), c(h, 0.), c(-h, 0.), c(0., 0.)]);
    trusted(projector(&v), Layout::qubits(2))
}

/// `(1-f)/4 I + f |s><s|`.
pub fn werner(p: WernerParam) -> DensityMatrix {
    let f = p.f();
    let mat = identity(4) * c((1.0 - f) / 4.0, 0.0) + singlet().matrix() * c(f, 0.0);
    trusted(mat, Layout::qubits(2))
}

/// `I/4 + (a/4)(XX - YY) + ((2a-1)/4) ZZ`; rejected if not positive semidefinite.
pub fn alpha_state(p: AlphaParam) -> Result<DensityMatrix> {
    let a = p.0;
    let xx = tensor_product(&pauli_x(), &pauli_x());
    let yy = tensor_product(&pauli_y(), &pauli_y());
    let zz = tensor_product(&pauli_z(), &pauli_z());
    let mat = identity(4) * c(0.25, 0.0)
        + (xx - yy) * c(a / 4.0, 0.0)
        + zz * c((2.0 * a - 1.0) / 4.0, 0.0);
    let min = hermitian_eigenvalues(&mat)[0];
    if min < -PSD_TOL {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
        });
    }
    DensityMatrix::new(mat, Layout::qubits(2))
}

/// `(|v>|s-> + |-v>|s+>)/sqrt(2)` with slit states `cos g |0> +- sin g |1>`, `cos 2g = x`.
pub fn floating_slit(p: SlitParam) -> DensityMatrix {
    let gamma = p.x().acos() / 2.0;
    let (s, cs) = gamma.sin_cos();
    let slit_minus = [cs, s]; // paired with |v>
    let slit_plus = [cs, -s]; // paired with |-v>
    let h = FRAC_1_SQRT_2;
    let amps = vec![
        c(h * slit_minus[0], 0.0),
        c(h * slit_minus[1], 0.0),
        c(h * slit_plus[0], 0.0),
        c(h * slit_plus[1], 0.0),
    ];
    trusted(projector(&CVector::from_vec(amps)), Layout::qubits(2))
}

pub fn pure_from_amplitudes(amps: &[C64], layout: Layout) -> Result<DensityMatrix> {
    if amps.len() != layout.total() {
        return Err(Error::DimensionMismatch {
            expected: layout.total(),
            found: amps.len(),
        });
    }
    let v = CVector::from_column_slice(amps);
    let norm = v.norm();
    if norm <= f64::EPSILON {
        return Err(Error::ZeroVector);
    }
    DensityMatrix::new(projector(&(v / c(norm, 0.0))), layout)
}

fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `G G^dag / Tr(G G^dag)` for a `total x rank` Ginibre matrix.
pub fn random_state(layout: Layout, rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim = layout.total();
    if rank == 0 || rank > dim {
        return Err(Error::ParameterOutOfRange {
            name: "rank",
            value: rank as f64,
            min: 1.0,
            max: dim as f64,
        });
    }
    let g = ginibre(dim, rank, rng);
    let gg = &g * g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg / c(tr, 0.0), layout)
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_state(Layout::single(dim), rank, &mut seeded_rng(seed))
}

pub fn random_pure(layout: Layout, rng: &mut impl Rng) -> DensityMatrix {
    random_state(layout, 1, rng).expect("rank 1 is always valid")
}

/// Haar-random unitary via phase-corrected QR of a Ginibre matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let qr = ginibre(dim, dim, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = u.column_mut(k);
        col *= phase;
    }
    u
}

/// Random unitary acting on `subsystem`, embedded in the full space.
pub fn random_local_unitary(layout: &Layout, subsystem: usize, rng: &mut impl Rng) -> Result<CMatrix> {
    let d = layout.dim(subsystem)?;
    embed(&random_unitary(d, rng), subsystem, layout)
}

/// `sum_k p_k |k><k| x rho_k`, classical on subsystem 0.
pub fn classical_quantum(weights: &[f64], conditionals: &[DensityMatrix]) -> Result<DensityMatrix> {
    let d = weights.len();
    if conditionals.len() != d || d == 0 {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: conditionals.len(),
        });
    }
    let db = conditionals[0].dim();
    let mut mat = CMatrix::zeros(d * db, d * db);
    for (k, (w, rho)) in weights.iter().zip(conditionals).enumerate() {
        let mut pk = CMatrix::zeros(d, d);
        pk[(k, k)] = c(*w, 0.0);
        mat += tensor_product(&pk, rho.matrix());
    }
    DensityMatrix::new(mat, Layout::new(vec![d, db])?)
}
