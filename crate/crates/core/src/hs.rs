//! Density matrices and their Hilbert–Schmidt (Pauli) parameterization
//!
//! `4ρ = I⊗I + Σ aᵢ σᵢ⊗I + Σ bᵢ I⊗σᵢ + Σ tₗₘ σₗ⊗σₘ`
//!
//! with `σ_y = [[0, −i], [i, 0]]`, basis order `|00⟩, |01⟩, |10⟩, |11⟩` and
//! qubit A as the left factor.

use num_complex::Complex64;

use crate::linalg::{self, CMat4, Mat3, Vec3, IDENTITY3};
use crate::{Axis, Error, Qubit, Result, HERMITIAN_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `σ₀ = I, σ₁, σ₂, σ₃`.
pub const PAULI: [[[Complex64; 2]; 2]; 4] = [
    [[ONE, ZERO], [ZERO, ONE]],
    [[ZERO, ONE], [ONE, ZERO]],
    [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]],
    [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]],
];

/// `σ_μ ⊗ σ_ν` as a 4×4 matrix.
pub fn pauli_product(mu: usize, nu: usize) -> CMat4 {
    let (p, q) = (&PAULI[mu], &PAULI[nu]);
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = p[i][j] * q[k][l];
                }
            }
        }
    }
    out
}

/// Hermitian, unit-trace 4×4 matrix. Positivity is not part of the
/// invariant; partial-transpose images are represented by this type too.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: CMat4,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace at [`HERMITIAN_TOL`].
    pub fn new(m: CMat4) -> Result<Self> {
        let mut deviation = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let z = m[i][j];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { field: "rho" });
                }
                deviation = deviation.max(libm::sqrt((z - m[j][i].conj()).norm_sqr()));
            }
        }
        if deviation >= HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace: f64 = (0..4).map(|i| m[i][i].re).sum();
        if (trace - 1.0).abs() >= HERMITIAN_TOL {
            return Err(Error::NotUnitTrace { trace });
        }
        Ok(DensityMatrix { m })
    }

    pub fn entries(&self) -> &CMat4 {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.m[i][i].re).sum()
    }

    /// `Tr[ρ (σ_μ ⊗ σ_ν)]`, real and imaginary parts.
    pub fn pauli_expectation(&self, mu: usize, nu: usize) -> Complex64 {
        let p = pauli_product(mu, nu);
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.m[i][j] * p[j][i];
            }
        }
        acc
    }

    /// Partial transpose on one qubit in the computational basis.
    pub fn partial_transpose(&self, qubit: Qubit) -> DensityMatrix {
        let mut out = [[ZERO; 4]; 4];
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let (r, c) = match qubit {
                            Qubit::A => (2 * j + k, 2 * i + l),
                            Qubit::B => (2 * i + l, 2 * j + k),
                        };
                        out[2 * i + k][2 * j + l] = self.m[r][c];
                    }
                }
            }
        }
        DensityMatrix { m: out }
    }
}

/// Pauli coefficients `(a, b, t)` of a two-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HsParams {
    pub a: Vec3,
    pub b: Vec3,
    pub t: Mat3,
}

impl HsParams {
    pub fn new(a: Vec3, b: Vec3, t: Mat3) -> Self {
        HsParams { a, b, t }
    }

    /// Parameters with diagonal correlation matrix.
    pub fn diagonal(a: Vec3, b: Vec3, tdiag: Vec3) -> Self {
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            t[i][i] = tdiag[i];
        }
        HsParams { a, b, t }
    }

    /// Symmetric parameters `a = b` with diagonal `t`.
    pub fn symmetric(a: Vec3, tdiag: Vec3) -> Self {
        Self::diagonal(a, a, tdiag)
    }

    /// A single pair of linear terms on `axis`, diagonal `t`.
    pub fn single_pair(axis: Axis, a: f64, b: f64, tdiag: Vec3) -> Self {
        let mut av = [0.0; 3];
        let mut bv = [0.0; 3];
        av[axis.index()] = a;
        bv[axis.index()] = b;
        Self::diagonal(av, bv, tdiag)
    }

    pub fn tdiag(&self) -> Vec3 {
        [self.t[0][0], self.t[1][1], self.t[2][2]]
    }

    pub fn is_finite(&self) -> bool {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(self.t.iter().flatten())
            .all(|x| x.is_finite())
    }

    pub fn check_finite(&self) -> Result<()> {
        if !self.a.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { field: "a" });
        }
        if !self.b.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { field: "b" });
        }
        if !self.t.iter().flatten().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { field: "t" });
        }
        Ok(())
    }

    /// All off-diagonal `t` entries below `tol` in magnitude.
    pub fn is_t_diagonal(&self, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.t[i][j].abs() < tol))
    }

    pub fn require_diagonal(&self) -> Result<()> {
        if self.is_t_diagonal(HERMITIAN_TOL) {
            Ok(())
        } else {
            Err(Error::UnsupportedForm("correlation matrix t must be diagonal"))
        }
    }

    /// Largest entrywise difference over `a`, `b` and `t`.
    pub fn max_abs_diff(&self, other: &HsParams) -> f64 {
        let mut m = 0.0f64;
        for i in 0..3 {
            m = m.max((self.a[i] - other.a[i]).abs());
            m = m.max((self.b[i] - other.b[i]).abs());
            for j in 0..3 {
                m = m.max((self.t[i][j] - other.t[i][j]).abs());
            }
        }
        m
    }
}

/// Four real eigenvalues in ascending order, stored as `4λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    four_lambda: [f64; 4],
}

impl Spectrum {
    /// Builds from `4λ` values in any order.
    pub fn from_four_lambda(mut values: [f64; 4]) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { four_lambda: values }
    }

    pub fn from_lambda(values: [f64; 4]) -> Self {
        Self::from_four_lambda(values.map(|x| 4.0 * x))
    }

    pub fn four_lambda(&self) -> [f64; 4] {
        self.four_lambda
    }

    pub fn lambda(&self) -> [f64; 4] {
        self.four_lambda.map(|x| 0.25 * x)
    }

    pub fn min_lambda(&self) -> f64 {
        0.25 * self.four_lambda[0]
    }

    pub fn max_lambda(&self) -> f64 {
        0.25 * self.four_lambda[3]
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.four_lambda
            .iter()
            .zip(other.four_lambda.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// `ρ = ¼ [I⊗I + Σ aᵢσᵢ⊗I + Σ bᵢ I⊗σᵢ + Σ tₗₘ σₗ⊗σₘ]`.
pub fn rho_from_hs(params: &HsParams) -> Result<DensityMatrix> {
    params.check_finite()?;
    let mut coeffs = [[0.0; 4]; 4];
    coeffs[0][0] = 1.0;
    for i in 0..3 {
        coeffs[i + 1][0] = params.a[i];
        coeffs[0][i + 1] = params.b[i];
        for j in 0..3 {
            coeffs[i + 1][j + 1] = params.t[i][j];
        }
    }
    Ok(DensityMatrix {
        m: combine_paulis(&coeffs),
    })
}

/// `¼ Σ c_{μν} σ_μ⊗σ_ν` built entrywise (first index acts on qubit A).
pub(crate) fn combine_paulis(coeffs: &[[f64; 4]; 4]) -> CMat4 {
    let mut m = [[ZERO; 4]; 4];
    for (mu, row) in coeffs.iter().enumerate() {
        for (nu, &c) in row.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let p = pauli_product(mu, nu);
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += p[i][j] * (0.25 * c);
                }
            }
        }
    }
    m
}

/// Inverts [`rho_from_hs`] through Pauli trace inner products.
pub fn hs_from_rho(rho: &DensityMatrix) -> HsParams {
    let mut p = HsParams::default();
    for i in 0..3 {
        p.a[i] = rho.pauli_expectation(i + 1, 0).re;
        p.b[i] = rho.pauli_expectation(0, i + 1).re;
        for j in 0..3 {
            p.t[i][j] = rho.pauli_expectation(i + 1, j + 1).re;
        }
    }
    p
}

/// Closed-form spectrum of a state with a single linear pair `(a, b)` on
/// `axis` and diagonal correlations:
///
/// `4λ = 1 + t_k ∓ √((a+b)² + (t_i − t_j)²)`,
/// `4λ = 1 − t_k ∓ √((a−b)² + (t_i + t_j)²)`,
///
/// with `k` the pair axis and `i, j` the other two.
pub fn eigenvalues_closed_form_pair(axis: Axis, a: f64, b: f64, tdiag: Vec3) -> Result<Spectrum> {
    if !(a.is_finite() && b.is_finite() && tdiag.iter().all(|x| x.is_finite())) {
        return Err(Error::NonFinite { field: "pair" });
    }
    let k = axis.index();
    let [i, j] = axis.others();
    let (tk, ti, tj) = (tdiag[k], tdiag[i], tdiag[j]);
    let r_plus = libm::hypot(a + b, ti - tj);
    let r_minus = libm::hypot(a - b, ti + tj);
    Ok(Spectrum::from_four_lambda([
        1.0 + tk - r_plus,
        1.0 + tk + r_plus,
        1.0 - tk - r_minus,
        1.0 - tk + r_minus,
    ]))
}

/// General eigensolver for any matrix of the [`DensityMatrix`] type.
pub fn eigenvalues_hermitian(rho: &DensityMatrix) -> Spectrum {
    let vals = linalg::hermitian_eigenvalues4(rho.entries());
    Spectrum::from_lambda(vals)
}

pub fn is_positive_semidefinite(rho: &DensityMatrix, tol: f64) -> bool {
    eigenvalues_hermitian(rho).min_lambda() >= -tol
}

/// Result of [`tdiag_via_local_rotations`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalRotation {
    /// Parameters with diagonal `t`.
    pub params: HsParams,
    /// Proper rotation applied to qubit A's Bloch vectors.
    pub rotation_a: Mat3,
    /// Proper rotation applied to qubit B's Bloch vectors.
    pub rotation_b: Mat3,
}

/// Diagonalizes `t` by proper rotations `t′ = O_A t O_Bᵀ`, `a′ = O_A a`,
/// `b′ = O_B b`. Inputs whose `t` is already diagonal are returned unchanged.
/// Otherwise `|t′|` is sorted descending and, when `det t < 0`, the last
/// (smallest) entry carries the negative sign.
pub fn tdiag_via_local_rotations(params: &HsParams) -> LocalRotation {
    if params.is_t_diagonal(HERMITIAN_TOL) {
        return LocalRotation {
            params: HsParams::diagonal(params.a, params.b, params.tdiag()),
            rotation_a: IDENTITY3,
            rotation_b: IDENTITY3,
        };
    }
    let (u, s, v) = linalg::svd3_proper(&params.t);
    let rotation_a = linalg::transpose(&u);
    let rotation_b = linalg::transpose(&v);
    LocalRotation {
        params: HsParams::diagonal(
            linalg::matvec3(&rotation_a, &params.a),
            linalg::matvec3(&rotation_b, &params.b),
            s,
        ),
        rotation_a,
        rotation_b,
    }
}

/// Diagonalizes a symmetric `t` with the same proper rotation on both qubits,
/// which keeps `a = b` states symmetric.
pub fn tdiag_via_joint_rotation(params: &HsParams) -> LocalRotation {
    let (vals, o) = linalg::symmetric_eigen3_proper(&params.t);
    let rot = linalg::transpose(&o);
    LocalRotation {
        params: HsParams::diagonal(
            linalg::matvec3(&rot, &params.a),
            linalg::matvec3(&rot, &params.b),
            vals,
        ),
        rotation_a: rot,
        rotation_b: rot,
    }
}
