//! The real 4×4 correlation matrix `R_{μν} = Tr[ρ σ_μ⊗σ_ν]`.
//!
//! Layout:
//!
//! ```text
//!     ⎡ 1   a₁  a₂  a₃ ⎤
//! R = ⎢ b₁  t₁₁ t₁₂ t₁₃⎥
//!     ⎢ b₂  t₂₁ t₂₂ t₂₃⎥
//!     ⎣ b₃  t₃₁ t₃₂ t₃₃⎦
//! ```
//!
//! so `R₀ᵢ = aᵢ` and `Rᵢ₀ = bᵢ`.

use num_complex::Complex64;

use crate::hs::{self, DensityMatrix, HsParams};
use crate::linalg::Mat4;
use crate::{Error, Result};

/// Normalized R-matrix (`R₀₀ = 1`). The original `R₀₀` is kept as `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMatrix {
    m: Mat4,
    scale: f64,
}

impl RMatrix {
    /// Rescales so that the `(0,0)` entry equals 1.
    pub fn new(m: Mat4) -> Result<Self> {
        if !m.iter().flatten().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { field: "R" });
        }
        let scale = m[0][0];
        if scale <= 0.0 {
            return Err(Error::NonPositiveScale { value: scale });
        }
        let mut n = m;
        if scale != 1.0 {
            for x in n.iter_mut().flatten() {
                *x /= scale;
            }
            n[0][0] = 1.0;
        }
        Ok(RMatrix { m: n, scale })
    }

    pub fn entries(&self) -> &Mat4 {
        &self.m
    }

    /// `R₀₀` before normalization.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.m[mu][nu]
    }

    pub fn to_hs(&self) -> HsParams {
        let mut p = HsParams::default();
        for i in 0..3 {
            p.a[i] = self.m[0][i + 1];
            p.b[i] = self.m[i + 1][0];
            for j in 0..3 {
                p.t[i][j] = self.m[i + 1][j + 1];
            }
        }
        p
    }
}

pub fn r_from_hs(params: &HsParams) -> RMatrix {
    let mut m = [[0.0; 4]; 4];
    m[0][0] = 1.0;
    for i in 0..3 {
        m[0][i + 1] = params.a[i];
        m[i + 1][0] = params.b[i];
        for j in 0..3 {
            m[i + 1][j + 1] = params.t[i][j];
        }
    }
    RMatrix { m, scale: 1.0 }
}

/// Pauli traces of `ρ` in the module's layout, returned together with the
/// largest imaginary residue over all sixteen traces.
///
/// `R₀ᵢ = Tr[ρ σᵢ⊗I]`, `Rᵢ₀ = Tr[ρ I⊗σᵢ]`, `Rᵢⱼ = Tr[ρ σᵢ⊗σⱼ]`.
pub fn r_from_rho_with_residue(rho: &DensityMatrix) -> (RMatrix, f64) {
    let mut m = [[0.0; 4]; 4];
    let mut residue = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            // The linear terms of qubit A sit in row 0.
            let (pa, pb) = match (mu, nu) {
                (0, j) if j > 0 => (j, 0),
                (i, 0) if i > 0 => (0, i),
                _ => (mu, nu),
            };
            let z: Complex64 = rho.pauli_expectation(pa, pb);
            m[mu][nu] = z.re;
            residue = residue.max(z.im.abs());
        }
    }
    // Unit trace makes R₀₀ = 1 up to rounding.
    m[0][0] = 1.0;
    (RMatrix { m, scale: 1.0 }, residue)
}

pub fn r_from_rho(rho: &DensityMatrix) -> RMatrix {
    r_from_rho_with_residue(rho).0
}

/// `ρ = ¼ Σ R_{μν} σ_μ⊗σ_ν`.
pub fn rho_from_r(r: &RMatrix) -> DensityMatrix {
    // The normalized R always yields a Hermitian unit-trace matrix.
    hs::rho_from_hs(&r.to_hs()).expect("RMatrix entries are finite")
}

pub fn is_symmetric_r(r: &RMatrix, tol: f64) -> bool {
    let m = r.entries();
    (0..4).all(|i| (0..i).all(|j| (m[i][j] - m[j][i]).abs() < tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq_319() -> Mat4 {
        [
            [1.0, 0.1, 0.15, 0.0],
            [0.1, 0.3, 0.0, 0.0],
            [0.15, 0.0, -0.2, 0.0],
            [0.0, 0.0, 0.0, 0.4],
        ]
    }

    #[test]
    fn from_hs_layout() {
        let r = r_from_hs(&HsParams::default());
        let mut want = [[0.0; 4]; 4];
        want[0][0] = 1.0;
        assert_eq!(r.entries(), &want);

        let p = HsParams::symmetric([0.1, 0.15, 0.0], [0.3, -0.2, 0.4]);
        assert_eq!(r_from_hs(&p).entries(), &eq_319());

        let p = HsParams::symmetric([0.1, 0.15, 0.2], [0.3, -0.2, 0.2]);
        let want = [
            [1.0, 0.1, 0.15, 0.2],
            [0.1, 0.3, 0.0, 0.0],
            [0.15, 0.0, -0.2, 0.0],
            [0.2, 0.0, 0.0, 0.2],
        ];
        assert_eq!(r_from_hs(&p).entries(), &want);
    }

    #[test]
    fn from_rho_identity_and_example() {
        let rho = hs::rho_from_hs(&HsParams::default()).unwrap();
        let r = r_from_rho(&rho);
        assert_eq!(r.get(0, 0), 1.0);
        assert!(r.entries().iter().flatten().skip(1).all(|x| x.abs() < 1e-15));

        let p = HsParams::single_pair(crate::Axis::Y, 0.64, 0.64, [0.3; 3]);
        let (r, residue) = r_from_rho_with_residue(&hs::rho_from_hs(&p).unwrap());
        assert!(residue < 1e-12);
        assert!((r.get(0, 2) - 0.64).abs() < 1e-12);
        assert!((r.get(2, 0) - 0.64).abs() < 1e-12);
        for i in 1..4 {
            assert!((r.get(i, i) - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn from_rho_agrees_with_from_hs_for_asymmetric_state() {
        let t = [[0.1, 0.05, 0.0], [-0.02, 0.2, 0.03], [0.0, 0.01, -0.1]];
        let p = HsParams::new([0.3, 0.0, -0.1], [0.0, 0.2, 0.05], t);
        let r = r_from_rho(&hs::rho_from_hs(&p).unwrap());
        assert!(crate::linalg::max_abs_diff(r.entries(), r_from_hs(&p).entries()) < 1e-15);
    }

    #[test]
    fn eq_319_is_a_state() {
        let r = RMatrix::new(eq_319()).unwrap();
        let rho = rho_from_r(&r);
        assert!(hs::is_positive_semidefinite(&rho, 0.0));
    }

    #[test]
    fn rescales_unnormalized_input() {
        let mut m = eq_319();
        for x in m.iter_mut().flatten() {
            *x *= 2.0;
        }
        let r = RMatrix::new(m).unwrap();
        assert_eq!(r.scale(), 2.0);
        assert_eq!(r.entries(), &eq_319());
        assert!(matches!(
            RMatrix::new([[0.0; 4]; 4]),
            Err(Error::NonPositiveScale { .. })
        ));
    }

    #[test]
    fn symmetry_gate() {
        assert!(is_symmetric_r(&RMatrix::new(eq_319()).unwrap(), 1e-12));
        let p = HsParams::diagonal([0.2, 0.0, 0.0], [0.0; 3], [0.0; 3]);
        assert!(!is_symmetric_r(&r_from_hs(&p), 1e-12));
        let p = HsParams::diagonal([0.0; 3], [0.0; 3], [0.3, -0.1, 0.5]);
        assert!(is_symmetric_r(&r_from_hs(&p), 1e-12));
    }
}
