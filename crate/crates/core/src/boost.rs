//! Lorentz boosts acting on the R-matrix.

use crate::linalg::{self, Mat4, Vec3, IDENTITY4, MINKOWSKI};
use crate::rmatrix::RMatrix;
use crate::{Axis, Error, Result, DEFAULT_BETA_LIMIT};

/// Boost along a single spatial axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisBoost {
    beta: f64,
    gamma: f64,
    axis: Axis,
}

impl AxisBoost {
    pub fn new(beta: f64, axis: Axis) -> Result<Self> {
        Self::with_limit(beta, axis, DEFAULT_BETA_LIMIT)
    }

    /// Rejects `|β| ≥ 1 − limit`.
    pub fn with_limit(beta: f64, axis: Axis, limit: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite { field: "beta" });
        }
        if beta.abs() >= 1.0 - limit {
            return Err(Error::BoostLimit { beta });
        }
        // (1 − β)(1 + β) keeps precision near |β| = 1.
        let gamma = 1.0 / libm::sqrt((1.0 - beta) * (1.0 + beta));
        Ok(AxisBoost { beta, gamma, axis })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn matrix(&self) -> Mat4 {
        let k = self.axis.index() + 1;
        let mut l = IDENTITY4;
        l[0][0] = self.gamma;
        l[k][k] = self.gamma;
        l[0][k] = -self.gamma * self.beta;
        l[k][0] = -self.gamma * self.beta;
        l
    }
}

/// Boost with arbitrary velocity `β = (β₁, β₂, β₃)`.
///
/// Spatial block is `I + X ββᵀ` with `X = (γ − 1)/β²`, evaluated as
/// `γ²/(γ + 1)` so that `β → 0` gives `X → ½` without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralBoost {
    beta: Vec3,
    gamma: f64,
    x: f64,
}

impl GeneralBoost {
    pub fn new(beta: Vec3) -> Result<Self> {
        Self::with_limit(beta, DEFAULT_BETA_LIMIT)
    }

    /// Rejects `β² ≥ 1 − limit`.
    pub fn with_limit(beta: Vec3, limit: f64) -> Result<Self> {
        if !beta.iter().all(|b| b.is_finite()) {
            return Err(Error::NonFinite { field: "beta" });
        }
        let beta2 = linalg::dot3(&beta, &beta);
        if beta2 >= 1.0 - limit {
            return Err(Error::BoostLimit {
                beta: libm::sqrt(beta2),
            });
        }
        let gamma = 1.0 / libm::sqrt(1.0 - beta2);
        let x = gamma * gamma / (gamma + 1.0);
        Ok(GeneralBoost { beta, gamma, x })
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    pub fn beta_squared(&self) -> f64 {
        linalg::dot3(&self.beta, &self.beta)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(γ − 1)/β²`.
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn matrix(&self) -> Mat4 {
        let (g, x, b) = (self.gamma, self.x, self.beta);
        let mut l = [[0.0; 4]; 4];
        l[0][0] = g;
        for i in 0..3 {
            l[0][i + 1] = -g * b[i];
            l[i + 1][0] = -g * b[i];
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                l[i + 1][j + 1] = delta + b[i] * b[j] * x;
            }
        }
        l
    }
}

/// Matrix of a single-axis boost.
pub fn boost_x(beta: f64, axis: Axis) -> Result<Mat4> {
    AxisBoost::new(beta, axis).map(|b| b.matrix())
}

/// Matrix of a general boost.
pub fn boost_general(beta: Vec3) -> Result<Mat4> {
    GeneralBoost::new(beta).map(|b| b.matrix())
}

/// `‖LᵀηL − η‖_max`.
pub fn metric_defect(l: &Mat4) -> f64 {
    let lt = linalg::transpose(l);
    let g = linalg::matmul(&lt, &linalg::matmul(&MINKOWSKI, l));
    linalg::max_abs_diff(&g, &MINKOWSKI)
}

/// R-matrix after a two-sided transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transformed {
    /// Normalized result.
    pub r: RMatrix,
    /// `(0,0)` entry before normalization.
    pub raw_s0: f64,
    /// Unnormalized `left · R · rightᵀ`.
    pub raw: Mat4,
}

/// `left · R · rightᵀ`, renormalized to unit `(0,0)` entry. Pass plain boost
/// matrices: `right` is transposed here.
pub fn apply_two_sided(r: &RMatrix, left: &Mat4, right: &Mat4) -> Result<Transformed> {
    let raw = linalg::matmul(
        &linalg::matmul(left, r.entries()),
        &linalg::transpose(right),
    );
    let raw_s0 = raw[0][0];
    if !(raw_s0 > 0.0) {
        return Err(Error::DegenerateTransformation { s0: raw_s0 });
    }
    let r = RMatrix::new(raw)?;
    Ok(Transformed { r, raw_s0, raw })
}
