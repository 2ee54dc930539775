//! Partial transpose and the partial-transpose family of separability tests.

use crate::hs::{self, DensityMatrix, HsParams};
use crate::{Error, Qubit, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Separability {
    Separable,
    Entangled,
}

/// Which test produced a [`Verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    PeresHorodecki,
    HalfEigenvalue,
    LorentzNormalForm,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::PeresHorodecki => "peres-horodecki",
            Criterion::HalfEigenvalue => "half-eigenvalue",
            Criterion::LorentzNormalForm => "lorentz-normal-form",
        }
    }
}

/// Outcome of a separability test.
///
/// `witness` is the signed margin of the deciding inequality, oriented so
/// that negative means entangled. `kind` is `Entangled` iff
/// `witness < −tol`; `boundary` is set when `|witness| ≤ tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub kind: Separability,
    pub witness: f64,
    pub criterion: Criterion,
    pub boundary: bool,
}

impl Verdict {
    pub fn from_witness(witness: f64, tol: f64, criterion: Criterion) -> Self {
        let kind = if witness < -tol {
            Separability::Entangled
        } else {
            Separability::Separable
        };
        Verdict {
            kind,
            witness,
            criterion,
            boundary: witness.abs() <= tol,
        }
    }

    pub fn is_separable(&self) -> bool {
        self.kind == Separability::Separable
    }
}

/// Partial transpose in the Pauli picture: `σ_y → −σ_y` on one qubit.
pub fn partial_transpose(params: &HsParams, qubit: Qubit) -> HsParams {
    let mut p = *params;
    match qubit {
        Qubit::A => {
            p.a[1] = -p.a[1];
            for x in p.t[1].iter_mut() {
                *x = -*x;
            }
        }
        Qubit::B => {
            p.b[1] = -p.b[1];
            for row in p.t.iter_mut() {
                row[1] = -row[1];
            }
        }
    }
    p
}

/// Partial transpose followed by a 180° rotation about `y` on the same qubit.
///
/// For qubit A this maps `a → −a`, `t → −t` and leaves `b` alone.
pub fn ptu(params: &HsParams, qubit: Qubit) -> Result<HsParams> {
    params.require_diagonal()?;
    let mut p = *params;
    match qubit {
        Qubit::A => p.a = p.a.map(|x| -x),
        Qubit::B => p.b = p.b.map(|x| -x),
    }
    for x in p.t.iter_mut().flatten() {
        *x = -*x;
    }
    Ok(p)
}

/// Minimum eigenvalue of the partial transpose decides. The witness is the
/// minimum `4λ` of `ρ^{T_A}`.
pub fn peres_horodecki(rho: &DensityMatrix, tol: f64) -> Result<Verdict> {
    let spectrum = hs::eigenvalues_hermitian(rho);
    if spectrum.min_lambda() < -tol {
        return Err(Error::NotPositive {
            min_eigenvalue: spectrum.min_lambda(),
        });
    }
    let pt = hs::eigenvalues_hermitian(&rho.partial_transpose(Qubit::A));
    Ok(Verdict::from_witness(
        pt.four_lambda()[0],
        tol,
        Criterion::PeresHorodecki,
    ))
}

/// `|t₁| + |t₂| + |t₃| ≤ 1`: decides states with `a = b = 0`.
pub fn mds_criterion(tdiag: [f64; 3]) -> bool {
    tdiag.iter().map(|x| x.abs()).sum::<f64>() <= 1.0 + 1e-12
}

/// Necessary screen for separability of any diagonal-`t` state. `false`
/// proves entanglement; `true` proves nothing.
pub fn necessity_check(params: &HsParams) -> Result<bool> {
    params.require_diagonal()?;
    Ok(mds_criterion(params.tdiag()))
}

/// For states with `a = 0` or `b = 0`: separable iff every eigenvalue of `ρ`
/// is at most ½. The witness is `2 − max 4λ`, the smallest `4λ` of the PTU
/// image.
pub fn half_eigenvalue_criterion(
    rho: &DensityMatrix,
    params: &HsParams,
    tol: f64,
) -> Result<Verdict> {
    let a_zero = params.a.iter().all(|x| *x == 0.0);
    let b_zero = params.b.iter().all(|x| *x == 0.0);
    if !a_zero && !b_zero {
        return Err(Error::Precondition(
            "half-eigenvalue criterion needs a = 0 or b = 0",
        ));
    }
    let spectrum = hs::eigenvalues_hermitian(rho);
    let witness = 2.0 - spectrum.four_lambda()[3];
    Ok(Verdict::from_witness(witness, tol, Criterion::HalfEigenvalue))
}
