//! The full pipeline for one state: positivity, partial transpose, the
//! normal form and the secondary screens.

use crate::criteria::{self, Criterion, Separability, Verdict};
use crate::hs::{self, HsParams, Spectrum};
use crate::normal_form::{self, SolveReport, Solver};
use crate::{Qubit, Result, DEFAULT_BETA_LIMIT, DEFAULT_PSD_TOL, DEFAULT_VERDICT_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Smallest admissible eigenvalue of `ρ` is `−psd`.
    pub psd: f64,
    /// Verdict margin, see [`Verdict::from_witness`].
    pub verdict: f64,
    /// Boost velocities must stay below `1 − beta_limit`.
    pub beta_limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            psd: DEFAULT_PSD_TOL,
            verdict: DEFAULT_VERDICT_TOL,
            beta_limit: DEFAULT_BETA_LIMIT,
        }
    }
}

/// Screens that decide some states without the partial transpose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaNotes {
    /// `Σ|tᵢ| ≤ 1` of the diagonal-`t` form; `false` proves entanglement.
    pub necessity_passed: bool,
    /// The same sum decides when `a = b = 0`.
    pub mds: Option<bool>,
    /// Applies when `a = 0` or `b = 0`.
    pub half_eigenvalue: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub params: HsParams,
    pub spectrum: Spectrum,
    pub pt_spectrum: Spectrum,
    pub psd: bool,
    /// The remaining fields are `None` when `psd` is false.
    pub ppt: Option<Verdict>,
    pub solve: Option<SolveReport>,
    pub lorentz: Option<Verdict>,
    pub notes: Option<CriteriaNotes>,
}

impl Analysis {
    /// Final answer: the partial-transpose verdict, which is exact for two
    /// qubits.
    pub fn verdict(&self) -> Option<Separability> {
        self.ppt.map(|v| v.kind)
    }
}

/// Runs every applicable test. A non-positive `ρ` is reported with
/// `psd = false` rather than as an error.
pub fn analyze(params: &HsParams, tol: &Tolerances) -> Result<Analysis> {
    let rho = hs::rho_from_hs(params)?;
    let spectrum = hs::eigenvalues_hermitian(&rho);
    let pt_spectrum = hs::eigenvalues_hermitian(&rho.partial_transpose(Qubit::A));
    let psd = spectrum.min_lambda() >= -tol.psd;
    let mut out = Analysis {
        params: *params,
        spectrum,
        pt_spectrum,
        psd,
        ppt: None,
        solve: None,
        lorentz: None,
        notes: None,
    };
    if !psd {
        return Ok(out);
    }

    // Positivity is settled above, so the verdict follows from the spectrum.
    let ppt = Verdict::from_witness(
        pt_spectrum.four_lambda()[0],
        tol.verdict,
        Criterion::PeresHorodecki,
    );
    let solve = Solver::new(tol.beta_limit).solve(params)?;
    let lorentz = solve
        .sigma
        .as_ref()
        .map(|s| normal_form::separability_verdict(s, tol.verdict));

    let tdiag = solve.reduced.tdiag();
    let necessity_passed = criteria::mds_criterion(tdiag);
    let zero = |v: &[f64; 3]| v.iter().all(|x| *x == 0.0);
    let mds = (zero(&params.a) && zero(&params.b)).then_some(necessity_passed);
    let half_eigenvalue = if zero(&params.a) || zero(&params.b) {
        Some(criteria::half_eigenvalue_criterion(&rho, params, tol.verdict)?)
    } else {
        None
    };

    out.ppt = Some(ppt);
    out.solve = Some(solve);
    out.lorentz = lorentz;
    out.notes = Some(CriteriaNotes {
        necessity_passed,
        mds,
        half_eigenvalue,
    });
    Ok(out)
}
