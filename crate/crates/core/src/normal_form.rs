//! Boosts that eliminate the linear terms of `R`, the diagonal normal form
//! `Σ = diag(s₀, s₁, s₂, s₃)` and the classification of states that have no
//! such form.
//!
//! Supported shapes (after rotating `t` to diagonal form):
//!
//! * no linear terms: `Σ` is read off directly;
//! * one pair `(aₖ, bₖ)` on a single axis, any `a ≠ b`;
//! * symmetric states `a = b` with two or three nonzero components.
//!
//! Anything else is reported as [`ClassKind::OutOfScope`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::boost::{AxisBoost, GeneralBoost};
use crate::criteria::{Criterion, Verdict};
use crate::hs::{self, HsParams};
use crate::linalg::{self, Mat3, Mat4, Vec3, IDENTITY3, IDENTITY4};
use crate::rmatrix::{r_from_hs, RMatrix};
use crate::roots;
use crate::{Axis, Error, Result, DEFAULT_BETA_LIMIT, HERMITIAN_TOL};

/// Largest off-diagonal `Q₀ᵢ`, `Qᵢ₀` accepted after boosting.
pub const ELIMINATION_TOL: f64 = 1e-9;
/// Tolerance of the structural match against the non-generic cases.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Linear terms at or below this magnitude are treated as absent.
const ZERO_TOL: f64 = 1e-13;
/// Diagonal correlations closer than this are treated as degenerate.
const EQUAL_T_TOL: f64 = 1e-12;

/// Diagonal normal form with `t′ᵢ = sᵢ/s₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaForm {
    pub s0: f64,
    pub s: Vec3,
    pub tprime: Vec3,
}

impl SigmaForm {
    pub fn new(s0: f64, s: Vec3) -> Result<Self> {
        if !(s0 > 0.0) {
            return Err(Error::DegenerateTransformation { s0 });
        }
        Ok(SigmaForm {
            s0,
            s,
            tprime: s.map(|x| x / s0),
        })
    }

    /// `|t′₁| + |t′₂| + |t′₃|`; the state is separable iff this is at most 1.
    pub fn sum_abs_tprime(&self) -> f64 {
        self.tprime.iter().map(|x| x.abs()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Generic,
    NonGenericA,
    NonGenericB,
    NonGenericC,
    NonGenericD,
    NoPhysicalBoost,
    /// Linear terms on several axes with `a ≠ b`; no solver applies.
    OutOfScope,
}

impl ClassKind {
    pub fn label(self) -> &'static str {
        match self {
            ClassKind::Generic => "Generic",
            ClassKind::NonGenericA => "NonGenericA",
            ClassKind::NonGenericB => "NonGenericB",
            ClassKind::NonGenericC => "NonGenericC",
            ClassKind::NonGenericD => "NonGenericD",
            ClassKind::NoPhysicalBoost => "NoPhysicalBoost",
            ClassKind::OutOfScope => "OutOfScope",
        }
    }

    pub fn is_non_generic_case(self) -> bool {
        matches!(
            self,
            ClassKind::NonGenericA
                | ClassKind::NonGenericB
                | ClassKind::NonGenericC
                | ClassKind::NonGenericD
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub kind: ClassKind,
    pub detail: String,
}

impl Classification {
    fn new(kind: ClassKind, detail: impl Into<String>) -> Self {
        Classification {
            kind,
            detail: detail.into(),
        }
    }
}

/// Boosts applied to `R`: `Q = L_left · R · L_rightᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoostPlan {
    Identity,
    /// Axis boosts `β_A` on the left (qubit A) and `β_B` on the right.
    Pair { axis: Axis, beta_a: f64, beta_b: f64 },
    /// The same general boost on both sides.
    General(Vec3),
}

impl BoostPlan {
    /// Velocity components, `(β_A, β_B)` packed on the pair axis for
    /// [`BoostPlan::Pair`].
    pub fn betas(&self) -> Vec<f64> {
        match *self {
            BoostPlan::Identity => Vec::new(),
            BoostPlan::Pair { beta_a, beta_b, .. } => alloc::vec![beta_a, beta_b],
            BoostPlan::General(b) => b.to_vec(),
        }
    }
}

/// Result of [`Solver::eliminate_and_diagonalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Elimination {
    /// `L_left · R · L_rightᵀ` before the spatial rotation.
    pub q: Mat4,
    pub sigma: SigmaForm,
    pub offdiag_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Input rotated to diagonal `t`.
    pub reduced: HsParams,
    pub plan: Option<BoostPlan>,
    /// Residual of the boost equation at the chosen root, relative to the
    /// size of its terms.
    pub polynomial_residual: f64,
    pub offdiag_residual: f64,
    pub q: Option<Mat4>,
    pub sigma: Option<SigmaForm>,
    pub classification: Classification,
}

impl SolveReport {
    fn without_sigma(reduced: HsParams, classification: Classification) -> Self {
        SolveReport {
            reduced,
            plan: None,
            polynomial_residual: 0.0,
            offdiag_residual: 0.0,
            q: None,
            sigma: None,
            classification,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.classification.kind == ClassKind::Generic
    }
}

/// Boost solver with a configurable light-speed margin: velocities must
/// satisfy `|β| < 1 − beta_limit` (`β² < 1 − beta_limit` for general boosts).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solver {
    pub beta_limit: f64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            beta_limit: DEFAULT_BETA_LIMIT,
        }
    }
}

/// Quadratic `c β² + m β + c` for `β_A` of a single pair.
fn pair_quadratic(a1: f64, b1: f64, t1: f64) -> [f64; 3] {
    let c = b1 - a1 * t1;
    let m = a1 * a1 - b1 * b1 + t1 * t1 - 1.0;
    [c, m, c]
}

/// Largest of the two elimination conditions `Q₀₁ = 0`, `Q₁₀ = 0` for a pair.
pub fn pair_residual(a1: f64, b1: f64, t1: f64, beta_a: f64, beta_b: f64) -> f64 {
    let q01 = a1 - beta_b - beta_a * t1 + beta_a * beta_b * b1;
    let q10 = b1 - beta_a - beta_b * t1 + beta_a * beta_b * a1;
    q01.abs().max(q10.abs())
}

/// Monic cubic for `β₁` when `a = b = (a₁, a₂, 0)`, highest power first.
pub fn cubic_coefficients(a1: f64, a2: f64, tdiag: Vec3) -> [f64; 4] {
    let t = tdiag[1] - tdiag[0];
    let big_t = 1.0 + tdiag[0];
    [
        1.0,
        ((a1 * a1 + a2 * a2) / t - big_t) / a1,
        1.0 - big_t / t,
        a1 / t,
    ]
}

/// Monic quartic for `β₁` when `a = b` has three nonzero components.
pub fn quartic_coefficients(a: Vec3, tdiag: Vec3) -> [f64; 5] {
    let [a1, a2, a3] = a;
    let t = tdiag[1] - tdiag[0];
    let tp = tdiag[2] - tdiag[0];
    let big_t = 1.0 + tdiag[0];
    [
        1.0,
        a1 / t + a1 / tp - big_t / a1 + a2 * a2 / (a1 * t) + a3 * a3 / (a1 * tp),
        1.0 + (a1 * a1 + a2 * a2 + a3 * a3) / (t * tp) - big_t / tp - big_t / t,
        a1 / tp + a1 / t - a1 * big_t / (t * tp),
        a1 * a1 / (t * tp),
    ]
}

/// `βⱼ = aⱼ β₁ / (a₁ + β₁ (tⱼ − t₁))`. `None` on a vanishing denominator.
pub fn recover_betas(a: Vec3, tdiag: Vec3, beta1: f64) -> Option<Vec3> {
    let mut beta = [beta1, 0.0, 0.0];
    for j in 1..3 {
        if a[j] == 0.0 {
            continue;
        }
        let den = a[0] + beta1 * (tdiag[j] - tdiag[0]);
        if den.abs() <= 1e-14 * (a[0].abs() + beta1.abs()) {
            return None;
        }
        beta[j] = a[j] * beta1 / den;
    }
    Some(beta)
}

/// `|(a₁ − β₁t₁) − β₁(1 − a·β)|`, zero for every solution of the symmetric
/// elimination system.
pub fn fundamental_residual(a: Vec3, tdiag: Vec3, beta: Vec3) -> f64 {
    let lhs = a[0] - beta[0] * tdiag[0];
    (lhs - beta[0] * (1.0 - linalg::dot3(&a, &beta))).abs()
}

/// `max |Q₀ᵢ|, |Qᵢ₀|`, scaled down when entries exceed 1.
fn offdiag_residual(q: &Mat4) -> f64 {
    let scale = q.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    (1..4).fold(0.0f64, |m, i| m.max(q[0][i].abs()).max(q[i][0].abs())) / scale
}

impl Solver {
    pub fn new(beta_limit: f64) -> Self {
        Solver { beta_limit }
    }

    fn check_beta(&self, beta: f64) -> Result<()> {
        if beta.abs() < 1.0 - self.beta_limit {
            Ok(())
        } else {
            Err(Error::BoostLimit { beta })
        }
    }

    /// `(β_A, β_B)` for a single pair `(a₁, b₁)` with correlation `t₁`.
    ///
    /// The quadratic for `β_A` has equal outer coefficients, so its roots
    /// multiply to 1; the one inside the unit interval is taken.
    pub fn solve_pair_general(&self, a1: f64, b1: f64, t1: f64) -> Result<(f64, f64)> {
        if a1 == 0.0 && b1 == 0.0 {
            return Ok((0.0, 0.0));
        }
        let [c, m, _] = pair_quadratic(a1, b1, t1);
        let beta_a = if c == 0.0 {
            0.0
        } else {
            let mut disc = m * m - 4.0 * c * c;
            if disc < 0.0 {
                if disc < -1e-12 * (m * m + 4.0 * c * c) {
                    return Err(Error::NoRealBoost { discriminant: disc });
                }
                disc = 0.0;
            }
            let den = m + libm::copysign(libm::sqrt(disc), m);
            if den == 0.0 {
                return Err(Error::NoRealBoost { discriminant: disc });
            }
            -2.0 * c / den
        };
        self.check_beta(beta_a)?;
        let beta_b = (a1 - beta_a * t1) / (1.0 - b1 * beta_a);
        self.check_beta(beta_b)?;
        Ok((beta_a, beta_b))
    }

    /// `β = β_A = β_B` for a symmetric pair `a₁ = b₁ = a`.
    pub fn solve_pair_symmetric(&self, a: f64, t1: f64) -> Result<f64> {
        if a == 0.0 {
            return Ok(0.0);
        }
        let big_t = 1.0 + t1;
        let mut disc = big_t * big_t - 4.0 * a * a;
        if disc < 0.0 {
            if disc < -1e-12 * big_t * big_t {
                return Err(Error::InvalidState("|1 + t₁| < |2a| for a symmetric pair"));
            }
            disc = 0.0;
        }
        let beta = 2.0 * a / (big_t + libm::sqrt(disc));
        self.check_beta(beta)?;
        Ok(beta)
    }

    /// Closed-form `Σ` for a symmetric pair on the first axis.
    pub fn sigma_pair_symmetric(&self, a: f64, tdiag: Vec3) -> Result<SigmaForm> {
        let beta = self.solve_pair_symmetric(a, tdiag[0])?;
        let g2 = 1.0 / ((1.0 - beta) * (1.0 + beta));
        let s0 = g2 * (1.0 - 2.0 * a * beta + beta * beta * tdiag[0]);
        let s1 = g2 * (-2.0 * a * beta + beta * beta + tdiag[0]);
        SigmaForm::new(s0, [s1, tdiag[1], tdiag[2]])
    }

    /// Closed-form `Σ` for a pair with `b₁ = 0` on the first axis.
    pub fn sigma_pair_b1zero(&self, a1: f64, tdiag: Vec3) -> Result<SigmaForm> {
        let (beta_a, beta_b) = self.solve_pair_general(a1, 0.0, tdiag[0])?;
        let ga = 1.0 / libm::sqrt((1.0 - beta_a) * (1.0 + beta_a));
        let gb = 1.0 / libm::sqrt((1.0 - beta_b) * (1.0 + beta_b));
        SigmaForm::new(ga / gb, [gb * tdiag[0] / ga, tdiag[1], tdiag[2]])
    }

    /// `(β₁, β₂)` for a symmetric state with `a = (a₁, a₂, 0)`.
    pub fn solve_symmetric_cubic(&self, a1: f64, a2: f64, tdiag: Vec3) -> Result<(f64, f64)> {
        let (beta, _) = self.cubic_solution(a1, a2, tdiag)?;
        Ok((beta[0], beta[1]))
    }

    fn cubic_solution(&self, a1: f64, a2: f64, tdiag: Vec3) -> Result<(Vec3, f64)> {
        if a1 == 0.0 && a2 == 0.0 {
            return Ok(([0.0; 3], 0.0));
        }
        if a1 == 0.0 {
            return Err(Error::RelabelAxes);
        }
        if tdiag[1] == tdiag[0] {
            return Err(Error::UnsupportedDegeneracy("t₂ = t₁"));
        }
        let coeffs = cubic_coefficients(a1, a2, tdiag);
        self.select_root(&coeffs, [a1, a2, 0.0], tdiag)
    }

    /// `(β₁, β₂, β₃)` for a symmetric state with all three `aᵢ` nonzero.
    pub fn solve_symmetric_quartic(&self, a: Vec3, tdiag: Vec3) -> Result<Vec3> {
        self.quartic_solution(a, tdiag).map(|(beta, _)| beta)
    }

    fn quartic_solution(&self, a: Vec3, tdiag: Vec3) -> Result<(Vec3, f64)> {
        if a == [0.0; 3] {
            return Ok(([0.0; 3], 0.0));
        }
        if a[0] == 0.0 {
            return Err(Error::RelabelAxes);
        }
        if a[2] == 0.0 {
            return self.cubic_solution(a[0], a[1], tdiag);
        }
        if a[1] == 0.0 {
            let ([b1, b3, _], r) =
                self.cubic_solution(a[0], a[2], [tdiag[0], tdiag[2], tdiag[1]])?;
            return Ok(([b1, 0.0, b3], r));
        }
        if tdiag[0] == tdiag[1] || tdiag[0] == tdiag[2] || tdiag[1] == tdiag[2] {
            return Err(Error::UnsupportedDegeneracy("two equal diagonal correlations"));
        }
        let coeffs = quartic_coefficients(a, tdiag);
        self.select_root(&coeffs, a, tdiag)
    }

    /// Picks the physical root: the smallest `|β₁|` among roots whose full
    /// velocity satisfies `β² < 1 − limit` and whose boost clears the
    /// elimination check.
    fn select_root(&self, coeffs: &[f64], a: Vec3, tdiag: Vec3) -> Result<(Vec3, f64)> {
        let roots = roots::real_roots(coeffs);
        if roots.is_empty() {
            return Err(Error::NoRealRoot {
                degree: coeffs.len() - 1,
            });
        }
        let mut candidates: Vec<(f64, Vec3)> = roots
            .iter()
            .filter_map(|&b1| recover_betas(a, tdiag, b1).map(|beta| (b1, beta)))
            .collect();
        if candidates.is_empty() {
            return Err(Error::SolverInconsistency {
                residual: f64::INFINITY,
            });
        }
        candidates.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()));

        let r = r_from_hs(&HsParams::symmetric(a, tdiag));
        let mut slowest = f64::INFINITY;
        let mut worst = f64::INFINITY;
        for (b1, beta) in &candidates {
            let boost = match GeneralBoost::with_limit(*beta, self.beta_limit) {
                Ok(b) => b,
                Err(_) => {
                    slowest = slowest.min(linalg::norm3(beta));
                    continue;
                }
            };
            let l = boost.matrix();
            let q = linalg::matmul(&linalg::matmul(&l, r.entries()), &l);
            let residual = offdiag_residual(&q);
            if residual < ELIMINATION_TOL {
                return Ok((*beta, roots::relative_residual(coeffs, *b1)));
            }
            worst = worst.min(residual);
        }
        if worst.is_finite() {
            Err(Error::SolverInconsistency { residual: worst })
        } else {
            Err(Error::BoostLimit { beta: slowest })
        }
    }

    /// Applies the plan's boosts, certifies that the linear terms vanish and
    /// diagonalizes the remaining spatial block. `s` is ordered by
    /// descending `|sᵢ|`.
    pub fn eliminate_and_diagonalize(&self, r: &RMatrix, plan: &BoostPlan) -> Result<Elimination> {
        let (left, right) = match *plan {
            BoostPlan::Identity => (IDENTITY4, IDENTITY4),
            BoostPlan::Pair {
                axis,
                beta_a,
                beta_b,
            } => (
                AxisBoost::with_limit(beta_a, axis, self.beta_limit)?.matrix(),
                AxisBoost::with_limit(beta_b, axis, self.beta_limit)?.matrix(),
            ),
            BoostPlan::General(beta) => {
                let l = GeneralBoost::with_limit(beta, self.beta_limit)?.matrix();
                (l, l)
            }
        };
        let q = linalg::matmul(
            &linalg::matmul(&left, r.entries()),
            &linalg::transpose(&right),
        );
        let mut residual = offdiag_residual(&q);
        let mut block = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                block[i][j] = 0.5 * (q[i + 1][j + 1] + q[j + 1][i + 1]);
                residual = residual.max(0.5 * (q[i + 1][j + 1] - q[j + 1][i + 1]).abs());
            }
        }
        if !(residual < ELIMINATION_TOL) {
            return Err(Error::SolverInconsistency { residual });
        }
        let (mut s, _) = linalg::symmetric_eigen(&block);
        s.sort_by(|x, y| y.abs().total_cmp(&x.abs()));
        Ok(Elimination {
            q,
            sigma: SigmaForm::new(q[0][0], s)?,
            offdiag_residual: residual,
        })
    }

    /// Rotates `t` to diagonal form, matches the non-generic cases, then
    /// runs the applicable boost solver.
    ///
    /// Boost failures are reported through the classification; other errors
    /// (non-finite input, failed elimination certificate) are returned.
    pub fn solve(&self, params: &HsParams) -> Result<SolveReport> {
        params.check_finite()?;
        let reduced = reduce(params);
        if let Some(c) = structural_match(&reduced) {
            return Ok(SolveReport::without_sigma(reduced, c));
        }

        let a = reduced.a.map(clean);
        let b = reduced.b.map(clean);
        let t = reduced.tdiag();
        let active: Vec<usize> = (0..3).filter(|&i| a[i] != 0.0 || b[i] != 0.0).collect();
        let symmetric = (0..3).all(|i| (a[i] - b[i]).abs() <= HERMITIAN_TOL);

        let attempt = match active.len() {
            0 => Ok((BoostPlan::Identity, 0.0, String::from("no linear terms"))),
            1 => {
                let k = active[0];
                let axis = Axis::from_index(k).expect("index below 3");
                self.solve_pair_general(a[k], b[k], t[k]).map(|(beta_a, beta_b)| {
                    let coeffs = pair_quadratic(a[k], b[k], t[k]);
                    (
                        BoostPlan::Pair {
                            axis,
                            beta_a,
                            beta_b,
                        },
                        roots::relative_residual(&coeffs, beta_a),
                        format!("single pair on axis {}", k + 1),
                    )
                })
            }
            _ if symmetric => self.solve_symmetric_state(a, t),
            _ => {
                return Ok(SolveReport::without_sigma(
                    reduced,
                    Classification::new(
                        ClassKind::OutOfScope,
                        "linear terms on several axes with a ≠ b",
                    ),
                ))
            }
        };

        let (plan, polynomial_residual, detail) = match attempt {
            Ok(x) => x,
            Err(e) if e.is_boost_failure() => {
                return Ok(SolveReport::without_sigma(
                    reduced,
                    Classification::new(ClassKind::NoPhysicalBoost, format!("{e}")),
                ))
            }
            Err(e) => return Err(e),
        };
        let elim = self.eliminate_and_diagonalize(&r_from_hs(&reduced), &plan)?;
        Ok(SolveReport {
            reduced,
            plan: Some(plan),
            polynomial_residual,
            offdiag_residual: elim.offdiag_residual,
            q: Some(elim.q),
            sigma: Some(elim.sigma),
            classification: Classification::new(ClassKind::Generic, detail),
        })
    }

    /// Symmetric state with linear terms on two or three axes. Axes sharing
    /// a diagonal correlation are first rotated so that only one of them
    /// carries a linear term.
    fn solve_symmetric_state(&self, a: Vec3, t: Vec3) -> Result<(BoostPlan, f64, String)> {
        let o = align_degenerate(a, t);
        let a_rot = linalg::matvec3(&o, &a).map(clean);
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&i, &j| a_rot[j].abs().total_cmp(&a_rot[i].abs()));
        let nonzero = order.iter().filter(|&&i| a_rot[i] != 0.0).count();
        let permute = |v: Vec3| [v[order[0]], v[order[1]], v[order[2]]];
        let (ap, tp) = (permute(a_rot), permute(t));

        let (beta_p, residual, detail) = match nonzero {
            0 => ([0.0; 3], 0.0, "no linear terms"),
            1 => {
                let beta = self.solve_pair_symmetric(ap[0], tp[0])?;
                let coeffs = [ap[0], -(1.0 + tp[0]), ap[0]];
                (
                    [beta, 0.0, 0.0],
                    roots::relative_residual(&coeffs, beta),
                    "symmetric pair after rotation",
                )
            }
            2 => {
                let (beta, r) = self.cubic_solution(ap[0], ap[1], tp)?;
                (beta, r, "symmetric cubic")
            }
            _ => {
                let (beta, r) = self.quartic_solution(ap, tp)?;
                (beta, r, "symmetric quartic")
            }
        };
        let mut beta_rot = [0.0; 3];
        for (slot, &axis) in order.iter().enumerate() {
            beta_rot[axis] = beta_p[slot];
        }
        let beta = linalg::matvec3(&linalg::transpose(&o), &beta_rot);
        Ok((BoostPlan::General(beta), residual, String::from(detail)))
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() <= ZERO_TOL {
        0.0
    } else {
        x
    }
}

/// Diagonal-`t` form: unchanged when `t` is already diagonal, the same
/// rotation on both qubits for symmetric `R`, and independent rotations
/// otherwise.
fn reduce(params: &HsParams) -> HsParams {
    if params.is_t_diagonal(HERMITIAN_TOL) {
        return HsParams::diagonal(params.a, params.b, params.tdiag());
    }
    let t = &params.t;
    let symmetric_t = (0..3).all(|i| (0..i).all(|j| (t[i][j] - t[j][i]).abs() <= HERMITIAN_TOL));
    let a_eq_b = (0..3).all(|i| (params.a[i] - params.b[i]).abs() <= HERMITIAN_TOL);
    if symmetric_t && a_eq_b {
        hs::tdiag_via_joint_rotation(params).params
    } else {
        hs::tdiag_via_local_rotations(params).params
    }
}

/// Proper rotation `O` commuting with `diag(t)` such that `O a` has at most
/// one nonzero component within each group of equal `tᵢ`.
fn align_degenerate(a: Vec3, t: Vec3) -> Mat3 {
    let eq = |i: usize, j: usize| (t[i] - t[j]).abs() <= EQUAL_T_TOL;
    if eq(0, 1) && eq(1, 2) {
        let n = linalg::norm3(&a);
        if n == 0.0 {
            return IDENTITY3;
        }
        let k = (0..3)
            .max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
            .unwrap_or(0);
        return rotation_onto_axis(a.map(|x| x / n), k);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if eq(i, j) && a[i] != 0.0 && a[j] != 0.0 {
            let (keep, drop) = if a[i].abs() >= a[j].abs() { (i, j) } else { (j, i) };
            let r = libm::hypot(a[keep], a[drop]);
            let (c, s) = (a[keep] / r, a[drop] / r);
            let mut o = IDENTITY3;
            o[keep][keep] = c;
            o[keep][drop] = s;
            o[drop][keep] = -s;
            o[drop][drop] = c;
            return o;
        }
    }
    IDENTITY3
}

/// Proper rotation taking the unit vector `e` to the `k`-th basis vector, as
/// a product of two reflections.
fn rotation_onto_axis(e: Vec3, k: usize) -> Mat3 {
    let mut v = e;
    v[k] -= 1.0;
    let vn = linalg::norm3(&v);
    if vn <= 1e-15 {
        return IDENTITY3;
    }
    let v = v.map(|x| x / vn);
    let mut h = IDENTITY3;
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] -= 2.0 * v[i] * v[j];
        }
    }
    // Reflection through a plane containing eₖ restores det = +1.
    let u = (k + 1) % 3;
    let mut s = IDENTITY3;
    s[u][u] = -1.0;
    linalg::matmul(&s, &h)
}

/// Matches the four structural non-generic families on any axis.
fn structural_match(p: &HsParams) -> Option<Classification> {
    let near = |x: f64, v: f64| (x - v).abs() <= STRUCTURE_TOL;
    let t = p.tdiag();
    for k in 0..3 {
        let [j, l] = Axis::from_index(k).expect("index below 3").others();
        let rest_ab_zero = [j, l]
            .iter()
            .all(|&i| near(p.a[i], 0.0) && near(p.b[i], 0.0));
        if !rest_ab_zero {
            continue;
        }
        let (ak, bk, tk) = (p.a[k].abs(), p.b[k].abs(), t[k]);
        let t_zero = t.iter().all(|&x| near(x, 0.0));
        let rest_t_zero = near(t[j], 0.0) && near(t[l], 0.0);
        let axis = k + 1;
        if near(ak, 1.0) && near(bk, 0.0) && t_zero {
            return Some(Classification::new(
                ClassKind::NonGenericA,
                format!("pure state of A multiplied by the unit matrix of B (axis {axis}); separable"),
            ));
        }
        if near(bk, 1.0) && near(ak, 0.0) && t_zero {
            return Some(Classification::new(
                ClassKind::NonGenericB,
                format!("unit matrix of A multiplied by a pure state of B (axis {axis}); separable"),
            ));
        }
        if near(ak, 0.5) && near(bk, 0.5) && near(tk, 0.0) {
            return Some(Classification::new(
                ClassKind::NonGenericC,
                format!("|a| = |b| = 1/2 with no correlation on axis {axis}; separable"),
            ));
        }
        if near(ak, 1.0) && near(bk, 1.0) && near(tk.abs(), 1.0) && rest_t_zero {
            return Some(Classification::new(
                ClassKind::NonGenericD,
                format!("|a| = |b| = |t| = 1 on axis {axis}: a pure product state"),
            ));
        }
    }
    None
}

/// Separable iff `Σ|t′ᵢ| ≤ 1 + tol`. The witness is `1 − Σ|t′ᵢ|`, negative
/// for entangled states like every other [`Verdict`].
pub fn separability_verdict(sigma: &SigmaForm, tol: f64) -> Verdict {
    Verdict::from_witness(1.0 - sigma.sum_abs_tprime(), tol, Criterion::LorentzNormalForm)
}

pub fn solve_pair_general(a1: f64, b1: f64, t1: f64) -> Result<(f64, f64)> {
    Solver::default().solve_pair_general(a1, b1, t1)
}

pub fn solve_pair_symmetric(a: f64, t1: f64) -> Result<f64> {
    Solver::default().solve_pair_symmetric(a, t1)
}

pub fn sigma_pair_symmetric(a: f64, tdiag: Vec3) -> Result<SigmaForm> {
    Solver::default().sigma_pair_symmetric(a, tdiag)
}

pub fn sigma_pair_b1zero(a1: f64, tdiag: Vec3) -> Result<SigmaForm> {
    Solver::default().sigma_pair_b1zero(a1, tdiag)
}

pub fn solve_symmetric_cubic(a1: f64, a2: f64, tdiag: Vec3) -> Result<(f64, f64)> {
    Solver::default().solve_symmetric_cubic(a1, a2, tdiag)
}

pub fn solve_symmetric_quartic(a: Vec3, tdiag: Vec3) -> Result<Vec3> {
    Solver::default().solve_symmetric_quartic(a, tdiag)
}

pub fn eliminate_and_diagonalize(r: &RMatrix, plan: &BoostPlan) -> Result<Elimination> {
    Solver::default().eliminate_and_diagonalize(r, plan)
}

pub fn solve(params: &HsParams) -> Result<SolveReport> {
    Solver::default().solve(params)
}

pub fn classify(params: &HsParams) -> Result<Classification> {
    solve(params).map(|r| r.classification)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() < tol
    }

    #[test]
    fn pair_general_examples() {
        assert_eq!(solve_pair_general(0.0, 0.0, 0.7).unwrap(), (0.0, 0.0));

        let (ba, bb) = solve_pair_general(0.64, 0.64, 0.3).unwrap();
        assert!(close(ba, 0.83815911, 1e-8) && close(bb, ba, 1e-12));
        assert!(pair_residual(0.64, 0.64, 0.3, ba, bb) < 1e-12);

        let (ba, bb) = solve_pair_general(0.2, 0.0, 0.3).unwrap();
        assert!(close(ba, -0.0692967, 1e-7));
        assert!(close(bb, 0.2207890, 1e-7));
        assert!(close(bb, 0.2 - ba * 0.3, 1e-15));
        assert!(pair_residual(0.2, 0.0, 0.3, ba, bb) < 1e-12);
    }

    #[test]
    fn pair_roots_multiply_to_one() {
        for &(a1, b1, t1) in &[(0.2, 0.0, 0.3), (0.3, -0.1, 0.2), (0.1, 0.3, -0.5)] {
            let [c, m, _] = pair_quadratic(a1, b1, t1);
            let r = roots::real_roots(&[c, m, c]);
            assert_eq!(r.len(), 2);
            assert!(close(r[0] * r[1], 1.0, 1e-12));
            let physical = r.iter().filter(|x| x.abs() < 1.0).count();
            assert_eq!(physical, 1);
        }
    }

    #[test]
    fn pair_symmetric_examples() {
        assert_eq!(solve_pair_symmetric(0.0, 0.3).unwrap(), 0.0);
        let beta = solve_pair_symmetric(0.64, 0.3).unwrap();
        assert!(close(beta, 0.83815911, 1e-8));
        assert!(matches!(
            solve_pair_symmetric(0.65, 0.3),
            Err(Error::BoostLimit { .. })
        ));
        assert!(matches!(
            solve_pair_symmetric(0.7, 0.3),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn sigma_symmetric_example() {
        let s = sigma_pair_symmetric(0.64, [0.3; 3]).unwrap();
        assert!(close(s.s0, 0.46357817, 1e-8));
        assert!(close(s.s[0], -0.23642183, 1e-8));
        assert!(close(s.tprime[1], 0.64714005, 1e-8));
        assert!(close(s.tprime[2], 0.64714005, 1e-8));
        assert!(close(s.sum_abs_tprime(), 1.8043, 1e-4));
        assert!(!separability_verdict(&s, 1e-10).is_separable());

        let s = sigma_pair_symmetric(0.0, [0.3, -0.2, 0.1]).unwrap();
        assert_eq!((s.s0, s.s), (1.0, [0.3, -0.2, 0.1]));
    }

    #[test]
    fn sigma_b1zero_examples() {
        let s = sigma_pair_b1zero(0.2, [0.3; 3]).unwrap();
        assert!(close(s.sum_abs_tprime(), 0.927563, 1e-6));
        assert!(separability_verdict(&s, 1e-10).is_separable());

        let s = sigma_pair_b1zero(0.0, [0.3, 0.2, 0.1]).unwrap();
        assert_eq!((s.s0, s.s), (1.0, [0.3, 0.2, 0.1]));

        let (ba, bb) = solve_pair_general(0.5, 0.0, 0.0).unwrap();
        assert_eq!((ba, bb), (0.0, 0.5));
        let s = sigma_pair_b1zero(0.5, [0.0, 0.1, 0.1]).unwrap();
        assert!(close(s.s0, libm::sqrt(0.75), 1e-15));
        assert_eq!(s.s[0], 0.0);
    }

    #[test]
    fn closed_forms_match_elimination() {
        let solver = Solver::default();
        let p = HsParams::single_pair(Axis::X, 0.64, 0.64, [0.3; 3]);
        let s = sigma_pair_symmetric(0.64, [0.3; 3]).unwrap();
        let (beta_a, beta_b) = solver.solve_pair_general(0.64, 0.64, 0.3).unwrap();
        let plan = BoostPlan::Pair {
            axis: Axis::X,
            beta_a,
            beta_b,
        };
        let e = solver.eliminate_and_diagonalize(&r_from_hs(&p), &plan).unwrap();
        assert!(close(e.sigma.s0, s.s0, 1e-8));
        assert!(close(e.sigma.sum_abs_tprime(), s.sum_abs_tprime(), 1e-8));

        let p = HsParams::single_pair(Axis::X, 0.2, 0.0, [0.3; 3]);
        let r = solver.solve(&p).unwrap();
        let s = sigma_pair_b1zero(0.2, [0.3; 3]).unwrap();
        let sig = r.sigma.unwrap();
        assert!(close(sig.s0, s.s0, 1e-12));
        assert!(close(sig.sum_abs_tprime(), s.sum_abs_tprime(), 1e-12));
    }

    #[test]
    fn cubic_example() {
        let c = cubic_coefficients(0.1, 0.15, [0.3, -0.2, 0.4]);
        for (got, want) in c.iter().zip([1.0, -13.65, 3.6, -0.2]) {
            assert!(close(*got, want, 1e-12));
        }
        let (b1, b2) = solve_symmetric_cubic(0.1, 0.15, [0.3, -0.2, 0.4]).unwrap();
        assert!(close(b1, 0.0792, 5e-5) && close(b2, 0.1967, 5e-5));
        let lhs = (0.1 - b1 * 0.3) / b1;
        let rhs = (0.15 + b2 * 0.2) / b2;
        assert!(close(lhs, rhs, 1e-10));
        assert!(fundamental_residual([0.1, 0.15, 0.0], [0.3, -0.2, 0.4], [b1, b2, 0.0]) < 1e-10);

        assert_eq!(solve_symmetric_cubic(0.0, 0.0, [0.3, -0.2, 0.4]).unwrap(), (0.0, 0.0));
        assert!(matches!(
            solve_symmetric_cubic(0.0, 0.1, [0.3, -0.2, 0.4]),
            Err(Error::RelabelAxes)
        ));
    }

    #[test]
    fn quartic_example() {
        let a = [0.1, 0.15, 0.2];
        let t = [0.3, -0.2, 0.2];
        let c = quartic_coefficients(a, t);
        for (got, want) in c.iter().zip([1.0, -18.65, 18.05, -3.8, 0.2]) {
            assert!(close(*got, want, 1e-12));
        }
        let b = solve_symmetric_quartic(a, t).unwrap();
        for (got, want) in b.iter().zip([0.0816, 0.2068, 0.1777]) {
            assert!(close(*got, want, 2e-3));
        }
        assert!(fundamental_residual(a, t, b) < 1e-10);
        let ratio = |i: usize| (a[i] - b[i] * t[i]) / b[i];
        assert!(close(ratio(0), ratio(1), 1e-10) && close(ratio(1), ratio(2), 1e-10));
    }

    #[test]
    fn quartic_vanishes_with_linear_terms() {
        let t = [0.3, -0.2, 0.2];
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let b = solve_symmetric_quartic([eps; 3], t).unwrap();
            let n = linalg::norm3(&b);
            assert!(n < prev && n < 10.0 * eps);
            prev = n;
        }
    }

    #[test]
    fn quartic_matches_rational_form() {
        // Root of the un-cleared equation for β₁.
        let a = [0.1, 0.15, 0.2];
        let t = [0.3, -0.2, 0.2];
        let b = solve_symmetric_quartic(a, t).unwrap()[0];
        let f = a[0] - b * t[0] - b + a[0] * b * b
            + a[1] * a[1] * b * b / (a[0] + b * (t[1] - t[0]))
            + a[2] * a[2] * b * b / (a[0] + b * (t[2] - t[0]));
        assert!(f.abs() < 1e-12);
    }

    #[test]
    fn cubic_elimination_matches_known_q() {
        let p = HsParams::symmetric([0.1, 0.15, 0.0], [0.3, -0.2, 0.4]);
        let r = solve(&p).unwrap();
        let q = r.q.unwrap();
        assert!(close(q[0][0], 0.96257, 5e-4));
        assert!(close(q[1][1], 0.292049, 5e-4));
        assert!(close(q[1][2], -0.015808, 5e-4));
        assert!(close(q[2][2], -0.229474, 5e-4));
        assert!(close(q[3][3], 0.4, 5e-4));
        let s = r.sigma.unwrap();
        assert!(close(s.tprime[0], 0.415552, 1e-3));
        assert!(close(s.tprime[1], 0.303945, 1e-3));
        assert!(close(s.tprime[2], -0.238396, 1e-3));
        assert!(r.offdiag_residual < 1e-9);
    }

    #[test]
    fn no_linear_terms_sorts_t() {
        let p = HsParams::diagonal([0.0; 3], [0.0; 3], [0.1, -0.5, 0.3]);
        let r = solve(&p).unwrap();
        assert_eq!(r.plan, Some(BoostPlan::Identity));
        let s = r.sigma.unwrap();
        assert_eq!((s.s0, s.s), (1.0, [-0.5, 0.3, 0.1]));
    }

    #[test]
    fn non_generic_cases() {
        let e1 = [1.0, 0.0, 0.0];
        let half = [0.5, 0.0, 0.0];
        let cases = [
            (HsParams::diagonal(e1, [0.0; 3], [0.0; 3]), ClassKind::NonGenericA),
            (HsParams::diagonal([0.0; 3], e1, [0.0; 3]), ClassKind::NonGenericB),
            (HsParams::diagonal(half, half, [0.0; 3]), ClassKind::NonGenericC),
            (HsParams::diagonal(e1, e1, e1), ClassKind::NonGenericD),
            (HsParams::diagonal([0.0, 0.0, -1.0], [0.0; 3], [0.0; 3]), ClassKind::NonGenericA),
        ];
        for (p, kind) in cases {
            assert_eq!(classify(&p).unwrap().kind, kind);
        }
        let c = classify(&HsParams::diagonal(e1, [0.0; 3], [0.0; 3])).unwrap();
        assert!(c.detail.starts_with("pure state of A multiplied by the unit matrix of B"));

        // Without the structural match, case a runs into βB = 1.
        assert!(matches!(
            solve_pair_general(1.0, 0.0, 0.0),
            Err(Error::BoostLimit { .. })
        ));
        assert!(matches!(
            solve_pair_general(0.0, 1.0, 0.0),
            Err(Error::BoostLimit { .. })
        ));
    }

    #[test]
    fn boundary_is_no_physical_boost() {
        let p = HsParams::single_pair(Axis::X, 0.65, 0.65, [0.3, 0.2, 0.2]);
        let r = solve(&p).unwrap();
        assert_eq!(r.classification.kind, ClassKind::NoPhysicalBoost);
        assert!(r.sigma.is_none());
    }

    #[test]
    fn generic_pair_example() {
        let p = HsParams::single_pair(Axis::X, 0.64, 0.64, [0.3; 3]);
        let r = solve(&p).unwrap();
        assert!(r.is_generic());
        assert!(close(r.sigma.unwrap().sum_abs_tprime(), 1.8043, 1e-4));
    }

    #[test]
    fn out_of_scope_shape() {
        let p = HsParams::diagonal([0.1, 0.1, 0.0], [0.2, 0.0, 0.0], [0.1, 0.1, 0.1]);
        assert_eq!(classify(&p).unwrap().kind, ClassKind::OutOfScope);
    }

    #[test]
    fn equal_correlations_are_rotated() {
        // t₂ = t₃ with linear terms on both: reduces to a cubic.
        let a = [0.1, 0.12, 0.05];
        let t = [0.3, -0.2, -0.2];
        let r = solve(&HsParams::symmetric(a, t)).unwrap();
        assert!(r.is_generic());
        assert!(r.offdiag_residual < 1e-9);

        // All equal: reduces to a single pair along a.
        let r = solve(&HsParams::symmetric([0.1, 0.1, 0.1], [0.2; 3])).unwrap();
        assert!(r.is_generic());
        let n = libm::sqrt(0.03);
        let s = sigma_pair_symmetric(n, [0.2; 3]).unwrap();
        assert!(close(r.sigma.unwrap().sum_abs_tprime(), s.sum_abs_tprime(), 1e-12));
    }

    #[test]
    fn rotation_onto_axis_is_proper() {
        let e = [0.48, 0.6, 0.64];
        for k in 0..3 {
            let o = rotation_onto_axis(e, k);
            assert!(close(linalg::det3(&o), 1.0, 1e-14));
            let v = linalg::matvec3(&o, &e);
            for i in 0..3 {
                assert!(close(v[i], if i == k { 1.0 } else { 0.0 }, 1e-14));
            }
        }
    }

    #[test]
    fn axis_relabeling_keeps_sum() {
        let mut sums = Vec::new();
        for axis in Axis::ALL {
            let p = HsParams::single_pair(axis, 0.2, -0.1, [0.3, 0.3, 0.3]);
            sums.push(solve(&p).unwrap().sigma.unwrap().sum_abs_tprime());
        }
        assert!(close(sums[0], sums[1], 1e-12) && close(sums[1], sums[2], 1e-12));
    }
}
