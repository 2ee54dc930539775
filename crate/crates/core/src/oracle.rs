//! Random states by family, and cross-validation of the normal-form verdict
//! against the partial-transpose test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::criteria::{self, Separability, Verdict};
use crate::hs::{self, HsParams};
use crate::linalg::{self, Mat3, Vec3};
use crate::normal_form::{self, ClassKind, SolveReport, Solver};
use crate::{Axis, Error, Result, DEFAULT_VERDICT_TOL};

/// Name of the generator behind [`random_state`], recorded in reports.
pub const RNG_NAME: &str = "chacha12";
/// Rejection attempts per sample before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;
/// Positivity tolerance of the rejection test.
pub const SAMPLE_PSD_TOL: f64 = 1e-12;
/// PPT witnesses closer to zero than this are not counted as agreement or
/// disagreement.
pub const BOUNDARY_TOL: f64 = 1e-8;
/// Range of the sampled `aᵢ`, `bᵢ` and `tᵢ`.
const RANGE: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `a = b = 0`, diagonal `t`.
    Mds,
    /// One pair `(aₖ, bₖ)` on the given axis, diagonal `t`.
    SinglePair(Axis),
    /// `a = b = (a₁, a₂, 0)`, diagonal `t`.
    SymmetricTwo,
    /// `a = b` with three components, diagonal `t`.
    SymmetricThree,
    /// `a = b` and a symmetric, non-diagonal `t`.
    FullSymmetric,
    /// Convex mixtures of one to four product states.
    ProductMixture,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Mds,
        Family::SinglePair(Axis::X),
        Family::SinglePair(Axis::Y),
        Family::SinglePair(Axis::Z),
        Family::SymmetricTwo,
        Family::SymmetricThree,
        Family::FullSymmetric,
        Family::ProductMixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mds => "mds",
            Family::SinglePair(Axis::X) => "single-pair-x",
            Family::SinglePair(Axis::Y) => "single-pair-y",
            Family::SinglePair(Axis::Z) => "single-pair-z",
            Family::SymmetricTwo => "symmetric-two",
            Family::SymmetricThree => "symmetric-three",
            Family::FullSymmetric => "full-symmetric",
            Family::ProductMixture => "product-mixture",
        }
    }

    /// Inverse of [`Family::name`]; `single-pair` alone means the `x` axis.
    pub fn from_name(name: &str) -> Option<Family> {
        if name == "single-pair" {
            return Some(Family::SinglePair(Axis::X));
        }
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSpec {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
}

/// Generator for sample `index`: seeded by `seed`, on stream `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(-RANGE..=RANGE)
}

fn uniform3<R: Rng>(rng: &mut R) -> Vec3 {
    [uniform(rng), uniform(rng), uniform(rng)]
}

fn in_unit_ball<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = [
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        ];
        if linalg::dot3(&v, &v) <= 1.0 {
            return v;
        }
    }
}

/// Rotation matrix of a random unit quaternion.
fn random_rotation<R: Rng>(rng: &mut R) -> Mat3 {
    let q = loop {
        let q: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = libm::sqrt(n2);
            break q.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

fn draw<R: Rng>(family: Family, rng: &mut R) -> HsParams {
    match family {
        Family::Mds => HsParams::diagonal([0.0; 3], [0.0; 3], uniform3(rng)),
        Family::SinglePair(axis) => {
            let (a, b) = (uniform(rng), uniform(rng));
            HsParams::single_pair(axis, a, b, uniform3(rng))
        }
        Family::SymmetricTwo => {
            let a = [uniform(rng), uniform(rng), 0.0];
            HsParams::symmetric(a, uniform3(rng))
        }
        Family::SymmetricThree => {
            let a = uniform3(rng);
            HsParams::symmetric(a, uniform3(rng))
        }
        Family::FullSymmetric => {
            let a = uniform3(rng);
            let d = uniform3(rng);
            let o = random_rotation(rng);
            let mut t = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    t[i][j] = (0..3).map(|k| o[k][i] * d[k] * o[k][j]).sum();
                }
            }
            HsParams::new(a, a, t)
        }
        Family::ProductMixture => {
            let k = rng.gen_range(1..=4usize);
            let mut weights = [0.0; 4];
            for w in weights.iter_mut().take(k) {
                *w = rng.gen_range(f64::EPSILON..=1.0);
            }
            let total: f64 = weights.iter().sum();
            let mut p = HsParams::new([0.0; 3], [0.0; 3], [[0.0; 3]; 3]);
            for w in weights.iter().take(k) {
                let w = w / total;
                let u = in_unit_ball(rng);
                let v = in_unit_ball(rng);
                for i in 0..3 {
                    p.a[i] += w * u[i];
                    p.b[i] += w * v[i];
                    for j in 0..3 {
                        p.t[i][j] += w * u[i] * v[j];
                    }
                }
            }
            p
        }
    }
}

/// Deterministic state number `index` of the family: rejection sampling
/// until `ρ` is positive semidefinite within [`SAMPLE_PSD_TOL`].
pub fn random_state(spec: &SampleSpec, index: u64) -> Result<HsParams> {
    let mut rng = sample_rng(spec.seed, index);
    for _ in 0..MAX_ATTEMPTS {
        let p = draw(spec.family, &mut rng);
        let rho = hs::rho_from_hs(&p)?;
        if hs::is_positive_semidefinite(&rho, SAMPLE_PSD_TOL) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Both verdicts for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub ppt: Verdict,
    pub solve: SolveReport,
    /// Present iff the normal-form path is generic.
    pub lorentz: Option<Verdict>,
    /// PPT witness within [`BOUNDARY_TOL`] of zero.
    pub boundary: bool,
}

impl CrossValidation {
    /// `None` when the normal form is unavailable or the state is on the
    /// boundary.
    pub fn agrees(&self) -> Option<bool> {
        match self.lorentz {
            Some(l) if !self.boundary => Some(l.kind == self.ppt.kind),
            _ => None,
        }
    }
}

pub fn cross_validate(params: &HsParams) -> Result<CrossValidation> {
    cross_validate_with(params, &Solver::default(), DEFAULT_VERDICT_TOL)
}

pub fn cross_validate_with(params: &HsParams, solver: &Solver, tol: f64) -> Result<CrossValidation> {
    let rho = hs::rho_from_hs(params)?;
    let ppt = criteria::peres_horodecki(&rho, tol)?;
    let solve = solver.solve(params)?;
    let lorentz = solve
        .sigma
        .as_ref()
        .map(|s| normal_form::separability_verdict(s, tol));
    Ok(CrossValidation {
        ppt,
        solve,
        lorentz,
        boundary: ppt.witness.abs() <= BOUNDARY_TOL,
    })
}

/// Batch summary. `total = generic + nongeneric` and
/// `agree + disagree + boundary = generic`.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub family: &'static str,
    pub seed: u64,
    pub rng: &'static str,
    pub total: usize,
    pub generic: usize,
    pub nongeneric: usize,
    /// Non-generic samples that fall outside every solver's shape.
    pub out_of_scope: usize,
    pub agree: usize,
    pub disagree: usize,
    pub boundary: usize,
    pub entangled: usize,
    pub mean_offdiag_residual: f64,
    pub max_offdiag_residual: f64,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagree == 0
    }
}

/// Folds records in order. The caller fixes the order, which keeps the mean
/// bitwise reproducible.
pub fn aggregate<'a>(
    spec: &SampleSpec,
    records: impl IntoIterator<Item = &'a CrossValidation>,
) -> AgreementReport {
    let mut r = AgreementReport {
        family: spec.family.name(),
        seed: spec.seed,
        rng: RNG_NAME,
        total: 0,
        generic: 0,
        nongeneric: 0,
        out_of_scope: 0,
        agree: 0,
        disagree: 0,
        boundary: 0,
        entangled: 0,
        mean_offdiag_residual: 0.0,
        max_offdiag_residual: 0.0,
    };
    let mut sum = 0.0;
    for rec in records {
        r.total += 1;
        if rec.ppt.kind == Separability::Entangled {
            r.entangled += 1;
        }
        if rec.lorentz.is_none() {
            r.nongeneric += 1;
            if rec.solve.classification.kind == ClassKind::OutOfScope {
                r.out_of_scope += 1;
            }
            continue;
        }
        r.generic += 1;
        sum += rec.solve.offdiag_residual;
        r.max_offdiag_residual = r.max_offdiag_residual.max(rec.solve.offdiag_residual);
        match rec.agrees() {
            Some(true) => r.agree += 1,
            Some(false) => r.disagree += 1,
            None => r.boundary += 1,
        }
    }
    if r.generic > 0 {
        r.mean_offdiag_residual = sum / r.generic as f64;
    }
    r
}

/// Samples `spec.count` states and cross-validates each one in index order.
pub fn batch_stats(spec: &SampleSpec) -> Result<AgreementReport> {
    let mut records = alloc::vec::Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let p = random_state(spec, i as u64)?;
        records.push(cross_validate(&p)?);
    }
    Ok(aggregate(spec, &records))
}
