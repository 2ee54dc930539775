//! Serializable reports and their plain-text rendering.

use lorentz_sep_core::analysis::Analysis;
use lorentz_sep_core::criteria::{Separability, Verdict};
use lorentz_sep_core::hs::HsParams;
use lorentz_sep_core::normal_form::{ClassKind, Classification};
use lorentz_sep_core::oracle::AgreementReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verdict: String,
    pub witness: f64,
    pub boundary: bool,
    pub criterion: String,
}

impl From<Verdict> for VerdictReport {
    fn from(v: Verdict) -> Self {
        VerdictReport {
            verdict: separability_name(v.kind).to_owned(),
            witness: v.witness,
            boundary: v.boundary,
            criterion: v.criterion.name().to_owned(),
        }
    }
}

pub fn separability_name(kind: Separability) -> &'static str {
    match kind {
        Separability::Separable => "separable",
        Separability::Entangled => "entangled",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub kind: String,
    pub detail: String,
}

impl From<&Classification> for ClassReport {
    fn from(c: &Classification) -> Self {
        ClassReport {
            kind: c.kind.label().to_owned(),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl From<&HsParams> for InputEcho {
    fn from(p: &HsParams) -> Self {
        InputEcho {
            a: p.a,
            b: p.b,
            t: p.t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub polynomial: f64,
    pub offdiag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NotesReport {
    pub necessity_passed: bool,
    pub mds: Option<bool>,
    pub half_eigenvalue: Option<VerdictReport>,
}

/// Everything `analyze` computes for one state. The `sigma`, `tprime`,
/// `lorentz_sum` and `lorentz_verdict` fields appear only for generic states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub psd: bool,
    pub eigenvalues_4lambda: [f64; 4],
    pub pt_eigenvalues_4lambda: [f64; 4],
    pub ppt_verdict: Option<VerdictReport>,
    pub classification: Option<ClassReport>,
    pub betas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tprime: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lorentz_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lorentz_verdict: Option<VerdictReport>,
    pub residuals: Option<Residuals>,
    pub criteria_notes: Option<NotesReport>,
}

impl AnalysisReport {
    pub fn from_analysis(a: &Analysis) -> Self {
        let solve = a.solve.as_ref();
        let generic = solve.is_some_and(|s| s.is_generic());
        let sigma = solve.and_then(|s| s.sigma.as_ref()).filter(|_| generic);
        AnalysisReport {
            input: InputEcho::from(&a.params),
            psd: a.psd,
            eigenvalues_4lambda: a.spectrum.four_lambda(),
            pt_eigenvalues_4lambda: a.pt_spectrum.four_lambda(),
            ppt_verdict: a.ppt.map(VerdictReport::from),
            classification: solve.map(|s| ClassReport::from(&s.classification)),
            betas: solve.and_then(|s| s.plan.as_ref()).map(|p| p.betas()),
            sigma: sigma.map(|s| [s.s0, s.s[0], s.s[1], s.s[2]]),
            tprime: sigma.map(|s| s.tprime),
            lorentz_sum: sigma.map(|s| s.sum_abs_tprime()),
            lorentz_verdict: a.lorentz.filter(|_| generic).map(VerdictReport::from),
            residuals: solve.map(|s| Residuals {
                polynomial: s.polynomial_residual,
                offdiag: s.offdiag_residual,
            }),
            criteria_notes: a.notes.map(|n| NotesReport {
                necessity_passed: n.necessity_passed,
                mds: n.mds,
                half_eigenvalue: n.half_eigenvalue.map(VerdictReport::from),
            }),
        }
    }

    /// 0 separable, 1 entangled, 2 not a state, 3 decided by the partial
    /// transpose alone.
    pub fn exit_code(&self) -> i32 {
        let Some(ppt) = &self.ppt_verdict else {
            return 2;
        };
        let generic = self
            .classification
            .as_ref()
            .is_some_and(|c| c.kind == ClassKind::Generic.label());
        match (generic, ppt.verdict.as_str()) {
            (false, _) => 3,
            (true, "entangled") => 1,
            (true, _) => 0,
        }
    }
}

/// `sample` output: the batch summary plus its pass flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub family: String,
    pub seed: u64,
    pub rng: String,
    pub total: usize,
    pub generic: usize,
    pub nongeneric: usize,
    pub out_of_scope: usize,
    pub agree: usize,
    pub disagree: usize,
    pub boundary: usize,
    pub entangled: usize,
    pub mean_offdiag_residual: f64,
    pub max_offdiag_residual: f64,
    pub passed: bool,
}

impl From<&AgreementReport> for SampleReport {
    fn from(r: &AgreementReport) -> Self {
        SampleReport {
            family: r.family.to_owned(),
            seed: r.seed,
            rng: r.rng.to_owned(),
            total: r.total,
            generic: r.generic,
            nongeneric: r.nongeneric,
            out_of_scope: r.out_of_scope,
            agree: r.agree,
            disagree: r.disagree,
            boundary: r.boundary,
            entangled: r.entangled,
            mean_offdiag_residual: r.mean_offdiag_residual,
            max_offdiag_residual: r.max_offdiag_residual,
            passed: r.passed(),
        }
    }
}

/// One `path: value` line per leaf. Numbers are printed exactly as in the
/// JSON form; number arrays share a line.
pub fn render_text<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::new();
    flatten(&value, "", &mut out);
    out
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let child = |key: &str| {
        if path.is_empty() {
            key.to_owned()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(v, &child(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: {}\n", joined.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &child(&i.to_string()), out);
            }
        }
        _ => out.push_str(&format!("{path}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "n/a".to_owned(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
