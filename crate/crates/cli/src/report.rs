//! Typed report payloads. Field order here is the key order in JSON.

use std::fmt::Write;

use hypersection::{CertifyReport, CriterionReport, Polynomial, Verdict};
use serde::Serialize;

/// Section polynomials live in variables renamed `x1..xn`.
const SECTION_OFFSET: usize = 1;

fn section_text(p: &Polynomial) -> String {
    p.display_with_offset(SECTION_OFFSET).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Smooth(SmoothPayload),
    Criterion(CriterionPayload),
    Certify(CertifyPayload),
    Survey(SurveyPayload),
    ModuliDim(ModuliPayload),
    Fixture(FixturePayload),
    Parse(ParsePayload),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothPayload {
    pub nvars: usize,
    pub degree: u32,
    pub t_max: u32,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionPayload {
    pub hyperplane: String,
    pub status: &'static str,
    /// Original names of the section variables `x1..xn`, in order.
    pub section_variables: Vec<String>,
    pub section: String,
    pub q: Option<String>,
    pub kernel_dim: Option<usize>,
    pub kernel_basis: Vec<String>,
    pub graded_ideal_dim: Option<usize>,
    pub witness: bool,
}

impl CriterionPayload {
    pub fn new(r: &CriterionReport) -> Self {
        CriterionPayload {
            hyperplane: r.hyperplane.form().as_poly().to_string(),
            status: r.status().as_str(),
            section_variables: r
                .hyperplane
                .section_variables()
                .into_iter()
                .map(|i| format!("x{i}"))
                .collect(),
            section: section_text(&r.section),
            q: r.q().map(section_text),
            kernel_dim: r.kernel_dim(),
            kernel_basis: r
                .kernel_basis()
                .iter()
                .map(|l| section_text(l.as_poly()))
                .collect(),
            graded_ideal_dim: r.graded_ideal_dim(),
            witness: r.is_witness(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyPayload {
    pub witnesses: usize,
    pub reports: Vec<CriterionPayload>,
}

impl SurveyPayload {
    pub fn new(reports: &[CriterionReport]) -> Self {
        SurveyPayload {
            witnesses: reports.iter().filter(|r| r.is_witness()).count(),
            reports: reports.iter().map(CriterionPayload::new).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialPayload {
    pub hyperplane: String,
    pub origin: &'static str,
    pub status: &'static str,
    pub kernel_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyPayload {
    pub verdict: &'static str,
    pub witness: Option<String>,
    pub seed: u64,
    pub trial_budget: usize,
    pub trials_run: usize,
    pub witness_report: Option<CriterionPayload>,
    pub trials: Vec<TrialPayload>,
}

impl CertifyPayload {
    pub fn new(r: &CertifyReport) -> Self {
        CertifyPayload {
            verdict: r.verdict.as_str(),
            witness: r
                .witness
                .as_ref()
                .map(|w| w.hyperplane.form().as_poly().to_string()),
            seed: r.seed,
            trial_budget: r.trial_budget,
            trials_run: r.trials.len(),
            witness_report: r.witness.as_ref().map(CriterionPayload::new),
            trials: r
                .trials
                .iter()
                .map(|t| TrialPayload {
                    hyperplane: t.hyperplane.form().as_poly().to_string(),
                    origin: t.origin.as_str(),
                    status: t.status.as_str(),
                    kernel_dim: t.kernel_dim,
                })
                .collect(),
        }
    }

    fn certified(&self) -> bool {
        self.verdict == Verdict::Certified.as_str()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliPayload {
    pub d: u32,
    pub n: u32,
    pub m: i128,
    pub sections_exceed_moduli: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixturePayload {
    pub name: String,
    pub nvars: usize,
    pub degree: Option<u32>,
    pub polynomial: String,
}

impl FixturePayload {
    pub fn new(name: String, f: &Polynomial) -> Self {
        FixturePayload {
            name,
            nvars: f.nvars(),
            degree: f.homogeneous_degree(),
            polynomial: f.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsePayload {
    pub nvars: usize,
    pub terms: usize,
    pub degree: Option<u32>,
    pub homogeneous: bool,
    pub polynomial: String,
}

impl ParsePayload {
    pub fn new(f: &Polynomial) -> Self {
        ParsePayload {
            nvars: f.nvars(),
            terms: f.num_terms(),
            degree: f.degree(),
            homogeneous: f.homogeneous_degree().is_some(),
            polynomial: f.to_string(),
        }
    }
}

fn criterion_text(out: &mut String, r: &CriterionPayload) {
    let _ = writeln!(out, "hyperplane: {} = 0", r.hyperplane);
    let _ = writeln!(
        out,
        "section variables: x1..x{} = {}",
        r.section_variables.len(),
        r.section_variables.join(", ")
    );
    let _ = writeln!(out, "section: {}", r.section);
    match r.status {
        "singular_section" => {
            let _ = writeln!(out, "status: singular section (criterion does not apply)");
        }
        "vacuous" => {
            let _ = writeln!(out, "status: vacuous (q = 0, every direction passes)");
        }
        _ => {
            let _ = writeln!(out, "q: {}", r.q.as_deref().unwrap_or("0"));
            if let Some(dim) = r.graded_ideal_dim {
                let _ = writeln!(out, "degree-d piece of the Jacobian ideal: dimension {dim}");
            }
            let dim = r.kernel_dim.unwrap_or(0);
            if dim == 0 {
                let _ = writeln!(out, "kernel: 0 (variation is maximal near this hyperplane)");
            } else {
                let _ = writeln!(
                    out,
                    "kernel: dimension {dim}, basis [{}]",
                    r.kernel_basis.join(", ")
                );
            }
        }
    }
}

impl Payload {
    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Payload::Smooth(s) => {
                if s.smooth {
                    let _ = writeln!(out, "smooth");
                } else {
                    let _ = writeln!(
                        out,
                        "singular: the Jacobian ideal has no full graded piece up to degree {}",
                        s.t_max
                    );
                }
            }
            Payload::Criterion(r) => criterion_text(&mut out, r),
            Payload::Survey(s) => {
                for (i, r) in s.reports.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    criterion_text(&mut out, r);
                }
                let _ = writeln!(
                    out,
                    "\n{} of {} hyperplanes are witnesses",
                    s.witnesses,
                    s.reports.len()
                );
            }
            Payload::Certify(c) => {
                if c.certified() {
                    let _ = writeln!(
                        out,
                        "certified: hyperplane sections vary maximally in moduli"
                    );
                    let _ = writeln!(
                        out,
                        "witness: {} = 0 (trial {} of {}); the criterion kernel is zero over the \
                         prime field, hence over its algebraic closure",
                        c.witness.as_deref().unwrap_or("?"),
                        c.trials_run,
                        c.trial_budget
                    );
                    if let Some(w) = &c.witness_report {
                        let _ = writeln!(out, "section: {}", w.section);
                    }
                } else {
                    let _ = writeln!(
                        out,
                        "inconclusive: none of {} hyperplanes (seed {}) gave a zero kernel",
                        c.trials_run, c.seed
                    );
                    let _ = writeln!(
                        out,
                        "this is a sampling failure, not evidence against maximal variation"
                    );
                }
            }
            Payload::ModuliDim(m) => {
                let _ = writeln!(out, "m({}, {}) = {}", m.d, m.n, m.m);
                let _ = writeln!(
                    out,
                    "hyperplane sections exceed moduli: {}",
                    if m.sections_exceed_moduli {
                        "yes"
                    } else {
                        "no"
                    }
                );
            }
            Payload::Fixture(f) => {
                let _ = writeln!(out, "{}", f.polynomial);
            }
            Payload::Parse(p) => {
                let _ = writeln!(out, "{}", p.polynomial);
            }
        }
        out
    }
}
