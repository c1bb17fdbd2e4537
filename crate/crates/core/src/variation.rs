//! First-order test for maximal variation of hyperplane sections.
//!
//! For a hypersurface `X: f = 0` and the hyperplane `H: x0 = 0`, moving `H`
//! to first order as `x0 = eps * l(x1, ..., xn)` deforms the section
//! `g = f(0, x1, ..., xn)` by `eps * q * l` with `q = (df/dx0)(0, x1, ..., xn)`.
//! The motion is trivial as an abstract deformation exactly when `q * l`
//! vanishes in the degree-`d` piece of the Jacobian ring of `g`. The
//! criterion kernel is the space of such `l`; when it is zero the
//! differential of the section-to-moduli map is injective at `H`, and since
//! maximal variation is an open condition, one such `H` certifies `X`.
//!
//! If `q = 0` the test says nothing about `H` and a perturbed hyperplane
//! has to be tried, which is what [`certify_max_variation`] automates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jacobian::{ideal_graded_piece, is_smooth_with_cap, jacobian_generators};
use crate::linalg::Matrix;
use crate::poly::{LinearChange, LinearForm, Polynomial};
use crate::scalar::{FieldSpec, Scalar};

/// A hyperplane `h = 0`, stored with its first nonzero coefficient equal
/// to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    form: LinearForm,
    pivot: usize,
}

impl Hyperplane {
    pub fn new(form: LinearForm) -> Result<Self> {
        let coeffs = form.coefficients();
        let pivot = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroHyperplane)?;
        let scale = coeffs[pivot].inv()?;
        let form = LinearForm::new(form.as_poly().scale(&scale))?;
        Ok(Hyperplane { form, pivot })
    }

    pub fn from_coefficients(field: FieldSpec, coeffs: &[Scalar]) -> Result<Self> {
        Hyperplane::new(LinearForm::from_coefficients(field, coeffs)?)
    }

    pub fn parse(text: &str, nvars: usize, field: FieldSpec) -> Result<Self> {
        Hyperplane::new(LinearForm::new(Polynomial::parse(text, nvars, field)?)?)
    }

    /// The coordinate hyperplane `x_i = 0`.
    pub fn coordinate(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Hyperplane {
            form: LinearForm::new(Polynomial::var(field, nvars, i)).expect("variable is linear"),
            pivot: i,
        }
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn coefficients(&self) -> Vec<Scalar> {
        self.form.coefficients()
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.form.as_poly().field()
    }

    /// Original variables serving as coordinates `x1, ..., xn` on the
    /// hyperplane: every variable except the pivot, in order.
    pub fn section_variables(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| i != self.pivot).collect()
    }

    /// The change `C` with `h(C(y)) = y0`, so `{y0 = 0}` is mapped onto `H`.
    ///
    /// The pivot variable becomes `y0 - sum_k h_k y_k`; the remaining
    /// variables keep their relative order as `y1, ..., yn`.
    pub fn normalizing_change(&self) -> LinearChange {
        let field = self.field();
        let nvars = self.nvars();
        let coeffs = self.coefficients();
        let mut m = Matrix::zeros(field, nvars, nvars);
        for (slot, &i) in self.section_variables().iter().enumerate() {
            m.set(i, slot + 1, field.one());
            m.set(self.pivot, slot + 1, -&coeffs[i]);
        }
        m.set(self.pivot, 0, field.one());
        LinearChange::new(m).expect("normalizing change is unipotent up to permutation")
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

fn check_compatible(f: &Polynomial, h: &Hyperplane) -> Result<()> {
    if h.nvars() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: h.nvars(),
        });
    }
    if h.field() != f.field() {
        return Err(Error::FieldMismatch {
            left: f.field().characteristic(),
            right: h.field().characteristic(),
        });
    }
    Ok(())
}

/// `f` in coordinates where `H` is `x0 = 0`.
pub fn normalize_hyperplane(f: &Polynomial, h: &Hyperplane) -> Result<Polynomial> {
    check_compatible(f, h)?;
    if f.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    f.substitute_linear(&h.normalizing_change())
}

/// `q = (df/dx0)(0, x1, ..., xn)`, a form of degree `d - 1` (or zero) in the
/// section variables.
pub fn q_form(f_normalized: &Polynomial) -> Result<Polynomial> {
    if f_normalized.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    f_normalized.partial_derivative(0)?.set_var_zero(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionStatus {
    /// `X ∩ H` is singular (or `H ⊂ X`); the criterion does not apply.
    SingularSection,
    /// `q = 0`: every direction passes, so `H` gives no information.
    Vacuous,
    Computed,
}

impl CriterionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionStatus::SingularSection => "singular_section",
            CriterionStatus::Vacuous => "vacuous",
            CriterionStatus::Computed => "computed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionOutcome {
    SingularSection,
    Vacuous {
        q: Polynomial,
    },
    Computed {
        q: Polynomial,
        /// Linear forms in the section variables, in reduced echelon form.
        kernel_basis: Vec<LinearForm>,
        /// Dimension of the degree-`d` piece of the section's Jacobian ideal.
        graded_ideal_dim: usize,
    },
}

/// The criterion evaluated at one hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub hyperplane: Hyperplane,
    /// `f` restricted to `H`, in the section variables.
    pub section: Polynomial,
    pub outcome: CriterionOutcome,
}

impl CriterionReport {
    pub fn status(&self) -> CriterionStatus {
        match self.outcome {
            CriterionOutcome::SingularSection => CriterionStatus::SingularSection,
            CriterionOutcome::Vacuous { .. } => CriterionStatus::Vacuous,
            CriterionOutcome::Computed { .. } => CriterionStatus::Computed,
        }
    }

    pub fn q(&self) -> Option<&Polynomial> {
        match &self.outcome {
            CriterionOutcome::SingularSection => None,
            CriterionOutcome::Vacuous { q } | CriterionOutcome::Computed { q, .. } => Some(q),
        }
    }

    pub fn kernel_basis(&self) -> &[LinearForm] {
        match &self.outcome {
            CriterionOutcome::Computed { kernel_basis, .. } => kernel_basis,
            _ => &[],
        }
    }

    /// `None` unless the kernel was computed.
    pub fn kernel_dim(&self) -> Option<usize> {
        match &self.outcome {
            CriterionOutcome::Computed { kernel_basis, .. } => Some(kernel_basis.len()),
            _ => None,
        }
    }

    pub fn graded_ideal_dim(&self) -> Option<usize> {
        match &self.outcome {
            CriterionOutcome::Computed {
                graded_ideal_dim, ..
            } => Some(*graded_ideal_dim),
            _ => None,
        }
    }

    /// Smooth section, nonzero `q`, zero kernel.
    pub fn is_witness(&self) -> bool {
        self.kernel_dim() == Some(0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CriterionOptions {
    /// Overrides the degree cap of the smoothness scan on sections.
    pub smoothness_cap: Option<u32>,
}

fn check_dimensions(f: &Polynomial) -> Result<u32> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let n = f.nvars() - 1;
    if n <= 2 || d <= 2 {
        return Err(Error::DimensionTooSmall { n, d });
    }
    Ok(d)
}

pub fn criterion_kernel(f: &Polynomial, h: &Hyperplane) -> Result<CriterionReport> {
    criterion_kernel_with(f, h, &CriterionOptions::default())
}

/// Kernel of `l -> [q * l]` from linear forms on `H` into the degree-`d`
/// piece of the Jacobian ring of `X ∩ H`.
pub fn criterion_kernel_with(
    f: &Polynomial,
    h: &Hyperplane,
    options: &CriterionOptions,
) -> Result<CriterionReport> {
    check_compatible(f, h)?;
    let d = check_dimensions(f)?;
    let normalized = normalize_hyperplane(f, h)?;
    let section = normalized.set_var_zero(0)?;
    let report = |outcome| CriterionReport {
        hyperplane: h.clone(),
        section: section.clone(),
        outcome,
    };
    if section.is_zero() || !is_smooth_with_cap(&section, options.smoothness_cap)? {
        return Ok(report(CriterionOutcome::SingularSection));
    }
    let q = q_form(&normalized)?;
    if q.is_zero() {
        return Ok(report(CriterionOutcome::Vacuous { q }));
    }

    let field = f.field();
    let n = section.nvars();
    let piece = ideal_graded_piece(field, n, &jacobian_generators(&section)?, d)?;
    let space = piece.row_space();
    // Column i: normal form of q * x_i modulo the ideal piece.
    let columns = (0..n)
        .map(|i| {
            let image = &q * &Polynomial::var(field, n, i);
            Ok(space.reduce(&piece.coordinates(&image)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..piece.basis().len())
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    let criterion = Matrix::from_rows(field, n, rows)?;
    let kernel_basis = criterion
        .kernel_basis()
        .into_iter()
        .map(|v| LinearForm::from_coefficients(field, &v))
        .collect::<Result<Vec<_>>>()?;
    Ok(report(CriterionOutcome::Computed {
        q,
        kernel_basis,
        graded_ideal_dim: space.dim(),
    }))
}

/// One [`CriterionReport`] per hyperplane, in order.
pub fn survey_kernels(f: &Polynomial, hyperplanes: &[Hyperplane]) -> Result<Vec<CriterionReport>> {
    hyperplanes
        .par_iter()
        .map(|h| criterion_kernel(f, h))
        .collect()
}

/// How a scanned hyperplane was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrialOrigin {
    Coordinate,
    Perturbed,
    Random,
}

impl TrialOrigin {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrialOrigin::Coordinate => "coordinate",
            TrialOrigin::Perturbed => "perturbed",
            TrialOrigin::Random => "random",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanStrategy {
    pub seed: u64,
    /// Maximum number of hyperplanes tried.
    pub budget: usize,
    pub smoothness_cap: Option<u32>,
}

impl Default for ScanStrategy {
    fn default() -> Self {
        ScanStrategy {
            seed: 0,
            budget: 64,
            smoothness_cap: None,
        }
    }
}

/// Coordinate hyperplanes, then structured perturbations `x0 + a` of
/// `x0 = 0`, then seeded random hyperplanes, forever.
///
/// Random coefficients are uniform in `[0, p)` over `F_p` and in `[-5, 5]`
/// over `Q`.
pub fn hyperplane_schedule(
    field: FieldSpec,
    nvars: usize,
    seed: u64,
) -> impl Iterator<Item = (TrialOrigin, Hyperplane)> {
    let n = nvars - 1;
    let mut fixed: Vec<(TrialOrigin, Hyperplane)> = (0..nvars)
        .map(|i| {
            (
                TrialOrigin::Coordinate,
                Hyperplane::coordinate(field, nvars, i),
            )
        })
        .collect();
    let mut patterns: Vec<Vec<i64>> = vec![
        vec![1; n],
        (1..=n as i64).collect(),
        (1..=n as i64).map(|i| i * i).collect(),
        (1..=n as i64)
            .map(|i| if i % 2 == 0 { i } else { -i })
            .collect(),
    ];
    for i in 0..n {
        let mut unit = vec![0; n];
        unit[i] = 1;
        patterns.push(unit);
    }
    for a in patterns {
        let coeffs: Vec<Scalar> = std::iter::once(1)
            .chain(a)
            .map(|c| field.from_i64(c))
            .collect();
        let h = Hyperplane::from_coefficients(field, &coeffs).expect("x0 coefficient is 1");
        if !fixed.iter().any(|(_, g)| *g == h) {
            fixed.push((TrialOrigin::Perturbed, h));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = std::iter::from_fn(move || loop {
        let coeffs: Vec<Scalar> = (0..nvars)
            .map(|_| match field.characteristic() {
                0 => field.from_i64(rng.gen_range(-5..=5)),
                p => field.from_u64(rng.gen_range(0..p)),
            })
            .collect();
        if let Ok(h) = Hyperplane::from_coefficients(field, &coeffs) {
            return Some((TrialOrigin::Random, h));
        }
    });
    fixed.into_iter().chain(random)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// A hyperplane with injective first-order map was found: the sections
    /// of this hypersurface vary maximally. This is a proof.
    Certified,
    /// No witness within the budget. This proves nothing either way.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub hyperplane: Hyperplane,
    pub origin: TrialOrigin,
    pub status: CriterionStatus,
    pub kernel_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyReport {
    pub verdict: Verdict,
    /// Full report at the witness hyperplane when certified.
    pub witness: Option<CriterionReport>,
    /// Trials in schedule order, ending at the witness if there is one.
    pub trials: Vec<TrialSummary>,
    pub seed: u64,
    pub trial_budget: usize,
}

/// Scans hyperplanes until one certifies maximal variation or the budget
/// runs out.
///
/// Trials are evaluated in parallel batches, but the result is the one a
/// sequential scan in schedule order would produce.
pub fn certify_max_variation(f: &Polynomial, strategy: &ScanStrategy) -> Result<CertifyReport> {
    check_dimensions(f)?;
    if !is_smooth_with_cap(f, strategy.smoothness_cap)? {
        return Err(Error::SingularInput);
    }
    let options = CriterionOptions {
        smoothness_cap: strategy.smoothness_cap,
    };
    let schedule: Vec<(TrialOrigin, Hyperplane)> =
        hyperplane_schedule(f.field(), f.nvars(), strategy.seed)
            .take(strategy.budget)
            .collect();
    let batch = rayon::current_num_threads().max(1);
    let mut trials = Vec::new();
    for chunk in schedule.chunks(batch) {
        let reports = chunk
            .par_iter()
            .map(|(_, h)| criterion_kernel_with(f, h, &options))
            .collect::<Result<Vec<_>>>()?;
        for ((origin, _), report) in chunk.iter().zip(reports) {
            trials.push(TrialSummary {
                hyperplane: report.hyperplane.clone(),
                origin: *origin,
                status: report.status(),
                kernel_dim: report.kernel_dim(),
            });
            if report.is_witness() {
                return Ok(CertifyReport {
                    verdict: Verdict::Certified,
                    witness: Some(report),
                    trials,
                    seed: strategy.seed,
                    trial_budget: strategy.budget,
                });
            }
        }
    }
    Ok(CertifyReport {
        verdict: Verdict::Inconclusive,
        witness: None,
        trials,
        seed: strategy.seed,
        trial_budget: strategy.budget,
    })
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    (0..k).try_fold(1u128, |acc, i| Some(acc.checked_mul(n - i)? / (i + 1)))
}

/// Dimension `C(n + d, d) - (n + 1)^2` of the moduli space of degree-`d`
/// hypersurfaces in `P^n`.
pub fn moduli_dim(d: u32, n: u32) -> Result<i128> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let forms = binomial(n as u128 + d as u128, d as u128).ok_or(Error::Overflow("C(n+d, d)"))?;
    let forms = i128::try_from(forms).map_err(|_| Error::Overflow("C(n+d, d)"))?;
    let group = (n as i128 + 1).pow(2);
    Ok(forms - group)
}

/// Whether the `n`-dimensional family of hyperplane sections has more
/// parameters than the moduli of their isomorphism classes, `n > m(d, n-1)`.
pub fn sections_exceed_moduli(d: u32, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n: 0, d });
    }
    Ok(n as i128 > moduli_dim(d, n - 1)?)
}
