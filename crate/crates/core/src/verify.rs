//! Randomized property suites with a max-violation report.
//!
//! Every trial draws an exactly known test matrix `U Λ U⁻¹` (rational U with
//! entries in [−2, 2], eigenvalue gaps ≥ 10⁻²) and checks it against the
//! library. All suites share one seeded generator, so a report is a pure
//! function of `(seed, trials)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dd::DoubleDouble;
use crate::eig3::{eigenvalues, Settings};
use crate::invariants::{
    delta_pq_naive, deltap_sop_with, deltaq_subdisc_with, discriminant_gram, discriminant_sop_with,
    principal_invariants, subdiscriminant, MultiIndex, SopTables, SOP_TABLES,
};
use crate::mat3::Mat3;
use crate::oracle::{random_case, reference_invariants, RandomCase};
use crate::projectors::{decompose, projectors_frobenius};
use crate::scalar::{Field, Scalar};

type Dd = DoubleDouble;

pub const MIN_GAP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    Identity,
    Residual,
    Gradient,
    Oracle,
    Subdiscriminant,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::Residual => "residual",
            Suite::Gradient => "gradient",
            Suite::Oracle => "oracle",
            Suite::Subdiscriminant => "subdiscriminant",
        }
    }
}

/// Largest violation seen for one property.
///
/// `max_violation` is the raw measured quantity. Pass/fail is decided on
/// `max_scaled`, the violation divided by the error scale expected for that
/// trial (see [`Suite`] docs on [`run`]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub name: &'static str,
    pub max_violation: f64,
    pub max_scaled: f64,
    pub tolerance: f64,
    /// Trials that failed to produce a decomposition at all.
    pub errors: usize,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.errors == 0 && self.max_scaled <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn suite_passed(&self, suite: Suite) -> bool {
        self.properties
            .iter()
            .filter(|p| p.suite == suite)
            .all(PropertyResult::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

struct Tracker {
    props: Vec<PropertyResult>,
}

fn worse(v: f64, than: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v.max(than)
    }
}

impl Tracker {
    fn new() -> Self {
        let props = PROPERTIES
            .iter()
            .map(|&(suite, name, tolerance)| PropertyResult {
                suite,
                name,
                max_violation: 0.0,
                max_scaled: 0.0,
                tolerance,
                errors: 0,
            })
            .collect();
        Self { props }
    }

    fn record(&mut self, name: &str, v: f64, scale: f64) {
        let p = self
            .props
            .iter_mut()
            .find(|p| p.name == name)
            .expect("registered property");
        p.max_violation = worse(v, p.max_violation);
        p.max_scaled = worse(v / scale, p.max_scaled);
    }

    fn error(&mut self, suite: Suite) {
        for p in self.props.iter_mut().filter(|p| p.suite == suite) {
            p.errors += 1;
        }
    }
}

/// Tolerance, in units of the per-trial error scale, for the closed-form
/// suites.
pub const MODEL_TOL: f64 = 64.0;

/// Tolerance for the sub-discriminant identities, relative to the
/// absolute-value magnitude of the formulas.
pub const SUBDISC_TOL: f64 = 32.0 * f64::EPSILON;

const PROPERTIES: [(Suite, &str, f64); 14] = [
    (Suite::Identity, "sum_is_identity", MODEL_TOL),
    (Suite::Identity, "idempotent_orthogonal", MODEL_TOL),
    (Suite::Identity, "trace_is_one", MODEL_TOL),
    (Suite::Identity, "det_is_zero", MODEL_TOL),
    (Suite::Identity, "reconstruction", MODEL_TOL),
    (Suite::Residual, "eigen_residual", MODEL_TOL),
    (Suite::Gradient, "finite_difference", MODEL_TOL),
    (Suite::Oracle, "eigenvalues", MODEL_TOL),
    (Suite::Oracle, "projectors", MODEL_TOL),
    (Suite::Oracle, "frobenius", MODEL_TOL),
    (Suite::Subdiscriminant, "d0_1_is_i1", SUBDISC_TOL),
    (Suite::Subdiscriminant, "d01_01_is_2deltap", SUBDISC_TOL),
    (
        Suite::Subdiscriminant,
        "deltaq_from_subdiscriminants",
        SUBDISC_TOL,
    ),
    (Suite::Subdiscriminant, "sop_delta_is_gram", SUBDISC_TOL),
];

fn max_diff(a: &Mat3<f64>, b: &Mat3<f64>) -> f64 {
    (*a - *b).max_abs()
}

/// Sensitivity of the closed-form eigenvalues: `max_abs(A)⁶ / Δ`, at least 1.
///
/// The discriminant is computed to an absolute accuracy near `ε max_abs(A)⁶`,
/// which for non-normal matrices can far exceed `ε Δ`.
pub fn discriminant_condition(a: &Mat3<f64>, lambda: [f64; 3]) -> f64 {
    let v = (lambda[0] - lambda[1]) * (lambda[0] - lambda[2]) * (lambda[1] - lambda[2]);
    (a.max_abs().powi(6) / (v * v)).max(1.0)
}

/// Largest exact projector entry, at least 1.
fn projector_scale(c: &RandomCase) -> f64 {
    c.projectors.iter().map(|p| p.max_abs()).fold(1.0, f64::max)
}

fn check_projectors(t: &mut Tracker, c: &RandomCase, settings: &Settings) {
    let a = c.matrix;
    let s = a.max_abs();
    let cond = discriminant_condition(&a, c.lambda);
    let pm = projector_scale(c);
    let unit = f64::EPSILON * cond * pm * pm;
    let Ok(dec) = decompose(&a, settings) else {
        for suite in [Suite::Identity, Suite::Residual, Suite::Oracle] {
            t.error(suite);
        }
        return;
    };
    let p = &dec.projectors;
    if p.terms.len() != 3 {
        t.error(Suite::Identity);
        return;
    }
    t.record(
        "sum_is_identity",
        max_diff(&p.sum(), &Mat3::identity()),
        unit,
    );
    t.record("reconstruction", max_diff(&p.reconstruct(), &a), unit * s);
    for (i, ti) in p.terms.iter().enumerate() {
        t.record("trace_is_one", (ti.projector.trace() - 1.0).abs(), unit);
        t.record("det_is_zero", ti.projector.det().abs(), unit * pm);
        let r = a * ti.projector - ti.projector.scale(ti.lambda);
        t.record("eigen_residual", r.max_abs(), unit * s);
        for (j, tj) in p.terms.iter().enumerate() {
            let want = if i == j { tj.projector } else { Mat3::zero() };
            let v = max_diff(&(ti.projector * tj.projector), &want);
            t.record("idempotent_orthogonal", v, unit * pm);
        }
    }

    let lambda = [0, 1, 2].map(|k| p.terms[k].lambda);
    match projectors_frobenius(&a, lambda) {
        Ok(f) => {
            for k in 0..3 {
                let v = max_diff(&p.terms[k].projector, &f.terms[k].projector);
                t.record("frobenius", v, unit);
            }
        }
        Err(_) => t.error(Suite::Oracle),
    }
    let truth = match reference_invariants(&a) {
        Ok(truth) => truth,
        Err(_) => {
            t.error(Suite::Oracle);
            return;
        }
    };
    for (l, r) in lambda.iter().zip(truth.lambda) {
        let err = (Dd::from(*l) - r).abs().to_f64();
        t.record("eigenvalues", err, f64::EPSILON * cond * s);
    }
    match truth.projectors() {
        Some(e) => {
            for (term, ek) in p.terms.iter().zip(e) {
                let d = (term.projector.map(Dd::from) - ek).max_abs();
                t.record("projectors", d.to_f64(), unit);
            }
        }
        None => t.error(Suite::Oracle),
    }
}

/// Dual-number projectors against central differences of the eigenvalues
/// evaluated in double-double, relative to the largest projector entry.
pub fn gradient_error(a: &Mat3<f64>, settings: &Settings) -> Option<f64> {
    let dec = decompose(a, settings).ok()?;
    if dec.projectors.terms.len() != 3 {
        return None;
    }
    let ad = a.map(Dd::from);
    let h = Dd::from(1e-12 * a.max_abs());
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut ap = ad;
            ap[(i, j)] += h;
            let mut am = ad;
            am[(i, j)] -= h;
            let lp = eigenvalues(&ap, settings).ok()?.lambda;
            let lm = eigenvalues(&am, settings).ok()?.lambda;
            for (k, term) in dec.projectors.terms.iter().enumerate() {
                let fd = ((lp[k] - lm[k]) / (h + h)).to_f64();
                let norm = term.projector.max_abs().max(1.0);
                worst = worse((fd - term.projector[(j, i)]).abs() / norm, worst);
            }
        }
    }
    Some(worst)
}

/// Absolute-value magnitudes of `I1, Δp, Δq, Δ` evaluated on `|A|`.
fn magnitudes(a: &Mat3<f64>) -> [f64; 4] {
    let m = a.map(f64::abs);
    let i1 = m.trace();
    let i2 = m[(0, 0)] * m[(1, 1)]
        + m[(0, 1)] * m[(1, 0)]
        + m[(0, 0)] * m[(2, 2)]
        + m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)]
        + m[(1, 2)] * m[(2, 1)];
    // permanent
    let i3 = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] + m[(1, 2)] * m[(2, 1)])
        + m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] + m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] + m[(1, 1)] * m[(2, 0)]);
    let dp = i1 * i1 + 3.0 * i2;
    let dq = 2.0 * i1.powi(3) + 9.0 * i1 * i2 + 27.0 * i3;
    [i1, dp, dq, (4.0 * dp.powi(3) + dq * dq) / 27.0]
}

/// Sub-discriminant identity residuals relative to [`magnitudes`]:
/// `Δ_(0)(1) = I1`, `Δ_(0,1)(0,1) = 2Δp`, `3Δ_(0,1)(0,2) − 4I1Δp = Δq`, and
/// the sum-of-products Δ against the trace-Gram determinant.
pub fn subdiscriminant_violations(a: &Mat3<f64>, tables: &SopTables) -> [f64; 4] {
    let idx = |e: &[u32]| MultiIndex::new(e).expect("valid multi-index");
    let sub = |k: &[u32], l: &[u32]| subdiscriminant(a, &idx(k), &idx(l)).expect("power ≤ 4");
    let [mi1, mdp, mdq, md] = magnitudes(a).map(|x| x.max(f64::MIN_POSITIVE));
    let (_, dq_naive) = delta_pq_naive(&principal_invariants(a));
    [
        (sub(&[0], &[1]) - a.trace()).abs() / mi1,
        (sub(&[0, 1], &[0, 1]) - 2.0 * deltap_sop_with(a, tables)).abs() / (2.0 * mdp),
        (deltaq_subdisc_with(a, tables) - dq_naive).abs() / mdq,
        (discriminant_sop_with(a, tables) - discriminant_gram(a)).abs() / md,
    ]
}

/// Runs every suite with the built-in coefficient tables.
pub fn run(seed: u64, trials: usize) -> VerifyReport {
    run_with_tables(seed, trials, &SOP_TABLES)
}

/// Runs every suite, evaluating the sum-of-products forms with `tables`.
///
/// Closed-form suites are scaled by `ε · max_abs(A)⁶/Δ · P²` (times
/// `max_abs(A)` or `P` where the quantity carries it), P the largest exact
/// projector entry; eigenvalue errors by `ε · max_abs(A)⁶/Δ · max_abs(A)`.
pub fn run_with_tables(seed: u64, trials: usize, tables: &SopTables) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    let settings = Settings::default();
    let names = [
        "d0_1_is_i1",
        "d01_01_is_2deltap",
        "deltaq_from_subdiscriminants",
        "sop_delta_is_gram",
    ];
    for _ in 0..trials {
        let c = random_case(&mut rng, MIN_GAP);
        check_projectors(&mut t, &c, &settings);
        match gradient_error(&c.matrix, &settings) {
            Some(v) => {
                let pm = projector_scale(&c);
                let unit = f64::EPSILON * discriminant_condition(&c.matrix, c.lambda) * pm;
                t.record("finite_difference", v, unit)
            }
            None => t.error(Suite::Gradient),
        }
        for (name, v) in names
            .iter()
            .zip(subdiscriminant_violations(&c.matrix, tables))
        {
            t.record(name, v, 1.0);
        }
    }
    VerifyReport {
        seed,
        trials,
        properties: t.props,
    }
}
