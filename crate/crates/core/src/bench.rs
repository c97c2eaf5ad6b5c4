//! Error sweeps over the critical benchmark families.

use std::io::Write;

use crate::dd::DoubleDouble;
use crate::eig3::{AngleMethod, Settings, Tolerances};
use crate::error::Result;
use crate::invariants::{derived_invariants, InvariantRoute};
use crate::mat3::Mat3;
use crate::oracle::{delta_grid, make_test_matrix, CriticalCase, GroundTruth, TransformCase};
use crate::projectors::{decompose, projectors_frobenius_with, Projectors};
use crate::scalar::{Field, Scalar};

type Dd = DoubleDouble;

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub case: &'static str,
    pub transform: &'static str,
    pub gamma: Option<f64>,
    pub method: &'static str,
    pub delta: f64,
    pub quantity: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub abs_error: f64,
}

pub const CSV_HEADER: &str =
    "case,transform,gamma,method,delta,quantity,computed,reference,abs_error";

pub const QUANTITIES: [&str; 8] = [
    "Delta", "Delta_p", "Delta_q", "I1", "lambda_1", "lambda_2", "lambda_3", "E_l1",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub case: CriticalCase,
    pub transform: TransformCase,
    pub delta_start: f64,
    pub delta_stop: f64,
    pub points_per_decade: u32,
    pub methods: Vec<InvariantRoute>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            case: CriticalCase::DeltaToZero,
            transform: TransformCase::CaseI,
            delta_start: 1e-15,
            delta_stop: 1.0,
            points_per_decade: 4,
            methods: vec![InvariantRoute::Sop, InvariantRoute::Naive],
        }
    }
}

/// Pipeline measured for each method: the naive route pairs the classical
/// invariants with the arccos angle, the sop route uses the arctan angle.
///
/// Negative computed Δ or Δp are always clamped: the benchmark spectra are
/// real by construction.
pub fn bench_settings(route: InvariantRoute) -> Settings {
    let angle = match route {
        InvariantRoute::Naive => AngleMethod::Arccos,
        InvariantRoute::Sop => AngleMethod::Arctan,
    };
    Settings {
        route,
        angle,
        tolerances: Tolerances {
            clamp_p: f64::INFINITY,
            clamp_delta: f64::INFINITY,
            ..Tolerances::default()
        },
    }
}

/// `cuts[i]` is true when positions i and i + 1 are in different blocks.
type Cuts = [bool; 2];

fn cuts_of(p: &Projectors<f64>) -> Cuts {
    let mut cuts = [false; 2];
    let mut pos = 0;
    for t in &p.terms {
        pos += t.multiplicity;
        if pos < 3 {
            cuts[pos - 1] = true;
        }
    }
    cuts
}

/// Reference eigenvalues closer than `2^-90·scale` are one cluster.
fn reference_cuts(t: &GroundTruth) -> Cuts {
    let tol = 2f64.powi(-90) * t.matrix.max_abs();
    let l = t.lambda;
    [(l[1] - l[0]).to_f64() > tol, (l[2] - l[1]).to_f64() > tol]
}

fn blocks(cuts: Cuts) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &c) in cuts.iter().enumerate() {
        if c {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out.push(start..3);
    out
}

/// Reference projector onto the eigenvalues at `range`, given a partition
/// in which every singleton is separated from the rest.
fn reference_block(t: &GroundTruth, range: &std::ops::Range<usize>) -> Mat3<Dd> {
    let a = t.matrix.map(Dd::from);
    let single = |k: usize| {
        let p = projectors_frobenius_with(&a, t.lambda, f64::NEG_INFINITY).expect("no gap floor");
        p.terms[k].projector
    };
    match range.len() {
        3 => Mat3::identity(),
        1 => single(range.start),
        _ => {
            let other = if range.start == 0 { 2 } else { 0 };
            Mat3::identity() - single(other)
        }
    }
}

/// Summed entrywise absolute projector error over the common clusters of
/// the computed and reference spectra.
pub fn projector_l1_error(computed: &Projectors<f64>, truth: &GroundTruth) -> f64 {
    let c = cuts_of(computed);
    let r = reference_cuts(truth);
    let join = [c[0] && r[0], c[1] && r[1]];
    let mut pos_of_term = Vec::new();
    let mut pos = 0;
    for t in &computed.terms {
        pos_of_term.push(pos..pos + t.multiplicity);
        pos += t.multiplicity;
    }
    let mut err = Dd::ZERO;
    for block in blocks(join) {
        let sum = computed
            .terms
            .iter()
            .zip(&pos_of_term)
            .filter(|(_, p)| p.start >= block.start && p.end <= block.end)
            .fold(Mat3::zero(), |acc, (t, _)| acc + t.projector.map(Dd::from));
        let diff = sum - reference_block(truth, &block);
        err += diff.l1_norm();
    }
    err.to_f64()
}

fn abs_diff(computed: f64, reference: f64) -> f64 {
    (Dd::from(computed) - Dd::from(reference)).abs().to_f64()
}

/// Records for one grid point and one method.
pub fn bench_point(
    case: CriticalCase,
    transform: TransformCase,
    delta: f64,
    route: InvariantRoute,
) -> Result<Vec<BenchRecord>> {
    let (b, truth) = make_test_matrix(case, transform, delta)?;
    let settings = bench_settings(route);
    let inv = derived_invariants(&b, route);
    let dec = decompose(&b, &settings)?;
    let e_l1 = projector_l1_error(&dec.projectors, &truth);
    let l = dec.eigen.lambda;
    let values = [
        (inv.delta, truth.delta),
        (inv.delta_p, truth.delta_p),
        (inv.delta_q, truth.delta_q),
        (b.trace(), truth.invariants.i1),
        (l[0], truth.lambda[0]),
        (l[1], truth.lambda[1]),
        (l[2], truth.lambda[2]),
        (e_l1, Dd::ZERO),
    ];
    Ok(QUANTITIES
        .iter()
        .zip(values)
        .map(|(&quantity, (computed, reference))| {
            let reference = reference.to_f64();
            BenchRecord {
                case: case.name(),
                transform: transform.name(),
                gamma: transform.gamma(),
                method: route.name(),
                delta,
                quantity,
                computed,
                reference,
                abs_error: abs_diff(computed, reference),
            }
        })
        .collect())
}

/// Full sweep, rows sorted by (case, transform, method, delta, quantity).
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let grid = delta_grid(
        config.delta_start,
        config.delta_stop,
        config.points_per_decade,
    );
    let mut methods = config.methods.clone();
    methods.sort();
    methods.dedup();
    let mut out = Vec::new();
    for route in methods {
        for &d in &grid {
            out.extend(bench_point(config.case, config.transform, d, route)?);
        }
    }
    out.sort_by(|a, b| {
        (a.case, a.transform, a.method)
            .cmp(&(b.case, b.transform, b.method))
            .then(a.delta.total_cmp(&b.delta))
            .then(a.quantity.cmp(b.quantity))
    });
    Ok(out)
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

/// CSV with the fixed header, LF line endings and numbers in shortest
/// round-trip form.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.write_record([
            r.case.to_string(),
            r.transform.to_string(),
            r.gamma.map(num).unwrap_or_default(),
            r.method.to_string(),
            num(r.delta),
            r.quantity.to_string(),
            num(r.computed),
            num(r.reference),
            num(r.abs_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}
