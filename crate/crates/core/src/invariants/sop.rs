//! Coefficient tables of the condensed sum-of-products forms.
//!
//! The discriminant is `x̄ᵀ D ȳ` with 14 cubic factor polynomials per side,
//! and `Δp = ½ x̄_pᵀ D_p ȳ_p` with 6 linear ones. Polynomials are stored as
//! data in the order they are printed, including the grouped differences of
//! the last discriminant row, and are evaluated term by term left to right.

use crate::mat3::Mat3;
use crate::scalar::Field;

/// A polynomial in the matrix entries: a signed sum of products.
pub type Poly = &'static [Term];

#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub coef: i32,
    pub factors: &'static [Factor],
}

#[derive(Debug, Clone, Copy)]
pub enum Factor {
    /// One-based entry `A_ij`.
    Entry(u8, u8),
    /// A parenthesised sub-polynomial.
    Group(Poly),
}

/// All tables needed by the sum-of-products invariants.
#[derive(Debug, Clone, Copy)]
pub struct SopTables {
    pub x: [Poly; 14],
    pub y: [Poly; 14],
    pub d: [i32; 14],
    pub xp: [Poly; 6],
    pub yp: [Poly; 6],
    pub dp: [i32; 6],
}

/// Product multipliers of the discriminant form.
pub const D: [i32; 14] = [9, 6, 6, 6, 8, 8, 8, 2, 2, 2, 2, 2, 2, 1];

/// Product multipliers of the Δp form.
pub const DP: [i32; 6] = [6, 6, 6, 1, 1, 1];

const fn t(coef: i32, factors: &'static [Factor]) -> Term {
    Term { coef, factors }
}

const A11: Factor = Factor::Entry(1, 1);
const A12: Factor = Factor::Entry(1, 2);
const A13: Factor = Factor::Entry(1, 3);
const A21: Factor = Factor::Entry(2, 1);
const A22: Factor = Factor::Entry(2, 2);
const A23: Factor = Factor::Entry(2, 3);
const A31: Factor = Factor::Entry(3, 1);
const A32: Factor = Factor::Entry(3, 2);
const A33: Factor = Factor::Entry(3, 3);

// shared by x̄ and ȳ
const DIAG_ROW: Poly = &[
    t(
        1,
        &[A11, A11, Factor::Group(&[t(1, &[A22]), t(-1, &[A33])])],
    ),
    t(
        1,
        &[A22, A22, Factor::Group(&[t(1, &[A33]), t(-1, &[A11])])],
    ),
    t(
        1,
        &[A33, A33, Factor::Group(&[t(1, &[A11]), t(-1, &[A22])])],
    ),
    t(
        1,
        &[A11, Factor::Group(&[t(1, &[A13, A31]), t(-1, &[A12, A21])])],
    ),
    t(
        1,
        &[A22, Factor::Group(&[t(1, &[A12, A21]), t(-1, &[A23, A32])])],
    ),
    t(
        1,
        &[A33, Factor::Group(&[t(1, &[A23, A32]), t(-1, &[A13, A31])])],
    ),
];

pub static SOP_TABLES: SopTables = SopTables {
    x: [
        &[t(1, &[A12, A23, A31]), t(-1, &[A13, A21, A32])],
        &[
            t(1, &[A12, A12, A23]),
            t(-1, &[A12, A13, A22]),
            t(1, &[A12, A13, A33]),
            t(-1, &[A13, A13, A32]),
        ],
        &[
            t(1, &[A11, A12, A32]),
            t(-1, &[A12, A12, A31]),
            t(-1, &[A12, A32, A33]),
            t(1, &[A13, A32, A32]),
        ],
        &[
            t(1, &[A11, A13, A23]),
            t(1, &[A12, A23, A23]),
            t(-1, &[A13, A13, A21]),
            t(-1, &[A13, A22, A23]),
        ],
        &[
            t(1, &[A11, A12, A23]),
            t(-1, &[A12, A13, A21]),
            t(-1, &[A12, A23, A33]),
            t(1, &[A13, A23, A32]),
        ],
        &[
            t(1, &[A11, A13, A32]),
            t(-1, &[A12, A13, A31]),
            t(1, &[A12, A23, A32]),
            t(-1, &[A13, A22, A32]),
        ],
        &[
            t(1, &[A12, A21, A23]),
            t(-1, &[A13, A21, A22]),
            t(1, &[A13, A21, A33]),
            t(-1, &[A13, A23, A31]),
        ],
        &[
            t(1, &[A11, A11, A23]),
            t(-1, &[A11, A13, A21]),
            t(-1, &[A11, A22, A23]),
            t(-1, &[A11, A23, A33]),
            t(1, &[A12, A21, A23]),
            t(1, &[A13, A21, A33]),
            t(1, &[A22, A23, A33]),
            t(-1, &[A23, A23, A32]),
        ],
        &[
            t(1, &[A11, A11, A23]),
            t(-1, &[A11, A13, A21]),
            t(-1, &[A11, A22, A23]),
            t(-1, &[A11, A23, A33]),
            t(1, &[A13, A21, A22]),
            t(1, &[A13, A23, A31]),
            t(1, &[A22, A23, A33]),
            t(-1, &[A23, A23, A32]),
        ],
        &[
            t(1, &[A11, A12, A22]),
            t(-1, &[A11, A12, A33]),
            t(-1, &[A12, A12, A21]),
            t(1, &[A12, A13, A31]),
            t(-1, &[A12, A22, A33]),
            t(1, &[A12, A33, A33]),
            t(1, &[A13, A22, A32]),
            t(-1, &[A13, A32, A33]),
        ],
        &[
            t(1, &[A11, A12, A22]),
            t(-1, &[A11, A12, A33]),
            t(1, &[A11, A13, A32]),
            t(-1, &[A12, A12, A21]),
            t(-1, &[A12, A22, A33]),
            t(1, &[A12, A23, A32]),
            t(1, &[A12, A33, A33]),
            t(-1, &[A13, A32, A33]),
        ],
        &[
            t(1, &[A11, A12, A23]),
            t(-1, &[A11, A13, A22]),
            t(1, &[A11, A13, A33]),
            t(-1, &[A12, A22, A23]),
            t(-1, &[A13, A13, A31]),
            t(1, &[A13, A22, A22]),
            t(-1, &[A13, A22, A33]),
            t(1, &[A13, A23, A32]),
        ],
        &[
            t(1, &[A11, A13, A22]),
            t(-1, &[A11, A13, A33]),
            t(-1, &[A12, A13, A21]),
            t(1, &[A12, A22, A23]),
            t(-1, &[A12, A23, A33]),
            t(1, &[A13, A13, A31]),
            t(-1, &[A13, A22, A22]),
            t(1, &[A13, A22, A33]),
        ],
        DIAG_ROW,
    ],
    y: [
        &[t(1, &[A13, A21, A32]), t(-1, &[A12, A23, A31])],
        &[
            t(1, &[A21, A21, A32]),
            t(-1, &[A21, A22, A31]),
            t(1, &[A21, A31, A33]),
            t(-1, &[A23, A31, A31]),
        ],
        &[
            t(1, &[A11, A21, A23]),
            t(-1, &[A13, A21, A21]),
            t(-1, &[A21, A23, A33]),
            t(1, &[A23, A23, A31]),
        ],
        &[
            t(1, &[A11, A31, A32]),
            t(-1, &[A12, A31, A31]),
            t(1, &[A21, A32, A32]),
            t(-1, &[A22, A31, A32]),
        ],
        &[
            t(1, &[A11, A21, A32]),
            t(-1, &[A12, A21, A31]),
            t(-1, &[A21, A32, A33]),
            t(1, &[A23, A31, A32]),
        ],
        &[
            t(1, &[A11, A23, A31]),
            t(-1, &[A13, A21, A31]),
            t(1, &[A21, A23, A32]),
            t(-1, &[A22, A23, A31]),
        ],
        &[
            t(1, &[A12, A21, A32]),
            t(-1, &[A12, A22, A31]),
            t(1, &[A12, A31, A33]),
            t(-1, &[A13, A31, A32]),
        ],
        &[
            t(1, &[A11, A11, A32]),
            t(-1, &[A11, A12, A31]),
            t(-1, &[A11, A22, A32]),
            t(-1, &[A11, A32, A33]),
            t(1, &[A12, A21, A32]),
            t(1, &[A12, A31, A33]),
            t(1, &[A22, A32, A33]),
            t(-1, &[A23, A32, A32]),
        ],
        &[
            t(1, &[A11, A11, A32]),
            t(-1, &[A11, A12, A31]),
            t(-1, &[A11, A22, A32]),
            t(-1, &[A11, A32, A33]),
            t(1, &[A12, A22, A31]),
            t(1, &[A13, A31, A32]),
            t(1, &[A22, A32, A33]),
            t(-1, &[A23, A32, A32]),
        ],
        &[
            t(1, &[A11, A21, A22]),
            t(-1, &[A11, A21, A33]),
            t(-1, &[A12, A21, A21]),
            t(1, &[A13, A21, A31]),
            t(-1, &[A21, A22, A33]),
            t(1, &[A21, A33, A33]),
            t(1, &[A22, A23, A31]),
            t(-1, &[A23, A31, A33]),
        ],
        &[
            t(1, &[A11, A21, A22]),
            t(-1, &[A11, A21, A33]),
            t(1, &[A11, A23, A31]),
            t(-1, &[A12, A21, A21]),
            t(-1, &[A21, A22, A33]),
            t(1, &[A21, A23, A32]),
            t(1, &[A21, A33, A33]),
            t(-1, &[A23, A31, A33]),
        ],
        &[
            t(1, &[A11, A21, A32]),
            t(-1, &[A11, A22, A31]),
            t(1, &[A11, A31, A33]),
            t(-1, &[A13, A31, A31]),
            t(-1, &[A21, A22, A32]),
            t(1, &[A22, A22, A31]),
            t(-1, &[A22, A31, A33]),
            t(1, &[A23, A31, A32]),
        ],
        &[
            t(1, &[A11, A22, A31]),
            t(-1, &[A11, A31, A33]),
            t(-1, &[A12, A21, A31]),
            t(1, &[A13, A31, A31]),
            t(1, &[A21, A22, A32]),
            t(-1, &[A21, A32, A33]),
            t(-1, &[A22, A22, A31]),
            t(1, &[A22, A31, A33]),
        ],
        DIAG_ROW,
    ],
    d: D,
    xp: [
        &[t(1, &[A21])],
        &[t(1, &[A31])],
        &[t(1, &[A32])],
        &[t(-1, &[A11]), t(1, &[A22])],
        &[t(-1, &[A11]), t(1, &[A33])],
        &[t(-1, &[A22]), t(1, &[A33])],
    ],
    yp: [
        &[t(1, &[A12])],
        &[t(1, &[A13])],
        &[t(1, &[A23])],
        &[t(-1, &[A11]), t(1, &[A22])],
        &[t(-1, &[A11]), t(1, &[A33])],
        &[t(-1, &[A22]), t(1, &[A33])],
    ],
    dp: DP,
};

impl Factor {
    fn eval<T: Field>(&self, a: &Mat3<T>) -> T {
        match *self {
            Factor::Entry(i, j) => a.entry(i as usize, j as usize),
            Factor::Group(p) => eval_poly(p, a),
        }
    }
}

impl Term {
    fn eval<T: Field>(&self, a: &Mat3<T>) -> T {
        let mut factors = self.factors.iter();
        let first = factors.next().map_or(T::one(), |f| f.eval(a));
        factors.fold(first, |acc, f| acc * f.eval(a))
    }
}

/// Evaluates a table polynomial, summing terms in stored order.
pub fn eval_poly<T: Field>(poly: Poly, a: &Mat3<T>) -> T {
    let mut acc: Option<T> = None;
    for term in poly {
        let p = term.eval(a);
        acc = Some(match (acc, term.coef) {
            (None, 1) => p,
            (None, -1) => -p,
            (None, c) => T::from_i32(c) * p,
            (Some(s), 1) => s + p,
            (Some(s), -1) => s - p,
            (Some(s), c) => s + T::from_i32(c) * p,
        });
    }
    acc.unwrap_or_else(T::zero)
}

/// Weighted inner product `Σ_m w_m · x_m · y_m`, accumulated in order.
pub fn weighted_dot<T: Field>(w: &[i32], x: &[T], y: &[T]) -> T {
    w.iter()
        .zip(x.iter().zip(y))
        .fold(T::zero(), |acc, (&w, (&x, &y))| {
            acc + T::from_i32(w) * (x * y)
        })
}

/// A monomial as sorted one-based entry indices with an integer coefficient.
pub type Monomial = (i64, Vec<(u8, u8)>);

/// Expands a table polynomial into a canonical list of monomials.
pub fn expand(poly: Poly) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for term in poly {
        let mut partial: Vec<Monomial> = vec![(term.coef as i64, Vec::new())];
        for f in term.factors {
            let choices: Vec<Monomial> = match *f {
                Factor::Entry(i, j) => vec![(1, vec![(i, j)])],
                Factor::Group(p) => expand(p),
            };
            let mut next = Vec::new();
            for (c, m) in &partial {
                for (c2, m2) in &choices {
                    let mut mm = m.clone();
                    mm.extend_from_slice(m2);
                    next.push((c * c2, mm));
                }
            }
            partial = next;
        }
        for (c, mut m) in partial {
            m.sort_unstable();
            out.push((c, m));
        }
    }
    // merge like monomials
    out.sort_by(|a, b| a.1.cmp(&b.1));
    let mut merged: Vec<Monomial> = Vec::new();
    for (c, m) in out {
        match merged.last_mut() {
            Some((c0, m0)) if *m0 == m => *c0 += c,
            _ => merged.push((c, m)),
        }
    }
    merged.retain(|(c, _)| *c != 0);
    merged
}
