//! Shared strategies and independent oracles for the integration tests.
#![allow(dead_code)]

pub mod gf;
pub mod oracle;

use hypersection::{FieldSpec, LinearChange, Matrix, Monomial, Polynomial, Scalar};
use proptest::prelude::*;

/// Characteristics covering the rationals, tiny primes, and both the
/// 64-bit and 128-bit modular multiplication paths.
pub const CHARACTERISTICS: [u64; 8] = [
    0,
    2,
    3,
    5,
    7,
    101,
    2_147_483_647,
    18_446_744_073_709_551_557,
];

pub fn field() -> impl Strategy<Value = FieldSpec> {
    proptest::sample::select(CHARACTERISTICS.to_vec()).prop_map(|p| FieldSpec::new(p).unwrap())
}

pub fn small_field() -> impl Strategy<Value = FieldSpec> {
    proptest::sample::select(vec![0u64, 2, 3, 5, 7, 101]).prop_map(|p| FieldSpec::new(p).unwrap())
}

/// A scalar built from a small numerator and denominator, reduced into
/// `field`.
pub fn scalar_in(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(move |(a, b)| {
        let b = field.from_i64(b);
        if b.is_zero() {
            field.from_i64(a)
        } else {
            field.from_i64(a).checked_div(&b).unwrap()
        }
    })
}

/// A full-range residue over `F_p`; small fractions over `Q`.
pub fn wide_scalar_in(field: FieldSpec) -> BoxedStrategy<Scalar> {
    match field.characteristic() {
        0 => scalar_in(field).boxed(),
        p => (0..p)
            .prop_map(move |r| field.from_bigint(&r.into()))
            .boxed(),
    }
}

pub fn field_and_scalars(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<Scalar>)> {
    field().prop_flat_map(move |f| (Just(f), proptest::collection::vec(wide_scalar_in(f), k)))
}

pub fn exponents(nvars: usize, max_degree: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max_degree, nvars)
        .prop_filter("degree bound", move |e| e.iter().sum::<u32>() <= max_degree)
}

pub fn polynomial_in(
    field: FieldSpec,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(
        (exponents(nvars, max_degree), scalar_in(field)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, c)| (Monomial::new(e), c));
        Polynomial::from_terms(field, nvars, terms).unwrap()
    })
}

/// A homogeneous form of degree `d`, built on a random subset of the
/// monomial basis.
pub fn form_in(
    field: FieldSpec,
    nvars: usize,
    d: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let basis = hypersection::monomial_basis(nvars, d);
    let len = basis.len();
    proptest::collection::vec((0..len, scalar_in(field)), 1..=max_terms).prop_map(move |picks| {
        let terms = picks.into_iter().map(|(i, c)| (basis[i].clone(), c));
        Polynomial::from_terms(field, nvars, terms).unwrap()
    })
}

/// A dense random form: every monomial of degree `d` gets a coefficient.
pub fn dense_form_in(field: FieldSpec, nvars: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    let basis = hypersection::monomial_basis(nvars, d);
    proptest::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        let terms = basis
            .iter()
            .cloned()
            .zip(cs.into_iter().map(|c| field.from_i64(c)));
        Polynomial::from_terms(field, nvars, terms).unwrap()
    })
}

pub fn matrix_in(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows).prop_map(
        move |rs| {
            let rows = rs
                .into_iter()
                .map(|r| r.into_iter().map(|c| field.from_i64(c)).collect())
                .collect();
            Matrix::from_rows(field, cols, rows).unwrap()
        },
    )
}

/// Matrices of small shape with a deliberately low rank part: the last rows
/// are combinations of the first ones often enough to exercise kernels.
pub fn field_and_matrix() -> impl Strategy<Value = (FieldSpec, Matrix)> {
    (small_field(), 1usize..=6, 1usize..=6)
        .prop_flat_map(|(f, r, c)| {
            (
                Just(f),
                matrix_in(f, r, c),
                proptest::collection::vec(-2i64..=2, r),
            )
        })
        .prop_map(|(f, m, mix)| {
            let mut m = m;
            if m.rows() > 1 && mix[0] != 0 {
                let last = m.rows() - 1;
                for c in 0..m.cols() {
                    let v = m.get(0, c) * &f.from_i64(mix[0])
                        + m.get(1.min(last), c) * &f.from_i64(mix[last]);
                    m.set(last, c, v);
                }
            }
            (f, m)
        })
}

pub fn invertible_change_in(field: FieldSpec, nvars: usize) -> impl Strategy<Value = LinearChange> {
    matrix_in(field, nvars, nvars).prop_filter_map("singular matrix", |m| LinearChange::new(m).ok())
}

/// An invertible change that maps `{x0 = 0}` to itself: `x0 -> c*x0` and
/// `xi -> (anything)*x0 + (invertible block)`.
pub fn x0_preserving_change_in(
    field: FieldSpec,
    nvars: usize,
) -> impl Strategy<Value = LinearChange> {
    (
        matrix_in(field, nvars, nvars),
        proptest::sample::select(vec![1i64, -1, 2, 3, -5]),
    )
        .prop_filter_map("singular matrix", move |(mut m, c)| {
            let c = field.from_i64(c);
            if c.is_zero() {
                return None;
            }
            m.set(0, 0, c);
            for j in 1..nvars {
                m.set(0, j, field.zero());
            }
            LinearChange::new(m).ok()
        })
}

pub fn x(field: FieldSpec, nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(field, nvars, i)
}
