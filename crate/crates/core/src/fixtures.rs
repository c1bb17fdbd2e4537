//! Constructors for the explicit hypersurfaces used throughout the tests
//! and exposed by the CLI.

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{FieldSpec, Scalar};

fn power(nvars: usize, i: usize, e: u32) -> Vec<u32> {
    let mut exps = vec![0; nvars];
    exps[i] = e;
    exps
}

/// `x0^d + ... + xn^d`.
pub fn fermat(n: usize, d: u32, field: FieldSpec) -> Polynomial {
    let nvars = n + 1;
    let terms = (0..nvars).map(|i| (Monomial::new(power(nvars, i, d)), field.one()));
    Polynomial::from_terms(field, nvars, terms).expect("consistent arity")
}

/// `sum_i xi^d + sum_{j<n} xj^(d-1) x(j+1) + xn^(d-1) x0`: the Fermat
/// hypersurface plus a cyclic chain of mixed terms.
pub fn cyclic_fermat(n: usize, d: u32, field: FieldSpec) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, d });
    }
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let nvars = n + 1;
    let mut terms = Vec::with_capacity(2 * nvars);
    for i in 0..nvars {
        terms.push((Monomial::new(power(nvars, i, d)), field.one()));
        let mut mixed = power(nvars, i, d - 1);
        mixed[(i + 1) % nvars] = 1;
        terms.push((Monomial::new(mixed), field.one()));
    }
    Polynomial::from_terms(field, nvars, terms)
}

/// `x0^3 + x1^3 + x0*x1^2 + x1*x2^2 + x3^3 + x2*x4^2`, a smooth cubic
/// threefold whose section `x0 = 0` is smooth yet has a two-dimensional
/// criterion kernel.
pub fn cubic_threefold_example(field: FieldSpec) -> Polynomial {
    Polynomial::parse("x0^3 + x1^3 + x0*x1^2 + x1*x2^2 + x3^3 + x2*x4^2", 5, field)
        .expect("fixture parses")
}

/// `x0^3 + x0 * (a1 x1^2 + ... + a4 x4^2) + g(x1, ..., x4)`, the shape every
/// general cubic threefold takes in characteristic 0 after a change of
/// coordinates.
///
/// `g` is given in four variables and lands on `x1..x4`.
pub fn cubic_threefold_normal_form(
    a: &[Scalar; 4],
    g: &Polynomial,
    field: FieldSpec,
) -> Result<Polynomial> {
    if !field.is_rational() {
        return Err(Error::BadCharacteristic(field.characteristic()));
    }
    if g.nvars() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            found: g.nvars(),
        });
    }
    if g.field() != field {
        return Err(Error::FieldMismatch {
            left: field.characteristic(),
            right: g.field().characteristic(),
        });
    }
    if g.homogeneous_degree() != Some(3) {
        return Err(Error::NotHomogeneous);
    }
    let mut terms = vec![(Monomial::new(power(5, 0, 3)), field.one())];
    for (i, ai) in a.iter().enumerate() {
        if ai.field() != field {
            return Err(Error::FieldMismatch {
                left: field.characteristic(),
                right: ai.field().characteristic(),
            });
        }
        let mut exps = power(5, i + 1, 2);
        exps[0] = 1;
        terms.push((Monomial::new(exps), ai.clone()));
    }
    let head = Polynomial::from_terms(field, 5, terms)?;
    Ok(&head + &g.insert_var(0)?)
}
