//! Jacobian ideals `(f, df/dx0, ..., df/dxn)` and their graded pieces.
//!
//! A hypersurface is smooth exactly when its Jacobian ideal is irrelevant,
//! i.e. contains every monomial of some degree `t`. Once a graded piece is
//! full every higher piece is full too, so a degree scan may stop at the
//! first full piece.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::poly::{monomial_basis, Monomial, Polynomial};
use crate::scalar::{FieldSpec, Scalar};

/// `[f, df/dx0, ..., df/dxn]`.
///
/// `f` itself is always included: by the Euler formula it is redundant only
/// when the characteristic does not divide the degree.
pub fn jacobian_generators(f: &Polynomial) -> Result<Vec<Polynomial>> {
    match f.homogeneous_degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::NotHomogeneous),
    }
    let mut gens = Vec::with_capacity(f.nvars() + 1);
    gens.push(f.clone());
    for i in 0..f.nvars() {
        gens.push(f.partial_derivative(i)?);
    }
    Ok(gens)
}

/// The degree-`t` slice of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: u32,
    basis: Vec<Monomial>,
    span_matrix: Matrix,
    dimension: usize,
}

impl GradedPiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Column labels of the span matrix.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// One row per product `m * g` of a monomial with a generator.
    pub fn span_matrix(&self) -> &Matrix {
        &self.span_matrix
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Dimension of the quotient ring in this degree.
    pub fn codimension(&self) -> usize {
        self.basis.len() - self.dimension
    }

    pub fn is_full(&self) -> bool {
        self.dimension == self.basis.len()
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::new(&self.span_matrix)
    }

    /// Coordinates of a degree-`t` polynomial in [`GradedPiece::basis`].
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Scalar>> {
        if !p.is_homogeneous(self.degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.basis.iter().map(|m| p.coefficient(m)).collect())
    }
}

/// Degree-`t` piece of the ideal generated by `generators` in `nvars`
/// variables over `field`.
pub fn ideal_graded_piece(
    field: FieldSpec,
    nvars: usize,
    generators: &[Polynomial],
    t: u32,
) -> Result<GradedPiece> {
    let (basis, span_matrix) = span_matrix(field, nvars, generators, t)?;
    let dimension = span_matrix.rank();
    Ok(GradedPiece {
        degree: t,
        basis,
        span_matrix,
        dimension,
    })
}

fn span_matrix(
    field: FieldSpec,
    nvars: usize,
    generators: &[Polynomial],
    t: u32,
) -> Result<(Vec<Monomial>, Matrix)> {
    let basis = monomial_basis(nvars, t);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        if g.nvars() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: g.nvars(),
            });
        }
        if g.field() != field {
            return Err(Error::FieldMismatch {
                left: field.characteristic(),
                right: g.field().characteristic(),
            });
        }
        if g.is_zero() {
            continue;
        }
        let e = g
            .homogeneous_degree()
            .ok_or(Error::InhomogeneousGenerator(k))?;
        if e > t {
            continue;
        }
        for m in monomial_basis(nvars, t - e) {
            let mut row = vec![field.zero(); basis.len()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let cols = basis.len();
    let matrix = Matrix::from_rows(field, cols, rows)?;
    Ok((basis, matrix))
}

/// Degree past which the smoothness scan gives up: `(n + 2)(d - 1) - n` for
/// a degree-`d` form in `n + 1` variables.
pub fn smoothness_cap(nvars: usize, d: u32) -> u32 {
    let n = nvars.saturating_sub(1) as u32;
    ((n + 2) * d.saturating_sub(1)).saturating_sub(n)
}

/// Decides smoothness of the projective hypersurface `f = 0` with the
/// default degree cap.
pub fn is_smooth(f: &Polynomial) -> Result<bool> {
    is_smooth_with_cap(f, None)
}

/// As [`is_smooth`] with an explicit degree cap (default
/// [`smoothness_cap`]). A `true` answer is exact at any cap; a `false`
/// answer means no full piece exists up to the cap.
///
/// Fullness is monotone in the degree, so "full somewhere up to the cap" is
/// the same as "full at the cap". At most two degrees are examined. The first
/// is `t0 = (n + 1)(d - 2) + 1`. When `char ∤ d` the partials of a smooth form
/// are a regular sequence, so the quotient vanishes from `t0` on; a piece that
/// is not full there already proves a singular point and the cap is never
/// built. Otherwise the cap itself is the second degree.
pub fn is_smooth_with_cap(f: &Polynomial, cap: Option<u32>) -> Result<bool> {
    let d = match f.homogeneous_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::NotHomogeneous),
    };
    let nvars = f.nvars();
    let (gens, euler) = smoothness_generators(f, d)?;
    let cap = cap.unwrap_or_else(|| smoothness_cap(nvars, d)).max(d - 1);
    let t0 = nvars as u32 * d.saturating_sub(2) + 1;
    let first = t0.clamp(d - 1, cap);
    let field = f.field();
    let last = if euler && first == t0 { first } else { cap };
    let mut exact = None;
    for t in [first, last] {
        if exact.as_ref().is_some_and(|(done, _)| *done == t) || !enough_rows(nvars, &gens, t) {
            continue;
        }
        let (_, m) = span_matrix(field, nvars, &gens, t)?;
        if m.modular_full_rank_certificate() {
            return Ok(true);
        }
        exact = Some((t, m));
    }
    // The modular certificate is exact over F_p; over Q it can miss.
    Ok(match exact {
        Some((_, m)) => field.is_rational() && m.has_full_column_rank(),
        None => false,
    })
}

/// Whether the degree-`t` products of `gens` are at least as many as the
/// monomials they must span; if not, the piece cannot be full.
fn enough_rows(nvars: usize, gens: &[Polynomial], t: u32) -> bool {
    let count =
        |deg: u32| num_integer::binomial(nvars.max(1) as u128 - 1 + deg as u128, deg as u128);
    let rows: u128 = gens
        .iter()
        .filter_map(|g| g.homogeneous_degree())
        .filter(|&e| e <= t)
        .map(|e| count(t - e))
        .sum();
    rows >= count(t)
}

/// Jacobian generators, minus `f` when the Euler formula already puts it in
/// the ideal of the partials (`char ∤ d`). The span is unchanged. The flag
/// reports whether `f` was dropped.
fn smoothness_generators(f: &Polynomial, d: u32) -> Result<(Vec<Polynomial>, bool)> {
    let mut gens = jacobian_generators(f)?;
    let p = f.field().characteristic();
    let euler = p == 0 || !(d as u64).is_multiple_of(p);
    if euler {
        gens.remove(0);
    }
    Ok((gens, euler))
}

/// The smallest `t <= cap` whose piece of the Jacobian ideal is full,
/// found by trying every degree from `d - 1` upward.
pub fn first_full_degree(f: &Polynomial, cap: u32) -> Result<Option<u32>> {
    let d = match f.homogeneous_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::NotHomogeneous),
    };
    let gens = jacobian_generators(f)?;
    for t in (d - 1)..=cap {
        let (_, m) = span_matrix(f.field(), f.nvars(), &gens, t)?;
        if m.has_full_column_rank() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Checks the Euler identity `sum_i x_i df/dx_i = d f`.
pub fn euler_check(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let mut lhs = Polynomial::zero(f.field(), f.nvars());
    for i in 0..f.nvars() {
        let xi = Polynomial::var(f.field(), f.nvars(), i);
        lhs = &lhs + &(&xi * &f.partial_derivative(i)?);
    }
    Ok(lhs == f.scale(&f.field().from_i64(d as i64)))
}
