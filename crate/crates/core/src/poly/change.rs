use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::FieldSpec;

/// An invertible linear substitution `x_i -> sum_j M[i][j] x_j`.
///
/// Substituting `C` and then `C.inverse()` gives back the original
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::ArityMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let inverse = matrix.inverse().ok_or(Error::NotInvertible)?;
        debug_assert_eq!(
            matrix.mul(&inverse),
            Matrix::identity(matrix.field(), matrix.rows())
        );
        Ok(LinearChange { matrix, inverse })
    }

    pub fn identity(field: FieldSpec, nvars: usize) -> Self {
        let id = Matrix::identity(field, nvars);
        LinearChange {
            matrix: id.clone(),
            inverse: id,
        }
    }

    /// `x_i -> x_{targets[i]}`; `targets` must be a permutation.
    pub fn permutation(field: FieldSpec, targets: &[usize]) -> Result<Self> {
        let n = targets.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &t) in targets.iter().enumerate() {
            if t >= n {
                return Err(Error::IndexOutOfRange { index: t, nvars: n });
            }
            m.set(i, t, field.one());
        }
        LinearChange::new(m)
    }

    pub fn nvars(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// The change equivalent to substituting `self` and then `next`.
    pub fn then(&self, next: &LinearChange) -> LinearChange {
        LinearChange {
            matrix: self.matrix.mul(&next.matrix),
            inverse: next.inverse.mul(&self.inverse),
        }
    }

    /// The linear form each variable is replaced by.
    pub fn images(&self) -> Vec<Polynomial> {
        let n = self.nvars();
        (0..n)
            .map(|i| {
                let terms = (0..n).map(|j| (Monomial::var(n, j), self.matrix.get(i, j).clone()));
                Polynomial::from_terms(self.field(), n, terms).expect("matrix entries share field")
            })
            .collect()
    }
}

impl Polynomial {
    /// Replaces every variable by its image under `change`.
    pub fn substitute_linear(&self, change: &LinearChange) -> Result<Polynomial> {
        if change.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: change.nvars(),
            });
        }
        if change.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: change.field().characteristic(),
            });
        }
        let images = change.images();
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| {
                vec![Polynomial::constant(
                    self.field,
                    self.nvars,
                    self.field.one(),
                )]
            })
            .collect();
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.field, self.nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }
}
