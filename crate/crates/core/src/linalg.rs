//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Pivoting takes the first nonzero entry in column order; exact arithmetic
//! needs nothing cleverer and the choice keeps echelon forms, and with them
//! kernel bases, reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{inv_mod, mul_mod, sub_mod, FieldSpec, Scalar};

/// Prime used for the modular full-rank shortcut over `Q` (2^61 - 1).
const SHORTCUT_PRIME: u64 = (1 << 61) - 1;

/// Row-major dense matrix with entries in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must have `cols` entries
    /// over `field`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ArityMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.characteristic(),
                        right: s.field().characteristic(),
                    });
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    /// Panics if `value` lives over another field.
    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "matrix entry field mismatch");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| dot(self.field, self.row(r), v))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let t = other.transpose();
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.entries[r * other.cols + c] = dot(self.field, self.row(r), t.row(c));
            }
        }
        out
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        self.eliminate(true)
    }

    pub fn rank(&self) -> usize {
        match self.field.characteristic() {
            0 => {
                let mut rows = self.integer_rows();
                echelon_integer(self.cols, &mut rows)
            }
            _ => self.eliminate(false).1.len(),
        }
    }

    /// Rows scaled by the lcm of their denominators. Row scaling keeps the
    /// rank.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .map(|s| s.as_rational().expect("rational entry").denom().clone())
                    .fold(BigInt::one(), |acc, d| acc.lcm(&d));
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().expect("rational entry");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether the rows span the whole coordinate space.
    ///
    /// Over `Q` the rows are first cleared of denominators and reduced modulo
    /// a 61-bit prime: full rank there implies full rank over `Q`. Only when
    /// the modular rank falls short does this pay for exact elimination.
    pub fn has_full_column_rank(&self) -> bool {
        if self.modular_full_rank_certificate() {
            return true;
        }
        self.field.is_rational() && self.rows >= self.cols && self.rank() == self.cols
    }

    /// `true` only when the rows certifiably span the whole space using
    /// modular arithmetic alone: exact over `F_p`, a sound one-sided test
    /// over `Q`.
    pub fn modular_full_rank_certificate(&self) -> bool {
        if self.rows < self.cols {
            return false;
        }
        match self.field.characteristic() {
            0 => {
                let (rows, cols, mut data) = self.cleared_mod(SHORTCUT_PRIME);
                echelon_mod(SHORTCUT_PRIME, rows, cols, &mut data, false).len() == cols
            }
            _ => self.rank() == self.cols,
        }
    }

    fn cleared_mod(&self, p: u64) -> (usize, usize, Vec<u64>) {
        let big_p = BigInt::from(p);
        let data = self
            .integer_rows()
            .into_iter()
            .flatten()
            .map(|v| v.mod_floor(&big_p).to_u64().expect("residue fits"))
            .collect();
        (self.rows, self.cols, data)
    }

    fn eliminate(&self, reduced: bool) -> (Matrix, Vec<usize>) {
        match self.field.characteristic() {
            0 => {
                let mut data: Vec<BigRational> = self
                    .entries
                    .iter()
                    .map(|s| s.as_rational().expect("rational entry").clone())
                    .collect();
                let pivots = echelon_rational(self.rows, self.cols, &mut data, reduced);
                let entries = data
                    .into_iter()
                    .map(|q| {
                        self.field
                            .ratio(q.numer(), q.denom())
                            .expect("nonzero denominator")
                    })
                    .collect();
                (self.with_entries(entries), pivots)
            }
            p => {
                let mut data: Vec<u64> = self
                    .entries
                    .iter()
                    .map(|s| s.residue().expect("modular entry"))
                    .collect();
                let pivots = echelon_mod(p, self.rows, self.cols, &mut data, reduced);
                let entries = data.into_iter().map(|v| self.field.from_u64(v)).collect();
                (self.with_entries(entries), pivots)
            }
        }
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Basis of the right null space, `cols - rank` vectors.
    ///
    /// The basis is itself returned in reduced echelon form: each vector has
    /// leading nonzero entry 1, and the vectors are ordered by the position of
    /// that entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return Vec::new();
        }
        let raw: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect();
        let (basis, pivots) = Matrix::from_rows(self.field, self.cols, raw)
            .expect("kernel vectors share the field")
            .rref();
        (0..pivots.len()).map(|i| basis.row(i).to_vec()).collect()
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.entries[r * 2 * n + c] = self.get(r, c).clone();
            }
            aug.entries[r * 2 * n + n + r] = self.field.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.entries[r * n + c] = red.get(r, n + c).clone();
            }
        }
        Some(inv)
    }
}

fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// The span of a set of row vectors, kept in reduced echelon form so that
/// vectors can be reduced to a unique normal form modulo the span.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(m.field(), m.cols(), rows).expect("rows of rref");
        RowSpace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the span: zero on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.basis.cols(), "vector length mismatch");
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o = &*o - &(&factor * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}

/// In-place (reduced) row echelon form over `F_p`; returns pivot columns.
pub(crate) fn echelon_mod(
    p: u64,
    rows: usize,
    cols: usize,
    data: &mut [u64],
    reduced: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for j in c..cols {
                data.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c], p);
        for j in c..cols {
            data[r * cols + j] = mul_mod(data[r * cols + j], inv, p);
        }
        let nonzero: Vec<usize> = (c..cols).filter(|&j| data[r * cols + j] != 0).collect();
        let targets = if reduced { 0..rows } else { r + 1..rows };
        for i in targets {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            for &j in &nonzero {
                let prod = mul_mod(factor, data[r * cols + j], p);
                data[i * cols + j] = sub_mod(data[i * cols + j], prod, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free forward elimination over the integers, keeping every row
/// primitive (content 1). Returns the rank.
fn echelon_integer(cols: usize, rows: &mut [Vec<BigInt>]) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        // Smallest pivot in absolute value limits coefficient growth; the
        // choice is invisible since only the rank leaves this function.
        let Some(found) = (rank..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].magnitude().cmp(rows[b][c].magnitude()))
        else {
            continue;
        };
        rows.swap(found, rank);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let keep = pivot / &g;
            let take = &row[c] / &g;
            row[c] = BigInt::zero();
            if !keep.is_one() {
                for v in row[c + 1..].iter_mut().filter(|v| !v.is_zero()) {
                    *v *= &keep;
                }
            }
            for &j in &support {
                row[j] -= &take * &pivot_row[j];
            }
            let content = row
                .iter()
                .filter(|v| !v.is_zero())
                .fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for v in row.iter_mut().filter(|v| !v.is_zero()) {
                    *v /= &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn echelon_rational(
    rows: usize,
    cols: usize,
    data: &mut [BigRational],
    reduced: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if found != r {
            for j in c..cols {
                data.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = data[r * cols + c].recip();
        for j in c..cols {
            if !data[r * cols + j].is_zero() {
                data[r * cols + j] = &data[r * cols + j] * &inv;
            }
        }
        let nonzero: Vec<usize> = (c..cols)
            .filter(|&j| !data[r * cols + j].is_zero())
            .collect();
        let targets = if reduced { 0..rows } else { r + 1..rows };
        for i in targets {
            if i == r || data[i * cols + c].is_zero() {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for &j in &nonzero {
                let prod = &factor * &data[r * cols + j];
                data[i * cols + j] -= prod;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
