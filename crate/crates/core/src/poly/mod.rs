//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Monomials are ordered graded-lexicographically. Printing, monomial bases
//! and therefore matrix column layouts all list monomials from the largest
//! down (`x0^2, x0*x1, x1^2`), so every output is deterministic.

mod change;
mod dual;
mod parse;

pub use change::LinearChange;
pub use dual::{first_order_section, Dual};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A monomial `x0^e0 * ... * x{n-1}^e{n-1}`.
///
/// The derived order compares the cached degree first and the exponent
/// vectors lexicographically second, which is exactly graded lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { degree, exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn fmt_with_offset(&self, f: &mut fmt::Formatter<'_>, offset: usize) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + offset)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of `degree` in `nvars` variables, largest first.
///
/// There are `C(nvars - 1 + degree, degree)` of them.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, nvars: usize, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(remaining);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, nvars, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i`. Panics if `i >= nvars`.
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Polynomial::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    /// Sums `terms`, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.characteristic(),
                    right: c.field().characteristic(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Parses the textual grammar; see [`parse::parse_poly`].
    pub fn parse(text: &str, nvars: usize, field: FieldSpec) -> Result<Self> {
        parse::parse_poly(text, nvars, field)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The common degree of all monomials, if they share one. The zero
    /// polynomial has none.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// Whether every monomial has degree `d`; vacuously true for zero.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: c.field().characteristic(),
            });
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.field, self.nvars));
        }
        Ok(Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        })
    }

    /// Panics on a field mismatch.
    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.checked_scale(c).expect("polynomial field mismatch")
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(self.field, self.nvars, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in `x_i`; exponents are multiplied as field
    /// elements, so `d/dx (x^p) = 0` over `F_p`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        self.check_index(i)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * &self.field.from_i64(e as i64));
        }
        Ok(out)
    }

    /// Sets `x_i = 0` and drops the variable; `x_{i+1}, ...` shift down by one.
    pub fn set_var_zero(&self, i: usize) -> Result<Polynomial> {
        self.check_index(i)?;
        let mut out = Polynomial::zero(self.field, self.nvars - 1);
        for (m, c) in &self.terms {
            if m.exponents[i] != 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps.remove(i);
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Adds a new variable at position `i` that does not occur.
    pub fn insert_var(&self, i: usize) -> Result<Polynomial> {
        if i > self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars + 1,
            });
        }
        let mut out = Polynomial::zero(self.field, self.nvars + 1);
        for (m, c) in &self.terms {
            let mut exps = m.exponents.clone();
            exps.insert(i, 0);
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at a point with coordinates in the coefficient field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.exponents) {
                if e > 0 {
                    term = term.checked_mul(&x.pow(e as u64))?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.nvars {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            })
        }
    }

    /// Prints with variables renamed `x{i + offset}`.
    pub fn display_with_offset(&self, offset: usize) -> impl fmt::Display + '_ {
        struct Shifted<'a>(&'a Polynomial, usize);
        impl fmt::Display for Shifted<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with_offset(f, self.1)
            }
        }
        Shifted(self, offset)
    }

    fn fmt_with_offset(&self, f: &mut fmt::Formatter<'_>, offset: usize) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if m.degree() == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            m.fmt_with_offset(f, offset)?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_offset(f, 0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on a field or arity mismatch; use the `checked_` form
            /// for untrusted operands.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("incompatible polynomials")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

/// A homogeneous polynomial of degree 1, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(Polynomial);

impl LinearForm {
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.is_homogeneous(1) {
            Ok(LinearForm(p))
        } else {
            Err(Error::NotLinear)
        }
    }

    pub fn from_coefficients(field: FieldSpec, coeffs: &[Scalar]) -> Result<Self> {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(n, i), c.clone()));
        Ok(LinearForm(Polynomial::from_terms(field, n, terms)?))
    }

    pub fn coefficients(&self) -> Vec<Scalar> {
        (0..self.0.nvars())
            .map(|i| self.0.coefficient(&Monomial::var(self.0.nvars(), i)))
            .collect()
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
