use super::{LinearForm, Polynomial};
use crate::error::{Error, Result};

/// `constant + eps * eps_part` with `eps^2 = 0`: polynomials over the dual
/// numbers, truncated at first order after every product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub constant: Polynomial,
    pub eps: Polynomial,
}

impl Dual {
    pub fn new(constant: Polynomial, eps: Polynomial) -> Self {
        assert_eq!(constant.nvars(), eps.nvars(), "dual part arity mismatch");
        Dual { constant, eps }
    }

    pub fn one_like(p: &Polynomial) -> Self {
        let one = Polynomial::constant(p.field(), p.nvars(), p.field().one());
        Dual::new(one, Polynomial::zero(p.field(), p.nvars()))
    }

    pub fn add(&self, other: &Dual) -> Dual {
        Dual::new(&self.constant + &other.constant, &self.eps + &other.eps)
    }

    pub fn mul(&self, other: &Dual) -> Dual {
        Dual::new(
            &self.constant * &other.constant,
            &(&self.constant * &other.eps) + &(&self.eps * &other.constant),
        )
    }

    pub fn pow(&self, e: u32) -> Dual {
        (0..e).fold(Dual::one_like(&self.constant), |acc, _| acc.mul(self))
    }
}

/// Expands `f(eps * l, x1, ..., xn)` with `eps^2 = 0`.
///
/// Returns `(g, h)` where `g = f(0, x1, ..., xn)` and `h` is the `eps`
/// coefficient, which equals `(df/dx0)(0, x1, ..., xn) * l`. Both live in
/// the `n` variables of the hyperplane `x0 = 0`.
pub fn first_order_section(f: &Polynomial, l: &LinearForm) -> Result<(Polynomial, Polynomial)> {
    match f.homogeneous_degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::NotHomogeneous),
    }
    let n = f.nvars() - 1;
    if l.nvars() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: l.nvars(),
        });
    }
    let field = f.field();
    let zero = Polynomial::zero(field, n);
    let mut images = Vec::with_capacity(n + 1);
    images.push(Dual::new(zero.clone(), l.as_poly().clone()));
    for i in 0..n {
        images.push(Dual::new(Polynomial::var(field, n, i), zero.clone()));
    }
    let mut acc = Dual::new(zero.clone(), zero);
    for (m, c) in f.terms() {
        let mut term = Dual::new(
            Polynomial::constant(field, n, c.clone()),
            Polynomial::zero(field, n),
        );
        for (img, &e) in images.iter().zip(m.exponents()) {
            if e > 0 {
                term = term.mul(&img.pow(e));
            }
        }
        acc = acc.add(&term);
    }
    Ok((acc.constant, acc.eps))
}
