//! Deliberately naive dense algebra, written independently of the library,
//! to cross-check its answers.

use std::collections::HashMap;

use hypersection::{Polynomial, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse polynomial as raw `(exponents, coefficient)` terms.
pub type Terms = Vec<(Vec<u32>, Scalar)>;

pub fn terms_of(f: &Polynomial) -> Terms {
    f.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

/// Rank over `F_p` by textbook Gaussian elimination on residues.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = powmod(m[rank][c], p - 2);
        for x in m[rank].iter_mut() {
            *x = mulmod(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                let pivot_row = m[rank].clone();
                for (x, &y) in m[r].iter_mut().zip(&pivot_row) {
                    let sub = mulmod(factor, y);
                    *x = ((*x as u128 + p as u128 - sub as u128) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Q` with plain rational Gaussian elimination.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = BigRational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = m[r][c].clone();
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of scalar rows, dispatching on the field.
pub fn rank(rows: &[Vec<Scalar>], characteristic: u64) -> usize {
    if characteristic == 0 {
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.as_rational().unwrap().clone()).collect())
            .collect();
        rank_rational(&q)
    } else {
        let r: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.residue().unwrap()).collect())
            .collect();
        rank_mod_p(&r, characteristic)
    }
}

fn derivative(t: &Terms, i: usize, field: hypersection::FieldSpec) -> Terms {
    t.iter()
        .filter(|(e, _)| e[i] > 0)
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] -= 1;
            (e2, c * &field.from_i64(e[i] as i64))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn times_var(t: &Terms, i: usize) -> Terms {
    t.iter()
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] += 1;
            (e2, c.clone())
        })
        .collect()
}

fn dense(
    t: &Terms,
    index: &mut HashMap<Vec<u32>, usize>,
    width: usize,
    zero: &Scalar,
) -> Vec<Scalar> {
    let mut v = vec![zero.clone(); width];
    for (e, c) in t {
        let next = index.len();
        let k = *index.entry(e.clone()).or_insert(next);
        v[k] = &v[k] + c;
    }
    v
}

/// Kernel dimension of `l -> [q*l]` in the degree-`d` piece of
/// `k[y] / (g, dg/dy_i)`, where `g` has degree `d` and `q` degree `d - 1`.
pub fn criterion_kernel_dim(g: &Polynomial, q: &Polynomial) -> usize {
    let field = g.field();
    let n = g.nvars();
    let d = g.homogeneous_degree().unwrap();
    assert_eq!(
        d, 3,
        "oracle covers cubics: the ideal's degree-3 piece is g plus linear multiples of partials"
    );
    let gt = terms_of(g);
    let qt = terms_of(q);
    let mut ideal: Vec<Terms> = vec![gt.clone()];
    for i in 0..n {
        let di = derivative(&gt, i, field);
        for j in 0..n {
            ideal.push(times_var(&di, j));
        }
    }
    let images: Vec<Terms> = (0..n).map(|j| times_var(&qt, j)).collect();
    let width = (n * (n + 1) * (n + 2)) / 6;
    let mut index = HashMap::new();
    let zero = field.zero();
    let j_rows: Vec<Vec<Scalar>> = ideal
        .iter()
        .map(|t| dense(t, &mut index, width, &zero))
        .collect();
    let q_rows: Vec<Vec<Scalar>> = images
        .iter()
        .map(|t| dense(t, &mut index, width, &zero))
        .collect();
    let p = field.characteristic();
    let r_j = rank(&j_rows, p);
    let all: Vec<Vec<Scalar>> = j_rows.into_iter().chain(q_rows).collect();
    n - (rank(&all, p) - r_j)
}

/// `(f(0, y), df/dx0(0, y))` computed by filtering terms.
pub fn section_and_q(f: &Polynomial) -> (Polynomial, Polynomial) {
    let field = f.field();
    let n = f.nvars() - 1;
    let mut g = Vec::new();
    let mut q = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        match e[0] {
            0 => g.push((hypersection::Monomial::new(e[1..].to_vec()), c.clone())),
            1 => q.push((hypersection::Monomial::new(e[1..].to_vec()), c.clone())),
            _ => {}
        }
    }
    (
        Polynomial::from_terms(field, n, g).unwrap(),
        Polynomial::from_terms(field, n, q).unwrap(),
    )
}
