//! Table-driven arithmetic in `F_{p^k}` for small `p^k`, used only to
//! enumerate projective points.

use hypersection::Polynomial;

/// Elements are `0..q`, read as base-`p` digit vectors (lowest digit = constant
/// coefficient), so `F_p` sits inside as `0..p`.
pub struct Gf {
    pub p: u64,
    pub k: u32,
    pub q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut x = x;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// A monic irreducible polynomial of degree `k <= 3` over `F_p`, as its
/// low coefficients `c0..c(k-1)`. Degree at most three is irreducible iff
/// it has no root.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    assert!(k <= 3, "only extension degrees up to 3");
    let count = p.pow(k as u32);
    for code in 0..count {
        let c = digits(code, p, k);
        let has_root = (0..p).any(|t| {
            let mut v = 1;
            for &ci in c.iter().rev() {
                v = (v * t + ci) % p;
            }
            v == 0
        });
        if !has_root {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Gf {
    pub fn new(p: u64, k: u32) -> Self {
        let (pu, ku) = (p as usize, k as usize);
        let q = pu.pow(k);
        let modulus = irreducible(pu, ku);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a, pu, ku);
            for b in 0..q {
                let db = digits(b, pu, ku);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * q + b] = undigits(&s, pu) as u16;
                let mut prod = vec![0usize; 2 * ku];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                // reduce with t^k = -(c0 + c1 t + ...)
                for deg in (ku..2 * ku).rev() {
                    let top = prod[deg];
                    if top == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &ci) in modulus.iter().enumerate() {
                        let idx = deg - ku + i;
                        prod[idx] = (prod[idx] + pu - (top * ci) % pu) % pu;
                    }
                }
                mul[a * q + b] = undigits(&prod[..ku], pu) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        Gf {
            p,
            k,
            q,
            add,
            mul,
            neg,
        }
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn pow(&self, a: u16, e: u32) -> u16 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Representatives of `P^n(F_q)`: first nonzero coordinate equal to 1.
    pub fn projective_points(&self, n: usize) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        for lead in 0..=n {
            let free = n - lead;
            let total = self.q.pow(free as u32);
            for code in 0..total {
                let mut pt = vec![0u16; n + 1];
                pt[lead] = 1;
                let mut c = code;
                for slot in pt.iter_mut().skip(lead + 1) {
                    *slot = (c % self.q) as u16;
                    c /= self.q;
                }
                out.push(pt);
            }
        }
        out
    }
}

/// A polynomial over `F_p` with coefficients read into `F_q`.
pub struct GfPoly {
    terms: Vec<(Vec<u32>, u16)>,
}

impl GfPoly {
    pub fn new(f: &Polynomial) -> Self {
        let terms = f
            .terms()
            .map(|(m, c)| {
                (
                    m.exponents().to_vec(),
                    c.residue().expect("prime field coefficient") as u16,
                )
            })
            .collect();
        GfPoly { terms }
    }

    pub fn eval(&self, gf: &Gf, point: &[u16]) -> u16 {
        self.terms.iter().fold(0, |acc, (e, c)| {
            let v = e
                .iter()
                .zip(point)
                .fold(*c, |v, (&ei, &xi)| gf.mul(v, gf.pow(xi, ei)));
            gf.add(acc, v)
        })
    }
}

/// Terms `(exponents, coefficient)` on all variables but the last.
type PrefixPoly = Vec<(Vec<u32>, u16)>;

/// Some projective point over `F_{p^k}` where every polynomial vanishes.
///
/// Each generator is split by powers of the last variable, so for a fixed
/// prefix `(x0 : ... : x(n-1))` the last coordinate is scanned with Horner's
/// rule, and a generator that fails stops the scan for that value.
pub fn common_zero(gens: &[Polynomial], k: u32) -> Option<Vec<u16>> {
    use rayon::prelude::*;
    let p = gens[0].field().characteristic();
    let gf = Gf::new(p, k);
    let nvars = gens[0].nvars();
    let last = nvars - 1;
    // split[g][j] = coefficient polynomial of x_last^j, on the prefix variables
    let split: Vec<Vec<PrefixPoly>> = gens
        .iter()
        .map(|g| {
            let deg = g
                .terms()
                .map(|(m, _)| m.exponents()[last])
                .max()
                .unwrap_or(0) as usize;
            let mut parts = vec![Vec::new(); deg + 1];
            for (m, c) in g.terms() {
                let e = m.exponents();
                parts[e[last] as usize]
                    .push((e[..last].to_vec(), c.residue().expect("prime field") as u16));
            }
            parts
        })
        .collect();
    let eval_prefix = |terms: &[(Vec<u32>, u16)], pt: &[u16]| {
        terms.iter().fold(0u16, |acc, (e, c)| {
            let v = e
                .iter()
                .zip(pt)
                .fold(*c, |v, (&ei, &xi)| gf.mul(v, gf.pow(xi, ei)));
            gf.add(acc, v)
        })
    };
    let tail = {
        let mut pt = vec![0u16; nvars];
        pt[last] = 1;
        pt
    };
    if gens.iter().all(|g| GfPoly::new(g).eval(&gf, &tail) == 0) {
        return Some(tail);
    }
    gf.projective_points(last - 1)
        .into_par_iter()
        .find_map_first(|prefix| {
            let coeffs: Vec<Vec<u16>> = split
                .iter()
                .map(|parts| parts.iter().map(|t| eval_prefix(t, &prefix)).collect())
                .collect();
            (0..gf.q as u16).find_map(|t| {
                let vanishes = coeffs.iter().all(|cs| {
                    cs.iter()
                        .rev()
                        .fold(0u16, |acc, &c| gf.add(gf.mul(acc, t), c))
                        == 0
                });
                vanishes.then(|| {
                    let mut pt = prefix.clone();
                    pt.push(t);
                    pt
                })
            })
        })
}

/// Random cubic surfaces over `F_p`. Every other one is forced singular at
/// a random `F_p`-point: built singular at `(1:0:0:0)` (no `x0^3`, `x0^2 xi`
/// terms) and then moved by a random invertible change.
pub fn random_cubics(p: u64, count: usize, seed: u64) -> Vec<Polynomial> {
    use hypersection::{FieldSpec, LinearChange, Matrix, Monomial};
    use rand::{Rng, SeedableRng};
    let k = FieldSpec::new(p).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let basis = hypersection::monomial_basis(4, 3);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let planted = out.len() % 2 == 1;
        let terms: Vec<(Monomial, _)> = basis
            .iter()
            .filter(|m| !planted || m.exponents()[0] < 2)
            .map(|m| (m.clone(), k.from_u64(rng.gen_range(0..p))))
            .collect();
        let f = Polynomial::from_terms(k, 4, terms).unwrap();
        if f.is_zero() {
            continue;
        }
        if !planted {
            out.push(f);
            continue;
        }
        let rows = (0..4)
            .map(|_| (0..4).map(|_| k.from_u64(rng.gen_range(0..p))).collect())
            .collect();
        if let Ok(change) = LinearChange::new(Matrix::from_rows(k, 4, rows).unwrap()) {
            out.push(f.substitute_linear(&change).unwrap());
        }
    }
    out
}

/// A common zero of `f` and its partials over `F_p`, `F_{p^2}` or `F_{p^3}`.
pub fn singular_point_up_to_cubic_extension(f: &Polynomial) -> Option<(u32, Vec<u16>)> {
    let mut gens = vec![f.clone()];
    for i in 0..f.nvars() {
        gens.push(f.partial_derivative(i).unwrap());
    }
    (1..=3).find_map(|k| common_zero(&gens, k).map(|pt| (k, pt)))
}
