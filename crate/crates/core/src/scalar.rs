//! Exact coefficient fields: the rationals and prime fields `F_p` with `p`
//! fitting in a machine word.
//!
//! A zero kernel computed over `F_p` or `Q` stays zero over the algebraic
//! closure, because the rank of a matrix does not change under field
//! extension. That is what lets the certification verdicts produced over
//! these small fields speak about hypersurfaces over an algebraically closed
//! field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field: `Q` (characteristic 0) or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// Validates the characteristic: `0` gives `Q`, a prime `p` gives `F_p`.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::CompositeCharacteristic(characteristic))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::rational(BigRational::from_integer(value.into())),
            p => Scalar::modular((value as i128).rem_euclid(p as i128) as u64, p),
        }
    }

    pub fn from_u64(&self, value: u64) -> Scalar {
        match self.characteristic {
            0 => Scalar::rational(BigRational::from_integer(value.into())),
            p => Scalar::modular(value % p, p),
        }
    }

    pub fn from_bigint(&self, value: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::rational(BigRational::from_integer(value.clone())),
            p => {
                let r = value.mod_floor(&BigInt::from(p));
                Scalar::modular(r.to_u64().expect("residue fits in u64"), p)
            }
        }
    }

    /// `numer / denom` as a field element.
    pub fn ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(denom);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(numer).checked_div(&d)
    }

    /// Parses `a` or `a/b` with an optional leading `-`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let syntax = |message: &str| Error::Syntax {
            position: 0,
            message: format!("{message}: {text:?}"),
        };
        let (numer, denom) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| syntax("bad integer"))?;
        let denom: BigInt = denom.parse().map_err(|_| syntax("bad denominator"))?;
        self.ratio(&numer, &denom)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

/// An element of a [`FieldSpec`], always in canonical form: residues lie in
/// `[0, p)`, fractions are in lowest terms with a positive denominator. Equal
/// values therefore have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    repr: Repr,
}

impl Scalar {
    fn rational(value: BigRational) -> Self {
        Scalar {
            repr: Repr::Rational(value),
        }
    }

    fn modular(residue: u64, modulus: u64) -> Self {
        debug_assert!(residue < modulus);
        Scalar {
            repr: Repr::Modular { residue, modulus },
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Rational(_) => FieldSpec::RATIONALS,
            Repr::Modular { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Modular { residue, .. } => *residue == 1,
        }
    }

    /// Only rationals can be negative; residues are always printed in `[0, p)`.
    pub fn is_negative(&self) -> bool {
        matches!(&self.repr, Repr::Rational(r) if r.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            Repr::Modular { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rational(_) => None,
            Repr::Modular { residue, .. } => Some(*residue),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: l.characteristic,
                right: r.characteristic,
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::rational(a + b),
            (
                Repr::Modular {
                    residue: a,
                    modulus,
                },
                Repr::Modular { residue: b, .. },
            ) => Scalar::modular(add_mod(*a, *b, *modulus), *modulus),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::rational(a * b),
            (
                Repr::Modular {
                    residue: a,
                    modulus,
                },
                Repr::Modular { residue: b, .. },
            ) => Scalar::modular(mul_mod(*a, *b, *modulus), *modulus),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match &self.repr {
            Repr::Rational(a) => Scalar::rational(-a),
            Repr::Modular { residue, modulus } => {
                Scalar::modular(if *residue == 0 { 0 } else { modulus - residue }, *modulus)
            }
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Rational(a) => Scalar::rational(a.recip()),
            Repr::Modular { residue, modulus } => {
                Scalar::modular(inv_mod(*residue, *modulus), *modulus)
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            self.neg_ref()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics if the operands live over different fields.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + p as u128) - b as u128) as u64
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these witnesses cover every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
