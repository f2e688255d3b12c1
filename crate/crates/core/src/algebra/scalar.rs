use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Coefficient field: the rationals or a prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`, checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for Q, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: reduce_bigint(v, p),
                modulus: p,
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    u64::try_from(r).expect("residue fits in u64")
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

pub(crate) fn mod_pow(a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = (a % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// A field element. Rationals are kept reduced with positive denominator;
/// residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_inv(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The integer value for integral rationals or residues.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) => q.is_integer().then(|| q.to_integer()),
            Scalar::Residue { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            other => other.clone(),
        }
    }

    fn combine(
        &self,
        rhs: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        r: impl Fn(u128, u128, u128) -> u128,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(q(a, b)),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: p2,
                },
            ) if p == p2 => Scalar::Residue {
                value: r(*a as u128, *b as u128, *p as u128) as u64,
                modulus: *p,
            },
            _ => panic!(
                "scalars from different fields: {:?} and {:?}",
                self.field(),
                rhs.field()
            ),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
