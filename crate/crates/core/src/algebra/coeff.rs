use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::galois::{fmt_element, GaloisField};
use crate::error::{Error, Result};

/// Moduli must keep `m^2` inside `u128` arithmetic and values inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// A coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// `Z/m` for `m = p` or `m = p^2`.
    IntMod(u64),
    Galois(GaloisField),
    Rational,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::IntMod(m) => write!(f, "Z/{m}"),
            Ring::Galois(gf) => write!(f, "{gf}"),
            Ring::Rational => write!(f, "Q"),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "Q" {
            return Ok(Ring::Rational);
        }
        if let Some(m) = text.strip_prefix("Z/") {
            let m: u64 = m.parse().map_err(serde::de::Error::custom)?;
            return Ring::int_mod(m).map_err(serde::de::Error::custom);
        }
        if let Some(rest) = text.strip_prefix("F_") {
            if let Some((p, k)) = rest.split_once('^') {
                let p: u64 = p.parse().map_err(serde::de::Error::custom)?;
                let k: u8 = k.parse().map_err(serde::de::Error::custom)?;
                return GaloisField::new(p, k)
                    .map(Ring::Galois)
                    .map_err(serde::de::Error::custom);
            }
        }
        Err(serde::de::Error::custom(format!("unknown ring {text}")))
    }
}

impl Ring {
    /// `Z/m`, rejecting `m < 2` and moduli too large for the fixed-width arithmetic.
    pub fn int_mod(m: u64) -> Result<Ring> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::TooLarge {
                what: format!("modulus {m}"),
                limit: MAX_MODULUS,
            });
        }
        Ok(Ring::IntMod(m))
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ring::int_mod(p)
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::IntMod(m) => super::is_prime(*m),
            Ring::Galois(_) | Ring::Rational => true,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::IntMod(m) => *m,
            Ring::Galois(gf) => gf.characteristic(),
            Ring::Rational => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match *self {
            Ring::IntMod(m) => Coeff::IntMod { modulus: m, value: 0 },
            Ring::Galois(field) => Coeff::Galois { field, value: [0; 3] },
            Ring::Rational => Coeff::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            Ring::IntMod(m) => Coeff::IntMod {
                modulus: m,
                value: (v as i128).rem_euclid(m as i128) as u64,
            },
            Ring::Galois(field) => {
                let p = field.characteristic() as i128;
                let c = (v as i128).rem_euclid(p) as u64;
                Coeff::Galois { field, value: [c, 0, 0] }
            }
            Ring::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_u64(&self, v: u64) -> Coeff {
        match *self {
            Ring::IntMod(m) => Coeff::IntMod { modulus: m, value: v % m },
            Ring::Galois(field) => Coeff::Galois {
                field,
                value: [v % field.characteristic(), 0, 0],
            },
            Ring::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match *self {
            Ring::Rational => Coeff::Rational(BigRational::from_integer(v.clone())),
            _ => {
                let c = self.characteristic();
                let r = v.mod_floor(&BigInt::from(c)).to_u64().expect("reduced below modulus");
                self.from_u64(r)
            }
        }
    }

    /// Maps a rational number into the ring; fails when the denominator is not
    /// invertible.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff> {
        if let Ring::Rational = self {
            return Ok(Coeff::Rational(v.clone()));
        }
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        num.try_mul(&den.inv()?)
    }

    /// Brings `c` into this ring: identity on matching rings, the prime-field
    /// inclusion `F_p -> F_{p^k}`, and the canonical lift `Z/p -> Z/p^2` using
    /// representatives in `[0, p)`.
    pub fn embed(&self, c: &Coeff) -> Result<Coeff> {
        if c.ring() == *self {
            return Ok(c.clone());
        }
        match (self, c) {
            (Ring::Galois(field), Coeff::IntMod { modulus, value })
                if *modulus == field.characteristic() =>
            {
                Ok(Coeff::Galois {
                    field: *field,
                    value: [*value, 0, 0],
                })
            }
            (Ring::IntMod(big), Coeff::IntMod { modulus, value })
                if *big == modulus * modulus =>
            {
                Ok(Coeff::IntMod { modulus: *big, value: *value })
            }
            (_, Coeff::Rational(q)) => self.from_rational(q),
            _ => Err(Error::RingMismatch(*self, c.ring())),
        }
    }

    /// Number of elements, for finite rings.
    pub fn size(&self) -> Option<u64> {
        match self {
            Ring::IntMod(m) => Some(*m),
            Ring::Galois(gf) => Some(gf.order()),
            Ring::Rational => None,
        }
    }

    /// The `index`-th element of a finite ring in a fixed enumeration order.
    pub fn element(&self, index: u64) -> Option<Coeff> {
        match *self {
            Ring::IntMod(m) => (index < m).then_some(Coeff::IntMod { modulus: m, value: index }),
            Ring::Galois(field) => (index < field.order()).then(|| Coeff::Galois {
                field,
                value: field.element(index),
            }),
            Ring::Rational => None,
        }
    }
}

/// An exact scalar tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    IntMod { modulus: u64, value: u64 },
    Galois { field: GaloisField, value: [u64; 3] },
    Rational(BigRational),
}

impl Coeff {
    pub fn ring(&self) -> Ring {
        match self {
            Coeff::IntMod { modulus, .. } => Ring::IntMod(*modulus),
            Coeff::Galois { field, .. } => Ring::Galois(*field),
            Coeff::Rational(_) => Ring::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::IntMod { value, .. } => *value == 0,
            Coeff::Galois { value, .. } => value.iter().all(|&c| c == 0),
            Coeff::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::IntMod { value, .. } => *value == 1,
            Coeff::Galois { value, .. } => *value == [1, 0, 0],
            Coeff::Rational(q) => q.is_one(),
        }
    }

    /// The canonical representative of an `IntMod` value.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Coeff::IntMod { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn check(&self, other: &Coeff) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring(), other.ring()))
        }
    }

    pub fn try_add(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(match (self, other) {
            (Coeff::IntMod { modulus, value: a }, Coeff::IntMod { value: b, .. }) => {
                Coeff::IntMod {
                    modulus: *modulus,
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                }
            }
            (Coeff::Galois { field, value: a }, Coeff::Galois { value: b, .. }) => Coeff::Galois {
                field: *field,
                value: field.add(a, b),
            },
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Coeff) -> Result<Coeff> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(match (self, other) {
            (Coeff::IntMod { modulus, value: a }, Coeff::IntMod { value: b, .. }) => {
                Coeff::IntMod {
                    modulus: *modulus,
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                }
            }
            (Coeff::Galois { field, value: a }, Coeff::Galois { value: b, .. }) => Coeff::Galois {
                field: *field,
                value: field.mul(a, b),
            },
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::IntMod { modulus, value } => Coeff::IntMod {
                modulus: *modulus,
                value: (modulus - value) % modulus,
            },
            Coeff::Galois { field, value } => Coeff::Galois {
                field: *field,
                value: field.neg(value),
            },
            Coeff::Rational(q) => Coeff::Rational(-q),
        }
    }

    /// Multiplicative inverse.
    ///
    /// Fails with [`Error::DivisionByZero`] on zero and [`Error::NotUnit`] for
    /// zero divisors of `Z/m`.
    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Coeff::IntMod { modulus, value } => {
                let g = num_integer::Integer::extended_gcd(&(*value as i128), &(*modulus as i128));
                if g.gcd != 1 {
                    return Err(Error::NotUnit(format!("{value} mod {modulus}")));
                }
                Ok(Coeff::IntMod {
                    modulus: *modulus,
                    value: g.x.rem_euclid(*modulus as i128) as u64,
                })
            }
            Coeff::Galois { field, value } => Ok(Coeff::Galois {
                field: *field,
                value: field.inv(value).expect("nonzero"),
            }),
            Coeff::Rational(q) => Ok(Coeff::Rational(q.recip())),
        }
    }

    pub fn try_div(&self, other: &Coeff) -> Result<Coeff> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.ring().one();
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

    /// Multiplies by the integer `k` (repeated addition), reduced in the ring.
    pub fn scale_int(&self, k: u64) -> Coeff {
        self * &self.ring().from_u64(k)
    }

    /// Representative of an `IntMod` value in `(-m/2, m/2]`, used for printing.
    pub(crate) fn symmetric(&self) -> Option<i128> {
        match self {
            Coeff::IntMod { modulus, value } => {
                let (m, v) = (*modulus as i128, *value as i128);
                Some(if 2 * v > m { v - m } else { v })
            }
            _ => None,
        }
    }

    /// True when the printed form of the coefficient is negative (so a
    /// leading `-` can be pulled out of it).
    pub(crate) fn prints_negative(&self) -> bool {
        match self {
            Coeff::IntMod { .. } => self.symmetric().is_some_and(|s| s < 0),
            Coeff::Galois { .. } => false,
            Coeff::Rational(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::IntMod { value, .. } => write!(f, "{value}"),
            Coeff::Galois { field, value } => fmt_element(value, field.degree(), f),
            Coeff::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                self.$checked(rhs).expect("coefficient ring mismatch")
            }
        }
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$checked(&rhs).expect("coefficient ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::neg(self)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::neg(&self)
    }
}
