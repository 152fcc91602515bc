//! Coefficient fields: the rationals with a machine-word fast path, and prime
//! fields with Barrett reduction.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FieldKind {
    Rationals,
    Prime(u32),
}

/// Exact coefficient arithmetic. Field values are lightweight descriptors;
/// elements carry no reference back to their field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Text form used by the polynomial renderer: an integer or `a/b`.
    fn render(&self, a: &Self::Elem) -> String;
    /// True when the rendered form starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p as u64,
        }
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero in coefficient field");
        self.mul(a, &inv)
    }

    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Self::Elem> {
        let den = self.from_bigint(d);
        let inv = self.inv(&den).ok_or_else(|| Error::NotInvertible(format!("{n}/{d}")))?;
        Ok(self.mul(&self.from_bigint(n), &inv))
    }
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// A rational number. Values whose reduced numerator and denominator fit in an
/// `i64` are always stored as `Small`, so structural equality is numeric
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    pub fn integer(n: i64) -> Q {
        Q::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }
}

impl Field for Rationals {
    type Elem = Q;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> Q {
        Q::Small(0, 1)
    }
    fn one(&self) -> Q {
        Q::Small(1, 1)
    }
    fn is_zero(&self, a: &Q) -> bool {
        matches!(a, Q::Small(0, _))
    }
    fn is_one(&self, a: &Q) -> bool {
        matches!(a, Q::Small(1, 1))
    }

    fn add(&self, a: &Q, b: &Q) -> Q {
        match (a, b) {
            (Q::Small(n1, d1), Q::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(s) = n1.checked_add(*n2) {
                        return Q::Small(s, 1);
                    }
                }
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                Q::from_i128(n1 * d2 + n2 * d1, d1 * d2)
            }
            _ => Q::from_big(a.to_big() + b.to_big()),
        }
    }

    fn sub(&self, a: &Q, b: &Q) -> Q {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Q, b: &Q) -> Q {
        match (a, b) {
            (Q::Small(n1, d1), Q::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(p) = n1.checked_mul(*n2) {
                        return Q::Small(p, 1);
                    }
                }
                Q::from_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => Q::from_big(a.to_big() * b.to_big()),
        }
    }

    fn neg(&self, a: &Q) -> Q {
        match a {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::from_big(-a.to_big()),
            },
            Q::Big(b) => Q::from_big(-(**b).clone()),
        }
    }

    fn inv(&self, a: &Q) -> Option<Q> {
        if self.is_zero(a) {
            return None;
        }
        Some(match a {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(b) => Q::from_big(b.recip()),
        })
    }

    fn from_bigint(&self, n: &BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n.clone()))
    }

    fn from_i64(&self, n: i64) -> Q {
        Q::Small(n, 1)
    }

    fn render(&self, a: &Q) -> String {
        match a {
            Q::Small(n, 1) => n.to_string(),
            Q::Small(n, d) => format!("{n}/{d}"),
            Q::Big(b) => {
                if b.denom().is_one() {
                    b.numer().to_string()
                } else {
                    format!("{}/{}", b.numer(), b.denom())
                }
            }
        }
    }

    fn is_negative(&self, a: &Q) -> bool {
        match a {
            Q::Small(n, _) => *n < 0,
            Q::Big(b) => b.is_negative(),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field of order `p < 2^31`, with Barrett reduction for products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p, barrett: u64::MAX / p as u64 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u32 {
        // x < p^2 < 2^62
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.reduce(r as u64 * a as u64);
            }
            a = self.reduce(a as u64 * a as u64);
            e >>= 1;
        }
        r
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if p as u64 % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn is_negative(&self, _a: &u32) -> bool {
        false
    }
}
