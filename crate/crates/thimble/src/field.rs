//! Exact coefficient fields: prime fields F_p (odd p by default) and the
//! rationals with arbitrary-precision arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which coefficient field computations run over.
///
/// `p = 2` is rejected by [`FieldSpec::prime`]; use
/// [`FieldSpec::prime_allow_char2`] to opt in explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// A prime field of odd characteristic.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::input(
                "characteristic 2 requires the explicit override".to_string(),
            ));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Characteristic-2 override for experimentation.
    pub fn prime_allow_char2(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

/// A field element. Prime-field values are canonical representatives in
/// `[0, p)`; rationals are always reduced (the `num` crate reduces on
/// construction).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

/// Arithmetic context for [`Scalar`] values. Cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    spec: FieldSpec,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        Field { spec }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn zero(&self) -> Scalar {
        match self.spec {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.spec {
            FieldSpec::Prime(_) => Scalar::Fp(1),
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.spec {
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(r)
            }
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    fn check(&self, a: &Scalar) -> u64 {
        match (self.spec, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                debug_assert!(*x < p);
                p
            }
            _ => panic!("scalar does not belong to field {}", self.spec),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.check(a);
                Scalar::Fp((x + y) % p)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) => {
                let p = self.check(a);
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.check(a);
                Scalar::Fp(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::input("division by zero".to_string()));
        }
        match a {
            Scalar::Fp(x) => {
                let p = self.check(a);
                // Fermat: x^(p-2) mod p.
                let mut base = *x as u128;
                let mut exp = p - 2;
                let m = p as u128;
                let mut acc: u128 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Ok(Scalar::Fp(acc as u64))
            }
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parse `"n"` or `"n/d"` (signed decimal integers). In a prime field the
    /// quotient is taken via the modular inverse of `d`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n = BigInt::from_str(num)
            .map_err(|_| Error::input(format!("bad coefficient literal {s:?}")))?;
        let d = match den {
            Some(d) => BigInt::from_str(d)
                .map_err(|_| Error::input(format!("bad coefficient literal {s:?}")))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in {s:?}")));
        }
        match self.spec {
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(n, d))),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let rn = ((n % &pb) + &pb) % &pb;
                let rd = ((d % &pb) + &pb) % &pb;
                let num = Scalar::Fp(rn.try_into().unwrap());
                let den = Scalar::Fp(rd.try_into().unwrap());
                if self.is_zero(&den) {
                    return Err(Error::input(format!(
                        "denominator of {s:?} vanishes in F{p}"
                    )));
                }
                self.div(&num, &den)
            }
        }
    }

    /// Canonical text form, inverse to [`Field::parse`].
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => format!("{x}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else if r.denom().is_negative() {
                    // num keeps denominators positive, but be safe.
                    format!("{}/{}", -r.numer(), -r.denom())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
